use galoisirr::oracle::{hand_tables, matches_up_to_permutation, regular_representation_check};
use galoisirr::corpus::{corpus_group, default_corpus};
use galoisirr::character_table;

#[test]
fn computed_tables_match_hand_tables() {
    for hand in hand_tables() {
        let g = corpus_group(hand.name).unwrap();
        let t = character_table(&g).unwrap();
        assert!(matches_up_to_permutation(&t, &hand), "{}", hand.name);
    }
}

#[test]
fn a_wrong_hand_table_is_rejected() {
    let mut hand = hand_tables().remove(0);
    hand.rows[2][2] = galoisirr::CyclotomicNumber::from_integer(1);
    let t = character_table(&corpus_group("S3").unwrap()).unwrap();
    assert!(!matches_up_to_permutation(&t, &hand));
}

#[test]
fn corpus_tables_pass_the_regular_representation_check() {
    for entry in default_corpus() {
        let t = character_table(&entry.group).unwrap();
        regular_representation_check(&entry.group, &t, 1e-8)
            .unwrap_or_else(|e| panic!("{}: {e}", entry.name));
    }
}
