use super::*;
use crate::constructors::{cyclic, dihedral, direct_product, quaternion8, symmetric};
use crate::corpus::{corpus_group, default_corpus};

fn int(c: i128) -> CyclotomicNumber {
    CyclotomicNumber::from_integer(c)
}

fn sl23() -> PermGroup {
    corpus_group("SL(2,3)").unwrap()
}

/// Class index holding elements of the given order and class size.
fn class_with(t: &CharacterTable, order: u64, size: usize) -> usize {
    t.classes()
        .iter()
        .position(|c| c.element_order == order && c.size == size)
        .unwrap()
}

#[test]
fn s3_table() {
    let t = character_table(&symmetric(3)).unwrap();
    assert_eq!(t.degrees(), &[1, 1, 2]);
    let three = class_with(&t, 3, 2);
    let two = class_with(&t, 2, 3);
    assert_eq!(t.row(2)[three], int(-1));
    assert_eq!(t.row(2)[two], int(0));
}

#[test]
fn c3_rows_are_cube_root_characters() {
    let t = character_table(&cyclic(3)).unwrap();
    assert_eq!(t.degrees(), &[1, 1, 1]);
    let z = CyclotomicNumber::root_of_unity(3, 1).unwrap();
    let z2 = CyclotomicNumber::root_of_unity(3, 2).unwrap();
    let mut nontrivial: Vec<Vec<CyclotomicNumber>> = (1..3).map(|i| t.row(i)[1..].to_vec()).collect();
    nontrivial.sort_by_key(|r| r[0].to_string());
    let mut expected = vec![vec![z.clone(), z2.clone()], vec![z2, z]];
    expected.sort_by_key(|r| r[0].to_string());
    assert_eq!(nontrivial, expected);
}

#[test]
fn sl23_degrees() {
    let t = character_table(&sl23()).unwrap();
    assert_eq!(t.degrees(), &[1, 1, 1, 2, 2, 2, 3]);
}

#[test]
fn verify_holds_on_the_corpus() {
    for entry in default_corpus() {
        let t = character_table(&entry.group).unwrap();
        t.verify().unwrap();
        assert_eq!(t.num_rows(), t.classes().len(), "{}", entry.name);
        let sum: u64 = t.degrees().iter().map(|d| d * d).sum();
        assert_eq!(sum, entry.group.order() as u64, "{}", entry.name);
    }
}

#[test]
fn rational_rows_match_rational_classes() {
    for entry in default_corpus() {
        let t = character_table(&entry.group).unwrap();
        let rational_rows = (0..t.num_rows()).filter(|&r| t.is_rational_row(r)).count();
        assert_eq!(
            rational_rows,
            entry.group.class_data().rational_class_count(),
            "{}",
            entry.name
        );
    }
}

#[test]
fn galois_definitions_agree_and_orbits_match_stabilizers() {
    for entry in default_corpus() {
        let t = character_table(&entry.group).unwrap();
        let units = t.galois_units();
        for row in 0..t.num_rows() {
            for &k in &units {
                t.galois_conjugate(row, k as i64).unwrap();
            }
        }
        for orbit in t.galois_orbits().unwrap() {
            let stab = t.galois_stabilizer(orbit[0]).unwrap();
            assert_eq!(orbit.len() * stab.len(), units.len(), "{}", entry.name);
        }
    }
}

#[test]
fn kernels() {
    let s3 = symmetric(3);
    let t = character_table(&s3).unwrap();
    assert_eq!(t.kernel_of(0).unwrap().order(), 6);
    assert!(t.kernel_of(1).unwrap().same_elements(&s3.derived_subgroup()));

    let g = sl23();
    let t = character_table(&g).unwrap();
    let k = t.kernel_of(6).unwrap();
    assert_eq!(t.degrees()[6], 3);
    assert!(k.same_elements(&g.center()));
}

#[test]
fn galois_conjugation_examples() {
    let t = character_table(&cyclic(3)).unwrap();
    assert_eq!(t.galois_conjugate(1, 1).unwrap(), 1);
    let other = t.galois_conjugate(1, 2).unwrap();
    assert_ne!(other, 1);
    assert_ne!(other, 0);

    let t = character_table(&symmetric(3)).unwrap();
    for row in 0..3 {
        assert_eq!(t.galois_conjugate(row, 5).unwrap(), row);
    }
    assert!(matches!(
        t.galois_conjugate(0, 3),
        Err(CharTableError::NotCoprime { .. })
    ));
}

#[test]
fn galois_orbit_examples() {
    let t = character_table(&cyclic(5)).unwrap();
    assert_eq!(t.galois_orbits().unwrap(), vec![vec![0], vec![1, 2, 3, 4]]);
    let t = character_table(&symmetric(3)).unwrap();
    assert_eq!(t.galois_orbits().unwrap(), vec![vec![0], vec![1], vec![2]]);
    let t = character_table(&cyclic(3)).unwrap();
    assert_eq!(t.galois_orbits().unwrap(), vec![vec![0], vec![1, 2]]);
}

#[test]
fn field_of_values_examples() {
    let t = character_table(&symmetric(3)).unwrap();
    assert!(t.field_in_pth_cyclotomic(2, 7).unwrap());

    let t = character_table(&dihedral(5)).unwrap();
    for row in (0..t.num_rows()).filter(|&r| t.degrees()[r] == 2) {
        assert!(!t.is_rational_row(row));
        assert!(t.field_in_pth_cyclotomic(row, 5).unwrap());
    }

    let t = character_table(&cyclic(4)).unwrap();
    let nonreal = (0..4).find(|&r| !t.is_rational_row(r)).unwrap();
    assert!(!t.field_in_pth_cyclotomic(nonreal, 5).unwrap());
}

#[test]
fn tables_are_deterministic_and_seed_independent() {
    let g = direct_product(&quaternion8(), &cyclic(3));
    let a = CharacterTable::compute(&g, 7).unwrap();
    let b = CharacterTable::compute(&g, 7).unwrap();
    let c = CharacterTable::compute(&g, 99).unwrap();
    assert_eq!(a.values(), b.values());
    assert_eq!(a.values(), c.values());
    assert_eq!(a.to_json().values, b.to_json().values);
}

#[test]
fn dixon_prime_is_recorded() {
    let g = sl23();
    let t = character_table(&g).unwrap();
    assert_eq!(t.exponent(), 12);
    assert_eq!(t.dixon_prime() % 12, 1);
    assert!(t.dixon_prime() * t.dixon_prime() > 4 * 24);
}

#[test]
fn json_and_text_renderings() {
    let t = character_table(&quaternion8()).unwrap();
    let j = t.to_json();
    assert_eq!(j.order, 8);
    assert_eq!(j.degrees, vec![1, 1, 1, 1, 2]);
    assert_eq!(j.classes.len(), 5);
    let round: TableJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
    assert_eq!(round, j);
    for (row, strings) in j.values.iter().enumerate() {
        for (c, s) in strings.iter().enumerate() {
            assert_eq!(&s.parse::<CyclotomicNumber>().unwrap(), &t.row(row)[c]);
        }
    }
    let text = t.to_text();
    assert!(text.contains("X.4 [2]: 2 | -2 | 0 | 0 | 0"));
}

#[test]
fn conductor_bound_is_enforced() {
    let err = CharacterTable::compute_bounded(&cyclic(12), DEFAULT_SEED, 6).unwrap_err();
    assert!(matches!(err, CharTableError::ConductorBound { .. }));
}

#[test]
fn characters_carry_kernel_and_stabilizer() {
    let t = character_table(&cyclic(4)).unwrap();
    for row in 0..4 {
        let ch = t.character(row).unwrap();
        assert_eq!(ch.degree, 1);
        let orbit = t
            .galois_orbits()
            .unwrap()
            .into_iter()
            .find(|o| o.contains(&row))
            .unwrap();
        assert_eq!(ch.galois_stabilizer.len() * orbit.len(), 2);
    }
    let mut kernels: Vec<usize> = (0..4).map(|r| t.kernel_of(r).unwrap().order()).collect();
    kernels.sort_unstable();
    assert_eq!(kernels, vec![1, 1, 2, 4]);
}
