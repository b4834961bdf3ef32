use galoisirr::classify::{irr_partition, Checklist};
use galoisirr::io::GroupFile;
use galoisirr::{character_table, classify, CharacterTable, PermGroup, Permutation, Verdict};
use proptest::prelude::*;

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

/// Random subgroups of `S_3` through `S_6`.
fn small_group() -> impl Strategy<Value = PermGroup> {
    (3usize..=6)
        .prop_flat_map(|deg| prop::collection::vec(perm(deg), 1..3).prop_map(move |g| (deg, g)))
        .prop_map(|(deg, gens)| PermGroup::from_generators(deg, gens).unwrap())
}

/// Checklist items (4) through (10): everything structural except the
/// case tag.
fn structure_without_tag(c: &Checklist) -> bool {
    [
        c.residue_is_sylow,
        c.frattini_equals_derived,
        c.complement_found,
        c.shared_kernel,
        c.kernel_is_c_times_u,
        c.frobenius_action,
        c.irreducible_action,
        c.complement_index,
        c.d_divides_p_minus_1,
        c.scalar_transitive,
        c.field_in_pth_cyclotomic,
    ]
    .iter()
    .all(|x| *x == Some(true))
}

fn sum_of_squares(t: &CharacterTable) -> u64 {
    t.degrees().iter().map(|d| d * d).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn tables_satisfy_the_orthogonality_relations(g in small_group()) {
        let t = character_table(&g).unwrap();
        t.verify().unwrap();
        prop_assert_eq!(sum_of_squares(&t), g.order() as u64);
        prop_assert_eq!(t.num_rows(), g.conjugacy_classes().len());
        let rational = (0..t.num_rows()).filter(|&r| t.is_rational_row(r)).count();
        prop_assert_eq!(rational, g.class_data().rational_class_count());
    }

    #[test]
    fn galois_orbits_partition_rows_with_matching_stabilizers(g in small_group()) {
        let t = character_table(&g).unwrap();
        let units = t.galois_units().len();
        let orbits = t.galois_orbits().unwrap();
        let mut all: Vec<usize> = orbits.iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..t.num_rows()).collect::<Vec<_>>());
        for orbit in &orbits {
            for &row in orbit {
                prop_assert_eq!(t.galois_stabilizer(row).unwrap().len() * orbit.len(), units);
                prop_assert_eq!(t.kernel_of(row).unwrap().order(), t.kernel_of(orbit[0]).unwrap().order());
            }
        }
    }

    #[test]
    fn tables_do_not_depend_on_the_seed(g in small_group(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = CharacterTable::compute(&g, s1).unwrap();
        let b = CharacterTable::compute(&g, s2).unwrap();
        prop_assert_eq!(a.values(), b.values());
    }

    #[test]
    fn irr_s_is_empty_exactly_for_nilpotent_groups(g in small_group()) {
        let t = character_table(&g).unwrap();
        let part = irr_partition(&t).unwrap();
        prop_assert_eq!(part.irr_s.is_empty(), g.is_nilpotent());
        prop_assert_eq!(part.irr_s.len() + part.irr_n.len(), t.num_rows());
    }

    #[test]
    fn single_class_matches_structure(g in small_group()) {
        let r = classify(&g, 11).unwrap();
        if g.is_solvable() && !g.is_nilpotent() {
            let single = r.verdict == Verdict::SingleGaloisClass;
            prop_assert_eq!(single, structure_without_tag(&r.checklist), "{}", r.to_text());
        }
        if r.verdict == Verdict::SingleGaloisClass {
            prop_assert!(g.is_solvable());
            prop_assert_eq!(g.has_fitting_height_at_most_two(), Ok(true));
            let p = r.p.unwrap();
            let d = r.d.unwrap();
            prop_assert_eq!((p - 1) % d, 0);
            prop_assert_eq!(r.irr_s_degrees.len() as u64, d);
        }
    }

    #[test]
    fn group_files_round_trip(g in small_group()) {
        let f = GroupFile::from_group(&g, None);
        let again = GroupFile::parse(&f.render()).unwrap();
        prop_assert_eq!(&again, &f);
        prop_assert!(again.to_group().unwrap().same_elements(&g));
    }
}
