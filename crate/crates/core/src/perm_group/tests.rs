use super::*;
use crate::constructors::{
    alternating, cyclic, dihedral, direct_product, heisenberg, quaternion8, symmetric,
};
use proptest::prelude::*;

fn sl23() -> PermGroup {
    crate::corpus::corpus_group("SL(2,3)").unwrap()
}

fn cyc(degree: usize, cycles: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(degree, cycles).unwrap()
}

#[test]
fn generated_orders() {
    let s3 = PermGroup::from_generators(3, vec![cyc(3, &[&[0, 1, 2]]), cyc(3, &[&[0, 1]])]).unwrap();
    assert_eq!(s3.order(), 6);
    let v4 = PermGroup::from_generators(
        4,
        vec![cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])],
    )
    .unwrap();
    assert_eq!(v4.order(), 4);
    assert_eq!(quaternion8().order(), 8);
    assert_eq!(quaternion8().degree(), 8);
}

#[test]
fn order_bound_is_enforced() {
    let err = PermGroup::from_generators_bounded(
        6,
        symmetric(6).generators().to_vec(),
        100,
    )
    .unwrap_err();
    assert_eq!(err, GroupError::OrderBoundExceeded { bound: 100 });
}

#[test]
fn invalid_permutations_are_rejected() {
    assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    assert!(Permutation::from_images(vec![0, 3]).is_err());
    let err = PermGroup::from_generators(3, vec![Permutation::identity(4)]).unwrap_err();
    assert!(matches!(err, GroupError::DegreeMismatch { .. }));
}

#[test]
fn class_sizes() {
    let sizes = |g: &PermGroup| g.conjugacy_classes().iter().map(|c| c.size).collect::<Vec<_>>();
    assert_eq!(sizes(&symmetric(3)), vec![1, 3, 2]);
    assert_eq!(sizes(&quaternion8()), vec![1, 1, 2, 2, 2]);
    assert_eq!(sizes(&PermGroup::trivial(3)), vec![1]);
}

#[test]
fn class_order_is_by_element_order_then_size() {
    for g in [symmetric(4), sl23(), dihedral(6)] {
        let keys: Vec<_> = g
            .conjugacy_classes()
            .iter()
            .map(|c| (c.element_order, c.size))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}

#[test]
fn power_map_basics() {
    let g = sl23();
    let data = g.class_data();
    for (i, c) in data.classes.iter().enumerate() {
        assert_eq!(c.power_map[1 % data.exponent as usize], i);
        assert_eq!(c.power_map[0], 0);
        let inv = c.representative.inverse();
        assert_eq!(data.inverse_class(i), data.class_of[g.element_index(&inv).unwrap()]);
    }
}

#[test]
fn rational_classes() {
    assert_eq!(symmetric(4).class_data().rational_class_count(), 5);
    assert_eq!(cyclic(3).class_data().rational_class_count(), 1);
    assert_eq!(quaternion8().class_data().rational_class_count(), 5);
}

#[test]
fn derived_subgroups_and_series() {
    let s3 = symmetric(3);
    assert_eq!(s3.derived_subgroup().order(), 3);
    let lcs: Vec<_> = quaternion8().lower_central_series().iter().map(|g| g.order()).collect();
    assert_eq!(lcs, vec![8, 2, 1]);
    let ds: Vec<_> = cyclic(6).derived_series().iter().map(|g| g.order()).collect();
    assert_eq!(ds, vec![6, 1]);
}

#[test]
fn nilpotent_residues() {
    assert!(symmetric(3)
        .nilpotent_residue()
        .same_elements(&alternating(3)));
    assert!(quaternion8().nilpotent_residue().is_trivial());
    let r = sl23().nilpotent_residue();
    assert_eq!(r.order(), 8);
    assert!(r.is_generalized_quaternion());
}

#[test]
fn nilpotency_and_solvability() {
    assert!(quaternion8().is_nilpotent());
    let s3 = symmetric(3);
    assert!(!s3.is_nilpotent());
    assert!(s3.is_solvable());
    assert!(alternating(4).is_solvable());
    assert!(!alternating(5).is_solvable());
}

#[test]
fn fitting_height() {
    assert_eq!(symmetric(3).has_fitting_height_at_most_two(), Ok(true));
    assert_eq!(symmetric(4).has_fitting_height_at_most_two(), Ok(false));
    assert_eq!(quaternion8().has_fitting_height_at_most_two(), Ok(true));
    assert_eq!(
        alternating(5).has_fitting_height_at_most_two(),
        Err(GroupError::NotSolvable)
    );
}

#[test]
fn centers_and_centralizers() {
    assert_eq!(quaternion8().center().order(), 2);
    let s3 = symmetric(3);
    let a3 = s3.derived_subgroup();
    assert!(s3.centralizer(&a3).same_elements(&a3));
    let c6 = cyclic(6);
    assert!(c6.center().same_elements(&c6));
}

#[test]
fn normal_closure_of_a_transposition_is_everything() {
    let s4 = symmetric(4);
    let t = cyc(4, &[&[0, 1]]);
    assert_eq!(s4.normal_closure(&[t]).unwrap().order(), 24);
}

#[test]
fn frattini_subgroups() {
    let v4 = direct_product(&cyclic(2), &cyclic(2));
    assert!(v4.frattini_of_pgroup(2).unwrap().is_trivial());
    let q8 = quaternion8();
    assert!(q8.frattini_of_pgroup(2).unwrap().same_elements(&q8.center()));
    let h = heisenberg(3).unwrap();
    let phi = h.frattini_of_pgroup(3).unwrap();
    assert_eq!(phi.order(), 3);
    assert!(phi.same_elements(&h.derived_subgroup()));
    assert!(matches!(
        symmetric(3).frattini_of_pgroup(2),
        Err(GroupError::NotPGroup { .. })
    ));
}

/// Intersection of all maximal subgroups, by brute force over the
/// subgroups generated by one or two elements.
fn brute_frattini(p_group: &PermGroup) -> PermGroup {
    let elems = p_group.elements();
    let mut subgroups: Vec<PermGroup> = Vec::new();
    for a in elems {
        for b in elems {
            let s = p_group.subgroup(vec![a.clone(), b.clone()]).unwrap();
            if s.order() < p_group.order() && !subgroups.iter().any(|t| t.same_elements(&s)) {
                subgroups.push(s);
            }
        }
    }
    let maximal: Vec<&PermGroup> = subgroups
        .iter()
        .filter(|s| {
            !subgroups
                .iter()
                .any(|t| t.order() > s.order() && s.is_subgroup_of(t))
        })
        .collect();
    maximal
        .iter()
        .fold(p_group.clone(), |acc, m| acc.intersection(m))
}

#[test]
fn frattini_matches_brute_force_intersection() {
    let groups = [
        (2, quaternion8()),
        (2, dihedral(4)),
        (2, cyclic(8)),
        (2, direct_product(&cyclic(4), &cyclic(2))),
        (3, heisenberg(3).unwrap()),
        (3, cyclic(9)),
        (3, direct_product(&cyclic(9), &cyclic(3))),
        (3, direct_product(&cyclic(3), &cyclic(3))),
    ];
    for (p, g) in groups {
        let phi = g.frattini_of_pgroup(p).unwrap();
        assert!(phi.same_elements(&brute_frattini(&g)), "order {}", g.order());
    }
}

#[test]
fn quotient_module_actions() {
    let v4 = direct_product(&cyclic(2), &cyclic(2));
    let trivial = PermGroup::trivial(v4.degree());
    let mats = quotient_module_action(&v4, &trivial, v4.generators(), 2).unwrap();
    assert!(mats.iter().all(|m| m.is_identity()));

    let a4 = alternating(4);
    let p = a4.nilpotent_residue();
    let u = PermGroup::trivial(4);
    let three = a4.elements().iter().find(|x| x.order() == 3).unwrap().clone();
    let mats = quotient_module_action(&p, &u, &[three], 2).unwrap();
    assert_eq!(mats[0].order(10), Some(3));

    let g = sl23();
    let q8 = g.nilpotent_residue();
    let z = q8.center();
    let three = g.elements().iter().find(|x| x.order() == 3).unwrap().clone();
    let mats = quotient_module_action(&q8, &z, &[three], 2).unwrap();
    assert_eq!((mats[0].rows(), mats[0].order(10)), (2, Some(3)));
}

#[test]
fn quotient_module_requires_elementary_abelian_section() {
    let c4 = cyclic(4);
    let u = PermGroup::trivial(4);
    assert_eq!(
        quotient_module_action(&c4, &u, &[], 2).unwrap_err(),
        GroupError::NotElementaryAbelian
    );
}

#[test]
fn structure_tests() {
    assert!(cyclic(6).is_cyclic());
    assert!(!symmetric(3).is_cyclic());
    assert!(quaternion8().is_generalized_quaternion());
    assert!(!dihedral(4).is_generalized_quaternion());
    assert!(crate::constructors::dicyclic(4).is_generalized_quaternion());
    let parts = direct_product(&cyclic(4), &cyclic(3))
        .nilpotent_sylow_decomposition()
        .unwrap();
    let orders: Vec<_> = parts.iter().map(|(q, s)| (*q, s.order())).collect();
    assert_eq!(orders, vec![(2, 4), (3, 3)]);
    assert_eq!(
        symmetric(3).nilpotent_sylow_decomposition().unwrap_err(),
        GroupError::NotNilpotent
    );
}

#[test]
fn quotients_by_residue_are_nilpotent() {
    for g in [symmetric(3), symmetric(4), sl23(), alternating(4), dihedral(5)] {
        let r = g.nilpotent_residue();
        assert!(g.is_normal_subgroup(&r));
        let q = g.quotient(&r).unwrap();
        assert_eq!(q.order() * r.order(), g.order());
        assert!(q.is_nilpotent());
    }
}

fn perm_strategy(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class_equation_holds(gens in prop::collection::vec(perm_strategy(6), 1..3)) {
        let g = PermGroup::from_generators(6, gens).unwrap();
        let data = g.class_data();
        let total: usize = data.classes.iter().map(|c| c.size).sum();
        prop_assert_eq!(total, g.order());
        for c in &data.classes {
            prop_assert_eq!(g.order() % c.size, 0);
        }
    }

    #[test]
    fn power_maps_compose(gens in prop::collection::vec(perm_strategy(6), 1..3), a in 0i64..12, b in 0i64..12) {
        let g = PermGroup::from_generators(6, gens).unwrap();
        let data = g.class_data();
        for c in 0..data.len() {
            prop_assert_eq!(data.power(data.power(c, a), b), data.power(c, a * b));
        }
    }

    #[test]
    fn residue_is_normal_with_nilpotent_quotient(gens in prop::collection::vec(perm_strategy(5), 1..3)) {
        let g = PermGroup::from_generators(5, gens).unwrap();
        let r = g.nilpotent_residue();
        prop_assert!(g.is_normal_subgroup(&r));
        prop_assert!(g.quotient(&r).unwrap().is_nilpotent());
    }

    #[test]
    fn permutation_group_laws(x in perm_strategy(7), y in perm_strategy(7), z in perm_strategy(7)) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert!(x.mul(&x.inverse()).is_identity());
        prop_assert!(x.pow(x.order() as i64).is_identity());
        prop_assert_eq!(x.conjugate_by(&y).order(), x.order());
    }
}
