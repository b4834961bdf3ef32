use super::*;
use crate::char_table::{character_table, DEFAULT_SEED};
use crate::constructors::{
    alternating, cyclic, dihedral, direct_product, heisenberg, quaternion8, symmetric,
};
use crate::corpus::corpus_group;
use crate::fp::FpMatrix;
use proptest::prelude::*;

fn m(p: u64, rows: &[&[i64]]) -> FpMatrix {
    FpMatrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn singer22() -> FpMatrix {
    m(2, &[&[0, 1], &[1, 1]])
}

fn report(name: &str) -> ClassificationReport {
    classify(&corpus_group(name).unwrap(), DEFAULT_SEED).unwrap()
}

#[test]
fn partitions() {
    for g in [quaternion8(), dihedral(4), cyclic(12), heisenberg(3).unwrap()] {
        let t = character_table(&g).unwrap();
        assert!(irr_partition(&t).unwrap().irr_s.is_empty());
    }
    let t = character_table(&symmetric(3)).unwrap();
    let part = irr_partition(&t).unwrap();
    assert_eq!(part.irr_s, vec![2]);
    assert_eq!(part.irr_n, vec![0, 1]);

    let t = character_table(&symmetric(4)).unwrap();
    let part = irr_partition(&t).unwrap();
    let degrees: Vec<u64> = part.irr_s.iter().map(|&r| t.degrees()[r]).collect();
    assert_eq!(degrees, vec![2, 3, 3]);
}

#[test]
fn single_class_examples() {
    let check = |g: PermGroup| {
        let t = character_table(&g).unwrap();
        is_single_galois_class(&t, &irr_partition(&t).unwrap()).unwrap()
    };
    assert!(check(symmetric(3)));
    assert!(check(dihedral(5)));
    assert!(!check(symmetric(4)));
    assert!(!check(quaternion8()));
}

#[test]
fn complements() {
    let s3 = symmetric(3);
    let h = find_complement(&s3, &s3.derived_subgroup(), DEFAULT_SEED).unwrap();
    assert_eq!(h.order(), 2);

    let a4 = alternating(4);
    let v4 = a4.nilpotent_residue();
    let h = find_complement(&a4, &v4, DEFAULT_SEED).unwrap();
    assert_eq!(h.order(), 3);
    assert!(h.intersection(&v4).is_trivial());

    let q8 = quaternion8();
    assert!(find_complement(&q8, &q8, 1).unwrap().is_trivial());

    assert!(matches!(
        find_complement(&symmetric(4), &alternating(4), 1),
        Err(ClassifyError::Hypothesis(_))
    ));
}

#[test]
fn complement_budget_is_reported() {
    let g = corpus_group("Heis3:Q8").unwrap();
    let p = g.nilpotent_residue();
    assert_eq!(
        find_complement_bounded(&g, &p, 3, 0).unwrap_err(),
        ClassifyError::ComplementNotFound { attempts: 0 }
    );
}

#[test]
fn frobenius_action_examples() {
    assert!(!check_frobenius_action(&[FpMatrix::identity(5, 2)], 5, 2).unwrap());
    assert!(check_frobenius_action(&[singer22()], 2, 2).unwrap());
    assert!(!check_frobenius_action(&[m(5, &[&[1, 0], &[0, 4]])], 5, 2).unwrap());
}

#[test]
fn irreducibility_examples() {
    assert!(check_irreducible_action(&[m(7, &[&[3]])], 7, 1).unwrap());
    assert!(check_irreducible_action(&[singer22()], 2, 2).unwrap());
    let block = m(5, &[&[2, 0], &[0, 3]]);
    assert!(!check_irreducible_action(&[block], 5, 2).unwrap());
}

#[test]
fn scalar_transitivity_examples() {
    let singer = crate::constructors::singer_matrix(3, 2).unwrap();
    assert!(check_scalar_transitivity(&[singer], 3, 2).unwrap());
    assert!(check_scalar_transitivity(&[m(5, &[&[4]])], 5, 1).unwrap());
    let rot = m(3, &[&[0, -1], &[1, 0]]);
    assert!(!check_scalar_transitivity(&[rot], 3, 2).unwrap());
}

#[test]
fn extraspecial_examples() {
    assert!(is_extraspecial_p3(&quaternion8(), 2));
    assert!(!is_extraspecial_p3(&cyclic(8), 2));
    assert!(is_extraspecial_p3(&heisenberg(3).unwrap(), 3));
    assert!(!is_extraspecial_p3(&direct_product(&cyclic(9), &cyclic(3)), 3));
}

#[test]
fn isaacs_bound_examples() {
    let a4 = alternating(4);
    let v4 = a4.nilpotent_residue();
    let c3 = find_complement(&a4, &v4, 1).unwrap();
    let action = GroupAction::conjugation(&c3, &v4).unwrap();
    assert!(check_isaacs_bound(&action).unwrap());

    let s3 = symmetric(3);
    let a3 = s3.derived_subgroup();
    let c2 = find_complement(&s3, &a3, 1).unwrap();
    assert!(check_isaacs_bound(&GroupAction::conjugation(&c2, &a3).unwrap()).unwrap());

    let q8 = quaternion8();
    let action = GroupAction::conjugation(&q8, &q8).unwrap();
    assert!(matches!(check_isaacs_bound(&action), Err(ClassifyError::Hypothesis(_))));
}

#[test]
fn frobenius_criterion_examples() {
    let c = check_frobenius_criterion(&[singer22()], 2, 2).unwrap();
    assert_eq!(c, FrobeniusCriterion { hypothesis: true, frobenius: true });
    let rot = m(3, &[&[0, -1], &[1, 0]]);
    let c = check_frobenius_criterion(&[rot], 3, 2).unwrap();
    assert!(c.hypothesis && c.frobenius);
    let diag = m(5, &[&[1, 0], &[0, 4]]);
    assert!(matches!(
        check_frobenius_criterion(&[diag], 5, 2),
        Err(ClassifyError::Hypothesis(_))
    ));
}

#[test]
fn monomial_dihedral_action_is_not_frobenius() {
    let swap = m(3, &[&[0, 1], &[1, 0]]);
    let neg = m(3, &[&[1, 0], &[0, 2]]);
    let c = check_frobenius_criterion(&[swap, neg], 3, 2).unwrap();
    assert!(!c.frobenius);
    assert!(!c.hypothesis);
}

#[test]
fn s3_report() {
    let r = report("S3");
    assert_eq!(r.verdict, Verdict::SingleGaloisClass);
    assert_eq!(r.case_tag, Some(CaseTag::A1));
    assert_eq!((r.p, r.n, r.d), (Some(3), Some(1), Some(1)));
    assert!(r.theorem_violation.is_none());
    assert!(r.checklist.items().iter().all(|(_, v)| *v != Some(false)));
}

#[test]
fn sl23_report() {
    let r = report("SL(2,3)");
    assert_eq!(r.case_tag, Some(CaseTag::A5));
    assert_eq!((r.p, r.n, r.d), (Some(2), Some(2), Some(1)));
    assert_eq!(r.order_k, Some(2));
}

#[test]
fn s4_report() {
    let r = report("S4");
    assert_eq!(r.verdict, Verdict::NotSingleClass);
    assert!(r.failure_reason.unwrap().starts_with("multiple kernels in irr_s"));
    assert!(r.theorem_violation.is_none());
}

#[test]
fn nilpotent_and_nonsolvable_reports() {
    let r = report("D8");
    assert_eq!(r.verdict, Verdict::NilpotentEmpty);
    assert!(r.irr_s_degrees.is_empty());
    let r = report("A5");
    assert_eq!(r.verdict, Verdict::NotSingleClass);
    assert_eq!(r.checklist.solvable, Some(false));
    assert!(r.theorem_violation.is_none());
}

#[test]
fn case_tags_parse_and_print() {
    for tag in CaseTag::ALL {
        assert_eq!(tag.to_string().parse::<CaseTag>().unwrap(), tag);
    }
    assert!("a8".parse::<CaseTag>().is_err());
    assert_eq!(serde_json::to_string(&CaseTag::A3).unwrap(), "\"a3\"");
}

#[test]
fn report_text_lists_checklist() {
    let text = report("A4").to_text();
    assert!(text.contains("case: a1"));
    assert!(text.contains("frobenius_action"));
}

#[test]
fn module_witness_of_a4() {
    let w = module_witness(&alternating(4), 1).unwrap().unwrap();
    assert_eq!((w.p, w.n), (2, 2));
    assert_eq!(w.h.order(), 3);
    assert!(w.c.is_trivial());
    assert_eq!(w.matrices.len(), w.h.generators().len());
    assert!(module_witness(&symmetric(4), 1).unwrap().is_none());
}

fn invertible_2x2(p: u64) -> impl Strategy<Value = FpMatrix> {
    (0..p as i64, 0..p as i64, 0..p as i64, 0..p as i64)
        .prop_map(move |(a, b, c, d)| m(p, &[&[a, b], &[c, d]]))
        .prop_filter("invertible", |x| x.is_invertible())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frobenius_criterion_conclusion_holds(a in invertible_2x2(3), b in invertible_2x2(3)) {
        let mats = [a, b];
        match check_frobenius_criterion(&mats, 3, 2) {
            Ok(c) => prop_assert!(!c.hypothesis || c.frobenius),
            Err(ClassifyError::Hypothesis(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn isaacs_bound_holds_on_nilpotent_linear_actions(a in invertible_2x2(5)) {
        let action = GroupAction::linear(&[a], 5, 2).unwrap();
        match check_isaacs_bound(&action) {
            Ok(ok) => prop_assert!(ok),
            Err(ClassifyError::Hypothesis(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn frobenius_actions_have_regular_orbits(a in invertible_2x2(5)) {
        if check_frobenius_action(std::slice::from_ref(&a), 5, 2).unwrap() {
            let order = matrix_group_elements(&[a], 5, 2, 1000).unwrap().len();
            prop_assert_eq!(24 % order, 0);
        }
    }
}
