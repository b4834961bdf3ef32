//! Named test groups with their expected classification.

use crate::classify::{CaseTag, Verdict};
use crate::constructors::{
    alternating, construct_case, cyclic, dicyclic, dihedral, direct_product, heisenberg,
    quaternion8, symmetric, CaseParams,
};
use crate::perm_group::PermGroup;

/// What the classification of a corpus group should produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Expected {
    pub verdict: Verdict,
    pub tag: Option<CaseTag>,
    /// `(p, n, d)` for positive cases.
    pub pnd: Option<(u64, u32, u64)>,
}

impl Expected {
    const fn nilpotent() -> Self {
        Expected {
            verdict: Verdict::NilpotentEmpty,
            tag: None,
            pnd: None,
        }
    }

    const fn negative() -> Self {
        Expected {
            verdict: Verdict::NotSingleClass,
            tag: None,
            pnd: None,
        }
    }

    const fn case(tag: CaseTag, p: u64, n: u32, d: u64) -> Self {
        Expected {
            verdict: Verdict::SingleGaloisClass,
            tag: Some(tag),
            pnd: Some((p, n, d)),
        }
    }

    /// Single Galois class outside every listed case.
    const fn untagged() -> Self {
        Expected {
            verdict: Verdict::SingleGaloisClass,
            tag: None,
            pnd: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub group: PermGroup,
    pub expected: Expected,
}

fn case(tag: CaseTag, p: u64, n: u32, d: u64, height: u32) -> PermGroup {
    construct_case(&CaseParams::new(tag, p, n, d, height)).expect("corpus case parameters")
}

/// The fixed corpus, in a stable order.
pub fn default_corpus() -> Vec<CorpusEntry> {
    use CaseTag::*;
    let entry = |name, group, expected| CorpusEntry {
        name,
        group,
        expected,
    };
    let c3sq_c4 = crate::constructors::affine_semidirect(
        3,
        2,
        &[crate::fp::FpMatrix::from_rows(3, &[vec![0, -1], vec![1, 0]])],
        1,
    )
    .expect("C3^2:C4");
    vec![
        entry("trivial", PermGroup::trivial(1), Expected::nilpotent()),
        entry("C3", cyclic(3), Expected::nilpotent()),
        entry("C5", cyclic(5), Expected::nilpotent()),
        entry("C6", cyclic(6), Expected::nilpotent()),
        entry("C12", cyclic(12), Expected::nilpotent()),
        entry("D8", dihedral(4), Expected::nilpotent()),
        entry("Q8", quaternion8(), Expected::nilpotent()),
        entry("Heis3", heisenberg(3).expect("heisenberg"), Expected::nilpotent()),
        entry(
            "C3xQ8",
            direct_product(&cyclic(3), &quaternion8()),
            Expected::nilpotent(),
        ),
        entry("S3", symmetric(3), Expected::case(A1, 3, 1, 1)),
        entry("D10", dihedral(5), Expected::case(A1, 5, 1, 2)),
        entry("D14", dihedral(7), Expected::case(A1, 7, 1, 3)),
        entry("C7:C3", case(A1, 7, 1, 2, 1), Expected::case(A1, 7, 1, 2)),
        entry("A4", alternating(4), Expected::case(A1, 2, 2, 1)),
        entry("SL(2,3)", case(A5, 2, 2, 1, 1), Expected::case(A5, 2, 2, 1)),
        entry("C3^2:Q8", case(A2, 3, 2, 1, 1), Expected::case(A2, 3, 2, 1)),
        entry("V4:C9", case(A3, 2, 2, 1, 2), Expected::case(A3, 2, 2, 1)),
        entry("Heis3:C8", case(A4, 3, 2, 1, 1), Expected::case(A4, 3, 2, 1)),
        entry("Heis3:Q8", case(A6, 3, 2, 1, 1), Expected::case(A6, 3, 2, 1)),
        entry("Q8:C9", case(A7, 2, 2, 1, 2), Expected::case(A7, 2, 2, 1)),
        entry("S4", symmetric(4), Expected::negative()),
        entry("A5", alternating(5), Expected::negative()),
        entry("C3^2:C4", c3sq_c4, Expected::negative()),
        entry(
            "S3xC3",
            direct_product(&symmetric(3), &cyclic(3)),
            Expected::negative(),
        ),
        entry(
            "S3xC2",
            direct_product(&symmetric(3), &cyclic(2)),
            Expected::untagged(),
        ),
        entry("Dic12", dicyclic(3), Expected::untagged()),
    ]
}

pub fn corpus_group(name: &str) -> Option<PermGroup> {
    default_corpus()
        .into_iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
        .map(|e| e.group)
}
