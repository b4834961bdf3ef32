//! Linear actions of matrix groups over `F_p` and coprime actions of
//! nilpotent groups.

use std::collections::{HashSet, VecDeque};

use super::ClassifyError;
use crate::fp::{index_vector, vector_index, FpMatrix};
use crate::number_theory::{prime_divisors, primitive_root};
use crate::perm_group::{PermGroup, Permutation};

pub const DEFAULT_MATRIX_GROUP_BOUND: usize = 100_000;

/// All elements of `⟨mats⟩ ≤ GL(n, p)`, identity first, in breadth-first
/// order.
pub fn matrix_group_elements(
    mats: &[FpMatrix],
    p: u64,
    n: u32,
    bound: usize,
) -> Result<Vec<FpMatrix>, ClassifyError> {
    let id = FpMatrix::identity(p, n as usize);
    let mut seen: HashSet<FpMatrix> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut k = 0;
    while k < out.len() {
        for m in mats {
            let y = out[k].mul(m);
            if seen.insert(y.clone()) {
                if out.len() >= bound {
                    return Err(ClassifyError::MatrixGroupTooLarge { bound });
                }
                out.push(y);
            }
        }
        k += 1;
    }
    Ok(out)
}

/// Every nonidentity element of `⟨mats⟩` fixes only the zero vector; the
/// group must be nontrivial.
pub fn check_frobenius_action(mats: &[FpMatrix], p: u64, n: u32) -> Result<bool, ClassifyError> {
    let elems = matrix_group_elements(mats, p, n, DEFAULT_MATRIX_GROUP_BOUND)?;
    if elems.len() == 1 {
        return Ok(false);
    }
    let id = &elems[0];
    Ok(elems[1..].iter().all(|m| m.sub(id).is_invertible()))
}

/// Dimension of the smallest `⟨mats⟩`-invariant subspace containing `v`.
fn spin_dimension(mats: &[FpMatrix], v: Vec<u64>, p: u64, n: usize) -> usize {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut queue = VecDeque::from([v]);
    while let Some(w) = queue.pop_front() {
        rows.push(w.iter().map(|&x| x as i64).collect());
        if FpMatrix::from_rows(p, &rows).rank() < rows.len() {
            rows.pop();
            continue;
        }
        if rows.len() == n {
            break;
        }
        for m in mats {
            queue.push_back(m.apply_row(&w));
        }
    }
    rows.len()
}

/// No proper nonzero subspace of `F_p^n` is invariant under `⟨mats⟩`.
pub fn check_irreducible_action(
    mats: &[FpMatrix],
    p: u64,
    n: u32,
) -> Result<bool, ClassifyError> {
    let n = n as usize;
    let total = (p as usize).pow(n as u32);
    Ok((1..total).all(|idx| spin_dimension(mats, index_vector(idx, p, n), p, n) == n))
}

/// Orbit of the point `start` of `F_p^n` under `⟨mats⟩`.
fn vector_orbit(mats: &[FpMatrix], start: usize, p: u64, n: usize) -> usize {
    let total = (p as usize).pow(n as u32);
    let mut seen = vec![false; total];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut count = 1;
    while let Some(i) = queue.pop_front() {
        let v = index_vector(i, p, n);
        for m in mats {
            let j = vector_index(&m.apply_row(&v), p);
            if !seen[j] {
                seen[j] = true;
                count += 1;
                queue.push_back(j);
            }
        }
    }
    count
}

/// `⟨mats, r·I⟩`, `r` a primitive root mod `p`, is transitive on the
/// `p^n - 1` nonzero vectors.
pub fn check_scalar_transitivity(
    mats: &[FpMatrix],
    p: u64,
    n: u32,
) -> Result<bool, ClassifyError> {
    let nu = n as usize;
    let r = primitive_root(p)?;
    let mut gens = mats.to_vec();
    gens.push(FpMatrix::scalar(p, nu, r));
    let total = (p as usize).pow(n);
    Ok(vector_orbit(&gens, 1, p, nu) == total - 1)
}

/// A group `N` acting on the elements of a group `G`: `images[i][j]` is the
/// index in `G` of the image of `G`'s `j`-th element under `N`'s `i`-th.
#[derive(Debug, Clone)]
pub struct GroupAction {
    pub acting: PermGroup,
    pub target: PermGroup,
    pub images: Vec<Vec<usize>>,
}

impl GroupAction {
    /// Conjugation action of `acting` on `target`, both inside one
    /// permutation group with `acting` normalizing `target`.
    pub fn conjugation(acting: &PermGroup, target: &PermGroup) -> Result<Self, ClassifyError> {
        let images = acting
            .elements()
            .iter()
            .map(|h| {
                target
                    .elements()
                    .iter()
                    .map(|x| {
                        target
                            .element_index(&x.conjugate_by(h))
                            .ok_or_else(|| {
                                ClassifyError::Hypothesis("acting group does not normalize".into())
                            })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        Ok(GroupAction {
            acting: acting.clone(),
            target: target.clone(),
            images,
        })
    }

    /// `⟨mats⟩` acting linearly on the additive group of `F_p^n`, both
    /// realized as permutation groups of the vectors.
    pub fn linear(mats: &[FpMatrix], p: u64, n: u32) -> Result<Self, ClassifyError> {
        let nu = n as usize;
        let points = (p as usize).pow(n);
        let as_perm = |m: &FpMatrix| {
            Permutation::from_images(
                (0..points)
                    .map(|i| vector_index(&m.apply_row(&index_vector(i, p, nu)), p))
                    .collect(),
            )
        };
        let gens = mats.iter().map(as_perm).collect::<Result<Vec<_>, _>>()?;
        let acting = PermGroup::from_generators(points, gens)?;
        let translations = (0..nu)
            .map(|i| {
                Permutation::from_images(
                    (0..points)
                        .map(|idx| {
                            let mut v = index_vector(idx, p, nu);
                            v[i] = (v[i] + 1) % p;
                            vector_index(&v, p)
                        })
                        .collect(),
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        let target = PermGroup::from_generators(points, translations)?;
        // a translation is identified by the image of the zero vector
        let mut by_vector = vec![0usize; points];
        for (j, t) in target.elements().iter().enumerate() {
            by_vector[t.image(0)] = j;
        }
        let images = acting
            .elements()
            .iter()
            .map(|m| {
                target
                    .elements()
                    .iter()
                    .map(|t| by_vector[m.image(t.image(0))])
                    .collect()
            })
            .collect();
        Ok(GroupAction {
            acting,
            target,
            images,
        })
    }

    fn centralizer_order(&self, j: usize) -> usize {
        self.images.iter().filter(|img| img[j] == j).count()
    }

    fn is_faithful(&self) -> bool {
        self.images
            .iter()
            .skip(1)
            .all(|img| img.iter().enumerate().any(|(j, &k)| j != k))
    }
}

/// For a nontrivial nilpotent group acting faithfully and coprimely: some
/// element `g` has `|C_N(g)|^p ≤ |N|/p`, `p` the least prime dividing `|N|`.
pub fn check_isaacs_bound(action: &GroupAction) -> Result<bool, ClassifyError> {
    let n_order = action.acting.order();
    if n_order == 1 {
        return Err(ClassifyError::Hypothesis("acting group is trivial".into()));
    }
    if !action.acting.is_nilpotent() {
        return Err(ClassifyError::Hypothesis("acting group is not nilpotent".into()));
    }
    if num_integer::gcd(n_order, action.target.order()) != 1 {
        return Err(ClassifyError::Hypothesis("action is not coprime".into()));
    }
    if !action.is_faithful() {
        return Err(ClassifyError::Hypothesis("action is not faithful".into()));
    }
    let p = prime_divisors(n_order as u64)[0] as u128;
    Ok((0..action.target.order()).any(|j| {
        let c = action.centralizer_order(j) as u128;
        c.pow(p as u32) * p <= n_order as u128
    }))
}

/// Outcome of the pointwise Frobenius criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrobeniusCriterion {
    /// Every stabilizer is trivial or has order whose square `|H|` divides.
    pub hypothesis: bool,
    /// Every nonzero vector has trivial stabilizer.
    pub frobenius: bool,
}

/// Evaluates the stabilizer hypothesis for a nontrivial nilpotent group
/// acting faithfully and irreducibly on `F_p^n`, and whether the action is
/// Frobenius.
pub fn check_frobenius_criterion(
    mats: &[FpMatrix],
    p: u64,
    n: u32,
) -> Result<FrobeniusCriterion, ClassifyError> {
    let action = GroupAction::linear(mats, p, n)?;
    let h = action.acting.order();
    if h == 1 {
        return Err(ClassifyError::Hypothesis("acting group is trivial".into()));
    }
    if !action.acting.is_nilpotent() {
        return Err(ClassifyError::Hypothesis("acting group is not nilpotent".into()));
    }
    if !check_irreducible_action(mats, p, n)? {
        return Err(ClassifyError::Hypothesis("action is reducible".into()));
    }
    let mut hypothesis = true;
    let mut frobenius = true;
    for j in 1..action.target.order() {
        let c = action.centralizer_order(j);
        if c != 1 {
            frobenius = false;
            if (c * c) % h != 0 {
                hypothesis = false;
            }
        }
    }
    Ok(FrobeniusCriterion {
        hypothesis,
        frobenius,
    })
}
