//! Finite permutation groups at desk scale.
//!
//! Every group is fully enumerated (up to a configurable order bound) with
//! hashed membership. Subgroups are themselves [`PermGroup`]s on the same
//! point set; two subgroups are equal when their element sets are.

mod classes;
mod module_action;
mod permutation;
mod series;

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use thiserror::Error;

pub use classes::{ClassData, ConjugacyClassData};
pub use module_action::quotient_module_action;
pub use permutation::Permutation;

pub const DEFAULT_ORDER_BOUND: usize = 500_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid permutation {0}")]
    InvalidPermutation(String),
    #[error("generator of degree {got} in a group of degree {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("group order exceeds the bound {bound}")]
    OrderBoundExceeded { bound: usize },
    #[error("group of order {order} is not a {p}-group")]
    NotPGroup { order: usize, p: u64 },
    #[error("element is not in the group")]
    NotInGroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("quotient is not elementary abelian")]
    NotElementaryAbelian,
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("group is not solvable")]
    NotSolvable,
}

/// A subgroup is a permutation group on the parent's point set.
pub type Subgroup = PermGroup;

/// A finite permutation group with its full element list.
///
/// `elements[0]` is the identity; the rest follow breadth-first order from
/// the generators, so enumeration is deterministic.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    classes: OnceLock<ClassData>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("gens", &self.gens)
            .finish()
    }
}

impl PermGroup {
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Self, GroupError> {
        Self::from_generators_bounded(degree, gens, DEFAULT_ORDER_BOUND)
    }

    pub fn from_generators_bounded(
        degree: usize,
        gens: Vec<Permutation>,
        bound: usize,
    ) -> Result<Self, GroupError> {
        for g in &gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        extend_closure(&mut elements, &mut index, &gens, 0, bound)
            .ok_or(GroupError::OrderBoundExceeded { bound })?;
        Ok(PermGroup {
            degree,
            gens,
            elements,
            index,
            classes: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_generators(degree, Vec::new()).expect("trivial group")
    }

    /// Subgroup generated by `gens`, or `None` once it exceeds `cap` elements.
    pub fn generate_capped(
        degree: usize,
        gens: Vec<Permutation>,
        cap: usize,
    ) -> Option<Self> {
        Self::from_generators_bounded(degree, gens, cap).ok()
    }

    /// Builds the subgroup consisting of exactly `elements`, which must be
    /// closed under multiplication. A small generating set is chosen greedily.
    pub fn from_closed_set(degree: usize, elements: &[Permutation]) -> Self {
        let mut sub = PermGroup::trivial(degree);
        for x in elements {
            if !sub.contains(x) {
                sub = sub.extended_by(x);
            }
        }
        debug_assert_eq!(sub.order(), elements.len(), "element set not closed");
        sub
    }

    /// `⟨self, x⟩`, extending the element list in place.
    pub fn extended_by(&self, x: &Permutation) -> Self {
        if self.contains(x) {
            return self.clone();
        }
        let mut gens = self.gens.clone();
        gens.push(x.clone());
        let mut elements = self.elements.clone();
        let mut index = self.index.clone();
        // Right-multiplying every known element by the full generating set
        // reaches the whole new group.
        extend_closure_from(&mut elements, &mut index, &gens, usize::MAX);
        PermGroup {
            degree: self.degree,
            gens,
            elements,
            index,
            classes: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn identity(&self) -> &Permutation {
        &self.elements[0]
    }

    pub fn element_index(&self, x: &Permutation) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.index.contains_key(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    /// Element-set equality.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Subgroup of `self` generated by `gens`.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup, GroupError> {
        if gens.iter().any(|g| !self.contains(g)) {
            return Err(GroupError::NotInGroup);
        }
        PermGroup::from_generators_bounded(self.degree, gens, self.order())
    }

    /// `sub` is normalized by every generator of `self`.
    pub fn normalizes(&self, sub: &PermGroup) -> bool {
        self.gens
            .iter()
            .all(|g| sub.gens.iter().all(|n| sub.contains(&n.conjugate_by(g))))
    }

    pub fn is_normal_subgroup(&self, sub: &PermGroup) -> bool {
        sub.is_subgroup_of(self) && self.normalizes(sub)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Normal closure in `self` of the subgroup generated by `set`.
    pub fn normal_closure(&self, set: &[Permutation]) -> Result<PermGroup, GroupError> {
        let mut n = self.subgroup(set.to_vec())?;
        loop {
            let mut fresh = None;
            'scan: for x in n.gens.iter() {
                for g in &self.gens {
                    let c = x.conjugate_by(g);
                    if !n.contains(&c) {
                        fresh = Some(c);
                        break 'scan;
                    }
                }
            }
            match fresh {
                Some(c) => n = n.extended_by(&c),
                None => return Ok(n),
            }
        }
    }

    /// Elements of `self` commuting with every element of `sub`.
    pub fn centralizer(&self, sub: &PermGroup) -> PermGroup {
        let elems: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|x| sub.gens.iter().all(|s| x.commutes_with(s)))
            .cloned()
            .collect();
        PermGroup::from_closed_set(self.degree, &elems)
    }

    pub fn center(&self) -> PermGroup {
        self.centralizer(self)
    }

    /// Subgroup generated by `a` and `b` (both subgroups of `self`).
    pub fn join(&self, a: &PermGroup, b: &PermGroup) -> Result<PermGroup, GroupError> {
        let mut gens = a.gens.clone();
        gens.extend(b.gens.iter().cloned());
        self.subgroup(gens)
    }

    pub fn intersection(&self, other: &PermGroup) -> PermGroup {
        let elems: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|x| other.contains(x))
            .cloned()
            .collect();
        PermGroup::from_closed_set(self.degree, &elems)
    }

    pub fn exponent(&self) -> u64 {
        self.elements
            .iter()
            .fold(1u64, |acc, x| num_integer::lcm(acc, x.order()))
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        let mut m = self.order();
        while m.is_multiple_of(p as usize) {
            m /= p as usize;
        }
        m == 1
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order() as u64;
        self.elements.iter().any(|x| x.order() == n)
    }

    /// A nonabelian 2-group of order at least 8 with a unique involution and
    /// a cyclic subgroup of index 2.
    pub fn is_generalized_quaternion(&self) -> bool {
        let n = self.order();
        if n < 8 || !n.is_power_of_two() || self.is_abelian() {
            return false;
        }
        let involutions = self.elements.iter().filter(|x| x.order() == 2).count();
        involutions == 1 && self.elements.iter().any(|x| x.order() == (n / 2) as u64)
    }

    /// For nilpotent groups: the Sylow subgroups, one per prime divisor of
    /// the order, in increasing order of the prime.
    pub fn nilpotent_sylow_decomposition(&self) -> Result<Vec<(u64, PermGroup)>, GroupError> {
        if !self.is_nilpotent() {
            return Err(GroupError::NotNilpotent);
        }
        let primes = crate::number_theory::prime_divisors(self.order() as u64);
        Ok(primes
            .into_iter()
            .map(|q| {
                let elems: Vec<Permutation> = self
                    .elements
                    .iter()
                    .filter(|x| {
                        let mut o = x.order();
                        while o % q == 0 {
                            o /= q;
                        }
                        o == 1
                    })
                    .cloned()
                    .collect();
                (q, PermGroup::from_closed_set(self.degree, &elems))
            })
            .collect())
    }

    /// Orbit of a point under the group.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut out = vec![point];
        seen[point] = true;
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            for g in &self.gens {
                let y = g.image(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            k += 1;
        }
        out
    }

    /// The permutation group induced on the right cosets of the normal
    /// subgroup `n`; cosets are numbered by their first element in
    /// enumeration order.
    pub fn quotient(&self, n: &PermGroup) -> Result<PermGroup, GroupError> {
        if !self.is_normal_subgroup(n) {
            return Err(GroupError::NotNormal);
        }
        let (coset_of, reps) = self.right_cosets(n);
        let m = reps.len();
        let gens = self
            .gens
            .iter()
            .map(|h| {
                let images = reps
                    .iter()
                    .map(|&r| coset_of[self.index[&self.elements[r].mul(h)]])
                    .collect();
                Permutation::from_images(images)
            })
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::from_generators(m, gens)
    }

    /// Right cosets `n·g`: the coset id of every element, and the first
    /// element (by index) of each coset.
    pub fn right_cosets(&self, n: &PermGroup) -> (Vec<usize>, Vec<usize>) {
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for (i, g) in self.elements.iter().enumerate() {
            if coset_of[i] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(i);
            for x in n.elements() {
                let j = self.index[&x.mul(g)];
                coset_of[j] = id;
            }
        }
        (coset_of, reps)
    }

    pub fn class_data(&self) -> &ClassData {
        self.classes.get_or_init(|| ClassData::compute(self))
    }

    pub fn conjugacy_classes(&self) -> &[ConjugacyClassData] {
        &self.class_data().classes
    }
}

fn extend_closure(
    elements: &mut Vec<Permutation>,
    index: &mut HashMap<Permutation, usize>,
    gens: &[Permutation],
    start: usize,
    bound: usize,
) -> Option<()> {
    let mut queue: VecDeque<usize> = (start..elements.len()).collect();
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let y = elements[i].mul(g);
            if !index.contains_key(&y) {
                if elements.len() >= bound {
                    return None;
                }
                index.insert(y.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(y);
            }
        }
    }
    Some(())
}

fn extend_closure_from(
    elements: &mut Vec<Permutation>,
    index: &mut HashMap<Permutation, usize>,
    gens: &[Permutation],
    bound: usize,
) {
    extend_closure(elements, index, gens, 0, bound).expect("unbounded closure");
}

#[cfg(test)]
mod tests;
