//! Commutator series, nilpotent residue, Frattini subgroups of p-groups.

use super::{GroupError, PermGroup, Permutation};

impl PermGroup {
    /// `[a, b]` for subgroups `a`, `b` normalized by `self`: the normal
    /// closure in `self` of the commutators of their generators.
    pub fn commutator_subgroup(&self, a: &PermGroup, b: &PermGroup) -> PermGroup {
        let comms: Vec<Permutation> = a
            .generators()
            .iter()
            .flat_map(|x| b.generators().iter().map(move |y| Permutation::commutator(x, y)))
            .collect();
        self.normal_closure(&comms)
            .expect("commutators of subgroup elements lie in the group")
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        self.commutator_subgroup(self, self)
    }

    /// `γ_1 = G, γ_{i+1} = [γ_i, G]`, up to and including the first repeated term.
    pub fn lower_central_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.commutator_subgroup(last, self);
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    /// `G ⊇ G' ⊇ G'' ⊇ …` until the terms stabilize.
    pub fn derived_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    /// Stable term of the lower central series.
    pub fn nilpotent_residue(&self) -> PermGroup {
        self.lower_central_series().pop().unwrap()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotent_residue().is_trivial()
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    /// For solvable groups, Fitting height ≤ 2 iff the nilpotent residue is
    /// nilpotent.
    pub fn has_fitting_height_at_most_two(&self) -> Result<bool, GroupError> {
        if !self.is_solvable() {
            return Err(GroupError::NotSolvable);
        }
        Ok(self.nilpotent_residue().is_nilpotent())
    }

    /// `Φ(P) = P'·P^p`, generated as a normal subgroup by the commutators and
    /// `p`-th powers of the generators.
    pub fn frattini_of_pgroup(&self, p: u64) -> Result<PermGroup, GroupError> {
        if !self.is_p_group(p) {
            return Err(GroupError::NotPGroup {
                order: self.order(),
                p,
            });
        }
        let gens = self.generators();
        let mut set: Vec<Permutation> = gens.iter().map(|x| x.pow(p as i64)).collect();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                set.push(Permutation::commutator(a, b));
            }
        }
        self.normal_closure(&set)
    }
}
