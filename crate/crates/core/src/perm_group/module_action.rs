use std::collections::HashMap;

use super::{GroupError, PermGroup, Permutation};
use crate::fp::FpMatrix;

/// Matrices of the conjugation action of `acting` on the elementary abelian
/// section `P/U`, as row vectors acted on from the right.
///
/// The basis of `P/U` is chosen greedily: the first elements of `P` in
/// enumeration order that are independent modulo the span so far.
pub fn quotient_module_action(
    p_group: &PermGroup,
    u: &PermGroup,
    acting: &[Permutation],
    p: u64,
) -> Result<Vec<FpMatrix>, GroupError> {
    if !p_group.is_p_group(p) {
        return Err(GroupError::NotPGroup {
            order: p_group.order(),
            p,
        });
    }
    if !p_group.is_normal_subgroup(u) {
        return Err(GroupError::NotNormal);
    }
    // P/U elementary abelian iff U contains all p-th powers and commutators.
    let gens = p_group.generators();
    let elementary = gens.iter().all(|x| u.contains(&x.pow(p as i64)))
        && gens
            .iter()
            .all(|a| gens.iter().all(|b| u.contains(&Permutation::commutator(a, b))));
    if !elementary {
        return Err(GroupError::NotElementaryAbelian);
    }

    let mut basis: Vec<Permutation> = Vec::new();
    let mut span = u.clone();
    for x in p_group.elements() {
        if span.order() == p_group.order() {
            break;
        }
        if !span.contains(x) {
            basis.push(x.clone());
            span = span.extended_by(x);
        }
    }
    let n = basis.len();

    let mut coords: HashMap<Permutation, Vec<u64>> = HashMap::with_capacity(p_group.order());
    let total = (p as usize).pow(n as u32);
    for code in 0..total {
        let v = crate::fp::index_vector(code, p, n);
        let x = v
            .iter()
            .zip(&basis)
            .fold(Permutation::identity(p_group.degree()), |acc, (&c, b)| {
                acc.mul(&b.pow(c as i64))
            });
        for w in u.elements() {
            coords.insert(w.mul(&x), v.clone());
        }
    }
    debug_assert_eq!(coords.len(), p_group.order());

    acting
        .iter()
        .map(|h| {
            let mut m = FpMatrix::zero(p, n, n);
            for (i, b) in basis.iter().enumerate() {
                let img = b.conjugate_by(h);
                let row = coords.get(&img).ok_or(GroupError::NotNormal)?;
                for (j, &c) in row.iter().enumerate() {
                    m.set(i, j, c);
                }
            }
            Ok(m)
        })
        .collect()
}
