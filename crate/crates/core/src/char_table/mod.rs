//! Exact irreducible character tables of permutation groups.
//!
//! Tables are computed by the Burnside–Dixon method: simultaneous
//! eigenvectors of the class matrices over a prime field `F_ℓ` with
//! `ℓ ≡ 1 (mod e)`, lifted to cyclotomic integers through root-of-unity
//! multiplicities. Every table is checked for exact row and column
//! orthogonality before it is returned.

mod dixon;

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{CyclotomicAccumulator, CyclotomicError, CyclotomicNumber};
use crate::number_theory::NumberTheoryError;
use crate::perm_group::{ConjugacyClassData, GroupError, PermGroup, Permutation, Subgroup};

pub use dixon::class_structure_constants;

pub const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharTableError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    NumberTheory(#[from] NumberTheoryError),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
    #[error("group exponent {exponent} exceeds the conductor bound {bound}")]
    ConductorBound { exponent: u64, bound: u64 },
    #[error("character table verification failed: {0}")]
    Verification(String),
    #[error("{k} is not a unit modulo the exponent {exponent}")]
    NotCoprime { k: i64, exponent: u64 },
    #[error("Galois conjugate of row {row} is not a row of the table")]
    RowNotFound { row: usize },
}

/// An exact character table. The principal character is row 0; the other
/// rows are sorted by degree, then by their values (coefficient vectors at
/// the group exponent) in class order.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Arc<PermGroup>,
    degrees: Vec<u64>,
    values: Vec<Vec<CyclotomicNumber>>,
    exponent: u64,
    seed: u64,
    dixon_prime: u64,
    row_index: HashMap<Vec<Vec<i128>>, usize>,
}

/// One irreducible character with its kernel and Galois stabilizer.
#[derive(Debug, Clone)]
pub struct Character {
    pub row: usize,
    pub values: Vec<CyclotomicNumber>,
    pub degree: u64,
    pub kernel: Subgroup,
    /// Units `k` modulo the exponent with `χ^{σ_k} = χ`.
    pub galois_stabilizer: Vec<u64>,
}

/// Computes the character table with the default seed.
pub fn character_table(g: &PermGroup) -> Result<CharacterTable, CharTableError> {
    CharacterTable::compute(g, DEFAULT_SEED)
}

impl CharacterTable {
    pub fn compute(g: &PermGroup, seed: u64) -> Result<Self, CharTableError> {
        Self::compute_bounded(g, seed, crate::cyclotomic::DEFAULT_CONDUCTOR_BOUND)
    }

    pub fn compute_bounded(
        g: &PermGroup,
        seed: u64,
        conductor_bound: u64,
    ) -> Result<Self, CharTableError> {
        let exponent = g.class_data().exponent;
        if exponent > conductor_bound {
            return Err(CharTableError::ConductorBound {
                exponent,
                bound: conductor_bound,
            });
        }
        let out = dixon::compute(g, seed)?;
        let keys: Vec<Vec<Vec<i128>>> = out
            .values
            .iter()
            .map(|row| row_key(row, exponent))
            .collect::<Result<_, _>>()?;
        let one = CyclotomicNumber::one();
        let nonprincipal: Vec<bool> = out
            .values
            .iter()
            .map(|row| row.iter().any(|v| *v != one))
            .collect();
        let mut order: Vec<usize> = (0..out.degrees.len()).collect();
        order.sort_by(|&a, &b| {
            (out.degrees[a], nonprincipal[a], &keys[a]).cmp(&(out.degrees[b], nonprincipal[b], &keys[b]))
        });
        let degrees: Vec<u64> = order.iter().map(|&i| out.degrees[i]).collect();
        let row_index = order
            .iter()
            .enumerate()
            .map(|(new, &old)| (keys[old].clone(), new))
            .collect::<HashMap<_, _>>();
        let mut values = out.values;
        let values: Vec<Vec<CyclotomicNumber>> = order
            .iter()
            .map(|&i| std::mem::take(&mut values[i]))
            .collect();
        if row_index.len() != degrees.len() {
            return Err(CharTableError::Verification("duplicate rows".into()));
        }
        let table = CharacterTable {
            group: Arc::new(g.clone()),
            degrees,
            values,
            exponent,
            seed,
            dixon_prime: out.prime,
            row_index,
        };
        table.verify()?;
        Ok(table)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn classes(&self) -> &[ConjugacyClassData] {
        self.group.conjugacy_classes()
    }

    pub fn num_rows(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn values(&self) -> &[Vec<CyclotomicNumber>] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[CyclotomicNumber] {
        &self.values[i]
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dixon_prime(&self) -> u64 {
        self.dixon_prime
    }

    pub fn order(&self) -> u64 {
        self.group.order() as u64
    }

    /// Degrees, orthogonality of rows and of columns, in exact arithmetic.
    pub fn verify(&self) -> Result<(), CharTableError> {
        let classes = self.classes();
        let r = classes.len();
        let order = self.order() as i128;
        if self.num_rows() != r {
            return Err(CharTableError::Verification(format!(
                "{} rows for {r} classes",
                self.num_rows()
            )));
        }
        let sum_sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq as i128 != order {
            return Err(CharTableError::Verification(format!(
                "sum of squared degrees {sum_sq} != |G| = {order}"
            )));
        }
        for (i, row) in self.values.iter().enumerate() {
            if row[0].as_integer() != Some(self.degrees[i] as i128) {
                return Err(CharTableError::Verification(format!(
                    "row {i} does not start with its degree"
                )));
            }
        }
        let conj: Vec<Vec<CyclotomicNumber>> = self
            .values
            .iter()
            .map(|row| row.iter().map(CyclotomicNumber::conjugate).collect())
            .collect();
        for a in 0..r {
            for b in a..r {
                let mut acc = CyclotomicAccumulator::new(self.exponent);
                for (k, cls) in classes.iter().enumerate() {
                    acc.add_product(&self.values[a][k], &conj[b][k], cls.size as i128)?;
                }
                let expected = if a == b { order } else { 0 };
                if acc.finish()?.as_integer() != Some(expected) {
                    return Err(CharTableError::Verification(format!(
                        "rows {a} and {b} are not orthogonal"
                    )));
                }
            }
        }
        for k in 0..r {
            for l in k..r {
                let mut acc = CyclotomicAccumulator::new(self.exponent);
                for i in 0..r {
                    acc.add_product(&self.values[i][k], &conj[i][l], 1)?;
                }
                let expected = if k == l {
                    order / classes[k].size as i128
                } else {
                    0
                };
                if acc.finish()?.as_integer() != Some(expected) {
                    return Err(CharTableError::Verification(format!(
                        "columns {k} and {l} are not orthogonal"
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self, k: i64) -> Result<u64, CharTableError> {
        let e = self.exponent;
        let km = k.rem_euclid(e as i64) as u64;
        if num_integer::gcd(km, e) != 1 {
            return Err(CharTableError::NotCoprime { k, exponent: e });
        }
        Ok(km)
    }

    /// Row index of `χ^{σ_k}`, read off the power map: `χ^{σ_k}(g) = χ(g^k)`.
    pub fn galois_conjugate_index(&self, row: usize, k: i64) -> Result<usize, CharTableError> {
        let km = self.check_unit(k)?;
        let cd = self.group.class_data();
        let key: Vec<Vec<i128>> = (0..cd.len())
            .map(|c| self.values[row][cd.power(c, km as i64)].coefficients_at(self.exponent))
            .collect::<Result<_, _>>()?;
        self.row_index
            .get(&key)
            .copied()
            .ok_or(CharTableError::RowNotFound { row })
    }

    /// `χ^{σ_k}`, computed through the power map and cross-checked against
    /// applying `ζ ↦ ζ^k` to every value.
    pub fn galois_conjugate(&self, row: usize, k: i64) -> Result<usize, CharTableError> {
        let target = self.galois_conjugate_index(row, k)?;
        let km = self.check_unit(k)? as i64;
        for (c, v) in self.values[row].iter().enumerate() {
            if v.galois_apply(km)? != self.values[target][c] {
                return Err(CharTableError::Verification(format!(
                    "entrywise and power-map Galois action disagree on row {row}, k = {k}"
                )));
            }
        }
        Ok(target)
    }

    /// Units modulo the exponent, in increasing order.
    pub fn galois_units(&self) -> Vec<u64> {
        let e = self.exponent;
        (1..=e).filter(|&k| num_integer::gcd(k % e, e) == 1).collect()
    }

    /// Orbits of the unit group modulo `e` on the rows, each sorted, ordered
    /// by their least row.
    pub fn galois_orbits(&self) -> Result<Vec<Vec<usize>>, CharTableError> {
        let r = self.num_rows();
        let mut orbit_of = vec![usize::MAX; r];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let units = self.galois_units();
        for row in 0..r {
            if orbit_of[row] != usize::MAX {
                continue;
            }
            let mut orbit = Vec::new();
            for &k in &units {
                let j = self.galois_conjugate_index(row, k as i64)?;
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = orbits.len();
                    orbit.push(j);
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    pub fn galois_stabilizer(&self, row: usize) -> Result<Vec<u64>, CharTableError> {
        let mut out = Vec::new();
        for k in self.galois_units() {
            if self.galois_conjugate_index(row, k as i64)? == row {
                out.push(k);
            }
        }
        Ok(out)
    }

    pub fn is_rational_row(&self, row: usize) -> bool {
        self.values[row].iter().all(CyclotomicNumber::is_rational)
    }

    /// Whether the field of values of the row lies in `Q(ζ_p)`.
    pub fn field_in_pth_cyclotomic(&self, row: usize, p: u64) -> Result<bool, CharTableError> {
        let e = self.exponent;
        if !e.is_multiple_of(p) {
            return Ok(self.is_rational_row(row));
        }
        for k in self.galois_units() {
            if k % p == 1 % p && self.galois_conjugate_index(row, k as i64)? != row {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Classes on which the row takes the value `χ(1)`, as a subgroup.
    pub fn kernel_of(&self, row: usize) -> Result<Subgroup, CharTableError> {
        let deg = CyclotomicNumber::from_integer(self.degrees[row] as i128);
        let g = &self.group;
        let elems: Vec<Permutation> = self
            .classes()
            .iter()
            .enumerate()
            .filter(|(c, _)| self.values[row][*c] == deg)
            .flat_map(|(_, cls)| cls.elements.iter().map(|&i| g.elements()[i].clone()))
            .collect();
        let kernel = g.subgroup(elems.clone())?;
        if kernel.order() != elems.len() || !g.is_normal_subgroup(&kernel) {
            return Err(CharTableError::Verification(format!(
                "kernel of row {row} is not a normal subgroup"
            )));
        }
        Ok(kernel)
    }

    pub fn character(&self, row: usize) -> Result<Character, CharTableError> {
        Ok(Character {
            row,
            values: self.values[row].clone(),
            degree: self.degrees[row],
            kernel: self.kernel_of(row)?,
            galois_stabilizer: self.galois_stabilizer(row)?,
        })
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            order: self.order(),
            exponent: self.exponent,
            seed: self.seed,
            classes: self
                .classes()
                .iter()
                .map(|c| ClassJson {
                    size: c.size as u64,
                    elt_order: c.element_order,
                })
                .collect(),
            degrees: self.degrees.clone(),
            values: self
                .values
                .iter()
                .map(|row| row.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }

    /// Plain-text dump: one header line per class, one line per row.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "order {}  exponent {}  classes {}  seed {}\n",
            self.order(),
            self.exponent,
            self.num_rows(),
            self.seed
        );
        for (c, cls) in self.classes().iter().enumerate() {
            out.push_str(&format!(
                "class {c}: size {} order {}\n",
                cls.size, cls.element_order
            ));
        }
        for (i, row) in self.values.iter().enumerate() {
            let vals: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&format!("X.{i} [{}]: {}\n", self.degrees[i], vals.join(" | ")));
        }
        out
    }
}

fn row_key(row: &[CyclotomicNumber], e: u64) -> Result<Vec<Vec<i128>>, CyclotomicError> {
    row.iter().map(|v| v.coefficients_at(e)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub size: u64,
    pub elt_order: u64,
}

/// On-disk character table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub order: u64,
    pub exponent: u64,
    pub seed: u64,
    pub classes: Vec<ClassJson>,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<String>>,
}

#[cfg(test)]
mod tests;
