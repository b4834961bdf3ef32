//! Class-matrix eigenvector method over a prime field, with lifting of the
//! modular values to cyclotomic integers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::CharTableError;
use crate::cyclotomic::CyclotomicNumber;
use crate::fp::{add_mod, inv_mod, mul_mod, pow_mod, sub_mod, FpMatrix};
use crate::number_theory::{find_dixon_prime, primitive_root};
use crate::perm_group::{ClassData, PermGroup};

/// Random combinations tried on a space before falling back to the
/// individual class matrices.
const RANDOM_SPLIT_ATTEMPTS: usize = 8;

pub(super) struct DixonOutput {
    pub prime: u64,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<CyclotomicNumber>>,
}

/// `a[j][i][k] = #{(x, y) ∈ C_i × C_j : xy = z_k}` for fixed `z_k ∈ C_k`.
pub fn class_structure_constants(g: &PermGroup) -> Vec<Vec<Vec<u64>>> {
    let cd = g.class_data();
    let r = cd.len();
    let elements = g.elements();
    let inverses: Vec<_> = elements.iter().map(|y| y.inverse()).collect();
    let per_k: Vec<Vec<Vec<u64>>> = (0..r)
        .into_par_iter()
        .map(|k| {
            let z = &cd.classes[k].representative;
            let mut counts = vec![vec![0u64; r]; r];
            for (j, cls) in cd.classes.iter().enumerate() {
                for &y in &cls.elements {
                    let x = z.mul(&inverses[y]);
                    let i = cd.class_of[g.element_index(&x).expect("closed group")];
                    counts[j][i] += 1;
                }
            }
            counts
        })
        .collect();
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (k, counts) in per_k.into_iter().enumerate() {
        for j in 0..r {
            for i in 0..r {
                a[j][i][k] = counts[j][i];
            }
        }
    }
    a
}

/// Characteristic polynomial (low degree first) via Hessenberg reduction.
fn char_poly(m: &FpMatrix) -> Vec<u64> {
    let p = m.modulus();
    let n = m.rows();
    let mut h: Vec<Vec<u64>> = m.to_rows();
    for col in 1..n.saturating_sub(1) {
        let Some(piv) = (col..n).find(|&i| h[i][col - 1] != 0) else {
            continue;
        };
        if piv != col {
            h.swap(piv, col);
            for row in h.iter_mut() {
                row.swap(piv, col);
            }
        }
        let t_inv = inv_mod(h[col][col - 1], p);
        for i in col + 1..n {
            let u = mul_mod(h[i][col - 1], t_inv, p);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let v = mul_mod(u, h[col][j], p);
                h[i][j] = sub_mod(h[i][j], v, p);
            }
            for row in h.iter_mut() {
                let v = mul_mod(u, row[i], p);
                row[col] = add_mod(row[col], v, p);
            }
        }
    }
    // p_0 = 1; p_m = (x - h_mm) p_{m-1} - Σ_i h_{m-i,m} (Π sub-diagonal) p_{m-i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let hm = h[m - 1][m - 1];
        let prev = &polys[m - 1];
        let mut next = vec![0u64; m + 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = add_mod(next[d + 1], c, p);
            next[d] = sub_mod(next[d], mul_mod(hm, c, p), p);
        }
        let mut prod = 1u64;
        for i in 1..m {
            prod = mul_mod(prod, h[m - i][m - i - 1], p);
            let coef = mul_mod(h[m - i - 1][m - 1], prod, p);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[m - i - 1].iter().enumerate() {
                next[d] = sub_mod(next[d], mul_mod(coef, c, p), p);
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn eval_poly(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter()
        .rev()
        .fold(0u64, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
}

/// Matrix of `a` restricted to the invariant subspace spanned by `basis`
/// (rows in reduced echelon form with the given pivots), acting on column
/// vectors: `A b_s = Σ_t R[t][s] b_t`.
fn restrict(a: &FpMatrix, basis: &[Vec<u64>], pivots: &[usize]) -> FpMatrix {
    let p = a.modulus();
    let d = basis.len();
    let mut r = FpMatrix::zero(p, d, d);
    for (s, b) in basis.iter().enumerate() {
        let ab: Vec<u64> = (0..a.rows())
            .map(|i| {
                b.iter()
                    .enumerate()
                    .fold(0u64, |acc, (k, &bk)| add_mod(acc, mul_mod(a.get(i, k), bk, p), p))
            })
            .collect();
        for (t, &pc) in pivots.iter().enumerate() {
            r.set(t, s, ab[pc]);
        }
    }
    r
}

fn echelon(p: u64, vectors: Vec<Vec<u64>>) -> (Vec<Vec<u64>>, Vec<usize>) {
    let cols = vectors[0].len();
    let rows: Vec<Vec<i64>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| x as i64).collect())
        .collect();
    let mut m = FpMatrix::from_rows(p, &rows);
    let pivots = m.rref();
    let basis = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
    debug_assert!(pivots.iter().all(|&c| c < cols));
    (basis, pivots)
}

/// Splits the space spanned by `basis` into eigenspaces of `a`. Returns
/// `None` when `a` acts as a scalar on it.
fn split(
    a: &FpMatrix,
    basis: &[Vec<u64>],
    pivots: &[usize],
) -> Result<Option<Vec<Vec<Vec<u64>>>>, CharTableError> {
    let p = a.modulus();
    let r = restrict(a, basis, pivots);
    let poly = char_poly(&r);
    let roots: Vec<u64> = (0..p).filter(|&x| eval_poly(&poly, x, p) == 0).collect();
    if roots.len() <= 1 {
        if roots.is_empty() {
            return Err(CharTableError::Verification(
                "class matrix has no eigenvalue in the Dixon field".into(),
            ));
        }
        return Ok(None);
    }
    let d = basis.len();
    let mut pieces = Vec::with_capacity(roots.len());
    let mut total = 0;
    for lambda in roots {
        let shifted = r.sub(&FpMatrix::scalar(p, d, lambda));
        let coords = shifted.null_space();
        total += coords.len();
        let vectors: Vec<Vec<u64>> = coords
            .iter()
            .map(|c| {
                let mut v = vec![0u64; basis[0].len()];
                for (s, &cs) in c.iter().enumerate() {
                    if cs == 0 {
                        continue;
                    }
                    for (vi, &bi) in v.iter_mut().zip(&basis[s]) {
                        *vi = add_mod(*vi, mul_mod(cs, bi, p), p);
                    }
                }
                v
            })
            .collect();
        pieces.push(vectors);
    }
    if total != d {
        return Err(CharTableError::Verification(
            "class algebra is not split semisimple modulo the Dixon prime".into(),
        ));
    }
    Ok(Some(pieces))
}

/// Simultaneous eigenvectors of the class matrices, one per irreducible
/// character, each normalized to 1 at the identity class.
fn central_characters(
    class_matrices: &[FpMatrix],
    p: u64,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<u64>>, CharTableError> {
    let r = class_matrices.len();
    let full: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut pending = vec![(full, (0..r).collect::<Vec<_>>())];
    let mut done = Vec::new();
    while let Some((basis, pivots)) = pending.pop() {
        if basis.len() == 1 {
            done.push(basis.into_iter().next().unwrap());
            continue;
        }
        let mut pieces = None;
        for _ in 0..RANDOM_SPLIT_ATTEMPTS {
            let mut combo = FpMatrix::zero(p, r, r);
            for m in class_matrices {
                let c = rng.gen_range(0..p);
                for i in 0..r {
                    for j in 0..r {
                        let v = add_mod(combo.get(i, j), mul_mod(c, m.get(i, j), p), p);
                        combo.set(i, j, v);
                    }
                }
            }
            pieces = split(&combo, &basis, &pivots)?;
            if pieces.is_some() {
                break;
            }
        }
        if pieces.is_none() {
            for m in class_matrices {
                pieces = split(m, &basis, &pivots)?;
                if pieces.is_some() {
                    break;
                }
            }
        }
        let pieces = pieces.ok_or_else(|| {
            CharTableError::Verification("class matrices fail to separate a subspace".into())
        })?;
        for vectors in pieces {
            pending.push(echelon(p, vectors));
        }
    }
    done.into_iter()
        .map(|w| {
            if w[0] == 0 {
                return Err(CharTableError::Verification(
                    "central character vanishes at the identity".into(),
                ));
            }
            let inv = inv_mod(w[0], p);
            Ok(w.iter().map(|&x| mul_mod(x, inv, p)).collect())
        })
        .collect()
}

fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub(super) fn compute(g: &PermGroup, seed: u64) -> Result<DixonOutput, CharTableError> {
    let cd: &ClassData = g.class_data();
    let r = cd.len();
    let order = g.order() as u64;
    let e = cd.exponent;
    let ell = find_dixon_prime(e, order)?;
    if ell >= 1 << 32 {
        return Err(CharTableError::Verification(format!(
            "Dixon prime {ell} does not fit the field arithmetic"
        )));
    }

    let a = class_structure_constants(g);
    let class_matrices: Vec<FpMatrix> = a
        .iter()
        .map(|aj| {
            let mut m = FpMatrix::zero(ell, r, r);
            for (i, row) in aj.iter().enumerate() {
                for (k, &c) in row.iter().enumerate() {
                    m.set(i, k, c % ell);
                }
            }
            m
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let omegas = central_characters(&class_matrices, ell, &mut rng)?;
    if omegas.len() != r {
        return Err(CharTableError::Verification(format!(
            "found {} central characters for {r} classes",
            omegas.len()
        )));
    }

    let sizes: Vec<u64> = cd.classes.iter().map(|c| c.size as u64).collect();
    let inv_class: Vec<usize> = (0..r).map(|c| cd.inverse_class(c)).collect();
    let max_degree = isqrt(order);

    let mut modular_rows = Vec::with_capacity(r);
    let mut degrees = Vec::with_capacity(r);
    for w in &omegas {
        let s = (0..r).fold(0u64, |acc, k| {
            let t = mul_mod(mul_mod(w[k], w[inv_class[k]], ell), inv_mod(sizes[k] % ell, ell), ell);
            add_mod(acc, t, ell)
        });
        if s == 0 {
            return Err(CharTableError::Verification("degenerate degree equation".into()));
        }
        let deg_sq = mul_mod(order % ell, inv_mod(s, ell), ell);
        let deg = (1..=max_degree)
            .find(|&d| mul_mod(d, d, ell) == deg_sq && order.is_multiple_of(d))
            .ok_or_else(|| {
                CharTableError::Verification("no admissible character degree".into())
            })?;
        let row: Vec<u64> = (0..r)
            .map(|k| mul_mod(mul_mod(w[k], deg, ell), inv_mod(sizes[k] % ell, ell), ell))
            .collect();
        modular_rows.push(row);
        degrees.push(deg);
    }

    let root = primitive_root(ell)?;
    let zeta_e = pow_mod(root, (ell - 1) / e, ell);
    let values = modular_rows
        .par_iter()
        .zip(degrees.par_iter())
        .map(|(row, &deg)| lift_row(cd, row, deg, zeta_e, ell))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(DixonOutput {
        prime: ell,
        degrees,
        values,
    })
}

/// `χ(g) = Σ_t m_t ζ_o^t` with `m_t = (1/o) Σ_s χ(g^s) ω^{-st}`, `o` the
/// order of `g`; the `m_t` are nonnegative and at most `χ(1) < ℓ/2`.
fn lift_row(
    cd: &ClassData,
    row: &[u64],
    degree: u64,
    zeta_e: u64,
    ell: u64,
) -> Result<Vec<CyclotomicNumber>, CharTableError> {
    let e = cd.exponent;
    cd.classes
        .iter()
        .enumerate()
        .map(|(k, cls)| {
            let o = cls.element_order;
            let omega = pow_mod(zeta_e, e / o, ell);
            let omega_inv = inv_mod(omega, ell);
            let o_inv = inv_mod(o % ell, ell);
            let mut mults = vec![0i128; o as usize];
            for (t, m) in mults.iter_mut().enumerate() {
                let step = pow_mod(omega_inv, t as u64, ell);
                let mut acc = 0u64;
                let mut w = 1u64;
                for s in 0..o {
                    let val = row[cd.power(k, s as i64)];
                    acc = add_mod(acc, mul_mod(val, w, ell), ell);
                    w = mul_mod(w, step, ell);
                }
                let mt = mul_mod(acc, o_inv, ell);
                if mt > degree {
                    return Err(CharTableError::Verification(format!(
                        "root multiplicity {mt} exceeds degree {degree} at class {k}"
                    )));
                }
                *m = mt as i128;
            }
            let value = CyclotomicNumber::from_root_multiplicities(o, &mults)?;
            Ok(value.to_conductor(e)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_of_companion() {
        // companion of x^3 - 2x + 5 over F_7
        let m = FpMatrix::from_rows(7, &[vec![0, 1, 0], vec![0, 0, 1], vec![-5, 2, 0]]);
        assert_eq!(char_poly(&m), vec![5, 5, 0, 1]);
    }

    #[test]
    fn char_poly_matches_determinant() {
        let m = FpMatrix::from_rows(
            13,
            &[vec![3, 1, 4, 1], vec![5, 9, 2, 6], vec![5, 3, 5, 8], vec![9, 7, 9, 3]],
        );
        let poly = char_poly(&m);
        for x in 0..13 {
            let det = FpMatrix::scalar(13, 4, x).sub(&m).determinant();
            assert_eq!(eval_poly(&poly, x, 13), det, "x = {x}");
        }
    }
}
