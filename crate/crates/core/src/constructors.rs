//! Permutation realizations of the case families and of standard small groups.
//!
//! Affine groups act on the `p^n` vectors of `F_p^n` (vector `v` is point
//! `Σ v_i p^i`); extraspecial groups act regularly on their own elements.
//! Cyclic covers that act through a proper quotient get an extra regular
//! orbit so the action stays faithful.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{
    check_frobenius_action, check_irreducible_action, check_scalar_transitivity, CaseTag,
    ClassifyError,
};
use crate::fp::{index_vector, vector_index, FpMatrix};
use crate::number_theory::{
    checked_pow, companion_matrix, divisors, is_mersenne_prime, is_prime, primitive_polynomial,
    primitive_root, NumberTheoryError,
};
use crate::perm_group::{GroupError, PermGroup, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("PARAMS-INVALID: {0}")]
    ParamsInvalid(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    NumberTheory(#[from] NumberTheoryError),
    #[error(transparent)]
    Classify(#[from] Box<ClassifyError>),
}

impl From<ClassifyError> for ConstructError {
    fn from(e: ClassifyError) -> Self {
        ConstructError::Classify(Box::new(e))
    }
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, ConstructError> {
    Err(ConstructError::ParamsInvalid(msg.into()))
}

/// Parameters of one case family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseParams {
    pub tag: CaseTag,
    pub p: u64,
    pub n: u32,
    pub d: u64,
    /// Exponent `h` of the cyclic cover `C_{m^h}` for the families whose
    /// complement has a nontrivial kernel; 1 otherwise.
    pub height: u32,
}

impl CaseParams {
    pub fn new(tag: CaseTag, p: u64, n: u32, d: u64, height: u32) -> Self {
        CaseParams {
            tag,
            p,
            n,
            d,
            height,
        }
    }

    /// The `d` each family is built with when none is given: `p - 1` for a3
    /// and a5, `(p - 1)/2` for a4, `p - 1` for a6, and 1 otherwise.
    pub fn default_d(tag: CaseTag, p: u64) -> u64 {
        match tag {
            CaseTag::A3 | CaseTag::A5 | CaseTag::A6 => p.saturating_sub(1).max(1),
            CaseTag::A4 => (p.saturating_sub(1) / 2).max(1),
            _ => 1,
        }
    }

    /// 2 for the cover families a3 and a7, 1 otherwise.
    pub fn default_height(tag: CaseTag) -> u32 {
        if matches!(tag, CaseTag::A3 | CaseTag::A7) {
            2
        } else {
            1
        }
    }

    /// `p^n · |H|` as the parameters describe it, before any validation.
    pub fn nominal_order(&self) -> Option<u64> {
        let pn = checked_pow(self.p, self.n).ok()?;
        let h = match self.tag {
            CaseTag::A1 | CaseTag::A2 => (pn - 1) / self.d.max(1),
            CaseTag::A3 => {
                let q = (pn - 1) / (self.p - 1);
                checked_pow(q, self.height).ok()?
            }
            CaseTag::A4 | CaseTag::A5 | CaseTag::A6 => {
                return (pn - 1)
                    .checked_div(self.d.max(1))?
                    .checked_mul(checked_pow(self.p, 3).ok()?)
            }
            CaseTag::A7 => return checked_pow(3, self.height).ok()?.checked_mul(8),
        };
        pn.checked_mul(h)
    }
}

/// Companion matrix of the first primitive polynomial of degree `n`; it
/// generates a Singer cycle of order `p^n - 1`.
pub fn singer_matrix(p: u64, n: u32) -> Result<FpMatrix, ConstructError> {
    let poly = primitive_polynomial(p, n)?;
    Ok(companion_matrix(p, &poly))
}

fn vector_count(p: u64, n: u32) -> Result<usize, ConstructError> {
    let q = checked_pow(p, n)?;
    if q > crate::perm_group::DEFAULT_ORDER_BOUND as u64 {
        return invalid(format!("{p}^{n} points exceed the order bound"));
    }
    Ok(q as usize)
}

/// `v ↦ vM` on the vector points, padded to `degree`.
fn linear_perm(m: &FpMatrix, points: usize, degree: usize) -> Permutation {
    let p = m.modulus();
    let n = m.rows();
    let mut images: Vec<usize> = (0..degree).collect();
    for (idx, slot) in images.iter_mut().enumerate().take(points) {
        let v = index_vector(idx, p, n);
        *slot = vector_index(&m.apply_row(&v), p);
    }
    Permutation::from_images(images).expect("invertible matrix permutes vectors")
}

fn translation_perm(p: u64, n: usize, i: usize, points: usize, degree: usize) -> Permutation {
    let mut images: Vec<usize> = (0..degree).collect();
    for (idx, slot) in images.iter_mut().enumerate().take(points) {
        let mut v = index_vector(idx, p, n);
        v[i] = (v[i] + 1) % p;
        *slot = vector_index(&v, p);
    }
    Permutation::from_images(images).expect("translation")
}

/// An `len`-cycle on `offset..offset+len`, identity elsewhere.
fn cycle_on(offset: usize, len: usize, degree: usize) -> Permutation {
    let mut images: Vec<usize> = (0..degree).collect();
    for k in 0..len {
        images[offset + k] = offset + (k + 1) % len;
    }
    Permutation::from_images(images).expect("cycle")
}

fn check_invertible(mats: &[FpMatrix], p: u64, n: usize) -> Result<(), ConstructError> {
    for m in mats {
        if m.modulus() != p || m.rows() != n || m.cols() != n {
            return invalid(format!("matrix is not {n}x{n} over F_{p}"));
        }
        if !m.is_invertible() {
            return invalid("singular matrix");
        }
    }
    Ok(())
}

/// Order of a single matrix and the prime it is a power of, for cyclic
/// covers: the cover of height `h` is `C_{m^h}` with `m` the (prime) order.
fn cover_length(mats: &[FpMatrix], height: u32) -> Result<usize, ConstructError> {
    if mats.len() != 1 {
        return invalid("a cyclic cover needs exactly one matrix");
    }
    let m = mats[0]
        .order(1 << 20)
        .ok_or_else(|| ConstructError::ParamsInvalid("matrix order too large".into()))?;
    if !is_prime(m) {
        return invalid(format!("cover of a matrix of non-prime order {m}"));
    }
    Ok(checked_pow(m, height)? as usize)
}

/// `F_p^n ⋊ H` with `H = ⟨mats⟩` acting by `v ↦ vM`. With `central_height
/// = h > 1` the single matrix `M` (of prime order `m`) is replaced by a
/// cyclic group of order `m^h` acting through `⟨M⟩`.
pub fn affine_semidirect(
    p: u64,
    n: u32,
    mats: &[FpMatrix],
    central_height: u32,
) -> Result<PermGroup, ConstructError> {
    if !is_prime(p) || n == 0 || central_height == 0 {
        return invalid(format!("bad affine parameters p={p} n={n} h={central_height}"));
    }
    let points = vector_count(p, n)?;
    check_invertible(mats, p, n as usize)?;
    let extra = if central_height > 1 {
        cover_length(mats, central_height)?
    } else {
        0
    };
    let degree = points + extra;
    let mut gens: Vec<Permutation> = (0..n as usize)
        .map(|i| translation_perm(p, n as usize, i, points, degree))
        .collect();
    for m in mats {
        let mut g = linear_perm(m, points, degree);
        if extra > 0 {
            g = g.mul(&cycle_on(points, extra, degree));
        }
        gens.push(g);
    }
    Ok(PermGroup::from_generators(degree, gens)?)
}

/// Generators `x, y ∈ SL(2, p)` of a generalized quaternion group of order
/// `target_order`: `x` of order `target_order/2`, `y² = x^{target_order/4}`,
/// `x^y = x⁻¹`. The scan runs over matrices in lexicographic entry order.
pub fn quaternion_subgroup_sl2(
    p: u64,
    target_order: u64,
) -> Result<(FpMatrix, FpMatrix), ConstructError> {
    if !is_prime(p) || p > 31 {
        return invalid(format!("quaternion scan needs a prime p <= 31, got {p}"));
    }
    let sl_order = p * (p * p - 1);
    if target_order < 8 || !target_order.is_power_of_two() || !sl_order.is_multiple_of(target_order) {
        return invalid(format!(
            "no generalized quaternion subgroup of order {target_order} in SL(2,{p})"
        ));
    }
    let sl2: Vec<FpMatrix> = (0..p.pow(4))
        .map(|code| {
            let v = index_vector(code as usize, p, 4);
            FpMatrix::from_rows(
                p,
                &[
                    vec![v[3] as i64, v[2] as i64],
                    vec![v[1] as i64, v[0] as i64],
                ],
            )
        })
        .filter(|m| m.determinant() == 1)
        .collect();
    let half = target_order / 2;
    let central = target_order / 4;
    for x in sl2.iter().filter(|m| m.order(half + 1) == Some(half)) {
        let x_inv = x.inverse().expect("invertible");
        let z = x.pow(central);
        for y in &sl2 {
            if y.mul(y) == z {
                let y_inv = y.inverse().expect("invertible");
                if y_inv.mul(x).mul(y) == x_inv {
                    return Ok((x.clone(), y.clone()));
                }
            }
        }
    }
    invalid(format!(
        "no generalized quaternion subgroup of order {target_order} in SL(2,{p})"
    ))
}

/// A finite group given by a multiplication table, realized by its right
/// regular action.
struct Table {
    size: usize,
    mul: Box<dyn Fn(usize, usize) -> usize>,
}

impl Table {
    fn right_mult(&self, g: usize, degree: usize) -> Permutation {
        let mut images: Vec<usize> = (0..degree).collect();
        for (x, slot) in images.iter_mut().enumerate().take(self.size) {
            *slot = (self.mul)(x, g);
        }
        Permutation::from_images(images).expect("group table row")
    }
}

/// `(a, b, c)` ↦ `a + p b + p² c`: the upper unitriangular matrix with
/// superdiagonal `a, b` and corner `c`.
fn heisenberg_table(p: u64) -> Table {
    let pu = p as usize;
    let decode = move |x: usize| (x % pu, (x / pu) % pu, x / (pu * pu));
    Table {
        size: pu * pu * pu,
        mul: Box::new(move |x, y| {
            let (a, b, c) = decode(x);
            let (a2, b2, c2) = decode(y);
            let na = (a + a2) % pu;
            let nb = (b + b2) % pu;
            let nc = (c + c2 + a * b2) % pu;
            na + pu * nb + pu * pu * nc
        }),
    }
}

/// Q₈ as `sign·unit` with units `1, i, j, k` = `0..4` and sign bit `4`.
fn quaternion_table() -> Table {
    // unit products: (sign, unit)
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    Table {
        size: 8,
        mul: Box::new(|x, y| {
            let (s, u) = UNIT[x % 4][y % 4];
            let sign = (x / 4 + y / 4 + s) % 2;
            u + 4 * sign
        }),
    }
}

/// Heisenberg group of order `p³` (exponent `p` for odd `p`) acting
/// regularly; for `p = 2` this is the dihedral group of order 8.
pub fn heisenberg(p: u64) -> Result<PermGroup, ConstructError> {
    if !is_prime(p) || p > 31 {
        return invalid(format!("heisenberg({p})"));
    }
    let t = heisenberg_table(p);
    let pu = p as usize;
    let gens = vec![t.right_mult(1, t.size), t.right_mult(pu, t.size)];
    Ok(PermGroup::from_generators(t.size, gens)?)
}

/// Q₈ acting regularly on 8 points.
pub fn quaternion8() -> PermGroup {
    let t = quaternion_table();
    PermGroup::from_generators(8, vec![t.right_mult(1, 8), t.right_mult(2, 8)])
        .expect("Q8")
}

/// Automorphism of the Heisenberg group induced by `M ∈ GL(2, p)`: in the
/// coordinates `(v, s)` with product `s + s' + ω(v, v')/2`, it sends
/// `(v, s) ↦ (vM, det(M)·s)`.
fn heisenberg_automorphism(m: &FpMatrix) -> Vec<usize> {
    let p = m.modulus();
    let pu = p as usize;
    let half = crate::fp::inv_mod(2, p);
    let det = m.determinant();
    (0..pu * pu * pu)
        .map(|x| {
            let (a, b, c) = ((x % pu) as u64, ((x / pu) % pu) as u64, (x / (pu * pu)) as u64);
            let s = crate::fp::sub_mod(c, crate::fp::mul_mod(crate::fp::mul_mod(a, b, p), half, p), p);
            let w = m.apply_row(&[a, b]);
            let s2 = crate::fp::mul_mod(det, s, p);
            let c2 = crate::fp::add_mod(s2, crate::fp::mul_mod(crate::fp::mul_mod(w[0], w[1], p), half, p), p);
            w[0] as usize + pu * w[1] as usize + pu * pu * c2 as usize
        })
        .collect()
}

/// `i ↦ j ↦ k ↦ i` on Q₈, inducing the Singer matrix of `GL(2, 2)` on
/// `Q₈/Z`.
fn quaternion_automorphism(power: u64) -> Vec<usize> {
    (0..8)
        .map(|x| {
            let (sign, unit) = (x / 4, x % 4);
            let unit = if unit == 0 {
                0
            } else {
                (unit - 1 + power as usize) % 3 + 1
            };
            unit + 4 * sign
        })
        .collect()
}

/// `E(p^{1+2}) ⋊ H` where `H = ⟨mats⟩ ≤ GL(2, p)` acts on `P/Z` by the
/// matrices and on `Z` by the determinant. For `p = 2`, `P = Q₈` and every
/// matrix must lie in the Singer cycle of `GL(2, 2)`. With `central_height
/// = h > 1` a single matrix of prime order `m` is replaced by `C_{m^h}`
/// acting through it.
pub fn extraspecial_semidirect(
    p: u64,
    mats: &[FpMatrix],
    central_height: u32,
) -> Result<PermGroup, ConstructError> {
    if !is_prime(p) || p > 31 || central_height == 0 {
        return invalid(format!("extraspecial parameters p={p} h={central_height}"));
    }
    check_invertible(mats, p, 2)?;
    let (table, autos): (Table, Vec<Vec<usize>>) = if p == 2 {
        let s = singer_matrix(2, 2)?;
        let mut autos = Vec::new();
        for m in mats {
            let k = (0..3)
                .find(|&k| s.pow(k) == *m)
                .ok_or_else(|| {
                    ConstructError::ParamsInvalid(
                        "over F_2 only the order-3 automorphisms of Q8 are supported".into(),
                    )
                })?;
            autos.push(quaternion_automorphism(k));
        }
        (quaternion_table(), autos)
    } else {
        (
            heisenberg_table(p),
            mats.iter().map(heisenberg_automorphism).collect(),
        )
    };
    let size = table.size;
    let extra = if central_height > 1 {
        cover_length(mats, central_height)?
    } else {
        0
    };
    let degree = size + extra;
    let (gx, gy) = if p == 2 { (1, 2) } else { (1, p as usize) };
    let mut gens = vec![table.right_mult(gx, degree), table.right_mult(gy, degree)];
    for auto in autos {
        let mut images: Vec<usize> = (0..degree).collect();
        images[..size].copy_from_slice(&auto);
        let mut g = Permutation::from_images(images)?;
        if extra > 0 {
            g = g.mul(&cycle_on(size, extra, degree));
        }
        gens.push(g);
    }
    Ok(PermGroup::from_generators(degree, gens)?)
}

fn scalar(p: u64, n: usize, order: u64) -> Result<FpMatrix, ConstructError> {
    let r = primitive_root(p)?;
    Ok(FpMatrix::scalar(
        p,
        n,
        crate::fp::pow_mod(r, (p - 1) / order, p),
    ))
}

/// Matrices of the complement image on `P/U` for the given case, plus the
/// cover height used. Parameter points that violate the case arithmetic
/// are rejected here.
pub fn case_matrices(params: &CaseParams) -> Result<Vec<FpMatrix>, ConstructError> {
    let CaseParams { tag, p, n, d, height } = *params;
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    if n == 0 {
        return invalid("n must be positive");
    }
    if d == 0 || (p - 1) % d != 0 {
        return invalid(format!("d = {d} does not divide p - 1 = {}", p - 1));
    }
    let pn = checked_pow(p, n)?;
    let needs_two = matches!(tag, CaseTag::A2 | CaseTag::A4 | CaseTag::A5 | CaseTag::A6 | CaseTag::A7);
    if needs_two && n != 2 {
        return invalid(format!("{tag} requires n = 2"));
    }
    let covers = matches!(tag, CaseTag::A3 | CaseTag::A7);
    if covers && height < 2 {
        return invalid(format!("{tag} requires height >= 2"));
    }
    if !covers && height != 1 {
        return invalid(format!("{tag} requires height 1"));
    }
    let s = || singer_matrix(p, n);
    match tag {
        CaseTag::A1 => Ok(vec![s()?.pow(d)]),
        CaseTag::A2 => {
            if !is_mersenne_prime(p) {
                return invalid(format!("{p} is not a Mersenne prime"));
            }
            let (q_order, odd) = if d % 2 == 1 {
                (2 * (p + 1), (p - 1) / (2 * d))
            } else {
                (p + 1, (p - 1) / d)
            };
            let (x, y) = quaternion_subgroup_sl2(p, q_order)?;
            let mut mats = vec![x, y];
            if odd > 1 {
                mats.push(scalar(p, 2, odd)?);
            }
            Ok(mats)
        }
        CaseTag::A3 => {
            let q = (pn - 1) / (p - 1);
            if !is_prime(q) {
                return invalid(format!("(p^n - 1)/(p - 1) = {q} is not prime"));
            }
            if d != p - 1 {
                return invalid(format!("{tag} requires d = p - 1"));
            }
            Ok(vec![s()?.pow(p - 1)])
        }
        CaseTag::A4 => {
            if p == 2 || d != (p - 1) / 2 {
                return invalid(format!("{tag} requires odd p and d = (p - 1)/2"));
            }
            Ok(vec![s()?.pow(d)])
        }
        CaseTag::A5 => {
            if d != p - 1 {
                return invalid(format!("{tag} requires d = p - 1"));
            }
            Ok(vec![s()?.pow(p - 1)])
        }
        CaseTag::A6 => {
            if !is_mersenne_prime(p) {
                return invalid(format!("{p} is not a Mersenne prime"));
            }
            if p == 2 || (d != (p - 1) / 2 && d != p - 1) {
                return invalid(format!("{tag} requires d in {{(p-1)/2, p-1}}"));
            }
            let (x, y) = quaternion_subgroup_sl2(p, (p * p - 1) / d)?;
            Ok(vec![x, y])
        }
        CaseTag::A7 => {
            if p != 2 || d != 1 {
                return invalid(format!("{tag} requires p = 2, n = 2, d = 1"));
            }
            Ok(vec![s()?])
        }
    }
}

/// Builds the group for a case, checking afterwards that the complement
/// image acts Frobeniusly, irreducibly, and transitively together with the
/// scalars.
pub fn construct_case(params: &CaseParams) -> Result<PermGroup, ConstructError> {
    let mats = case_matrices(params)?;
    let CaseParams { tag, p, n, height, .. } = *params;
    if !check_frobenius_action(&mats, p, n)? {
        return invalid("complement does not act Frobeniusly");
    }
    if !check_irreducible_action(&mats, p, n)? {
        return invalid("complement does not act irreducibly");
    }
    if !check_scalar_transitivity(&mats, p, n)? {
        return invalid("complement with scalars is not transitive on nonzero vectors");
    }
    match tag {
        CaseTag::A1 | CaseTag::A2 | CaseTag::A3 => affine_semidirect(p, n, &mats, height),
        _ => extraspecial_semidirect(p, &mats, height),
    }
}

/// Parameter points of a sweep: every tag in `tags`, `p ∈ primes`,
/// `p^n ≤ max_field`, `d | p - 1`, heights 2 and 3 for the cover families,
/// restricted to nominal order at most `max_order`.
pub fn sweep_points(
    tags: &[CaseTag],
    primes: &[u64],
    max_field: u64,
    max_order: u64,
) -> Vec<CaseParams> {
    let mut out = Vec::new();
    for &tag in tags {
        for &p in primes {
            let mut n = 1u32;
            while let Ok(pn) = checked_pow(p, n) {
                if pn > max_field {
                    break;
                }
                for d in divisors(p - 1) {
                    let heights: &[u32] = if matches!(tag, CaseTag::A3 | CaseTag::A7) {
                        &[2, 3]
                    } else {
                        &[1]
                    };
                    for &h in heights {
                        let params = CaseParams::new(tag, p, n, d, h);
                        let two_dim = matches!(
                            tag,
                            CaseTag::A2 | CaseTag::A4 | CaseTag::A5 | CaseTag::A6 | CaseTag::A7
                        );
                        if two_dim && n != 2 || tag == CaseTag::A3 && n < 2 {
                            continue;
                        }
                        if params.nominal_order().is_some_and(|o| o <= max_order) {
                            out.push(params);
                        }
                    }
                }
                n += 1;
            }
        }
    }
    out.sort();
    out
}

pub fn cyclic(n: usize) -> PermGroup {
    if n == 1 {
        return PermGroup::trivial(1);
    }
    PermGroup::from_generators(n, vec![cycle_on(0, n, n)]).expect("cyclic")
}

/// Dihedral group of order `2n` on the `n` vertices of a polygon.
pub fn dihedral(n: usize) -> PermGroup {
    let rotation = cycle_on(0, n, n);
    let reflection =
        Permutation::from_images((0..n).map(|i| (n - i) % n).collect()).expect("reflection");
    PermGroup::from_generators(n, vec![rotation, reflection]).expect("dihedral")
}

pub fn symmetric(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(n.max(1));
    }
    let swap = Permutation::from_cycles(n, &[&[0, 1]]).expect("transposition");
    PermGroup::from_generators(n, vec![cycle_on(0, n, n), swap]).expect("symmetric")
}

pub fn alternating(n: usize) -> PermGroup {
    let gens = (2..n)
        .map(|k| Permutation::from_cycles(n, &[&[0, 1, k]]).expect("3-cycle"))
        .collect();
    PermGroup::from_generators(n.max(1), gens).expect("alternating")
}

/// `A × B` on the disjoint union of the two point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let (da, db) = (a.degree(), b.degree());
    let degree = da + db;
    let lift = |g: &Permutation, offset: usize, len: usize| {
        let mut images: Vec<usize> = (0..degree).collect();
        for i in 0..len {
            images[offset + i] = offset + g.image(i);
        }
        Permutation::from_images(images).expect("lifted permutation")
    };
    let mut gens: Vec<Permutation> = a.generators().iter().map(|g| lift(g, 0, da)).collect();
    gens.extend(b.generators().iter().map(|g| lift(g, da, db)));
    PermGroup::from_generators(degree, gens).expect("direct product")
}

/// Dicyclic group of order `4m` acting regularly: `⟨a, x | a^{2m}, x² = a^m,
/// a^x = a⁻¹⟩`.
pub fn dicyclic(m: usize) -> PermGroup {
    let two_m = 2 * m;
    let size = 2 * two_m;
    // element a^i x^s stored as i + 2m·s
    let mul = move |u: usize, v: usize| {
        let (i, s) = (u % two_m, u / two_m);
        let (j, t) = (v % two_m, v / two_m);
        let j = if s == 1 { (two_m - j) % two_m } else { j };
        let mut k = (i + j) % two_m;
        if s == 1 && t == 1 {
            k = (k + m) % two_m;
        }
        k + two_m * ((s + t) % 2)
    };
    let t = Table {
        size,
        mul: Box::new(mul),
    };
    PermGroup::from_generators(size, vec![t.right_mult(1, size), t.right_mult(two_m, size)])
        .expect("dicyclic")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singer_examples() {
        assert_eq!(
            singer_matrix(2, 2).unwrap(),
            FpMatrix::from_rows(2, &[vec![0, 1], vec![1, 1]])
        );
        let m = singer_matrix(3, 1).unwrap();
        assert_eq!(m.get(0, 0), 2);
        assert_eq!(m.order(10), Some(2));
        for (p, n) in [(2, 3), (3, 2), (5, 2), (7, 2), (3, 4), (2, 6)] {
            let s = singer_matrix(p, n).unwrap();
            assert_eq!(s.order(1 << 20), Some(p.pow(n) - 1));
        }
        let m = singer_matrix(7, 1).unwrap();
        assert_eq!(crate::number_theory::multiplicative_order(m.get(0, 0), 7), Some(6));
    }

    #[test]
    fn affine_examples() {
        let s = singer_matrix(2, 2).unwrap();
        let a4 = affine_semidirect(2, 2, std::slice::from_ref(&s), 1).unwrap();
        assert_eq!(a4.order(), 12);
        assert_eq!(a4.nilpotent_residue().order(), 4);
        let s3 = affine_semidirect(3, 1, &[FpMatrix::from_rows(3, &[vec![2]])], 1).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let cover = affine_semidirect(2, 2, &[s], 2).unwrap();
        assert_eq!(cover.order(), 36);
        assert_eq!(cover.center().order(), 3);
    }

    #[test]
    fn affine_rejects_singular() {
        let z = FpMatrix::zero(3, 1, 1);
        assert!(matches!(
            affine_semidirect(3, 1, &[z], 1),
            Err(ConstructError::ParamsInvalid(_))
        ));
    }

    #[test]
    fn quaternion_scan() {
        for (p, order) in [(3, 8), (5, 8), (7, 16), (7, 8), (31, 64)] {
            let (x, y) = quaternion_subgroup_sl2(p, order).unwrap();
            assert_eq!(x.order(1000), Some(order / 2));
            assert_eq!(y.mul(&y), x.pow(order / 4));
            assert_eq!(x.determinant(), 1);
            assert_eq!(y.determinant(), 1);
        }
        assert!(quaternion_subgroup_sl2(5, 16).is_err());
        assert!(quaternion_subgroup_sl2(3, 4).is_err());
        assert!(quaternion_subgroup_sl2(2, 8).is_err());
    }

    #[test]
    fn extraspecial_groups() {
        let h = heisenberg(3).unwrap();
        assert_eq!(h.order(), 27);
        assert_eq!(h.exponent(), 3);
        assert_eq!(h.center().order(), 3);
        let q = quaternion8();
        assert_eq!(q.order(), 8);
        assert_eq!(q.elements().iter().filter(|x| x.order() == 2).count(), 1);
        assert!(q.is_generalized_quaternion());
    }

    #[test]
    fn heisenberg_automorphisms_compose() {
        for p in [3u64, 5] {
            let s = singer_matrix(p, 2).unwrap();
            let t = FpMatrix::from_rows(p, &[vec![1, 1], vec![0, 1]]);
            let (fs, ft, fst) = (
                heisenberg_automorphism(&s),
                heisenberg_automorphism(&t),
                heisenberg_automorphism(&s.mul(&t)),
            );
            let mul = heisenberg_table(p).mul;
            let size = (p * p * p) as usize;
            for x in 0..size {
                assert_eq!(ft[fs[x]], fst[x]);
                for y in (0..size).step_by(7) {
                    assert_eq!(fs[mul(x, y)], mul(fs[x], fs[y]));
                }
            }
        }
    }

    #[test]
    fn extraspecial_semidirect_orders() {
        let s = singer_matrix(3, 2).unwrap();
        assert_eq!(extraspecial_semidirect(3, &[s], 1).unwrap().order(), 216);
        let (x, y) = quaternion_subgroup_sl2(3, 8).unwrap();
        assert_eq!(extraspecial_semidirect(3, &[x, y], 1).unwrap().order(), 216);
        let s2 = singer_matrix(2, 2).unwrap();
        let sl23 = extraspecial_semidirect(2, std::slice::from_ref(&s2), 1).unwrap();
        assert_eq!(sl23.order(), 24);
        assert_eq!(sl23.center().order(), 2);
        assert_eq!(sl23.derived_subgroup().order(), 8);
        assert_eq!(extraspecial_semidirect(2, &[s2], 2).unwrap().order(), 72);
        let swap = FpMatrix::from_rows(2, &[vec![0, 1], vec![1, 0]]);
        assert!(extraspecial_semidirect(2, &[swap], 1).is_err());
    }

    #[test]
    fn small_families() {
        assert_eq!(cyclic(6).order(), 6);
        assert_eq!(cyclic(1).order(), 1);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(direct_product(&symmetric(3), &cyclic(2)).order(), 12);
        let dic = dicyclic(3);
        assert_eq!(dic.order(), 12);
        assert_eq!(dic.elements().iter().filter(|x| x.order() == 2).count(), 1);
        assert!(dicyclic(2).is_generalized_quaternion());
    }

    #[test]
    fn case_examples() {
        let d10 = construct_case(&CaseParams::new(CaseTag::A1, 5, 1, 2, 1)).unwrap();
        assert_eq!(d10.order(), 10);
        let a2 = construct_case(&CaseParams::new(CaseTag::A2, 3, 2, 1, 1)).unwrap();
        assert_eq!(a2.order(), 72);
        let a3 = construct_case(&CaseParams::new(CaseTag::A3, 2, 2, 1, 2)).unwrap();
        assert_eq!(a3.order(), 36);
        let a7 = construct_case(&CaseParams::new(CaseTag::A7, 2, 2, 1, 2)).unwrap();
        assert_eq!(a7.order(), 72);
        let a5 = construct_case(&CaseParams::new(CaseTag::A5, 2, 2, 1, 1)).unwrap();
        assert_eq!(a5.order(), 24);
        assert!(matches!(
            construct_case(&CaseParams::new(CaseTag::A5, 3, 2, 2, 1)),
            Err(ConstructError::ParamsInvalid(_))
        ));
        assert!(matches!(
            construct_case(&CaseParams::new(CaseTag::A1, 5, 1, 3, 1)),
            Err(ConstructError::ParamsInvalid(_))
        ));
    }

    #[test]
    fn nominal_orders_match_constructions() {
        for params in sweep_points(&CaseTag::ALL, &[2, 3, 5, 7], 81, 1000) {
            if let Ok(g) = construct_case(&params) {
                assert_eq!(Some(g.order() as u64), params.nominal_order(), "{params:?}");
            }
        }
    }
}
