//! Elementary number theory: primality, factorization, Zsigmondy primes,
//! primitive polynomials over prime fields and Dixon-prime search.
//!
//! Everything works in 64-bit integers; overflow is reported, never wrapped.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fp::FpMatrix;

/// Upper bound on `p^n` for searches that enumerate `F_{p^n}`.
pub const DEFAULT_FIELD_BOUND: u64 = 1_000_000;

const DIXON_SEARCH_LIMIT: u64 = 1 << 62;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumberTheoryError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("{p}^{n} exceeds the configured bound {bound}")]
    BoundExceeded { p: u64, n: u32, bound: u64 },
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
    #[error("no primitive polynomial of degree {n} over F_{p} found")]
    NoPrimitivePolynomial { p: u64, n: u32 },
    #[error("Dixon prime search for exponent {e} exceeded 2^62")]
    DixonSearchExhausted { e: u64 },
}

/// A prime power `p^n` with `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: u64,
    pub n: u32,
}

impl PrimePower {
    pub fn new(p: u64, n: u32) -> Result<Self, NumberTheoryError> {
        if !is_prime(p) {
            return Err(NumberTheoryError::NotPrime(p));
        }
        if n == 0 {
            return Err(NumberTheoryError::ZeroExponent);
        }
        checked_pow(p, n)?;
        Ok(PrimePower { p, n })
    }

    pub fn value(&self) -> u64 {
        self.p.pow(self.n)
    }
}

pub fn checked_pow(base: u64, exp: u32) -> Result<u64, NumberTheoryError> {
    base.checked_pow(exp)
        .ok_or(NumberTheoryError::Overflow("power"))
}

#[inline]
fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for all 64-bit integers (Miller–Rabin with the
/// first twelve prime bases).
pub fn is_prime(m: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if m < 2 {
        return false;
    }
    for &b in &BASES {
        if m.is_multiple_of(b) {
            return m == b;
        }
    }
    let mut d = m - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod_u64(a, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, m);
            if x == m - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `p` prime with `p + 1` a power of two.
pub fn is_mersenne_prime(p: u64) -> bool {
    is_prime(p) && (p + 1).is_power_of_two()
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = num_integer::gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Prime factorization as `(prime, multiplicity)` pairs in increasing order.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    let mut d = 2u64;
    while d <= 1000 && d * d <= m {
        while m.is_multiple_of(d) {
            primes.push(d);
            m /= d;
        }
        d += 1;
    }
    if m > 1 {
        factor_into(m, &mut primes);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, k)) if *last == q => *k += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

pub fn prime_divisors(m: u64) -> Vec<u64> {
    factorize(m).into_iter().map(|(q, _)| q).collect()
}

/// Decomposes `m` as `p^n`, if it is a prime power.
pub fn as_prime_power(m: u64) -> Option<PrimePower> {
    match factorize(m).as_slice() {
        [(p, n)] => Some(PrimePower { p: *p, n: *n }),
        _ => None,
    }
}

pub fn divisors(m: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (q, k) in factorize(m) {
        let mut next = Vec::with_capacity(divs.len() * (k as usize + 1));
        for &d in &divs {
            let mut x = d;
            for _ in 0..=k {
                next.push(x);
                x *= q;
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    divs
}

pub fn euler_phi(m: u64) -> u64 {
    factorize(m)
        .into_iter()
        .fold(m, |acc, (q, _)| acc / q * (q - 1))
}

/// Multiplicative order of `a` modulo `m` (requires `gcd(a, m) = 1`).
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if num_integer::gcd(a % m, m) != 1 {
        return None;
    }
    let mut ord = euler_phi(m);
    for (q, _) in factorize(ord) {
        while ord.is_multiple_of(q) && pow_mod_u64(a, ord / q, m) == 1 {
            ord /= q;
        }
    }
    Some(ord)
}

/// Smallest primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> Result<u64, NumberTheoryError> {
    if !is_prime(p) {
        return Err(NumberTheoryError::NotPrime(p));
    }
    if p == 2 {
        return Ok(1);
    }
    let qs = prime_divisors(p - 1);
    Ok((2..p)
        .find(|&g| qs.iter().all(|&q| pow_mod_u64(g, (p - 1) / q, p) != 1))
        .expect("every prime field has a primitive root"))
}

/// Smallest prime `q` dividing `p^n - 1` whose multiplicative order mod `q`
/// is exactly `n` (a Zsigmondy prime), or `None` when no such prime exists.
pub fn zsigmondy_prime(p: u64, n: u32) -> Result<Option<u64>, NumberTheoryError> {
    if !is_prime(p) {
        return Err(NumberTheoryError::NotPrime(p));
    }
    if n == 0 {
        return Err(NumberTheoryError::ZeroExponent);
    }
    let m = checked_pow(p, n)? - 1;
    if m == 0 {
        return Ok(None);
    }
    Ok(prime_divisors(m)
        .into_iter()
        .find(|&q| multiplicative_order(p % q, q) == Some(n as u64)))
}

/// Companion matrix of a monic polynomial given by coefficients
/// `[c_0, ..., c_{n-1}, 1]` (row-vector convention: `e_i ↦ e_{i+1}`,
/// last row `-c`).
pub fn companion_matrix(p: u64, coeffs: &[u64]) -> FpMatrix {
    let n = coeffs.len() - 1;
    assert!(n >= 1 && coeffs[n] == 1, "polynomial must be monic of positive degree");
    let mut m = FpMatrix::zero(p, n, n);
    for i in 0..n - 1 {
        m.set(i, i + 1, 1);
    }
    for j in 0..n {
        m.set(n - 1, j, (p - coeffs[j] % p) % p);
    }
    m
}

fn has_order_exactly(m: &FpMatrix, order: u64, prime_factors: &[u64]) -> bool {
    m.pow(order).is_identity() && prime_factors.iter().all(|&q| !m.pow(order / q).is_identity())
}

/// First monic polynomial of degree `n` over `F_p`, in lexicographic order of
/// `(c_{n-1}, ..., c_0)`, whose companion matrix has order `p^n - 1`.
/// Coefficients are returned low degree first, including the leading 1.
pub fn primitive_polynomial(p: u64, n: u32) -> Result<Vec<u64>, NumberTheoryError> {
    primitive_polynomial_bounded(p, n, DEFAULT_FIELD_BOUND)
}

pub fn primitive_polynomial_bounded(p: u64, n: u32, bound: u64) -> Result<Vec<u64>, NumberTheoryError> {
    let q = PrimePower::new(p, n)?.value();
    if q > bound {
        return Err(NumberTheoryError::BoundExceeded { p, n, bound });
    }
    let target = q - 1;
    let factors = prime_divisors(target.max(1));
    let n = n as usize;
    for code in 0..q {
        let mut coeffs = crate::fp::index_vector(code as usize, p, n);
        if coeffs[0] == 0 {
            continue;
        }
        coeffs.push(1);
        let c = companion_matrix(p, &coeffs);
        if has_order_exactly(&c, target.max(1), &factors) {
            return Ok(coeffs);
        }
    }
    Err(NumberTheoryError::NoPrimitivePolynomial { p, n: n as u32 })
}

/// Smallest prime `ℓ ≡ 1 (mod e)` with `ℓ² > 4·group_order`.
pub fn find_dixon_prime(e: u64, group_order: u64) -> Result<u64, NumberTheoryError> {
    let e = e.max(1);
    let bound = group_order
        .checked_mul(4)
        .ok_or(NumberTheoryError::Overflow("dixon bound"))? as u128;
    let mut ell = e + 1;
    while ell < DIXON_SEARCH_LIMIT {
        if (ell as u128) * (ell as u128) > bound && is_prime(ell) {
            return Ok(ell);
        }
        ell = ell
            .checked_add(e)
            .ok_or(NumberTheoryError::DixonSearchExhausted { e })?;
    }
    Err(NumberTheoryError::DixonSearchExhausted { e })
}
