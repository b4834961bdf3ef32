//! Exact arithmetic in rings of cyclotomic integers `Z[ζ_e]`.
//!
//! A value is stored as its residue modulo the `e`-th cyclotomic polynomial
//! in the power basis `1, ζ, …, ζ^{φ(e)-1}`. That basis is a `Z`-basis of
//! `Z[ζ_e]`, so the coefficient vector is a unique normal form for a fixed
//! conductor. Values whose only nonzero coefficient is the constant term are
//! stored with conductor 1. Comparisons between different conductors rebase
//! both sides to the lcm.
//!
//! Coefficients are `i128`; every operation is overflow-checked.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use num_integer::Integer;
use thiserror::Error;

use crate::number_theory::euler_phi;

pub const DEFAULT_CONDUCTOR_BOUND: u64 = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclotomicError {
    #[error("expected {expected} root multiplicities, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("conductor {conductor} exceeds bound {bound}")]
    ConductorBound { conductor: u64, bound: u64 },
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("{k} is not a unit modulo {conductor}")]
    NotCoprime { k: i64, conductor: u64 },
    #[error("conductor {from} does not divide {to}")]
    IncompatibleConductor { from: u64, to: u64 },
    #[error("coefficient overflow")]
    Overflow,
    #[error("cannot parse cyclotomic number {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

type Result<T> = std::result::Result<T, CyclotomicError>;

fn cyclotomic_poly_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i128>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i128>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of the `e`-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_polynomial(e: u64) -> Arc<Vec<i128>> {
    if let Some(p) = cyclotomic_poly_cache().lock().unwrap().get(&e) {
        return Arc::clone(p);
    }
    // x^e - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i128; e as usize + 1];
    num[0] = -1;
    num[e as usize] = 1;
    for d in 1..e {
        if !e.is_multiple_of(d) {
            continue;
        }
        let div = cyclotomic_polynomial(d);
        num = exact_div_monic(&num, &div);
    }
    let arc = Arc::new(num);
    cyclotomic_poly_cache()
        .lock()
        .unwrap()
        .insert(e, Arc::clone(&arc));
    arc
}

fn exact_div_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i128; num.len() - dn];
    for k in (dn..num.len()).rev() {
        let c = rem[k];
        if c == 0 {
            continue;
        }
        quot[k - dn] = c;
        for (j, &dc) in den.iter().enumerate() {
            rem[k - dn + j] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Reduces `Σ raw[t] x^t` modulo `Φ_e`, returning `φ(e)` coefficients.
fn reduce_mod_cyclotomic(mut raw: Vec<i128>, e: u64) -> Result<Vec<i128>> {
    let phi = cyclotomic_polynomial(e);
    let deg = phi.len() - 1;
    for k in (deg..raw.len()).rev() {
        let c = raw[k];
        if c == 0 {
            continue;
        }
        for (j, &pc) in phi.iter().enumerate() {
            if pc == 0 {
                continue;
            }
            let t = c.checked_mul(pc).ok_or(CyclotomicError::Overflow)?;
            let slot = &mut raw[k - deg + j];
            *slot = slot.checked_sub(t).ok_or(CyclotomicError::Overflow)?;
        }
    }
    raw.truncate(deg);
    raw.resize(deg, 0);
    Ok(raw)
}

/// An element of `Z[ζ_e]` in canonical form.
#[derive(Clone)]
pub struct CyclotomicNumber {
    conductor: u64,
    coeffs: Vec<i128>,
}

impl CyclotomicNumber {
    pub fn from_integer(c: i128) -> Self {
        CyclotomicNumber {
            conductor: 1,
            coeffs: vec![c],
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// `ζ_e^t`.
    pub fn root_of_unity(e: u64, t: i64) -> Result<Self> {
        if e == 0 {
            return Err(CyclotomicError::ZeroConductor);
        }
        let mut raw = vec![0i128; e as usize];
        raw[t.rem_euclid(e as i64) as usize] = 1;
        Self::from_exponent_vector(e, raw)
    }

    /// Canonical form of `Σ_t mults[t]·ζ_e^t`.
    pub fn from_root_multiplicities(e: u64, mults: &[i128]) -> Result<Self> {
        if e == 0 {
            return Err(CyclotomicError::ZeroConductor);
        }
        if mults.len() != e as usize {
            return Err(CyclotomicError::LengthMismatch {
                expected: e as usize,
                got: mults.len(),
            });
        }
        Self::from_exponent_vector(e, mults.to_vec())
    }

    /// Canonical form of `Σ raw[t]·ζ_e^t` for any length of `raw`
    /// (exponents are read modulo `e`).
    fn from_exponent_vector(e: u64, raw: Vec<i128>) -> Result<Self> {
        let raw = if raw.len() > e as usize {
            let mut folded = vec![0i128; e as usize];
            for (t, c) in raw.into_iter().enumerate() {
                let slot = &mut folded[t % e as usize];
                *slot = slot.checked_add(c).ok_or(CyclotomicError::Overflow)?;
            }
            folded
        } else {
            raw
        };
        let coeffs = reduce_mod_cyclotomic(raw, e)?;
        Ok(CyclotomicNumber {
            conductor: e,
            coeffs,
        }
        .normalized())
    }

    fn normalized(mut self) -> Self {
        if self.conductor != 1 && self.coeffs.iter().skip(1).all(|&c| c == 0) {
            self.coeffs.truncate(1);
            if self.coeffs.is_empty() {
                self.coeffs.push(0);
            }
            self.conductor = 1;
        }
        self
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Power-basis coefficients at the stored conductor.
    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_integer(&self) -> Option<i128> {
        self.is_rational().then(|| self.coeffs[0])
    }

    pub fn is_zero(&self) -> bool {
        self.as_integer() == Some(0)
    }

    /// Coefficient vector of the same value viewed in `Q(ζ_target)`.
    /// `target` must be a multiple of the stored conductor.
    pub fn coefficients_at(&self, target: u64) -> Result<Vec<i128>> {
        Ok(self.rebase(target)?.coeffs)
    }

    /// The same value expressed at conductor `target` (a multiple of the
    /// stored conductor); rational values stay at conductor 1.
    pub fn to_conductor(&self, target: u64) -> Result<Self> {
        Ok(self.rebase(target)?.normalized())
    }

    fn rebase(&self, target: u64) -> Result<CyclotomicNumber> {
        if target == 0 || !target.is_multiple_of(self.conductor) {
            return Err(CyclotomicError::IncompatibleConductor {
                from: self.conductor,
                to: target,
            });
        }
        if target == self.conductor {
            return Ok(self.clone());
        }
        let step = (target / self.conductor) as usize;
        let mut raw = vec![0i128; target as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c;
        }
        let coeffs = reduce_mod_cyclotomic(raw, target)?;
        Ok(CyclotomicNumber {
            conductor: target,
            coeffs,
        })
    }

    fn common_conductor(a: &Self, b: &Self, bound: u64) -> Result<u64> {
        let e = a.conductor.lcm(&b.conductor);
        if e > bound {
            return Err(CyclotomicError::ConductorBound {
                conductor: e,
                bound,
            });
        }
        Ok(e)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.checked_add_bounded(other, DEFAULT_CONDUCTOR_BOUND)
    }

    pub fn checked_add_bounded(&self, other: &Self, bound: u64) -> Result<Self> {
        let e = Self::common_conductor(self, other, bound)?;
        let a = self.rebase(e)?;
        let b = other.rebase(e)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x.checked_add(*y).ok_or(CyclotomicError::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(CyclotomicNumber {
            conductor: e,
            coeffs,
        }
        .normalized())
    }

    pub fn checked_neg(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_neg().ok_or(CyclotomicError::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(CyclotomicNumber {
            conductor: self.conductor,
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.checked_mul_bounded(other, DEFAULT_CONDUCTOR_BOUND)
    }

    pub fn checked_mul_bounded(&self, other: &Self, bound: u64) -> Result<Self> {
        let e = Self::common_conductor(self, other, bound)?;
        let a = self.rebase(e)?;
        let b = other.rebase(e)?;
        let mut raw = vec![0i128; a.coeffs.len() + b.coeffs.len()];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let t = x.checked_mul(y).ok_or(CyclotomicError::Overflow)?;
                raw[i + j] = raw[i + j].checked_add(t).ok_or(CyclotomicError::Overflow)?;
            }
        }
        Self::from_exponent_vector(e, raw)
    }

    pub fn checked_scale(&self, k: i128) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_mul(k).ok_or(CyclotomicError::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(CyclotomicNumber {
            conductor: self.conductor,
            coeffs,
        }
        .normalized())
    }

    /// Image under the Galois automorphism `ζ_e ↦ ζ_e^k`. `k` is read modulo
    /// the conductor and must be a unit there.
    pub fn galois_apply(&self, k: i64) -> Result<Self> {
        let e = self.conductor;
        if (k.rem_euclid(e as i64) as u64).gcd(&e) != 1 {
            return Err(CyclotomicError::NotCoprime { k, conductor: e });
        }
        if e == 1 {
            return Ok(self.clone());
        }
        let k = k.rem_euclid(e as i64) as usize;
        let mut raw = vec![0i128; e as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            raw[(i * k) % e as usize] = c;
        }
        Self::from_exponent_vector(e, raw)
    }

    /// Complex conjugation, the Galois map `k = -1`.
    pub fn conjugate(&self) -> Self {
        self.galois_apply(-1)
            .expect("-1 is a unit modulo every conductor")
    }

    /// Floating-point approximation; diagnostics only.
    pub fn to_complex_approx(&self) -> Complex64 {
        let e = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| Complex64::from_polar(c as f64, std::f64::consts::TAU * i as f64 / e))
            .sum()
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let e = self.conductor.lcm(&other.conductor);
        match (self.rebase(e), other.rebase(e)) {
            (Ok(a), Ok(b)) => a.coeffs == b.coeffs,
            _ => false,
        }
    }
}

impl Eq for CyclotomicNumber {}

impl From<i128> for CyclotomicNumber {
    fn from(c: i128) -> Self {
        Self::from_integer(c)
    }
}

impl From<i64> for CyclotomicNumber {
    fn from(c: i64) -> Self {
        Self::from_integer(c as i128)
    }
}

macro_rules! panicking_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("cyclotomic {}: {e}", stringify!($method)))
            }
        }
        impl $trait for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        self.checked_neg().expect("cyclotomic negation overflow")
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

/// Accumulates `Σ w·a·b` in the group ring of `C_e` and reduces once at the
/// end. Much cheaper than repeated [`CyclotomicNumber::checked_mul`] for
/// inner products of character rows.
pub struct CyclotomicAccumulator {
    conductor: u64,
    raw: Vec<i128>,
}

impl CyclotomicAccumulator {
    pub fn new(conductor: u64) -> Self {
        CyclotomicAccumulator {
            conductor,
            raw: vec![0; conductor as usize],
        }
    }

    fn exponents(&self, a: &CyclotomicNumber) -> Vec<(usize, i128)> {
        assert!(
            self.conductor.is_multiple_of(a.conductor),
            "accumulator conductor {} does not contain conductor {}",
            self.conductor,
            a.conductor
        );
        let step = (self.conductor / a.conductor) as usize;
        a.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i * step, c))
            .collect()
    }

    pub fn add_product(
        &mut self,
        a: &CyclotomicNumber,
        b: &CyclotomicNumber,
        weight: i128,
    ) -> Result<()> {
        let e = self.conductor as usize;
        let xs = self.exponents(a);
        let ys = self.exponents(b);
        for &(i, x) in &xs {
            let wx = x.checked_mul(weight).ok_or(CyclotomicError::Overflow)?;
            for &(j, y) in &ys {
                let t = wx.checked_mul(y).ok_or(CyclotomicError::Overflow)?;
                let slot = &mut self.raw[(i + j) % e];
                *slot = slot.checked_add(t).ok_or(CyclotomicError::Overflow)?;
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Result<CyclotomicNumber> {
        CyclotomicNumber::from_exponent_vector(self.conductor, self.raw)
    }
}

impl fmt::Display for CyclotomicNumber {
    /// Renders `a0 + a1*z(e)^1 + ...` over the nonzero coefficients; rational
    /// values print as plain integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_integer() {
            return write!(f, "{c}");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                write!(f, "{c}")?;
            } else if c < 0 {
                write!(f, " - {}", -c)?;
            } else {
                write!(f, " + {c}")?;
            }
            if i > 0 {
                write!(f, "*z({})^{i}", self.conductor)?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({self})")
    }
}

struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, reason: impl Into<String>) -> CyclotomicError {
        CyclotomicError::Parse {
            input: self.input.to_string(),
            reason: reason.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.input[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<i128> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(format!("expected a number at byte {start}")));
        }
        self.input[start..self.pos]
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    /// `z(e)` optionally followed by `^t`.
    fn root(&mut self) -> Result<(u64, i128)> {
        if !self.eat("z(") {
            return Err(self.err("expected z(e)"));
        }
        let e = self.number()?;
        if !self.eat(")") {
            return Err(self.err("expected ')'"));
        }
        let t = if self.eat("^") { self.number()? } else { 1 };
        if e <= 0 || e > DEFAULT_CONDUCTOR_BOUND as i128 {
            return Err(self.err(format!("invalid conductor {e}")));
        }
        Ok((e as u64, t))
    }

    fn term(&mut self) -> Result<(i128, Option<(u64, i128)>)> {
        self.skip_ws();
        if self.input[self.pos..].starts_with('z') {
            return Ok((1, Some(self.root()?)));
        }
        let c = self.number()?;
        if self.eat("*") {
            Ok((c, Some(self.root()?)))
        } else {
            Ok((c, None))
        }
    }
}

impl FromStr for CyclotomicNumber {
    type Err = CyclotomicError;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser {
            input: s,
            bytes: s.as_bytes(),
            pos: 0,
        };
        let mut terms = Vec::new();
        let mut sign: i128 = if parser.eat("-") { -1 } else { 1 };
        loop {
            let (c, root) = parser.term()?;
            terms.push((sign * c, root));
            if parser.eat("+") {
                sign = 1;
            } else if parser.eat("-") {
                sign = -1;
            } else {
                break;
            }
        }
        parser.skip_ws();
        if parser.pos != s.len() {
            return Err(parser.err(format!("trailing input at byte {}", parser.pos)));
        }
        let e = terms
            .iter()
            .filter_map(|(_, r)| r.map(|(e, _)| e))
            .fold(1u64, |acc, e| acc.lcm(&e));
        if e > DEFAULT_CONDUCTOR_BOUND {
            return Err(CyclotomicError::ConductorBound {
                conductor: e,
                bound: DEFAULT_CONDUCTOR_BOUND,
            });
        }
        let mut raw = vec![0i128; e as usize];
        for (c, root) in terms {
            let t = match root {
                None => 0,
                Some((re, t)) => (t.rem_euclid(re as i128) as u64 * (e / re)) % e,
            };
            raw[t as usize] = raw[t as usize]
                .checked_add(c)
                .ok_or(CyclotomicError::Overflow)?;
        }
        CyclotomicNumber::from_exponent_vector(e, raw)
    }
}

/// `φ(e)`, the dimension of `Q(ζ_e)`.
pub fn field_degree(e: u64) -> u64 {
    euler_phi(e)
}
