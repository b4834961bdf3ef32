//! Dense linear algebra over prime fields.
//!
//! Used for Singer cycles and module actions (small `p`) and for the
//! eigenspace splitting of the character-table algorithm (Dixon prime `ℓ`).
//! The modulus must fit in 32 bits so that products fit in a `u64`.

use std::fmt;

use serde::{Deserialize, Serialize};

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    pow_mod(a, p - 2, p)
}

/// Maps a signed integer into `0..p`.
pub fn reduce_signed(a: i128, p: u64) -> u64 {
    a.rem_euclid(p as i128) as u64
}

/// A matrix over the field with `p` elements, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        assert!((2..(1 << 32)).contains(&p), "modulus out of range: {p}");
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn scalar(p: u64, n: usize, c: u64) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = c % p;
        }
        m
    }

    /// Builds a matrix from signed rows, reducing every entry mod `p`.
    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = reduce_signed(v as i128, p);
            }
        }
        m
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.p, other.p, "mixed moduli");
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let p = self.p;
        let mut out = FpMatrix::zero(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.get(k, j)) % p;
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows);
        let p = self.p;
        let mut out = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = (*o + a * self.get(k, j)) % p;
            }
        }
        out
    }

    pub fn pow(&self, mut exp: u64) -> FpMatrix {
        assert!(self.is_square());
        let mut acc = FpMatrix::identity(self.p, self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    pub fn is_scalar(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j) == self.get(0, 0)
                    } else {
                        self.get(i, j) == 0
                    }
                })
            })
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (o, &b) in out.data.iter_mut().zip(&other.data) {
            *o = sub_mod(*o, b, self.p);
        }
        out
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = FpMatrix::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = inv_mod(self.get(r, c), p);
            for j in 0..self.cols {
                let v = mul_mod(self.get(r, j), inv, p);
                self.data[r * self.cols + j] = v;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = sub_mod(self.get(i, j), mul_mod(f, self.get(r, j), p), p);
                    self.data[i * self.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn determinant(&self) -> u64 {
        assert!(self.is_square());
        let p = self.p;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u64;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if piv != c {
                for j in 0..n {
                    m.data.swap(piv * n + j, c * n + j);
                }
                det = sub_mod(0, det, p);
            }
            let pv = m.get(c, c);
            det = mul_mod(det, pv, p);
            let inv = inv_mod(pv, p);
            for i in c + 1..n {
                let f = mul_mod(m.get(i, c), inv, p);
                if f == 0 {
                    continue;
                }
                for j in c..n {
                    let v = sub_mod(m.get(i, j), mul_mod(f, m.get(c, j), p), p);
                    m.data[i * n + j] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = FpMatrix::zero(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1;
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = FpMatrix::zero(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = aug.get(i, n + j);
            }
        }
        Some(out)
    }

    /// Basis (as row vectors) of the right null space `{x : M x = 0}`.
    pub fn null_space(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = sub_mod(0, m.get(r, f), p);
                }
                v
            })
            .collect()
    }

    /// Multiplicative order in GL(n, p), or `None` if singular or above `cap`.
    pub fn order(&self, cap: u64) -> Option<u64> {
        if !self.is_invertible() {
            return None;
        }
        let mut acc = self.clone();
        let mut k = 1u64;
        while !acc.is_identity() {
            if k >= cap {
                return None;
            }
            acc = acc.mul(self);
            k += 1;
        }
        Some(k)
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}{:?}", self.p, self.to_rows())
    }
}

/// Encodes a vector over `F_p` as an integer `Σ v_i p^i`.
pub fn vector_index(v: &[u64], p: u64) -> usize {
    v.iter().rev().fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

/// Inverse of [`vector_index`].
pub fn index_vector(mut idx: usize, p: u64, n: usize) -> Vec<u64> {
    let mut v = vec![0u64; n];
    for x in v.iter_mut() {
        *x = (idx % p as usize) as u64;
        idx /= p as usize;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_determinant() {
        let m = FpMatrix::from_rows(5, &[vec![1, 2], vec![3, 4]]);
        assert_eq!(m.determinant(), (4 + 5 * 5 - 6) % 5);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let sing = FpMatrix::from_rows(3, &[vec![1, 2], vec![2, 1]]);
        assert_eq!(sing.determinant(), 0);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn null_space_dimension() {
        let m = FpMatrix::from_rows(7, &[vec![1, 2, 3], vec![2, 4, 6]]);
        let ns = m.null_space();
        assert_eq!(ns.len(), 2);
        for v in ns {
            let col = m.mul(&FpMatrix::from_rows(7, &v.iter().map(|&x| vec![x as i64]).collect::<Vec<_>>()));
            assert!(col.to_rows().iter().all(|r| r[0] == 0));
        }
    }

    #[test]
    fn order_of_rotation_mod_three() {
        let m = FpMatrix::from_rows(3, &[vec![0, -1], vec![1, 0]]);
        assert_eq!(m.order(100), Some(4));
        assert_eq!(FpMatrix::identity(3, 2).order(100), Some(1));
    }

    #[test]
    fn vector_codes_round_trip() {
        for idx in 0..27 {
            assert_eq!(vector_index(&index_vector(idx, 3, 3), 3), idx);
        }
    }
}
