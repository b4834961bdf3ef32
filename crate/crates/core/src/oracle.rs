//! Hand-written character tables and an independent numeric check of
//! computed tables.

use crate::{CharacterTable, CyclotomicNumber, PermGroup};
use num_complex::Complex64;

/// A table written out by hand: per column `(element order, class size)`,
/// then the rows.
pub struct HandTable {
    pub name: &'static str,
    pub columns: Vec<(u64, usize)>,
    pub rows: Vec<Vec<CyclotomicNumber>>,
}

fn z(e: u64, t: i64) -> CyclotomicNumber {
    CyclotomicNumber::root_of_unity(e, t).unwrap()
}

fn int(c: i128) -> CyclotomicNumber {
    CyclotomicNumber::from_integer(c)
}

fn ints(v: &[i128]) -> Vec<CyclotomicNumber> {
    v.iter().map(|&c| int(c)).collect()
}

fn add(a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
    a.checked_add(b).unwrap()
}

fn neg(a: &CyclotomicNumber) -> CyclotomicNumber {
    a.checked_neg().unwrap()
}

pub fn hand_tables() -> Vec<HandTable> {
    let w = z(3, 1);
    let w2 = z(3, 2);
    let a = add(&z(5, 1), &z(5, 4));
    let b = add(&z(5, 2), &z(5, 3));
    // C6 = <g>: columns g^0, g^3, g^2, g^4, g^1, g^5
    let c6_cols = [0i64, 3, 2, 4, 1, 5];
    let c6_rows = (0..6)
        .map(|j| c6_cols.iter().map(|&k| z(6, j * k)).collect())
        .collect();
    vec![
        HandTable {
            name: "S3",
            columns: vec![(1, 1), (2, 3), (3, 2)],
            rows: vec![ints(&[1, 1, 1]), ints(&[1, -1, 1]), ints(&[2, 0, -1])],
        },
        HandTable {
            name: "C6",
            columns: vec![(1, 1), (2, 1), (3, 1), (3, 1), (6, 1), (6, 1)],
            rows: c6_rows,
        },
        HandTable {
            name: "D8",
            columns: vec![(1, 1), (2, 1), (2, 2), (2, 2), (4, 2)],
            rows: vec![
                ints(&[1, 1, 1, 1, 1]),
                ints(&[1, 1, -1, -1, 1]),
                ints(&[1, 1, 1, -1, -1]),
                ints(&[1, 1, -1, 1, -1]),
                ints(&[2, -2, 0, 0, 0]),
            ],
        },
        HandTable {
            name: "Q8",
            columns: vec![(1, 1), (2, 1), (4, 2), (4, 2), (4, 2)],
            rows: vec![
                ints(&[1, 1, 1, 1, 1]),
                ints(&[1, 1, 1, -1, -1]),
                ints(&[1, 1, -1, 1, -1]),
                ints(&[1, 1, -1, -1, 1]),
                ints(&[2, -2, 0, 0, 0]),
            ],
        },
        HandTable {
            name: "D10",
            columns: vec![(1, 1), (2, 5), (5, 2), (5, 2)],
            rows: vec![
                ints(&[1, 1, 1, 1]),
                ints(&[1, -1, 1, 1]),
                vec![int(2), int(0), a.clone(), b.clone()],
                vec![int(2), int(0), b, a],
            ],
        },
        HandTable {
            name: "A4",
            columns: vec![(1, 1), (2, 3), (3, 4), (3, 4)],
            rows: vec![
                ints(&[1, 1, 1, 1]),
                vec![int(1), int(1), w.clone(), w2.clone()],
                vec![int(1), int(1), w2.clone(), w.clone()],
                ints(&[3, -1, 0, 0]),
            ],
        },
        HandTable {
            // columns: 1, z, i, b, b^2, zb, zb^2 with b of order 3
            name: "SL(2,3)",
            columns: vec![(1, 1), (2, 1), (4, 6), (3, 4), (3, 4), (6, 4), (6, 4)],
            rows: vec![
                ints(&[1, 1, 1, 1, 1, 1, 1]),
                vec![int(1), int(1), int(1), w.clone(), w2.clone(), w.clone(), w2.clone()],
                vec![int(1), int(1), int(1), w2.clone(), w.clone(), w2.clone(), w.clone()],
                ints(&[2, -2, 0, -1, -1, 1, 1]),
                vec![int(2), int(-2), int(0), neg(&w), neg(&w2), w.clone(), w2.clone()],
                vec![int(2), int(-2), int(0), neg(&w2), neg(&w), w2, w],
                ints(&[3, 3, -1, 0, 0, 0, 0]),
            ],
        },
    ]
}

fn permutations_respecting(labels: &[(u64, usize)], targets: &[(u64, usize)]) -> Vec<Vec<usize>> {
    fn go(
        i: usize,
        labels: &[(u64, usize)],
        targets: &[(u64, usize)],
        used: &mut Vec<bool>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == labels.len() {
            out.push(cur.clone());
            return;
        }
        for j in 0..targets.len() {
            if !used[j] && targets[j] == labels[i] {
                used[j] = true;
                cur.push(j);
                go(i + 1, labels, targets, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(0, labels, targets, &mut vec![false; targets.len()], &mut Vec::new(), &mut out);
    out
}

/// Exact equality up to a permutation of rows and a permutation of columns
/// preserving element order and class size.
pub fn matches_up_to_permutation(t: &CharacterTable, hand: &HandTable) -> bool {
    let cols: Vec<(u64, usize)> = t
        .classes()
        .iter()
        .map(|c| (c.element_order, c.size))
        .collect();
    if cols.len() != hand.columns.len() || t.num_rows() != hand.rows.len() {
        return false;
    }
    let e = t.exponent();
    let key = |row: &[CyclotomicNumber]| -> Vec<Vec<i128>> {
        row.iter().map(|v| v.coefficients_at(e).unwrap()).collect()
    };
    let mut computed: Vec<Vec<Vec<i128>>> = (0..t.num_rows()).map(|r| key(t.row(r))).collect();
    computed.sort();
    permutations_respecting(&hand.columns, &cols).into_iter().any(|perm| {
        // hand column i sits at computed column perm[i]
        let mut inv = vec![0; perm.len()];
        for (i, &j) in perm.iter().enumerate() {
            inv[j] = i;
        }
        let mut rows: Vec<Vec<Vec<i128>>> = hand
            .rows
            .iter()
            .map(|row| {
                let reordered: Vec<CyclotomicNumber> = inv.iter().map(|&i| row[i].clone()).collect();
                key(&reordered)
            })
            .collect();
        rows.sort();
        rows == computed
    })
}

/// Checks numerically, from the group multiplication alone, that the
/// central elements `e_χ = χ(1)/|G| Σ χ(g⁻¹) g` are orthogonal idempotents
/// summing to 1, and that each has regular trace `χ(1)²`.
pub fn regular_representation_check(g: &PermGroup, t: &CharacterTable, tol: f64) -> Result<(), String> {
    let n = g.order();
    let elems = g.elements();
    let class_of = &g.class_data().class_of;
    let mul: Vec<Vec<usize>> = elems
        .iter()
        .map(|x| elems.iter().map(|y| g.element_index(&x.mul(y)).unwrap()).collect())
        .collect();
    let inv: Vec<usize> = elems.iter().map(|x| g.element_index(&x.inverse()).unwrap()).collect();
    let idempotents: Vec<Vec<Complex64>> = (0..t.num_rows())
        .map(|r| {
            let vals: Vec<Complex64> = t.row(r).iter().map(|v| v.to_complex_approx()).collect();
            let scale = t.degrees()[r] as f64 / n as f64;
            (0..n).map(|i| vals[class_of[inv[i]]] * scale).collect()
        })
        .collect();
    let convolve = |a: &[Complex64], b: &[Complex64]| {
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            if a[i].norm() < 1e-15 {
                continue;
            }
            for j in 0..n {
                out[mul[i][j]] += a[i] * b[j];
            }
        }
        out
    };
    let close = |a: &[Complex64], b: &[Complex64]| a.iter().zip(b).all(|(x, y)| (x - y).norm() < tol);
    let zero = vec![Complex64::new(0.0, 0.0); n];
    let mut sum = zero.clone();
    for (r, e) in idempotents.iter().enumerate() {
        if !close(&convolve(e, e), e) {
            return Err(format!("e_{r} is not idempotent"));
        }
        let trace = e[0].re * n as f64;
        let d = t.degrees()[r] as f64;
        if (trace - d * d).abs() > tol || e[0].im.abs() > tol {
            return Err(format!("e_{r} has regular trace {trace}, expected {}", d * d));
        }
        for (s, f) in idempotents.iter().enumerate().skip(r + 1) {
            if !close(&convolve(e, f), &zero) {
                return Err(format!("e_{r} e_{s} is not zero"));
            }
        }
        for i in 0..n {
            sum[i] += e[i];
        }
    }
    let mut one = zero;
    one[0] = Complex64::new(1.0, 0.0);
    if !close(&sum, &one) {
        return Err("idempotents do not sum to 1".into());
    }
    Ok(())
}
