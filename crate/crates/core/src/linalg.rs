//! Exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Order in which columns are tried as pivots. Different orders pick
/// different solutions of an underdetermined system.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum PivotOrder {
    #[default]
    Natural,
    Reversed,
}

impl PivotOrder {
    fn columns(self, n: usize) -> Vec<usize> {
        match self {
            PivotOrder::Natural => (0..n).collect(),
            PivotOrder::Reversed => (0..n).rev().collect(),
        }
    }
}

pub fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Solves `A x = b` by Gauss-Jordan elimination, taking the first usable
/// pivot in each column. Free variables are set to zero. Returns `None` when
/// the system is inconsistent.
pub fn solve(
    rows: &[Vec<BigRational>],
    rhs: &[BigRational],
    num_cols: usize,
    order: PivotOrder,
) -> Option<Vec<BigRational>> {
    assert_eq!(rows.len(), rhs.len());
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            assert_eq!(row.len(), num_cols);
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next_row = 0;
    for col in order.columns(num_cols) {
        if next_row == a.len() {
            break;
        }
        let Some(p) = (next_row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(next_row, p);
        let inv = a[next_row][col].recip();
        for x in a[next_row].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = a[next_row].clone();
        let support: Vec<usize> = (0..=num_cols).filter(|&c| !pivot_row[c].is_zero()).collect();
        for (r, row) in a.iter_mut().enumerate() {
            if r == next_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for &c in &support {
                let delta = &factor * &pivot_row[c];
                row[c] -= delta;
            }
        }
        pivots.push((next_row, col));
        next_row += 1;
    }
    if a[next_row..].iter().any(|row| !row[num_cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); num_cols];
    for (r, c) in pivots {
        x[c] = a[r][num_cols].clone();
    }
    Some(x)
}

/// Whether `v` is a rational combination of `columns`.
pub fn in_span(columns: &[Vec<BigRational>], v: &[BigRational]) -> bool {
    let rows: Vec<Vec<BigRational>> = (0..v.len())
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    solve(&rows, v, columns.len(), PivotOrder::Natural).is_some()
}

/// Multiplies `rows * x`.
pub fn apply(rows: &[Vec<BigRational>], x: &[BigRational]) -> Vec<BigRational> {
    rows.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

pub fn is_integer(x: &BigRational) -> bool {
    x.denom().is_one()
}
