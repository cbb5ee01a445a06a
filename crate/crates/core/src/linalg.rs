//! Small exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::rootdata::Rational;

/// Solves `columns * x = target` where `columns` are linearly independent
/// vectors of the same length as `target`. Returns `None` when the system is
/// inconsistent.
pub(crate) fn solve_in_span(
    columns: &[Vec<Rational>],
    target: &[Rational],
) -> Option<Vec<Rational>> {
    let rows = target.len();
    let cols = columns.len();
    // augmented matrix, row-major
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(cols);
    for c in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        let inv = Rational::one() / m[pivot_row][c].clone();
        for v in m[pivot_row].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in c..=cols {
                    let sub = m[pivot_row][k].clone() * f.clone();
                    m[r][k] = m[r][k].clone() - sub;
                }
            }
        }
        pivots.push(c);
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

/// Inverse of a square integer matrix with nonzero determinant.
pub(crate) fn inverse(a: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let cols: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| Rational::from_integer(a[i][j].into()))
                .collect()
        })
        .collect();
    let mut inv = vec![vec![Rational::zero(); n]; n];
    for j in 0..n {
        let e: Vec<Rational> = (0..n)
            .map(|i| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let x = solve_in_span(&cols, &e).expect("Cartan matrix is invertible");
        for i in 0..n {
            inv[i][j] = x[i].clone();
        }
    }
    inv
}
