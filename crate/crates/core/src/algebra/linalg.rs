//! Exact dense linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::Rational;

/// Row-major dense matrix.
pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Rank via reduced row echelon form.
pub fn rank(m: &Matrix) -> usize {
    rref(&mut m.clone()).len()
}

/// Basis of the right kernel `{x : m x = 0}` in canonical form: the basis vectors
/// are the rows of a reduced row echelon matrix, each with leading entry 1.
pub fn kernel(m: &Matrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis: Matrix = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect();
    rref(&mut basis);
    basis.retain(|v| v.iter().any(|x| !x.is_zero()));
    basis
}

/// Clears denominators of a rational row, returning integer entries.
pub fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Result of fraction-free elimination on an augmented system.
#[derive(Clone, Debug)]
pub struct BareissOutcome {
    /// Rank of the coefficient matrix.
    pub rank: usize,
    /// Pivot columns in elimination order.
    pub pivots: Vec<usize>,
    /// Whether every non-pivot row reduced to `0 = 0`.
    pub consistent: bool,
    /// Unique solution when the coefficient matrix has full column rank and the system is consistent.
    pub solution: Option<Vec<Rational>>,
}

/// Fraction-free (Bareiss) elimination of `A x = b` with rows scaled to integers.
///
/// Pivots are taken column by column, choosing the first row (in the given
/// order) with a nonzero entry, so the outcome depends only on the ordering
/// of equations and unknowns.
pub fn bareiss_solve(a: &Matrix, b: &[Rational]) -> Result<BareissOutcome> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    if b.len() != rows {
        return Err(Error::InvalidInput(
            "right-hand side length mismatch".into(),
        ));
    }
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut full = row.clone();
            full.push(rhs.clone());
            integer_row(&full)
        })
        .collect();
    let width = cols + 1;
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut k = 0;
    for c in 0..cols {
        if k == rows {
            break;
        }
        let Some(p) = (k..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(k, p);
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let piv = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..width {
                let num = &piv * &row[j] - &f * &pivot_row[j];
                let (q, r) = num.div_rem(&prev);
                if !r.is_zero() {
                    return Err(Error::Inconsistent("Bareiss division was not exact".into()));
                }
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = piv;
        pivots.push(c);
        k += 1;
    }
    let consistent = m[k..].iter().all(|row| row[cols].is_zero());
    let solution = if consistent && k == cols {
        let mut x = vec![Rational::zero(); cols];
        for (i, &c) in pivots.iter().enumerate().rev() {
            let mut s = Rational::from_integer(m[i][cols].clone());
            for j in c + 1..cols {
                if !m[i][j].is_zero() {
                    s -= Rational::from_integer(m[i][j].clone()) * &x[j];
                }
            }
            x[c] = s / Rational::from_integer(m[i][c].clone());
        }
        Some(x)
    } else {
        None
    };
    Ok(BareissOutcome {
        rank: k,
        pivots,
        consistent,
        solution,
    })
}

/// Rank by fraction-free elimination (independent of [`rank`]).
pub fn bareiss_rank(a: &Matrix) -> usize {
    let zeros = vec![Rational::zero(); a.len()];
    bareiss_solve(a, &zeros).map(|o| o.rank).unwrap_or(0)
}

pub fn transpose(a: &Matrix, cols: usize) -> Matrix {
    (0..cols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_vec(a: &Matrix, x: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .map(|(p, q)| p * q)
                .fold(Rational::zero(), |s, t| s + t)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn rank_agrees_between_routes() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        assert_eq!(bareiss_rank(&a), 2);
    }

    #[test]
    fn kernel_is_canonical() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![int(1), int(0), rat(-1, 3)]);
        assert_eq!(k[1], vec![int(0), int(1), rat(-2, 3)]);
        for v in &k {
            assert!(mat_vec(&a, v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn overdetermined_solve() {
        // x + y = 3, x - y = 1, 2x = 4 (consistent), rational rows.
        let a = vec![
            vec![rat(1, 2), rat(1, 2)],
            vec![int(1), int(-1)],
            vec![int(2), int(0)],
        ];
        let b = vec![rat(3, 2), int(1), int(4)];
        let out = bareiss_solve(&a, &b).unwrap();
        assert_eq!(out.rank, 2);
        assert!(out.consistent);
        assert_eq!(out.solution.unwrap(), vec![int(2), int(1)]);
        let bad = vec![rat(3, 2), int(1), int(5)];
        let out = bareiss_solve(&a, &bad).unwrap();
        assert!(!out.consistent);
        assert!(out.solution.is_none());
    }
}
