//! Exact dense linear algebra over a field.
//!
//! Gaussian elimination picks, in each column, the nonzero entry of smallest
//! expression size as pivot, which keeps rational-function entries small.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::RatFunc;

pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Heuristic expression size; smaller pivots are preferred.
    fn size(&self) -> usize;
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn size(&self) -> usize {
        RatFunc::size(self)
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn size(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

/// Result of [`solve_linear`]. Inconsistent systems have `solution == None`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSolution<F> {
    pub rank: usize,
    pub solution: Option<Vec<F>>,
    pub kernel: Vec<Vec<F>>,
}

/// Reduced row echelon form in place; returns the pivot columns in order.
///
/// Only the first `ncols` columns are eligible as pivots, so an augmented
/// right-hand side can ride along in trailing columns.
pub fn rref<F: Field>(m: &mut Vec<Vec<F>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let best = (row..m.len())
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].size());
        let Some(p) = best else { continue };
        m.swap(row, p);
        let inv = F::one().div(&m[row][col]);
        for v in m[row].iter_mut() {
            if !v.is_zero() {
                *v = v.mul(&inv);
            }
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (v, pv) in other.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.sub(&f.mul(pv));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(a: &[Vec<F>], ncols: usize) -> usize {
    let mut m = a.to_vec();
    rref(&mut m, ncols).len()
}

/// Solves `A x = b` exactly, reporting the rank, one solution when the system
/// is consistent, and a basis of the kernel of `A`.
pub fn solve_linear<F: Field>(a: &[Vec<F>], b: &[F], ncols: usize) -> LinearSolution<F> {
    assert_eq!(a.len(), b.len(), "right-hand side length must match row count");
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, bv)| {
            assert_eq!(row.len(), ncols, "ragged matrix");
            let mut r = row.clone();
            r.push(bv.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, ncols);
    let rank = pivots.len();
    let consistent = m[rank..].iter().all(|r| r[ncols].is_zero());
    let solution = consistent.then(|| {
        let mut x = vec![F::zero(); ncols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = m[r][ncols].clone();
        }
        x
    });
    let kernel = kernel_from_rref(&m, &pivots, ncols);
    LinearSolution { rank, solution, kernel }
}

fn kernel_from_rref<F: Field>(m: &[Vec<F>], pivots: &[usize], ncols: usize) -> Vec<Vec<F>> {
    let mut kernel = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = m[r][free].neg();
        }
        kernel.push(v);
    }
    kernel
}

pub fn kernel_basis<F: Field>(a: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m, ncols);
    kernel_from_rref(&m, &pivots, ncols)
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse<F: Field>(a: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = a.len();
    let mut m: Vec<Vec<F>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    if rref(&mut m, n).len() < n {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Indices of a maximal set of linearly independent rows.
pub fn independent_rows<F: Field>(a: &[Vec<F>], ncols: usize) -> Vec<usize> {
    let transposed: Vec<Vec<F>> = (0..ncols).map(|c| a.iter().map(|r| r[c].clone()).collect()).collect();
    let mut t = transposed;
    rref(&mut t, a.len())
}

pub fn mat_vec<F: Field>(a: &[Vec<F>], x: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            row.iter().zip(x).fold(F::zero(), |acc, (m, v)| {
                if m.is_zero() || v.is_zero() {
                    acc
                } else {
                    acc.add(&m.mul(v))
                }
            })
        })
        .collect()
}

/// Converts a small integer matrix to rationals.
pub fn rational_matrix(a: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    a.iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::LaurentPoly;

    fn rf(terms: &[(i64, i64)]) -> RatFunc {
        RatFunc::from_laurent(LaurentPoly::from_int_terms(terms))
    }

    #[test]
    fn identity_system() {
        let id = vec![
            vec![RatFunc::one(), RatFunc::zero()],
            vec![RatFunc::zero(), RatFunc::one()],
        ];
        let b = vec![rf(&[(1, 1)]), rf(&[(0, 3), (-2, 1)])];
        let sol = solve_linear(&id, &b, 2);
        assert_eq!(sol.rank, 2);
        assert_eq!(sol.solution, Some(b));
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn one_by_one_exact_division() {
        // (q - q^-1) x = q^2 - q^-2
        let a = vec![vec![rf(&[(1, 1), (-1, -1)])]];
        let b = vec![rf(&[(2, 1), (-2, -1)])];
        let sol = solve_linear(&a, &b, 1);
        assert_eq!(sol.solution, Some(vec![rf(&[(1, 1), (-1, 1)])]));
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        let a = vec![vec![RatFunc::zero(); 3]; 2];
        let sol = solve_linear(&a, &[RatFunc::zero(), RatFunc::zero()], 3);
        assert_eq!(sol.rank, 0);
        assert_eq!(sol.kernel.len(), 3);
        assert_eq!(sol.solution, Some(vec![RatFunc::zero(); 3]));
    }

    #[test]
    fn inconsistent_system_is_reported() {
        let a = vec![vec![RatFunc::one()], vec![RatFunc::one()]];
        let sol = solve_linear(&a, &[RatFunc::one(), RatFunc::zero()], 1);
        assert_eq!(sol.solution, None);
        assert_eq!(sol.rank, 1);
    }

    #[test]
    fn inverse_and_independent_rows() {
        let a = rational_matrix(&[vec![2, 1], vec![4, 2], vec![1, 1]]);
        let rows = independent_rows(&a, 2);
        assert_eq!(rows.len(), 2);
        let sq: Vec<_> = rows.iter().map(|&r| a[r].clone()).collect();
        let inv = inverse(&sq).unwrap();
        let e0 = mat_vec(
            &inv,
            &mat_vec(&sq, &[<BigRational as One>::one(), <BigRational as Zero>::zero()]),
        );
        assert_eq!(e0, vec![<BigRational as One>::one(), <BigRational as Zero>::zero()]);
        assert!(inverse(&rational_matrix(&[vec![1, 2], vec![2, 4]])).is_none());
    }
}
