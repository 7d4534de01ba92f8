//! Integer lattices inside `Z^r`: Hermite and Smith normal forms, kernels,
//! and the weight lattices attached to Weyl group elements and pairs.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::qarith::linalg::{rank as rational_rank, rational_matrix};
use crate::rootsys::{CartanDatum, Weight, WeylElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("weight {weight} is not supported on {domain}")]
    OutsideDomain { weight: String, domain: String },
    #[error("ambient ranks differ ({0} vs {1})")]
    RankMismatch(usize, usize),
    #[error("not a sublattice")]
    NotSublattice,
}

/// A sublattice of `Z^n` stored by its Hermite normal form basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntLattice {
    ambient_rank: usize,
    basis: Vec<Vec<BigInt>>,
}

impl IntLattice {
    /// The lattice spanned by arbitrary (possibly dependent) generators.
    pub fn from_generators(ambient_rank: usize, gens: &[Vec<BigInt>]) -> Self {
        for g in gens {
            assert_eq!(g.len(), ambient_rank, "generator has wrong length");
        }
        IntLattice {
            ambient_rank,
            basis: hnf(gens.to_vec()),
        }
    }

    pub fn from_i64(ambient_rank: usize, gens: &[Vec<i64>]) -> Self {
        Self::from_generators(ambient_rank, &to_big(gens))
    }

    pub fn zero(ambient_rank: usize) -> Self {
        IntLattice {
            ambient_rank,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_rank: usize) -> Self {
        Self::coordinate(ambient_rank, &(0..ambient_rank).collect())
    }

    /// `Z`-span of the coordinate vectors `e_i`, `i` in `idx`.
    pub fn coordinate(ambient_rank: usize, idx: &BTreeSet<usize>) -> Self {
        let gens: Vec<Vec<i64>> = idx
            .iter()
            .map(|&i| (0..ambient_rank).map(|k| i64::from(k == i)).collect())
            .collect();
        Self::from_i64(ambient_rank, &gens)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Basis rows as machine integers; panics on overflow.
    pub fn basis_i64(&self) -> Vec<Vec<i64>> {
        self.basis
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_i64().expect("lattice entry fits in i64"))
                    .collect()
            })
            .collect()
    }

    pub fn basis_weights(&self) -> Vec<Weight> {
        self.basis_i64().into_iter().map(Weight).collect()
    }

    pub fn sum(&self, other: &IntLattice) -> IntLattice {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        IntLattice {
            ambient_rank: self.ambient_rank,
            basis: hnf(gens),
        }
    }

    pub fn scale(&self, k: i64) -> IntLattice {
        let k = BigInt::from(k);
        let gens: Vec<Vec<BigInt>> = self.basis.iter().map(|r| r.iter().map(|x| x * &k).collect()).collect();
        IntLattice::from_generators(self.ambient_rank, &gens)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut gens = self.basis.clone();
        gens.push(v.to_vec());
        hnf(gens) == self.basis
    }

    pub fn contains_i64(&self, v: &[i64]) -> bool {
        self.contains(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    pub fn is_sublattice_of(&self, other: &IntLattice) -> bool {
        self.basis.iter().all(|r| other.contains(r))
    }

    /// Smith invariants of the matrix expressing `sub`'s basis in `self`'s;
    /// these describe `self / sub`. Requires `sub ⊆ self`.
    pub fn quotient_divisors(&self, sub: &IntLattice) -> Result<Vec<BigInt>, LatticeError> {
        if self.ambient_rank != sub.ambient_rank {
            return Err(LatticeError::RankMismatch(self.ambient_rank, sub.ambient_rank));
        }
        if !sub.is_sublattice_of(self) {
            return Err(LatticeError::NotSublattice);
        }
        let coeffs: Vec<Vec<BigInt>> = sub.basis.iter().map(|v| self.coordinates(v)).collect();
        Ok(smith_divisors(&coeffs))
    }

    /// `|self / sub|` when finite; `None` if `sub` has smaller rank.
    pub fn index_of(&self, sub: &IntLattice) -> Result<Option<BigInt>, LatticeError> {
        let d = self.quotient_divisors(sub)?;
        if sub.rank() < self.rank() {
            return Ok(None);
        }
        Ok(Some(d.iter().fold(BigInt::one(), |a, b| a * b)))
    }

    /// Coordinates of a lattice vector in the HNF basis.
    fn coordinates(&self, v: &[BigInt]) -> Vec<BigInt> {
        // HNF rows have strictly increasing pivot columns; peel them off.
        let mut rest = v.to_vec();
        let mut out = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).unwrap();
            let (c, r) = rest[p].div_rem(&row[p]);
            assert!(r.is_zero(), "vector not in lattice");
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &c * y;
            }
            out.push(c);
        }
        assert!(rest.iter().all(Zero::is_zero), "vector not in lattice");
        out
    }

    /// `{"ambient": ["w1", ...], "basis": [[...], ...]}`.
    pub fn to_json(&self, label: &str) -> Value {
        let ambient: Vec<String> = (1..=self.ambient_rank).map(|i| format!("{label}{i}")).collect();
        let basis: Vec<Value> = self
            .basis
            .iter()
            .map(|r| Value::Array(r.iter().map(big_value).collect()))
            .collect();
        json!({ "ambient": ambient, "basis": basis })
    }
}

impl fmt::Display for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.basis_weights().iter().map(|w| format!("Z({w})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn big_value(x: &BigInt) -> Value {
    x.to_i64().map_or_else(|| Value::from(x.to_string()), Value::from)
}

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Row-style Hermite normal form: nonzero rows only, pivots strictly to the
/// right going down, positive pivots, entries above a pivot in `[0, pivot)`.
pub fn hnf(mut m: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        loop {
            let best = (row..m.len())
                .filter(|&r| !m[r][col].is_zero())
                .min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()));
            let Some(p) = best else { break };
            m.swap(row, p);
            let mut done = true;
            for r in row + 1..m.len() {
                if m[r][col].is_zero() {
                    continue;
                }
                let qt = m[r][col].div_floor(&m[row][col]);
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &qt * y;
                }
                if !m[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if row < m.len() && !m[row][col].is_zero() {
            if m[row][col].is_negative() {
                for x in m[row].iter_mut() {
                    *x = -&*x;
                }
            }
            let pivot_row = m[row].clone();
            for r in 0..row {
                let qt = m[r][col].div_floor(&pivot_row[col]);
                if !qt.is_zero() {
                    for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                        *x -= &qt * y;
                    }
                }
            }
            row += 1;
        }
    }
    m.truncate(row);
    m
}

/// Nonzero Smith invariants `d_1 | d_2 | ...` of an integer matrix.
pub fn smith_divisors(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut m = a.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // Smallest nonzero entry in the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !m[i][j].is_zero() && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = true;
        for i in t + 1..nrows {
            let qt = m[i][t].div_floor(&m[t][t]);
            if !qt.is_zero() {
                let pr = m[t].clone();
                for (x, y) in m[i].iter_mut().zip(&pr) {
                    *x -= &qt * y;
                }
            }
            clean &= m[i][t].is_zero();
        }
        for j in t + 1..ncols {
            let qt = m[t][j].div_floor(&m[t][t]);
            if !qt.is_zero() {
                for row in m.iter_mut() {
                    let y = row[t].clone();
                    row[j] -= &qt * y;
                }
            }
            clean &= m[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // Enforce divisibility by folding an offending row into row t.
        let p = m[t][t].clone();
        let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| !(&m[i][j] % &p).is_zero()));
        if let Some(i) = bad {
            let ri = m[i].clone();
            for (x, y) in m[t].iter_mut().zip(&ri) {
                *x += y;
            }
            continue;
        }
        out.push(p.abs());
        t += 1;
    }
    out
}

/// `{v in Z^n : M v = 0}` for an `m x n` integer matrix.
pub fn kernel_lattice(m: &[Vec<i64>], ncols: usize) -> IntLattice {
    let nrows = m.len();
    // Rows [M^T | I]; after HNF the rows with zero left block span the kernel.
    let aug: Vec<Vec<BigInt>> = (0..ncols)
        .map(|k| {
            let mut r: Vec<BigInt> = (0..nrows).map(|i| BigInt::from(m[i][k])).collect();
            r.extend((0..ncols).map(|j| BigInt::from(i64::from(j == k))));
            r
        })
        .collect();
    let h = hnf(aug);
    let gens: Vec<Vec<BigInt>> = h
        .into_iter()
        .filter(|r| r[..nrows].iter().all(Zero::is_zero))
        .map(|r| r[nrows..].to_vec())
        .collect();
    IntLattice::from_generators(ncols, &gens)
}

/// Rank over `Q` of an integer matrix.
pub fn rational_rank_i64(m: &[Vec<i64>], ncols: usize) -> usize {
    if m.is_empty() {
        return 0;
    }
    rational_rank(&rational_matrix(m), ncols)
}

fn matrix_diff(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect())
        .collect()
}

fn coordinate_rows(r: usize, idx: &BTreeSet<usize>) -> Vec<Vec<i64>> {
    idx.iter()
        .map(|&i| (0..r).map(|k| i64::from(k == i)).collect())
        .collect()
}

/// `S(w) = S(w_+) ∪ S(w_-)` and its complement `I(w)` for a pair.
pub fn pair_support_sets(
    datum: &CartanDatum,
    w_plus: &WeylElement,
    w_minus: &WeylElement,
) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let (sp, _) = datum.support_sets(w_plus);
    let (sm, _) = datum.support_sets(w_minus);
    let s: BTreeSet<usize> = sp.union(&sm).copied().collect();
    let i = (0..datum.rank()).filter(|k| !s.contains(k)).collect();
    (s, i)
}

/// `ker(w_+ - w_-) ∩ P`.
pub fn ltilde(datum: &CartanDatum, w_plus: &WeylElement, w_minus: &WeylElement) -> IntLattice {
    kernel_lattice(&matrix_diff(w_plus.matrix(), w_minus.matrix()), datum.rank())
}

/// `ker(w_+ - w_-) ∩ P_{S(w)}`.
pub fn ltilde_red(datum: &CartanDatum, w_plus: &WeylElement, w_minus: &WeylElement) -> IntLattice {
    let (_, fixed) = pair_support_sets(datum, w_plus, w_minus);
    let mut m = matrix_diff(w_plus.matrix(), w_minus.matrix());
    m.extend(coordinate_rows(datum.rank(), &fixed));
    kernel_lattice(&m, datum.rank())
}

/// `L(w) = 2 L̃_red(w) ⊕ P_{I(w)}`.
pub fn big_l(datum: &CartanDatum, w_plus: &WeylElement, w_minus: &WeylElement) -> IntLattice {
    let (_, fixed) = pair_support_sets(datum, w_plus, w_minus);
    ltilde_red(datum, w_plus, w_minus)
        .scale(2)
        .sum(&IntLattice::coordinate(datum.rank(), &fixed))
}

/// `K(w) = {mu in P_{S(w)} : (w + 1) mu in P_{I(w)}}`.
pub fn kappa_lattice(datum: &CartanDatum, w: &WeylElement) -> IntLattice {
    let r = datum.rank();
    let (support, fixed) = datum.support_sets(w);
    let plus = w.plus_identity();
    let mut m: Vec<Vec<i64>> = support.iter().map(|&i| plus[i].clone()).collect();
    m.extend(coordinate_rows(r, &fixed));
    kernel_lattice(&m, r)
}

/// `m(w) = dim ker(w + 1)`.
pub fn m_of_w(datum: &CartanDatum, w: &WeylElement) -> usize {
    datum.rank() - rational_rank_i64(&w.plus_identity(), datum.rank())
}

/// `lambda = lambda_+ - lambda_-` with dominant parts of disjoint support.
pub fn split_pm(lambda: &Weight) -> (Weight, Weight) {
    (
        Weight(lambda.0.iter().map(|&x| x.max(0)).collect()),
        Weight(lambda.0.iter().map(|&x| (-x).max(0)).collect()),
    )
}

/// Projections of `lambda` onto `P_{S(w)}` and `P_{I(w)}`.
pub fn split_s_i(
    datum: &CartanDatum,
    w_plus: &WeylElement,
    w_minus: &WeylElement,
    lambda: &Weight,
) -> (Weight, Weight) {
    let (s, _) = pair_support_sets(datum, w_plus, w_minus);
    let on = |keep: bool| {
        Weight(
            lambda
                .0
                .iter()
                .enumerate()
                .map(|(i, &x)| if s.contains(&i) == keep { x } else { 0 })
                .collect(),
        )
    };
    (on(true), on(false))
}

/// `((lambda)_0, (lambda)_+, (lambda)_-)` supported on `S(w_+) ∩ S(w_-)`,
/// `S(w_+) \ S(w_-)` and `S(w_-) \ S(w_+)` respectively.
pub fn split_triple(
    datum: &CartanDatum,
    w_plus: &WeylElement,
    w_minus: &WeylElement,
    lambda: &Weight,
) -> Result<(Weight, Weight, Weight), LatticeError> {
    if !lambda.is_dominant() {
        return Err(LatticeError::NotDominant(lambda.to_string()));
    }
    let (sp, _) = datum.support_sets(w_plus);
    let (sm, _) = datum.support_sets(w_minus);
    if lambda.support().iter().any(|i| !sp.contains(i) && !sm.contains(i)) {
        return Err(LatticeError::OutsideDomain {
            weight: lambda.to_string(),
            domain: "P_S(w)".into(),
        });
    }
    let pick = |f: &dyn Fn(usize) -> bool| {
        Weight(
            lambda
                .0
                .iter()
                .enumerate()
                .map(|(i, &x)| if f(i) { x } else { 0 })
                .collect(),
        )
    };
    Ok((
        pick(&|i| sp.contains(&i) && sm.contains(&i)),
        pick(&|i| sp.contains(&i) && !sm.contains(&i)),
        pick(&|i| sm.contains(&i) && !sp.contains(&i)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CartanDatum {
        "A2".parse().unwrap()
    }

    fn el(d: &CartanDatum, w: &[usize]) -> WeylElement {
        d.reduced_element(w).unwrap()
    }

    #[test]
    fn hnf_is_canonical() {
        let a = IntLattice::from_i64(3, &[vec![2, 4, 6], vec![1, 1, 1], vec![3, 5, 7]]);
        let b = IntLattice::from_i64(3, &[vec![1, 1, 1], vec![3, 5, 7], vec![0, 2, 4]]);
        assert_eq!(a, b);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.basis_i64(), vec![vec![1, 1, 1], vec![0, 2, 4]]);
    }

    #[test]
    fn smith_examples() {
        let m = to_big(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(smith_divisors(&m), vec![2.into(), 6.into(), 12.into()]);
        assert!(smith_divisors(&to_big(&[vec![0, 0]])).is_empty());
        assert_eq!(
            smith_divisors(&to_big(&[vec![2, 0], vec![0, 3]])),
            vec![1.into(), 6.into()]
        );
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_lattice(&[vec![0, 0], vec![0, 0]], 2), IntLattice::full(2));
        assert!(kernel_lattice(&[vec![1, 0], vec![0, 1]], 2).is_zero());
        let d = a2();
        let c = el(&d, &[0, 1]);
        assert!(kernel_lattice(&c.minus_identity(), 2).is_zero());
        assert_eq!(kernel_lattice(&[vec![2, 4]], 2).basis_i64(), vec![vec![2, -1]]);
    }

    #[test]
    fn ltilde_examples() {
        let d = a2();
        let s1 = el(&d, &[0]);
        assert_eq!(ltilde(&d, &s1, &s1), IntLattice::full(2));
        assert_eq!(ltilde_red(&d, &s1, &s1).basis_i64(), vec![vec![1, 0]]);
        let w0 = d.longest_element();
        let e = d.identity();
        // w0 omega_1 = -omega_2: kernel of (w0 - 1) is Z(omega_1 - omega_2).
        assert_eq!(ltilde(&d, &w0, &e).basis_i64(), vec![vec![1, -1]]);
        assert_eq!(ltilde_red(&d, &w0, &e).rank(), 1);
        assert_eq!(ltilde(&d, &e, &e), IntLattice::full(2));
        assert!(ltilde_red(&d, &e, &e).is_zero());
    }

    #[test]
    fn big_l_examples() {
        let d = a2();
        let s1 = el(&d, &[0]);
        assert_eq!(big_l(&d, &s1, &s1).basis_i64(), vec![vec![2, 0], vec![0, 1]]);
        let w0 = d.longest_element();
        assert_eq!(big_l(&d, &w0, &w0), IntLattice::full(2).scale(2));
        let e = d.identity();
        assert_eq!(big_l(&d, &e, &e), IntLattice::full(2));
    }

    #[test]
    fn kappa_examples() {
        let d = a2();
        let s1 = el(&d, &[0]);
        assert_eq!(kappa_lattice(&d, &s1).basis_i64(), vec![vec![1, 0]]);
        assert_eq!(m_of_w(&d, &s1), 1);
        let w0 = d.longest_element();
        assert_eq!(kappa_lattice(&d, &w0).basis_i64(), vec![vec![1, 1]]);
        assert_eq!(m_of_w(&d, &w0), 1);
        let c = el(&d, &[0, 1]);
        assert!(kappa_lattice(&d, &c).is_zero());
        assert_eq!(m_of_w(&d, &c), 0);
    }

    #[test]
    fn splits() {
        assert_eq!(split_pm(&Weight(vec![1, -2])), (Weight(vec![1, 0]), Weight(vec![0, 2])));
        assert_eq!(split_pm(&Weight(vec![0, 0])), (Weight(vec![0, 0]), Weight(vec![0, 0])));
        let d = a2();
        let s1 = el(&d, &[0]);
        let s2 = el(&d, &[1]);
        assert_eq!(
            split_s_i(&d, &s1, &s1, &Weight(vec![2, 3])),
            (Weight(vec![2, 0]), Weight(vec![0, 3]))
        );
        assert_eq!(
            split_triple(&d, &s1, &s2, &Weight(vec![1, 1])).unwrap(),
            (Weight(vec![0, 0]), Weight(vec![1, 0]), Weight(vec![0, 1]))
        );
        assert!(split_triple(&d, &s1, &s1, &Weight(vec![1, 1])).is_err());
        assert!(split_triple(&d, &s1, &s2, &Weight(vec![-1, 0])).is_err());
    }

    #[test]
    fn quotient_index() {
        let d = a2();
        let s1 = el(&d, &[0]);
        let l = big_l(&d, &s1, &s1);
        let two_lt = ltilde(&d, &s1, &s1).scale(2);
        let div = l.quotient_divisors(&two_lt).unwrap();
        assert_eq!(div.iter().filter(|x| **x == BigInt::from(2)).count(), 1);
        assert_eq!(l.index_of(&two_lt).unwrap(), Some(BigInt::from(2)));
    }
}
