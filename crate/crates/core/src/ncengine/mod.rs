//! The quantized enveloping algebra: free-algebra elements, normal forms
//! modulo the defining relations, Lusztig's braid automorphisms, root
//! vectors, PBW bases and Levendorskii–Soibelman straightening.

mod pbw;
mod rewrite;
mod serre;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::qarith::RatFunc;
use crate::rootsys::RootSysError;

pub use pbw::{lexi_cmp, render_monomial, GradedPiece, PBWContext, PBWVector};
pub use rewrite::RewriteSystem;

/// Default bound on the number of `E`/`F` letters in any intermediate term.
pub const DEFAULT_DEGREE_CAP: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NcError {
    #[error("degree cap {cap} exceeded (a term needs {needed} letters); raise the cap")]
    CapOverflow { cap: usize, needed: usize },
    #[error("element is not in U^w: {0}")]
    NotInUw(String),
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("generator index {0} out of range")]
    BadIndex(usize),
    #[error("index pair ({0}, {1}) must satisfy 1 <= i < j <= l")]
    BadPair(usize, usize),
    #[error(transparent)]
    Root(#[from] RootSysError),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Which half of the algebra a PBW context lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// A generator symbol, 0-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    F(u8),
    KInv(u8),
    K(u8),
    E(u8),
}

impl Letter {
    fn key(self) -> (u8, u8, u8) {
        match self {
            Letter::F(i) => (0, i, 0),
            Letter::KInv(i) => (1, i, 0),
            Letter::K(i) => (1, i, 1),
            Letter::E(i) => (2, i, 0),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Letter::F(i) | Letter::KInv(i) | Letter::K(i) | Letter::E(i) => i as usize,
        }
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::F(i) => write!(f, "F{}", i + 1),
            Letter::KInv(i) => write!(f, "K{}^-1", i + 1),
            Letter::K(i) => write!(f, "K{}", i + 1),
            Letter::E(i) => write!(f, "E{}", i + 1),
        }
    }
}

pub type Word = Vec<Letter>;

/// An element of the free algebra on `E_i, F_i, K_i^{±1}` over `Q(q)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, RatFunc>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Vec::new())
    }

    pub fn from_word(w: Word) -> Self {
        Self::from_terms([(w, RatFunc::one())])
    }

    pub fn letter(l: Letter) -> Self {
        Self::from_word(vec![l])
    }

    pub fn e(i: usize) -> Self {
        Self::letter(Letter::E(i as u8))
    }

    pub fn f(i: usize) -> Self {
        Self::letter(Letter::F(i as u8))
    }

    pub fn k(i: usize) -> Self {
        Self::letter(Letter::K(i as u8))
    }

    pub fn k_inv(i: usize) -> Self {
        Self::letter(Letter::KInv(i as u8))
    }

    pub fn scalar(c: RatFunc) -> Self {
        Self::from_terms([(Vec::new(), c)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, RatFunc)>) -> Self {
        let mut out = Self::zero();
        for (w, c) in terms {
            out.add_term(w, &c);
        }
        out
    }

    pub fn add_term(&mut self, w: Word, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &[Letter]) -> RatFunc {
        self.terms.get(w).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, v)| (w.clone(), v * c)))
    }

    /// Number of `E`/`F` letters in the longest word.
    pub fn max_letter_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|w| w.iter().filter(|l| matches!(l, Letter::E(_) | Letter::F(_))).count())
            .max()
            .unwrap_or(0)
    }

    /// Root-lattice degree of a word (`E_i` counts `+α_i`, `F_i` counts `-α_i`).
    pub fn word_degree(w: &[Letter], rank: usize) -> Vec<i64> {
        let mut d = vec![0; rank];
        for l in w {
            match l {
                Letter::E(i) => d[*i as usize] += 1,
                Letter::F(i) => d[*i as usize] -= 1,
                _ => {}
            }
        }
        d
    }

    /// The common degree of all terms, or `None` if inhomogeneous. Zero is
    /// homogeneous of every degree and reports `Some(0)`.
    pub fn degree(&self, rank: usize) -> Option<Vec<i64>> {
        let mut it = self.terms.keys().map(|w| Self::word_degree(w, rank));
        let first = it.next().unwrap_or_else(|| vec![0; rank]);
        it.all(|d| d == first).then_some(first)
    }
}

impl std::ops::Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl std::ops::Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }
}

/// Free (concatenation) product.
impl std::ops::Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, &(x * y));
            }
        }
        out
    }
}

pub(crate) fn render_word(w: &[Letter]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let n = j - i;
        let s = match (w[i], n) {
            (l, 1) => l.to_string(),
            (Letter::KInv(k), n) => format!("K{}^-{n}", k + 1),
            (l, n) => format!("{l}^{n}"),
        };
        parts.push(s);
        i = j;
    }
    parts.join("*")
}

/// Renders `c * word` pieces as `E1*E2 - q^-1*E2*E1`.
pub(crate) fn render_sum<'a>(terms: impl Iterator<Item = (String, &'a RatFunc)>) -> String {
    let mut out = String::new();
    for (word, c) in terms {
        let (neg, body) = coefficient_body(c);
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match (body.is_empty(), word.is_empty()) {
            (true, true) => out.push('1'),
            (true, false) => out.push_str(&word),
            (false, true) => out.push_str(&body),
            (false, false) => {
                out.push_str(&body);
                out.push('*');
                out.push_str(&word);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Splits a coefficient into a sign and a printable magnitude; the magnitude
/// is empty for `±1`.
fn coefficient_body(c: &RatFunc) -> (bool, String) {
    if let Some((a, e)) = c.as_monomial() {
        use num_traits::{One, Signed};
        let neg = a.is_negative();
        let mag = a.abs();
        let num = if mag.is_one() {
            String::new()
        } else {
            crate::qarith::fmt_rational(&mag)
        };
        let qp = match e {
            0 => String::new(),
            1 => "q".to_string(),
            e => format!("q^{e}"),
        };
        let body = match (num.is_empty(), qp.is_empty()) {
            (true, _) => qp,
            (false, true) => num,
            (false, false) => format!("{num}*{qp}"),
        };
        return (neg, body);
    }
    (false, format!("({c})"))
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_sum(self.terms.iter().map(|(w, c)| (render_word(w), c))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_order() {
        let mut v = vec![
            Letter::E(0),
            Letter::K(0),
            Letter::F(1),
            Letter::KInv(0),
            Letter::F(0),
            Letter::K(1),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                Letter::F(0),
                Letter::F(1),
                Letter::KInv(0),
                Letter::K(0),
                Letter::K(1),
                Letter::E(0)
            ]
        );
    }

    #[test]
    fn rendering() {
        let x = &(&NCPoly::e(0) * &NCPoly::e(1)) - &(&NCPoly::e(1) * &NCPoly::e(0)).scale(&RatFunc::q_pow(-1));
        assert_eq!(x.to_string(), "E1*E2 - q^-1*E2*E1");
        assert_eq!(NCPoly::zero().to_string(), "0");
        let y = &NCPoly::k_inv(0) * &NCPoly::k_inv(0);
        assert_eq!(y.to_string(), "K1^-2");
        assert_eq!(x.degree(2), Some(vec![1, 1]));
    }
}
