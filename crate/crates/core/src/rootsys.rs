//! Finite root systems, weights and Weyl group elements.
//!
//! Weights are integer vectors in the fundamental-weight basis; elements of
//! the root lattice are integer vectors in the simple-root basis. Indices are
//! 0-based internally and 1-based in every parsed or rendered form.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qarith::linalg::{inverse, rational_matrix};

/// Largest Weyl group the crate will enumerate in full.
pub const MAX_ENUMERATED_ORDER: usize = 384;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSysError {
    #[error("unknown or unsupported Cartan type '{0}'")]
    BadType(String),
    #[error("simple reflection index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("word {0} is not reduced")]
    NotReduced(String),
    #[error("cannot parse word '{0}'")]
    BadWord(String),
    #[error("Weyl group of order {0} is too large to enumerate")]
    TooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    G,
}

/// An integral weight `sum n_i omega_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// `Supp lambda`: indices with a nonzero coordinate.
    pub fn support(&self) -> BTreeSet<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| k * a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_combination(&self.0, "w"))
    }
}

/// An element `sum b_i alpha_i` of the root lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootVec(pub Vec<i64>);

impl RootVec {
    pub fn zero(rank: usize) -> Self {
        RootVec(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        RootVec(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn add(&self, other: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> RootVec {
        RootVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> RootVec {
        RootVec(self.0.iter().map(|a| k * a).collect())
    }

    /// Parses `a1`, `2a1+a2`, `a1+2*a3`, or `0`.
    pub fn parse(s: &str, rank: usize) -> Option<RootVec> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut v = vec![0i64; rank];
        if s == "0" {
            return Some(RootVec(v));
        }
        for term in s.split('+') {
            let (coef, idx) = term.split_once('a')?;
            let coef = coef.trim_end_matches('*');
            let c: i64 = if coef.is_empty() { 1 } else { coef.parse().ok()? };
            let i: usize = idx.parse().ok()?;
            if i == 0 || i > rank {
                return None;
            }
            v[i - 1] += c;
        }
        Some(RootVec(v))
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_combination(&self.0, "a"))
    }
}

fn render_combination(coords: &[i64], sym: &str) -> String {
    let mut out = String::new();
    for (i, &c) in coords.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        if c.abs() != 1 {
            out.push_str(&c.abs().to_string());
        }
        out.push_str(&format!("{sym}{}", i + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Cartan datum of a finite type together with its positive roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    label: TypeLabel,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    sym_d: Vec<i64>,
    positive_roots: Vec<RootVec>,
    /// `<omega_i, omega_j>`.
    weight_gram: Vec<Vec<BigRational>>,
}

impl CartanDatum {
    pub fn new(label: TypeLabel, rank: usize) -> Result<Self, RootSysError> {
        let bad = || RootSysError::BadType(format!("{label:?}{rank}"));
        let valid = match label {
            TypeLabel::A => rank >= 1,
            TypeLabel::B | TypeLabel::C => rank >= 2,
            TypeLabel::D => rank >= 4,
            TypeLabel::G => rank == 2,
        };
        if !valid || rank > 8 {
            return Err(bad());
        }
        let mut c = vec![vec![0i64; rank]; rank];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut d = vec![1i64; rank];
        match label {
            TypeLabel::A | TypeLabel::B | TypeLabel::C => {
                for i in 0..rank - 1 {
                    c[i][i + 1] = -1;
                    c[i + 1][i] = -1;
                }
                let n = rank - 1;
                if label == TypeLabel::B {
                    // alpha_n short
                    c[n][n - 1] = -2;
                    d = vec![2; rank];
                    d[n] = 1;
                } else if label == TypeLabel::C {
                    // alpha_n long
                    c[n - 1][n] = -2;
                    d[n] = 2;
                }
            }
            TypeLabel::D => {
                for i in 0..rank - 2 {
                    c[i][i + 1] = -1;
                    c[i + 1][i] = -1;
                }
                c[rank - 3][rank - 1] = -1;
                c[rank - 1][rank - 3] = -1;
            }
            TypeLabel::G => {
                // alpha_1 short, alpha_2 long
                c[0][1] = -3;
                c[1][0] = -1;
                d = vec![1, 3];
            }
        }
        Self::from_cartan(label, c, d)
    }

    fn from_cartan(label: TypeLabel, cartan: Vec<Vec<i64>>, sym_d: Vec<i64>) -> Result<Self, RootSysError> {
        let rank = cartan.len();
        let cq = rational_matrix(&cartan);
        let cinv = inverse(&cq).ok_or_else(|| RootSysError::BadType("singular Cartan".into()))?;
        // <omega_i, omega_j> = (C^{-T} D)_{ij}
        let weight_gram = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| &cinv[j][i] * BigRational::from_integer(BigInt::from(sym_d[j])))
                    .collect()
            })
            .collect();
        let mut datum = CartanDatum {
            label,
            rank,
            cartan,
            sym_d,
            positive_roots: Vec::new(),
            weight_gram,
        };
        datum.positive_roots = datum.generate_positive_roots();
        Ok(datum)
    }

    fn generate_positive_roots(&self) -> Vec<RootVec> {
        let mut seen: BTreeSet<RootVec> = BTreeSet::new();
        let mut queue: VecDeque<RootVec> = (0..self.rank).map(|i| RootVec::simple(self.rank, i)).collect();
        while let Some(r) = queue.pop_front() {
            if !seen.insert(r.clone()) {
                continue;
            }
            for i in 0..self.rank {
                let s = self.reflect_root(i, &r);
                if !seen.contains(&s) {
                    queue.push_back(s);
                }
            }
        }
        let mut pos: Vec<RootVec> = seen.into_iter().filter(|r| r.is_nonnegative()).collect();
        pos.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
        pos
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `c_ij`.
    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    /// Symmetrizers `d_i` with `(d_i c_ij)` symmetric.
    pub fn sym_d(&self) -> &[i64] {
        &self.sym_d
    }

    pub fn positive_roots(&self) -> &[RootVec] {
        &self.positive_roots
    }

    pub fn name(&self) -> String {
        format!("{:?}{}", self.label, self.rank)
    }

    fn check_index(&self, i: usize) -> Result<(), RootSysError> {
        if i < self.rank {
            Ok(())
        } else {
            Err(RootSysError::IndexOutOfRange {
                index: i + 1,
                rank: self.rank,
            })
        }
    }

    /// `alpha_i` in the fundamental-weight basis: column `i` of the Cartan matrix.
    pub fn simple_root_weight(&self, i: usize) -> Weight {
        Weight((0..self.rank).map(|k| self.cartan[k][i]).collect())
    }

    pub fn root_to_weight(&self, r: &RootVec) -> Weight {
        Weight(
            (0..self.rank)
                .map(|k| (0..self.rank).map(|j| self.cartan[k][j] * r.0[j]).sum())
                .collect(),
        )
    }

    /// Inverse of [`Self::root_to_weight`]; `None` if the weight is not in the
    /// root lattice.
    pub fn weight_to_root(&self, w: &Weight) -> Option<RootVec> {
        let cinv = inverse(&rational_matrix(&self.cartan)).unwrap();
        let mut out = Vec::with_capacity(self.rank);
        for row in &cinv {
            let v: BigRational = row
                .iter()
                .zip(&w.0)
                .map(|(a, &b)| a * BigRational::from_integer(BigInt::from(b)))
                .sum();
            if !v.is_integer() {
                return None;
            }
            out.push(i64::try_from(v.to_integer()).ok()?);
        }
        Some(RootVec(out))
    }

    /// `s_i(beta) = beta - <beta, alpha_i^vee> alpha_i` on the root lattice.
    pub fn reflect_root(&self, i: usize, r: &RootVec) -> RootVec {
        let pairing: i64 = (0..self.rank).map(|j| self.cartan[i][j] * r.0[j]).sum();
        let mut out = r.clone();
        out.0[i] -= pairing;
        out
    }

    /// `<alpha_i, alpha_j> = d_i c_ij`.
    pub fn root_inner(&self, a: &RootVec, b: &RootVec) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a.0[i] * self.sym_d[i] * self.cartan[i][j] * b.0[j];
            }
        }
        s
    }

    /// `<lambda, beta>` for a weight and a root-lattice element; always an integer.
    pub fn weight_root_inner(&self, w: &Weight, r: &RootVec) -> i64 {
        (0..self.rank).map(|j| r.0[j] * self.sym_d[j] * w.0[j]).sum()
    }

    /// `<lambda, mu>` on weights; rational in general.
    pub fn pairing(&self, a: &Weight, b: &Weight) -> BigRational {
        let mut s = BigRational::from_integer(BigInt::from(0));
        for i in 0..self.rank {
            for j in 0..self.rank {
                let k = a.0[i] * b.0[j];
                if k != 0 {
                    s += &self.weight_gram[i][j] * BigRational::from_integer(BigInt::from(k));
                }
            }
        }
        s
    }

    /// `<lambda, alpha_i^vee>`.
    pub fn coroot_pairing(&self, w: &Weight, i: usize) -> i64 {
        w.0[i]
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            matrix: identity_matrix(self.rank),
            root_matrix: identity_matrix(self.rank),
            word: Vec::new(),
        }
    }

    /// The simple reflection `s_i` (0-based index).
    pub fn simple_reflection(&self, i: usize) -> Result<WeylElement, RootSysError> {
        self.check_index(i)?;
        Ok(WeylElement {
            matrix: self.reflection_weight_matrix(i),
            root_matrix: self.reflection_root_matrix(i),
            word: vec![i],
        })
    }

    fn reflection_weight_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        // s_i(lambda)_k = lambda_k - lambda_i c_ki
        let mut m = identity_matrix(self.rank);
        for (k, row) in m.iter_mut().enumerate() {
            row[i] -= self.cartan[k][i];
        }
        m
    }

    fn reflection_root_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        // s_i(beta)_i = beta_i - sum_j c_ij beta_j
        let mut m = identity_matrix(self.rank);
        for j in 0..self.rank {
            m[i][j] -= self.cartan[i][j];
        }
        m
    }

    /// Product `s_{i_1} ... s_{i_l}`, plus whether the word is reduced.
    pub fn word_to_element(&self, word: &[usize]) -> Result<(WeylElement, bool), RootSysError> {
        let mut matrix = identity_matrix(self.rank);
        let mut root_matrix = identity_matrix(self.rank);
        for &i in word {
            self.check_index(i)?;
            matrix = mat_mul(&matrix, &self.reflection_weight_matrix(i));
            root_matrix = mat_mul(&root_matrix, &self.reflection_root_matrix(i));
        }
        let mut w = WeylElement {
            matrix,
            root_matrix,
            word: Vec::new(),
        };
        w.word = self.lexmin_word(&w);
        let reduced = w.word.len() == word.len();
        Ok((w, reduced))
    }

    /// Like [`Self::word_to_element`] but rejects non-reduced words.
    pub fn reduced_element(&self, word: &[usize]) -> Result<WeylElement, RootSysError> {
        let (w, reduced) = self.word_to_element(word)?;
        if !reduced {
            return Err(RootSysError::NotReduced(format_word(word)));
        }
        Ok(w)
    }

    /// `l(w) = #{beta > 0 : w(beta) < 0}`.
    pub fn length(&self, w: &WeylElement) -> usize {
        self.positive_roots
            .iter()
            .filter(|r| !apply_matrix(&w.root_matrix, &r.0).iter().all(|&x| x >= 0))
            .count()
    }

    fn lexmin_word(&self, w: &WeylElement) -> Vec<usize> {
        let mut cur = w.clone();
        let mut len = self.length(&cur);
        let mut word = Vec::with_capacity(len);
        while len > 0 {
            let mut found = false;
            for i in 0..self.rank {
                let left = WeylElement {
                    matrix: mat_mul(&self.reflection_weight_matrix(i), &cur.matrix),
                    root_matrix: mat_mul(&self.reflection_root_matrix(i), &cur.root_matrix),
                    word: Vec::new(),
                };
                let l = self.length(&left);
                if l < len {
                    word.push(i);
                    cur = left;
                    len = l;
                    found = true;
                    break;
                }
            }
            assert!(found, "every nontrivial element has a left descent");
        }
        word
    }

    pub fn multiply(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        let mut w = WeylElement {
            matrix: mat_mul(&a.matrix, &b.matrix),
            root_matrix: mat_mul(&a.root_matrix, &b.root_matrix),
            word: Vec::new(),
        };
        w.word = self.lexmin_word(&w);
        w
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let word: Vec<usize> = w.word.iter().rev().copied().collect();
        self.word_to_element(&word).expect("valid indices").0
    }

    /// Roots `beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k})` of a reduced word.
    pub fn inversion_roots(&self, word: &[usize]) -> Result<Vec<RootVec>, RootSysError> {
        self.reduced_element(word)?;
        let mut out = Vec::with_capacity(word.len());
        for (k, &i) in word.iter().enumerate() {
            let mut r = RootVec::simple(self.rank, i);
            for &j in word[..k].iter().rev() {
                r = self.reflect_root(j, &r);
            }
            out.push(r);
        }
        Ok(out)
    }

    /// `(S(w), I(w))`: `I(w)` are the indices whose fundamental weight is fixed.
    pub fn support_sets(&self, w: &WeylElement) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let fixed: BTreeSet<usize> = (0..self.rank)
            .filter(|&i| w.apply(&Weight::fundamental(self.rank, i)) == Weight::fundamental(self.rank, i))
            .collect();
        let support = (0..self.rank).filter(|i| !fixed.contains(i)).collect();
        (support, fixed)
    }

    /// All elements, in order of length then canonical word.
    pub fn weyl_group(&self) -> Result<Vec<WeylElement>, RootSysError> {
        let mut seen: HashMap<Vec<Vec<i64>>, WeylElement> = HashMap::new();
        let e = self.identity();
        seen.insert(e.matrix.clone(), e.clone());
        let mut frontier = vec![e];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for i in 0..self.rank {
                    let m = mat_mul(&w.matrix, &self.reflection_weight_matrix(i));
                    if seen.contains_key(&m) {
                        continue;
                    }
                    let rm = mat_mul(&w.root_matrix, &self.reflection_root_matrix(i));
                    let mut x = WeylElement {
                        matrix: m.clone(),
                        root_matrix: rm,
                        word: Vec::new(),
                    };
                    x.word = self.lexmin_word(&x);
                    seen.insert(m, x.clone());
                    next.push(x);
                }
            }
            if seen.len() > MAX_ENUMERATED_ORDER {
                return Err(RootSysError::TooLarge(seen.len()));
            }
            frontier = next;
        }
        let mut all: Vec<WeylElement> = seen.into_values().collect();
        all.sort_by(|a, b| a.word.len().cmp(&b.word.len()).then_with(|| a.word.cmp(&b.word)));
        Ok(all)
    }

    pub fn longest_element(&self) -> WeylElement {
        let mut cur = self.identity();
        loop {
            let len = self.length(&cur);
            let next = (0..self.rank)
                .map(|i| {
                    let mut word = cur.word.clone();
                    word.push(i);
                    self.word_to_element(&word).unwrap().0
                })
                .find(|x| self.length(x) > len);
            match next {
                Some(x) => cur = x,
                None => return cur,
            }
        }
    }

    /// Parses a comma-separated, 1-based word such as `1,2,1`. The empty
    /// string and `e` denote the identity.
    pub fn parse_word(&self, s: &str) -> Result<Vec<usize>, RootSysError> {
        let t = s.trim();
        if t.is_empty() || t == "e" {
            return Ok(Vec::new());
        }
        t.split(',')
            .map(|p| {
                let i: usize = p.trim().parse().map_err(|_| RootSysError::BadWord(s.to_string()))?;
                if i == 0 || i > self.rank {
                    return Err(RootSysError::IndexOutOfRange {
                        index: i,
                        rank: self.rank,
                    });
                }
                Ok(i - 1)
            })
            .collect()
    }
}

impl FromStr for CartanDatum {
    type Err = RootSysError;

    /// Parses labels such as `A2`, `B3`, `G2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || RootSysError::BadType(s.to_string());
        let mut chars = s.chars();
        let label = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => TypeLabel::A,
            Some('B') => TypeLabel::B,
            Some('C') => TypeLabel::C,
            Some('D') => TypeLabel::D,
            Some('G') => TypeLabel::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanDatum::new(label, rank)
    }
}

/// A Weyl group element: its matrix on the weight lattice (column `j` is the
/// image of `omega_j`), its matrix on the root lattice, and the
/// lexicographically smallest reduced word.
#[derive(Debug, Clone)]
pub struct WeylElement {
    matrix: Vec<Vec<i64>>,
    root_matrix: Vec<Vec<i64>>,
    word: Vec<usize>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl WeylElement {
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn root_matrix(&self) -> &[Vec<i64>] {
        &self.root_matrix
    }

    /// Canonical (lexicographically smallest) reduced word, 0-based.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        Weight(apply_matrix(&self.matrix, &w.0))
    }

    pub fn apply_root(&self, r: &RootVec) -> RootVec {
        RootVec(apply_matrix(&self.root_matrix, &r.0))
    }

    /// Matrix of `w - 1` on weights.
    pub fn minus_identity(&self) -> Vec<Vec<i64>> {
        let mut m = self.matrix.clone();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] -= 1;
        }
        m
    }

    /// Matrix of `w + 1` on weights.
    pub fn plus_identity(&self) -> Vec<Vec<i64>> {
        let mut m = self.matrix.clone();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += 1;
        }
        m
    }

    /// 1-based rendering, `e` for the identity.
    pub fn word_string(&self) -> String {
        format_word(&self.word)
    }
}

/// Renders a 0-based word as `s1 s2 s1`, or `e` when empty.
pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join(" ")
    }
}

/// Renders a 0-based word in CLI form, `1,2,1`.
pub fn word_csv(word: &[usize]) -> String {
    word.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn identity_matrix(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub(crate) fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

pub(crate) fn apply_matrix(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CartanDatum {
        "A2".parse().unwrap()
    }

    #[test]
    fn datum_invariants() {
        for name in ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4"] {
            let d: CartanDatum = name.parse().unwrap();
            let r = d.rank();
            for i in 0..r {
                assert_eq!(d.c(i, i), 2);
                for j in 0..r {
                    if i != j {
                        assert!(d.c(i, j) <= 0);
                        assert_eq!(d.c(i, j) == 0, d.c(j, i) == 0);
                    }
                    assert_eq!(d.sym_d()[i] * d.c(i, j), d.sym_d()[j] * d.c(j, i), "{name}");
                }
            }
            let g = d.sym_d().iter().fold(0, |g, &x| num_integer::gcd(g, x));
            assert_eq!(g, 1);
        }
    }

    #[test]
    fn positive_root_counts() {
        for (name, n) in [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("G2", 6),
            ("D4", 12),
        ] {
            let d: CartanDatum = name.parse().unwrap();
            assert_eq!(d.positive_roots().len(), n, "{name}");
        }
        let b2: CartanDatum = "B2".parse().unwrap();
        let mut roots: Vec<_> = b2.positive_roots().iter().map(|r| r.0.clone()).collect();
        roots.sort();
        assert_eq!(roots, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn simple_reflection_action() {
        let d = a2();
        let s1 = d.simple_reflection(0).unwrap();
        assert_eq!(s1.apply(&Weight(vec![1, 0])), Weight(vec![-1, 1]));
        assert_eq!(s1.apply(&Weight(vec![0, 1])), Weight(vec![0, 1]));
        let l = Weight(vec![3, -2]);
        assert_eq!(s1.apply(&s1.apply(&l)), l);
        assert_eq!(s1.length(), 1);
        assert!(d.simple_reflection(2).is_err());
    }

    #[test]
    fn words_and_reducedness() {
        let d = a2();
        let (x, rx) = d.word_to_element(&[0, 1, 0]).unwrap();
        let (y, ry) = d.word_to_element(&[1, 0, 1]).unwrap();
        assert_eq!(x, y);
        assert!(rx && ry);
        assert_eq!(x.word(), &[0, 1, 0]);
        let (e, re) = d.word_to_element(&[0, 0]).unwrap();
        assert!(e.is_identity());
        assert!(!re);
        let b2: CartanDatum = "B2".parse().unwrap();
        let (w0, r) = b2.word_to_element(&[0, 1, 0, 1]).unwrap();
        assert!(r);
        assert_eq!(b2.length(&w0), 4);
        assert_eq!(w0, b2.longest_element());
    }

    #[test]
    fn inversion_roots_examples() {
        let d = a2();
        assert_eq!(
            d.inversion_roots(&[0, 1]).unwrap(),
            vec![RootVec(vec![1, 0]), RootVec(vec![1, 1])]
        );
        assert_eq!(
            d.inversion_roots(&[0, 1, 0]).unwrap(),
            vec![RootVec(vec![1, 0]), RootVec(vec![1, 1]), RootVec(vec![0, 1])]
        );
        assert!(d.inversion_roots(&[]).unwrap().is_empty());
        assert!(matches!(d.inversion_roots(&[0, 0]), Err(RootSysError::NotReduced(_))));
    }

    #[test]
    fn support_set_examples() {
        let d = a2();
        let s1 = d.simple_reflection(0).unwrap();
        assert_eq!(d.support_sets(&s1), ([0].into(), [1].into()));
        let (w, _) = d.word_to_element(&[0, 1]).unwrap();
        assert_eq!(d.support_sets(&w), ([0, 1].into(), BTreeSet::new()));
        assert_eq!(d.support_sets(&d.identity()), (BTreeSet::new(), [0, 1].into()));
    }

    #[test]
    fn pairing_examples() {
        let d = a2();
        let a1 = RootVec::simple(2, 0);
        let a2r = RootVec::simple(2, 1);
        assert_eq!(d.root_inner(&a1, &a2r), -1);
        assert_eq!(d.coroot_pairing(&Weight(vec![1, 0]), 0), 1);
        let b2: CartanDatum = "B2".parse().unwrap();
        assert_eq!(b2.root_inner(&a1, &a2r), -2);
        // weight pairings agree with root pairings through alpha_i = sum c_ji omega_j
        for dat in [d, b2, "G2".parse().unwrap()] {
            for a in dat.positive_roots() {
                for b in dat.positive_roots() {
                    let lhs = dat.pairing(&dat.root_to_weight(a), &dat.root_to_weight(b));
                    assert_eq!(lhs, BigRational::from_integer(dat.root_inner(a, b).into()));
                    assert_eq!(dat.weight_root_inner(&dat.root_to_weight(a), b), dat.root_inner(a, b));
                }
            }
        }
        // <omega_1, omega_1> = 2/3 in A2
        assert_eq!(
            a2().pairing(&Weight(vec![1, 0]), &Weight(vec![1, 0])),
            BigRational::new(2.into(), 3.into())
        );
    }

    #[test]
    fn group_orders() {
        for (name, n) in [
            ("A1", 2),
            ("A2", 6),
            ("A3", 24),
            ("B2", 8),
            ("B3", 48),
            ("C3", 48),
            ("G2", 12),
        ] {
            let d: CartanDatum = name.parse().unwrap();
            let w = d.weyl_group().unwrap();
            assert_eq!(w.len(), n, "{name}");
            let max = w.iter().map(WeylElement::length).max().unwrap();
            assert_eq!(max, d.positive_roots().len());
        }
        let a4: CartanDatum = "A5".parse().unwrap();
        assert!(matches!(a4.weyl_group(), Err(RootSysError::TooLarge(_))));
    }

    #[test]
    fn parse_forms() {
        let d = a2();
        assert_eq!(d.parse_word("1,2,1").unwrap(), vec![0, 1, 0]);
        assert_eq!(d.parse_word("").unwrap(), Vec::<usize>::new());
        assert!(d.parse_word("1,3").is_err());
        assert!("E8".parse::<CartanDatum>().is_err());
        assert_eq!(RootVec::parse("2a1+a2", 2), Some(RootVec(vec![2, 1])));
        assert_eq!(RootVec::parse("a3", 2), None);
    }
}
