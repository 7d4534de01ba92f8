//! Root vectors and PBW coordinates in `U^w_±`.
//!
//! Elements of `U_+` (resp. `U_-`) are stored as combinations of irreducible
//! `E`-words (resp. `F`-words), both written as 0-based letter indices; the
//! two halves share their rewriting tables.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde_json::{Map, Value};

use crate::qarith::linalg::{independent_rows, inverse};
use crate::qarith::RatFunc;
use crate::rootsys::{RootVec, Weight};

use super::rewrite::{Elem, Mono};
use super::{render_sum, Letter, NCPoly, NcError, RewriteSystem, Sign};

/// Element of one half of the algebra in irreducible single-type words.
pub type WordPoly = BTreeMap<Vec<u8>, RatFunc>;

pub(crate) fn wp_add_term(x: &mut WordPoly, w: Vec<u8>, c: &RatFunc) {
    if c.is_zero() {
        return;
    }
    match x.get_mut(&w) {
        Some(v) => {
            *v = &*v + c;
            if v.is_zero() {
                x.remove(&w);
            }
        }
        None => {
            x.insert(w, c.clone());
        }
    }
}

/// Orders multidegrees by the last coordinate where they differ.
pub fn lexi_cmp(a: &[u32], b: &[u32]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// Coordinates in the PBW basis `X_{β_l}^{n_l} ... X_{β_1}^{n_1}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PBWVector {
    coords: BTreeMap<Vec<u32>, RatFunc>,
}

impl PBWVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(n: Vec<u32>) -> Self {
        let mut v = Self::zero();
        v.coords.insert(n, RatFunc::one());
        v
    }

    pub fn from_coords(coords: impl IntoIterator<Item = (Vec<u32>, RatFunc)>) -> Self {
        let mut v = Self::zero();
        for (n, c) in coords {
            v.add_term(n, &c);
        }
        v
    }

    pub fn add_term(&mut self, n: Vec<u32>, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.coords.get_mut(&n) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.coords.remove(&n);
                }
            }
            None => {
                self.coords.insert(n, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coeff(&self, n: &[u32]) -> RatFunc {
        self.coords.get(n).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &RatFunc)> {
        self.coords.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coords.len()
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Self::from_coords(self.coords.iter().map(|(n, v)| (n.clone(), v * c)))
    }

    pub fn add(&self, other: &PBWVector) -> Self {
        let mut out = self.clone();
        for (n, c) in &other.coords {
            out.add_term(n.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &PBWVector) -> Self {
        self.add(&other.scale(&RatFunc::from_int(-1)))
    }

    /// The term with the largest multidegree in the order of [`lexi_cmp`].
    pub fn highest_term(&self) -> Option<(&Vec<u32>, &RatFunc)> {
        self.coords.iter().max_by(|a, b| lexi_cmp(a.0, b.0))
    }

    /// The term with the smallest multidegree in the order of [`lexi_cmp`].
    pub fn lowest_term(&self) -> Option<(&Vec<u32>, &RatFunc)> {
        self.coords.iter().min_by(|a, b| lexi_cmp(a.0, b.0))
    }

    /// `{"n1,n2,...": coefficient}`.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (n, c) in &self.coords {
            let key = n.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
            m.insert(key, c.to_json());
        }
        Value::Object(m)
    }

    /// Renders with `X1`, `X2`, ... standing for the root vectors.
    pub fn render(&self) -> String {
        let mut terms: Vec<(&Vec<u32>, &RatFunc)> = self.coords.iter().collect();
        terms.sort_by(|a, b| lexi_cmp(b.0, a.0));
        render_sum(terms.into_iter().map(|(n, c)| (render_monomial(n), c)))
    }
}

/// `X_l^{n_l} ... X_1^{n_1}` as text.
pub fn render_monomial(n: &[u32]) -> String {
    let mut parts = Vec::new();
    for (k, &e) in n.iter().enumerate().rev() {
        match e {
            0 => {}
            1 => parts.push(format!("X{}", k + 1)),
            e => parts.push(format!("X{}^{e}", k + 1)),
        }
    }
    parts.join("*")
}

/// One graded piece of `U^w_±`: its PBW monomials and their expansions.
#[derive(Debug)]
pub struct GradedPiece {
    pub degree: Vec<u32>,
    pub monomials: Vec<Vec<u32>>,
    /// Irreducible words of this degree (columns of `matrix`).
    pub words: Vec<Vec<u8>>,
    /// Row `m` holds the word coordinates of monomial `m`.
    pub matrix: Vec<Vec<RatFunc>>,
    pub rank: usize,
    cols: Vec<usize>,
    inv: Option<Vec<Vec<RatFunc>>>,
}

impl GradedPiece {
    pub fn is_independent(&self) -> bool {
        self.rank == self.monomials.len()
    }

    /// Word coordinates of an element of this degree.
    pub fn word_coords(&self, x: &WordPoly) -> Result<Vec<RatFunc>, NcError> {
        let mut v = vec![RatFunc::zero(); self.words.len()];
        for (w, c) in x {
            match self.words.binary_search(w) {
                Ok(i) => v[i] = c.clone(),
                Err(_) => return Err(NcError::Internal(format!("word {w:?} is not irreducible"))),
            }
        }
        Ok(v)
    }
}

/// A PBW context: a reduced word, its roots and root vectors.
#[derive(Debug)]
pub struct PBWContext {
    system: Arc<RewriteSystem>,
    word: Vec<usize>,
    sign: Sign,
    betas: Vec<RootVec>,
    root_vectors: Vec<WordPoly>,
    pieces: Mutex<HashMap<Vec<u32>, Arc<GradedPiece>>>,
    monomials: Mutex<HashMap<Vec<u32>, Arc<WordPoly>>>,
}

impl PBWContext {
    /// Builds `X_{β_k} = T_{i_1} ... T_{i_{k-1}}(X_{i_k})` for a reduced word.
    pub fn new(system: Arc<RewriteSystem>, word: &[usize], sign: Sign) -> Result<Self, NcError> {
        let datum = system.datum();
        let betas = datum.inversion_roots(word)?;
        let r = datum.rank();
        let mut root_vectors = Vec::with_capacity(word.len());
        for (k, &ik) in word.iter().enumerate() {
            let mut m = Mono {
                f: Vec::new(),
                k: vec![0; r],
                e: Vec::new(),
            };
            match sign {
                Sign::Plus => m.e.push(ik as u8),
                Sign::Minus => m.f.push(ik as u8),
            }
            let mut x = Elem::new();
            x.insert(m, RatFunc::one());
            for &i in word[..k].iter().rev() {
                x = system.braid_elem(i, &x)?;
            }
            let mut wp = WordPoly::new();
            for (m, c) in x {
                let inside = m.k.iter().all(|&v| v == 0)
                    && match sign {
                        Sign::Plus => m.f.is_empty(),
                        Sign::Minus => m.e.is_empty(),
                    };
                if !inside {
                    return Err(NcError::Internal(format!(
                        "root vector {} left U_{}",
                        k + 1,
                        sign.symbol()
                    )));
                }
                let w = if sign == Sign::Plus { m.e } else { m.f };
                wp_add_term(&mut wp, w, &c);
            }
            root_vectors.push(wp);
        }
        Ok(PBWContext {
            system,
            word: word.to_vec(),
            sign,
            betas,
            root_vectors,
            pieces: Mutex::new(HashMap::new()),
            monomials: Mutex::new(HashMap::new()),
        })
    }

    pub fn system(&self) -> &Arc<RewriteSystem> {
        &self.system
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn betas(&self) -> &[RootVec] {
        &self.betas
    }

    pub fn root_vector(&self, k: usize) -> &WordPoly {
        &self.root_vectors[k]
    }

    /// Root vector `k` (0-based) as a free-algebra element.
    pub fn root_vector_poly(&self, k: usize) -> NCPoly {
        self.to_ncpoly(&self.root_vectors[k])
    }

    pub fn to_ncpoly(&self, x: &WordPoly) -> NCPoly {
        let letter = |i: u8| {
            if self.sign == Sign::Plus {
                Letter::E(i)
            } else {
                Letter::F(i)
            }
        };
        NCPoly::from_terms(
            x.iter()
                .map(|(w, c)| (w.iter().map(|&i| letter(i)).collect(), c.clone())),
        )
    }

    /// Converts a normal-form element of this half into word coordinates.
    pub fn from_ncpoly(&self, x: &NCPoly) -> Result<WordPoly, NcError> {
        let x = self.system.normal_form(x)?;
        let mut out = WordPoly::new();
        for (w, c) in x.terms() {
            let mut letters = Vec::with_capacity(w.len());
            for l in w {
                match (l, self.sign) {
                    (Letter::E(i), Sign::Plus) | (Letter::F(i), Sign::Minus) => letters.push(*i),
                    _ => return Err(NcError::NotInUw(format!("{x}"))),
                }
            }
            wp_add_term(&mut out, letters, c);
        }
        Ok(out)
    }

    /// Root-lattice degree (nonnegative coordinates) of a multidegree.
    pub fn degree_of(&self, n: &[u32]) -> Vec<u32> {
        let r = self.system.rank();
        let mut d = vec![0u32; r];
        for (k, &nk) in n.iter().enumerate() {
            for (t, &b) in self.betas[k].coords().iter().enumerate() {
                d[t] += nk * b as u32;
            }
        }
        d
    }

    /// `sum_k n_k β_k` as a root-lattice vector.
    pub fn root_degree(&self, n: &[u32]) -> RootVec {
        RootVec(self.degree_of(n).into_iter().map(i64::from).collect())
    }

    /// Product of two elements of this half.
    pub fn word_mul(&self, a: &WordPoly, b: &WordPoly) -> Result<WordPoly, NcError> {
        let mut out = WordPoly::new();
        for (wa, ca) in a {
            for (wb, cb) in b {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                let c = ca * cb;
                for (v, d) in self.system.reduce_word(&w)? {
                    wp_add_term(&mut out, v, &(&c * &d));
                }
            }
        }
        Ok(out)
    }

    /// Expansion of the PBW monomial `X^n` in irreducible words.
    pub fn monomial(&self, n: &[u32]) -> Result<Arc<WordPoly>, NcError> {
        if let Some(v) = self.monomials.lock().unwrap().get(n) {
            return Ok(v.clone());
        }
        let v = match n.iter().rposition(|&x| x > 0) {
            None => {
                let mut one = WordPoly::new();
                one.insert(Vec::new(), RatFunc::one());
                one
            }
            Some(j) => {
                let mut rest = n.to_vec();
                rest[j] -= 1;
                let tail = self.monomial(&rest)?;
                self.word_mul(&self.root_vectors[j], &tail)?
            }
        };
        let v = Arc::new(v);
        self.monomials.lock().unwrap().insert(n.to_vec(), v.clone());
        Ok(v)
    }

    /// All multidegrees `n` with `sum n_k β_k = gamma`, in increasing
    /// [`lexi_cmp`] order.
    pub fn multidegrees(&self, gamma: &[u32]) -> Vec<Vec<u32>> {
        fn rec(betas: &[RootVec], k: usize, rem: &mut Vec<i64>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if k == betas.len() {
                if rem.iter().all(|&x| x == 0) {
                    out.push(cur.clone());
                }
                return;
            }
            let b = betas[k].coords();
            let mut n = 0u32;
            loop {
                cur[k] = n;
                rec(betas, k + 1, rem, cur, out);
                if rem.iter().zip(b).any(|(x, y)| x < y) {
                    break;
                }
                for (x, y) in rem.iter_mut().zip(b) {
                    *x -= y;
                }
                n += 1;
            }
            for (x, y) in rem.iter_mut().zip(b) {
                *x += *y * n as i64;
            }
            cur[k] = 0;
        }
        let mut out = Vec::new();
        let mut rem: Vec<i64> = gamma.iter().map(|&x| x as i64).collect();
        rec(&self.betas, 0, &mut rem, &mut vec![0; self.betas.len()], &mut out);
        out.sort_by(|a, b| lexi_cmp(a, b));
        out
    }

    /// The graded piece of degree `gamma`, computed once and cached.
    pub fn piece(&self, gamma: &[u32]) -> Result<Arc<GradedPiece>, NcError> {
        if let Some(p) = self.pieces.lock().unwrap().get(gamma) {
            return Ok(p.clone());
        }
        let monomials = self.multidegrees(gamma);
        let words = self.system.normal_words(gamma)?;
        let mut matrix = Vec::with_capacity(monomials.len());
        for n in &monomials {
            let x = self.monomial(n)?;
            let row: Vec<RatFunc> = words
                .iter()
                .map(|w| x.get(w).cloned().unwrap_or_else(RatFunc::zero))
                .collect();
            if x.len() != row.iter().filter(|c| !c.is_zero()).count() {
                return Err(NcError::Internal("monomial expansion not in normal words".into()));
            }
            matrix.push(row);
        }
        // Columns where the monomial matrix is invertible.
        let transposed: Vec<Vec<RatFunc>> = (0..words.len())
            .map(|c| matrix.iter().map(|r| r[c].clone()).collect())
            .collect();
        let cols = if monomials.is_empty() {
            Vec::new()
        } else {
            independent_rows(&transposed, monomials.len())
        };
        let rank = cols.len();
        let inv = if rank == monomials.len() && rank > 0 {
            let square: Vec<Vec<RatFunc>> = matrix
                .iter()
                .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
                .collect();
            inverse(&square)
        } else {
            None
        };
        let p = Arc::new(GradedPiece {
            degree: gamma.to_vec(),
            monomials,
            words,
            matrix,
            rank,
            cols,
            inv,
        });
        self.pieces.lock().unwrap().entry(gamma.to_vec()).or_insert(p.clone());
        Ok(p)
    }

    fn split_by_degree(&self, x: &WordPoly) -> BTreeMap<Vec<u32>, WordPoly> {
        let r = self.system.rank();
        let mut out: BTreeMap<Vec<u32>, WordPoly> = BTreeMap::new();
        for (w, c) in x {
            let mut d = vec![0u32; r];
            for &l in w {
                d[l as usize] += 1;
            }
            out.entry(d).or_default().insert(w.clone(), c.clone());
        }
        out
    }

    /// PBW coordinates of an element given in irreducible words.
    pub fn express_words(&self, x: &WordPoly) -> Result<PBWVector, NcError> {
        let mut out = PBWVector::zero();
        for (gamma, part) in self.split_by_degree(x) {
            let piece = self.piece(&gamma)?;
            if piece.monomials.is_empty() {
                return Err(NcError::NotInUw(format!("no PBW monomials in degree {gamma:?}")));
            }
            let Some(inv) = &piece.inv else {
                return Err(NcError::Internal(format!(
                    "PBW monomials dependent in degree {gamma:?}"
                )));
            };
            let xv = piece.word_coords(&part)?;
            let xs: Vec<&RatFunc> = piece.cols.iter().map(|&c| &xv[c]).collect();
            let mut coeffs = Vec::with_capacity(piece.monomials.len());
            for m in 0..piece.monomials.len() {
                let mut acc = RatFunc::zero();
                for (t, x) in xs.iter().enumerate() {
                    if !x.is_zero() && !inv[t][m].is_zero() {
                        acc = &acc + &(*x * &inv[t][m]);
                    }
                }
                coeffs.push(acc);
            }
            // residual check on every word
            for (c, xc) in xv.iter().enumerate() {
                let mut acc = RatFunc::zero();
                for (m, k) in coeffs.iter().enumerate() {
                    if !k.is_zero() && !piece.matrix[m][c].is_zero() {
                        acc = &acc + &(k * &piece.matrix[m][c]);
                    }
                }
                if &acc != xc {
                    return Err(NcError::NotInUw(format!(
                        "degree {gamma:?} is not spanned by PBW monomials"
                    )));
                }
            }
            for (n, c) in piece.monomials.iter().zip(coeffs) {
                out.add_term(n.clone(), &c);
            }
        }
        Ok(out)
    }

    /// PBW coordinates of an element of `U_±` given as a free-algebra element.
    pub fn express_in_pbw(&self, x: &NCPoly) -> Result<PBWVector, NcError> {
        self.express_words(&self.from_ncpoly(x)?)
    }

    /// Word expansion of a PBW vector.
    pub fn to_words(&self, v: &PBWVector) -> Result<WordPoly, NcError> {
        let mut out = WordPoly::new();
        for (n, c) in v.terms() {
            for (w, d) in self.monomial(n)?.iter() {
                wp_add_term(&mut out, w.clone(), &(c * d));
            }
        }
        Ok(out)
    }

    pub fn pbw_multiply(&self, u: &PBWVector, v: &PBWVector) -> Result<PBWVector, NcError> {
        let x = self.word_mul(&self.to_words(u)?, &self.to_words(v)?)?;
        self.express_words(&x)
    }

    /// `<β_i, β_j>` (0-based).
    pub fn beta_inner(&self, i: usize, j: usize) -> i64 {
        self.system.datum().root_inner(&self.betas[i], &self.betas[j])
    }

    /// `X_{β_i} X_{β_j} - q^{<β_i,β_j>} X_{β_j} X_{β_i}` in PBW coordinates
    /// (0-based `i < j`).
    pub fn ls_relation(&self, i: usize, j: usize) -> Result<PBWVector, NcError> {
        if i >= j || j >= self.len() {
            return Err(NcError::BadPair(i + 1, j + 1));
        }
        let a = self.word_mul(&self.root_vectors[i], &self.root_vectors[j])?;
        let b = self.word_mul(&self.root_vectors[j], &self.root_vectors[i])?;
        let mut x = a;
        let qf = RatFunc::q_pow(self.beta_inner(i, j));
        for (w, c) in b {
            wp_add_term(&mut x, w, &-(&qf * &c));
        }
        self.express_words(&x)
    }

    /// The exponent `m` when the highest term of `X^n X^n'` is
    /// `q^m X^{n+n'}`; `None` if the product has any other highest term.
    pub fn highest_term_exponent(&self, n: &[u32], n2: &[u32]) -> Result<Option<i64>, NcError> {
        let prod = self.pbw_multiply(&PBWVector::unit(n.to_vec()), &PBWVector::unit(n2.to_vec()))?;
        let sum: Vec<u32> = n.iter().zip(n2).map(|(a, b)| a + b).collect();
        Ok(match prod.highest_term() {
            Some((top, c)) if *top == sum => c.as_q_power(),
            _ => None,
        })
    }

    /// Weight form of `β_k`.
    pub fn beta_weight(&self, k: usize) -> Weight {
        self.system.datum().root_to_weight(&self.betas[k])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(name: &str, word: &[usize], sign: Sign) -> PBWContext {
        let sys = Arc::new(RewriteSystem::new(name.parse().unwrap(), 12));
        PBWContext::new(sys, word, sign).unwrap()
    }

    #[test]
    fn a2_root_vectors() {
        let c = ctx("A2", &[0, 1], Sign::Plus);
        assert_eq!(c.betas(), &[RootVec(vec![1, 0]), RootVec(vec![1, 1])]);
        assert_eq!(c.root_vector_poly(0), NCPoly::e(0));
        let c3 = ctx("A2", &[0, 1, 0], Sign::Plus);
        assert_eq!(c3.degree_of(&[0, 0, 1]), vec![0, 1]);
        assert_eq!(
            c3.express_in_pbw(&NCPoly::e(1)).unwrap(),
            PBWVector::unit(vec![0, 0, 1])
        );
    }

    #[test]
    fn express_two_dimensional_piece() {
        let c = ctx("A2", &[0, 1, 0], Sign::Plus);
        let v = c.express_in_pbw(&(&NCPoly::e(0) * &NCPoly::e(1))).unwrap();
        assert!(!v.coeff(&[0, 1, 0]).is_zero());
        assert!(!v.coeff(&[1, 0, 1]).is_zero());
        assert_eq!(v.num_terms(), 2);
        assert!(c.express_in_pbw(&NCPoly::zero()).unwrap().is_zero());
    }

    #[test]
    fn ls_examples() {
        let c = ctx("A2", &[0, 1, 0], Sign::Plus);
        let r = c.ls_relation(0, 2).unwrap();
        assert_eq!(r.num_terms(), 1);
        assert!(!r.coeff(&[0, 1, 0]).is_zero());
        let c2 = ctx("A2", &[0, 1], Sign::Plus);
        assert!(c2.ls_relation(0, 1).unwrap().is_zero());
        let m = ctx("A2", &[0, 1, 0], Sign::Minus);
        let rm = m.ls_relation(0, 2).unwrap();
        assert_eq!(
            rm.terms().map(|(n, _)| n.clone()).collect::<Vec<_>>(),
            vec![vec![0, 1, 0]]
        );
    }

    #[test]
    fn product_with_q_power_leading_term() {
        let c = ctx("A2", &[0, 1, 0], Sign::Plus);
        let p = c
            .pbw_multiply(&PBWVector::unit(vec![1, 0, 0]), &PBWVector::unit(vec![0, 0, 1]))
            .unwrap();
        assert_eq!(p.coeff(&[1, 0, 1]).as_q_power(), Some(-1));
        assert_eq!(p.highest_term().unwrap().0, &vec![1, 0, 1]);
    }

    #[test]
    fn lexi_order() {
        assert_eq!(lexi_cmp(&[5, 0], &[0, 1]), Ordering::Less);
        assert_eq!(lexi_cmp(&[1, 1], &[0, 1]), Ordering::Greater);
    }

    #[test]
    fn not_in_subalgebra() {
        let c = ctx("A2", &[0], Sign::Plus);
        assert!(matches!(c.express_in_pbw(&NCPoly::e(1)), Err(NcError::NotInUw(_))));
    }
}
