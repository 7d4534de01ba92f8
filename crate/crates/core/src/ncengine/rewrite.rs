//! Normal forms in the full algebra and the braid group action.
//!
//! Every element is kept as a combination of normal monomials
//! `F-word * K^k * E-word` with both letter words irreducible. Products are
//! computed by commuting an `E`-word past an `F`-word with the closed formula
//! `E_{a_1}..E_{a_m} F_j = F_j E_{a_1}..E_{a_m}
//!     + sum_{a_p = j} E_{a_1}..E_{a_{p-1}} [K_j; 0] E_{a_{p+1}}..E_{a_m}`
//! and moving `K`'s left through the weight of the prefix.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::qarith::{qfact, LaurentPoly, RatFunc};
use crate::rootsys::CartanDatum;

use super::serre::{SerreTables, WordTerms};
use super::{Letter, NCPoly, NcError};

/// A normal monomial `F-word * K^k * E-word`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Mono {
    pub f: Vec<u8>,
    pub k: Vec<i32>,
    pub e: Vec<u8>,
}

pub(crate) type Elem = BTreeMap<Mono, RatFunc>;

type RawTerm = (Vec<u8>, Vec<i32>, Vec<u8>, RatFunc);

pub(crate) fn elem_add_term(x: &mut Elem, m: Mono, c: &RatFunc) {
    if c.is_zero() {
        return;
    }
    match x.get_mut(&m) {
        Some(v) => {
            *v = &*v + c;
            if v.is_zero() {
                x.remove(&m);
            }
        }
        None => {
            x.insert(m, c.clone());
        }
    }
}

/// The algebra `U_q(g)` of a Cartan datum, truncated at a letter-degree cap.
#[derive(Debug)]
pub struct RewriteSystem {
    datum: CartanDatum,
    cap: usize,
    serre: SerreTables,
    /// `<alpha_i, alpha_j> = d_i c_ij`.
    inner: Vec<Vec<i64>>,
    commute_cache: Mutex<HashMap<(Vec<u8>, u8), Arc<Vec<RawTerm>>>>,
}

impl RewriteSystem {
    pub fn new(datum: CartanDatum, cap: usize) -> Self {
        let r = datum.rank();
        let inner = (0..r)
            .map(|i| (0..r).map(|j| datum.sym_d()[i] * datum.c(i, j)).collect())
            .collect();
        RewriteSystem {
            serre: SerreTables::new(datum.clone()),
            datum,
            cap,
            inner,
            commute_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn degree_cap(&self) -> usize {
        self.cap
    }

    /// `dim U_+` in degree `gamma` (root-lattice coordinates).
    pub fn half_dimension(&self, gamma: &[u32]) -> u64 {
        self.serre.kostant(gamma)
    }

    /// Irreducible words of `U_+` in degree `gamma`, as 0-based letter indices.
    pub fn normal_words(&self, gamma: &[u32]) -> Result<Vec<Vec<u8>>, NcError> {
        Ok(self.serre.table(gamma)?.normal_words.clone())
    }

    /// Normal form of a single-type word (all `E` or all `F` letters).
    pub fn reduce_word(&self, w: &[u8]) -> Result<WordTerms, NcError> {
        self.check_cap(w.len())?;
        self.serre.reduce(w)
    }

    pub(crate) fn check_cap(&self, n: usize) -> Result<(), NcError> {
        if n > self.cap {
            Err(NcError::CapOverflow {
                cap: self.cap,
                needed: n,
            })
        } else {
            Ok(())
        }
    }

    fn pair_k(&self, k: &[i32], beta: &[u32]) -> i64 {
        // sum_i k_i <alpha_i, beta>
        let mut s = 0;
        for (i, &ki) in k.iter().enumerate() {
            if ki == 0 {
                continue;
            }
            for (j, &bj) in beta.iter().enumerate() {
                s += ki as i64 * self.inner[i][j] * bj as i64;
            }
        }
        s
    }

    fn letter_counts(&self, w: &[u8]) -> Vec<u32> {
        self.serre.word_degree(w)
    }

    /// `E-word * F_j` as raw terms `F-part * K^k * E-part`.
    fn commute_e_f(&self, e: &[u8], j: u8) -> Arc<Vec<RawTerm>> {
        let key = (e.to_vec(), j);
        if let Some(v) = self.commute_cache.lock().unwrap().get(&key) {
            return v.clone();
        }
        let r = self.rank();
        let mut out: Vec<RawTerm> = vec![(vec![j], vec![0; r], e.to_vec(), RatFunc::one())];
        let d = self.datum.sym_d()[j as usize];
        let denom = RatFunc::from_laurent(LaurentPoly::from_int_terms(&[(d, 1), (-d, -1)])).inv();
        let mut prefix_deg = vec![0u32; r];
        for (p, &a) in e.iter().enumerate() {
            if a == j {
                let s: i64 = (0..r).map(|t| self.inner[j as usize][t] * prefix_deg[t] as i64).sum();
                let mut rest = e[..p].to_vec();
                rest.extend_from_slice(&e[p + 1..]);
                let mut kp = vec![0; r];
                kp[j as usize] = 1;
                let mut km = vec![0; r];
                km[j as usize] = -1;
                out.push((Vec::new(), kp, rest.clone(), denom.shift(-s)));
                out.push((Vec::new(), km, rest, -denom.shift(s)));
            }
            prefix_deg[a as usize] += 1;
        }
        let v = Arc::new(out);
        self.commute_cache.lock().unwrap().insert(key, v.clone());
        v
    }

    /// Normalizes raw `F * K * E` triples whose letter words may be reducible.
    fn normalize_raw(&self, raw: Vec<RawTerm>) -> Result<Elem, NcError> {
        let mut out = Elem::new();
        for (f, k, e, c) in raw {
            self.check_cap(f.len() + e.len())?;
            let fs = self.serre.reduce(&f)?;
            let es = self.serre.reduce(&e)?;
            for (fw, fc) in &fs {
                let fc = &c * fc;
                for (ew, ec) in &es {
                    let m = Mono {
                        f: fw.clone(),
                        k: k.clone(),
                        e: ew.clone(),
                    };
                    elem_add_term(&mut out, m, &(&fc * ec));
                }
            }
        }
        Ok(out)
    }

    fn mono_mul(&self, a: &Mono, b: &Mono) -> Result<Elem, NcError> {
        self.check_cap(a.f.len() + a.e.len() + b.f.len() + b.e.len())?;
        let r = self.rank();
        // e(a) * f(b) as raw (fa, ka, ea) triples
        let mut cur: Vec<RawTerm> = vec![(Vec::new(), vec![0; r], a.e.clone(), RatFunc::one())];
        for &j in &b.f {
            let mut next = Vec::new();
            for (fa, ka, ea, c) in cur {
                let mut beta_j = vec![0u32; r];
                beta_j[j as usize] = 1;
                let shift = -self.pair_k(&ka, &beta_j);
                for (f2, k2, e2, c2) in self.commute_e_f(&ea, j).iter() {
                    let mut f = fa.clone();
                    f.extend_from_slice(f2);
                    let k: Vec<i32> = ka.iter().zip(k2).map(|(x, y)| x + y).collect();
                    let coef = if f2.is_empty() { &c * c2 } else { (&c * c2).shift(shift) };
                    next.push((f, k, e2.clone(), coef));
                }
            }
            cur = next;
        }
        let mut raw = Vec::with_capacity(cur.len());
        for (fa, ka, ea, c) in cur {
            let s = -self.pair_k(&a.k, &self.letter_counts(&fa)) - self.pair_k(&b.k, &self.letter_counts(&ea));
            let mut f = a.f.clone();
            f.extend_from_slice(&fa);
            let mut e = ea;
            e.extend_from_slice(&b.e);
            let k: Vec<i32> = a.k.iter().zip(&ka).zip(&b.k).map(|((x, y), z)| x + y + z).collect();
            raw.push((f, k, e, c.shift(s)));
        }
        self.normalize_raw(raw)
    }

    pub(crate) fn mul(&self, a: &Elem, b: &Elem) -> Result<Elem, NcError> {
        let mut out = Elem::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                let c = ca * cb;
                for (m, v) in self.mono_mul(ma, mb)? {
                    elem_add_term(&mut out, m, &(&c * &v));
                }
            }
        }
        Ok(out)
    }

    pub(crate) fn one_elem(&self) -> Elem {
        let mut x = Elem::new();
        x.insert(
            Mono {
                f: Vec::new(),
                k: vec![0; self.rank()],
                e: Vec::new(),
            },
            RatFunc::one(),
        );
        x
    }

    fn letter_elem(&self, l: Letter) -> Result<Elem, NcError> {
        let r = self.rank();
        if l.index() >= r {
            return Err(NcError::BadIndex(l.index() + 1));
        }
        let mut m = Mono {
            f: Vec::new(),
            k: vec![0; r],
            e: Vec::new(),
        };
        match l {
            Letter::F(i) => m.f.push(i),
            Letter::E(i) => m.e.push(i),
            Letter::K(i) => m.k[i as usize] = 1,
            Letter::KInv(i) => m.k[i as usize] = -1,
        }
        let mut x = Elem::new();
        x.insert(m, RatFunc::one());
        Ok(x)
    }

    pub(crate) fn to_elem(&self, x: &NCPoly) -> Result<Elem, NcError> {
        self.check_cap(x.max_letter_degree())?;
        let mut out = Elem::new();
        for (w, c) in x.terms() {
            let mut acc = self.one_elem();
            for &l in w {
                acc = self.mul(&acc, &self.letter_elem(l)?)?;
            }
            for (m, v) in acc {
                elem_add_term(&mut out, m, &(c * &v));
            }
        }
        Ok(out)
    }

    pub(crate) fn from_elem(&self, x: &Elem) -> NCPoly {
        NCPoly::from_terms(x.iter().map(|(m, c)| (mono_word(m), c.clone())))
    }

    /// Canonical representative modulo the defining relations: words
    /// `F-block K-block E-block` with irreducible letter blocks.
    pub fn normal_form(&self, x: &NCPoly) -> Result<NCPoly, NcError> {
        Ok(self.from_elem(&self.to_elem(x)?))
    }

    /// Product in the algebra, returned in normal form.
    pub fn multiply(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly, NcError> {
        let x = self.mul(&self.to_elem(a)?, &self.to_elem(b)?)?;
        Ok(self.from_elem(&x))
    }

    /// `E_i^{(n)}`-style divided power coefficient `1/[n]_{q_i}!`.
    fn inv_fact(&self, n: u32, i: usize) -> RatFunc {
        RatFunc::from_laurent(qfact(n, self.datum.sym_d()[i] as u32)).inv()
    }

    /// Image of a generator under `T_i`.
    fn braid_generator(&self, i: usize, l: Letter) -> Result<Elem, NcError> {
        let r = self.rank();
        let j = l.index();
        let di = self.datum.sym_d()[i];
        let mut out = Elem::new();
        match l {
            Letter::E(_) | Letter::F(_) if i == j => {
                let mut k = vec![0; r];
                let m = if let Letter::E(_) = l {
                    k[i] = 1;
                    Mono {
                        f: vec![i as u8],
                        k,
                        e: Vec::new(),
                    }
                } else {
                    k[i] = -1;
                    Mono {
                        f: Vec::new(),
                        k,
                        e: vec![i as u8],
                    }
                };
                out.insert(m, RatFunc::from_int(-1));
            }
            Letter::E(_) | Letter::F(_) => {
                let n = (-self.datum.c(i, j)) as u32;
                let is_e = matches!(l, Letter::E(_));
                let mut raw = Vec::new();
                for s in 0..=n {
                    // E: (-q_i)^{-s} E_i^{(n-s)} E_j E_i^{(s)}
                    // F: (-q_i)^{s}  F_i^{(s)} F_j F_i^{(n-s)}
                    let (left, right) = if is_e { (n - s, s) } else { (s, n - s) };
                    let mut w = vec![i as u8; left as usize];
                    w.push(j as u8);
                    w.extend(std::iter::repeat(i as u8).take(right as usize));
                    let sign = if s % 2 == 1 { -1 } else { 1 };
                    let exp = if is_e { -di * s as i64 } else { di * s as i64 };
                    let c = (&self.inv_fact(n - s, i) * &self.inv_fact(s, i))
                        .shift(exp)
                        .scale_int(sign);
                    if is_e {
                        raw.push((Vec::new(), vec![0; r], w, c));
                    } else {
                        raw.push((w, vec![0; r], Vec::new(), c));
                    }
                }
                out = self.normalize_raw(raw)?;
            }
            Letter::K(_) | Letter::KInv(_) => {
                let sign = if matches!(l, Letter::K(_)) { 1 } else { -1 };
                let mut k = vec![0; r];
                k[j] = sign;
                k[i] -= sign * self.datum.c(i, j) as i32;
                out.insert(
                    Mono {
                        f: Vec::new(),
                        k,
                        e: Vec::new(),
                    },
                    RatFunc::one(),
                );
            }
        }
        Ok(out)
    }

    fn kpow_elem(&self, k: Vec<i32>) -> Elem {
        let mut x = Elem::new();
        x.insert(
            Mono {
                f: Vec::new(),
                k,
                e: Vec::new(),
            },
            RatFunc::one(),
        );
        x
    }

    pub(crate) fn braid_elem(&self, i: usize, x: &Elem) -> Result<Elem, NcError> {
        if i >= self.rank() {
            return Err(NcError::BadIndex(i + 1));
        }
        let r = self.rank();
        let images: Vec<(Elem, Elem)> = (0..r)
            .map(|j| {
                Ok((
                    self.braid_generator(i, Letter::E(j as u8))?,
                    self.braid_generator(i, Letter::F(j as u8))?,
                ))
            })
            .collect::<Result<_, NcError>>()?;
        let mut out = Elem::new();
        for (m, c) in x {
            let mut acc = self.one_elem();
            for &j in &m.f {
                acc = self.mul(&acc, &images[j as usize].1)?;
            }
            let mut k = m.k.clone();
            let s: i32 = (0..r).map(|j| self.datum.c(i, j) as i32 * m.k[j]).sum();
            k[i] -= s;
            acc = self.mul(&acc, &self.kpow_elem(k))?;
            for &j in &m.e {
                acc = self.mul(&acc, &images[j as usize].0)?;
            }
            for (mm, v) in acc {
                elem_add_term(&mut out, mm, &(c * &v));
            }
        }
        Ok(out)
    }

    /// Lusztig's automorphism `T_i` (0-based `i`), result in normal form.
    pub fn braid_t(&self, i: usize, x: &NCPoly) -> Result<NCPoly, NcError> {
        Ok(self.from_elem(&self.braid_elem(i, &self.to_elem(x)?)?))
    }

    /// `T_{i_1} ... T_{i_k}(x)`, innermost (rightmost) first.
    pub fn braid_word(&self, word: &[usize], x: &NCPoly) -> Result<NCPoly, NcError> {
        let mut y = self.to_elem(x)?;
        for &i in word.iter().rev() {
            y = self.braid_elem(i, &y)?;
        }
        Ok(self.from_elem(&y))
    }
}

pub(crate) fn mono_word(m: &Mono) -> Vec<Letter> {
    let mut w: Vec<Letter> = m.f.iter().map(|&i| Letter::F(i)).collect();
    for (i, &k) in m.k.iter().enumerate() {
        let l = if k > 0 {
            Letter::K(i as u8)
        } else {
            Letter::KInv(i as u8)
        };
        w.extend(std::iter::repeat(l).take(k.unsigned_abs() as usize));
    }
    w.extend(m.e.iter().map(|&i| Letter::E(i)));
    w
}
