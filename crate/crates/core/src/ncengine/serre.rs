//! Normal words of `U_+` (and, by relabelling, `U_-`).
//!
//! In each root-lattice degree the two-sided ideal generated by the quantum
//! Serre relations is a finite-dimensional subspace of the span of words.
//! We keep it in fully reduced echelon form with the lexicographically
//! largest word of each row as pivot. Pivot words are exactly the reducible
//! words; the echelon rows are the rewrite rules `pivot -> rest`, and the
//! result is confluent in that degree by construction.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::qarith::{qbinom, RatFunc};
use crate::rootsys::CartanDatum;

use super::NcError;

pub(crate) type WordTerms = Vec<(Vec<u8>, RatFunc)>;

#[derive(Debug)]
pub(crate) struct DegreeTable {
    /// Irreducible words, in increasing lexicographic order.
    pub normal_words: Vec<Vec<u8>>,
    /// `pivot word -> its normal form` (a combination of normal words).
    pub reductions: HashMap<Vec<u8>, WordTerms>,
}

#[derive(Debug)]
pub(crate) struct SerreTables {
    datum: CartanDatum,
    tables: Mutex<HashMap<Vec<u32>, Arc<DegreeTable>>>,
    kostant: Mutex<HashMap<Vec<u32>, u64>>,
}

impl SerreTables {
    pub fn new(datum: CartanDatum) -> Self {
        SerreTables {
            datum,
            tables: Mutex::new(HashMap::new()),
            kostant: Mutex::new(HashMap::new()),
        }
    }

    pub fn word_degree(&self, w: &[u8]) -> Vec<u32> {
        let mut d = vec![0u32; self.datum.rank()];
        for &l in w {
            d[l as usize] += 1;
        }
        d
    }

    /// Normal form of a word in the letters `E_1..E_r` (or `F_1..F_r`).
    pub fn reduce(&self, w: &[u8]) -> Result<WordTerms, NcError> {
        let t = self.table(&self.word_degree(w))?;
        Ok(match t.reductions.get(w) {
            Some(r) => r.clone(),
            None => vec![(w.to_vec(), RatFunc::one())],
        })
    }

    /// Kostant's partition function: the number of ways to write `gamma` as
    /// a sum of positive roots, which is `dim U_+` in that degree.
    pub fn kostant(&self, gamma: &[u32]) -> u64 {
        if let Some(v) = self.kostant.lock().unwrap().get(gamma) {
            return *v;
        }
        let roots: Vec<Vec<u32>> = self
            .datum
            .positive_roots()
            .iter()
            .map(|r| r.coords().iter().map(|&x| x as u32).collect())
            .collect();
        let v = count_partitions(gamma, &roots, 0, &mut HashMap::new());
        self.kostant.lock().unwrap().insert(gamma.to_vec(), v);
        v
    }

    pub fn table(&self, gamma: &[u32]) -> Result<Arc<DegreeTable>, NcError> {
        if let Some(t) = self.tables.lock().unwrap().get(gamma) {
            return Ok(t.clone());
        }
        let t = Arc::new(self.build(gamma)?);
        self.tables.lock().unwrap().entry(gamma.to_vec()).or_insert(t.clone());
        Ok(t)
    }

    fn build(&self, gamma: &[u32]) -> Result<DegreeTable, NcError> {
        let mut words = all_words(gamma);
        words.sort_by(|a, b| b.cmp(a));
        let index: HashMap<&[u8], usize> = words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
        let target = words.len() as u64 - self.kostant(gamma);
        let mut ech = Echelon::default();
        let rank = self.datum.rank();

        'fill: {
            if target == 0 {
                break 'fill;
            }
            for i in 0..rank {
                if gamma[i] == 0 {
                    continue;
                }
                let mut lower = gamma.to_vec();
                lower[i] -= 1;
                let low = self.table(&lower)?;
                let mut pivots: Vec<&Vec<u8>> = low.reductions.keys().collect();
                pivots.sort();
                for prefix in [true, false] {
                    for p in &pivots {
                        let attach = |w: &[u8]| -> usize {
                            let mut x = Vec::with_capacity(w.len() + 1);
                            if prefix {
                                x.push(i as u8);
                                x.extend_from_slice(w);
                            } else {
                                x.extend_from_slice(w);
                                x.push(i as u8);
                            }
                            index[x.as_slice()]
                        };
                        let mut row = BTreeMap::new();
                        row.insert(attach(p), RatFunc::one());
                        for (w, c) in &low.reductions[*p] {
                            row.insert(attach(w), -c);
                        }
                        ech.insert(row);
                        if ech.rank() as u64 == target {
                            break 'fill;
                        }
                    }
                }
            }
            for (w, c) in self.serre_relations_of_degree(gamma)? {
                let mut row = BTreeMap::new();
                for (word, coef) in w.iter().zip(c) {
                    row.insert(index[word.as_slice()], coef);
                }
                ech.insert(row);
            }
        }
        if ech.rank() as u64 != target {
            return Err(NcError::Internal(format!(
                "Serre ideal in degree {gamma:?} has rank {} but {} was expected",
                ech.rank(),
                target
            )));
        }
        let mut reductions = HashMap::new();
        let mut is_pivot = vec![false; words.len()];
        for (p, row) in &ech.rows {
            is_pivot[*p] = true;
            let mut terms: WordTerms = row
                .iter()
                .filter(|(k, _)| *k != p)
                .map(|(k, c)| (words[*k].clone(), -c))
                .collect();
            terms.sort_by(|a, b| a.0.cmp(&b.0));
            reductions.insert(words[*p].clone(), terms);
        }
        let mut normal_words: Vec<Vec<u8>> = words
            .iter()
            .enumerate()
            .filter(|(i, _)| !is_pivot[*i])
            .map(|(_, w)| w.clone())
            .collect();
        normal_words.sort();
        Ok(DegreeTable {
            normal_words,
            reductions,
        })
    }

    /// Serre relations whose degree is exactly `gamma`, as (words, coefficients).
    #[allow(clippy::type_complexity)]
    fn serre_relations_of_degree(&self, gamma: &[u32]) -> Result<Vec<(Vec<Vec<u8>>, Vec<RatFunc>)>, NcError> {
        let mut out = Vec::new();
        let r = self.datum.rank();
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                let n = (1 - self.datum.c(i, j)) as u32;
                let mut deg = vec![0u32; r];
                deg[i] = n;
                deg[j] = 1;
                if deg != gamma {
                    continue;
                }
                let (words, coeffs) = serre_relation(i, j, n, self.datum.sym_d()[i] as u32)?;
                out.push((words, coeffs));
            }
        }
        Ok(out)
    }
}

/// `sum_k (-1)^k [n choose k]_{q_i} E_i^k E_j E_i^{n-k}`.
pub(crate) fn serre_relation(i: usize, j: usize, n: u32, d: u32) -> Result<(Vec<Vec<u8>>, Vec<RatFunc>), NcError> {
    let mut words = Vec::new();
    let mut coeffs = Vec::new();
    for k in 0..=n {
        let mut w = vec![i as u8; k as usize];
        w.push(j as u8);
        w.extend(std::iter::repeat(i as u8).take((n - k) as usize));
        let b = qbinom(n, k, d).map_err(|e| NcError::Internal(e.to_string()))?;
        let c = RatFunc::from_laurent(b);
        words.push(w);
        coeffs.push(if k % 2 == 1 { -c } else { c });
    }
    Ok((words, coeffs))
}

fn all_words(gamma: &[u32]) -> Vec<Vec<u8>> {
    fn rec(rem: &mut Vec<u32>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if rem.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..rem.len() {
            if rem[i] > 0 {
                rem[i] -= 1;
                cur.push(i as u8);
                rec(rem, cur, out);
                cur.pop();
                rem[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut gamma.to_vec(), &mut Vec::new(), &mut out);
    out
}

fn count_partitions(gamma: &[u32], roots: &[Vec<u32>], from: usize, memo: &mut HashMap<(Vec<u32>, usize), u64>) -> u64 {
    if gamma.iter().all(|&x| x == 0) {
        return 1;
    }
    if from == roots.len() {
        return 0;
    }
    let key = (gamma.to_vec(), from);
    if let Some(v) = memo.get(&key) {
        return *v;
    }
    let mut total = 0;
    let mut g = gamma.to_vec();
    loop {
        total += count_partitions(&g, roots, from + 1, memo);
        if g.iter().zip(&roots[from]).any(|(a, b)| a < b) {
            break;
        }
        for (a, b) in g.iter_mut().zip(&roots[from]) {
            *a -= b;
        }
    }
    memo.insert(key, total);
    total
}

/// Sparse reduced row echelon form; rows keyed by pivot column, pivot
/// coefficient 1, no row contains another row's pivot.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<usize, BTreeMap<usize, RatFunc>>,
}

impl Echelon {
    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, mut row: BTreeMap<usize, RatFunc>) {
        row.retain(|_, c| !c.is_zero());
        let hits: Vec<usize> = row.keys().filter(|k| self.rows.contains_key(k)).copied().collect();
        for p in hits {
            let Some(f) = row.get(&p).cloned() else { continue };
            axpy(&mut row, &self.rows[&p], &f);
        }
        let Some((&p, lead)) = row.iter().next() else { return };
        let inv = lead.inv();
        for c in row.values_mut() {
            *c = &*c * &inv;
        }
        for other in self.rows.values_mut() {
            if let Some(f) = other.get(&p).cloned() {
                axpy(other, &row, &f);
            }
        }
        self.rows.insert(p, row);
    }
}

/// `row -= f * pivot_row`.
fn axpy(row: &mut BTreeMap<usize, RatFunc>, pivot_row: &BTreeMap<usize, RatFunc>, f: &RatFunc) {
    for (k, c) in pivot_row {
        let v = f * c;
        match row.get_mut(k) {
            Some(x) => {
                *x = &*x - &v;
                if x.is_zero() {
                    row.remove(k);
                }
            }
            None => {
                row.insert(*k, -v);
            }
        }
    }
}
