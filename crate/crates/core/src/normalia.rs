//! Normal, central and prime elements of `U^w_±`, and the decomposition of
//! the PBW basis over the subalgebra they generate.
//!
//! Normality is searched in q-commuting form only: `u X_j = q^{c_j} X_j u`
//! for every root vector. Elements of degree `(1-w)λ` with
//! `c_j = <(w+1)λ, β_j>` are the expected ones; the letter counts of the
//! degree are used for both signs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::lattices::{kappa_lattice, split_pm};
use crate::ncengine::{lexi_cmp, NcError, PBWContext, PBWVector, Sign};
use crate::qarith::linalg::{kernel_basis, rank, rref};
use crate::qarith::RatFunc;
use crate::rootsys::{CartanDatum, Weight, WeylElement};

fn element(ctx: &PBWContext) -> WeylElement {
    ctx.system()
        .datum()
        .reduced_element(ctx.word())
        .expect("context words are reduced")
}

fn height(gamma: &[u32]) -> u32 {
    gamma.iter().sum()
}

fn weight_json(w: &Weight) -> Value {
    json!(w.0)
}

/// Letter counts of `(1-w)λ`. `None` if some coordinate is negative.
pub fn normal_degree(datum: &CartanDatum, w: &WeylElement, lambda: &Weight) -> Option<Vec<u32>> {
    let r = datum.weight_to_root(&lambda.sub(&w.apply(lambda)))?;
    r.0.iter().map(|&c| u32::try_from(c).ok()).collect()
}

/// `c_j = <(w+1)η, β_j>` for every root vector of the context.
pub fn normal_exponents(ctx: &PBWContext, eta: &Weight) -> Vec<i64> {
    let datum = ctx.system().datum();
    let v = element(ctx).apply(eta).add(eta);
    ctx.betas().iter().map(|b| datum.weight_root_inner(&v, b)).collect()
}

/// Dominant `λ ∈ P_{S(w)}` grouped by the degree `(1-w)λ`, for degrees of
/// height at most `max_height`.
pub fn predicted_normal_degrees(
    datum: &CartanDatum,
    w: &WeylElement,
    max_height: u32,
) -> BTreeMap<Vec<u32>, Vec<Weight>> {
    let r = datum.rank();
    let (support, _) = datum.support_sets(w);
    let support: Vec<usize> = support.into_iter().collect();
    let steps: Vec<Vec<u32>> = support
        .iter()
        .map(|&i| normal_degree(datum, w, &Weight::fundamental(r, i)).expect("(1-w)ω_i is a positive root combination"))
        .collect();
    let mut out: BTreeMap<Vec<u32>, Vec<Weight>> = BTreeMap::new();
    fn rec(
        k: usize,
        support: &[usize],
        steps: &[Vec<u32>],
        lam: &mut Weight,
        deg: &mut Vec<u32>,
        max_height: u32,
        out: &mut BTreeMap<Vec<u32>, Vec<Weight>>,
    ) {
        if k == support.len() {
            out.entry(deg.clone()).or_default().push(lam.clone());
            return;
        }
        let mut n = 0;
        loop {
            rec(k + 1, support, steps, lam, deg, max_height, out);
            if height(deg) + height(&steps[k]) > max_height {
                break;
            }
            for (d, s) in deg.iter_mut().zip(&steps[k]) {
                *d += s;
            }
            lam.0[support[k]] += 1;
            n += 1;
        }
        for (d, s) in deg.iter_mut().zip(&steps[k]) {
            *d -= s * n;
        }
        lam.0[support[k]] = 0;
    }
    rec(
        0,
        &support,
        &steps,
        &mut Weight::zero(r),
        &mut vec![0; r],
        max_height,
        &mut out,
    );
    for v in out.values_mut() {
        v.sort();
    }
    out
}

/// Every degree of height at most `max_height` in which the context has
/// PBW monomials, ordered by height and then coordinates.
pub fn degrees_up_to(ctx: &PBWContext, max_height: u32) -> Vec<Vec<u32>> {
    let heights: Vec<u32> = ctx.betas().iter().map(|b| b.height() as u32).collect();
    let mut found = BTreeSet::new();
    fn rec(
        k: usize,
        heights: &[u32],
        budget: u32,
        n: &mut Vec<u32>,
        ctx: &PBWContext,
        found: &mut BTreeSet<(u32, Vec<u32>)>,
    ) {
        if k == heights.len() {
            let d = ctx.degree_of(n);
            found.insert((height(&d), d));
            return;
        }
        let mut used = 0;
        loop {
            rec(k + 1, heights, budget - used, n, ctx, found);
            if used + heights[k] > budget {
                break;
            }
            used += heights[k];
            n[k] += 1;
        }
        n[k] = 0;
    }
    rec(0, &heights, max_height, &mut vec![0; ctx.len()], ctx, &mut found);
    found.into_iter().map(|(_, d)| d).collect()
}

/// A q-commuting subspace of one degree with a fixed exponent vector.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalComponent {
    /// `c_j` with `u X_j = q^{c_j} X_j u`.
    pub exponents: Vec<i64>,
    /// Reduced echelon basis; a single vector has lowest PBW coefficient 1.
    pub basis: Vec<PBWVector>,
    /// The dominant weight whose expected exponents match, if any.
    pub eta: Option<Weight>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalFinding {
    pub degree: Vec<u32>,
    pub components: Vec<NormalComponent>,
    /// Dominant `λ` with `(1-w)λ = degree`.
    pub predicted: Vec<Weight>,
    /// Half-width of the swept exponent window.
    pub bound: i64,
}

impl NormalFinding {
    pub fn dimension(&self) -> usize {
        self.components.iter().map(|c| c.basis.len()).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "dimension": self.dimension(),
            "bound": self.bound,
            "predicted": self.predicted.iter().map(weight_json).collect::<Vec<_>>(),
            "components": self.components.iter().map(|c| json!({
                "exponents": c.exponents,
                "eta": c.eta.as_ref().map(weight_json),
                "basis": c.basis.iter().map(PBWVector::to_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

enum Candidates<'a> {
    /// `[-bound, bound]` together with the exponents forced by highest terms.
    Sweep(i64),
    Fixed(&'a [i64]),
}

/// `X^m X_j` and `X_j X^m` for every monomial of a degree.
struct Products {
    right: Vec<PBWVector>,
    left: Vec<PBWVector>,
}

impl Products {
    fn new(ctx: &PBWContext, monos: &[Vec<u32>], j: usize) -> Result<Self, NcError> {
        let mut e = vec![0u32; ctx.len()];
        e[j] = 1;
        let xj = PBWVector::unit(e);
        let mut right = Vec::with_capacity(monos.len());
        let mut left = Vec::with_capacity(monos.len());
        for m in monos {
            let xm = PBWVector::unit(m.clone());
            right.push(ctx.pbw_multiply(&xm, &xj)?);
            left.push(ctx.pbw_multiply(&xj, &xm)?);
        }
        Ok(Products { right, left })
    }

    /// If `u` has highest term `X^m`, both `u X_j` and `X_j u` have highest
    /// term at `m + e_j`, so `c_j` is the difference of the two q-powers there.
    fn forced(&self, monos: &[Vec<u32>], j: usize) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for (k, m) in monos.iter().enumerate() {
            let mut top = m.clone();
            top[j] += 1;
            let a = self.right[k].coeff(&top).as_q_power();
            let b = self.left[k].coeff(&top).as_q_power();
            if let (Some(a), Some(b)) = (a, b) {
                out.insert(a - b);
            }
        }
        out
    }

    fn kernel(&self, basis: &[Vec<RatFunc>], c: i64) -> Vec<Vec<RatFunc>> {
        let qc = RatFunc::q_pow(c);
        let images: Vec<PBWVector> = basis
            .iter()
            .map(|v| {
                let mut acc = PBWVector::zero();
                for (k, a) in v.iter().enumerate() {
                    if !a.is_zero() {
                        acc = acc.add(&self.right[k].scale(a)).sub(&self.left[k].scale(&(a * &qc)));
                    }
                }
                acc
            })
            .collect();
        let keys: BTreeSet<&Vec<u32>> = images.iter().flat_map(|v| v.terms().map(|(n, _)| n)).collect();
        if keys.is_empty() {
            return basis.to_vec();
        }
        let mat: Vec<Vec<RatFunc>> = keys
            .iter()
            .map(|n| images.iter().map(|v| v.coeff(n)).collect())
            .collect();
        kernel_basis(&mat, basis.len())
            .into_iter()
            .map(|y| {
                let mut out = vec![RatFunc::zero(); basis[0].len()];
                for (yk, v) in y.iter().zip(basis) {
                    if yk.is_zero() {
                        continue;
                    }
                    for (o, a) in out.iter_mut().zip(v) {
                        if !a.is_zero() {
                            *o = &*o + &(yk * a);
                        }
                    }
                }
                out
            })
            .collect()
    }
}

fn search(ctx: &PBWContext, gamma: &[u32], cands: Candidates<'_>) -> Result<Vec<(Vec<i64>, Vec<PBWVector>)>, NcError> {
    let monos = ctx.multidegrees(gamma);
    let n = monos.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let ident: Vec<Vec<RatFunc>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| if i == k { RatFunc::one() } else { RatFunc::zero() })
                .collect()
        })
        .collect();
    let mut branches = vec![(Vec::new(), ident)];
    for j in 0..ctx.len() {
        if branches.is_empty() {
            break;
        }
        let prods = Products::new(ctx, &monos, j)?;
        let set: BTreeSet<i64> = match &cands {
            Candidates::Sweep(b) => {
                let mut s = prods.forced(&monos, j);
                s.extend(-b..=*b);
                s
            }
            Candidates::Fixed(c) => BTreeSet::from([c[j]]),
        };
        let mut next = Vec::new();
        for (ex, basis) in branches {
            for &c in &set {
                let k = prods.kernel(&basis, c);
                if !k.is_empty() {
                    let mut e: Vec<i64> = ex.clone();
                    e.push(c);
                    next.push((e, k));
                }
            }
        }
        branches = next;
    }
    Ok(branches
        .into_iter()
        .map(|(ex, mut basis)| {
            let pivots = rref(&mut basis, n);
            basis.truncate(pivots.len());
            let vecs = basis
                .into_iter()
                .map(|row| PBWVector::from_coords(monos.iter().cloned().zip(row)))
                .collect();
            (ex, vecs)
        })
        .collect())
}

/// All q-commuting elements of degree `gamma`, grouped by exponent vector.
///
/// The swept window is `|c_j| <= max expected |c_j| + margin`; exponents
/// forced by highest terms are always added, so no component is missed.
pub fn find_normal(ctx: &PBWContext, gamma: &[u32], margin: i64) -> Result<NormalFinding, NcError> {
    let datum = ctx.system().datum();
    let w = element(ctx);
    let predicted = predicted_normal_degrees(datum, &w, height(gamma))
        .remove(gamma)
        .unwrap_or_default();
    let expected: Vec<(Weight, Vec<i64>)> = predicted
        .iter()
        .map(|eta| (eta.clone(), normal_exponents(ctx, eta)))
        .collect();
    let bound = expected
        .iter()
        .flat_map(|(_, c)| c.iter().map(|x| x.abs()))
        .max()
        .unwrap_or(0)
        + margin;
    let components = search(ctx, gamma, Candidates::Sweep(bound))?
        .into_iter()
        .map(|(exponents, basis)| {
            let eta = expected.iter().find(|(_, c)| *c == exponents).map(|(e, _)| e.clone());
            NormalComponent { exponents, basis, eta }
        })
        .collect();
    Ok(NormalFinding {
        degree: gamma.to_vec(),
        components,
        predicted,
        bound,
    })
}

/// The normal element of degree `(1-w)λ` with the exponents of `λ`,
/// scaled so that its lowest PBW coefficient is 1.
pub fn d_element(ctx: &PBWContext, lambda: &Weight) -> Result<PBWVector, NcError> {
    let datum = ctx.system().datum();
    let w = element(ctx);
    let gamma = normal_degree(datum, &w, lambda)
        .ok_or_else(|| NcError::Internal(format!("weight {lambda} has no degree in this context")))?;
    let exps = normal_exponents(ctx, lambda);
    let found = search(ctx, &gamma, Candidates::Fixed(&exps))?;
    match found.as_slice() {
        [(_, basis)] if basis.len() == 1 => Ok(basis[0].clone()),
        _ => Err(NcError::Internal(format!(
            "expected a unique normal element for {lambda}, found dimension {}",
            found.iter().map(|(_, b)| b.len()).sum::<usize>()
        ))),
    }
}

fn q_ratio(a: &PBWVector, b: &PBWVector) -> Option<i64> {
    let (n, c) = b.terms().next()?;
    let r = &a.coeff(n) / c;
    let e = r.as_q_power()?;
    (a.sub(&b.scale(&r)).is_zero()).then_some(e)
}

fn proportional(a: &PBWVector, b: &PBWVector) -> bool {
    match b.terms().next() {
        Some((n, c)) => {
            let r = &a.coeff(n) / c;
            !r.is_zero() && a.sub(&b.scale(&r)).is_zero()
        }
        None => false,
    }
}

/// Multidegree `(λ_{i_1}, ..., λ_{i_l})` expected as the highest term of `d_λ`.
pub fn lead_multidegree(word: &[usize], lambda: &Weight) -> Vec<u32> {
    word.iter().map(|&i| lambda.0[i] as u32).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeCheck {
    pub finding: NormalFinding,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeadCheck {
    pub lambda: Weight,
    pub expected: Vec<u32>,
    pub observed: Option<Vec<u32>>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommutationCheck {
    pub i: usize,
    pub j: usize,
    pub expected: i64,
    pub observed: Option<i64>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub word: Vec<usize>,
    pub sign: Sign,
    pub max_height: u32,
    pub margin: i64,
    pub degrees: Vec<DegreeCheck>,
    /// `(i, d_{ω_i})` for `i ∈ S(w)`.
    pub primes: Vec<(usize, PBWVector)>,
    /// `(λ, d_λ ∝ Π d_{ω_i}^{λ_i})`.
    pub products: Vec<(Weight, bool)>,
    pub commutations: Vec<CommutationCheck>,
    pub leads: Vec<LeadCheck>,
}

impl ClassificationReport {
    pub fn ok(&self) -> bool {
        self.degrees.iter().all(|d| d.ok)
            && self.products.iter().all(|p| p.1)
            && self.commutations.iter().all(|c| c.ok)
            && self.leads.iter().all(|l| l.ok)
    }

    /// Components whose exponents match no expected weight.
    pub fn unexpected(&self) -> usize {
        self.degrees
            .iter()
            .flat_map(|d| &d.finding.components)
            .filter(|c| c.eta.is_none())
            .count()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "word": self.word.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "sign": self.sign.symbol(),
            "height": self.max_height,
            "margin": self.margin,
            "assumption": "normal elements are searched in q-commuting form",
            "ok": self.ok(),
            "degrees": self.degrees.iter().map(|d| {
                let mut v = d.finding.to_json();
                v["ok"] = json!(d.ok);
                v
            }).collect::<Vec<_>>(),
            "primes": self.primes.iter().map(|(i, d)| json!({"index": i + 1, "element": d.to_json()})).collect::<Vec<_>>(),
            "products": self.products.iter().map(|(l, ok)| json!({"lambda": weight_json(l), "ok": ok})).collect::<Vec<_>>(),
            "commutations": self.commutations.iter().map(|c| json!({
                "i": c.i + 1, "j": c.j + 1, "expected": c.expected, "observed": c.observed, "ok": c.ok,
            })).collect::<Vec<_>>(),
            "leads": self.leads.iter().map(lead_json).collect::<Vec<_>>(),
        })
    }
}

fn lead_json(l: &LeadCheck) -> Value {
    json!({"lambda": weight_json(&l.lambda), "expected": l.expected, "observed": l.observed, "ok": l.ok})
}

/// Caches `d_λ` by weight.
struct DCache<'a> {
    ctx: &'a PBWContext,
    map: HashMap<Weight, PBWVector>,
}

impl<'a> DCache<'a> {
    fn new(ctx: &'a PBWContext) -> Self {
        DCache {
            ctx,
            map: HashMap::new(),
        }
    }

    fn get(&mut self, lambda: &Weight) -> Result<PBWVector, NcError> {
        if let Some(v) = self.map.get(lambda) {
            return Ok(v.clone());
        }
        let v = if lambda.is_zero() {
            PBWVector::unit(vec![0; self.ctx.len()])
        } else {
            d_element(self.ctx, lambda)?
        };
        self.map.insert(lambda.clone(), v.clone());
        Ok(v)
    }
}

fn lead_check(ctx: &PBWContext, lambda: &Weight, d: &PBWVector) -> LeadCheck {
    let expected = lead_multidegree(ctx.word(), lambda);
    let observed = d.highest_term().map(|(n, _)| n.clone());
    let ok = observed.as_ref() == Some(&expected);
    LeadCheck {
        lambda: lambda.clone(),
        expected,
        observed,
        ok,
    }
}

/// Runs the normal-element search in every degree up to `max_height` and
/// compares with the expected degrees, exponents, prime generators,
/// products and commutation exponents.
pub fn classify_normals(ctx: &PBWContext, max_height: u32, margin: i64) -> Result<ClassificationReport, NcError> {
    let datum = ctx.system().datum();
    let w = element(ctx);
    let r = datum.rank();
    let mut degrees = Vec::new();
    for gamma in degrees_up_to(ctx, max_height) {
        let finding = find_normal(ctx, &gamma, margin)?;
        let matched: BTreeSet<&Weight> = finding.components.iter().filter_map(|c| c.eta.as_ref()).collect();
        let ok = finding.components.iter().all(|c| c.basis.len() == 1 && c.eta.is_some())
            && finding.components.len() == finding.predicted.len()
            && matched.len() == finding.predicted.len();
        degrees.push(DegreeCheck { finding, ok });
    }

    let mut cache = DCache::new(ctx);
    let (support, _) = datum.support_sets(&w);
    let mut primes = Vec::new();
    for &i in &support {
        primes.push((i, cache.get(&Weight::fundamental(r, i))?));
    }

    let mut products = Vec::new();
    let mut leads = Vec::new();
    for lams in predicted_normal_degrees(datum, &w, max_height).values() {
        for lam in lams {
            if lam.is_zero() {
                continue;
            }
            let d = cache.get(lam)?;
            leads.push(lead_check(ctx, lam, &d));
            let mut prod = PBWVector::unit(vec![0; ctx.len()]);
            for (i, di) in &primes {
                for _ in 0..lam.0[*i] {
                    prod = ctx.pbw_multiply(&prod, di)?;
                }
            }
            products.push((lam.clone(), proportional(&prod, &d)));
        }
    }

    let mut commutations = Vec::new();
    for (a, (i, di)) in primes.iter().enumerate() {
        for (j, dj) in &primes[a + 1..] {
            let wi = Weight::fundamental(r, *i);
            let wj = Weight::fundamental(r, *j);
            let e = datum.pairing(&w.apply(&wi), &wj) - datum.pairing(&wi, &w.apply(&wj));
            let expected = e.to_integer().to_i64().unwrap_or(i64::MAX);
            let observed = q_ratio(&ctx.pbw_multiply(di, dj)?, &ctx.pbw_multiply(dj, di)?);
            let ok = e.is_integer() && observed == Some(expected);
            commutations.push(CommutationCheck {
                i: *i,
                j: *j,
                expected,
                observed,
                ok,
            });
        }
    }

    Ok(ClassificationReport {
        word: ctx.word().to_vec(),
        sign: ctx.sign(),
        max_height,
        margin,
        degrees,
        primes,
        products,
        commutations,
        leads,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentralReport {
    pub max_height: u32,
    /// Degrees with a nonzero central subspace, and its basis.
    pub found: Vec<(Vec<u32>, Vec<PBWVector>)>,
    /// `μ ∈ K(w) ∩ P^+_{S(w)}` grouped by degree `(1-w)μ`.
    pub predicted: BTreeMap<Vec<u32>, Vec<Weight>>,
}

impl CentralReport {
    pub fn ok(&self) -> bool {
        self.found.len() == self.predicted.len()
            && self
                .found
                .iter()
                .all(|(g, b)| self.predicted.get(g).map(|p| p.len()) == Some(b.len()))
    }

    /// True when only the scalars are central up to the height cap.
    pub fn is_trivial(&self) -> bool {
        self.found.iter().all(|(g, _)| g.iter().all(|&x| x == 0))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "height": self.max_height,
            "ok": self.ok(),
            "trivial": self.is_trivial(),
            "found": self.found.iter().map(|(g, b)| json!({
                "degree": g,
                "basis": b.iter().map(PBWVector::to_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "predicted": self.predicted.iter().map(|(g, mus)| json!({
                "degree": g,
                "mu": mus.iter().map(weight_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Central elements up to `max_height`, compared with the degrees
/// `(1-w)μ` for dominant `μ ∈ K(w)`.
pub fn find_central(ctx: &PBWContext, max_height: u32) -> Result<CentralReport, NcError> {
    let datum = ctx.system().datum();
    let w = element(ctx);
    let zeros = vec![0i64; ctx.len()];
    let mut found = Vec::new();
    for gamma in degrees_up_to(ctx, max_height) {
        let basis: Vec<PBWVector> = search(ctx, &gamma, Candidates::Fixed(&zeros))?
            .into_iter()
            .flat_map(|(_, b)| b)
            .collect();
        if !basis.is_empty() {
            found.push((gamma, basis));
        }
    }
    let kappa = kappa_lattice(datum, &w);
    let predicted = predicted_normal_degrees(datum, &w, max_height)
        .into_iter()
        .filter_map(|(g, lams)| {
            let mus: Vec<Weight> = lams.into_iter().filter(|l| kappa.contains_i64(&l.0)).collect();
            (!mus.is_empty()).then_some((g, mus))
        })
        .collect();
    Ok(CentralReport {
        max_height,
        found,
        predicted,
    })
}

/// `Supp_j = {k : i_k = j}` for a word, the generators `e_j` (indicator
/// vectors of the supports) and the complement `Δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaSet {
    word: Vec<usize>,
    supports: BTreeMap<usize, Vec<usize>>,
}

impl DeltaSet {
    pub fn new(word: &[usize]) -> Self {
        let mut supports: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (k, &i) in word.iter().enumerate() {
            supports.entry(i).or_default().push(k);
        }
        DeltaSet {
            word: word.to_vec(),
            supports,
        }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Letters occurring in the word.
    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.supports.keys().copied()
    }

    pub fn support(&self, j: usize) -> &[usize] {
        self.supports.get(&j).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn generator(&self, j: usize) -> Vec<u32> {
        let mut e = vec![0; self.word.len()];
        for &k in self.support(j) {
            e[k] = 1;
        }
        e
    }

    pub fn contains(&self, n: &[u32]) -> bool {
        self.supports.values().all(|s| s.iter().any(|&k| n[k] == 0))
    }

    /// `n = Σ m_j e_j + δ` with `m_j = min_{k ∈ Supp_j} n_k`; returns
    /// `(m, σ, δ)` with `m` keyed by letter.
    pub fn decompose(&self, n: &[u32]) -> (BTreeMap<usize, u32>, Vec<u32>, Vec<u32>) {
        let mut m = BTreeMap::new();
        let mut sigma = vec![0; n.len()];
        for (&j, s) in &self.supports {
            let mj = s.iter().map(|&k| n[k]).min().unwrap_or(0);
            m.insert(j, mj);
            for &k in s {
                sigma[k] = mj;
            }
        }
        let delta = n.iter().zip(&sigma).map(|(a, b)| a - b).collect();
        (m, sigma, delta)
    }

    /// Number of ways to write `n = σ + δ` with `σ ∈ Σ` and `δ ∈ Δ`, by
    /// exhaustive enumeration of `σ`.
    pub fn count_decompositions(&self, n: &[u32]) -> usize {
        let supports: Vec<&Vec<usize>> = self.supports.values().collect();
        fn rec(ds: &DeltaSet, supports: &[&Vec<usize>], k: usize, rest: &mut Vec<u32>) -> usize {
            if k == supports.len() {
                return usize::from(ds.contains(rest));
            }
            let cap = supports[k].iter().map(|&i| rest[i]).min().unwrap_or(0);
            let mut total = 0;
            for m in 0..=cap {
                for &i in supports[k] {
                    rest[i] -= m;
                }
                total += rec(ds, supports, k + 1, rest);
                for &i in supports[k] {
                    rest[i] += m;
                }
            }
            total
        }
        rec(self, &supports, 0, &mut n.to_vec())
    }

    /// Checks unique decomposition over the box `{0..=bound}^l`; returns the
    /// number of points checked or the first failing point.
    pub fn check_box(&self, bound: u32) -> Result<usize, Vec<u32>> {
        let l = self.word.len();
        let mut n = vec![0u32; l];
        let mut count = 0;
        loop {
            let (_, sigma, delta) = self.decompose(&n);
            let sum_ok = sigma.iter().zip(&delta).zip(&n).all(|((a, b), c)| a + b == *c);
            if !sum_ok || !self.contains(&delta) || self.count_decompositions(&n) != 1 {
                return Err(n);
            }
            count += 1;
            let mut k = 0;
            loop {
                if k == l {
                    return Ok(count);
                }
                if n[k] < bound {
                    n[k] += 1;
                    break;
                }
                n[k] = 0;
                k += 1;
            }
        }
    }
}

/// `(σ, δ)` with `n = σ + δ`, `σ ∈ Σ`, `δ ∈ Δ`.
pub fn delta_decompose(word: &[usize], n: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let (_, sigma, delta) = DeltaSet::new(word).decompose(n);
    (sigma, delta)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PieceCheck {
    pub degree: Vec<u32>,
    pub monomials: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationReport {
    pub max_height: u32,
    pub pieces: Vec<PieceCheck>,
    pub leads: Vec<LeadCheck>,
}

impl SeparationReport {
    pub fn ok(&self) -> bool {
        self.pieces.iter().all(|p| p.rank == p.monomials) && self.leads.iter().all(|l| l.ok)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "height": self.max_height,
            "ok": self.ok(),
            "pieces": self.pieces.iter().map(|p| json!({
                "degree": p.degree, "monomials": p.monomials, "rank": p.rank,
            })).collect::<Vec<_>>(),
            "leads": self.leads.iter().map(lead_json).collect::<Vec<_>>(),
        })
    }
}

/// In each degree up to `max_height`, checks that `X^δ d_λ` over the
/// decompositions `n = σ + δ` (with `σ = Σ λ_j e_j`) span the whole piece.
pub fn separation_check(ctx: &PBWContext, max_height: u32) -> Result<SeparationReport, NcError> {
    let r = ctx.system().rank();
    let ds = DeltaSet::new(ctx.word());
    let mut cache = DCache::new(ctx);
    let mut pieces = Vec::new();
    let mut leads: BTreeMap<Weight, LeadCheck> = BTreeMap::new();
    for gamma in degrees_up_to(ctx, max_height) {
        let monos = ctx.multidegrees(&gamma);
        let mut rows = Vec::with_capacity(monos.len());
        for n in &monos {
            let (m, _, delta) = ds.decompose(n);
            let mut lam = Weight::zero(r);
            for (j, mj) in m {
                lam.0[j] = mj as i64;
            }
            let d = cache.get(&lam)?;
            if !lam.is_zero() && !leads.contains_key(&lam) {
                leads.insert(lam.clone(), lead_check(ctx, &lam, &d));
            }
            let v = ctx.pbw_multiply(&PBWVector::unit(delta), &d)?;
            rows.push(monos.iter().map(|k| v.coeff(k)).collect::<Vec<_>>());
        }
        let rk = rank(&rows, monos.len());
        pieces.push(PieceCheck {
            degree: gamma,
            monomials: monos.len(),
            rank: rk,
        });
    }
    Ok(SeparationReport {
        max_height,
        pieces,
        leads: leads.into_values().collect(),
    })
}

/// `n^±_{λ,λ'}` for `λ' - λ = Σ k_i μ^(i)`; `sign` is that of the algebra.
pub fn lo_exponent(datum: &CartanDatum, basis: &[Weight], lambda: &Weight, k: &[i64], sign: Sign) -> BigRational {
    let s = BigRational::from_integer(sign.as_i64().into());
    let int = |x: i64| BigRational::from_integer(x.into());
    let mut acc = BigRational::zero();
    for (i, mu) in basis.iter().enumerate() {
        let ki = k[i];
        acc -= int(2 * ki) * datum.pairing(mu, lambda);
        for (j, mu_j) in basis[..i].iter().enumerate() {
            acc -= int(2 * k[j]) * datum.pairing(mu_j, mu);
        }
        acc -= int(ki.abs() * (ki.abs() - 1)) * datum.pairing(mu, mu);
        if ki != 0 {
            let (plus, minus) = split_pm(mu);
            let part = if ki > 0 { minus } else { plus };
            acc += int(2 * ki) * datum.pairing(mu, &part);
        }
    }
    s * acc
}

#[derive(Debug, Clone, PartialEq)]
pub struct J1Generator {
    pub mu: Weight,
    pub mu_plus: Weight,
    pub mu_minus: Weight,
    pub exponent: BigRational,
}

impl J1Generator {
    pub fn render(&self) -> String {
        format!("d[{}] - q^{} d[{}]", self.mu_minus, self.exponent, self.mu_plus)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct J1Report {
    pub sign: Sign,
    pub kappa: Vec<Weight>,
    pub generators: Vec<J1Generator>,
    /// Basis dominant with pairwise disjoint supports, so the ideal is
    /// generated by `1 - d_{μ^(i)}`.
    pub simple_form: bool,
}

impl J1Report {
    pub fn simple_generators(&self) -> Vec<String> {
        if !self.simple_form {
            return Vec::new();
        }
        self.kappa.iter().map(|mu| format!("1 - d[{mu}]")).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "sign": self.sign.symbol(),
            "kappa": self.kappa.iter().map(weight_json).collect::<Vec<_>>(),
            "generators": self.generators.iter().map(|g| json!({
                "mu": weight_json(&g.mu),
                "mu_plus": weight_json(&g.mu_plus),
                "mu_minus": weight_json(&g.mu_minus),
                "exponent": g.exponent.to_string(),
                "element": g.render(),
            })).collect::<Vec<_>>(),
            "simple_form": self.simple_form,
            "simple_generators": self.simple_generators(),
        })
    }
}

/// Generators of the ideal attached to the trivial character of the center,
/// one per basis vector of `K(w)`.
pub fn j1_generators(datum: &CartanDatum, w: &WeylElement, sign: Sign) -> J1Report {
    let kappa = kappa_lattice(datum, w).basis_weights();
    let mut generators = Vec::new();
    for (i, mu) in kappa.iter().enumerate() {
        let (mu_plus, mu_minus) = split_pm(mu);
        let mut k = vec![0; kappa.len()];
        k[i] = 1;
        let exponent = lo_exponent(datum, &kappa, &mu_minus, &k, sign);
        generators.push(J1Generator {
            mu: mu.clone(),
            mu_plus,
            mu_minus,
            exponent,
        });
    }
    let dominant = kappa.iter().all(Weight::is_dominant);
    let disjoint = kappa
        .iter()
        .enumerate()
        .all(|(a, x)| kappa[a + 1..].iter().all(|y| x.support().is_disjoint(&y.support())));
    J1Report {
        sign,
        kappa,
        generators,
        simple_form: dominant && disjoint,
    }
}

/// Orders PBW vectors by highest term; used for stable listings.
pub fn sort_by_lead(v: &mut [PBWVector]) {
    v.sort_by(|a, b| match (a.highest_term(), b.highest_term()) {
        (Some(x), Some(y)) => lexi_cmp(x.0, y.0),
        (x, y) => x.is_some().cmp(&y.is_some()),
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncengine::RewriteSystem;
    use std::sync::Arc;

    fn ctx(name: &str, word: &[usize], sign: Sign) -> PBWContext {
        let sys = Arc::new(RewriteSystem::new(name.parse().unwrap(), 14));
        PBWContext::new(sys, word, sign).unwrap()
    }

    #[test]
    fn quantum_plane_generator_is_normal() {
        for sign in [Sign::Plus, Sign::Minus] {
            let c = ctx("A2", &[0, 1], sign);
            let f = find_normal(&c, &[1, 0], 2).unwrap();
            assert_eq!(f.dimension(), 1);
            assert_eq!(f.components[0].basis[0], PBWVector::unit(vec![1, 0]));
            assert_eq!(f.components[0].exponents, vec![0, 1]);
            assert_eq!(f.components[0].eta, Some(Weight(vec![1, 0])));
        }
    }

    #[test]
    fn degree_zero_is_scalars() {
        let c = ctx("A2", &[0, 1, 0], Sign::Plus);
        let f = find_normal(&c, &[0, 0], 2).unwrap();
        assert_eq!(f.dimension(), 1);
        assert_eq!(f.components[0].exponents, vec![0, 0, 0]);
    }

    #[test]
    fn longest_word_middle_degree_splits_by_weight() {
        let c = ctx("A2", &[0, 1, 0], Sign::Plus);
        let f = find_normal(&c, &[1, 1], 2).unwrap();
        assert_eq!(f.components.len(), 2);
        assert!(f.components.iter().all(|c| c.basis.len() == 1 && c.eta.is_some()));
    }

    #[test]
    fn predicted_degrees() {
        let a2: CartanDatum = "A2".parse().unwrap();
        let w = a2.reduced_element(&[0, 1]).unwrap();
        let p = predicted_normal_degrees(&a2, &w, 3);
        // aα1 + b(α1+α2)
        assert_eq!(p[&vec![1, 0]], vec![Weight(vec![1, 0])]);
        assert_eq!(p[&vec![1, 1]], vec![Weight(vec![0, 1])]);
        assert_eq!(p[&vec![2, 1]], vec![Weight(vec![1, 1])]);
        assert_eq!(p.len(), 6);
        let e = a2.identity();
        assert_eq!(
            predicted_normal_degrees(&a2, &e, 5).keys().cloned().collect::<Vec<_>>(),
            vec![vec![0, 0]]
        );
    }

    #[test]
    fn delta_sets() {
        let ds = DeltaSet::new(&[0, 1, 0]);
        assert_eq!(delta_decompose(&[0, 1, 0], &[2, 1, 3]), (vec![2, 1, 2], vec![0, 0, 1]));
        assert_eq!(delta_decompose(&[0, 1, 0], &[0, 0, 0]), (vec![0; 3], vec![0; 3]));
        assert!(ds.contains(&[0, 0, 5]));
        assert_eq!(delta_decompose(&[0, 1, 0], &[0, 0, 5]), (vec![0; 3], vec![0, 0, 5]));
        assert_eq!(ds.check_box(4), Ok(125));
    }

    #[test]
    fn j1_for_s1() {
        let a2: CartanDatum = "A2".parse().unwrap();
        let w = a2.reduced_element(&[0]).unwrap();
        let j = j1_generators(&a2, &w, Sign::Plus);
        assert_eq!(j.kappa, vec![Weight(vec![1, 0])]);
        assert!(j.simple_form);
        assert_eq!(j.simple_generators(), vec!["1 - d[w1]".to_string()]);
        let cox = a2.reduced_element(&[0, 1]).unwrap();
        assert!(j1_generators(&a2, &cox, Sign::Plus).generators.is_empty());
    }
}
