//! Quantum tori attached to Weyl group pairs and the reports built on them:
//! center generators, stabilizers, leaf equations, maximal ideals and the
//! stratification table.
//!
//! Every `c^±`, `a_j`, `d`, `y` below is a labelled torus generator with
//! integer q-commutation data; nothing is realized as a function.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};
use thiserror::Error;

use crate::lattices::{
    big_l, kernel_lattice, ltilde, ltilde_red, pair_support_sets, rational_rank_i64, smith_divisors, split_pm,
    IntLattice,
};
use crate::ncengine::Sign;
use crate::rootsys::{format_word, word_csv, CartanDatum, Weight, WeylElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectraError {
    #[error("exponent matrix must be square of size {0}")]
    NotSquare(usize),
    #[error("exponent matrix is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("duplicate generator label {0}")]
    DuplicateLabel(String),
    #[error("exponent {0} is not an integer")]
    NonIntegral(String),
}

/// Generators `x_a` with `x_a x_b = q^{M_ab} x_b x_a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumTorusPresentation {
    labels: Vec<String>,
    exponents: Vec<Vec<i64>>,
}

impl QuantumTorusPresentation {
    pub fn new(labels: Vec<String>, exponents: Vec<Vec<i64>>) -> Result<Self, SpectraError> {
        let n = labels.len();
        if exponents.len() != n || exponents.iter().any(|r| r.len() != n) {
            return Err(SpectraError::NotSquare(n));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(SpectraError::DuplicateLabel(l.clone()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if exponents[a][b] != -exponents[b][a] {
                    return Err(SpectraError::NotAntisymmetric(a, b));
                }
            }
        }
        Ok(QuantumTorusPresentation { labels, exponents })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn exponents(&self) -> &[Vec<i64>] {
        &self.exponents
    }

    /// `x^u x^v = q^{u^T M v} x^v x^u`.
    pub fn commutation(&self, u: &[i64], v: &[i64]) -> i64 {
        let mut s = 0;
        for (a, ua) in u.iter().enumerate() {
            if *ua != 0 {
                for (b, vb) in v.iter().enumerate() {
                    s += ua * self.exponents[a][b] * vb;
                }
            }
        }
        s
    }

    pub fn is_central(&self, v: &[i64]) -> bool {
        self.exponents
            .iter()
            .all(|row| row.iter().zip(v).map(|(m, x)| m * x).sum::<i64>() == 0)
    }

    pub fn to_json(&self) -> Value {
        json!({ "labels": self.labels, "exponents": self.exponents })
    }
}

/// Exponent vectors of the central monomials (`q` not a root of unity).
pub fn torus_center(t: &QuantumTorusPresentation) -> IntLattice {
    kernel_lattice(&t.exponents, t.dim())
}

fn as_int(x: &BigRational) -> Result<i64, SpectraError> {
    if !x.is_integer() {
        return Err(SpectraError::NonIntegral(x.to_string()));
    }
    x.to_integer()
        .to_i64()
        .ok_or_else(|| SpectraError::NonIntegral(x.to_string()))
}

fn weights_json(ws: &[Weight]) -> Value {
    json!(ws.iter().map(|w| w.0.clone()).collect::<Vec<_>>())
}

fn one_based(s: &BTreeSet<usize>) -> Vec<usize> {
    s.iter().map(|i| i + 1).collect()
}

/// The torus generated by `c^+_{w_+,ω_i}` (`i ∈ S(w)`) and `c^-_{w_-,ω_j}`
/// (all `j`).
#[derive(Debug, Clone, PartialEq)]
pub struct LwPresentation {
    pub torus: QuantumTorusPresentation,
    pub support: Vec<usize>,
    pub rank: usize,
    /// `(i, j, -<w_+ω_i, w_-ω_j>)`, kept for comparison with the integral
    /// exponent `<w_+ω_i, w_-ω_j> - <ω_i, ω_j>` actually used.
    pub raw_mixed: Vec<(usize, usize, BigRational)>,
}

impl LwPresentation {
    /// Index of `c^-_{w_-,ω_j}`.
    pub fn minus_index(&self, j: usize) -> usize {
        self.support.len() + j
    }

    /// Right weight of a monomial: `c^+` contributes `+ω_i`, `c^-` `-ω_j`.
    pub fn weight_of(&self, v: &[i64]) -> Weight {
        let mut w = Weight::zero(self.rank);
        for (k, &i) in self.support.iter().enumerate() {
            w.0[i] += v[k];
        }
        for j in 0..self.rank {
            w.0[j] -= v[self.minus_index(j)];
        }
        w
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.torus.to_json();
        v["raw_mixed"] = json!(self
            .raw_mixed
            .iter()
            .map(|(i, j, x)| json!({"i": i + 1, "j": j + 1, "exponent": x.to_string()}))
            .collect::<Vec<_>>());
        v
    }
}

pub fn build_lw(
    datum: &CartanDatum,
    w_plus: &WeylElement,
    w_minus: &WeylElement,
) -> Result<LwPresentation, SpectraError> {
    let r = datum.rank();
    let (support, _) = pair_support_sets(datum, w_plus, w_minus);
    let support: Vec<usize> = support.into_iter().collect();
    let n = support.len() + r;
    let mut labels: Vec<String> = support.iter().map(|i| format!("c+[w{}]", i + 1)).collect();
    labels.extend((0..r).map(|j| format!("c-[w{}]", j + 1)));
    let mut m = vec![vec![0i64; n]; n];
    let mut raw_mixed = Vec::new();
    for (a, &i) in support.iter().enumerate() {
        let wi = Weight::fundamental(r, i);
        for j in 0..r {
            let wj = Weight::fundamental(r, j);
            let top = datum.pairing(&w_plus.apply(&wi), &w_minus.apply(&wj));
            let e = as_int(&(&top - datum.pairing(&wi, &wj)))?;
            m[a][support.len() + j] = e;
            m[support.len() + j][a] = -e;
            raw_mixed.push((i, j, -top));
        }
    }
    Ok(LwPresentation {
        torus: QuantumTorusPresentation::new(labels, m)?,
        support,
        rank: r,
        raw_mixed,
    })
}

/// `±(<wω_i, ω_j> - <ω_i, wω_j>)`.
pub fn n_exponent(datum: &CartanDatum, w: &WeylElement, i: usize, j: usize, sign: Sign) -> Result<i64, SpectraError> {
    let r = datum.rank();
    let wi = Weight::fundamental(r, i);
    let wj = Weight::fundamental(r, j);
    let e = datum.pairing(&w.apply(&wi), &wj) - datum.pairing(&wi, &w.apply(&wj));
    Ok(sign.as_i64() * as_int(&e)?)
}

/// Generators `d_{w,ω_i}`, `i ∈ S(w)`.
pub fn build_n(datum: &CartanDatum, w: &WeylElement, sign: Sign) -> Result<QuantumTorusPresentation, SpectraError> {
    let (support, _) = datum.support_sets(w);
    let support: Vec<usize> = support.into_iter().collect();
    let labels = support
        .iter()
        .map(|i| format!("d{}[w{}]", sign.symbol(), i + 1))
        .collect();
    let mut m = vec![vec![0; support.len()]; support.len()];
    for (a, &i) in support.iter().enumerate() {
        for (b, &j) in support.iter().enumerate() {
            m[a][b] = n_exponent(datum, w, i, j, sign)?;
        }
    }
    QuantumTorusPresentation::new(labels, m)
}

/// `<w_-ω_i, w_+ω_j> - <w_+ω_i, w_-ω_j>`.
pub fn nprime_exponent(
    datum: &CartanDatum,
    w_plus: &WeylElement,
    w_minus: &WeylElement,
    i: usize,
    j: usize,
) -> Result<i64, SpectraError> {
    let r = datum.rank();
    let wi = Weight::fundamental(r, i);
    let wj = Weight::fundamental(r, j);
    let e =
        datum.pairing(&w_minus.apply(&wi), &w_plus.apply(&wj)) - datum.pairing(&w_plus.apply(&wi), &w_minus.apply(&wj));
    as_int(&e)
}

/// Generators `y_{ω_i}`, `i ∈ S(w_+) ∪ S(w_-)`.
pub fn build_nprime(
    datum: &CartanDatum,
    w_plus: &WeylElement,
    w_minus: &WeylElement,
) -> Result<QuantumTorusPresentation, SpectraError> {
    let (support, _) = pair_support_sets(datum, w_plus, w_minus);
    let support: Vec<usize> = support.into_iter().collect();
    let labels = support.iter().map(|i| format!("y[w{}]", i + 1)).collect();
    let mut m = vec![vec![0; support.len()]; support.len()];
    for (a, &i) in support.iter().enumerate() {
        for (b, &j) in support.iter().enumerate() {
            m[a][b] = nprime_exponent(datum, w_plus, w_minus, i, j)?;
        }
    }
    QuantumTorusPresentation::new(labels, m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CenterGenerator {
    pub label: String,
    /// Exponent vector over the generators of [`LwPresentation`].
    pub exponent: Vec<i64>,
    /// Right weight of the monomial.
    pub weight: Weight,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CenterDescription {
    pub lw: LwPresentation,
    pub support: BTreeSet<usize>,
    pub fixed: BTreeSet<usize>,
    /// The HNF basis `λ^(1..k)` of `L̃_red(w)`.
    pub lambdas: Vec<Weight>,
    pub generators: Vec<CenterGenerator>,
    /// `dim ker(w_+ - w_-)`.
    pub dimension: usize,
    pub center_rank: usize,
    pub all_central: bool,
    pub lattice_matches: bool,
    pub index: Option<BigInt>,
}

impl CenterDescription {
    pub fn index_ok(&self) -> bool {
        self.index == Some(BigInt::from(1u64 << self.fixed.len()))
    }

    pub fn dimension_ok(&self) -> bool {
        self.generators.len() == self.dimension
    }

    pub fn ok(&self) -> bool {
        self.all_central && self.lattice_matches && self.index_ok() && self.dimension_ok()
    }
}

/// `{c^+_{w_+,ω_i} : i ∈ I(w)} ⊔ {a_j = c^+_{w_+,λ^(j)} (c^-_{w_-,λ^(j)})^{-1}}`,
/// with the checks against the torus `L_w`. For `i ∈ I(w)` the generator
/// `c^+_{w_+,ω_i}` is the inverse of `c^-_{w_-,ω_i}`.
pub fn theorem1_generators(
    datum: &CartanDatum,
    w_plus: &WeylElement,
    w_minus: &WeylElement,
) -> Result<CenterDescription, SpectraError> {
    let r = datum.rank();
    let lw = build_lw(datum, w_plus, w_minus)?;
    let (support, fixed) = pair_support_sets(datum, w_plus, w_minus);
    let lambdas = ltilde_red(datum, w_plus, w_minus).basis_weights();
    let n = lw.torus.dim();
    let mut generators = Vec::new();
    for &i in &fixed {
        let mut v = vec![0; n];
        v[lw.minus_index(i)] = -1;
        generators.push(CenterGenerator {
            label: format!("c+[w{}]", i + 1),
            weight: lw.weight_of(&v),
            exponent: v,
        });
    }
    for (j, lam) in lambdas.iter().enumerate() {
        let mut v = vec![0; n];
        for (a, &i) in lw.support.iter().enumerate() {
            v[a] = lam.0[i];
        }
        for k in 0..r {
            v[lw.minus_index(k)] = -lam.0[k];
        }
        generators.push(CenterGenerator {
            label: format!("a{}", j + 1),
            weight: lw.weight_of(&v),
            exponent: v,
        });
    }
    let all_central = generators.iter().all(|g| lw.torus.is_central(&g.exponent));
    let gen_lattice = IntLattice::from_i64(r, &generators.iter().map(|g| g.weight.0.clone()).collect::<Vec<_>>());
    let l = big_l(datum, w_plus, w_minus);
    let lattice_matches = gen_lattice == l;
    let index = l.index_of(&ltilde(datum, w_plus, w_minus).scale(2)).ok().flatten();
    let diff: Vec<Vec<i64>> = w_plus
        .matrix()
        .iter()
        .zip(w_minus.matrix())
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
        .collect();
    let dimension = r - rational_rank_i64(&diff, r);
    let center_rank = torus_center(&lw.torus).rank();
    Ok(CenterDescription {
        lw,
        support,
        fixed,
        lambdas,
        generators,
        dimension,
        center_rank,
        all_central,
        lattice_matches,
        index,
    })
}

/// `{t : t^λ = 1 for all λ ∈ L}`: finite part from the elementary divisors,
/// plus a subtorus of the remaining rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilizer {
    pub lattice: IntLattice,
    pub divisors: Vec<BigInt>,
    pub torus_rank: usize,
}

impl Stabilizer {
    pub fn from_lattice(lattice: IntLattice) -> Self {
        let divisors = smith_divisors(lattice.basis());
        let torus_rank = lattice.ambient_rank() - lattice.rank();
        Stabilizer {
            lattice,
            divisors,
            torus_rank,
        }
    }

    /// E.g. `mu_2 x mu_2`, `trivial`, `mu_2 x T^1`.
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self
            .divisors
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| format!("mu_{d}"))
            .collect();
        if self.torus_rank > 0 {
            parts.push(format!("T^{}", self.torus_rank));
        }
        if parts.is_empty() {
            "trivial".into()
        } else {
            parts.join(" x ")
        }
    }

    /// `t^λ = 1` for each basis vector of the lattice.
    pub fn equations(&self) -> Vec<String> {
        self.lattice
            .basis_i64()
            .iter()
            .map(|row| {
                let lhs: Vec<String> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| {
                        if c == 1 {
                            format!("t{}", i + 1)
                        } else {
                            format!("t{}^{}", i + 1, c)
                        }
                    })
                    .collect();
                format!("{} = 1", lhs.join("*"))
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lattice": self.lattice.to_json("w"),
            "divisors": self.divisors.iter().map(|d| d.to_i64().map_or_else(|| json!(d.to_string()), |v| json!(v))).collect::<Vec<_>>(),
            "torus_rank": self.torus_rank,
            "group": self.describe(),
            "equations": self.equations(),
        })
    }
}

pub fn stabilizer(datum: &CartanDatum, w_plus: &WeylElement, w_minus: &WeylElement) -> Stabilizer {
    Stabilizer::from_lattice(big_l(datum, w_plus, w_minus))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeafReport {
    pub k: usize,
    pub fixed: BTreeSet<usize>,
    /// `(λ^(j), λ^(j)_+, λ^(j)_-)`.
    pub lambdas: Vec<(Weight, Weight, Weight)>,
    pub b_formulas: Vec<String>,
    pub equations: Vec<String>,
    pub ideal_generators: Vec<String>,
    /// `T^w = {t : t^μ = 1, μ ∈ L̃(w)}`.
    pub torus_lattice: IntLattice,
}

impl LeafReport {
    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "I_count": self.fixed.len(),
            "parameters": self.k + self.fixed.len(),
            "lambda": weights_json(&self.lambdas.iter().map(|l| l.0.clone()).collect::<Vec<_>>()),
            "lambda_plus": weights_json(&self.lambdas.iter().map(|l| l.1.clone()).collect::<Vec<_>>()),
            "lambda_minus": weights_json(&self.lambdas.iter().map(|l| l.2.clone()).collect::<Vec<_>>()),
            "b": self.b_formulas,
            "equations": self.equations,
            "ideal_generators": self.ideal_generators,
            "torus": self.torus_lattice.to_json("w"),
        })
    }
}

pub fn leaf_and_ideal_report(datum: &CartanDatum, w_plus: &WeylElement, w_minus: &WeylElement) -> LeafReport {
    let (_, fixed) = pair_support_sets(datum, w_plus, w_minus);
    let lambdas: Vec<(Weight, Weight, Weight)> = ltilde_red(datum, w_plus, w_minus)
        .basis_weights()
        .into_iter()
        .map(|l| {
            let (p, m) = split_pm(&l);
            (l, p, m)
        })
        .collect();
    let mut b_formulas = Vec::new();
    let mut equations = Vec::new();
    let mut ideal_generators = Vec::new();
    for (j, (_, p, m)) in lambdas.iter().enumerate() {
        let j = j + 1;
        b_formulas.push(format!("b{j}(zeta{j}) = c+[{p}] c-[{m}] - zeta{j} c+[{m}] c-[{p}]"));
        equations.push(format!("a~{j} = zeta{j}"));
        ideal_generators.push(format!("a{j} - zeta{j}"));
    }
    for &i in &fixed {
        equations.push(format!("c~+[w{}] = theta{}", i + 1, i + 1));
        ideal_generators.push(format!("c+[w{}] - theta{}", i + 1, i + 1));
    }
    LeafReport {
        k: lambdas.len(),
        fixed,
        lambdas,
        b_formulas,
        equations,
        ideal_generators,
        torus_lattice: ltilde(datum, w_plus, w_minus),
    }
}

/// Maximal ideals of the quantum group: one `r`-parameter family, all in
/// the stratum of the identity pair.
pub fn max_spectrum_report(datum: &CartanDatum) -> Value {
    let r = datum.rank();
    let params: Vec<String> = (1..=r).map(|i| format!("p{i}")).collect();
    let gens: Vec<String> = (1..=r).map(|i| format!("c+[1,w{i}] - p{i}")).collect();
    json!({
        "datum": datum.name(),
        "parameters": params,
        "stratum": {"w_plus": [], "w_minus": []},
        "family": format!("(K*)^{r}"),
        "ideal": format!("I(1,1) + {}", gens.join(" + ")),
        "finite_codimension": true,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StratumRow {
    pub w_plus: Vec<usize>,
    pub w_minus: Vec<usize>,
    pub len_plus: usize,
    pub len_minus: usize,
    pub support: BTreeSet<usize>,
    pub fixed: BTreeSet<usize>,
    pub dimension: usize,
    pub k: usize,
}

impl StratumRow {
    pub fn to_json(&self) -> Value {
        json!({
            "w_plus": self.w_plus.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "w_minus": self.w_minus.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "l_plus": self.len_plus,
            "l_minus": self.len_minus,
            "S": one_based(&self.support),
            "I": one_based(&self.fixed),
            "dimension": self.dimension,
            "k": self.k,
            "I_count": self.fixed.len(),
        })
    }
}

/// One row per pair `(w_+, w_-)`, both in the enumeration order of the group.
pub fn stratification_summary(datum: &CartanDatum) -> Result<Vec<StratumRow>, crate::rootsys::RootSysError> {
    let group = datum.weyl_group()?;
    let mut rows = Vec::with_capacity(group.len() * group.len());
    for wp in &group {
        for wm in &group {
            let (support, fixed) = pair_support_sets(datum, wp, wm);
            let k = ltilde_red(datum, wp, wm).rank();
            rows.push(StratumRow {
                w_plus: wp.word().to_vec(),
                w_minus: wm.word().to_vec(),
                len_plus: wp.length(),
                len_minus: wm.length(),
                support,
                dimension: k + fixed.len(),
                fixed,
                k,
            });
        }
    }
    Ok(rows)
}

/// Aligned text table for [`stratification_summary`].
pub fn stratification_table(rows: &[StratumRow]) -> String {
    let fmt_set = |s: &BTreeSet<usize>| {
        format!(
            "{{{}}}",
            s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
        )
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<14} {:<14} {:>3} {:>3} {:<8} {:<8} {:>4} {:>3} {:>3}",
        "w+", "w-", "l+", "l-", "S", "I", "dim", "k", "|I|"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<14} {:<14} {:>3} {:>3} {:<8} {:<8} {:>4} {:>3} {:>3}",
            format_word(&r.w_plus).replace(' ', ""),
            format_word(&r.w_minus).replace(' ', ""),
            r.len_plus,
            r.len_minus,
            fmt_set(&r.support),
            fmt_set(&r.fixed),
            r.dimension,
            r.k,
            r.fixed.len()
        );
    }
    let total: usize = rows.iter().map(|r| r.dimension).sum();
    let _ = writeln!(out, "strata: {}  total center dimension: {}", rows.len(), total);
    out
}

/// Everything reported for one pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PairReport {
    pub datum: String,
    pub w_plus: Vec<usize>,
    pub w_minus: Vec<usize>,
    pub center: CenterDescription,
    pub stabilizer: Stabilizer,
    pub leaf: LeafReport,
    pub lattices: Vec<(&'static str, IntLattice)>,
    pub n_plus: QuantumTorusPresentation,
    pub n_minus: QuantumTorusPresentation,
    pub n_prime: QuantumTorusPresentation,
}

impl PairReport {
    pub fn new(datum: &CartanDatum, w_plus: &WeylElement, w_minus: &WeylElement) -> Result<Self, SpectraError> {
        let center = theorem1_generators(datum, w_plus, w_minus)?;
        let lattices = vec![
            ("ltilde", ltilde(datum, w_plus, w_minus)),
            ("ltilde_red", ltilde_red(datum, w_plus, w_minus)),
            ("L", big_l(datum, w_plus, w_minus)),
        ];
        Ok(PairReport {
            datum: datum.name(),
            w_plus: w_plus.word().to_vec(),
            w_minus: w_minus.word().to_vec(),
            center,
            stabilizer: stabilizer(datum, w_plus, w_minus),
            leaf: leaf_and_ideal_report(datum, w_plus, w_minus),
            lattices,
            n_plus: build_n(datum, w_plus, Sign::Plus)?,
            n_minus: build_n(datum, w_minus, Sign::Minus)?,
            n_prime: build_nprime(datum, w_plus, w_minus)?,
        })
    }

    pub fn checks(&self) -> Vec<(&'static str, bool)> {
        let t = &self.center;
        vec![
            ("center_generators_central", t.all_central),
            ("generator_lattice_equals_L", t.lattice_matches),
            ("index_L_over_2Ltilde", t.index_ok()),
            ("center_dimension", t.dimension_ok()),
        ]
    }

    pub fn ok(&self) -> bool {
        self.checks().iter().all(|c| c.1)
    }

    pub fn to_json(&self) -> Value {
        let t = &self.center;
        let mut lattices = serde_json::Map::new();
        for (name, l) in &self.lattices {
            lattices.insert((*name).into(), l.to_json("w"));
        }
        let mut checks = serde_json::Map::new();
        for (name, ok) in self.checks() {
            checks.insert(name.into(), json!(if ok { "pass" } else { "fail" }));
        }
        json!({
            "datum": self.datum,
            "w_plus": self.w_plus.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "w_minus": self.w_minus.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "S": one_based(&t.support),
            "I": one_based(&t.fixed),
            "lattices": lattices,
            "lambda_basis": weights_json(&t.lambdas),
            "center_dimension": t.dimension,
            "torus_L_center_rank": t.center_rank,
            "center_generators": t.generators.iter().map(|g| json!({
                "label": g.label,
                "exponent": g.exponent,
                "weight": g.weight.0,
            })).collect::<Vec<_>>(),
            "torus_L": t.lw.to_json(),
            "torus_N_plus": self.n_plus.to_json(),
            "torus_N_minus": self.n_minus.to_json(),
            "torus_N_prime": self.n_prime.to_json(),
            "stabilizer": self.stabilizer.to_json(),
            "leaf": self.leaf.to_json(),
            "checks": checks,
        })
    }

    pub fn to_text(&self) -> String {
        let t = &self.center;
        let mut out = String::new();
        let _ = writeln!(out, "datum        {}", self.datum);
        let _ = writeln!(out, "w+           {}", format_word(&self.w_plus));
        let _ = writeln!(out, "w-           {}", format_word(&self.w_minus));
        let _ = writeln!(out, "S            {:?}", one_based(&t.support));
        let _ = writeln!(out, "I            {:?}", one_based(&t.fixed));
        for (name, l) in &self.lattices {
            let _ = writeln!(out, "{:<12} {}", name, l);
        }
        let _ = writeln!(out, "center dim   {}", t.dimension);
        for g in &t.generators {
            let _ = writeln!(out, "  {:<10} weight {}", g.label, g.weight);
        }
        let _ = writeln!(
            out,
            "stabilizer   {} (divisors {:?})",
            self.stabilizer.describe(),
            self.stabilizer
                .divisors
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        );
        let _ = writeln!(out, "leaf k       {}", self.leaf.k);
        for e in &self.leaf.equations {
            let _ = writeln!(out, "  {e}");
        }
        for (name, ok) in self.checks() {
            let _ = writeln!(out, "check {:<28} {}", name, if ok { "pass" } else { "fail" });
        }
        out
    }
}

/// Word of a pair member as `1,2,1` (empty for the identity).
pub fn pair_label(w_plus: &WeylElement, w_minus: &WeylElement) -> String {
    format!("({}; {})", word_csv(w_plus.word()), word_csv(w_minus.word()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CartanDatum {
        "A2".parse().unwrap()
    }

    #[test]
    fn torus_centers() {
        let t = QuantumTorusPresentation::new(vec!["x".into(), "y".into()], vec![vec![0, 1], vec![-1, 0]]).unwrap();
        assert!(torus_center(&t).is_zero());
        let z = QuantumTorusPresentation::new(vec!["x".into(), "y".into()], vec![vec![0; 2]; 2]).unwrap();
        assert_eq!(torus_center(&z).rank(), 2);
        let three = QuantumTorusPresentation::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![vec![0, 1, -1], vec![-1, 0, 0], vec![1, 0, 0]],
        )
        .unwrap();
        let c = torus_center(&three);
        assert_eq!(c.basis_i64(), vec![vec![0, 1, 1]]);
        assert!(three.is_central(&[0, 1, 1]));
        assert_eq!(
            QuantumTorusPresentation::new(vec!["x".into(), "x".into()], vec![vec![0; 2]; 2]),
            Err(SpectraError::DuplicateLabel("x".into()))
        );
        assert!(QuantumTorusPresentation::new(vec!["x".into()], vec![vec![1]]).is_err());
    }

    #[test]
    fn lw_sizes() {
        let d = a2();
        let e = d.identity();
        let s1 = d.reduced_element(&[0]).unwrap();
        let w0 = d.longest_element();
        assert_eq!(build_lw(&d, &e, &e).unwrap().torus.dim(), 2);
        assert!(build_lw(&d, &e, &e)
            .unwrap()
            .torus
            .exponents()
            .iter()
            .flatten()
            .all(|&x| x == 0));
        assert_eq!(build_lw(&d, &s1, &s1).unwrap().torus.dim(), 3);
        assert_eq!(build_lw(&d, &w0, &w0).unwrap().torus.dim(), 4);
    }

    #[test]
    fn center_generator_examples() {
        let d = a2();
        let s1 = d.reduced_element(&[0]).unwrap();
        let t = theorem1_generators(&d, &s1, &s1).unwrap();
        assert_eq!(t.dimension, 2);
        assert_eq!(t.lambdas, vec![Weight(vec![1, 0])]);
        assert_eq!(t.generators[0].label, "c+[w2]");
        assert!(t.ok());
        let e = d.identity();
        let t = theorem1_generators(&d, &e, &e).unwrap();
        assert_eq!(t.generators.len(), 2);
        assert!(t.ok());
    }

    #[test]
    fn stabilizers() {
        let d = a2();
        let w0 = d.longest_element();
        let s = stabilizer(&d, &w0, &w0);
        assert_eq!(s.divisors, vec![BigInt::from(2), BigInt::from(2)]);
        assert_eq!(s.describe(), "mu_2 x mu_2");
        let e = d.identity();
        assert_eq!(stabilizer(&d, &e, &e).describe(), "trivial");
        let s1 = d.reduced_element(&[0]).unwrap();
        let s = stabilizer(&d, &s1, &s1);
        assert_eq!(s.equations(), vec!["t1^2 = 1".to_string(), "t2 = 1".to_string()]);
    }

    #[test]
    fn n_matrices() {
        let d = a2();
        let w0 = d.longest_element();
        let n = build_n(&d, &w0, Sign::Plus).unwrap();
        assert_eq!(n.exponents(), &[vec![0, 0], vec![0, 0]]);
        let s1 = d.reduced_element(&[0]).unwrap();
        assert_eq!(build_n(&d, &s1, Sign::Plus).unwrap().dim(), 1);
    }

    #[test]
    fn strata_a1() {
        let d: CartanDatum = "A1".parse().unwrap();
        let rows = stratification_summary(&d).unwrap();
        let dims: Vec<usize> = rows.iter().map(|r| r.dimension).collect();
        assert_eq!(dims, vec![1, 0, 0, 1]);
    }
}
