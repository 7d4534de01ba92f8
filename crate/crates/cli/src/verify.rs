//! The verification ledger: named property suites run over a datum (or a
//! single word), each reporting instance counts, timings and witnesses.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use qcells_core::lattices::{kappa_lattice, kernel_lattice, ltilde, ltilde_red, m_of_w, pair_support_sets, IntLattice};
use qcells_core::ncengine::{NCPoly, PBWContext, RewriteSystem, Sign};
use qcells_core::normalia::{classify_normals, degrees_up_to, find_central, separation_check, DeltaSet};
use qcells_core::rootsys::{CartanDatum, WeylElement};
use qcells_core::spectra::PairReport;

use crate::CliError;

pub const CHECKS: &[&str] = &[
    "roots",
    "kappa",
    "lattices",
    "pbw",
    "braid",
    "ls-support",
    "highest-term",
    "delta",
    "normal",
    "separation",
    "center",
    "center-torus",
];

/// Checks that only make sense for the whole group, not a single word.
const GROUP_ONLY: &[&str] = &["roots", "kappa", "lattices", "braid", "center-torus"];

const MAX_WITNESSES: usize = 5;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub datum: CartanDatum,
    /// Restrict word-level suites to this word; `None` runs every element.
    pub word: Option<Vec<usize>>,
    pub height: u32,
    pub degree_cap: usize,
    pub margin: i64,
    /// Skip group elements longer than this in word-level suites.
    pub max_length: Option<usize>,
    pub samples: usize,
    pub seed: u64,
}

impl VerifyConfig {
    pub fn new(datum: CartanDatum) -> Self {
        VerifyConfig {
            datum,
            word: None,
            height: 6,
            degree_cap: qcells_core::DEFAULT_DEGREE_CAP,
            margin: 2,
            max_length: None,
            samples: 50,
            seed: 7,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    pub witnesses: Vec<Value>,
    pub millis: u128,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "instances": self.instances,
            "failures": self.failures,
            "passed": self.passed(),
            "millis": self.millis as u64,
            "counterexamples": self.witnesses,
        })
    }
}

#[derive(Default)]
struct Tally {
    instances: usize,
    failures: usize,
    witnesses: Vec<Value>,
}

impl Tally {
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }
}

fn csv(word: &[usize]) -> String {
    qcells_core::rootsys::word_csv(word)
}

/// Words the word-level suites run on.
fn words(cfg: &VerifyConfig) -> Result<Vec<Vec<usize>>, CliError> {
    if let Some(w) = &cfg.word {
        cfg.datum
            .reduced_element(w)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(vec![w.clone()]);
    }
    Ok(cfg
        .datum
        .weyl_group()
        .map_err(|e| CliError::Usage(e.to_string()))?
        .into_iter()
        .filter(|w| cfg.max_length.map_or(true, |m| w.length() <= m))
        .map(|w| w.word().to_vec())
        .collect())
}

fn group(cfg: &VerifyConfig) -> Result<Vec<WeylElement>, CliError> {
    cfg.datum.weyl_group().map_err(|e| CliError::Usage(e.to_string()))
}

fn contexts(cfg: &VerifyConfig) -> Result<Vec<PBWContext>, CliError> {
    let sys = Arc::new(RewriteSystem::new(cfg.datum.clone(), cfg.degree_cap));
    let mut out = Vec::new();
    for w in words(cfg)? {
        for sign in [Sign::Plus, Sign::Minus] {
            out.push(PBWContext::new(sys.clone(), &w, sign).map_err(|e| CliError::Usage(e.to_string()))?);
        }
    }
    Ok(out)
}

fn ctx_label(ctx: &PBWContext) -> Value {
    json!({"word": csv(ctx.word()), "sign": ctx.sign().symbol()})
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Failure(e.to_string())
}

/// `S(w)` from fixed fundamental weights against the letters of the word;
/// the span of the inversion roots; their orthogonal complement in `P`.
fn check_roots(cfg: &VerifyConfig, t: &mut Tally) -> Result<(), CliError> {
    let d = &cfg.datum;
    let r = d.rank();
    for w in group(cfg)? {
        let (support, fixed) = d.support_sets(&w);
        let letters: BTreeSet<usize> = w.word().iter().copied().collect();
        t.record(
            support == letters,
            || json!({"w": csv(w.word()), "property": "support"}),
        );

        let roots = d.inversion_roots(w.word()).map_err(internal)?;
        let span = IntLattice::from_i64(r, &roots.iter().map(|b| b.0.clone()).collect::<Vec<_>>());
        t.record(
            span == IntLattice::coordinate(r, &support),
            || json!({"w": csv(w.word()), "property": "root span"}),
        );

        let sym = d.sym_d();
        let rows: Vec<Vec<i64>> = roots
            .iter()
            .map(|b| (0..r).map(|j| b.0[j] * sym[j]).collect())
            .collect();
        let perp = if rows.is_empty() {
            IntLattice::full(r)
        } else {
            kernel_lattice(&rows, r)
        };
        t.record(
            perp == IntLattice::coordinate(r, &fixed),
            || json!({"w": csv(w.word()), "property": "orthogonal complement"}),
        );
    }
    Ok(())
}

fn check_kappa(cfg: &VerifyConfig, t: &mut Tally) -> Result<(), CliError> {
    let d = &cfg.datum;
    let r = d.rank();
    for w in group(cfg)? {
        let k = kappa_lattice(d, &w);
        let (support, fixed) = d.support_sets(&w);
        t.record(
            k.rank() == m_of_w(d, &w),
            || json!({"w": csv(w.word()), "property": "rank K(w) = m(w)"}),
        );
        t.record(
            k.is_sublattice_of(&IntLattice::coordinate(r, &support)),
            || json!({"w": csv(w.word()), "property": "K(w) in P_S"}),
        );
        let pi = IntLattice::coordinate(r, &fixed);
        let ok = k
            .basis_weights()
            .iter()
            .all(|mu| pi.contains_i64(&w.apply(mu).add(mu).0));
        t.record(ok, || json!({"w": csv(w.word()), "property": "(w+1)K(w) in P_I"}));
    }
    Ok(())
}

/// `L̃(w) = P_I ⊕ L̃_red(w)` for every pair.
fn check_lattices(cfg: &VerifyConfig, t: &mut Tally) -> Result<(), CliError> {
    let d = &cfg.datum;
    let g = group(cfg)?;
    for a in &g {
        for b in &g {
            let (_, fixed) = pair_support_sets(d, a, b);
            let full = ltilde(d, a, b);
            let red = ltilde_red(d, a, b);
            let pi = IntLattice::coordinate(d.rank(), &fixed);
            let ok = red.sum(&pi) == full && red.rank() + pi.rank() == full.rank();
            t.record(ok, || json!({"w_plus": csv(a.word()), "w_minus": csv(b.word())}));
        }
    }
    Ok(())
}

fn check_pbw(cfg: &VerifyConfig, t: &mut Tally) -> Result<(), CliError> {
    for ctx in contexts(cfg)? {
        for gamma in degrees_up_to(&ctx, cfg.height) {
            let p = ctx.piece(&gamma).map_err(internal)?;
            t.record(
                p.is_independent(),
                || json!({"context": ctx_label(&ctx), "degree": gamma, "monomials": p.monomials.len(), "rank": p.rank}),
            );
        }
    }
    Ok(())
}

fn braid_order(d: &CartanDatum, i: usize, j: usize) -> usize {
    match d.c(i, j) * d.c(j, i) {
        0 => 2,
        1 => 3,
        2 => 4,
        _ => 6,
    }
}

fn check_braid(cfg: &VerifyConfig, t: &mut Tally) -> Result<(), CliError> {
    let d = &cfg.datum;
    let sys = RewriteSystem::new(d.clone(), cfg.degree_cap);
    let r = d.rank();
    for i in 0..r {
        for j in i + 1..r {
            let m = braid_order(d, i, j);
            let a: Vec<usize> = (0..m).map(|s| if s % 2 == 0 { i } else { j }).collect();
            let b: Vec<usize> = (0..m).map(|s| if s % 2 == 0 { j } else { i }).collect();
            for k in 0..r {
                for x in [NCPoly::e(k), NCPoly::f(k), NCPoly::k(k)] {
                    let lhs = sys.braid_word(&a, &x).map_err(internal)?;
                    let rhs = sys.braid_word(&b, &x).map_err(internal)?;
                    t.record(
                        lhs == rhs,
                        || json!({"i": i + 1, "j": j + 1, "generator": x.to_string()}),
                    );
                }
            }
        }
    }
    Ok(())
}

/// The straightening of `X_i X_j` involves only `X_{i+1}, ..., X_{j-1}`.
fn check_ls_support(cfg: &VerifyConfig, t: &mut Tally) -> Result<(), CliError> {
    for ctx in contexts(cfg)? {
        for i in 0..ctx.len() {
            for j in i + 1..ctx.len() {
                let rel = ctx.ls_relation(i, j).map_err(internal)?;
                let ok = rel
                    .terms()
                    .all(|(n, _)| n.iter().enumerate().all(|(k, &e)| e == 0 || (i < k && k < j)));
                t.record(
                    ok,
                    || json!({"context": ctx_label(&ctx), "pair": [i + 1, j + 1], "relation": rel.render()}),
                );
            }
        }
    }
    Ok(())
}

/// Highest term of `X^n X^n'` is a pure q-power times `X^{n+n'}`.
fn check_highest_term(cfg: &VerifyConfig, t: &mut Tally) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for ctx in contexts(cfg)? {
        let heights: Vec<u32> = ctx.betas().iter().map(|b| b.height() as u32).collect();
        let mut done = 0;
        while done < cfg.samples {
            let mut draw = || -> Vec<u32> { (0..ctx.len()).map(|_| rng.gen_range(0..=2)).collect() };
            let (a, b) = (draw(), draw());
            let h: u32 = a.iter().zip(&b).zip(&heights).map(|((x, y), z)| (x + y) * z).sum();
            if h > cfg.height + 2 {
                continue;
            }
            done += 1;
            let m = ctx.highest_term_exponent(&a, &b).map_err(internal)?;
            t.record(m.is_some(), || json!({"context": ctx_label(&ctx), "n": a, "n2": b}));
        }
    }
    Ok(())
}

fn check_delta(cfg: &VerifyConfig, t: &mut Tally) -> Result<(), CliError> {
    for w in words(cfg)? {
        let ds = DeltaSet::new(&w);
        let res = ds.check_box(4);
        t.record(res.is_ok(), || json!({"word": csv(&w), "point": res.clone().err()}));
    }
    Ok(())
}

fn check_normal(cfg: &VerifyConfig, t: &mut Tally) -> Result<(), CliError> {
    for ctx in contexts(cfg)? {
        let rep = classify_normals(&ctx, cfg.height, cfg.margin).map_err(internal)?;
        for d in &rep.degrees {
            t.record(
                d.ok,
                || json!({"context": ctx_label(&ctx), "finding": d.finding.to_json()}),
            );
        }
        for (lam, ok) in &rep.products {
            t.record(*ok, || json!({"context": ctx_label(&ctx), "product": lam.0}));
        }
        for c in &rep.commutations {
            t.record(c.ok, || {
                json!({"context": ctx_label(&ctx), "pair": [c.i + 1, c.j + 1], "expected": c.expected, "observed": c.observed})
            });
        }
        for l in &rep.leads {
            t.record(l.ok, || {
                json!({"context": ctx_label(&ctx), "lambda": l.lambda.0, "expected": l.expected, "observed": l.observed})
            });
        }
    }
    Ok(())
}

fn check_separation(cfg: &VerifyConfig, t: &mut Tally) -> Result<(), CliError> {
    for ctx in contexts(cfg)? {
        let rep = separation_check(&ctx, cfg.height).map_err(internal)?;
        for p in &rep.pieces {
            t.record(
                p.rank == p.monomials,
                || json!({"context": ctx_label(&ctx), "degree": p.degree, "monomials": p.monomials, "rank": p.rank}),
            );
        }
        for l in &rep.leads {
            t.record(
                l.ok,
                || json!({"context": ctx_label(&ctx), "lambda": l.lambda.0, "observed": l.observed}),
            );
        }
    }
    Ok(())
}

fn check_center(cfg: &VerifyConfig, t: &mut Tally) -> Result<(), CliError> {
    for ctx in contexts(cfg)? {
        let rep = find_central(&ctx, cfg.height).map_err(internal)?;
        t.record(
            rep.ok(),
            || json!({"context": ctx_label(&ctx), "report": rep.to_json()}),
        );
    }
    Ok(())
}

fn check_center_torus(cfg: &VerifyConfig, t: &mut Tally) -> Result<(), CliError> {
    let d = &cfg.datum;
    let g = group(cfg)?;
    for a in &g {
        for b in &g {
            let rep = PairReport::new(d, a, b).map_err(internal)?;
            t.record(rep.ok(), || rep.to_json());
        }
    }
    Ok(())
}

pub fn run_check(name: &str, cfg: &VerifyConfig) -> Result<CheckResult, CliError> {
    let start = Instant::now();
    let mut t = Tally::default();
    match name {
        "roots" => check_roots(cfg, &mut t)?,
        "kappa" => check_kappa(cfg, &mut t)?,
        "lattices" => check_lattices(cfg, &mut t)?,
        "pbw" => check_pbw(cfg, &mut t)?,
        "braid" => check_braid(cfg, &mut t)?,
        "ls-support" => check_ls_support(cfg, &mut t)?,
        "highest-term" => check_highest_term(cfg, &mut t)?,
        "delta" => check_delta(cfg, &mut t)?,
        "normal" => check_normal(cfg, &mut t)?,
        "separation" => check_separation(cfg, &mut t)?,
        "center" => check_center(cfg, &mut t)?,
        "center-torus" => check_center_torus(cfg, &mut t)?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown check '{other}'; known: {}",
                CHECKS.join(", ")
            )))
        }
    }
    Ok(CheckResult {
        name: name.to_string(),
        instances: t.instances,
        failures: t.failures,
        witnesses: t.witnesses,
        millis: start.elapsed().as_millis(),
    })
}

/// Runs the named checks (all applicable ones if empty).
pub fn run(cfg: &VerifyConfig, names: &[String]) -> Result<Vec<CheckResult>, CliError> {
    let selected: Vec<&str> = if names.is_empty() {
        CHECKS
            .iter()
            .copied()
            .filter(|c| cfg.word.is_none() || !GROUP_ONLY.contains(c))
            .collect()
    } else {
        names.iter().map(String::as_str).collect()
    };
    selected.into_iter().map(|n| run_check(n, cfg)).collect()
}

pub fn ledger_json(cfg: &VerifyConfig, results: &[CheckResult]) -> Value {
    json!({
        "datum": cfg.datum.name(),
        "word": cfg.word.as_ref().map(|w| csv(w)),
        "height": cfg.height,
        "degree_cap": cfg.degree_cap,
        "margin": cfg.margin,
        "ok": results.iter().all(CheckResult::passed),
        "checks": results.iter().map(CheckResult::to_json).collect::<Vec<_>>(),
    })
}

pub fn ledger_text(results: &[CheckResult]) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&format!(
            "{:<12} {:>6} instances  {:>4} failed  {:>8} ms  {}\n",
            r.name,
            r.instances,
            r.failures,
            r.millis,
            if r.passed() { "PASS" } else { "FAIL" }
        ));
    }
    out
}
