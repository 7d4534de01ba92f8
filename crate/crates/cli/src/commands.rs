//! Targeted computations behind the `report`, `normal`, `ls` and `center`
//! subcommands. Each returns rendered output plus a pass flag.

use std::sync::Arc;

use serde_json::{json, Value};

use qcells_core::ncengine::render_monomial;
use qcells_core::normalia::{find_central, find_normal, j1_generators};
use qcells_core::rootsys::{word_csv, CartanDatum, RootVec, WeylElement};
use qcells_core::spectra::{max_spectrum_report, stratification_summary, stratification_table, PairReport};
use qcells_core::{PBWContext, RewriteSystem, Sign};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub body: String,
    pub ok: bool,
}

impl Output {
    fn json(v: &Value, ok: bool) -> Self {
        let mut body = serde_json::to_string_pretty(v).expect("json values serialize");
        body.push('\n');
        Output { body, ok }
    }

    fn render(v: &Value, text: impl FnOnce() -> String, fmt: Format, ok: bool) -> Self {
        match fmt {
            Format::Json => Output::json(v, ok),
            Format::Text => Output { body: text(), ok },
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn failure(e: impl std::fmt::Display) -> CliError {
    CliError::Failure(e.to_string())
}

pub fn parse_datum(s: &str) -> Result<CartanDatum, CliError> {
    s.parse().map_err(usage)
}

/// Parses a 1-based word (or `w0`) and insists that it is reduced.
pub fn parse_reduced(datum: &CartanDatum, s: &str) -> Result<(Vec<usize>, WeylElement), CliError> {
    let word = if s.trim() == "w0" {
        datum.longest_element().word().to_vec()
    } else {
        datum.parse_word(s).map_err(usage)?
    };
    let w = datum.reduced_element(&word).map_err(usage)?;
    Ok((word, w))
}

fn context(datum: &CartanDatum, word: &[usize], sign: Sign, cap: usize) -> Result<PBWContext, CliError> {
    let sys = Arc::new(RewriteSystem::new(datum.clone(), cap));
    PBWContext::new(sys, word, sign).map_err(usage)
}

pub fn report_pair(datum: &CartanDatum, w_plus: &str, w_minus: &str, fmt: Format) -> Result<Output, CliError> {
    let (_, wp) = parse_reduced(datum, w_plus)?;
    let (_, wm) = parse_reduced(datum, w_minus)?;
    let rep = PairReport::new(datum, &wp, &wm).map_err(failure)?;
    Ok(Output::render(&rep.to_json(), || rep.to_text(), fmt, rep.ok()))
}

/// Strata table over `W x W` with the per-pair checks and stabilizers.
pub fn report_all(datum: &CartanDatum, fmt: Format) -> Result<Output, CliError> {
    let rows = stratification_summary(datum).map_err(failure)?;
    let group = datum.weyl_group().map_err(failure)?;
    let mut pairs = Vec::new();
    let mut ok = true;
    for wp in &group {
        for wm in &group {
            let rep = PairReport::new(datum, wp, wm).map_err(failure)?;
            ok &= rep.ok();
            pairs.push(rep);
        }
    }
    let v = json!({
        "datum": datum.name(),
        "strata": rows.iter().zip(&pairs).map(|(row, rep)| {
            let mut r = row.to_json();
            let obj = r.as_object_mut().expect("row is an object");
            obj.insert("stabilizer".into(), rep.stabilizer.to_json());
            obj.insert("checks".into(), rep.to_json()["checks"].clone());
            r
        }).collect::<Vec<_>>(),
        "total_strata": rows.len(),
        "max_spectrum": max_spectrum_report(datum),
        "ok": ok,
    });
    let text = || {
        let mut t = stratification_table(&rows);
        let failing = pairs.iter().filter(|p| !p.ok()).count();
        t.push_str(&format!("failing pairs: {failing}\n"));
        t
    };
    Ok(Output::render(&v, text, fmt, ok))
}

#[derive(Debug, Clone)]
pub struct NormalArgs {
    pub word: String,
    pub degree: String,
    pub sign: Sign,
    pub margin: i64,
    pub degree_cap: usize,
}

pub fn normal(datum: &CartanDatum, args: &NormalArgs, fmt: Format) -> Result<Output, CliError> {
    let (word, _) = parse_reduced(datum, &args.word)?;
    let ctx = context(datum, &word, args.sign, args.degree_cap)?;
    let root = RootVec::parse(&args.degree, datum.rank())
        .filter(|r| r.is_nonnegative())
        .ok_or_else(|| usage(format!("cannot parse degree '{}'", args.degree)))?;
    let gamma: Vec<u32> = root.0.iter().map(|&c| c as u32).collect();
    let f = find_normal(&ctx, &gamma, args.margin).map_err(failure)?;
    let mut v = f.to_json();
    v["word"] = json!(word_csv(&word));
    v["sign"] = json!(args.sign.symbol());
    v["datum"] = json!(datum.name());
    let text = || {
        let mut t = format!(
            "degree {} in U^[{}]{}: dimension {}\n",
            root,
            word_csv(&word),
            args.sign.symbol(),
            f.dimension()
        );
        for c in &f.components {
            t.push_str(&format!("  exponents {:?}\n", c.exponents));
            for b in &c.basis {
                t.push_str(&format!("    {}\n", b.render()));
            }
        }
        t
    };
    Ok(Output::render(&v, text, fmt, true))
}

pub fn ls(
    datum: &CartanDatum,
    word: &str,
    pair: &str,
    sign: Sign,
    cap: usize,
    fmt: Format,
) -> Result<Output, CliError> {
    let (word, _) = parse_reduced(datum, word)?;
    let ctx = context(datum, &word, sign, cap)?;
    let idx: Vec<usize> = pair
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("bad pair '{pair}'")))
        })
        .collect::<Result<_, _>>()?;
    let (i, j) = match idx[..] {
        [i, j] if 1 <= i && i < j && j <= ctx.len() => (i - 1, j - 1),
        _ => return Err(usage(format!("pair must be i,j with 1 <= i < j <= {}", ctx.len()))),
    };
    let rel = ctx.ls_relation(i, j).map_err(failure)?;
    let between = rel
        .terms()
        .all(|(n, _)| n.iter().enumerate().all(|(k, &e)| e == 0 || (i < k && k < j)));
    let lhs = format!(
        "X{}*X{} - q^({})*X{}*X{}",
        i + 1,
        j + 1,
        ctx.beta_inner(i, j),
        j + 1,
        i + 1
    );
    let v = json!({
        "datum": datum.name(),
        "word": word_csv(&word),
        "sign": sign.symbol(),
        "pair": [i + 1, j + 1],
        "beta_i": ctx.betas()[i].0,
        "beta_j": ctx.betas()[j].0,
        "lhs": lhs,
        "rhs": rel.render(),
        "terms": rel.to_json(),
        "supported_between": between,
    });
    let text = || {
        let mut t = format!("{lhs} = {}\n", rel.render());
        for (n, c) in rel.terms() {
            t.push_str(&format!("  {}  {}\n", render_monomial(n), c));
        }
        t
    };
    Ok(Output::render(&v, text, fmt, between))
}

pub fn center(
    datum: &CartanDatum,
    word: &str,
    signs: &[Sign],
    height: u32,
    cap: usize,
    fmt: Format,
) -> Result<Output, CliError> {
    let (word, w) = parse_reduced(datum, word)?;
    let mut reports = Vec::new();
    let mut ok = true;
    let mut text = String::new();
    for &sign in signs {
        let ctx = context(datum, &word, sign, cap)?;
        let rep = find_central(&ctx, height).map_err(failure)?;
        ok &= rep.ok();
        let label = format!("U^[{}]{}", word_csv(&word), sign.symbol());
        if rep.is_trivial() {
            text.push_str(&format!("{label}: trivial up to height {height}\n"));
        } else {
            for (g, basis) in rep.found.iter().filter(|(g, _)| g.iter().any(|&c| c > 0)) {
                for b in basis {
                    text.push_str(&format!("{label}: degree {:?}: {}\n", g, b.render()));
                }
            }
        }
        if !rep.ok() {
            text.push_str(&format!("{label}: does not match the K(w) prediction\n"));
        }
        let mut v = rep.to_json();
        v["sign"] = json!(sign.symbol());
        v["j1"] = j1_generators(datum, &w, sign).to_json();
        reports.push(v);
    }
    let v = json!({
        "datum": datum.name(),
        "word": word_csv(&word),
        "height": height,
        "reports": reports,
        "ok": ok,
    });
    Ok(Output::render(&v, || text, fmt, ok))
}
