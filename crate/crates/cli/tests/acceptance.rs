//! Acceptance run: one PASS/FAIL line per criterion with its time budget.
//! All comparisons are exact; the only tolerances are wall-clock budgets.

use std::process::Command;
use std::time::{Duration, Instant};

use qcells_cli::verify::{run_check, VerifyConfig};
use qcells_core::lattices::kappa_lattice;
use qcells_core::rootsys::WeylElement;
use qcells_core::{CartanDatum, IntLattice};

type Outcome = Result<String, String>;

fn datum(s: &str) -> CartanDatum {
    s.parse().unwrap()
}

fn config(d: &str, height: u32) -> VerifyConfig {
    let mut c = VerifyConfig::new(datum(d));
    c.height = height;
    c
}

fn checks(cfg: &VerifyConfig, names: &[&str]) -> Outcome {
    let mut summary = Vec::new();
    for n in names {
        let r = run_check(n, cfg).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!(
                "{} {}: {} of {} failed, first {:?}",
                cfg.datum.name(),
                n,
                r.failures,
                r.instances,
                r.witnesses.first()
            ));
        }
        summary.push(format!("{} {}={}", cfg.datum.name(), n, r.instances));
    }
    Ok(summary.join(" "))
}

fn all(parts: Vec<Outcome>) -> Outcome {
    let mut out = Vec::new();
    for p in parts {
        out.push(p?);
    }
    Ok(out.join("; "))
}

/// Rank of an integer matrix by fraction-free elimination.
fn int_rank(mut m: Vec<Vec<i128>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            let (a, b) = (m[rank][c], m[r][c]);
            for k in 0..cols {
                m[r][k] = m[r][k] * a - m[rank][k] * b;
            }
        }
        rank += 1;
    }
    rank
}

fn kernel_dim_w_plus_1(w: &WeylElement) -> usize {
    let m = w.matrix();
    let n = m.len();
    let rows: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| m[i][j] as i128 + i128::from(i == j)).collect())
        .collect();
    n - int_rank(rows)
}

fn c1_roots() -> Outcome {
    all(["A2", "B2", "A3"]
        .iter()
        .map(|d| checks(&config(d, 6), &["roots"]))
        .collect())
}

fn c2_kappa() -> Outcome {
    let a2 = datum("A2");
    let s1 = a2.reduced_element(&[0]).unwrap();
    let k = kappa_lattice(&a2, &s1);
    let expected = IntLattice::from_i64(2, &[vec![1, 0]]);
    if k != expected {
        return Err(format!("K(s1) in A2 is {k}, expected Z(w1)"));
    }
    if kernel_dim_w_plus_1(&s1) != 1 {
        return Err("dim ker(s1 + 1) != 1".into());
    }
    let mut count = 0;
    for d in ["A2", "B2", "A3"] {
        let dd = datum(d);
        for w in dd.weyl_group().unwrap() {
            let r = kappa_lattice(&dd, &w).rank();
            let m = kernel_dim_w_plus_1(&w);
            if r != m {
                return Err(format!("{d} w={}: rank K = {r}, dim ker(w+1) = {m}", w.word_string()));
            }
            count += 1;
        }
    }
    let suite = all(["A2", "B2", "A3"]
        .iter()
        .map(|d| checks(&config(d, 6), &["kappa"]))
        .collect())?;
    Ok(format!("K(s1)=Z(w1), m=1; {count} elements; {suite}"))
}

fn c3_pbw() -> Outcome {
    all(["A2", "B2"]
        .iter()
        .map(|d| checks(&config(d, 6), &["pbw", "braid"]))
        .collect())
}

fn c4_ls() -> Outcome {
    let mut parts = Vec::new();
    for (d, w) in [("A2", vec![0, 1, 0]), ("B2", vec![0, 1, 0, 1])] {
        let mut cfg = config(d, 6);
        cfg.word = Some(w);
        cfg.samples = 50;
        parts.push(checks(&cfg, &["ls-support", "highest-term"]));
    }
    all(parts)
}

fn c5_normal() -> Outcome {
    let a2 = config("A2", 6);
    let mut b2 = config("B2", 5);
    b2.max_length = Some(3);
    all(vec![checks(&a2, &["normal"]), checks(&b2, &["normal"])])
}

fn c6_separation() -> Outcome {
    let a2 = config("A2", 6);
    let mut b2 = config("B2", 5);
    b2.max_length = Some(3);
    all(vec![
        checks(&a2, &["separation", "delta"]),
        checks(&b2, &["separation", "delta"]),
    ])
}

fn c7_center() -> Outcome {
    checks(&config("A2", 6), &["center"])
}

fn c8_center_torus() -> Outcome {
    all(["A2", "B2"]
        .iter()
        .map(|d| checks(&config(d, 6), &["center-torus"]))
        .collect())
}

fn qcells(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qcells"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("qcells {:?} exited with {}", args, out.status));
    }
    Ok(out.stdout)
}

fn c9_determinism() -> Outcome {
    let first = qcells(&["report", "--type", "A2", "--all-pairs"])?;
    let second = qcells(&["report", "--type", "A2", "--all-pairs"])?;
    if first != second {
        return Err("all-pairs report differs between runs".into());
    }
    let golden = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");
    for (file, wp, wm) in [
        ("a2_s1_s1.json", "1", "1"),
        ("a2_w0_w0.json", "1,2,1", "1,2,1"),
        ("a2_e_e.json", "", ""),
    ] {
        let got = qcells(&["report", "--type", "A2", "--wplus", wp, "--wminus", wm])?;
        let want = std::fs::read(format!("{golden}/{file}")).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("{file} does not match"));
        }
    }
    let w0: serde_json::Value =
        serde_json::from_slice(&std::fs::read(format!("{golden}/a2_w0_w0.json")).unwrap()).unwrap();
    if w0["stabilizer"]["divisors"] != serde_json::json!([2, 2]) {
        return Err(format!("(w0,w0) divisors {}", w0["stabilizer"]["divisors"]));
    }
    Ok(format!("{} bytes identical; 3 golden files match", first.len()))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        ("1 root/lattice suite", Duration::from_secs(5), c1_roots),
        ("2 K(w) and m(w)", Duration::from_secs(5), c2_kappa),
        ("3 PBW bases and braid relations", Duration::from_secs(120), c3_pbw),
        (
            "4 straightening support and highest terms",
            Duration::from_secs(120),
            c4_ls,
        ),
        ("5 normal element classification", Duration::from_secs(300), c5_normal),
        ("6 separation of variables", Duration::from_secs(300), c6_separation),
        ("7 center", Duration::from_secs(300), c7_center),
        (
            "8 center generators in the torus",
            Duration::from_secs(10),
            c8_center_torus,
        ),
        (
            "9 report determinism and golden files",
            Duration::from_secs(60),
            c9_determinism,
        ),
    ];
    let mut failed = 0;
    for (name, budget, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let (status, detail) = match (&outcome, took <= budget) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over budget: {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {name:<45} {status}  {:>8.3}s / {:>4}s  {detail}",
            took.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
