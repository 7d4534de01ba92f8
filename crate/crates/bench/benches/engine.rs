use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qcells_bench::{context, datum};
use qcells_core::normalia::{classify_normals, find_normal};
use qcells_core::spectra::PairReport;
use qcells_core::{NCPoly, RewriteSystem, Sign};

fn normal_form(c: &mut Criterion) {
    let mut g = c.benchmark_group("normal_form");
    for name in ["A2", "B2", "G2"] {
        g.bench_function(name, |b| {
            b.iter(|| {
                // Fresh system each time: measures the Serre tables too.
                let sys = RewriteSystem::new(datum(name), 12);
                let x = [NCPoly::e(1), NCPoly::e(0), NCPoly::e(0), NCPoly::e(1), NCPoly::e(0)];
                x.iter().fold(NCPoly::one(), |acc, f| sys.multiply(&acc, f).unwrap())
            })
        });
    }
    g.finish();
}

fn pbw_pieces(c: &mut Criterion) {
    let mut g = c.benchmark_group("pbw_pieces");
    g.sample_size(10);
    for (name, word) in [("A2", vec![0, 1, 0]), ("B2", vec![0, 1, 0, 1])] {
        g.bench_with_input(BenchmarkId::new(name, "box3"), &word, |b, word| {
            b.iter(|| {
                let ctx = context(name, word, Sign::Plus);
                for a in 0..=3u32 {
                    for k in 0..=3u32 {
                        ctx.piece(&[a, k]).unwrap();
                    }
                }
            })
        });
    }
    g.finish();
}

fn normals(c: &mut Criterion) {
    let mut g = c.benchmark_group("normals");
    g.sample_size(10);
    g.bench_function("find_normal A2 w0 (2,2)", |b| {
        b.iter(|| find_normal(&context("A2", &[0, 1, 0], Sign::Plus), &[2, 2], 2).unwrap())
    });
    g.bench_function("classify A2 w0 h5", |b| {
        b.iter(|| classify_normals(&context("A2", &[0, 1, 0], Sign::Minus), 5, 2).unwrap())
    });
    g.finish();
}

fn pair_reports(c: &mut Criterion) {
    let d = datum("B2");
    let group = d.weyl_group().unwrap();
    c.bench_function("pair reports B2", |b| {
        b.iter(|| {
            for x in &group {
                for y in &group {
                    PairReport::new(&d, x, y).unwrap();
                }
            }
        })
    });
}

criterion_group!(benches, normal_form, pbw_pieces, normals, pair_reports);
criterion_main!(benches);
