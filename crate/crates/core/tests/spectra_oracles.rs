use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use qcells_core::lattices::{big_l, ltilde};
use qcells_core::ncengine::Sign;
use qcells_core::rootsys::{CartanDatum, WeylElement};
use qcells_core::spectra::{build_lw, build_n, stabilizer, stratification_summary, torus_center, PairReport};

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

/// `dim ker(w+ - w-)` straight from the weight-lattice matrices.
fn kernel_dim(a: &WeylElement, b: &WeylElement) -> usize {
    let (x, y) = (a.matrix(), b.matrix());
    let n = x.len();
    let m: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| (x[i][j] - y[i][j]) as i128).collect())
        .collect();
    n - int_rank(m)
}

fn datum(s: &str) -> CartanDatum {
    s.parse().unwrap()
}

#[test]
fn a1_strata_dimensions() {
    let rows = stratification_summary(&datum("A1")).unwrap();
    let dims: Vec<(usize, usize, usize)> = rows
        .iter()
        .map(|r| (r.w_plus.len(), r.w_minus.len(), r.dimension))
        .collect();
    let mut expected = vec![(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)];
    let mut got = dims.clone();
    got.sort();
    expected.sort();
    assert_eq!(got, expected);
}

#[test]
fn center_dimension_is_kernel_dimension() {
    for name in ["A2", "B2", "G2"] {
        let d = datum(name);
        let g = d.weyl_group().unwrap();
        for a in &g {
            for b in &g {
                let rep = PairReport::new(&d, a, b).unwrap();
                assert!(rep.ok(), "{name} {:?}", rep.checks());
                assert_eq!(
                    rep.center.dimension,
                    kernel_dim(a, b),
                    "{name} ({}, {})",
                    a.word_string(),
                    b.word_string()
                );
                assert_eq!(ltilde(&d, a, b).rank(), kernel_dim(a, b));
            }
        }
    }
}

#[test]
fn center_generators_are_central_in_the_torus() {
    let d = datum("B2");
    let g = d.weyl_group().unwrap();
    for a in &g {
        for b in &g {
            let rep = PairReport::new(&d, a, b).unwrap();
            let lw = build_lw(&d, a, b).unwrap();
            let center = torus_center(&lw.torus);
            for gen in &rep.center.generators {
                assert!(lw.torus.is_central(&gen.exponent), "{}", gen.label);
                assert!(center.contains_i64(&gen.exponent));
            }
        }
    }
}

/// Smith divisors of a rank-2 lattice: `gcd` of entries, then `|det| / gcd`.
fn rank2_divisors(basis: &[Vec<i64>]) -> Vec<BigInt> {
    let entries: Vec<BigInt> = basis.iter().flatten().map(|&x| BigInt::from(x)).collect();
    let g = entries.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let det = BigInt::from(basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0]).abs();
    vec![g.clone(), det / g]
}

#[test]
fn stabilizer_depends_only_on_the_lattice() {
    for name in ["A2", "B2"] {
        let d = datum(name);
        let g = d.weyl_group().unwrap();
        for a in &g {
            for b in &g {
                let l = big_l(&d, a, b);
                let s = stabilizer(&d, a, b);
                assert_eq!(s, qcells_core::spectra::Stabilizer::from_lattice(l.clone()));
                if l.rank() == 2 {
                    assert_eq!(s.divisors, rank2_divisors(&l.basis_i64()));
                }
            }
        }
    }
}

#[test]
fn a2_named_pairs() {
    let d = datum("A2");
    let w0 = d.longest_element();
    let s1 = d.reduced_element(&[0]).unwrap();
    let e = d.identity();
    assert_eq!(
        stabilizer(&d, &w0, &w0).divisors,
        vec![BigInt::from(2), BigInt::from(2)]
    );
    assert_eq!(
        stabilizer(&d, &s1, &s1).equations(),
        vec!["t1^2 = 1".to_string(), "t2 = 1".to_string()]
    );
    let rep = PairReport::new(&d, &s1, &s1).unwrap();
    assert_eq!(rep.center.fixed.iter().copied().collect::<Vec<_>>(), vec![1]);
    assert_eq!(rep.leaf.k, 1);
    assert_eq!(PairReport::new(&d, &e, &e).unwrap().center.dimension, 2);
}

#[test]
fn n_tori_are_antisymmetric_and_vanish_on_fixed_indices() {
    let d = datum("B2");
    for w in d.weyl_group().unwrap() {
        let (_, fixed) = d.support_sets(&w);
        for sign in [Sign::Plus, Sign::Minus] {
            let t = build_n(&d, &w, sign).unwrap();
            let m = t.exponents();
            for i in 0..m.len() {
                for j in 0..m.len() {
                    assert_eq!(m[i][j], -m[j][i]);
                }
            }
            // Rows are indexed by S(w); the fixed set never appears.
            assert_eq!(m.len(), d.rank() - fixed.len());
        }
    }
}
