use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qcells_core::ncengine::{NCPoly, PBWContext, PBWVector, RewriteSystem, Sign};
use qcells_core::qarith::RatFunc;
use qcells_core::rootsys::CartanDatum;

fn system(name: &str) -> Arc<RewriteSystem> {
    let d: CartanDatum = name.parse().unwrap();
    Arc::new(RewriteSystem::new(d, 12))
}

/// `a + c b`.
fn combine(a: &NCPoly, c: &RatFunc, b: &NCPoly) -> NCPoly {
    let mut out = a.clone();
    for (w, x) in b.terms() {
        out.add_term(w.clone(), &(x.clone() * c));
    }
    out
}

fn product(sys: &RewriteSystem, factors: &[NCPoly]) -> NCPoly {
    factors
        .iter()
        .fold(NCPoly::one(), |acc, f| sys.multiply(&acc, f).unwrap())
}

#[test]
fn quantum_serre_relation_reduces_to_zero() {
    // E1^2 E2 - [2] E1 E2 E1 + E2 E1^2 with [2] = q + q^-1.
    let sys = system("A2");
    let (e1, e2) = (NCPoly::e(0), NCPoly::e(1));
    let q2 = RatFunc::q_pow(1) + RatFunc::q_pow(-1);
    let a = product(&sys, &[e1.clone(), e1.clone(), e2.clone()]);
    let b = product(&sys, &[e1.clone(), e2.clone(), e1.clone()]);
    let c = product(&sys, &[e2.clone(), e1.clone(), e1.clone()]);
    let s = combine(&combine(&a, &-q2, &b), &RatFunc::one(), &c);
    assert!(sys.normal_form(&s).unwrap().is_zero());
}

#[test]
fn a2_middle_root_vector_is_a_q_commutator() {
    // T_1(E_2) = E_1 E_2 - q^-1 E_2 E_1 for the word s1 s2 s1.
    let sys = system("A2");
    let ctx = PBWContext::new(sys.clone(), &[0, 1, 0], Sign::Plus).unwrap();
    let (e1, e2) = (NCPoly::e(0), NCPoly::e(1));
    let expected = combine(
        &sys.multiply(&e1, &e2).unwrap(),
        &-RatFunc::q_pow(-1),
        &sys.multiply(&e2, &e1).unwrap(),
    );
    let got = sys.normal_form(&ctx.root_vector_poly(1)).unwrap();
    assert_eq!(got, sys.normal_form(&expected).unwrap());
    assert_eq!(sys.normal_form(&ctx.root_vector_poly(0)).unwrap(), e1);
    assert_eq!(sys.normal_form(&ctx.root_vector_poly(2)).unwrap(), e2);
}

/// Number of ways to write `gamma` as a sum of positive roots (with repetition).
fn partitions(roots: &[Vec<u32>], gamma: &[u32]) -> u64 {
    fn go(roots: &[Vec<u32>], k: usize, rest: &mut Vec<u32>) -> u64 {
        if rest.iter().all(|&x| x == 0) {
            return 1;
        }
        if k == roots.len() {
            return 0;
        }
        let mut total = go(roots, k + 1, rest);
        let mut used = 0;
        while roots[k].iter().zip(rest.iter()).all(|(r, x)| r <= x) {
            for (x, r) in rest.iter_mut().zip(&roots[k]) {
                *x -= r;
            }
            used += 1;
            total += go(roots, k + 1, rest);
        }
        for (x, r) in rest.iter_mut().zip(&roots[k]) {
            *x += r * used;
        }
        total
    }
    go(roots, 0, &mut gamma.to_vec())
}

#[test]
fn longest_word_pieces_match_partition_counts() {
    let cases: [(&str, Vec<usize>, Vec<Vec<u32>>); 2] = [
        ("A2", vec![0, 1, 0], vec![vec![1, 0], vec![0, 1], vec![1, 1]]),
        (
            "B2",
            vec![0, 1, 0, 1],
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1], vec![1, 2]],
        ),
    ];
    for (name, word, all_roots) in cases {
        let sys = system(name);
        // Roots of B2 depend on which simple root is short; keep the ones the datum has.
        let roots: Vec<Vec<u32>> = all_roots
            .into_iter()
            .filter(|r| {
                sys.datum()
                    .positive_roots()
                    .iter()
                    .any(|p| p.0.iter().map(|&x| x as u32).eq(r.iter().copied()))
            })
            .collect();
        assert_eq!(roots.len(), word.len());
        for sign in [Sign::Plus, Sign::Minus] {
            let ctx = PBWContext::new(sys.clone(), &word, sign).unwrap();
            for a in 0..=5u32 {
                for b in 0..=5 - a {
                    let piece = ctx.piece(&[a, b]).unwrap();
                    assert!(piece.is_independent(), "{name} {sign:?} ({a},{b})");
                    assert_eq!(
                        piece.monomials.len() as u64,
                        partitions(&roots, &[a, b]),
                        "{name} ({a},{b})"
                    );
                }
            }
        }
    }
}

/// A random PBW monomial of height at most 3.
fn random_monomial(rng: &mut ChaCha8Rng, ctx: &PBWContext) -> PBWVector {
    loop {
        let n: Vec<u32> = (0..ctx.len()).map(|_| rng.gen_range(0..=1)).collect();
        let h: i64 = n.iter().zip(ctx.betas()).map(|(&e, b)| e as i64 * b.height()).sum();
        if h <= 3 {
            return PBWVector::unit(n);
        }
    }
}

#[test]
fn pbw_multiplication_is_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, word) in [("A2", vec![0, 1, 0]), ("B2", vec![0, 1, 0, 1])] {
        let sys = system(name);
        for sign in [Sign::Plus, Sign::Minus] {
            let ctx = PBWContext::new(sys.clone(), &word, sign).unwrap();
            for _ in 0..10 {
                let (a, b, c) = (
                    random_monomial(&mut rng, &ctx),
                    random_monomial(&mut rng, &ctx),
                    random_monomial(&mut rng, &ctx),
                );
                let left = ctx.pbw_multiply(&ctx.pbw_multiply(&a, &b).unwrap(), &c).unwrap();
                let right = ctx.pbw_multiply(&a, &ctx.pbw_multiply(&b, &c).unwrap()).unwrap();
                assert_eq!(left, right, "{name} {sign:?}");
            }
        }
    }
}

fn braid_order(d: &CartanDatum, i: usize, j: usize) -> usize {
    match d.c(i, j) * d.c(j, i) {
        0 => 2,
        1 => 3,
        2 => 4,
        _ => 6,
    }
}

#[test]
fn braid_relations_hold_on_generators() {
    for name in ["A2", "B2", "A3"] {
        let sys = system(name);
        let d = sys.datum().clone();
        for i in 0..d.rank() {
            for j in i + 1..d.rank() {
                let m = braid_order(&d, i, j);
                let a: Vec<usize> = (0..m).map(|t| if t % 2 == 0 { i } else { j }).collect();
                let b: Vec<usize> = (0..m).map(|t| if t % 2 == 0 { j } else { i }).collect();
                for k in 0..d.rank() {
                    for x in [NCPoly::e(k), NCPoly::f(k), NCPoly::k(k)] {
                        assert_eq!(
                            sys.braid_word(&a, &x).unwrap(),
                            sys.braid_word(&b, &x).unwrap(),
                            "{name} ({i},{j}) on {x}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn straightening_stays_between_the_pair() {
    let sys = system("B2");
    let ctx = PBWContext::new(sys, &[0, 1, 0, 1], Sign::Plus).unwrap();
    for i in 0..4 {
        for j in i + 1..4 {
            let rel = ctx.ls_relation(i, j).unwrap();
            for (n, _) in rel.terms() {
                assert!(
                    n.iter().enumerate().all(|(k, &e)| e == 0 || (i < k && k < j)),
                    "({i},{j}): {}",
                    rel.render()
                );
            }
        }
    }
}
