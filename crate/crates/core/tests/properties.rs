use mtk_core::constructions::{assoc_hypergraph, assoc_matroids};
use mtk_core::instance::{emit_instance, parse_instance_str, Instance};
use mtk_core::polytopes::{hyper_nu, hyper_nu_star, hyper_tau, member, nu_star_w, psi, vertices, PolytopeRef};
use mtk_core::random;
use mtk_core::rational::int;
use mtk_core::topology::eta_h;
use mtk_core::verify::{run_suite, SuiteConfig};
use mtk_core::{Complex, ExtRational, RatVec, Rational, SubsetMask};
use num::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

/// Solves the square system `a x = b` exactly, `None` if singular.
fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Vertices as the feasible basic solutions of every `n`-subset of the rows
/// `x_v ≥ 0` and `x[S] ≤ r(S)`.
fn brute_vertices(n: usize, rank: &dyn Fn(SubsetMask) -> usize) -> Vec<RatVec> {
    let mut rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for v in 0..n {
        let mut a = vec![Rational::zero(); n];
        a[v] = int(-1);
        rows.push((a, Rational::zero()));
    }
    for bits in 1u64..(1 << n) {
        let s = SubsetMask(bits);
        let a = (0..n).map(|v| if s.contains(v) { int(1) } else { Rational::zero() }).collect();
        rows.push((a, int(rank(s) as i64)));
    }
    let feasible = |x: &[Rational]| {
        rows.iter().all(|(a, b)| a.iter().zip(x).fold(Rational::zero(), |acc, (p, q)| acc + p * q) <= *b)
    };
    let mut out: Vec<RatVec> = Vec::new();
    let m = rows.len();
    let mut pick: Vec<usize> = (0..n).collect();
    loop {
        let a = pick.iter().map(|&i| rows[i].0.clone()).collect();
        let b = pick.iter().map(|&i| rows[i].1.clone()).collect();
        if let Some(x) = solve(a, b) {
            if feasible(&x) && !out.iter().any(|y| y.0 == x) {
                out.push(RatVec(x));
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                out.sort_by(|a, b| a.0.cmp(&b.0));
                return out;
            }
            i -= 1;
            if pick[i] < m - n + i {
                break;
            }
        }
        pick[i] += 1;
        for j in i + 1..n {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

fn random_complex(seed: u64, n: usize) -> Complex {
    let mut rng = random::rng_for(seed, "complex", 0);
    let faces: Vec<SubsetMask> = (0..rng.gen_range(1..=4))
        .map(|_| (0..n).filter(|_| rng.gen_bool(0.5)).collect())
        .collect();
    Complex::new(n, faces).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn r_vertices_match_brute_force(seed in any::<u64>(), n in 1usize..=4, k in 1usize..=2) {
        let mut rng = random::rng_for(seed, "r-vertices", 0);
        let l = random::system(&mut rng, n, k, false);
        let expect = brute_vertices(n, &|s| l.min_rank(s));
        prop_assert_eq!(vertices(&PolytopeRef::R(l)).unwrap(), expect);
    }

    #[test]
    fn q_vertices_match_brute_force(seed in any::<u64>(), n in 1usize..=4) {
        let c = random_complex(seed, n);
        let expect = brute_vertices(n, &|s| c.rank_of(s));
        prop_assert_eq!(vertices(&PolytopeRef::Q(c)).unwrap(), expect);
    }

    #[test]
    fn q_gauge_agrees_with_membership(seed in any::<u64>(), n in 1usize..=5) {
        let c = random_complex(seed, n);
        let mut rng = random::rng_for(seed, "q-gauge", 0);
        let x = random::cube_point(&mut rng, n);
        let q = PolytopeRef::Q(c);
        let inside = psi(&q, &x).unwrap() <= ExtRational::Finite(int(1));
        prop_assert_eq!(inside, member(&q, &x).unwrap());
    }

    #[test]
    fn partition_system_and_hypergraph_share_fractional_matching(seed in any::<u64>(), k in 2usize..=3, m in 1usize..=8) {
        let mut rng = random::rng_for(seed, "kl", 0);
        let (h, sides) = random::k_partite(&mut rng, k, 3, m);
        let l = assoc_matroids(&h, &sides).unwrap();
        let w = random::weights(&mut rng, l.n(), 3);
        let (kl, index) = assoc_hypergraph(&l).unwrap();
        let mut we = vec![Rational::zero(); kl.num_edges()];
        for (e, &j) in index.iter().enumerate() {
            we[j] = w.0[e].clone();
        }
        let lhs = nu_star_w(&l, &w).unwrap().0;
        prop_assert_eq!(&lhs, &hyper_nu_star(&kl, &RatVec(we)).unwrap());
        prop_assert_eq!(lhs, hyper_nu_star(&h, &w).unwrap());
    }

    #[test]
    fn hypergraph_number_chain(seed in any::<u64>(), n in 2usize..=7, m in 1usize..=7) {
        let mut rng = random::rng_for(seed, "chain", 0);
        let h = random::hypergraph(&mut rng, n, m, 3);
        let w = random::weights(&mut rng, h.num_edges(), 3);
        let nu = hyper_nu(&h, &w).unwrap();
        let nu_star = hyper_nu_star(&h, &w).unwrap();
        let ones = RatVec::ones(h.num_edges());
        prop_assert!(nu <= nu_star);
        prop_assert!(hyper_nu_star(&h, &ones).unwrap() <= hyper_tau(&h, &ones).unwrap());
        prop_assert!(!nu_star.is_negative());
    }

    #[test]
    fn intersection_connectivity_at_least_rank_over_k(seed in any::<u64>(), n in 1usize..=6, k in 1usize..=3) {
        let mut rng = random::rng_for(seed, "mint", 0);
        let l = random::system(&mut rng, n, k, false);
        let c = l.intersection().unwrap();
        let bound = ExtRational::Finite(Rational::new((c.rank() as i64).into(), (k as i64).into()));
        prop_assert!(eta_h(&c).unwrap().to_ext_rational() >= bound);
    }

    #[test]
    fn instances_round_trip(seed in any::<u64>(), n in 1usize..=6, k in 1usize..=3) {
        let mut rng = random::rng_for(seed, "round-trip", 0);
        let l = random::system(&mut rng, n, k, false);
        let h = random::hypergraph(&mut rng, n, 4, 3);
        let inst = Instance::new("prop")
            .with_complex(l.intersection().unwrap())
            .with_matroids(l)
            .with_hypergraph(h)
            .with_h(random::weights(&mut rng, n, 5));
        let text = emit_instance(&inst).unwrap();
        let back = parse_instance_str(&text).unwrap();
        prop_assert_eq!(emit_instance(&back).unwrap(), text);
        prop_assert_eq!(&back.complex, &inst.complex);
        prop_assert_eq!(&back.hypergraph, &inst.hypergraph);
        let before = inst.matroids.as_ref().unwrap().matroids().iter().map(|m| m.to_complex().unwrap()).collect::<Vec<_>>();
        let after = back.matroids.as_ref().unwrap().matroids().iter().map(|m| m.to_complex().unwrap()).collect::<Vec<_>>();
        prop_assert_eq!(before, after);
    }
}

#[test]
fn suite_output_is_byte_identical_across_runs() {
    let cfg = SuiteConfig { seed: 42, samples: Some(8), ..Default::default() };
    for suite in ["lp-duality", "meshulam", "seymour"] {
        let a: Vec<String> = run_suite(suite, &cfg).unwrap().iter().map(|r| r.to_json_line()).collect();
        let b: Vec<String> = run_suite(suite, &cfg).unwrap().iter().map(|r| r.to_json_line()).collect();
        assert_eq!(a, b, "{suite}");
    }
}

#[test]
fn different_seeds_draw_different_instances() {
    let a = run_suite("lp-duality", &SuiteConfig { seed: 1, samples: Some(8), ..Default::default() }).unwrap();
    let b = run_suite("lp-duality", &SuiteConfig { seed: 2, samples: Some(8), ..Default::default() }).unwrap();
    assert_ne!(a.iter().map(|r| &r.instance).collect::<Vec<_>>(), b.iter().map(|r| &r.instance).collect::<Vec<_>>());
}

