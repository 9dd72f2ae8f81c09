//! The fifteen acceptance criteria. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;

use mtk_core::constructions::{ab_complex, binomial, canned, md_lower_complex};
use mtk_core::matroid::matdim_exact;
use mtk_core::polytopes::{hyper_numbers, matroidal_numbers, member, ratio, PolytopeRef};
use mtk_core::rational::{format_rational, int, rat};
use mtk_core::topology::{delta_r, expansions};
use mtk_core::verify::{run_suite, SuiteConfig, Verdict, VerificationRecord};
use mtk_core::{ExtRational, RatVec, Result};

const SEED: u64 = 1;

struct Outcome {
    pass: bool,
    detail: String,
}

fn params(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn holds(records: &[VerificationRecord], claim: &str) -> usize {
    records.iter().filter(|r| r.claim == claim && r.verdict == Verdict::Holds).count()
}

/// Runs a suite and requires no violations plus a minimum number of holding
/// records per listed claim.
fn suite(name: &str, required: &[(&str, usize)]) -> Result<Outcome> {
    let records = run_suite(name, &SuiteConfig::with_seed(SEED))?;
    let violated = records.iter().filter(|r| r.violated()).count();
    let skipped = records.iter().filter(|r| matches!(r.verdict, Verdict::Skipped(_))).count();
    let mut pass = violated == 0;
    let mut parts = Vec::new();
    for &(claim, min) in required {
        let h = holds(&records, claim);
        pass &= h >= min;
        parts.push(format!("{claim} {h}/{min}"));
    }
    parts.push(format!("{violated} violated, {skipped} skipped"));
    Ok(Outcome { pass, detail: parts.join("; ") })
}

fn c1() -> Result<Outcome> {
    let inst = canned("q_k", &params(&[("q", 3)]))?;
    let c = inst.complex.as_ref().unwrap();
    let l = inst.matroids.as_ref().unwrap();
    let delta_eta = expansions(c, None)?.delta_eta;
    let mut max_dr = ExtRational::zero();
    for m in l.matroids() {
        max_dr = max_dr.max(delta_r(&m.to_complex()?)?);
    }
    let pass = delta_eta == ExtRational::Finite(int(9))
        && max_dr == ExtRational::Finite(int(3))
        && l.k() == 3;
    Ok(Outcome { pass, detail: format!("Δ_η(M(Q_3)) = {delta_eta}, max Δ_r(M_i) = {max_dr}, k = {}", l.k()) })
}

fn c2() -> Result<Outcome> {
    let inst = canned("truncated_plane", &params(&[("q", 2)]))?;
    let h = inst.hypergraph.as_ref().unwrap();
    let l = inst.matroids.as_ref().unwrap();
    let hn = hyper_numbers(h, &RatVec::ones(h.num_edges()))?;
    let mn = matroidal_numbers(l, &RatVec::ones(l.n()))?;
    let r = ratio(&PolytopeRef::R(l.clone()), &PolytopeRef::P(l.intersection()?))?;
    let expect = [int(1), int(2), int(2), int(2)];
    let pass = [hn.nu.clone(), hn.nu_star.clone(), hn.tau_star.clone(), hn.tau.clone()] == expect
        && [mn.nu.clone(), mn.nu_star.clone(), mn.tau_star.clone(), mn.tau.clone()] == expect
        && r == ExtRational::Finite(int(2));
    Ok(Outcome {
        pass,
        detail: format!(
            "hypergraph ν,ν*,τ*,τ = {},{},{},{}; matroidal = {},{},{},{}; R:P = {r}",
            hn.nu, hn.nu_star, hn.tau_star, hn.tau, mn.nu, mn.nu_star, mn.tau_star, mn.tau
        ),
    })
}

fn c12() -> Result<Outcome> {
    let lam = canned("lambdaPnotQ", &params(&[("k", 4)]))?;
    let c = lam.complex.clone().unwrap();
    let v = lam.weights.w.clone().unwrap();
    let vv = v.dot(&v);
    let lam_ok = vv == rat(13, 12) && member(&PolytopeRef::Q(c.clone()), &v)? && !member(&PolytopeRef::P(c), &v)?;
    let part = canned("PnotQpartition", &params(&[]))?;
    let c = part.complex.clone().unwrap();
    let w = part.weights.w.clone().unwrap();
    let part_ok = member(&PolytopeRef::Q(c.clone()), &w)? && !member(&PolytopeRef::P(c), &w)?;
    Ok(Outcome {
        pass: lam_ok && part_ok,
        detail: format!("v·v = {}, lambda witness ok: {lam_ok}, partition witness ok: {part_ok}", format_rational(&vv)),
    })
}

fn c13() -> Result<Outcome> {
    let ab = matdim_exact(&ab_complex(1, 3)?)?;
    let md = matdim_exact(&md_lower_complex(4)?)?;
    let upper = suite("matdim", &[("complement-upper-bound", 1)])?;
    let pass = ab == 3 && md == 3 && md == binomial(3, 2) && upper.pass;
    Ok(Outcome { pass, detail: format!("matdim(ab, m=3) = {ab}, matdim(md_lower n=4) = {md}; {}", upper.detail) })
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Box<dyn Fn() -> Result<Outcome>>)> = vec![
        ("Q_3 expansion sharpness", Box::new(c1)),
        ("truncated plane T_3 numbers and R:P", Box::new(c2)),
        (
            "Edmonds intersection for k = 2",
            Box::new(|| {
                suite(
                    "edmonds-k2",
                    &[("intersection-polytope-membership", 200), ("intersection-fractional-chromatic-max", 200)],
                )
            }),
        ),
        ("matroid connectivity catalog", Box::new(|| suite("whitney", &[("matroid-connectivity-is-rank", 1000)]))),
        (
            "matroid chromatic formulas",
            Box::new(|| {
                suite(
                    "williams",
                    &[("matroid-chromatic-number-formula", 100), ("matroid-fractional-chromatic-is-expansion", 100)],
                )
            }),
        ),
        (
            "edge domination and deletion-contraction bounds",
            Box::new(|| {
                suite(
                    "meshulam",
                    &[
                        ("graph-edge-domination-bound", 500),
                        ("hypergraph-edge-domination-bound", 200),
                        ("edge-deletion-contraction-bound", 600),
                    ],
                )
            }),
        ),
        ("matching complex connectivity", Box::new(|| suite("abm", &[("matching-complex-connectivity", 200)]))),
        (
            "list chromatic bounds",
            Box::new(|| {
                suite(
                    "list-coloring",
                    &[
                        ("list-chromatic-le-k-chromatic", 1),
                        ("list-chromatic-le-(2k-1)-max-matroid-chromatic", 1),
                        ("partition-list-chromatic-le-k-max-matroid-chromatic", 1),
                    ],
                )
            }),
        ),
        (
            "list coloring by matroid intersection",
            Box::new(|| {
                suite(
                    "seymour",
                    &[("list-colorable-under-class-hypothesis", 100), ("obstruction-violates-rank-condition", 1)],
                )
            }),
        ),
        (
            "matroidal LP duality chain",
            Box::new(|| {
                suite(
                    "lp-duality",
                    &[
                        ("matching-le-fractional-matching", 200),
                        ("fractional-matching-eq-fractional-cover", 200),
                        ("fractional-cover-le-cover", 200),
                        ("fractional-cover-le-k-matching", 200),
                        ("partition-fractional-cover-le-(k-1)-matching", 1),
                    ],
                )
            }),
        ),
        (
            "k-partite matching bounds and fractional width",
            Box::new(|| {
                suite(
                    "furedi",
                    &[
                        ("k-partite-fractional-matching-le-(k-1)-matching", 200),
                        ("k-partite-weighted-fractional-matching-le-(k-1)-matching", 200),
                        ("fractional-width-ge-fractional-matching-over-k", 200),
                    ],
                )
            }),
        ),
        ("points in Q outside P", Box::new(c12)),
        ("matroidal dimension", Box::new(c13)),
        (
            "R:Q ratio consistency",
            Box::new(|| {
                suite(
                    "ratio-rq",
                    &[("vertex-gauge-equals-matching-ratio", 50), ("three-matroid-ratio-R-Q-le-2", 1)],
                )
            }),
        ),
        (
            "(a,b)-coloring spot checks",
            Box::new(|| {
                suite(
                    "ab-coloring",
                    &[("ab-colorable-bounds-fractional-chromatic", 20), ("ab-choosable-implies-colorable", 20)],
                )
            }),
        ),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (pass, detail) = match run() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!("criterion {:>2} {}: {name} ({detail})", i + 1, if pass { "PASS" } else { "FAIL" });
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
