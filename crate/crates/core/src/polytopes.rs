//! The polytopes `P(C) ⊆ Q(C) ⊆ R(L)`: membership, gauges, vertices and
//! ratios, plus the weighted matching and covering numbers of matroid
//! systems and hypergraphs.

use std::collections::{HashMap, HashSet};

use num::{One, Signed, Zero};
use rayon::prelude::*;

use crate::complex::Complex;
use crate::error::{check_cap, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::lp::{LPProblem, LPStatus, Relation, Sense};
use crate::matroid::{Matroid, MatroidSystem};
use crate::rational::{int, ExtRational, RatVec, Rational};
use crate::subset::SubsetMask;

/// Ground-set cap for the exhaustive rank-constraint tests of `Q` and `R`.
pub const MEMBER_CAP: usize = 20;
/// Ground-set cap for vertex enumeration of `Q` and `R`.
pub const VERTEX_CAP: usize = 10;
/// Ground-set cap for the matroidal LPs.
pub const MATROID_LP_CAP: usize = 16;
/// Ground-set cap for the integral matroidal numbers.
pub const MATROID_INTEGRAL_CAP: usize = 14;
/// Edge cap for the hypergraph LPs.
pub const HYPER_LP_CAP: usize = 20;
/// Edge cap for the integral hypergraph numbers.
pub const HYPER_INTEGRAL_CAP: usize = 14;
/// Largest number of demand states explored by the integral cover search.
pub const COVER_STATE_CAP: usize = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolytopeRef {
    /// Convex hull of the face indicators.
    P(Complex),
    /// `{x ≥ 0 : x[S] ≤ rank_C(S) for all S}`.
    Q(Complex),
    /// Intersection of the rank polytopes of the matroids.
    R(MatroidSystem),
}

impl PolytopeRef {
    pub fn n(&self) -> usize {
        match self {
            PolytopeRef::P(c) | PolytopeRef::Q(c) => c.n(),
            PolytopeRef::R(l) => l.n(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            PolytopeRef::P(_) => "P",
            PolytopeRef::Q(_) => "Q",
            PolytopeRef::R(_) => "R",
        }
    }

    /// Rank functions whose constraints cut out the polytope (Q and R only).
    fn rank_fns(&self) -> Vec<Box<dyn Fn(SubsetMask) -> usize + Sync + '_>> {
        match self {
            PolytopeRef::P(_) => Vec::new(),
            PolytopeRef::Q(c) => vec![Box::new(move |s| c.rank_of(s))],
            PolytopeRef::R(l) => l
                .matroids()
                .iter()
                .map(|m| Box::new(move |s| m.rank(s)) as Box<dyn Fn(SubsetMask) -> usize + Sync>)
                .collect(),
        }
    }
}

fn check_vector(n: usize, x: &RatVec, what: &str) -> Result<()> {
    if x.len() != n {
        return Err(Error::DimensionMismatch(format!("{what} has length {}, expected {n}", x.len())));
    }
    if !x.is_nonnegative() {
        return Err(Error::Domain(format!("{what} has a negative coordinate")));
    }
    Ok(())
}

pub fn member(z: &PolytopeRef, x: &RatVec) -> Result<bool> {
    check_vector(z.n(), x, "point")?;
    match z {
        PolytopeRef::P(c) => member_p(c, x),
        _ => {
            check_cap("rank-constraint ground set", MEMBER_CAP, z.n())?;
            let support = x.support();
            let fns = z.rank_fns();
            // subsets of the support suffice: dropping zero coordinates never raises x[S]
            Ok(support.subsets().all(|s| fns.iter().all(|r| x.sum_over(s) <= int(r(s) as i64))))
        }
    }
}

/// Is there `λ ≥ 0` on maximal faces with `Σλ ≤ 1` and `Σ λ_F 1_F ≥ x`?
fn member_p(c: &Complex, x: &RatVec) -> Result<bool> {
    let support = x.support();
    if !support.is_subset(c.vertices()) {
        return Ok(false);
    }
    if support.is_empty() {
        return Ok(true);
    }
    let faces = c.maximal_faces();
    let mut lp = LPProblem::new(Sense::Minimize, vec![Rational::zero(); faces.len()]);
    lp.add_row(vec![int(1); faces.len()], Relation::Le, int(1));
    for v in support.iter() {
        let terms: Vec<(usize, Rational)> =
            faces.iter().enumerate().filter(|(_, f)| f.contains(v)).map(|(i, _)| (i, int(1))).collect();
        lp.add_sparse_row(&terms, Relation::Ge, x[v].clone());
    }
    Ok(lp.solve()?.status == LPStatus::Optimal)
}

/// The gauge `ψ(Z, h) = min{t ≥ 0 : h/t ∈ Z}`, with `ψ(Z, 0) = 0`.
pub fn psi(z: &PolytopeRef, h: &RatVec) -> Result<ExtRational> {
    check_vector(z.n(), h, "weight")?;
    if h.is_zero() {
        return Ok(ExtRational::zero());
    }
    match z {
        PolytopeRef::P(c) => psi_p(c, h),
        _ => {
            check_cap("rank-constraint ground set", MEMBER_CAP, z.n())?;
            let fns = z.rank_fns();
            let mut best = ExtRational::zero();
            for s in h.support().subsets() {
                let mass = h.sum_over(s);
                for r in &fns {
                    let q = ExtRational::ratio(&mass, &ExtRational::Finite(int(r(s) as i64)));
                    if q > best {
                        best = q;
                    }
                }
            }
            Ok(best)
        }
    }
}

/// `min t` subject to `h ≤ Σ μ_F 1_F` and `Σ μ_F ≤ t`.
fn psi_p(c: &Complex, h: &RatVec) -> Result<ExtRational> {
    let support = h.support();
    if !support.is_subset(c.vertices()) {
        return Ok(ExtRational::Infinite);
    }
    let faces = c.maximal_faces();
    let m = faces.len();
    let mut obj = vec![Rational::zero(); m + 1];
    obj[m] = int(1);
    let mut lp = LPProblem::new(Sense::Minimize, obj);
    let mut row = vec![int(1); m + 1];
    row[m] = int(-1);
    lp.add_row(row, Relation::Le, Rational::zero());
    for v in support.iter() {
        let terms: Vec<(usize, Rational)> =
            faces.iter().enumerate().filter(|(_, f)| f.contains(v)).map(|(i, _)| (i, int(1))).collect();
        lp.add_sparse_row(&terms, Relation::Ge, h[v].clone());
    }
    let r = lp.solve()?;
    match r.status {
        LPStatus::Optimal => Ok(ExtRational::Finite(r.value().clone())),
        _ => Ok(ExtRational::Infinite),
    }
}

/// Inequalities `x[S] ≤ b` that survive the reduction to closed, inseparable
/// sets, together with the coordinates forced to zero.
#[derive(Clone, Debug)]
struct ConstraintSystem {
    rows: Vec<(SubsetMask, usize)>,
    zero: SubsetMask,
}

/// Closed, inseparable sets of an arbitrary monotone subadditive rank
/// function. Exponential in `3^n`; meant for `n ≤ VERTEX_CAP`.
fn generic_facet_sets(n: usize, rank: &(dyn Fn(SubsetMask) -> usize + Sync)) -> Vec<(SubsetMask, usize)> {
    let zero: SubsetMask = (0..n).filter(|&v| rank(SubsetMask::singleton(v)) == 0).collect();
    let live = SubsetMask::full(n).difference(zero);
    (1u64..(1u64 << n))
        .into_par_iter()
        .filter_map(|bits| {
            let s = SubsetMask(bits);
            let r = rank(s);
            if r == 0 {
                return (s.len() == 1).then_some((s, 0));
            }
            if !s.intersection(zero).is_empty() || live.difference(s).iter().any(|v| rank(s.with(v)) == r) {
                return None;
            }
            let first = SubsetMask::singleton(s.first().unwrap());
            let rest = s.difference(first);
            let separable = rest.subsets().any(|a| {
                let left = a.union(first);
                left != s && rank(left) + rank(s.difference(left)) == r
            });
            (!separable).then_some((s, r))
        })
        .collect()
}

/// Components of `M|F` via fundamental circuits of a basis.
fn matroid_connected(m: &Matroid, f: SubsetMask) -> bool {
    if f.len() <= 1 {
        return true;
    }
    let basis = m.basis_of(f);
    let elems = f.to_vec();
    let idx = |x: usize| elems.iter().position(|&e| e == x).unwrap();
    let mut parent: Vec<usize> = (0..elems.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in f.difference(basis).iter() {
        for b in basis.iter() {
            if m.is_independent(basis.without(b).with(e)) {
                let (ra, rb) = (find(&mut parent, idx(e)), find(&mut parent, idx(b)));
                parent[ra] = rb;
            }
        }
    }
    let root = find(&mut parent, 0);
    (0..elems.len()).all(|i| find(&mut parent, i) == root)
}

/// Loop singletons plus loop-free connected sets whose span adds only loops.
fn matroid_facet_sets(m: &Matroid) -> Vec<(SubsetMask, usize)> {
    let n = m.n();
    let loops = m.loops();
    let nonloops = SubsetMask::full(n).difference(loops);
    let mut out: Vec<(SubsetMask, usize)> = loops.iter().map(|v| (SubsetMask::singleton(v), 0)).collect();
    let sets: Vec<(SubsetMask, usize)> = nonloops
        .subsets()
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|s| !s.is_empty())
        .filter(|&s| m.span(s).difference(loops) == s && matroid_connected(m, s))
        .map(|s| (s, m.rank(s)))
        .collect();
    out.extend(sets);
    out
}

fn constraint_system(z: &PolytopeRef) -> Result<ConstraintSystem> {
    let n = z.n();
    let rows: Vec<(SubsetMask, usize)> = match z {
        PolytopeRef::P(_) => return Err(Error::Unsupported("P is not given by rank constraints".into())),
        PolytopeRef::Q(c) => generic_facet_sets(n, &|s| c.rank_of(s)),
        PolytopeRef::R(l) => l.matroids().iter().flat_map(matroid_facet_sets).collect(),
    };
    let zero: SubsetMask = rows.iter().filter(|(s, r)| *r == 0 && s.len() == 1).map(|(s, _)| s.first().unwrap()).collect();
    // zero coordinates drop out of every row; keep the tightest bound per set
    let mut best: HashMap<SubsetMask, usize> = HashMap::new();
    for (s, r) in rows {
        let s = s.difference(zero);
        if !s.is_empty() {
            best.entry(s).and_modify(|b| *b = (*b).min(r)).or_insert(r);
        }
    }
    let mut rows: Vec<(SubsetMask, usize)> = best.into_iter().collect();
    rows.sort_by_key(|(s, r)| (s.len(), *s, *r));
    Ok(ConstraintSystem { rows, zero })
}

#[derive(Clone)]
struct DdVertex {
    x: Vec<Rational>,
    tight: Vec<u64>,
}

fn bit_set(t: &mut [u64], i: usize) {
    t[i / 64] |= 1 << (i % 64);
}

fn bits_and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bits_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn bits_count(a: &[u64]) -> usize {
    a.iter().map(|w| w.count_ones() as usize).sum()
}

/// Vertices of a polytope. For `P` these are the face indicators; for `Q`
/// and `R` they come from double description over the reduced constraint
/// system, starting from the box cut out by the singleton bounds.
pub fn vertices(z: &PolytopeRef) -> Result<Vec<RatVec>> {
    let n = z.n();
    if let PolytopeRef::P(c) = z {
        return Ok(c.faces()?.into_iter().map(|f| RatVec::indicator(n, f)).collect());
    }
    check_cap("vertex enumeration ground set", VERTEX_CAP, n)?;
    let sys = constraint_system(z)?;
    let coords: Vec<usize> = SubsetMask::full(n).difference(sys.zero).to_vec();
    let d = coords.len();
    let pos = |v: usize| coords.iter().position(|&c| c == v).unwrap();
    let fns = z.rank_fns();
    let upper: Vec<usize> =
        coords.iter().map(|&v| fns.iter().map(|r| r(SubsetMask::singleton(v))).min().unwrap()).collect();
    // constraint indices: 0..d non-negativity, d..2d singleton bounds, then the rest
    let rest: Vec<(SubsetMask, usize)> = sys.rows.iter().filter(|(s, _)| s.len() >= 2).cloned().collect();
    let total = 2 * d + rest.len();
    let words = total.div_ceil(64).max(1);
    let mut verts: Vec<DdVertex> = Vec::with_capacity(1 << d);
    for a in 0u64..(1u64 << d) {
        let mut tight = vec![0u64; words];
        let mut x = vec![Rational::zero(); d];
        for j in 0..d {
            if a >> j & 1 == 1 {
                x[j] = int(upper[j] as i64);
                bit_set(&mut tight, d + j);
            } else {
                bit_set(&mut tight, j);
            }
        }
        verts.push(DdVertex { x, tight });
    }
    for (k, (s, b)) in rest.iter().enumerate() {
        let ci = 2 * d + k;
        let idx: Vec<usize> = s.iter().map(pos).collect();
        let bound = int(*b as i64);
        let slack: Vec<Rational> =
            verts.iter().map(|v| &bound - idx.iter().fold(Rational::zero(), |acc, &j| acc + &v.x[j])).collect();
        let minus: Vec<usize> = (0..verts.len()).filter(|&i| slack[i].is_negative()).collect();
        if minus.is_empty() {
            for (i, v) in verts.iter_mut().enumerate() {
                if slack[i].is_zero() {
                    bit_set(&mut v.tight, ci);
                }
            }
            continue;
        }
        let plus: Vec<usize> = (0..verts.len()).filter(|&i| slack[i].is_positive()).collect();
        let created: Vec<DdVertex> = plus
            .par_iter()
            .flat_map_iter(|&p| {
                let verts = &verts;
                let slack = &slack;
                minus.iter().filter_map(move |&m| {
                    let common = bits_and(&verts[p].tight, &verts[m].tight);
                    if bits_count(&common) + 1 < d {
                        return None;
                    }
                    let blocked = verts
                        .iter()
                        .enumerate()
                        .any(|(q, v)| q != p && q != m && bits_subset(&common, &v.tight));
                    if blocked {
                        return None;
                    }
                    let t = &slack[p] / (&slack[p] - &slack[m]);
                    let x = verts[p].x.iter().zip(&verts[m].x).map(|(a, b)| a + &t * (b - a)).collect();
                    let mut tight = common;
                    bit_set(&mut tight, ci);
                    Some(DdVertex { x, tight })
                })
            })
            .collect();
        let mut next: Vec<DdVertex> = Vec::with_capacity(verts.len() + created.len());
        for (i, mut v) in verts.into_iter().enumerate() {
            if slack[i].is_negative() {
                continue;
            }
            if slack[i].is_zero() {
                bit_set(&mut v.tight, ci);
            }
            next.push(v);
        }
        next.extend(created);
        verts = next;
    }
    let mut seen = HashSet::new();
    let mut out: Vec<RatVec> = Vec::new();
    for v in verts {
        let mut full = vec![Rational::zero(); n];
        for (j, x) in v.x.into_iter().enumerate() {
            full[coords[j]] = x;
        }
        let p = RatVec(full);
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// `B : A = min{t ≥ 0 : tA ⊇ B}`, the largest gauge of `A` over the vertices
/// of `B`.
pub fn gauge_ratio(b: &PolytopeRef, a: &PolytopeRef) -> Result<ExtRational> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!("polytopes on {} and {} coordinates", b.n(), a.n())));
    }
    let verts = vertices(b)?;
    let gauges: Vec<ExtRational> = verts.par_iter().map(|v| psi(a, v)).collect::<Result<_>>()?;
    Ok(gauges.into_iter().max().unwrap_or_else(ExtRational::zero))
}

/// Like [`gauge_ratio`]; for `R(L) : Q(⋂L)` the value is also recomputed as
/// `max_U ν*(L_U) / ν(L_U)` and the two must agree.
pub fn ratio(b: &PolytopeRef, a: &PolytopeRef) -> Result<ExtRational> {
    let value = gauge_ratio(b, a)?;
    if let (PolytopeRef::R(l), PolytopeRef::Q(c)) = (b, a) {
        if l.intersection()? == *c {
            let other = ratio_rq_by_matchings(l)?;
            assert_eq!(value, other, "vertex gauge and matching-number formula disagree on R:Q");
        }
    }
    Ok(value)
}

/// `max_U ν*(L_U) / ν(L_U)` over non-empty `U`, with `0/0 = 0`.
pub fn ratio_rq_by_matchings(l: &MatroidSystem) -> Result<ExtRational> {
    let n = l.n();
    check_cap("matching-ratio ground set", VERTEX_CAP, n)?;
    let ones = RatVec::ones(n);
    let values: Vec<ExtRational> = (1u64..(1u64 << n))
        .into_par_iter()
        .map(|bits| {
            let u = SubsetMask(bits);
            let lu = l.restrict(u);
            let (frac, _) = nu_star_w(&lu, &ones)?;
            let integral = l.common_rank(u);
            Ok(ExtRational::ratio(&frac, &ExtRational::Finite(int(integral as i64))))
        })
        .collect::<Result<_>>()?;
    Ok(values.into_iter().max().unwrap_or_else(ExtRational::zero))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidalNumbers {
    pub nu: Rational,
    pub nu_star: Rational,
    pub tau_star: Rational,
    pub tau: Rational,
}

fn check_weights(n: usize, w: &RatVec) -> Result<()> {
    check_vector(n, w, "weight")
}

/// `ν_w`, `ν*_w`, `τ*_w`, `τ_w` of a matroid system, with `ν*_w = τ*_w`
/// checked.
pub fn matroidal_numbers(l: &MatroidSystem, w: &RatVec) -> Result<MatroidalNumbers> {
    let (nu_star, _) = nu_star_w(l, w)?;
    let tau_star = tau_star_w(l, w)?;
    assert_eq!(nu_star, tau_star, "fractional matching and covering numbers differ");
    let (nu, _) = nu_w(l, w)?;
    let tau = tau_w(l, w)?;
    Ok(MatroidalNumbers { nu, nu_star, tau_star, tau })
}

/// Maximum weight of a common independent set, by exhaustive search.
pub fn nu_w(l: &MatroidSystem, w: &RatVec) -> Result<(Rational, SubsetMask)> {
    let n = l.n();
    check_weights(n, w)?;
    check_cap("integral matching ground set", MATROID_INTEGRAL_CAP, n)?;
    let positive = w.support();
    let mut best = (Rational::zero(), SubsetMask::EMPTY);
    for s in positive.subsets() {
        let val = w.sum_over(s);
        if val > best.0 && l.is_independent(s) {
            best = (val, s);
        }
    }
    Ok(best)
}

/// `ν*_w = max w·x` over `R(L)`, by cutting planes with exhaustive
/// separation over subsets of the current support.
pub fn nu_star_w(l: &MatroidSystem, w: &RatVec) -> Result<(Rational, RatVec)> {
    let n = l.n();
    check_weights(n, w)?;
    check_cap("matroidal LP ground set", MATROID_LP_CAP, n)?;
    let mut lp = LPProblem::new(Sense::Maximize, w.0.clone());
    for v in 0..n {
        let s = SubsetMask::singleton(v);
        let cap = l.matroids().iter().map(|m| m.rank(s)).min().unwrap_or(1);
        lp.add_sparse_row(&[(v, int(1))], Relation::Le, int(cap as i64));
    }
    loop {
        let r = lp.solve()?;
        if r.status != LPStatus::Optimal {
            unreachable!("R(L) is a non-empty polytope");
        }
        let x = RatVec(r.primal.clone());
        let support = x.support();
        let mut added = false;
        for m in l.matroids() {
            let mut worst: Option<(Rational, SubsetMask)> = None;
            for s in support.subsets() {
                let excess = x.sum_over(s) - int(m.rank(s) as i64);
                if excess.is_positive() && worst.as_ref().is_none_or(|(e, _)| excess > *e) {
                    worst = Some((excess, s));
                }
            }
            if let Some((_, s)) = worst {
                let terms: Vec<(usize, Rational)> = s.iter().map(|v| (v, int(1))).collect();
                lp.add_sparse_row(&terms, Relation::Le, int(m.rank(s) as i64));
                added = true;
            }
        }
        if !added {
            return Ok((r.value().clone(), x));
        }
    }
}

/// `τ*_w` by the covering LP with variables `y_i(U)` on the connected flats
/// of each matroid (loops count as rank-zero singletons).
pub fn tau_star_w(l: &MatroidSystem, w: &RatVec) -> Result<Rational> {
    let n = l.n();
    check_weights(n, w)?;
    check_cap("matroidal LP ground set", MATROID_LP_CAP, n)?;
    let support = w.support();
    if support.is_empty() {
        return Ok(Rational::zero());
    }
    let cols = cover_columns(l);
    let mut lp = LPProblem::new(Sense::Minimize, cols.iter().map(|(_, r)| int(*r as i64)).collect());
    for v in support.iter() {
        let terms: Vec<(usize, Rational)> =
            cols.iter().enumerate().filter(|(_, (s, _))| s.contains(v)).map(|(j, _)| (j, int(1))).collect();
        lp.add_sparse_row(&terms, Relation::Ge, w[v].clone());
    }
    let r = lp.solve()?;
    Ok(r.value().clone())
}

fn cover_columns(l: &MatroidSystem) -> Vec<(SubsetMask, usize)> {
    let mut cols: Vec<(SubsetMask, usize)> = l.matroids().iter().flat_map(matroid_facet_sets).collect();
    cols.sort();
    cols.dedup();
    cols
}

/// `τ_w` over integral covers: the integral version of the covering LP,
/// where the demand at `v` is `⌈w(v)⌉`. Memoized search branching on the
/// columns that cover the first vertex with positive demand.
pub fn tau_w(l: &MatroidSystem, w: &RatVec) -> Result<Rational> {
    let n = l.n();
    check_weights(n, w)?;
    check_cap("integral cover ground set", MATROID_INTEGRAL_CAP, n)?;
    let demand: Vec<u8> = w
        .iter()
        .map(|x| {
            let c = x.ceil().to_integer();
            u8::try_from(c).map_err(|_| Error::cap("integral cover demand", u8::MAX as usize, usize::MAX))
        })
        .collect::<Result<_>>()?;
    let states: usize = demand.iter().map(|&d| d as usize + 1).try_fold(1usize, |acc, d| acc.checked_mul(d)).unwrap_or(usize::MAX);
    check_cap("integral cover states", COVER_STATE_CAP, states)?;
    let cols = cover_columns(l);
    let mut memo: HashMap<Vec<u8>, usize> = HashMap::new();
    let best = cover_search(&demand, &cols, &mut memo);
    Ok(int(best as i64))
}

fn cover_search(demand: &[u8], cols: &[(SubsetMask, usize)], memo: &mut HashMap<Vec<u8>, usize>) -> usize {
    let Some(v) = demand.iter().position(|&d| d > 0) else {
        return 0;
    };
    if let Some(&c) = memo.get(demand) {
        return c;
    }
    let mut best = usize::MAX;
    for (s, cost) in cols.iter().filter(|(s, _)| s.contains(v)) {
        if *cost >= best {
            continue;
        }
        let mut next = demand.to_vec();
        for u in s.iter() {
            next[u] = next[u].saturating_sub(1);
        }
        let sub = cover_search(&next, cols, memo);
        best = best.min(sub.saturating_add(*cost));
    }
    memo.insert(demand.to_vec(), best);
    best
}

/// `f^M(v) = max{a ∈ values(f) : v ∈ span({u : f(u) ≥ a})}`, by a
/// descending threshold sweep. Loops receive the largest value of `f`.
pub fn f_span(m: &Matroid, f: &RatVec) -> Result<RatVec> {
    let n = m.n();
    check_vector(n, f, "function")?;
    let mut levels: Vec<&Rational> = f.iter().collect();
    levels.sort();
    levels.dedup();
    let mut out = RatVec::zeros(n);
    let mut done = SubsetMask::EMPTY;
    for a in levels.into_iter().rev() {
        let above: SubsetMask = (0..n).filter(|&u| f[u] >= *a).collect();
        let spanned = m.span(above).difference(done);
        for v in spanned.iter() {
            out[v] = a.clone();
        }
        done = done.union(spanned);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperNumbers {
    pub nu: Rational,
    pub nu_star: Rational,
    pub tau: Rational,
    pub tau_star: Rational,
    /// Fractional width, always unweighted.
    pub width: Rational,
}

/// Matching and cover numbers of a hypergraph with edge weights `w`.
pub fn hyper_numbers(h: &Hypergraph, w: &RatVec) -> Result<HyperNumbers> {
    let nu_star = hyper_nu_star(h, w)?;
    let tau_star = hyper_tau_star(h, w)?;
    assert_eq!(nu_star, tau_star, "hypergraph LP duality failed");
    Ok(HyperNumbers {
        nu: hyper_nu(h, w)?,
        nu_star,
        tau: hyper_tau(h, w)?,
        tau_star,
        width: fractional_width(h)?,
    })
}

fn check_hyper(h: &Hypergraph, w: &RatVec, cap: usize) -> Result<()> {
    if h.has_empty_edge() {
        return Err(Error::EmptyEdge);
    }
    check_vector(h.num_edges(), w, "edge weight")?;
    check_cap("hypergraph edge count", cap, h.num_edges())
}

/// `ν*_w`: maximize `Σ w(e) g(e)` subject to `Σ_{e ∋ v} g(e) ≤ 1`.
pub fn hyper_nu_star(h: &Hypergraph, w: &RatVec) -> Result<Rational> {
    check_hyper(h, w, HYPER_LP_CAP)?;
    let mut lp = LPProblem::new(Sense::Maximize, w.0.clone());
    for v in h.covered().iter() {
        let terms: Vec<(usize, Rational)> =
            h.edges().iter().enumerate().filter(|(_, e)| e.contains(v)).map(|(j, _)| (j, int(1))).collect();
        lp.add_sparse_row(&terms, Relation::Le, int(1));
    }
    Ok(lp.solve()?.value().clone())
}

/// `τ*_w`: minimize `Σ t(v)` subject to `Σ_{v ∈ e} t(v) ≥ w(e)`.
pub fn hyper_tau_star(h: &Hypergraph, w: &RatVec) -> Result<Rational> {
    check_hyper(h, w, HYPER_LP_CAP)?;
    let n = h.n();
    let mut lp = LPProblem::new(Sense::Minimize, vec![int(1); n]);
    for (e, we) in h.edges().iter().zip(w.iter()) {
        let terms: Vec<(usize, Rational)> = e.iter().map(|v| (v, int(1))).collect();
        lp.add_sparse_row(&terms, Relation::Ge, we.clone());
    }
    Ok(lp.solve()?.value().clone())
}

/// `ν_w`: maximum weight of a matching.
pub fn hyper_nu(h: &Hypergraph, w: &RatVec) -> Result<Rational> {
    check_hyper(h, w, HYPER_INTEGRAL_CAP)?;
    let edges = h.edges();
    let mut order: Vec<usize> = (0..edges.len()).filter(|&j| w[j].is_positive()).collect();
    order.sort_by(|&a, &b| w[b].cmp(&w[a]));
    fn go(edges: &[SubsetMask], w: &RatVec, order: &[usize], used: SubsetMask, val: Rational, best: &mut Rational) {
        if val > *best {
            *best = val.clone();
        }
        let rest: Rational = order.iter().fold(Rational::zero(), |acc, &j| acc + &w[j]);
        if &val + rest <= *best {
            return;
        }
        for (i, &j) in order.iter().enumerate() {
            if edges[j].is_disjoint(used) {
                go(edges, w, &order[i + 1..], used.union(edges[j]), &val + &w[j], best);
            }
        }
    }
    let mut best = Rational::zero();
    go(edges, w, &order, SubsetMask::EMPTY, Rational::zero(), &mut best);
    Ok(best)
}

/// `τ_w`: minimum `Σ t(v)` over integral `t` with `Σ_{v ∈ e} t(v) ≥ w(e)`,
/// by iterative deepening on the budget.
pub fn hyper_tau(h: &Hypergraph, w: &RatVec) -> Result<Rational> {
    check_hyper(h, w, HYPER_INTEGRAL_CAP)?;
    let edges = h.edges();
    let need: Vec<i64> = w
        .iter()
        .map(|x| i64::try_from(x.ceil().to_integer()).map_err(|_| Error::Domain("edge weight too large".into())))
        .collect::<Result<_>>()?;
    fn go(edges: &[SubsetMask], need: &[i64], t: &mut Vec<i64>, budget: i64, seen: &mut HashSet<(Vec<i64>, i64)>) -> bool {
        let deficit = |j: usize| need[j] - edges[j].iter().map(|v| t[v]).sum::<i64>();
        let open: Vec<usize> = (0..edges.len()).filter(|&j| deficit(j) > 0).collect();
        let Some(&j) = open.iter().min_by_key(|&&j| edges[j].len()) else {
            return true;
        };
        if open.iter().map(|&j| deficit(j)).max().unwrap() > budget {
            return false;
        }
        if !seen.insert((t.clone(), budget)) {
            return false;
        }
        for v in edges[j].iter() {
            t[v] += 1;
            let ok = go(edges, need, t, budget - 1, seen);
            t[v] -= 1;
            if ok {
                return true;
            }
        }
        false
    }
    let upper: i64 = need.iter().map(|&d| d.max(0)).sum();
    for budget in 0..=upper {
        let mut t = vec![0i64; h.n()];
        if go(edges, &need, &mut t, budget, &mut HashSet::new()) {
            return Ok(int(budget));
        }
    }
    unreachable!("one unit per demand always covers")
}

/// Fractional width: minimize `Σ f(T)` subject to
/// `Σ_T f(T) |T ∩ S| ≥ 1` for every edge `S`.
pub fn fractional_width(h: &Hypergraph) -> Result<Rational> {
    check_hyper(h, &RatVec::ones(h.num_edges()), HYPER_LP_CAP)?;
    let edges = h.edges();
    if edges.is_empty() {
        return Ok(Rational::zero());
    }
    let mut lp = LPProblem::new(Sense::Minimize, vec![int(1); edges.len()]);
    for s in edges {
        let row: Vec<Rational> = edges.iter().map(|t| int(t.intersection(*s).len() as i64)).collect();
        lp.add_row(row, Relation::Ge, Rational::one());
    }
    Ok(lp.solve()?.value().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::chi_star;
    use crate::rational::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn t3() -> Hypergraph {
        // parts {0,1}, {2,3}, {4,5}
        Hypergraph::from_lists(6, &[vec![0, 2, 4], vec![0, 3, 5], vec![1, 2, 5], vec![1, 3, 4]]).unwrap()
    }

    fn l_t3() -> MatroidSystem {
        let h = t3();
        let parts = [(0, 1), (2, 3), (4, 5)];
        let ms = parts
            .iter()
            .map(|&(a, b)| {
                let pa: SubsetMask = (0..4).filter(|&j| h.edges()[j].contains(a)).collect();
                let pb: SubsetMask = (0..4).filter(|&j| h.edges()[j].contains(b)).collect();
                Matroid::partition(4, vec![pa, pb]).unwrap()
            })
            .collect();
        MatroidSystem::new(ms).unwrap()
    }

    #[test]
    fn square_is_the_vertex_set_of_q_of_a_simplex() {
        let q = PolytopeRef::Q(Complex::simplex(2));
        let vs = vertices(&q).unwrap();
        assert_eq!(vs, vec![RatVec::from_ints(&[0, 0]), RatVec::from_ints(&[0, 1]), RatVec::from_ints(&[1, 0]), RatVec::from_ints(&[1, 1])]);
    }

    #[test]
    fn truncated_plane_numbers() {
        let l = l_t3();
        let half = RatVec::constant(4, rat(1, 2));
        assert!(vertices(&PolytopeRef::R(l.clone())).unwrap().contains(&half));
        let nums = matroidal_numbers(&l, &RatVec::ones(4)).unwrap();
        assert_eq!((nums.nu, nums.nu_star, nums.tau_star, nums.tau), (int(1), int(2), int(2), int(2)));
        let c = l.intersection().unwrap();
        assert_eq!(psi(&PolytopeRef::R(l.clone()), &RatVec::ones(4)).unwrap(), ExtRational::Finite(int(2)));
        assert_eq!(psi(&PolytopeRef::P(c.clone()), &RatVec::ones(4)).unwrap(), ExtRational::Finite(int(4)));
        assert_eq!(ratio(&PolytopeRef::R(l.clone()), &PolytopeRef::P(c.clone())).unwrap(), ExtRational::Finite(int(2)));
        ratio(&PolytopeRef::R(l), &PolytopeRef::Q(c)).unwrap();
        let hn = hyper_numbers(&t3(), &RatVec::ones(4)).unwrap();
        assert_eq!((hn.nu, hn.nu_star, hn.tau), (int(1), int(2), int(2)));
    }

    #[test]
    fn small_examples() {
        assert_eq!(psi(&PolytopeRef::P(Complex::simplex(3)), &RatVec::ones(3)).unwrap(), ExtRational::Finite(int(1)));
        assert_eq!(psi(&PolytopeRef::Q(Complex::simplex(3)), &RatVec::zeros(3)).unwrap(), ExtRational::zero());
        let single = Hypergraph::from_lists(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(fractional_width(&single).unwrap(), rat(1, 3));
        let c4 = Hypergraph::from_lists(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        let hn = hyper_numbers(&c4, &RatVec::ones(4)).unwrap();
        assert_eq!((hn.nu, hn.nu_star), (int(2), int(2)));
        let m = Matroid::gen_partition(2, vec![SubsetMask::from_indices([0, 1])], vec![1]).unwrap();
        assert_eq!(f_span(&m, &RatVec::from_ints(&[1, 0])).unwrap(), RatVec::from_ints(&[1, 1]));
        let l = MatroidSystem::new(vec![m]).unwrap();
        let zero = matroidal_numbers(&l, &RatVec::zeros(2)).unwrap();
        assert!(zero.nu.is_zero() && zero.nu_star.is_zero() && zero.tau.is_zero());
        assert!(matches!(member(&PolytopeRef::Q(Complex::simplex(2)), &RatVec(vec![int(-1), int(0)])), Err(Error::Domain(_))));
    }

    fn random_gen_partition(rng: &mut ChaCha8Rng, n: usize) -> Matroid {
        let blocks = rng.gen_range(1..=n.max(1));
        let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..blocks)).collect();
        let mut parts = Vec::new();
        let mut caps = Vec::new();
        for b in 0..blocks {
            let p: SubsetMask = (0..n).filter(|&v| labels[v] == b).collect();
            if !p.is_empty() {
                caps.push(rng.gen_range(0..=p.len()));
                parts.push(p);
            }
        }
        Matroid::gen_partition(n, parts, caps).unwrap()
    }

    #[test]
    fn psi_on_p_is_the_fractional_chromatic_number() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let n = rng.gen_range(2..6);
            let l = MatroidSystem::new((0..2).map(|_| random_gen_partition(&mut rng, n)).collect()).unwrap();
            let c = l.intersection().unwrap();
            let h = RatVec((0..n).map(|_| rat(rng.gen_range(0..4), rng.gen_range(1..3))).collect());
            let expected = match chi_star(&c, &h) {
                Ok(fc) => ExtRational::Finite(fc.value),
                Err(Error::Infeasible) => ExtRational::Infinite,
                Err(e) => panic!("{e}"),
            };
            assert_eq!(psi(&PolytopeRef::P(c), &h).unwrap(), expected);
        }
    }

    #[test]
    fn vertex_enumeration_matches_membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..15 {
            let n = rng.gen_range(2..6);
            let k = rng.gen_range(1..4);
            let l = MatroidSystem::new((0..k).map(|_| random_gen_partition(&mut rng, n)).collect()).unwrap();
            let r = PolytopeRef::R(l.clone());
            let vs = vertices(&r).unwrap();
            for v in &vs {
                assert!(member(&r, v).unwrap());
            }
            // every weight is maximized at some enumerated vertex
            for _ in 0..5 {
                let w = RatVec((0..n).map(|_| rat(rng.gen_range(0..5), rng.gen_range(1..4))).collect());
                let by_vertices = vs.iter().map(|v| v.dot(&w)).max().unwrap();
                assert_eq!(by_vertices, nu_star_w(&l, &w).unwrap().0);
                let nums = matroidal_numbers(&l, &w).unwrap();
                assert!(nums.nu <= nums.nu_star && nums.tau_star <= nums.tau);
            }
            let c = l.intersection().unwrap();
            ratio(&r, &PolytopeRef::Q(c)).unwrap();
        }
    }

    #[test]
    fn q_vertices_are_members() {
        let c = Complex::from_lists(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        let q = PolytopeRef::Q(c.clone());
        let vs = vertices(&q).unwrap();
        assert!(vs.iter().all(|v| member(&q, v).unwrap()));
        assert_eq!(ratio(&q, &q).unwrap(), ExtRational::Finite(int(1)));
    }

    #[test]
    fn loops_only_remove_their_coordinate_from_constraints() {
        let m1 = Matroid::gen_partition(3, vec![SubsetMask::singleton(1), SubsetMask::from_indices([0, 2])], vec![0, 2])
            .unwrap();
        let l = MatroidSystem::new(vec![m1, Matroid::uniform(3, 1).unwrap()]).unwrap();
        let vs = vertices(&PolytopeRef::R(l.clone())).unwrap();
        let expect: Vec<RatVec> = [vec![0, 0, 0], vec![0, 0, 1], vec![1, 0, 0]].iter().map(|v| RatVec::from_ints(v)).collect();
        assert_eq!(vs, expect);
        assert_eq!(ratio(&PolytopeRef::R(l.clone()), &PolytopeRef::Q(l.intersection().unwrap())).unwrap(), ExtRational::Finite(int(1)));
    }

    #[test]
    fn q_vertices_ignore_vertices_outside_every_face() {
        let c = Complex::new(4, vec![SubsetMask::from_indices([1, 2]), SubsetMask::from_indices([2, 3])]).unwrap();
        let vs = vertices(&PolytopeRef::Q(c)).unwrap();
        assert!(!vs.contains(&RatVec::from_ints(&[0, 1, 0, 1])));
        assert!(vs.iter().all(|v| v.0[0] == Rational::zero() && &v.0[1] + &v.0[3] <= int(1)));
    }
}
