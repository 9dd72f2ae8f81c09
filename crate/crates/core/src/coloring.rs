//! Chromatic, list-chromatic and fractional chromatic numbers of complexes,
//! constructive list coloring of matroids, and `(a,b)`-colorings.

use num::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{Complex, ENUM_CAP};
use crate::error::{check_cap, Error, Result};
use crate::lp::{LPProblem, LPStatus, Relation, Sense};
use crate::matroid::{intersect, Matroid, MatroidOracle};
use crate::rational::{int, RatVec, Rational};
use crate::subset::SubsetMask;

pub const LIST_VERTEX_CAP: usize = 8;
pub const LIST_SIZE_CAP: usize = 4;
/// Upper bound on the number of list systems visited by one `(a,b)`
/// choosability query.
pub const LIST_SYSTEM_CAP: usize = 5_000_000;

fn require_colorable(c: &Complex) -> Result<()> {
    let missing = SubsetMask::full(c.n()).difference(c.vertices());
    match missing.first() {
        Some(v) => Err(Error::Uncolorable(v)),
        None => Ok(()),
    }
}

/// A minimum cover of the vertices by faces, as disjoint color classes.
pub fn chi_coloring(c: &Complex) -> Result<Vec<SubsetMask>> {
    check_cap("chromatic number ground set", ENUM_CAP, c.n())?;
    require_colorable(c)?;
    let faces = c.maximal_faces();
    let all = SubsetMask::full(c.n());
    let mut best: Vec<SubsetMask> = greedy_cover(faces, all);
    let mut cur = Vec::new();
    cover_search(faces, all, &mut cur, &mut best);
    let mut seen = SubsetMask::EMPTY;
    Ok(best
        .into_iter()
        .map(|f| {
            let class = f.difference(seen);
            seen = seen.union(f);
            class
        })
        .filter(|s| !s.is_empty())
        .collect())
}

pub fn chi(c: &Complex) -> Result<usize> {
    Ok(chi_coloring(c)?.len())
}

fn greedy_cover(faces: &[SubsetMask], mut left: SubsetMask) -> Vec<SubsetMask> {
    let mut out = Vec::new();
    while !left.is_empty() {
        let f = *faces.iter().max_by_key(|f| f.intersection(left).len()).unwrap();
        out.push(f);
        left = left.difference(f);
    }
    out
}

/// `⌈|U| / max |F ∩ U|⌉`, a lower bound on the faces needed to cover `U`.
fn cover_bound(faces: &[SubsetMask], u: SubsetMask) -> usize {
    let m = faces.iter().map(|f| f.intersection(u).len()).max().unwrap_or(0);
    if u.is_empty() {
        0
    } else {
        u.len().div_ceil(m.max(1))
    }
}

fn cover_search(faces: &[SubsetMask], left: SubsetMask, cur: &mut Vec<SubsetMask>, best: &mut Vec<SubsetMask>) {
    if left.is_empty() {
        if cur.len() < best.len() {
            *best = cur.clone();
        }
        return;
    }
    if cur.len() + cover_bound(faces, left) >= best.len() {
        return;
    }
    let v = left
        .iter()
        .min_by_key(|&v| faces.iter().filter(|f| f.contains(v)).count())
        .unwrap();
    let mut opts: Vec<SubsetMask> = faces.iter().copied().filter(|f| f.contains(v)).collect();
    opts.sort_by_key(|f| std::cmp::Reverse(f.intersection(left).len()));
    for f in opts {
        cur.push(f);
        cover_search(faces, left.difference(f), cur, best);
        cur.pop();
    }
}

/// `⌈max_S |S| / rank(S)⌉` for a loopless matroid.
pub fn chi_matroid(m: &Matroid) -> Result<usize> {
    check_cap("matroid chromatic ground set", ENUM_CAP, m.n())?;
    if let Some(v) = m.loops().first() {
        return Err(Error::Uncolorable(v));
    }
    let mut best = 0;
    for s in m.ground().subsets().skip(1) {
        best = best.max(s.len().div_ceil(m.rank(s)));
    }
    Ok(best)
}

/// Whether some faces `S_c ⊆ F_c` (one per column) cover every vertex of
/// `target` at least `b` times.
fn columns_satisfiable(c: &Complex, target: SubsetMask, columns: &[SubsetMask], b: usize) -> bool {
    let options: Vec<Vec<SubsetMask>> = columns
        .iter()
        .map(|&col| {
            let r = c.restrict(col.intersection(target));
            r.maximal_faces().to_vec()
        })
        .collect();
    let mut cover = vec![0usize; 64];
    let mut remaining = vec![0usize; 64];
    for col in columns {
        for v in col.intersection(target).iter() {
            remaining[v] += 1;
        }
    }
    fn go(
        i: usize,
        target: SubsetMask,
        columns: &[SubsetMask],
        options: &[Vec<SubsetMask>],
        b: usize,
        cover: &mut [usize],
        remaining: &mut [usize],
    ) -> bool {
        if target.iter().any(|v| cover[v] + remaining[v] < b) {
            return false;
        }
        if i == columns.len() {
            return true;
        }
        let col = columns[i].intersection(target);
        for v in col.iter() {
            remaining[v] -= 1;
        }
        let mut ok = false;
        for &f in &options[i] {
            for v in f.iter() {
                cover[v] += 1;
            }
            ok = go(i + 1, target, columns, options, b, cover, remaining);
            for v in f.iter() {
                cover[v] -= 1;
            }
            if ok {
                break;
            }
        }
        for v in col.iter() {
            remaining[v] += 1;
        }
        ok
    }
    go(0, target, columns, &options, b, &mut cover, &mut remaining)
}

/// Visits every list system on `u` with lists of size `p`, up to renaming
/// colors, given as the multiset of color classes `F_c`. Classes are drawn
/// from `allowed`. Stops early when `visit` returns false; returns false in
/// that case.
fn for_each_list_system(
    u: SubsetMask,
    p: usize,
    allowed: &[SubsetMask],
    visit: &mut dyn FnMut(&[SubsetMask]) -> bool,
) -> bool {
    let mut deg = [0usize; 64];
    let mut cols = Vec::new();
    fn go(
        u: SubsetMask,
        p: usize,
        allowed: &[SubsetMask],
        deg: &mut [usize; 64],
        cols: &mut Vec<SubsetMask>,
        group_start: usize,
        lowest: Option<usize>,
        visit: &mut dyn FnMut(&[SubsetMask]) -> bool,
    ) -> bool {
        let Some(v) = u.iter().find(|&v| deg[v] < p) else {
            return visit(cols);
        };
        // columns covering the same lowest vertex come in nondecreasing order
        let from = if lowest == Some(v) { group_start } else { 0 };
        for (j, &col) in allowed.iter().enumerate().skip(from) {
            if !col.contains(v) || col.iter().any(|w| deg[w] >= p) {
                continue;
            }
            for w in col.iter() {
                deg[w] += 1;
            }
            cols.push(col);
            let cont = go(u, p, allowed, deg, cols, j, Some(v), visit);
            cols.pop();
            for w in col.iter() {
                deg[w] -= 1;
            }
            if !cont {
                return false;
            }
        }
        true
    }
    go(u, p, allowed, &mut deg, &mut cols, 0, None, visit)
}

/// A list system on which no respecting list coloring exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BadLists {
    /// Color classes `F_c = {v : c ∈ L_v}`.
    pub classes: Vec<SubsetMask>,
}

/// Searches for a size-`p` list system with no `C`-respecting list coloring.
pub fn chi_list_counterexample(c: &Complex, p: usize) -> Result<Option<BadLists>> {
    let n = c.n();
    check_cap("list coloring ground set", LIST_VERTEX_CAP, n)?;
    check_cap("list size", LIST_SIZE_CAP, p)?;
    if let Some(v) = SubsetMask::full(n).difference(c.vertices()).first() {
        return Ok(Some(BadLists { classes: (0..p).map(|_| SubsetMask::singleton(v)).collect() }));
    }
    if p == 0 {
        return Ok((n > 0).then(|| BadLists { classes: Vec::new() }));
    }
    // A color private to one vertex lets that vertex be colored alone, so it
    // suffices to check systems without private colors on every vertex set.
    let subsets: Vec<SubsetMask> = SubsetMask::full(n).subsets().filter(|s| s.len() >= 2).collect();
    let found = subsets.par_iter().find_map_any(|&u| {
        let allowed: Vec<SubsetMask> = u.subsets().filter(|s| s.len() >= 2).collect();
        let mut bad = None;
        for_each_list_system(u, p, &allowed, &mut |cols| {
            if columns_satisfiable(c, u, cols, 1) {
                true
            } else {
                bad = Some(cols.to_vec());
                false
            }
        });
        bad
    });
    Ok(found.map(|classes| BadLists { classes }))
}

/// Whether every size-`p` list assignment admits a `C`-respecting coloring.
pub fn chi_list(c: &Complex, p: usize) -> Result<bool> {
    Ok(chi_list_counterexample(c, p)?.is_none())
}

/// Least `p` such that every size-`p` list assignment is colorable.
pub fn chi_list_number(c: &Complex) -> Result<usize> {
    require_colorable(c)?;
    let start = chi(c)?;
    for p in start..=c.n().max(1) {
        if p >= c.n() || chi_list(c, p)? {
            return Ok(p.max(start));
        }
    }
    unreachable!("n-lists always admit a system of distinct representatives")
}

/// Optimal fractional `h`-coloring: the value and the weights on maximal
/// faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalColoring {
    pub value: Rational,
    pub weights: Vec<(SubsetMask, Rational)>,
}

/// `χ*(C, h)` by the LP over maximal faces.
pub fn chi_star(c: &Complex, h: &RatVec) -> Result<FractionalColoring> {
    let n = c.n();
    if h.len() != n {
        return Err(Error::DimensionMismatch(format!("weights of length {} for n = {n}", h.len())));
    }
    if !h.is_nonnegative() {
        return Err(Error::Domain("weights must be non-negative".into()));
    }
    let support = h.support();
    if !support.is_subset(c.vertices()) {
        return Err(Error::Infeasible);
    }
    let faces = c.maximal_faces();
    let mut lp = LPProblem::new(Sense::Minimize, vec![int(1); faces.len()]);
    for v in support.iter() {
        let terms: Vec<(usize, Rational)> =
            faces.iter().enumerate().filter(|(_, f)| f.contains(v)).map(|(i, _)| (i, int(1))).collect();
        lp.add_sparse_row(&terms, Relation::Ge, h[v].clone());
    }
    let r = lp.solve()?;
    if r.status != LPStatus::Optimal {
        return Err(Error::Infeasible);
    }
    let weights = faces
        .iter()
        .zip(&r.primal)
        .filter(|(_, y)| y.is_positive())
        .map(|(f, y)| (*f, y.clone()))
        .collect();
    Ok(FractionalColoring { value: r.value().clone(), weights })
}

/// Lists `L_v` of small color identifiers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ListAssignment {
    pub lists: Vec<Vec<usize>>,
}

impl ListAssignment {
    pub fn colors(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.lists.iter().flatten().copied().collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// `F_c = {v : c ∈ L_v}`.
    pub fn class(&self, c: usize) -> SubsetMask {
        self.lists.iter().enumerate().filter(|(_, l)| l.contains(&c)).map(|(v, _)| v).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ListColoringOutcome {
    /// `colors[v] ∈ L_v`, every color class independent.
    Colored(Vec<usize>),
    /// A set `T` with `|T| + Σ_c rank(F_c ∖ T) < |V|`.
    Obstruction { t: SubsetMask, lhs: usize },
}

/// `|T| + Σ_c rank_M(F_c ∖ T)`.
pub fn hall_deficiency_lhs(m: &Matroid, lists: &ListAssignment, t: SubsetMask) -> usize {
    t.len() + lists.colors().iter().map(|&c| m.rank(lists.class(c).difference(t))).sum::<usize>()
}

/// Stars of the vertex–color incidence graph, as a partition matroid.
struct Stars {
    owner: Vec<usize>,
}

impl MatroidOracle for Stars {
    fn ground_size(&self) -> usize {
        self.owner.len()
    }
    fn rank(&self, s: SubsetMask) -> usize {
        s.iter().map(|e| self.owner[e]).collect::<SubsetMask>().len()
    }
}

/// Sets of incidences whose vertices are independent in `M` within each color.
struct ColorJoin<'a> {
    m: &'a Matroid,
    pairs: &'a [(usize, usize)],
    colors: &'a [usize],
}

impl MatroidOracle for ColorJoin<'_> {
    fn ground_size(&self) -> usize {
        self.pairs.len()
    }
    fn rank(&self, s: SubsetMask) -> usize {
        self.colors
            .iter()
            .map(|&c| {
                let vs: SubsetMask = s.iter().filter(|&e| self.pairs[e].1 == c).map(|e| self.pairs[e].0).collect();
                self.m.rank(vs)
            })
            .sum()
    }
}

/// Finds an `M`-respecting list coloring by matroid intersection, or an
/// obstruction set `T` certifying that none exists.
pub fn matroid_list_color(m: &Matroid, lists: &ListAssignment) -> Result<ListColoringOutcome> {
    let n = m.n();
    if lists.lists.len() != n {
        return Err(Error::DimensionMismatch(format!("{} lists for n = {n}", lists.lists.len())));
    }
    let pairs: Vec<(usize, usize)> =
        lists.lists.iter().enumerate().flat_map(|(v, l)| l.iter().map(move |&c| (v, c))).collect();
    check_cap("incidence ground set", 64, pairs.len())?;
    let colors = lists.colors();
    let p = Stars { owner: pairs.iter().map(|&(v, _)| v).collect() };
    let q = ColorJoin { m, pairs: &pairs, colors: &colors };
    let r = intersect(&p, &q);
    if r.common.len() == n {
        let mut out = vec![0; n];
        for e in r.common.iter() {
            out[pairs[e].0] = pairs[e].1;
        }
        return Ok(ListColoringOutcome::Colored(out));
    }
    let mut t: SubsetMask = r.cover.iter().map(|e| pairs[e].0).collect();
    for v in t.iter() {
        if hall_deficiency_lhs(m, lists, t.without(v)) < n {
            t = t.without(v);
        }
    }
    Ok(ListColoringOutcome::Obstruction { t, lhs: hall_deficiency_lhs(m, lists, t) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AbMode {
    Colorable,
    Choosable,
}

/// `(a,b)`-colorability or choosability.
pub fn ab_check(c: &Complex, a: usize, b: usize, mode: AbMode) -> Result<bool> {
    check_cap("(a,b) ground set", 6, c.n())?;
    check_cap("(a,b) parameter a", 6, a)?;
    check_cap("(a,b) parameter b", 3, b)?;
    if b == 0 {
        return Ok(true);
    }
    if a < b || c.vertices() != SubsetMask::full(c.n()) {
        return Ok(c.n() == 0);
    }
    let all = SubsetMask::full(c.n());
    match mode {
        AbMode::Colorable => Ok(columns_satisfiable(c, all, &vec![all; a], b)),
        AbMode::Choosable => {
            let allowed: Vec<SubsetMask> = all.subsets().skip(1).collect();
            let mut visited = 0usize;
            let mut ok = true;
            let completed = for_each_list_system(all, a, &allowed, &mut |cols| {
                visited += 1;
                if visited > LIST_SYSTEM_CAP {
                    return false;
                }
                ok = columns_satisfiable(c, all, cols, b);
                ok
            });
            if !completed && ok {
                return Err(Error::cap("(a,b) list systems", LIST_SYSTEM_CAP, visited));
            }
            Ok(ok)
        }
    }
}

/// Bracketing bounds on the choice ratio: `χ*` below, the best `a/b` found
/// choosable within the caps above.
pub fn chr_bounds(c: &Complex, max_a: usize, max_b: usize) -> Result<(Rational, Option<Rational>)> {
    let lower = chi_star(c, &RatVec::ones(c.n()))?.value;
    let mut best: Option<Rational> = None;
    for b in 1..=max_b {
        for a in b..=max_a {
            let r = Rational::new(a.into(), b.into());
            if best.as_ref().is_some_and(|x| *x <= r) {
                continue;
            }
            if ab_check(c, a, b, AbMode::Choosable)? {
                best = Some(r);
                break;
            }
        }
    }
    Ok((lower, best))
}

/// Whether `class` sets form a valid coloring of `c`.
pub fn is_coloring(c: &Complex, classes: &[SubsetMask]) -> bool {
    let mut seen = SubsetMask::EMPTY;
    for &s in classes {
        if !seen.is_disjoint(s) || !c.contains(s) {
            return false;
        }
        seen = seen.union(s);
    }
    seen == SubsetMask::full(c.n())
}

/// Fractional coloring weights must cover each vertex `h(v)` times.
pub fn is_fractional_coloring(h: &RatVec, fc: &FractionalColoring) -> bool {
    (0..h.len()).all(|v| {
        fc.weights.iter().filter(|(f, _)| f.contains(v)).fold(Rational::zero(), |a, (_, w)| a + w) >= h[v]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hypergraph;
    use crate::rational::rat;

    fn c(n: usize, f: &[&[usize]]) -> Complex {
        Complex::from_lists(n, &f.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn cycle(n: usize) -> Hypergraph {
        Hypergraph::from_lists(n, &(0..n).map(|i| vec![i, (i + 1) % n]).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chi(&Complex::simplex(4)).unwrap(), 1);
        assert_eq!(chi(&Complex::matching(&cycle(4)).unwrap()).unwrap(), 2);
        assert_eq!(chi(&c(4, &[&[0], &[1], &[2], &[3]])).unwrap(), 4);
        assert_eq!(chi(&Complex::independence(&cycle(5)).unwrap()).unwrap(), 3);
        assert!(matches!(chi(&c(3, &[&[0, 1]])), Err(Error::Uncolorable(2))));
        let col = chi_coloring(&Complex::independence(&cycle(5)).unwrap()).unwrap();
        assert!(is_coloring(&Complex::independence(&cycle(5)).unwrap(), &col));
    }

    #[test]
    fn matroid_chromatic_numbers() {
        let k4 = Matroid::graphic(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(chi_matroid(&k4).unwrap(), 2);
        assert_eq!(chi(&k4.to_complex().unwrap()).unwrap(), 2);
        assert_eq!(chi_matroid(&Matroid::uniform(5, 1).unwrap()).unwrap(), 5);
        let gp = Matroid::gen_partition(
            5,
            vec![SubsetMask::from_indices([0, 1, 2]), SubsetMask::from_indices([3, 4])],
            vec![2, 1],
        )
        .unwrap();
        assert_eq!(chi_matroid(&gp).unwrap(), 2);
        assert_eq!(chi(&gp.to_complex().unwrap()).unwrap(), 2);
    }

    #[test]
    fn list_chromatic_numbers() {
        assert_eq!(chi_list_number(&Complex::simplex(3)).unwrap(), 1);
        let edge = Complex::independence(&Hypergraph::from_lists(2, &[vec![0, 1]]).unwrap()).unwrap();
        assert_eq!(chi_list_number(&edge).unwrap(), 2);
        // K_{2,4} is not 2-choosable
        let k24: Vec<Vec<usize>> = (0..2).flat_map(|a| (2..6).map(move |b| vec![a, b])).collect();
        let g = Complex::independence(&Hypergraph::from_lists(6, &k24).unwrap()).unwrap();
        assert_eq!(chi(&g).unwrap(), 2);
        assert_eq!(chi_list_number(&g).unwrap(), 3);
        let u = Matroid::uniform(4, 2).unwrap().to_complex().unwrap();
        assert_eq!(chi_list_number(&u).unwrap(), chi(&u).unwrap());
    }

    #[test]
    fn fractional_chromatic_numbers() {
        assert_eq!(chi_star(&Complex::simplex(3), &RatVec::ones(3)).unwrap().value, int(1));
        assert_eq!(chi_star(&c(4, &[&[0], &[1], &[2], &[3]]), &RatVec::ones(4)).unwrap().value, int(4));
        let c5 = Complex::independence(&cycle(5)).unwrap();
        let fc = chi_star(&c5, &RatVec::ones(5)).unwrap();
        assert_eq!(fc.value, rat(5, 2));
        assert!(is_fractional_coloring(&RatVec::ones(5), &fc));
        assert!(matches!(chi_star(&c(2, &[&[0]]), &RatVec::ones(2)), Err(Error::Infeasible)));
        assert_eq!(chi_star(&c(2, &[&[0]]), &RatVec::from_ints(&[1, 0])).unwrap().value, int(1));
    }

    #[test]
    fn matroid_list_coloring() {
        let free = Matroid::free(3);
        let lists = ListAssignment { lists: vec![vec![0], vec![0], vec![0]] };
        assert!(matches!(matroid_list_color(&free, &lists).unwrap(), ListColoringOutcome::Colored(_)));
        let u12 = Matroid::uniform(2, 1).unwrap();
        let lists = ListAssignment { lists: vec![vec![0, 1], vec![0, 1]] };
        match matroid_list_color(&u12, &lists).unwrap() {
            ListColoringOutcome::Colored(col) => assert_ne!(col[0], col[1]),
            o => panic!("expected a coloring, got {o:?}"),
        }
        let lists = ListAssignment { lists: vec![vec![0], vec![0]] };
        match matroid_list_color(&u12, &lists).unwrap() {
            ListColoringOutcome::Obstruction { t, lhs } => {
                assert!(lhs < 2);
                assert_eq!(hall_deficiency_lhs(&u12, &lists, t), lhs);
            }
            o => panic!("expected an obstruction, got {o:?}"),
        }
    }

    #[test]
    fn ab_examples() {
        assert!(ab_check(&Complex::simplex(3), 1, 1, AbMode::Colorable).unwrap());
        let pts = c(2, &[&[0], &[1]]);
        for a in 1..=6 {
            for b in 1..=3.min(a) {
                assert_eq!(ab_check(&pts, a, b, AbMode::Colorable).unwrap(), a >= 2 * b, "({a},{b})");
            }
        }
        let c5 = Complex::independence(&cycle(5)).unwrap();
        assert!(ab_check(&c5, 5, 2, AbMode::Colorable).unwrap());
        assert!(!ab_check(&c5, 4, 2, AbMode::Colorable).unwrap());
        assert!(ab_check(&pts, 2, 1, AbMode::Choosable).unwrap());
        let edge = Complex::independence(&Hypergraph::from_lists(2, &[vec![0, 1]]).unwrap()).unwrap();
        assert!(!ab_check(&edge, 1, 1, AbMode::Choosable).unwrap());
        assert!(ab_check(&edge, 4, 2, AbMode::Choosable).unwrap());
    }
}
