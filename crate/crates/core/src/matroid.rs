//! Matroid oracles, derived structure, matroid intersection and bounds on
//! the number of matroids needed to express a complex.

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::complex::{Complex, ENUM_CAP};
use crate::error::{check_cap, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::subset::{SubsetMask, MAX_GROUND};

/// Largest ground set on which complexes are checked against the matroid
/// axioms.
pub const AXIOM_CAP: usize = 16;
/// Largest ground set for [`matdim_exact`].
pub const MATDIM_EXACT_CAP: usize = 6;

/// Anything with a rank function on subsets of `[0, n)`.
pub trait MatroidOracle {
    fn ground_size(&self) -> usize;
    fn rank(&self, s: SubsetMask) -> usize;

    fn is_independent(&self, s: SubsetMask) -> bool {
        self.rank(s) == s.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Matroid {
    Uniform { n: usize, rank: usize },
    /// Disjoint parts covering the ground set; a set is independent when it
    /// meets part `i` in at most `caps[i]` elements.
    GenPartition { n: usize, parts: Vec<SubsetMask>, caps: Vec<usize> },
    /// Cycle matroid; element `i` is `edges[i]`.
    Graphic { vertices: usize, edges: Vec<(usize, usize)> },
    Explicit(Complex),
    /// Sets not containing `U`, i.e. parts `U`, `V ∖ U` with caps `|U| − 1`, `|V ∖ U|`.
    NC { n: usize, u: SubsetMask },
    Dual(Box<Matroid>),
    /// `M.X`: elements outside `X` are loops.
    Contraction(Box<Matroid>, SubsetMask),
    /// `M[U]` on the same ground set: elements outside `U` are loops.
    Restriction(Box<Matroid>, SubsetMask),
}

impl Matroid {
    pub fn uniform(n: usize, rank: usize) -> Result<Self> {
        check_cap("matroid ground set", MAX_GROUND, n)?;
        if rank > n {
            return Err(Error::Validation(format!("uniform rank {rank} exceeds n = {n}")));
        }
        Ok(Matroid::Uniform { n, rank })
    }

    pub fn free(n: usize) -> Self {
        Matroid::Uniform { n, rank: n }
    }

    pub fn gen_partition(n: usize, parts: Vec<SubsetMask>, caps: Vec<usize>) -> Result<Self> {
        check_cap("matroid ground set", MAX_GROUND, n)?;
        if parts.len() != caps.len() {
            return Err(Error::DimensionMismatch(format!("{} parts but {} caps", parts.len(), caps.len())));
        }
        let mut seen = SubsetMask::EMPTY;
        for (p, &c) in parts.iter().zip(&caps) {
            if !seen.is_disjoint(*p) {
                return Err(Error::Validation(format!("part {p} overlaps an earlier part")));
            }
            if c > p.len() {
                return Err(Error::Validation(format!("cap {c} exceeds the size of part {p}")));
            }
            seen = seen.union(*p);
        }
        if seen != SubsetMask::full(n) {
            return Err(Error::Validation(format!("parts cover {seen}, not all of [0,{n})")));
        }
        Ok(Matroid::GenPartition { n, parts, caps })
    }

    /// Partition matroid: caps all equal to one.
    pub fn partition(n: usize, parts: Vec<SubsetMask>) -> Result<Self> {
        let caps = vec![1; parts.len()];
        Self::gen_partition(n, parts, caps)
    }

    pub fn graphic(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        check_cap("graphic matroid edge count", MAX_GROUND, edges.len())?;
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= vertices || b >= vertices) {
            return Err(Error::Validation(format!("edge ({a},{b}) out of range for {vertices} vertices")));
        }
        Ok(Matroid::Graphic { vertices, edges })
    }

    /// A matroid given by its independence complex. The axioms are checked.
    pub fn explicit(c: Complex) -> Result<Self> {
        if !check_matroid_axioms(&c)? {
            return Err(Error::Validation("complex violates the matroid exchange axiom".into()));
        }
        Ok(Matroid::Explicit(c))
    }

    pub fn nc(n: usize, u: SubsetMask) -> Result<Self> {
        check_cap("matroid ground set", MAX_GROUND, n)?;
        if u.is_empty() || !u.is_subset(SubsetMask::full(n)) {
            return Err(Error::Domain(format!("NC needs a non-empty subset of [0,{n}), got {u}")));
        }
        Ok(Matroid::NC { n, u })
    }

    pub fn dual(&self) -> Matroid {
        match self {
            Matroid::Dual(inner) => (**inner).clone(),
            Matroid::Uniform { n, rank } => Matroid::Uniform { n: *n, rank: n - rank },
            m => Matroid::Dual(Box::new(m.clone())),
        }
    }

    pub fn contract(&self, x: SubsetMask) -> Matroid {
        Matroid::Contraction(Box::new(self.clone()), x.intersection(SubsetMask::full(self.n())))
    }

    pub fn restrict(&self, u: SubsetMask) -> Matroid {
        Matroid::Restriction(Box::new(self.clone()), u.intersection(SubsetMask::full(self.n())))
    }

    pub fn n(&self) -> usize {
        match self {
            Matroid::Uniform { n, .. } | Matroid::GenPartition { n, .. } | Matroid::NC { n, .. } => *n,
            Matroid::Graphic { edges, .. } => edges.len(),
            Matroid::Explicit(c) => c.n(),
            Matroid::Dual(m) | Matroid::Contraction(m, _) | Matroid::Restriction(m, _) => m.n(),
        }
    }

    pub fn ground(&self) -> SubsetMask {
        SubsetMask::full(self.n())
    }

    pub fn rank(&self, s: SubsetMask) -> usize {
        match self {
            Matroid::Uniform { rank, .. } => s.len().min(*rank),
            Matroid::GenPartition { parts, caps, .. } => {
                parts.iter().zip(caps).map(|(p, &c)| s.intersection(*p).len().min(c)).sum()
            }
            Matroid::Graphic { vertices, edges } => forest_rank(*vertices, edges, s),
            Matroid::Explicit(c) => c.rank_of(s),
            Matroid::NC { u, .. } => s.intersection(*u).len().min(u.len() - 1) + s.difference(*u).len(),
            Matroid::Dual(m) => {
                let v = m.ground();
                s.len() + m.rank(v.difference(s)) - m.rank(v)
            }
            Matroid::Contraction(m, x) => {
                let rest = m.ground().difference(*x);
                m.rank(s.intersection(*x).union(rest)) - m.rank(rest)
            }
            Matroid::Restriction(m, u) => m.rank(s.intersection(*u)),
        }
    }

    pub fn is_independent(&self, s: SubsetMask) -> bool {
        self.rank(s) == s.len()
    }

    pub fn full_rank(&self) -> usize {
        self.rank(self.ground())
    }

    /// `span(A) = A ∪ {x : rank(A + x) = rank(A)}`.
    pub fn span(&self, a: SubsetMask) -> SubsetMask {
        let r = self.rank(a);
        self.ground().difference(a).iter().filter(|&x| self.rank(a.with(x)) == r).fold(a, |s, x| s.with(x))
    }

    pub fn is_loop(&self, v: usize) -> bool {
        self.rank(SubsetMask::singleton(v)) == 0
    }

    pub fn loops(&self) -> SubsetMask {
        (0..self.n()).filter(|&v| self.is_loop(v)).collect()
    }

    /// Elements lying in every basis.
    pub fn coloops(&self) -> SubsetMask {
        let v = self.ground();
        let r = self.rank(v);
        (0..self.n()).filter(|&e| self.rank(v.without(e)) < r).collect()
    }

    /// Greedy basis of `s` in ascending element order.
    pub fn basis_of(&self, s: SubsetMask) -> SubsetMask {
        s.iter().fold(SubsetMask::EMPTY, |b, x| if self.is_independent(b.with(x)) { b.with(x) } else { b })
    }

    /// Minimal dependent sets.
    pub fn circuits(&self) -> Result<Hypergraph> {
        check_cap("circuit enumeration ground set", ENUM_CAP, self.n())?;
        let mut out = Vec::new();
        for s in self.ground().subsets() {
            if !self.is_independent(s) && s.iter().all(|x| self.is_independent(s.without(x))) {
                out.push(s);
            }
        }
        Hypergraph::new(self.n(), out)
    }

    /// The independence complex, stored by its bases.
    pub fn to_complex(&self) -> Result<Complex> {
        check_cap("basis enumeration ground set", ENUM_CAP, self.n())?;
        let r = self.full_rank();
        let bases: Vec<SubsetMask> = self.ground().subsets_of_size(r).filter(|&s| self.is_independent(s)).collect();
        Complex::new(self.n(), bases)
    }

    /// Whether the matroid is a partition matroid (all caps one).
    pub fn is_partition(&self) -> bool {
        matches!(self, Matroid::GenPartition { caps, .. } if caps.iter().all(|&c| c == 1))
    }
}

impl MatroidOracle for Matroid {
    fn ground_size(&self) -> usize {
        self.n()
    }

    fn rank(&self, s: SubsetMask) -> usize {
        Matroid::rank(self, s)
    }
}

fn forest_rank(vertices: usize, edges: &[(usize, usize)], s: SubsetMask) -> usize {
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut r = 0;
    for i in s.iter() {
        let (a, b) = edges[i];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            r += 1;
        }
    }
    r
}

/// An ordered tuple of matroids on one ground set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatroidSystem {
    matroids: Vec<Matroid>,
}

impl MatroidSystem {
    pub fn new(matroids: Vec<Matroid>) -> Result<Self> {
        let Some(first) = matroids.first() else {
            return Err(Error::Validation("a matroid system needs at least one matroid".into()));
        };
        let n = first.n();
        if let Some(m) = matroids.iter().find(|m| m.n() != n) {
            return Err(Error::DimensionMismatch(format!("ground sets of size {n} and {}", m.n())));
        }
        Ok(MatroidSystem { matroids })
    }

    pub fn matroids(&self) -> &[Matroid] {
        &self.matroids
    }

    pub fn k(&self) -> usize {
        self.matroids.len()
    }

    pub fn n(&self) -> usize {
        self.matroids[0].n()
    }

    pub fn is_independent(&self, s: SubsetMask) -> bool {
        self.matroids.iter().all(|m| m.is_independent(s))
    }

    /// `min_i rank_{M_i}(s)`.
    pub fn min_rank(&self, s: SubsetMask) -> usize {
        self.matroids.iter().map(|m| m.rank(s)).min().unwrap_or(0)
    }

    pub fn is_partition_system(&self) -> bool {
        self.matroids.iter().all(Matroid::is_partition)
    }

    /// `⋂L` as a complex.
    pub fn intersection(&self) -> Result<Complex> {
        Complex::from_predicate(self.n(), |s| self.is_independent(s))
    }

    /// `rank_{⋂L}(U)` by exhaustive search.
    pub fn common_rank(&self, u: SubsetMask) -> usize {
        if self.k() == 2 {
            return max_common_independent(&self.matroids[0].restrict(u), &self.matroids[1].restrict(u)).len();
        }
        let mut best = 0;
        search_common(self, u, SubsetMask::EMPTY, u.iter().collect::<Vec<_>>().as_slice(), &mut best);
        best
    }

    /// `L_U`: each matroid restricted to `U`, keeping the ground set.
    pub fn restrict(&self, u: SubsetMask) -> MatroidSystem {
        MatroidSystem { matroids: self.matroids.iter().map(|m| m.restrict(u)).collect() }
    }
}

fn search_common(l: &MatroidSystem, u: SubsetMask, cur: SubsetMask, rest: &[usize], best: &mut usize) {
    *best = (*best).max(cur.len());
    if cur.len() + rest.len() <= *best || cur.len() + l.min_rank(u) - cur.len() <= *best {
        return;
    }
    for (i, &x) in rest.iter().enumerate() {
        let next = cur.with(x);
        if l.is_independent(next) {
            search_common(l, u, next, &rest[i + 1..], best);
        }
    }
}

/// Result of matroid intersection with a dual certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersection {
    /// A maximum common independent set.
    pub common: SubsetMask,
    /// A set `X` with `rank_1(X) + rank_2(V ∖ X) = |common|`.
    pub cover: SubsetMask,
}

/// Maximum-cardinality common independent set.
pub fn max_common_independent<A: MatroidOracle + ?Sized, B: MatroidOracle + ?Sized>(m1: &A, m2: &B) -> SubsetMask {
    intersect(m1, m2).common
}

/// Augmenting-path matroid intersection.
pub fn intersect<A: MatroidOracle + ?Sized, B: MatroidOracle + ?Sized>(m1: &A, m2: &B) -> Intersection {
    let n = m1.ground_size();
    assert_eq!(n, m2.ground_size(), "matroid intersection needs equal ground sets");
    let v = SubsetMask::full(n);
    let mut i = SubsetMask::EMPTY;
    loop {
        let out = v.difference(i);
        let x1: SubsetMask = out.iter().filter(|&x| m1.is_independent(i.with(x))).collect();
        let x2: SubsetMask = out.iter().filter(|&x| m2.is_independent(i.with(x))).collect();
        // adjacency: y -> x when I - y + x ∈ M1, x -> y when I - y + x ∈ M2
        let mut succ = vec![SubsetMask::EMPTY; n];
        for y in i.iter() {
            for x in out.iter() {
                let swapped = i.without(y).with(x);
                if !x1.contains(x) && m1.is_independent(swapped) {
                    succ[y] = succ[y].with(x);
                }
                if !x2.contains(x) && m2.is_independent(swapped) {
                    succ[x] = succ[x].with(y);
                }
            }
        }
        match shortest_path(n, &succ, x1, x2) {
            Some(path) => {
                for e in path {
                    i = if i.contains(e) { i.without(e) } else { i.with(e) };
                }
            }
            None => {
                // elements that can reach X2
                let mut reach = x2;
                loop {
                    let grown: SubsetMask =
                        v.iter().filter(|&e| reach.contains(e) || !succ[e].is_disjoint(reach)).collect();
                    if grown == reach {
                        break;
                    }
                    reach = grown;
                }
                return Intersection { common: i, cover: reach };
            }
        }
    }
}

fn shortest_path(n: usize, succ: &[SubsetMask], from: SubsetMask, to: SubsetMask) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; n];
    let mut seen = from;
    let mut queue: std::collections::VecDeque<usize> = from.iter().collect();
    while let Some(u) = queue.pop_front() {
        if to.contains(u) {
            let mut path = vec![u];
            let mut c = u;
            while prev[c] != usize::MAX {
                c = prev[c];
                path.push(c);
            }
            return Some(path);
        }
        for w in succ[u].difference(seen).iter() {
            seen = seen.with(w);
            prev[w] = u;
            queue.push_back(w);
        }
    }
    None
}

/// Whether a complex is a matroid: every face maximal inside some `C[U]`
/// must have size `rank_C(U)`.
pub fn check_matroid_axioms(c: &Complex) -> Result<bool> {
    check_cap("matroid axiom check ground set", AXIOM_CAP, c.n())?;
    let v = SubsetMask::full(c.n());
    for s in c.faces()? {
        let extend: SubsetMask = v.difference(s).iter().filter(|&x| c.contains(s.with(x))).collect();
        if c.rank_of(v.difference(extend)) != s.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `C` equals the intersection of `NC(e)` over its minimal
/// non-faces, all of which have size two.
pub fn nc_flag_witness(c: &Complex) -> Result<Option<Vec<Matroid>>> {
    let mins = c.min_nonfaces()?;
    if !mins.is_uniform(2) {
        return Ok(None);
    }
    let ms: Vec<Matroid> = mins.edges().iter().map(|&e| Matroid::nc(c.n(), e)).collect::<Result<_>>()?;
    if ms.is_empty() {
        return Ok(Some(vec![Matroid::free(c.n())]));
    }
    let inter = MatroidSystem::new(ms.clone())?.intersection()?;
    Ok((inter == *c).then_some(ms))
}

/// Exact edge chromatic number of a hypergraph: the least number of matchings
/// covering its edges, with one such partition.
pub fn edge_chromatic(h: &Hypergraph) -> Result<(usize, Vec<Vec<usize>>)> {
    check_cap("edge coloring edge count", 64, h.num_edges())?;
    let m = h.num_edges();
    if m == 0 {
        return Ok((0, Vec::new()));
    }
    let edges = h.edges();
    let lower = (0..h.n()).map(|v| h.degree(v)).max().unwrap_or(0).max(1);
    // order edges by decreasing size for earlier conflicts
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(edges[i].len()));
    for k in lower..=m {
        let mut used = vec![SubsetMask::EMPTY; k];
        let mut assign = vec![0usize; m];
        if color_edges(edges, &order, 0, &mut used, &mut assign, 0) {
            let mut classes = vec![Vec::new(); k];
            for (i, &c) in assign.iter().enumerate() {
                classes[c].push(i);
            }
            classes.retain(|c| !c.is_empty());
            return Ok((classes.len(), classes));
        }
    }
    unreachable!("m colors always suffice")
}

fn color_edges(
    edges: &[SubsetMask],
    order: &[usize],
    pos: usize,
    used: &mut [SubsetMask],
    assign: &mut [usize],
    opened: usize,
) -> bool {
    let Some(&e) = order.get(pos) else {
        return true;
    };
    let limit = (opened + 1).min(used.len());
    for c in 0..limit {
        if used[c].is_disjoint(edges[e]) {
            used[c] = used[c].union(edges[e]);
            assign[e] = c;
            if color_edges(edges, order, pos + 1, used, assign, opened.max(c + 1)) {
                return true;
            }
            used[c] = used[c].difference(edges[e]);
        }
    }
    false
}

/// Upper bound on matdim from an edge coloring of the minimal non-faces,
/// with the generalized partition matroids realizing it.
pub fn matdim_upper(c: &Complex) -> Result<(usize, Vec<Matroid>)> {
    let n = c.n();
    let mins = c.min_nonfaces()?;
    let (_, classes) = edge_chromatic(&mins)?;
    if classes.is_empty() {
        return Ok((1, vec![Matroid::free(n)]));
    }
    let mut out = Vec::with_capacity(classes.len());
    for class in classes {
        let mut parts = Vec::new();
        let mut caps = Vec::new();
        let mut covered = SubsetMask::EMPTY;
        for i in class {
            let e = mins.edges()[i];
            parts.push(e);
            caps.push(e.len() - 1);
            covered = covered.union(e);
        }
        let rest = SubsetMask::full(n).difference(covered);
        if !rest.is_empty() {
            parts.push(rest);
            caps.push(rest.len());
        }
        out.push(Matroid::gen_partition(n, parts, caps)?);
    }
    Ok((out.len(), out))
}

/// Independence families of all matroids on `[0, n)`, as bitsets over the
/// `2^n` subsets.
pub fn all_matroids(n: usize) -> Result<&'static [u64]> {
    check_cap("matroid enumeration ground set", MATDIM_EXACT_CAP, n)?;
    static CACHE: [OnceLock<Vec<u64>>; MATDIM_EXACT_CAP + 1] = [const { OnceLock::new() }; MATDIM_EXACT_CAP + 1];
    Ok(CACHE[n].get_or_init(|| enumerate_matroids(n)))
}

fn enumerate_matroids(n: usize) -> Vec<u64> {
    let full = SubsetMask::full(n);
    let mut out = Vec::new();
    for r in 0..=n {
        let cands: Vec<SubsetMask> = full.subsets_of_size(r).collect();
        let m = cands.len();
        for fam in 1u64..(1u64 << m) {
            let bases: Vec<SubsetMask> = (0..m).filter(|&i| fam >> i & 1 == 1).map(|i| cands[i]).collect();
            let member = bases.iter().fold(0u64, |a, b| a | 1u64 << b.0);
            if basis_exchange(&bases, member) {
                let mut indep = 0u64;
                for b in &bases {
                    for s in b.subsets() {
                        indep |= 1u64 << s.0;
                    }
                }
                out.push(indep);
            }
        }
    }
    out
}

fn basis_exchange(bases: &[SubsetMask], member: u64) -> bool {
    for &b1 in bases {
        for &b2 in bases {
            for x in b1.difference(b2).iter() {
                let base = b1.without(x);
                if !b2.difference(b1).iter().any(|y| member >> base.with(y).0 & 1 == 1) {
                    return false;
                }
            }
        }
    }
    true
}

fn face_bits(c: &Complex) -> Result<u64> {
    Ok(c.faces()?.iter().fold(0u64, |a, s| a | 1u64 << s.0))
}

/// Least `k` such that some `k` sets from `cands` (bitmasks over the
/// universe) cover `universe`.
fn min_cover(universe: u64, cands: &[u64]) -> Option<usize> {
    if universe == 0 {
        return Some(0);
    }
    let mut frontier: HashSet<u64> = HashSet::from([0]);
    let mut seen = frontier.clone();
    for k in 1..=universe.count_ones() as usize {
        let mut next = HashSet::new();
        for &m in &frontier {
            // branch only on sets covering the lowest uncovered element
            let low = (universe & !m).trailing_zeros();
            for &c in cands.iter().filter(|&&c| c >> low & 1 == 1) {
                let nm = m | c;
                if nm == universe {
                    return Some(k);
                }
                if seen.insert(nm) {
                    next.insert(nm);
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        frontier = next;
    }
    None
}

fn matdim_search(c: &Complex, families: &[u64]) -> Result<usize> {
    let faces = face_bits(c)?;
    let mins = c.min_nonfaces()?;
    let universe = (1u64 << mins.num_edges()) - 1;
    let mut cands: Vec<u64> = families
        .iter()
        .filter(|&&m| faces & !m == 0)
        .map(|&m| {
            mins.edges().iter().enumerate().filter(|(_, e)| m >> e.0 & 1 == 0).fold(0u64, |a, (i, _)| a | 1 << i)
        })
        .collect();
    cands.sort_unstable();
    cands.dedup();
    let maximal: Vec<u64> =
        cands.iter().copied().filter(|&a| !cands.iter().any(|&b| b != a && a & b == a)).collect();
    let k = min_cover(universe, &maximal)
        .ok_or_else(|| Error::Domain("complex is not an intersection of candidate matroids".into()))?;
    Ok(k.max(1))
}

/// Exact least number of matroids whose intersection is `C`.
pub fn matdim_exact(c: &Complex) -> Result<usize> {
    check_cap("matdim_exact ground set", MATDIM_EXACT_CAP, c.n())?;
    matdim_search(c, all_matroids(c.n())?)
}

/// Least number of generalized partition matroids whose intersection is `C`.
pub fn gp_matdim_exact(c: &Complex) -> Result<usize> {
    check_cap("gp_matdim ground set", MATDIM_EXACT_CAP, c.n())?;
    let fams: Vec<u64> = gen_partition_matroids(c.n())
        .iter()
        .map(|m| (0..1u64 << c.n()).filter(|&s| m.is_independent(SubsetMask(s))).fold(0u64, |a, s| a | 1 << s))
        .collect();
    matdim_search(c, &fams)
}

/// Every generalized partition matroid on `[0, n)`.
pub fn gen_partition_matroids(n: usize) -> Vec<Matroid> {
    let mut out = Vec::new();
    for parts in set_partitions(n) {
        let sizes: Vec<usize> = parts.iter().map(|p| p.len()).collect();
        let mut caps = vec![0usize; parts.len()];
        loop {
            out.push(Matroid::GenPartition { n, parts: parts.clone(), caps: caps.clone() });
            let mut i = 0;
            while i < caps.len() && caps[i] == sizes[i] {
                caps[i] = 0;
                i += 1;
            }
            if i == caps.len() {
                break;
            }
            caps[i] += 1;
        }
    }
    out
}

fn set_partitions(n: usize) -> Vec<Vec<SubsetMask>> {
    let mut out = Vec::new();
    let mut blocks: Vec<SubsetMask> = Vec::new();
    fn go(v: usize, n: usize, blocks: &mut Vec<SubsetMask>, out: &mut Vec<Vec<SubsetMask>>) {
        if v == n {
            out.push(blocks.clone());
            return;
        }
        for i in 0..blocks.len() {
            blocks[i] = blocks[i].with(v);
            go(v + 1, n, blocks, out);
            blocks[i] = blocks[i].without(v);
        }
        blocks.push(SubsetMask::singleton(v));
        go(v + 1, n, blocks, out);
        blocks.pop();
    }
    go(0, n, &mut blocks, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[usize]) -> SubsetMask {
        SubsetMask::from_indices(v.iter().copied())
    }

    fn k4() -> Matroid {
        Matroid::graphic(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn ranks() {
        let p = Matroid::partition(3, vec![m(&[0, 1]), m(&[2])]).unwrap();
        assert_eq!(p.rank(m(&[0, 1, 2])), 2);
        assert_eq!(Matroid::uniform(4, 2).unwrap().rank(m(&[0, 1, 2])), 2);
        assert_eq!(k4().full_rank(), 3);
    }

    #[test]
    fn spans() {
        let nc = Matroid::nc(3, m(&[0, 1])).unwrap();
        assert_eq!(nc.span(m(&[0])), m(&[0, 1]));
        let tri = Matroid::graphic(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(tri.span(m(&[0, 1])), m(&[0, 1, 2]));
        let with_loop = Matroid::graphic(2, vec![(0, 0), (0, 1)]).unwrap();
        assert_eq!(with_loop.span(SubsetMask::EMPTY), m(&[0]));
    }

    #[test]
    fn circuit_examples() {
        assert_eq!(Matroid::uniform(3, 1).unwrap().circuits().unwrap().num_edges(), 3);
        assert_eq!(Matroid::nc(3, m(&[0, 1])).unwrap().circuits().unwrap().edge_lists(), vec![vec![0, 1]]);
        let c = k4().circuits().unwrap();
        assert_eq!(c.num_edges(), 7);
        assert_eq!(c.edges().iter().filter(|e| e.len() == 3).count(), 4);
    }

    #[test]
    fn duals_and_contractions() {
        assert_eq!(Matroid::uniform(5, 2).unwrap().dual(), Matroid::uniform(5, 3).unwrap());
        let g = k4();
        let dd = Matroid::Dual(Box::new(Matroid::Dual(Box::new(g.clone()))));
        assert!(g.ground().subsets().all(|s| g.rank(s) == dd.rank(s)));
        let tri = Matroid::graphic(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(tri.contract(m(&[0, 1])).rank(m(&[0, 1])), 1);
        assert!(tri.contract(m(&[0, 1])).is_loop(2));
        assert_eq!(tri.coloops(), SubsetMask::EMPTY);
        assert_eq!(Matroid::free(2).coloops(), m(&[0, 1]));
    }

    #[test]
    fn axiom_check() {
        assert!(check_matroid_axioms(&Complex::simplex(3)).unwrap());
        let ab = Complex::from_lists(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(!check_matroid_axioms(&ab).unwrap());
        let gp = Matroid::gen_partition(5, vec![m(&[0, 1, 2]), m(&[3, 4])], vec![2, 1]).unwrap();
        assert!(check_matroid_axioms(&gp.to_complex().unwrap()).unwrap());
    }

    #[test]
    fn intersection_examples() {
        let a = Matroid::partition(3, vec![m(&[0, 1]), m(&[2])]).unwrap();
        let b = Matroid::partition(3, vec![m(&[0]), m(&[1, 2])]).unwrap();
        let r = intersect(&a, &b);
        assert_eq!(r.common.len(), 2);
        assert_eq!(a.rank(r.cover) + b.rank(r.cover.complement(3)), 2);
        let u = Matroid::uniform(4, 2).unwrap();
        assert_eq!(max_common_independent(&u, &u).len(), 2);
        // C_6 as a bipartite graph: elements are edges, sides {0,2,4} / {1,3,5}
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)];
        let side = |s: usize| -> Vec<SubsetMask> {
            (0..3).map(|j| edges.iter().enumerate().filter(|(_, e)| [e.0, e.1].contains(&(2 * j + s))).map(|(i, _)| i).collect()).collect()
        };
        let p = Matroid::partition(6, side(0)).unwrap();
        let q = Matroid::partition(6, side(1)).unwrap();
        assert_eq!(max_common_independent(&p, &q).len(), 3);
    }

    #[test]
    fn matroid_counts() {
        assert_eq!(all_matroids(3).unwrap().len(), 16);
        assert_eq!(all_matroids(4).unwrap().len(), 68);
    }

    #[test]
    fn matdim_examples() {
        // 2^A ∪ 2^B with |A| = 1, |B| = 3
        let ab = Complex::from_lists(4, &[vec![0], vec![1, 2, 3]]).unwrap();
        assert_eq!(matdim_exact(&ab).unwrap(), 3);
        assert_eq!(matdim_upper(&ab).unwrap().0, 3);
        let md = Complex::from_predicate(4, |s| s.len() <= 2 || !s.contains(3)).unwrap();
        assert_eq!(matdim_exact(&md).unwrap(), 3);
        let k4c = k4().to_complex().unwrap();
        assert_eq!(matdim_exact(&Matroid::uniform(5, 2).unwrap().to_complex().unwrap()).unwrap(), 1);
        assert_eq!(matdim_upper(&Complex::simplex(4)).unwrap().0, 1);
        let (k, ms) = matdim_upper(&k4c).unwrap();
        let inter = MatroidSystem::new(ms).unwrap().intersection().unwrap();
        assert_eq!(inter, k4c);
        assert!(k >= 1);
    }

    #[test]
    fn flag_complexes_are_nc_intersections() {
        let path = Hypergraph::from_lists(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        let c = Complex::independence(&path).unwrap();
        assert_eq!(nc_flag_witness(&c).unwrap().map(|v| v.len()), Some(2));
    }
}
