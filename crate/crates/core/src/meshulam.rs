//! Domination lower bounds on the connectivity of independence complexes:
//! `γ^E` of graphs and hypergraphs, and the delete/contract certificate.

use serde::Serialize;

use crate::complex::{Complex, ENUM_CAP};
use crate::error::{check_cap, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::subset::SubsetMask;
use crate::topology::{eta_h, ExtEta};

/// Largest edge count for the exact hypergraph search.
pub const FRUGAL_EDGE_CAP: usize = 16;
/// Largest edge count for the exhaustive delete/contract minimax.
pub const MINIMAX_EDGE_CAP: usize = 12;

/// An ordered sequence of edges of a hypergraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrugalSequence {
    pub edges: Vec<SubsetMask>,
}

impl FrugalSequence {
    pub fn union(&self) -> SubsetMask {
        self.edges.iter().fold(SubsetMask::EMPTY, |a, &e| a.union(e))
    }

    /// `|∪K| − |K|`.
    pub fn value(&self) -> usize {
        self.union().len() - self.edges.len()
    }

    /// Every edge brings at least two new vertices.
    pub fn is_frugal(&self) -> bool {
        let mut seen = SubsetMask::EMPTY;
        for &e in &self.edges {
            if e.difference(seen).len() < 2 {
                return false;
            }
            seen = seen.union(e);
        }
        true
    }

    /// `Σ_i (|e_i ∖ ∪_{ℓ<i} e_ℓ| − 1)`, which equals [`Self::value`].
    pub fn incremental_value(&self) -> usize {
        let mut seen = SubsetMask::EMPTY;
        let mut total = 0;
        for &e in &self.edges {
            total += e.difference(seen).len().saturating_sub(1);
            seen = seen.union(e);
        }
        total
    }

    pub fn is_dominating(&self, h: &Hypergraph) -> bool {
        dominates(h, self.union())
    }
}

/// Every vertex outside `u` is the only vertex outside `u` of some edge.
fn dominates(h: &Hypergraph, u: SubsetMask) -> bool {
    let rest = h.vertex_set().difference(u);
    let hit = h.edges().iter().fold(SubsetMask::EMPTY, |a, e| {
        let d = e.difference(u);
        if d.len() == 1 { a.union(d) } else { a }
    });
    rest.is_subset(hit)
}

/// Minimum number of edges whose union dominates every vertex of the graph
/// (every vertex has a neighbor in the union).
pub fn gamma_e_graph(g: &Hypergraph) -> Result<(ExtEta, Vec<SubsetMask>)> {
    if !g.is_uniform(2) {
        return Err(Error::Domain("γ^E of a graph needs a 2-uniform hypergraph".into()));
    }
    let n = g.n();
    check_cap("graph domination vertex count", ENUM_CAP, n)?;
    let mut nbr = vec![SubsetMask::EMPTY; n];
    for e in g.edges() {
        let v = e.to_vec();
        nbr[v[0]] = nbr[v[0]].with(v[1]);
        nbr[v[1]] = nbr[v[1]].with(v[0]);
    }
    if nbr.iter().any(|m| m.is_empty()) {
        return Ok((ExtEta::Infinite, Vec::new()));
    }
    let full = SubsetMask::full(n);
    let dominated = |u: SubsetMask| u.iter().fold(SubsetMask::EMPTY, |a, v| a.union(nbr[v])) == full;
    let size = 1usize << n;
    let mut prev: Vec<Option<(SubsetMask, SubsetMask)>> = vec![None; size];
    let mut frontier = vec![SubsetMask::EMPTY];
    let mut visited = vec![false; size];
    visited[0] = true;
    let mut depth = 0;
    loop {
        if let Some(&u) = frontier.iter().find(|&&u| dominated(u)) {
            let mut out = Vec::new();
            let mut cur = u;
            while let Some((p, e)) = prev[cur.0 as usize] {
                out.push(e);
                cur = p;
            }
            out.reverse();
            return Ok((ExtEta::finite(depth), out));
        }
        let mut next = Vec::new();
        for &u in &frontier {
            for &e in g.edges() {
                let w = u.union(e);
                if !visited[w.0 as usize] {
                    visited[w.0 as usize] = true;
                    prev[w.0 as usize] = Some((u, e));
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            return Ok((ExtEta::Infinite, Vec::new()));
        }
        frontier = next;
        depth += 1;
    }
}

/// Minimum of `|∪K| − |K|` over frugal dominating sequences `K`, with an
/// optimal sequence.
pub fn gamma_e_hyper(h: &Hypergraph) -> Result<(ExtEta, Option<FrugalSequence>)> {
    check_cap("frugal sequence edge count", FRUGAL_EDGE_CAP, h.num_edges())?;
    check_cap("frugal sequence vertex count", ENUM_CAP, h.n())?;
    let size = 1usize << h.n();
    // most edges in a frugal sequence with the given union
    let mut best: Vec<i32> = vec![-1; size];
    let mut parent: Vec<(u64, u32)> = vec![(0, 0); size];
    best[0] = 0;
    for u in 0..size {
        if best[u] < 0 {
            continue;
        }
        let um = SubsetMask(u as u64);
        for (i, &e) in h.edges().iter().enumerate() {
            if e.difference(um).len() > 1 {
                let w = um.union(e).0 as usize;
                if best[u] + 1 > best[w] {
                    best[w] = best[u] + 1;
                    parent[w] = (u as u64, i as u32);
                }
            }
        }
    }
    let mut answer: Option<(usize, usize)> = None;
    for u in 0..size {
        if best[u] < 0 || !dominates(h, SubsetMask(u as u64)) {
            continue;
        }
        let v = SubsetMask(u as u64).len() - best[u] as usize;
        if answer.is_none_or(|(bv, _)| v < bv) {
            answer = Some((v, u));
        }
    }
    let Some((value, u)) = answer else {
        return Ok((ExtEta::Infinite, None));
    };
    let mut edges = Vec::new();
    let mut cur = u;
    while cur != 0 {
        let (p, i) = parent[cur];
        edges.push(h.edges()[i as usize]);
        cur = p as usize;
    }
    edges.reverse();
    Ok((ExtEta::finite(value), Some(FrugalSequence { edges })))
}

/// How the delete/contract branch is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strategy {
    /// Full minimax over both branches at every step.
    Exhaustive,
    /// Delete when `η_H` does not drop under deletion, contract otherwise.
    Guided,
    /// Exhaustive within [`MINIMAX_EDGE_CAP`], guided beyond.
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// Lower bound on `η_H(I(H))`.
    pub bound: ExtEta,
    /// Original edges `e_1..e_p` whose trimmed versions were contracted.
    pub sequence: FrugalSequence,
    /// The trimmed edges `e_i ∖ ∪_{ℓ<i} e_ℓ` actually contracted.
    pub contracted: Vec<SubsetMask>,
    pub strategy: Strategy,
}

#[derive(Clone, Debug)]
struct State {
    vertices: SubsetMask,
    /// Current edge and the index of an original edge it came from.
    edges: Vec<(SubsetMask, usize)>,
}

enum Step {
    Done(ExtEta),
    Branch(usize),
}

impl State {
    fn normalize(&mut self) -> Step {
        loop {
            let Some(&(s, _)) = self.edges.iter().find(|(e, _)| e.len() == 1) else {
                break;
            };
            self.vertices = self.vertices.difference(s);
            self.edges.retain(|(e, _)| e.is_disjoint(s));
        }
        if self.vertices.is_empty() {
            return Step::Done(ExtEta::Finite(0));
        }
        if self.edges.is_empty() {
            return Step::Done(ExtEta::Infinite);
        }
        let pick = (0..self.edges.len()).min_by_key(|&i| (self.edges[i].0.len(), self.edges[i].1)).unwrap();
        Step::Branch(pick)
    }

    fn delete(&self, i: usize) -> State {
        let mut edges = self.edges.clone();
        edges.remove(i);
        State { vertices: self.vertices, edges }
    }

    fn contract(&self, i: usize) -> State {
        let f = self.edges[i].0;
        let mut edges: Vec<(SubsetMask, usize)> = Vec::new();
        for (j, &(e, o)) in self.edges.iter().enumerate() {
            if j == i || e.is_subset(f) {
                continue;
            }
            let d = e.difference(f);
            match edges.iter_mut().find(|(x, _)| *x == d) {
                Some(slot) => slot.1 = slot.1.min(o),
                None => edges.push((d, o)),
            }
        }
        State { vertices: self.vertices.difference(f), edges }
    }

    fn independence_eta(&self, n: usize) -> Result<ExtEta> {
        let h = Hypergraph::new(n, self.edges.iter().map(|(e, _)| *e))?;
        let (ind, _) = Complex::independence(&h)?.induced(self.vertices);
        eta_h(&ind)
    }
}

/// `(bound, path)` where `path` lists `(trimmed edge, origin)` contractions
/// along the branch attaining the minimum.
fn minimax(s: State) -> (ExtEta, Vec<(SubsetMask, usize)>) {
    let mut s = s;
    match s.normalize() {
        Step::Done(v) => (v, Vec::new()),
        Step::Branch(i) => {
            let (f, o) = s.edges[i];
            let (dv, dp) = minimax(s.delete(i));
            let (cv, mut cp) = minimax(s.contract(i));
            let cv = cv + ExtEta::finite(f.len() - 1);
            if dv <= cv {
                (dv, dp)
            } else {
                cp.insert(0, (f, o));
                (cv, cp)
            }
        }
    }
}

fn guided(n: usize, s: State) -> Result<(ExtEta, Vec<(SubsetMask, usize)>)> {
    let mut s = s;
    let mut path = Vec::new();
    let mut bound = 0usize;
    loop {
        match s.normalize() {
            Step::Done(v) => return Ok((ExtEta::finite(bound) + v, path)),
            Step::Branch(i) => {
                let deleted = s.delete(i);
                if s.independence_eta(n)? >= deleted.independence_eta(n)? {
                    s = deleted;
                } else {
                    let (f, o) = s.edges[i];
                    bound += f.len() - 1;
                    path.push((f, o));
                    s = s.contract(i);
                }
            }
        }
    }
}

/// Replays the delete/contract algorithm and returns the lower bound it
/// certifies together with the frugal sequence of contracted edges.
pub fn delete_contract_certificate(h: &Hypergraph, strategy: Strategy) -> Result<Certificate> {
    if h.has_empty_edge() {
        return Err(Error::EmptyEdge);
    }
    let strategy = match strategy {
        Strategy::Auto if h.num_edges() <= MINIMAX_EDGE_CAP => Strategy::Exhaustive,
        Strategy::Auto => Strategy::Guided,
        s => s,
    };
    let start = State { vertices: h.vertex_set(), edges: h.edges().iter().copied().zip(0..).collect() };
    let (bound, path) = match strategy {
        Strategy::Exhaustive => {
            check_cap("minimax edge count", MINIMAX_EDGE_CAP, h.num_edges())?;
            minimax(start)
        }
        _ => guided(h.n(), start)?,
    };
    Ok(Certificate {
        bound,
        sequence: FrugalSequence { edges: path.iter().map(|&(_, o)| h.edges()[o]).collect() },
        contracted: path.iter().map(|&(f, _)| f).collect(),
        strategy,
    })
}

/// Both sides of the hypergraph Mayer–Vietoris inequality for edge `e`:
/// `η_H(I(H))` and `min(η_H(I(H − e)), η_H(I(H/e)) + |e| − 1)`.
pub fn meshulam_sides(h: &Hypergraph, e: SubsetMask) -> Result<(ExtEta, ExtEta)> {
    let lhs = eta_h(&Complex::independence(h)?)?;
    let del = eta_h(&Complex::independence(&h.delete_edge(e))?)?;
    let (c, _) = h.contract(e);
    let con = eta_h(&Complex::independence(&c)?)? + ExtEta::finite(e.len() - 1);
    Ok((lhs, del.min(con)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: usize, e: &[&[usize]]) -> Hypergraph {
        Hypergraph::from_lists(n, &e.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn graph_domination() {
        let c4 = h(4, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        assert_eq!(gamma_e_graph(&c4).unwrap().0, ExtEta::Finite(1));
        assert_eq!(gamma_e_graph(&h(2, &[])).unwrap().0, ExtEta::Infinite);
        assert_eq!(gamma_e_graph(&h(2, &[&[0, 1]])).unwrap().0, ExtEta::Finite(1));
        assert_eq!(gamma_e_graph(&h(0, &[])).unwrap().0, ExtEta::Finite(0));
        assert!(gamma_e_graph(&h(3, &[&[0, 1, 2]])).is_err());
    }

    #[test]
    fn hypergraph_domination() {
        assert_eq!(gamma_e_hyper(&h(2, &[&[0, 1]])).unwrap().0, ExtEta::Finite(1));
        let tri = h(3, &[&[0, 1, 2]]);
        let (g, k) = gamma_e_hyper(&tri).unwrap();
        assert_eq!(g, ExtEta::Finite(2));
        let k = k.unwrap();
        assert!(k.is_frugal() && k.is_dominating(&tri));
        assert_eq!(eta_h(&Complex::independence(&tri).unwrap()).unwrap(), ExtEta::Finite(2));
        assert_eq!(gamma_e_hyper(&h(3, &[&[0, 1]])).unwrap().0, ExtEta::Infinite);
    }

    #[test]
    fn certificates() {
        let c = delete_contract_certificate(&h(2, &[&[0, 1]]), Strategy::Auto).unwrap();
        assert_eq!(c.bound, ExtEta::Finite(1));
        assert_eq!(c.sequence.edges.len(), 1);
        let pairs = h(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        let c = delete_contract_certificate(&pairs, Strategy::Exhaustive).unwrap();
        assert!(c.bound >= ExtEta::Finite(1));
        assert!(c.bound <= eta_h(&Complex::independence(&pairs).unwrap()).unwrap());
        let g = delete_contract_certificate(&pairs, Strategy::Guided).unwrap();
        assert!(g.bound >= c.bound);
        assert!(gamma_e_hyper(&pairs).unwrap().0 <= c.bound);
        assert_eq!(delete_contract_certificate(&h(2, &[]), Strategy::Auto).unwrap().bound, ExtEta::Infinite);
    }

    #[test]
    fn sequence_values_agree() {
        let s = FrugalSequence { edges: vec![SubsetMask::from_indices([0, 1, 2]), SubsetMask::from_indices([2, 3, 4])] };
        assert!(s.is_frugal());
        assert_eq!(s.value(), 3);
        assert_eq!(s.incremental_value(), 3);
    }
}
