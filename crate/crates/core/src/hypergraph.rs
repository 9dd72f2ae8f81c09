//! Hypergraphs on a dense ground set `[0, n)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{SubsetMask, MAX_GROUND};

/// A finite set of distinct edges over `[0, n)`.
///
/// Edges are deduplicated and sorted on construction, so two hypergraphs with
/// the same edge set compare equal regardless of input order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<SubsetMask>,
}

/// A dense relabeling: `map[old] = Some(new)` for retained elements.
pub type Relabel = Vec<Option<usize>>;

/// Dense relabeling of the members of `keep`, in ascending order.
pub fn dense_relabel(n: usize, keep: SubsetMask) -> Relabel {
    let mut map = vec![None; n];
    for (new, old) in keep.iter().enumerate() {
        map[old] = Some(new);
    }
    map
}

impl Hypergraph {
    pub fn new<I: IntoIterator<Item = SubsetMask>>(n: usize, edges: I) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::cap("hypergraph ground set", MAX_GROUND, n));
        }
        let full = SubsetMask::full(n);
        let mut edges: Vec<SubsetMask> = edges.into_iter().collect();
        if let Some(e) = edges.iter().find(|e| !e.is_subset(full)) {
            return Err(Error::Validation(format!("edge {e} is not contained in [0,{n})")));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Hypergraph { n, edges })
    }

    pub fn from_lists(n: usize, lists: &[Vec<usize>]) -> Result<Self> {
        if let Some(&v) = lists.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::Validation(format!("vertex {v} out of range for n = {n}")));
        }
        Self::new(n, lists.iter().map(|l| l.iter().copied().collect()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[SubsetMask] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_set(&self) -> SubsetMask {
        SubsetMask::full(self.n)
    }

    /// Union of all edges.
    pub fn covered(&self) -> SubsetMask {
        self.edges.iter().fold(SubsetMask::EMPTY, |a, &e| a.union(e))
    }

    pub fn has_empty_edge(&self) -> bool {
        self.edges.iter().any(|e| e.is_empty())
    }

    pub fn is_uniform(&self, k: usize) -> bool {
        self.edges.iter().all(|e| e.len() == k)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    pub fn edge_lists(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(|e| e.to_vec()).collect()
    }

    /// `H[U]`: the edges contained in `u`, relabeled densely onto `[0, |U|)`.
    pub fn induced(&self, u: SubsetMask) -> (Hypergraph, Relabel) {
        let u = u.intersection(self.vertex_set());
        let map = dense_relabel(self.n, u);
        let edges = self.edges.iter().filter(|e| e.is_subset(u)).map(|e| e.relabel(&map));
        (Hypergraph::new(u.len(), edges).expect("relabeled edges stay in range"), map)
    }

    /// `H/X = {f ∖ X : f ∈ E, f ⊄ X}` on the ground set `[0,n) ∖ X`.
    pub fn contract(&self, x: SubsetMask) -> (Hypergraph, Relabel) {
        let keep = self.vertex_set().difference(x);
        let map = dense_relabel(self.n, keep);
        let edges = self
            .edges
            .iter()
            .filter(|e| !e.is_subset(x))
            .map(|e| e.difference(x).relabel(&map));
        (Hypergraph::new(keep.len(), edges).expect("relabeled edges stay in range"), map)
    }

    /// `H − e`: the same ground set without edge `e`.
    pub fn delete_edge(&self, e: SubsetMask) -> Hypergraph {
        Hypergraph { n: self.n, edges: self.edges.iter().copied().filter(|&f| f != e).collect() }
    }

    /// The graph on `E(H)` joining intersecting edges; its independence
    /// complex is the matching complex of `H`.
    pub fn line_graph(&self) -> Result<Hypergraph> {
        if self.has_empty_edge() {
            return Err(Error::EmptyEdge);
        }
        let m = self.edges.len();
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if !self.edges[i].is_disjoint(self.edges[j]) {
                    out.push(SubsetMask::from_indices([i, j]));
                }
            }
        }
        Hypergraph::new(m, out)
    }

    /// Containment-minimal edges.
    pub fn minimal_edges(&self) -> Vec<SubsetMask> {
        self.edges
            .iter()
            .copied()
            .filter(|&e| !self.edges.iter().any(|&f| f != e && f.is_subset(e)))
            .collect()
    }

    /// Whether `s` contains no edge, i.e. `s ∈ I(H)`.
    pub fn is_independent(&self, s: SubsetMask) -> bool {
        !self.edges.iter().any(|e| e.is_subset(s))
    }

    /// Whether the edges in `set` are pairwise disjoint.
    pub fn is_matching(&self, set: SubsetMask) -> bool {
        let mut seen = SubsetMask::EMPTY;
        for i in set.iter() {
            if !seen.is_disjoint(self.edges[i]) {
                return false;
            }
            seen = seen.union(self.edges[i]);
        }
        true
    }

    /// A partition of the vertices into `k` classes with every edge meeting
    /// each class in exactly one vertex, if one exists among the supplied
    /// `parts`.
    pub fn is_k_partite_with(&self, parts: &[SubsetMask]) -> bool {
        let mut seen = SubsetMask::EMPTY;
        for &p in parts {
            if !seen.is_disjoint(p) {
                return false;
            }
            seen = seen.union(p);
        }
        seen == self.vertex_set()
            && self.edges.iter().all(|e| parts.iter().all(|p| e.intersection(*p).len() == 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: usize, e: &[&[usize]]) -> Hypergraph {
        Hypergraph::from_lists(n, &e.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn induced_filters_and_relabels() {
        let g = h(3, &[&[0, 1], &[1, 2]]);
        let (i, map) = g.induced(SubsetMask::from_indices([0, 1]));
        assert_eq!(i, h(2, &[&[0, 1]]));
        assert_eq!(map, vec![Some(0), Some(1), None]);
        let (i, _) = h(3, &[&[0, 1, 2]]).induced(SubsetMask::from_indices([0, 1]));
        assert_eq!(i.num_edges(), 0);
        let (e, _) = g.induced(SubsetMask::EMPTY);
        assert_eq!((e.n(), e.num_edges()), (0, 0));
    }

    #[test]
    fn contraction() {
        let (c, _) = h(3, &[&[0, 1], &[1, 2]]).contract(SubsetMask::singleton(1));
        assert_eq!(c, h(2, &[&[0], &[1]]));
        let (c, _) = h(3, &[&[0, 1]]).contract(SubsetMask::from_indices([0, 1]));
        assert_eq!((c.n(), c.num_edges()), (1, 0));
        let (c, _) = h(4, &[&[0, 1, 2], &[2, 3]]).contract(SubsetMask::singleton(2));
        assert_eq!(c, h(3, &[&[0, 1], &[2]]));
    }

    #[test]
    fn line_graphs() {
        assert_eq!(h(3, &[&[0, 1], &[1, 2]]).line_graph().unwrap(), h(2, &[&[0, 1]]));
        assert_eq!(h(4, &[&[0, 1], &[2, 3]]).line_graph().unwrap().num_edges(), 0);
        assert_eq!(h(2, &[&[], &[0]]).line_graph(), Err(Error::EmptyEdge));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(Hypergraph::from_lists(2, &[vec![0, 2]]).is_err());
    }
}
