//! Abstract simplicial complexes stored by their maximal faces.

use serde::{Deserialize, Serialize};

use crate::error::{check_cap, Error, Result};
use crate::hypergraph::{dense_relabel, Hypergraph, Relabel};
use crate::subset::{SubsetMask, MAX_GROUND};

/// Default cap on the ground-set size for anything that enumerates all
/// subsets or all faces.
pub const ENUM_CAP: usize = 20;

/// A non-empty downward-closed family over `[0, n)`, stored as the antichain
/// of its maximal faces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Complex {
    n: usize,
    maximal: Vec<SubsetMask>,
}

fn antichain(mut sets: Vec<SubsetMask>) -> Vec<SubsetMask> {
    sets.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    sets.dedup();
    let mut out: Vec<SubsetMask> = Vec::with_capacity(sets.len());
    for s in sets {
        if !out.iter().any(|&m| s.is_subset(m)) {
            out.push(s);
        }
    }
    out.sort_unstable();
    out
}

impl Complex {
    /// The complex generated by `faces` (any family; non-maximal members are
    /// absorbed). An empty family yields the complex `{∅}`.
    pub fn new<I: IntoIterator<Item = SubsetMask>>(n: usize, faces: I) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::cap("complex ground set", MAX_GROUND, n));
        }
        let full = SubsetMask::full(n);
        let faces: Vec<SubsetMask> = faces.into_iter().collect();
        if let Some(f) = faces.iter().find(|f| !f.is_subset(full)) {
            return Err(Error::Validation(format!("face {f} is not contained in [0,{n})")));
        }
        let mut maximal = antichain(faces);
        if maximal.is_empty() {
            maximal.push(SubsetMask::EMPTY);
        }
        Ok(Complex { n, maximal })
    }

    pub fn from_lists(n: usize, lists: &[Vec<usize>]) -> Result<Self> {
        if let Some(&v) = lists.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::Validation(format!("vertex {v} out of range for n = {n}")));
        }
        Self::new(n, lists.iter().map(|l| l.iter().copied().collect()))
    }

    /// `2^[n]`.
    pub fn simplex(n: usize) -> Self {
        Complex { n, maximal: vec![SubsetMask::full(n)] }
    }

    /// The complex `{∅}` on `n` vertices (none of which is a face).
    pub fn void(n: usize) -> Self {
        Complex { n, maximal: vec![SubsetMask::EMPTY] }
    }

    /// The complex whose faces are the members of `keep` that satisfy `pred`.
    /// `pred` must be downward closed. Enumerates all subsets.
    pub fn from_predicate(n: usize, pred: impl Fn(SubsetMask) -> bool) -> Result<Self> {
        check_cap("complex ground set", ENUM_CAP, n)?;
        let faces: Vec<SubsetMask> = SubsetMask::full(n)
            .subsets()
            .filter(|&s| pred(s) && (0..n).all(|v| s.contains(v) || !pred(s.with(v))))
            .collect();
        Complex::new(n, faces)
    }

    /// Independence complex `I(H)`: sets containing no edge.
    pub fn independence(h: &Hypergraph) -> Result<Self> {
        if h.has_empty_edge() {
            return Err(Error::EmptyEdge);
        }
        Self::from_predicate(h.n(), |s| h.is_independent(s))
    }

    /// Matching complex `M(H)` on the edge set of `H`.
    pub fn matching(h: &Hypergraph) -> Result<Self> {
        Self::independence(&h.line_graph()?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn maximal_faces(&self) -> &[SubsetMask] {
        &self.maximal
    }

    pub fn contains(&self, s: SubsetMask) -> bool {
        self.maximal.iter().any(|&m| s.is_subset(m))
    }

    /// Vertices `v` with `{v}` a face.
    pub fn vertices(&self) -> SubsetMask {
        self.maximal.iter().fold(SubsetMask::EMPTY, |a, &m| a.union(m))
    }

    /// `rank_C(S) = max |S ∩ F|` over faces `F`.
    pub fn rank_of(&self, s: SubsetMask) -> usize {
        self.maximal.iter().map(|m| m.intersection(s).len()).max().unwrap_or(0)
    }

    pub fn rank(&self) -> usize {
        self.rank_of(SubsetMask::full(self.n))
    }

    pub fn dim(&self) -> isize {
        self.rank() as isize - 1
    }

    /// `C[U]`, keeping the original labels and ground set.
    pub fn restrict(&self, u: SubsetMask) -> Complex {
        Complex::new(self.n, self.maximal.iter().map(|m| m.intersection(u))).expect("subfaces stay in range")
    }

    /// `C[U]` relabeled densely onto `[0, |U|)`.
    pub fn induced(&self, u: SubsetMask) -> (Complex, Relabel) {
        let map = dense_relabel(self.n, u);
        let faces = self.maximal.iter().map(|m| m.intersection(u).relabel(&map));
        (Complex::new(u.len(), faces).expect("relabeled faces stay in range"), map)
    }

    /// All faces, including `∅`, in ascending mask order. Capped.
    pub fn faces(&self) -> Result<Vec<SubsetMask>> {
        check_cap("face enumeration ground set", ENUM_CAP, self.n)?;
        let mut out: Vec<SubsetMask> = self.maximal.iter().flat_map(|m| m.subsets()).collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Containment-minimal subsets of `[0,n)` that are not faces.
    pub fn min_nonfaces(&self) -> Result<Hypergraph> {
        check_cap("non-face enumeration ground set", ENUM_CAP, self.n)?;
        let mut out = Vec::new();
        for s in SubsetMask::full(self.n).subsets() {
            if !self.contains(s) && s.iter().all(|v| self.contains(s.without(v))) {
                out.push(s);
            }
        }
        Hypergraph::new(self.n, out)
    }

    /// The join `C * D`, with `D` shifted by `C.n`.
    pub fn join(&self, other: &Complex) -> Result<Complex> {
        let n = self.n + other.n;
        if n > MAX_GROUND {
            return Err(Error::cap("join ground set", MAX_GROUND, n));
        }
        let mut faces = Vec::with_capacity(self.maximal.len() * other.maximal.len());
        for &a in &self.maximal {
            for &b in &other.maximal {
                faces.push(SubsetMask(a.0 | (b.0 << self.n)));
            }
        }
        Complex::new(n, faces)
    }

    /// Intersection of complexes on the same ground set.
    pub fn intersect(&self, other: &Complex) -> Result<Complex> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.n, other.n)));
        }
        let mut faces = Vec::new();
        for &a in &self.maximal {
            for &b in &other.maximal {
                faces.push(a.intersection(b));
            }
        }
        Complex::new(self.n, faces)
    }

    pub fn face_lists(&self) -> Vec<Vec<usize>> {
        self.maximal.iter().map(|m| m.to_vec()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize, f: &[&[usize]]) -> Complex {
        Complex::from_lists(n, &f.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn maximal_faces_form_an_antichain() {
        let x = c(3, &[&[0], &[0, 1], &[2], &[0, 1]]);
        assert_eq!(x.maximal_faces(), &[SubsetMask::from_indices([0, 1]), SubsetMask::singleton(2)]);
        assert_eq!(Complex::new(3, []).unwrap(), Complex::void(3));
    }

    #[test]
    fn min_nonfaces_examples() {
        assert_eq!(Complex::simplex(3).min_nonfaces().unwrap().num_edges(), 0);
        let edge = Hypergraph::from_lists(2, &[vec![0, 1]]).unwrap();
        assert_eq!(Complex::independence(&edge).unwrap().min_nonfaces().unwrap(), edge);
        // 2^A ∪ 2^B with |A| = 1, |B| = 3
        let ab = c(4, &[&[0], &[1, 2, 3]]);
        let m = ab.min_nonfaces().unwrap();
        assert_eq!(m.edge_lists(), vec![vec![0, 1], vec![0, 2], vec![0, 3]]);
    }

    #[test]
    fn joins() {
        let pt = Complex::simplex(1);
        assert_eq!(pt.join(&pt).unwrap(), Complex::simplex(2));
        let s0 = c(2, &[&[0], &[1]]);
        let sq = s0.join(&s0).unwrap();
        assert_eq!(sq.maximal_faces().len(), 4);
        assert_eq!(sq.faces().unwrap().len(), 9);
        let empty = Complex::void(0);
        assert_eq!(s0.join(&empty).unwrap(), s0);
    }

    #[test]
    fn rank_and_restriction() {
        let x = c(4, &[&[0, 1, 2], &[2, 3]]);
        assert_eq!(x.rank(), 3);
        assert_eq!(x.rank_of(SubsetMask::from_indices([0, 3])), 1);
        let (i, _) = x.induced(SubsetMask::from_indices([1, 2, 3]));
        assert_eq!(i, c(3, &[&[0, 1], &[1, 2]]));
    }
}
