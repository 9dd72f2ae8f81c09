//! Generators for the extremal instances: projective and affine planes over
//! prime fields, the complexes separating `P` from `Q`, and the
//! correspondence between systems of partition matroids and k-partite
//! hypergraphs.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::instance::Instance;
use crate::matroid::{Matroid, MatroidSystem};
use crate::rational::{format_rational, rat, RatVec, Rational};
use crate::subset::SubsetMask;

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

fn require_prime(q: usize) -> Result<()> {
    if is_prime(q) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("order {q} is not prime; only prime fields are implemented")))
    }
}

/// Non-zero vectors of `F_q^3` scaled so the first non-zero entry is 1, in
/// lexicographic order.
fn normalized_points(q: usize) -> Vec<[usize; 3]> {
    let mut pts = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let v = [a, b, c];
                if v.iter().find(|&&x| x != 0) == Some(&1) {
                    pts.push(v);
                }
            }
        }
    }
    pts
}

fn incident(p: &[usize; 3], l: &[usize; 3], q: usize) -> bool {
    (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0
}

/// `PG(2, q)`: points and lines are the 1- and 2-dimensional subspaces of
/// `F_q^3`; each line is the edge of its points.
pub fn projective_plane(q: usize) -> Result<Hypergraph> {
    require_prime(q)?;
    let pts = normalized_points(q);
    let edges = pts.iter().map(|l| (0..pts.len()).filter(|&i| incident(&pts[i], l, q)).collect::<SubsetMask>());
    Hypergraph::new(pts.len(), edges)
}

/// `T_{q+1}`: `PG(2, q)` with the first point and every line through it
/// removed, relabeled densely. Returns the hypergraph and its `q + 1` sides
/// (the removed lines minus the removed point).
pub fn truncated_plane_with_sides(q: usize) -> Result<(Hypergraph, Vec<SubsetMask>)> {
    let pg = projective_plane(q)?;
    let removed = 0usize;
    let keep = SubsetMask::full(pg.n()).without(removed);
    let (sub, map) = pg.induced(keep);
    let kept: Vec<SubsetMask> =
        pg.edges().iter().filter(|e| !e.contains(removed)).map(|e| e.relabel(&map)).collect();
    let sides: Vec<SubsetMask> = pg
        .edges()
        .iter()
        .filter(|e| e.contains(removed))
        .map(|e| e.without(removed).relabel(&map))
        .collect();
    Ok((Hypergraph::new(sub.n(), kept)?, sides))
}

pub fn truncated_projective_plane(q: usize) -> Result<Hypergraph> {
    Ok(truncated_plane_with_sides(q)?.0)
}

/// `Q_q`: the affine plane `AG(2, q)` without its vertical parallel class.
/// Point `(x, y)` has label `q·x + y`; the sides are the vertical lines.
pub fn q_k_with_sides(q: usize) -> Result<(Hypergraph, Vec<SubsetMask>)> {
    require_prime(q)?;
    let label = |x: usize, y: usize| q * x + y;
    let mut edges = Vec::new();
    for m in 0..q {
        for b in 0..q {
            edges.push((0..q).map(|x| label(x, (m * x + b) % q)).collect::<SubsetMask>());
        }
    }
    let sides = (0..q).map(|x| (0..q).map(|y| label(x, y)).collect()).collect();
    Ok((Hypergraph::new(q * q, edges)?, sides))
}

pub fn q_k(q: usize) -> Result<Hypergraph> {
    Ok(q_k_with_sides(q)?.0)
}

/// Sides of a k-partite hypergraph: a partition of the vertices with every
/// edge meeting each side in exactly one vertex, found by backtracking.
pub fn k_partition(h: &Hypergraph, k: usize) -> Option<Vec<SubsetMask>> {
    if !h.is_uniform(k) {
        return None;
    }
    let n = h.n();
    let mut color = vec![usize::MAX; n];
    fn go(v: usize, h: &Hypergraph, k: usize, color: &mut Vec<usize>) -> bool {
        if v == color.len() {
            return true;
        }
        let used = color[..v].iter().copied().max().map_or(0, |m| m + 1);
        for c in 0..k.min(used + 1) {
            let clash = h.edges().iter().any(|e| e.contains(v) && e.iter().any(|u| u < v && color[u] == c));
            if !clash {
                color[v] = c;
                if go(v + 1, h, k, color) {
                    return true;
                }
            }
        }
        color[v] = usize::MAX;
        false
    }
    if !go(0, h, k, &mut color) {
        return None;
    }
    let parts: Vec<SubsetMask> = (0..k).map(|c| (0..n).filter(|&v| color[v] == c).collect()).collect();
    h.is_k_partite_with(&parts).then_some(parts)
}

/// `L(H)`: one partition matroid per side, on the edges of `H` (element `j`
/// is `H.edges()[j]`), whose parts are the stars of the side's vertices.
pub fn assoc_matroids(h: &Hypergraph, sides: &[SubsetMask]) -> Result<MatroidSystem> {
    if sides.is_empty() || !h.is_k_partite_with(sides) {
        return Err(Error::Domain("the sides do not make the hypergraph k-partite".into()));
    }
    let m = h.num_edges();
    let ms = sides
        .iter()
        .map(|side| {
            let parts: Vec<SubsetMask> = side
                .iter()
                .map(|v| (0..m).filter(|&j| h.edges()[j].contains(v)).collect::<SubsetMask>())
                .filter(|p| !p.is_empty())
                .collect();
            Matroid::partition(m, parts)
        })
        .collect::<Result<Vec<_>>>()?;
    MatroidSystem::new(ms)
}

/// `K(L)`: one vertex per part of each matroid (matroid-major order) and one
/// edge per element. Returns the hypergraph and, for each element, the index
/// of its edge in `edges()`.
pub fn assoc_hypergraph(l: &MatroidSystem) -> Result<(Hypergraph, Vec<usize>)> {
    let mut offsets = Vec::new();
    let mut total = 0;
    for m in l.matroids() {
        match m {
            Matroid::GenPartition { parts, .. } if m.is_partition() => {
                offsets.push(total);
                total += parts.len();
            }
            _ => return Err(Error::Unsupported("K(L) needs partition matroids with all caps one".into())),
        }
    }
    let n = l.n();
    let mut element_edges = Vec::with_capacity(n);
    for e in 0..n {
        let mut edge = SubsetMask::EMPTY;
        for (m, off) in l.matroids().iter().zip(&offsets) {
            if let Matroid::GenPartition { parts, .. } = m {
                let p = parts.iter().position(|p| p.contains(e)).expect("parts cover the ground set");
                edge = edge.with(off + p);
            }
        }
        element_edges.push(edge);
    }
    let h = Hypergraph::new(total, element_edges.clone())?;
    if h.num_edges() != n {
        return Err(Error::Domain("parallel elements give repeated edges".into()));
    }
    let index = element_edges.iter().map(|e| h.edges().iter().position(|f| f == e).unwrap()).collect();
    Ok((h, index))
}

/// `2^A ∪ 2^B` with `|A| = a` (vertices `0..a`) and `|B| = m`.
pub fn ab_complex(a: usize, m: usize) -> Result<Complex> {
    let n = a + m;
    Complex::new(n, [SubsetMask::full(a), SubsetMask::full(n).difference(SubsetMask::full(a))])
}

/// `{e ⊆ [n] : |e| ≤ ⌊n/2⌋ or n ∉ e}`, the last vertex being `n − 1`.
pub fn md_lower_complex(n: usize) -> Result<Complex> {
    if n == 0 {
        return Err(Error::Domain("md lower-bound complex needs n ≥ 1".into()));
    }
    let last = n - 1;
    Complex::from_predicate(n, |e| e.len() <= n / 2 || !e.contains(last))
}

/// The vector `(1/2, 1/2, 1/3, 1/3, 1/3, …, 1/k, …)` with `i` copies of `1/i`.
pub fn lambda_vector(k: usize) -> Result<RatVec> {
    if k < 2 {
        return Err(Error::Domain("need k ≥ 2".into()));
    }
    Ok(RatVec((2..=k).flat_map(|i| std::iter::repeat_n(rat(1, i as i64), i)).collect()))
}

/// `{A : v·1_A ≤ 1}` for the vector of [`lambda_vector`].
pub fn lambda_complex(k: usize) -> Result<(Complex, RatVec)> {
    let v = lambda_vector(k)?;
    let n = v.len();
    let c = Complex::from_predicate(n, |a| v.sum_over(a) <= Rational::one())?;
    Ok((c, v))
}

/// The 15-vertex flag complex with `x_1..x_9 = 0..8`, `y = 9..11`,
/// `z = 12..14`, and its weight `w`.
pub fn p_not_q_partition() -> Result<(Complex, RatVec)> {
    let x = |t: usize| t - 1;
    let y = |i: usize| 8 + i;
    let z = |j: usize| 11 + j;
    let mut faces = vec![SubsetMask::from_indices([y(1), y(2), y(3)]), SubsetMask::from_indices([z(1), z(2), z(3)])];
    for i in 1..=3 {
        for j in 1..=3 {
            faces.push(SubsetMask::from_indices([y(i), x(3 * (i - 1) + j)]));
            faces.push(SubsetMask::from_indices([z(j), x(3 * (i - 1) + j)]));
        }
    }
    let c = Complex::new(15, faces)?;
    let w = RatVec((0..15).map(|v| if v < 9 { rat(1, 9) } else { rat(1, 4) }).collect());
    Ok((c, w))
}

/// For a flag complex, partition matroids whose intersection it is: the
/// non-edges are split greedily into matchings, each matching becoming a
/// partition matroid with singleton parts elsewhere. `None` if `C` is not
/// flag.
pub fn flag_partition_witness(c: &Complex) -> Result<Option<MatroidSystem>> {
    let mins = c.min_nonfaces()?;
    if !mins.is_uniform(2) && mins.num_edges() > 0 {
        return Ok(None);
    }
    let n = c.n();
    let mut classes: Vec<Vec<SubsetMask>> = Vec::new();
    for &e in mins.edges() {
        match classes.iter_mut().find(|cl| cl.iter().all(|f| f.is_disjoint(e))) {
            Some(cl) => cl.push(e),
            None => classes.push(vec![e]),
        }
    }
    let ms = if classes.is_empty() {
        vec![Matroid::free(n)]
    } else {
        classes
            .iter()
            .map(|cl| {
                let covered = cl.iter().fold(SubsetMask::EMPTY, |a, &e| a.union(e));
                let mut parts = cl.clone();
                parts.extend(SubsetMask::full(n).difference(covered).iter().map(SubsetMask::singleton));
                Matroid::partition(n, parts)
            })
            .collect::<Result<Vec<_>>>()?
    };
    let l = MatroidSystem::new(ms)?;
    Ok((l.intersection()? == *c).then_some(l))
}

fn param(params: &BTreeMap<String, i64>, key: &str, default: i64, range: std::ops::RangeInclusive<i64>) -> Result<usize> {
    let v = params.get(key).copied().unwrap_or(default);
    if !range.contains(&v) {
        return Err(Error::Domain(format!("parameter {key} = {v} outside {}..={}", range.start(), range.end())));
    }
    Ok(v as usize)
}

fn provenance(name: &str, params: &[(&str, usize)]) -> String {
    let ps: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{name}({})", ps.join(","))
}

/// Names accepted by [`canned`].
pub const CANNED: &[&str] =
    &["projective_plane", "truncated_plane", "q_k", "ab", "md_lower", "lambdaPnotQ", "PnotQpartition"];

/// A named instance with its claimed values recorded under `expected`.
/// The claims are for a verifier to recompute, never to trust.
pub fn canned(name: &str, params: &BTreeMap<String, i64>) -> Result<Instance> {
    match name {
        "projective_plane" => {
            let q = param(params, "q", 2, 2..=7)?;
            let h = projective_plane(q)?;
            Ok(Instance::new(provenance(name, &[("q", q)]))
                .expect("points", q * q + q + 1)
                .expect("lines", q * q + q + 1)
                .with_hypergraph(h))
        }
        "truncated_plane" => {
            let q = param(params, "q", 2, 2..=5)?;
            let (h, sides) = truncated_plane_with_sides(q)?;
            let l = assoc_matroids(&h, &sides)?;
            let m = h.num_edges();
            Ok(Instance::new(provenance(name, &[("q", q)]))
                .with_hypergraph(h)
                .with_matroids(l)
                .with_w(RatVec::ones(m))
                .expect("k", q + 1)
                .expect("nu", 1)
                .expect("nu_star", q)
                .expect("tau_star", q)
                .expect("tau", q)
                .expect("ratio_R_P", q))
        }
        "q_k" => {
            let q = param(params, "q", 3, 2..=5)?;
            let (h, sides) = q_k_with_sides(q)?;
            let l = assoc_matroids(&h, &sides)?;
            Ok(Instance::new(provenance(name, &[("q", q)]))
                .with_complex(l.intersection()?)
                .with_hypergraph(h)
                .with_matroids(l)
                .expect("edges", q * q)
                .expect("delta_eta", q * q)
                .expect("max_delta_r", q))
        }
        "ab" => {
            let m = param(params, "m", 3, 1..=6)?;
            let a = param(params, "a", 1, 1..=m as i64)?;
            Ok(Instance::new(provenance(name, &[("a", a), ("m", m)])).with_complex(ab_complex(a, m)?).expect("matdim", m))
        }
        "md_lower" => {
            let n = param(params, "n", 4, 1..=6)?;
            let bound = binomial(n - 1, n / 2);
            Ok(Instance::new(provenance(name, &[("n", n)]))
                .with_complex(md_lower_complex(n)?)
                .expect("matdim_lower_bound", bound))
        }
        "lambdaPnotQ" => {
            let k = param(params, "k", 4, 2..=5)?;
            let (c, v) = lambda_complex(k)?;
            let vv = v.dot(&v);
            Ok(Instance::new(provenance(name, &[("k", k)]))
                .with_complex(c)
                .with_w(v)
                .expect("v_dot_v", format_rational(&vv))
                .expect("in_Q", true)
                .expect("in_P", vv <= Rational::one()))
        }
        "PnotQpartition" => {
            let (c, w) = p_not_q_partition()?;
            let mut inst = Instance::new(provenance(name, &[])).with_w(w).expect("in_Q", true).expect("in_P", false);
            if let Some(l) = flag_partition_witness(&c)? {
                inst = inst.with_matroids(l).expect("flag", true);
            }
            Ok(inst.with_complex(c))
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Sum of `1/i` over `2 ≤ i ≤ k`, i.e. `v·v` for [`lambda_vector`].
pub fn harmonic_tail(k: usize) -> Rational {
    (2..=k).fold(Rational::zero(), |acc, i| acc + rat(1, i as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytopes::{member, PolytopeRef};
    use crate::rational::int;

    fn pairwise_meet_once(h: &Hypergraph) -> bool {
        let e = h.edges();
        (0..e.len()).all(|i| (i + 1..e.len()).all(|j| e[i].intersection(e[j]).len() == 1))
    }

    #[test]
    fn fano_plane() {
        let f = projective_plane(2).unwrap();
        assert_eq!((f.n(), f.num_edges()), (7, 7));
        assert!(f.is_uniform(3) && pairwise_meet_once(&f));
        for a in 0..7 {
            for b in a + 1..7 {
                let pair = SubsetMask::from_indices([a, b]);
                assert_eq!(f.edges().iter().filter(|e| pair.is_subset(**e)).count(), 1);
            }
        }
        assert!(matches!(projective_plane(4), Err(Error::Unsupported(_))));
    }

    #[test]
    fn planes_of_order_three() {
        let p = projective_plane(3).unwrap();
        assert_eq!((p.n(), p.num_edges()), (13, 13));
        assert!(pairwise_meet_once(&p));
        let (t, sides) = truncated_plane_with_sides(3).unwrap();
        assert_eq!((t.n(), t.num_edges()), (12, 9));
        assert!(t.is_k_partite_with(&sides) && sides.iter().all(|s| s.len() == 3));
    }

    #[test]
    fn truncated_fano() {
        let (t, sides) = truncated_plane_with_sides(2).unwrap();
        assert_eq!((t.n(), t.num_edges()), (6, 4));
        assert!(t.is_k_partite_with(&sides));
        assert!(sides.iter().all(|s| s.len() == 2));
        assert!((0..6).all(|v| t.degree(v) == 2));
        let l = assoc_matroids(&t, &sides).unwrap();
        assert_eq!(l.k(), 3);
        let (back, _) = assoc_hypergraph(&l).unwrap();
        assert_eq!((back.n(), back.num_edges()), (6, 4));
    }

    #[test]
    fn q_k_structure() {
        let (q2, _) = q_k_with_sides(2).unwrap();
        assert_eq!(q2.num_edges(), 4);
        assert!(q2.is_uniform(2) && (0..4).all(|v| q2.degree(v) == 2));
        let (q3, sides) = q_k_with_sides(3).unwrap();
        assert_eq!((q3.n(), q3.num_edges()), (9, 9));
        assert!(q3.is_k_partite_with(&sides) && (0..9).all(|v| q3.degree(v) == 3));
        // edges from different parallel classes meet
        let e = q3.edges();
        let class = |s: &SubsetMask| -> usize {
            // slope of the line through its points at x = 0 and x = 1
            let y0 = s.iter().find(|&p| p < 3).unwrap();
            let y1 = s.iter().find(|&p| (3..6).contains(&p)).unwrap() - 3;
            (y1 + 3 - y0) % 3
        };
        for a in e {
            for b in e {
                if class(a) != class(b) {
                    assert!(!a.is_disjoint(*b));
                }
            }
        }
    }

    #[test]
    fn correspondence_round_trip_on_q3() {
        let (q3, sides) = q_k_with_sides(3).unwrap();
        let l = assoc_matroids(&q3, &sides).unwrap();
        assert_eq!(l.intersection().unwrap(), Complex::matching(&q3).unwrap());
        let (k, index) = assoc_hypergraph(&l).unwrap();
        // vertex (i, p) of K(L) is the p-th vertex of side i
        let relabel: Vec<usize> = sides.iter().flat_map(|s| s.iter()).collect();
        for (j, e) in q3.edges().iter().enumerate() {
            let mapped: SubsetMask = k.edges()[index[j]].iter().map(|v| relabel[v]).collect();
            assert_eq!(mapped, *e);
        }
        assert_eq!(k_partition(&q3, 3).map(|p| p.len()), Some(3));
    }

    #[test]
    fn single_edge_correspondence() {
        let h = Hypergraph::from_lists(2, &[vec![0, 1]]).unwrap();
        let sides = vec![SubsetMask::singleton(0), SubsetMask::singleton(1)];
        let l = assoc_matroids(&h, &sides).unwrap();
        assert_eq!(l.k(), 2);
        assert_eq!(l.intersection().unwrap(), Complex::simplex(1));
        let bad = Hypergraph::from_lists(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        assert!(matches!(assoc_matroids(&bad, &[SubsetMask::from_indices([0, 2]), SubsetMask::singleton(0)]), Err(Error::Domain(_))));
    }

    #[test]
    fn canned_witnesses() {
        let none = BTreeMap::new();
        let lam = canned("lambdaPnotQ", &none).unwrap();
        let (c, v) = (lam.complex.unwrap(), lam.weights.w.unwrap());
        assert_eq!(c.n(), 9);
        assert_eq!(v.dot(&v), rat(13, 12));
        assert_eq!(harmonic_tail(4), rat(13, 12));
        assert!(member(&PolytopeRef::Q(c.clone()), &v).unwrap());
        assert!(!member(&PolytopeRef::P(c), &v).unwrap());

        let pq = canned("PnotQpartition", &none).unwrap();
        let (c, w) = (pq.complex.clone().unwrap(), pq.weights.w.clone().unwrap());
        assert_eq!(w.total(), int(1) + rat(3, 2));
        assert!(pq.matroids.is_some(), "flag complex should have a partition witness");
        assert!(member(&PolytopeRef::Q(c.clone()), &w).unwrap());
        assert!(!member(&PolytopeRef::P(c), &w).unwrap());

        assert!(matches!(canned("nosuch", &none), Err(Error::UnknownName(_))));
        assert_eq!(binomial(3, 2), 3);
    }
}
