//! Seeded generators of small random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hypergraph::Hypergraph;
use crate::matroid::{Matroid, MatroidSystem};
use crate::rational::{rat, RatVec};
use crate::subset::SubsetMask;

/// An independent stream for item `index` of the named family.
pub fn rng_for(seed: u64, family: &str, index: u64) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in family.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(splitmix(splitmix(seed ^ h) ^ index))
}

fn splitmix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Random set partition of `[0, n)` into at most `max_parts` non-empty blocks.
pub fn set_partition<R: Rng>(rng: &mut R, n: usize, max_parts: usize) -> Vec<SubsetMask> {
    let blocks = rng.gen_range(1..=max_parts.clamp(1, n.max(1)));
    let mut parts = vec![SubsetMask::EMPTY; blocks];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for (i, v) in order.into_iter().enumerate() {
        let b = if i < blocks { i } else { rng.gen_range(0..blocks) };
        parts[b] = parts[b].with(v);
    }
    parts.retain(|p| !p.is_empty());
    parts
}

fn gen_partition<R: Rng>(rng: &mut R, n: usize, loopless: bool) -> Matroid {
    let parts = set_partition(rng, n, n);
    let lo = usize::from(loopless);
    let caps = parts.iter().map(|p| rng.gen_range(lo.min(p.len())..=p.len())).collect();
    Matroid::gen_partition(n, parts, caps).expect("valid generalized partition matroid")
}

fn graphic<R: Rng>(rng: &mut R, n: usize, loopless: bool) -> Matroid {
    let vertices = rng.gen_range(2..=5);
    let edges = (0..n)
        .map(|_| loop {
            let a = rng.gen_range(0..vertices);
            let b = rng.gen_range(0..vertices);
            if a != b || (!loopless && rng.gen_bool(0.3)) {
                break (a.min(b), a.max(b));
            }
        })
        .collect();
    Matroid::graphic(vertices, edges).expect("valid graphic matroid")
}

/// A random matroid on `n` elements: uniform, generalized partition, graphic
/// or the dual of one of these.
pub fn matroid<R: Rng>(rng: &mut R, n: usize, loopless: bool) -> Matroid {
    loop {
        let m = match rng.gen_range(0..4) {
            0 => {
                let lo = usize::from(loopless && n > 0);
                Matroid::uniform(n, rng.gen_range(lo..=n)).expect("valid uniform matroid")
            }
            1 => gen_partition(rng, n, loopless),
            2 => graphic(rng, n, loopless),
            _ => match rng.gen_range(0..3) {
                0 => Matroid::uniform(n, rng.gen_range(0..=n)).expect("valid uniform matroid").dual(),
                1 => gen_partition(rng, n, false).dual(),
                _ => graphic(rng, n, false).dual(),
            },
        };
        if !loopless || m.loops().is_empty() {
            return m;
        }
    }
}

/// A partition matroid (all caps one) on `n` elements.
pub fn partition_matroid<R: Rng>(rng: &mut R, n: usize) -> Matroid {
    Matroid::partition(n, set_partition(rng, n, n)).expect("valid partition matroid")
}

pub fn system<R: Rng>(rng: &mut R, n: usize, k: usize, loopless: bool) -> MatroidSystem {
    MatroidSystem::new((0..k).map(|_| matroid(rng, n, loopless)).collect()).expect("matroids share a ground set")
}

pub fn partition_system<R: Rng>(rng: &mut R, n: usize, k: usize) -> MatroidSystem {
    MatroidSystem::new((0..k).map(|_| partition_matroid(rng, n)).collect()).expect("matroids share a ground set")
}

/// `G(n, p)` with `p` itself drawn uniformly from `[0.2, 0.8]`.
pub fn graph<R: Rng>(rng: &mut R, n: usize) -> Hypergraph {
    let p = rng.gen_range(0.2..0.8);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push(SubsetMask::from_indices([a, b]));
            }
        }
    }
    Hypergraph::new(n, edges).expect("edges inside the ground set")
}

/// Up to `m` distinct edges on `[0, n)` with sizes in `1..=max_size`.
pub fn hypergraph<R: Rng>(rng: &mut R, n: usize, m: usize, max_size: usize) -> Hypergraph {
    let edges: Vec<SubsetMask> = (0..m)
        .map(|_| {
            let size = rng.gen_range(1..=max_size.min(n));
            rand::seq::index::sample(rng, n, size).into_iter().collect()
        })
        .collect();
    Hypergraph::new(n, edges).expect("edges inside the ground set")
}

/// Up to `m` distinct `k`-element edges on `[0, n)`.
pub fn uniform_hypergraph<R: Rng>(rng: &mut R, n: usize, k: usize, m: usize) -> Hypergraph {
    let edges: Vec<SubsetMask> =
        (0..m).map(|_| rand::seq::index::sample(rng, n, k).into_iter().collect()).collect();
    Hypergraph::new(n, edges).expect("edges inside the ground set")
}

/// A `k`-partite hypergraph with sides of size `1..=max_side` and up to `m`
/// edges, each meeting every side once. Sides are consecutive blocks.
pub fn k_partite<R: Rng>(rng: &mut R, k: usize, max_side: usize, m: usize) -> (Hypergraph, Vec<SubsetMask>) {
    let sizes: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=max_side)).collect();
    let mut sides = Vec::with_capacity(k);
    let mut start = 0;
    for &s in &sizes {
        sides.push(SubsetMask::from_indices(start..start + s));
        start += s;
    }
    let edges: Vec<SubsetMask> = (0..m)
        .map(|_| sides.iter().map(|s| *s.to_vec().choose(rng).expect("non-empty side")).collect())
        .collect();
    (Hypergraph::new(start, edges).expect("edges inside the ground set"), sides)
}

/// Entries `a/b` with `a ∈ [0, max_num]` and `b ∈ {1, 2, 3}`.
pub fn weights<R: Rng>(rng: &mut R, n: usize, max_num: i64) -> RatVec {
    RatVec((0..n).map(|_| rat(rng.gen_range(0..=max_num), rng.gen_range(1..=3))).collect())
}

/// A point of the unit cube with coordinates among a few small fractions.
pub fn cube_point<R: Rng>(rng: &mut R, n: usize) -> RatVec {
    const GRID: [(i64, i64); 8] = [(0, 1), (1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (1, 1), (1, 6)];
    RatVec((0..n).map(|_| {
        let (a, b) = GRID[rng.gen_range(0..GRID.len())];
        rat(a, b)
    }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = rng_for(1, "x", 0).gen();
        assert_eq!(a, rng_for(1, "x", 0).gen::<u64>());
        assert_ne!(a, rng_for(1, "x", 1).gen::<u64>());
        assert_ne!(a, rng_for(1, "y", 0).gen::<u64>());
    }

    #[test]
    fn loopless_matroids_have_no_loops() {
        let mut rng = rng_for(7, "loopless", 0);
        for n in 1..8 {
            for _ in 0..20 {
                assert!(matroid(&mut rng, n, true).loops().is_empty());
            }
        }
    }

    #[test]
    fn k_partite_edges_are_transversals() {
        let mut rng = rng_for(3, "kp", 0);
        for k in 2..5 {
            let (h, sides) = k_partite(&mut rng, k, 3, 10);
            assert!(h.is_k_partite_with(&sides));
        }
    }
}
