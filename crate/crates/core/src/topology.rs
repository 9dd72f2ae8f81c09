//! Reduced integral homology of complexes, homological connectivity `η_H`,
//! expansion numbers and a checker for the topological Hall condition.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::Add;

use num::{BigInt, Integer, One, Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::complex::{Complex, ENUM_CAP};
use crate::error::{check_cap, Error, Result};
use crate::rational::{int, ExtRational, RatVec, Rational};
use crate::subset::{gray_code_nonempty, SubsetMask};

/// Cap on the number of simplices fed to a homology computation.
pub const FACE_CAP: usize = 1 << 20;

/// A non-negative integer or `+∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtEta {
    Finite(u32),
    Infinite,
}

impl ExtEta {
    pub fn finite(v: usize) -> Self {
        ExtEta::Finite(v as u32)
    }

    pub fn is_infinite(self) -> bool {
        self == ExtEta::Infinite
    }

    pub fn value(self) -> Option<usize> {
        match self {
            ExtEta::Finite(v) => Some(v as usize),
            ExtEta::Infinite => None,
        }
    }

    pub fn to_ext_rational(self) -> ExtRational {
        match self {
            ExtEta::Finite(v) => ExtRational::Finite(int(v as i64)),
            ExtEta::Infinite => ExtRational::Infinite,
        }
    }

    /// `c / self` with `c/∞ = 0`, `c/0 = ∞` for `c > 0` and `0/0 = 0`.
    pub fn divide(self, c: &Rational) -> ExtRational {
        ExtRational::ratio(c, &self.to_ext_rational())
    }

    /// `⌈c / self⌉` with `⌈0/∞⌉ = 0` and `⌈c/∞⌉ = 1` for `c > 0`.
    pub fn ceil_divide(self, c: &Rational) -> ExtRational {
        match self {
            ExtEta::Infinite if c.is_positive() => ExtRational::Finite(Rational::one()),
            _ => self.divide(c).ceil(),
        }
    }

    pub fn to_wire(self) -> String {
        match self {
            ExtEta::Finite(v) => v.to_string(),
            ExtEta::Infinite => "inf".into(),
        }
    }
}

impl From<usize> for ExtEta {
    fn from(v: usize) -> Self {
        ExtEta::finite(v)
    }
}

impl Add for ExtEta {
    type Output = ExtEta;
    fn add(self, o: ExtEta) -> ExtEta {
        match (self, o) {
            (ExtEta::Finite(a), ExtEta::Finite(b)) => ExtEta::Finite(a + b),
            _ => ExtEta::Infinite,
        }
    }
}

impl PartialOrd for ExtEta {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtEta {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtEta::Infinite, ExtEta::Infinite) => Ordering::Equal,
            (ExtEta::Infinite, _) => Ordering::Greater,
            (_, ExtEta::Infinite) => Ordering::Less,
            (ExtEta::Finite(a), ExtEta::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtEta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtEta::Finite(v) => write!(f, "{v}"),
            ExtEta::Infinite => write!(f, "∞"),
        }
    }
}

impl Serialize for ExtEta {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_wire())
    }
}

/// `H̃_i` for one dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub free_rank: usize,
    /// Invariant factors `d > 1`, each dividing the next.
    #[serde(serialize_with = "ser_bigints")]
    pub torsion: Vec<BigInt>,
}

fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn has_torsion(&self) -> bool {
        !self.torsion.is_empty()
    }
}

/// Reduced homology `H̃_i` for `0 ≤ i ≤ dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub groups: Vec<HomologyGroup>,
    /// Set when the complex is `{∅}`, where `H̃_{-1} ≅ Z`.
    pub void: bool,
}

impl HomologyProfile {
    /// `1 + min{i : H̃_i ≠ 0}`, `0` for `{∅}`, `∞` when everything vanishes.
    pub fn eta(&self) -> ExtEta {
        if self.void {
            return ExtEta::Finite(0);
        }
        self.groups.iter().position(|g| !g.is_zero()).map_or(ExtEta::Infinite, |i| ExtEta::finite(i + 1))
    }
}

/// Faces of `c` grouped by size, each list sorted lexicographically.
fn faces_by_size(c: &Complex, max_size: usize) -> Result<Vec<Vec<SubsetMask>>> {
    let total: usize = c.maximal_faces().iter().map(|f| 1usize << f.len().min(40)).sum();
    check_cap("simplex count", FACE_CAP, total)?;
    let top = c.rank().min(max_size);
    let mut seen = std::collections::HashSet::new();
    let mut by = vec![Vec::new(); top + 1];
    for f in c.maximal_faces() {
        for s in f.subsets() {
            if s.len() <= top && seen.insert(s) {
                by[s.len()].push(s);
            }
        }
    }
    for l in by.iter_mut() {
        l.sort_by_key(|s| s.to_vec());
    }
    Ok(by)
}

/// Sparse boundary matrix from faces of size `d+1` to faces of size `d`,
/// with one row per source face.
fn boundary(src: &[SubsetMask], dst: &[SubsetMask]) -> Vec<Vec<(usize, i64)>> {
    let index: HashMap<SubsetMask, usize> = dst.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    src.iter()
        .map(|&f| {
            let mut row: Vec<(usize, i64)> = f
                .iter()
                .enumerate()
                .map(|(k, v)| (index[&f.without(v)], if k % 2 == 0 { 1 } else { -1 }))
                .collect();
            row.sort_unstable();
            row
        })
        .collect()
}

/// Integer-like coefficients for sparse elimination.
trait Coef: Clone + PartialEq + fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn abs_cmp(&self, other: &Self) -> Ordering;
    fn is_unit(&self) -> bool;
    /// `self - q * other`, or `None` on overflow.
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self>;
    /// Truncated quotient.
    fn quot(&self, d: &Self) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Coef for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self> {
        q.checked_mul(*other).and_then(|p| self.checked_sub(p))
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coef for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.abs().cmp(&other.abs())
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self> {
        Some(self - q * other)
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Overflow;

/// `row_a - q * row_b` on sorted sparse rows.
fn row_sub<T: Coef>(a: &[(usize, T)], q: &T, b: &[(usize, T)]) -> std::result::Result<Vec<(usize, T)>, Overflow> {
    let zero = T::from_i64(0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |x| x.0);
        let cb = b.get(j).map_or(usize::MAX, |x| x.0);
        let (col, v) = match ca.cmp(&cb) {
            Ordering::Less => {
                i += 1;
                (ca, a[i - 1].1.clone())
            }
            Ordering::Greater => {
                j += 1;
                (cb, zero.sub_mul(q, &b[j - 1].1).ok_or(Overflow)?)
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
                (ca, a[i - 1].1.sub_mul(q, &b[j - 1].1).ok_or(Overflow)?)
            }
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    Ok(out)
}

/// Diagonal entries (up to sign) of a diagonalization by unimodular row and
/// column operations, pivoting on an entry of smallest magnitude.
fn diagonalize<T: Coef>(mut rows: Vec<Vec<(usize, T)>>) -> std::result::Result<Vec<BigInt>, Overflow> {
    rows.retain(|r| !r.is_empty());
    let mut diag = Vec::new();
    loop {
        // smallest-magnitude pivot, stopping at the first unit
        let mut pivot: Option<(usize, usize)> = None;
        'scan: for (ri, row) in rows.iter().enumerate() {
            for (k, (_, v)) in row.iter().enumerate() {
                let better = match pivot {
                    None => true,
                    Some((pr, pk)) => v.abs_cmp(&rows[pr][pk].1) == Ordering::Less,
                };
                if better {
                    pivot = Some((ri, k));
                    if v.is_unit() {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pr, pk)) = pivot else {
            return Ok(diag);
        };
        let (pc, pv) = rows[pr][pk].clone();
        let prow = rows[pr].clone();
        let mut clean = true;
        for ri in 0..rows.len() {
            if ri == pr {
                continue;
            }
            let Ok(pos) = rows[ri].binary_search_by_key(&pc, |x| x.0) else {
                continue;
            };
            let q = rows[ri][pos].1.quot(&pv);
            if !q.is_zero() {
                rows[ri] = row_sub(&rows[ri], &q, &prow)?;
            }
            if rows[ri].binary_search_by_key(&pc, |x| x.0).is_ok() {
                clean = false;
            }
        }
        if clean {
            // column c is zero outside the pivot row, so column operations
            // only touch the pivot row
            let mut rest = Vec::new();
            for (c, v) in &prow {
                if *c == pc {
                    continue;
                }
                let r = v.sub_mul(&v.quot(&pv), &pv).ok_or(Overflow)?;
                if !r.is_zero() {
                    rest.push((*c, r));
                }
            }
            if rest.is_empty() {
                diag.push(pv.to_big().abs());
                rows.swap_remove(pr);
            } else {
                let mut row = rest;
                row.push((pc, pv));
                row.sort_unstable_by_key(|x| x.0);
                rows[pr] = row;
            }
        }
        rows.retain(|r| !r.is_empty());
    }
}

/// Rank and invariant factors `> 1` of an integer matrix given by sparse rows.
fn smith(rows: &[Vec<(usize, i64)>]) -> (usize, Vec<BigInt>) {
    let diag = match diagonalize(rows.to_vec()) {
        Ok(d) => d,
        Err(Overflow) => {
            let big: Vec<Vec<(usize, BigInt)>> =
                rows.iter().map(|r| r.iter().map(|(c, v)| (*c, BigInt::from(*v))).collect()).collect();
            diagonalize(big).unwrap_or_else(|_| unreachable!())
        }
    };
    let rank = diag.len();
    let mut t: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_one()).collect();
    // normalize to a divisibility chain
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            let g = t[i].gcd(&t[j]);
            let l = t[i].lcm(&t[j]);
            t[i] = g;
            t[j] = l;
        }
    }
    t.retain(|d| !d.is_one());
    (rank, t)
}

/// Reduced homology up to dimension `max_dim` (inclusive).
pub fn reduced_homology_upto(c: &Complex, max_dim: usize) -> Result<HomologyProfile> {
    if c.rank() == 0 {
        return Ok(HomologyProfile { groups: Vec::new(), void: true });
    }
    let top_dim = c.rank() - 1;
    let upto = max_dim.min(top_dim);
    let by = faces_by_size(c, upto + 2)?;
    // rank of ∂_d : C_d -> C_{d-1}, faces of size d+1 to size d
    let mut ranks = Vec::new();
    let mut torsion = Vec::new();
    for d in 0..=upto + 1 {
        if d + 1 >= by.len() {
            ranks.push(0);
            torsion.push(Vec::new());
            continue;
        }
        let (r, t) = smith(&boundary(&by[d + 1], &by[d]));
        ranks.push(r);
        torsion.push(t);
    }
    let groups = (0..=upto)
        .map(|i| HomologyGroup {
            free_rank: by[i + 1].len() - ranks[i] - ranks[i + 1],
            torsion: torsion[i + 1].clone(),
        })
        .collect();
    Ok(HomologyProfile { groups, void: false })
}

pub fn reduced_homology(c: &Complex) -> Result<HomologyProfile> {
    reduced_homology_upto(c, usize::MAX)
}

/// Homological connectivity `η_H`.
pub fn eta_h(c: &Complex) -> Result<ExtEta> {
    Ok(reduced_homology(c)?.eta())
}

/// `min(η_H(C), rank(C))`, which only needs homology below the top dimension.
pub fn eta_bar(c: &Complex) -> Result<ExtEta> {
    let r = c.rank();
    if r == 0 {
        return Ok(ExtEta::Finite(0));
    }
    let profile = reduced_homology_upto(c, r.saturating_sub(2))?;
    let e = if r >= 2 { profile.eta() } else { ExtEta::Infinite };
    Ok(e.min(ExtEta::finite(r)))
}

/// Per-subset connectivity data for a complex.
#[derive(Clone, Debug)]
pub struct SubsetTable {
    pub n: usize,
    pub rank: Vec<usize>,
    pub eta: Vec<ExtEta>,
    pub eta_bar: Vec<ExtEta>,
}

/// `rank`, `η_H` and `min(η_H, rank)` of `C[S]` for every `S`.
pub fn subset_table(c: &Complex) -> Result<SubsetTable> {
    let n = c.n();
    check_cap("expansion ground set", ENUM_CAP, n)?;
    let order: Vec<SubsetMask> = gray_code_nonempty(n).collect();
    let computed: Vec<(SubsetMask, ExtEta)> = order
        .par_iter()
        .map(|&s| eta_h(&c.induced(s).0).map(|e| (s, e)))
        .collect::<Result<_>>()?;
    let size = 1usize << n;
    let mut eta = vec![ExtEta::Finite(0); size];
    let mut rank = vec![0; size];
    for (s, e) in computed {
        eta[s.0 as usize] = e;
    }
    for s in 0..size {
        rank[s] = c.rank_of(SubsetMask(s as u64));
    }
    let eta_bar = (0..size).map(|s| eta[s].min(ExtEta::finite(rank[s]))).collect();
    Ok(SubsetTable { n, rank, eta, eta_bar })
}

/// The expansion numbers of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansions {
    pub delta_r: ExtRational,
    pub delta_eta: ExtRational,
    pub delta: ExtRational,
    pub delta_h: ExtRational,
}

fn max_ratio(n: usize, num: impl Fn(SubsetMask) -> Rational, den: impl Fn(SubsetMask) -> ExtEta) -> ExtRational {
    gray_code_nonempty(n).map(|s| den(s).divide(&num(s))).max().unwrap_or_else(ExtRational::zero)
}

impl SubsetTable {
    pub fn delta_r(&self) -> ExtRational {
        max_ratio(self.n, |s| int(s.len() as i64), |s| ExtEta::finite(self.rank[s.0 as usize]))
    }

    pub fn delta_eta(&self) -> ExtRational {
        max_ratio(self.n, |s| int(s.len() as i64), |s| self.eta[s.0 as usize])
    }

    pub fn delta(&self) -> ExtRational {
        self.delta_h(&RatVec::ones(self.n))
    }

    pub fn delta_h(&self, h: &RatVec) -> ExtRational {
        max_ratio(self.n, |s| h.sum_over(s), |s| self.eta_bar[s.0 as usize])
    }
}

/// `Δ_r`, `Δ_η`, `Δ` and `Δ(C,h)` (with `h = 1` when absent), using `η_H`.
pub fn expansions(c: &Complex, h: Option<&RatVec>) -> Result<Expansions> {
    if let Some(h) = h {
        if h.len() != c.n() {
            return Err(Error::DimensionMismatch(format!("weights of length {} for n = {}", h.len(), c.n())));
        }
        if !h.is_nonnegative() {
            return Err(Error::Domain("weights must be non-negative".into()));
        }
    }
    let t = subset_table(c)?;
    let delta = t.delta();
    let delta_h = h.map_or_else(|| delta.clone(), |h| t.delta_h(h));
    Ok(Expansions { delta_r: t.delta_r(), delta_eta: t.delta_eta(), delta, delta_h })
}

/// `Δ_r(C) = max |S| / rank_C(S)`, without any homology.
pub fn delta_r(c: &Complex) -> Result<ExtRational> {
    check_cap("expansion ground set", ENUM_CAP, c.n())?;
    Ok(max_ratio(c.n(), |s| int(s.len() as i64), |s| ExtEta::finite(c.rank_of(s))))
}

/// Outcome of checking the topological Hall condition on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HallCheck {
    pub hypothesis: bool,
    /// An index set `I` with `η_H(C[∪_{i∈I} V_i]) < |I|`, when the hypothesis fails.
    pub violated_by: Option<SubsetMask>,
    pub conclusion: bool,
    /// A choice `v_i ∈ V_i` whose image is a face.
    pub witness: Option<Vec<usize>>,
}

impl HallCheck {
    pub fn consistent(&self) -> bool {
        !self.hypothesis || self.conclusion
    }
}

/// Evaluates the hypothesis `η_H(C[∪_{i∈I}V_i]) ≥ |I|` for all `I` and
/// searches for a choice function whose image is a face.
pub fn topological_hall_check(c: &Complex, sets: &[SubsetMask]) -> Result<HallCheck> {
    check_cap("topological Hall family size", 12, sets.len())?;
    let m = sets.len();
    let mut violated_by = None;
    for idx in 1u64..(1u64 << m) {
        let i = SubsetMask(idx);
        let u = i.iter().fold(SubsetMask::EMPTY, |a, j| a.union(sets[j]));
        if eta_h(&c.induced(u).0)? < ExtEta::finite(i.len()) {
            violated_by = Some(i);
            break;
        }
    }
    let mut choice = Vec::with_capacity(m);
    let found = rainbow(c, sets, SubsetMask::EMPTY, &mut choice);
    Ok(HallCheck {
        hypothesis: violated_by.is_none(),
        violated_by,
        conclusion: found,
        witness: found.then_some(choice),
    })
}

fn rainbow(c: &Complex, sets: &[SubsetMask], image: SubsetMask, choice: &mut Vec<usize>) -> bool {
    let Some(&next) = sets.get(choice.len()) else {
        return true;
    };
    for v in next.iter() {
        let img = image.with(v);
        if c.contains(img) {
            choice.push(v);
            if rainbow(c, sets, img, choice) {
                return true;
            }
            choice.pop();
        }
    }
    false
}
