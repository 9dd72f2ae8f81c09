//! Exact rational linear programming: a dense two-phase simplex with Bland's
//! rule, and a post-hoc certificate check on every optimal answer.

use num::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rel: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LPProblem {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub rows: Vec<Constraint>,
    /// `nonneg[j]` is true when `x_j ≥ 0` is imposed; otherwise `x_j` is free.
    pub nonneg: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LPStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LPResult {
    pub status: LPStatus,
    pub optimum: Option<Rational>,
    pub primal: Vec<Rational>,
    /// One multiplier per row, signed so that `Σ rhs_i · dual_i = optimum`.
    pub dual: Vec<Rational>,
}

impl LPResult {
    fn without_solution(status: LPStatus) -> Self {
        LPResult { status, optimum: None, primal: Vec::new(), dual: Vec::new() }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LPStatus::Optimal
    }

    /// The optimum, panicking on any other status.
    pub fn value(&self) -> &Rational {
        self.optimum.as_ref().expect("LP has no optimum")
    }
}

impl LPProblem {
    /// A problem over `num_vars` non-negative variables.
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LPProblem { sense, objective, rows: Vec::new(), nonneg: vec![true; n] }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_row(&mut self, coeffs: Vec<Rational>, rel: Relation, rhs: Rational) -> &mut Self {
        self.rows.push(Constraint { coeffs, rel, rhs });
        self
    }

    /// Adds a row given as `(index, coefficient)` pairs.
    pub fn add_sparse_row(&mut self, terms: &[(usize, Rational)], rel: Relation, rhs: Rational) -> &mut Self {
        let mut coeffs = vec![Rational::zero(); self.num_vars()];
        for (j, a) in terms {
            coeffs[*j] += a;
        }
        self.add_row(coeffs, rel, rhs)
    }

    pub fn set_free(&mut self, j: usize) -> &mut Self {
        self.nonneg[j] = false;
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.objective.len();
        if self.nonneg.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} sign flags for {n} variables",
                self.nonneg.len()
            )));
        }
        for (i, r) in self.rows.iter().enumerate() {
            if r.coeffs.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} coefficients, expected {n}",
                    r.coeffs.len()
                )));
            }
        }
        Ok(())
    }

    /// Solves the problem exactly.
    pub fn solve(&self) -> Result<LPResult> {
        self.validate()?;
        let result = Simplex::build(self).run();
        if result.is_optimal() {
            self.certify(&result);
        }
        Ok(result)
    }

    fn max_objective(&self) -> Vec<Rational> {
        match self.sense {
            Sense::Maximize => self.objective.clone(),
            Sense::Minimize => self.objective.iter().map(|c| -c).collect(),
        }
    }

    /// Exact primal feasibility, dual feasibility, equal objectives and
    /// complementary slackness. A failure here is a solver bug.
    fn certify(&self, r: &LPResult) {
        let c = self.max_objective();
        let flip = |y: &Rational| match self.sense {
            Sense::Maximize => y.clone(),
            Sense::Minimize => -y,
        };
        let y: Vec<Rational> = r.dual.iter().map(flip).collect();
        let x = &r.primal;
        let opt = flip(r.value());
        let dot = |a: &[Rational], b: &[Rational]| a.iter().zip(b).fold(Rational::zero(), |s, (p, q)| s + p * q);

        for (j, xj) in x.iter().enumerate() {
            assert!(!self.nonneg[j] || !xj.is_negative(), "LP certificate: x_{j} < 0");
        }
        for (i, row) in self.rows.iter().enumerate() {
            let lhs = dot(&row.coeffs, x);
            let ok = match row.rel {
                Relation::Le => lhs <= row.rhs,
                Relation::Ge => lhs >= row.rhs,
                Relation::Eq => lhs == row.rhs,
            };
            assert!(ok, "LP certificate: row {i} violated");
            let sign_ok = match row.rel {
                Relation::Le => !y[i].is_negative(),
                Relation::Ge => !y[i].is_positive(),
                Relation::Eq => true,
            };
            assert!(sign_ok, "LP certificate: dual {i} has the wrong sign");
            assert!(lhs == row.rhs || y[i].is_zero(), "LP certificate: slackness fails on row {i}");
        }
        for j in 0..c.len() {
            let col = self.rows.iter().zip(&y).fold(Rational::zero(), |s, (row, yi)| s + &row.coeffs[j] * yi);
            if self.nonneg[j] {
                assert!(col >= c[j], "LP certificate: dual constraint {j} violated");
                assert!(col == c[j] || x[j].is_zero(), "LP certificate: slackness fails on column {j}");
            } else {
                assert!(col == c[j], "LP certificate: dual equality {j} violated");
            }
        }
        assert_eq!(dot(&c, x), opt, "LP certificate: primal objective mismatch");
        let by = self.rows.iter().zip(&y).fold(Rational::zero(), |s, (row, yi)| s + &row.rhs * yi);
        assert_eq!(by, opt, "LP certificate: duality gap");
    }
}

/// Column bookkeeping for the standard-form tableau.
struct Simplex {
    m: usize,
    /// Rows of `[A | b]`, `b ≥ 0`.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// For each standard-form column, its cost in the max-form objective.
    cost: Vec<Rational>,
    artificial_start: usize,
    /// Column forming the identity for each row (slack or artificial).
    identity: Vec<usize>,
    /// `row_sign[i] = -1` when row `i` was negated to make `b ≥ 0`.
    row_negated: Vec<bool>,
    /// For each original variable, its positive and optional negative column.
    var_cols: Vec<(usize, Option<usize>)>,
    sense: Sense,
}

impl Simplex {
    fn build(p: &LPProblem) -> Simplex {
        let m = p.rows.len();
        let c = p.max_objective();
        let mut var_cols = Vec::with_capacity(c.len());
        let mut cost = Vec::new();
        for (j, cj) in c.iter().enumerate() {
            let pos = cost.len();
            cost.push(cj.clone());
            let neg = if p.nonneg[j] {
                None
            } else {
                cost.push(-cj);
                Some(pos + 1)
            };
            var_cols.push((pos, neg));
        }
        let structural = cost.len();

        let mut row_negated = vec![false; m];
        let mut rels = Vec::with_capacity(m);
        for (i, r) in p.rows.iter().enumerate() {
            let neg = r.rhs.is_negative();
            row_negated[i] = neg;
            rels.push(match (r.rel, neg) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (rel, _) => rel,
            });
        }
        let num_slack = rels.iter().filter(|r| **r != Relation::Eq).count();
        let num_art = rels.iter().filter(|r| **r != Relation::Le).count();
        let artificial_start = structural + num_slack;
        let width = artificial_start + num_art;
        cost.resize(width, Rational::zero());

        let mut t = Vec::with_capacity(m);
        let mut identity = vec![0; m];
        let mut basis = vec![0; m];
        let (mut next_slack, mut next_art) = (structural, artificial_start);
        for (i, r) in p.rows.iter().enumerate() {
            let mut row = vec![Rational::zero(); width + 1];
            let s = if row_negated[i] { -Rational::one() } else { Rational::one() };
            for (j, a) in r.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let (pos, neg) = var_cols[j];
                row[pos] = a * &s;
                if let Some(nc) = neg {
                    row[nc] = -(a * &s);
                }
            }
            row[width] = &r.rhs * &s;
            match rels[i] {
                Relation::Le => {
                    row[next_slack] = Rational::one();
                    identity[i] = next_slack;
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -Rational::one();
                    next_slack += 1;
                    row[next_art] = Rational::one();
                    identity[i] = next_art;
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = Rational::one();
                    identity[i] = next_art;
                    next_art += 1;
                }
            }
            basis[i] = identity[i];
            t.push(row);
        }
        Simplex { m, t, basis, cost, artificial_start, identity, row_negated, var_cols, sense: p.sense }
    }

    fn width(&self) -> usize {
        self.cost.len()
    }

    /// Reduced-cost row for the given costs under the current basis; the last
    /// slot holds `-z`.
    fn objective_row(&self, costs: &[Rational]) -> Vec<Rational> {
        let mut z: Vec<Rational> = costs.to_vec();
        z.push(Rational::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (zj, tij) in z.iter_mut().zip(&self.t[i]) {
                if !tij.is_zero() {
                    *zj -= cb * tij;
                }
            }
        }
        z
    }

    fn pivot(&mut self, z: &mut [Rational], r: usize, c: usize) {
        let inv = Rational::one() / &self.t[r][c];
        for x in self.t[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = std::mem::take(&mut self.t[r]);
        let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] -= &f * &prow[j];
            }
        }
        if !z[c].is_zero() {
            let f = z[c].clone();
            for &j in &nz {
                z[j] -= &f * &prow[j];
            }
        }
        self.t[r] = prow;
        self.basis[r] = c;
    }

    /// Maximizes with Bland's rule over columns `< allowed`. Returns false
    /// when unbounded.
    fn optimize(&mut self, z: &mut [Rational], allowed: usize) -> bool {
        let w = self.width();
        loop {
            let Some(c) = (0..allowed).find(|&j| z[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.m {
                let a = &self.t[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.t[i][w] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(z, r, c),
            }
        }
    }

    fn run(mut self) -> LPResult {
        let w = self.width();
        if self.artificial_start < w {
            let mut phase1 = vec![Rational::zero(); w];
            for c in phase1.iter_mut().skip(self.artificial_start) {
                *c = -Rational::one();
            }
            let mut z = self.objective_row(&phase1);
            self.optimize(&mut z, w);
            if !z[w].is_zero() {
                return LPResult::without_solution(LPStatus::Infeasible);
            }
            // drive zero-level artificials out where possible
            for i in 0..self.m {
                if self.basis[i] >= self.artificial_start {
                    if let Some(c) = (0..self.artificial_start).find(|&j| !self.t[i][j].is_zero()) {
                        self.pivot(&mut z, i, c);
                    }
                }
            }
        }
        let costs = self.cost.clone();
        let mut z = self.objective_row(&costs);
        if !self.optimize(&mut z, self.artificial_start) {
            return LPResult::without_solution(LPStatus::Unbounded);
        }

        let mut xs = vec![Rational::zero(); w];
        for (i, &b) in self.basis.iter().enumerate() {
            xs[b] = self.t[i][w].clone();
        }
        let primal: Vec<Rational> = self
            .var_cols
            .iter()
            .map(|&(p, n)| match n {
                Some(n) => &xs[p] - &xs[n],
                None => xs[p].clone(),
            })
            .collect();
        let max_opt = -z[w].clone();
        let sign = |v: Rational| match self.sense {
            Sense::Maximize => v,
            Sense::Minimize => -v,
        };
        let dual = (0..self.m)
            .map(|i| {
                let y = -z[self.identity[i]].clone();
                sign(if self.row_negated[i] { -y } else { y })
            })
            .collect();
        LPResult { status: LPStatus::Optimal, optimum: Some(sign(max_opt)), primal, dual }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn box_maximum() {
        let mut p = LPProblem::new(Sense::Maximize, ints(&[1, 1]));
        p.add_row(ints(&[1, 0]), Relation::Le, int(1));
        p.add_row(ints(&[0, 1]), Relation::Le, int(1));
        let r = p.solve().unwrap();
        assert_eq!(r.optimum, Some(int(2)));
        assert_eq!(r.dual, ints(&[1, 1]));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut p = LPProblem::new(Sense::Minimize, ints(&[0]));
        p.add_row(ints(&[1]), Relation::Ge, int(1));
        p.add_row(ints(&[1]), Relation::Le, int(0));
        assert_eq!(p.solve().unwrap().status, LPStatus::Infeasible);
        let p = LPProblem::new(Sense::Maximize, ints(&[1]));
        assert_eq!(p.solve().unwrap().status, LPStatus::Unbounded);
    }

    #[test]
    fn fractional_cover_of_triangle() {
        // min y0+y1+y2 s.t. each edge of K3 covered: y_a + y_b >= 1
        let mut p = LPProblem::new(Sense::Minimize, ints(&[1, 1, 1]));
        p.add_row(ints(&[1, 1, 0]), Relation::Ge, int(1));
        p.add_row(ints(&[0, 1, 1]), Relation::Ge, int(1));
        p.add_row(ints(&[1, 0, 1]), Relation::Ge, int(1));
        let r = p.solve().unwrap();
        assert_eq!(r.optimum, Some(rat(3, 2)));
        assert_eq!(r.dual.iter().fold(int(0), |a, b| a + b), rat(3, 2));
    }

    #[test]
    fn free_variables_equalities_and_negative_rhs() {
        // min x s.t. x = -3 (x free)
        let mut p = LPProblem::new(Sense::Minimize, ints(&[1]));
        p.set_free(0);
        p.add_row(ints(&[1]), Relation::Eq, int(-3));
        assert_eq!(p.solve().unwrap().optimum, Some(int(-3)));
        // max x+y s.t. x - y <= -1, x + 2y <= 4
        let mut p = LPProblem::new(Sense::Maximize, ints(&[1, 1]));
        p.add_row(ints(&[1, -1]), Relation::Le, int(-1));
        p.add_row(ints(&[1, 2]), Relation::Le, int(4));
        let r = p.solve().unwrap();
        assert_eq!(r.optimum, Some(rat(7, 3)));
        assert_eq!(r.primal, vec![rat(2, 3), rat(5, 3)]);
    }

    #[test]
    fn redundant_equalities() {
        let mut p = LPProblem::new(Sense::Maximize, ints(&[1, 2]));
        p.add_row(ints(&[1, 1]), Relation::Eq, int(2));
        p.add_row(ints(&[2, 2]), Relation::Eq, int(4));
        p.add_row(ints(&[0, 1]), Relation::Le, int(1));
        assert_eq!(p.solve().unwrap().optimum, Some(int(3)));
    }

    #[test]
    fn dimension_mismatch() {
        let mut p = LPProblem::new(Sense::Maximize, ints(&[1, 2]));
        p.add_row(ints(&[1]), Relation::Le, int(1));
        assert!(matches!(p.solve(), Err(Error::DimensionMismatch(_))));
    }
}
