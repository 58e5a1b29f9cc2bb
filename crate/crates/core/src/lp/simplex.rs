//! Dense-tableau two-phase primal simplex in exact arithmetic.
//!
//! Pivoting follows the least-index rule for both the entering column and
//! ties in the ratio test, which rules out cycling. Every optimal answer is
//! re-checked against its dual before it is returned.

use super::{ConstraintId, LinearProgram, LpError, Relation, VarId};
use crate::rational::Rational;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Outcome of [`simplex_solve`]. `value`, `primal` and `dual` are only
/// meaningful when `status` is [`Status::Optimal`]; otherwise they are zero
/// and empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexResult {
    pub status: Status,
    pub value: Rational,
    pub primal: Vec<Rational>,
    pub dual: Vec<Rational>,
}

impl SimplexResult {
    fn without_solution(status: Status) -> Self {
        SimplexResult { status, value: Rational::zero(), primal: Vec::new(), dual: Vec::new() }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }

    pub fn primal_value(&self, var: VarId) -> &Rational {
        &self.primal[var.0]
    }

    pub fn dual_value(&self, constraint: ConstraintId) -> &Rational {
        &self.dual[constraint.0]
    }

    /// Checks, with zero tolerance, that `primal` is feasible, `dual` is
    /// feasible for the dual program, and both objectives equal `value`.
    pub fn verify(&self, lp: &LinearProgram) -> Result<(), LpError> {
        let fail = |msg: String| Err(LpError::Certificate(msg));
        if self.status != Status::Optimal {
            return fail("no optimal solution to verify".into());
        }
        if self.primal.len() != lp.variables().len() || self.dual.len() != lp.constraints().len() {
            return fail("certificate has the wrong dimensions".into());
        }
        for (var, x) in lp.variables().iter().zip(&self.primal) {
            if var.nonnegative && x.is_negative() {
                return fail(format!("variable {} is negative", var.name));
            }
        }
        for c in lp.constraints() {
            let lhs = LinearProgram::evaluate(&c.terms, &self.primal);
            if !c.relation.holds(&lhs, &c.rhs) {
                return fail(format!("constraint {} violated", c.name));
            }
        }
        let mut column_sums = vec![Rational::zero(); lp.variables().len()];
        for (c, y) in lp.constraints().iter().zip(&self.dual) {
            let sign_ok = match c.relation {
                Relation::Le => !y.is_negative(),
                Relation::Ge => !y.is_positive(),
                Relation::Eq => true,
            };
            if !sign_ok {
                return fail(format!("dual of {} has the wrong sign", c.name));
            }
            for (v, a) in &c.terms {
                column_sums[v.0] += a * y;
            }
        }
        let mut cost = vec![Rational::zero(); lp.variables().len()];
        for (v, c) in lp.objective() {
            cost[v.0] = c.clone();
        }
        for ((var, sum), c) in lp.variables().iter().zip(&column_sums).zip(&cost) {
            let ok = if var.nonnegative { sum >= c } else { sum == c };
            if !ok {
                return fail(format!("dual constraint for {} violated", var.name));
            }
        }
        let primal_obj = LinearProgram::evaluate(lp.objective(), &self.primal);
        let dual_obj = lp.constraints().iter().zip(&self.dual).fold(Rational::zero(), |acc, (c, y)| acc + &c.rhs * y);
        if primal_obj != self.value || dual_obj != self.value {
            return fail(format!("objectives differ: primal {primal_obj}, dual {dual_obj}, reported {}", self.value));
        }
        Ok(())
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    reduced: Vec<Rational>,
    barred: Vec<bool>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.rows[row][col].clone();
        for x in self.rows[row].iter_mut() {
            if !x.is_zero() {
                *x /= &pivot;
            }
        }
        self.rhs[row] /= &pivot;
        let support: Vec<usize> = (0..self.rows[row].len()).filter(|&j| !self.rows[row][j].is_zero()).collect();
        let (pivot_row, pivot_rhs) = (self.rows[row].clone(), self.rhs[row].clone());
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let factor = self.rows[i][col].clone();
            for &j in &support {
                let delta = &factor * &pivot_row[j];
                self.rows[i][j] -= delta;
            }
            if !pivot_rhs.is_zero() {
                self.rhs[i] -= &factor * &pivot_rhs;
            }
        }
        if !self.reduced[col].is_zero() {
            let factor = self.reduced[col].clone();
            for &j in &support {
                let delta = &factor * &pivot_row[j];
                self.reduced[j] -= delta;
            }
        }
        self.basis[row] = col;
    }

    fn price(&mut self, cost: &[Rational]) {
        self.reduced = cost.to_vec();
        for (r, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for (j, a) in self.rows[r].iter().enumerate() {
                if !a.is_zero() {
                    self.reduced[j] -= &cost[b] * a;
                }
            }
        }
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis.iter().zip(&self.rhs).fold(Rational::zero(), |acc, (&b, x)| acc + &cost[b] * x)
    }

    /// Runs least-index pivoting until optimal (`true`) or unbounded
    /// (`false`). `stop_at_zero` ends phase one as soon as the artificial
    /// sum reaches its upper bound of zero.
    fn optimize(&mut self, cost: &[Rational], stop_at_zero: bool) -> bool {
        loop {
            if stop_at_zero && self.objective(cost).is_zero() {
                return true;
            }
            let Some(col) = (0..self.reduced.len()).find(|&j| !self.barred[j] && self.reduced[j].is_positive()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &leave {
                    None => true,
                    Some((best, best_ratio)) => {
                        ratio < *best_ratio || (ratio == *best_ratio && self.basis[r] < self.basis[*best])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
    }
}

/// Solves `lp` exactly. Infeasibility and unboundedness are reported via
/// [`SimplexResult::status`]; an `Err` means the internal optimality
/// certificate failed, which indicates a solver bug.
pub fn simplex_solve(lp: &LinearProgram) -> Result<SimplexResult, LpError> {
    let m = lp.constraints().len();

    // structural columns: one per nonnegative variable, two per free one
    let mut var_columns: Vec<(usize, Option<usize>)> = Vec::with_capacity(lp.variables().len());
    let mut ncols = 0;
    for var in lp.variables() {
        if var.nonnegative {
            var_columns.push((ncols, None));
            ncols += 1;
        } else {
            var_columns.push((ncols, Some(ncols + 1)));
            ncols += 2;
        }
    }

    // rows are flipped so that every right-hand side is nonnegative
    let mut signs = Vec::with_capacity(m);
    let mut relations = Vec::with_capacity(m);
    for c in lp.constraints() {
        let flip = c.rhs.is_negative();
        signs.push(if flip { -1 } else { 1 });
        relations.push(match (c.relation, flip) {
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (r, _) => r,
        });
    }
    let mut slack_col = vec![None; m];
    let mut artificial_col = vec![None; m];
    for r in 0..m {
        if relations[r] != Relation::Eq {
            slack_col[r] = Some(ncols);
            ncols += 1;
        }
    }
    for r in 0..m {
        if relations[r] != Relation::Le {
            artificial_col[r] = Some(ncols);
            ncols += 1;
        }
    }
    let mut is_artificial = vec![false; ncols];
    for col in artificial_col.iter().flatten() {
        is_artificial[*col] = true;
    }

    let mut rows = vec![vec![Rational::zero(); ncols]; m];
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    // column that starts as the unit vector of each row
    let mut marker = Vec::with_capacity(m);
    for (r, c) in lp.constraints().iter().enumerate() {
        let sign = Rational::from_integer(signs[r].into());
        for (var, coeff) in &c.terms {
            let (plus, minus) = var_columns[var.0];
            rows[r][plus] = coeff * &sign;
            if let Some(minus) = minus {
                rows[r][minus] = -(coeff * &sign);
            }
        }
        rhs.push(&c.rhs * &sign);
        match relations[r] {
            Relation::Le => {
                let s = slack_col[r].unwrap();
                rows[r][s] = Rational::from_integer(1.into());
                basis.push(s);
                marker.push(s);
            }
            Relation::Ge => {
                rows[r][slack_col[r].unwrap()] = Rational::from_integer((-1).into());
                let a = artificial_col[r].unwrap();
                rows[r][a] = Rational::from_integer(1.into());
                basis.push(a);
                marker.push(a);
            }
            Relation::Eq => {
                let a = artificial_col[r].unwrap();
                rows[r][a] = Rational::from_integer(1.into());
                basis.push(a);
                marker.push(a);
            }
        }
    }

    let mut tableau = Tableau { rows, rhs, basis, reduced: Vec::new(), barred: vec![false; ncols] };

    if is_artificial.iter().any(|&a| a) {
        let phase_one: Vec<Rational> = is_artificial
            .iter()
            .map(|&a| if a { Rational::from_integer((-1).into()) } else { Rational::zero() })
            .collect();
        tableau.price(&phase_one);
        tableau.optimize(&phase_one, true);
        if tableau.objective(&phase_one).is_negative() {
            return Ok(SimplexResult::without_solution(Status::Infeasible));
        }
        // drive zero-level artificials out of the basis where possible;
        // rows where that is impossible are redundant and stay inert
        for r in 0..m {
            if !is_artificial[tableau.basis[r]] {
                continue;
            }
            if let Some(col) = (0..ncols).find(|&j| !is_artificial[j] && !tableau.rows[r][j].is_zero()) {
                tableau.pivot(r, col);
            }
        }
        tableau.barred = is_artificial.clone();
    }

    let mut cost = vec![Rational::zero(); ncols];
    for (var, c) in lp.objective() {
        let (plus, minus) = var_columns[var.0];
        cost[plus] = c.clone();
        if let Some(minus) = minus {
            cost[minus] = -c.clone();
        }
    }
    tableau.price(&cost);
    if !tableau.optimize(&cost, false) {
        return Ok(SimplexResult::without_solution(Status::Unbounded));
    }

    let mut column_value = vec![Rational::zero(); ncols];
    for (r, &b) in tableau.basis.iter().enumerate() {
        column_value[b] = tableau.rhs[r].clone();
    }
    let primal: Vec<Rational> = var_columns
        .iter()
        .map(|&(plus, minus)| match minus {
            Some(minus) => &column_value[plus] - &column_value[minus],
            None => column_value[plus].clone(),
        })
        .collect();
    let dual: Vec<Rational> = (0..m)
        .map(|i| {
            let y = tableau
                .basis
                .iter()
                .enumerate()
                .filter(|(r, _)| !tableau.rows[*r][marker[i]].is_zero())
                .fold(Rational::zero(), |acc, (r, &b)| acc + &cost[b] * &tableau.rows[r][marker[i]]);
            if signs[i] < 0 {
                -y
            } else {
                y
            }
        })
        .collect();
    let value = LinearProgram::evaluate(lp.objective(), &primal);
    let result = SimplexResult { status: Status::Optimal, value, primal, dual };
    result.verify(lp)?;
    Ok(result)
}
