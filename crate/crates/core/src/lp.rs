//! Exact feasibility of mixed systems of rational equalities and (strict)
//! inequalities.
//!
//! [`rational_lp_feasible`] runs a two-phase simplex over the rationals with
//! Bland's rule, maximizing a slack margin shared by the strict rows.
//! [`fourier_motzkin_feasible`] eliminates variables one at a time and is kept
//! as an independent check for small systems.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    Ge,
    Gt,
}

/// `coeffs · x  relation  rhs`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn holds(&self, x: &[Rational]) -> bool {
        let lhs: Rational = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        match self.relation {
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Gt => lhs > self.rhs,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSystem {
    num_vars: usize,
    constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        Self { num_vars, constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn push(&mut self, mut coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert!(coeffs.len() <= self.num_vars, "constraint has too many coefficients");
        coeffs.resize(self.num_vars, Rational::zero());
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn add_eq(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.push(coeffs, Relation::Eq, rhs);
    }

    pub fn add_ge(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.push(coeffs, Relation::Ge, rhs);
    }

    pub fn add_gt(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.push(coeffs, Relation::Gt, rhs);
    }

    pub fn add_le(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.push(coeffs.into_iter().map(|c| -c).collect(), Relation::Ge, -rhs);
    }

    pub fn add_lt(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.push(coeffs.into_iter().map(|c| -c).collect(), Relation::Gt, -rhs);
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars && self.constraints.iter().all(|c| c.holds(x))
    }
}

/// Exact feasibility test. Returns a witness satisfying every constraint, or
/// `None` if the system is infeasible.
pub fn rational_lp_feasible(system: &LinearSystem) -> Option<Vec<Rational>> {
    let n = system.num_vars;
    let has_strict = system.constraints.iter().any(|c| c.relation == Relation::Gt);

    // columns: x+ (n), x- (n), margin, one surplus per inequality, margin cap slack
    let n_ineq = system.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
    let margin = 2 * n;
    let first_surplus = margin + 1;
    let cap_slack = first_surplus + n_ineq;
    let cols = cap_slack + 1;

    let mut rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut s = first_surplus;
    for c in &system.constraints {
        let mut row = vec![Rational::zero(); cols];
        for (j, a) in c.coeffs.iter().enumerate() {
            row[j] = a.clone();
            row[n + j] = -a;
        }
        match c.relation {
            Relation::Eq => {}
            Relation::Ge => {
                row[s] = -Rational::one();
                s += 1;
            }
            Relation::Gt => {
                row[margin] = -Rational::one();
                row[s] = -Rational::one();
                s += 1;
            }
        }
        rows.push((row, c.rhs.clone()));
    }
    // margin + cap = 1 keeps the phase-two objective bounded
    let mut cap = vec![Rational::zero(); cols];
    cap[margin] = Rational::one();
    cap[cap_slack] = Rational::one();
    rows.push((cap, Rational::one()));

    let mut tableau = Tableau::phase_one(rows, cols);
    if !tableau.solve_phase_one() {
        return None;
    }
    if has_strict {
        let mut objective = vec![Rational::zero(); cols];
        objective[margin] = Rational::one();
        tableau.maximize(&objective);
        if !tableau.value(margin).is_positive() {
            return None;
        }
    }
    let x: Vec<Rational> = (0..n).map(|j| tableau.value(j) - tableau.value(n + j)).collect();
    debug_assert!(system.is_satisfied_by(&x));
    Some(x)
}

/// Dense simplex tableau for `A y = b, y >= 0`.
struct Tableau {
    /// `m` rows of `cols + 1` entries; the last entry is the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Number of structural columns; artificial columns follow them.
    cols: usize,
    /// Columns that may never enter the basis again.
    barred: usize,
}

impl Tableau {
    fn phase_one(rows: Vec<(Vec<Rational>, Rational)>, cols: usize) -> Self {
        let m = rows.len();
        let width = cols + m + 1;
        let mut t = Vec::with_capacity(m);
        for (i, (mut row, mut rhs)) in rows.into_iter().enumerate() {
            if rhs.is_negative() {
                for v in row.iter_mut() {
                    *v = -&*v;
                }
                rhs = -rhs;
            }
            row.resize(width, Rational::zero());
            row[cols + i] = Rational::one();
            row[width - 1] = rhs;
            t.push(row);
        }
        Self { rows: t, basis: (cols..cols + m).collect(), cols, barred: cols + m }
    }

    fn width(&self) -> usize {
        self.rows.first().map_or(self.cols + 1, |r| r.len())
    }

    fn value(&self, col: usize) -> Rational {
        let last = self.width() - 1;
        self.basis
            .iter()
            .position(|&b| b == col)
            .map_or_else(Rational::zero, |i| self.rows[i][last].clone())
    }

    /// Returns whether the original system is feasible; on success the
    /// artificial columns are removed and redundant rows dropped.
    fn solve_phase_one(&mut self) -> bool {
        let width = self.width();
        let mut objective = vec![Rational::zero(); width - 1];
        for v in objective.iter_mut().skip(self.cols) {
            *v = -Rational::one();
        }
        self.maximize(&objective);
        let last = width - 1;
        let infeasible = self
            .basis
            .iter()
            .enumerate()
            .any(|(i, &b)| b >= self.cols && !self.rows[i][last].is_zero());
        if infeasible {
            return false;
        }
        // pivot degenerate artificials out or drop their (redundant) rows
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < self.cols {
                i += 1;
                continue;
            }
            match (0..self.cols).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
        let cols = self.cols;
        for row in self.rows.iter_mut() {
            let rhs = row[last].clone();
            row.truncate(cols);
            row.push(rhs);
        }
        self.barred = cols;
        true
    }

    /// Maximizes `objective · y`, which must be bounded on the feasible set.
    fn maximize(&mut self, objective: &[Rational]) {
        let width = self.width();
        loop {
            // reduced costs c_j - c_B B^{-1} a_j; Bland: first improving column
            let entering = (0..self.barred.min(width - 1)).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut r = objective[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !objective[b].is_zero() && !self.rows[i][j].is_zero() {
                        r -= &objective[b] * &self.rows[i][j];
                    }
                }
                r.is_positive()
            });
            let Some(j) = entering else {
                return;
            };
            let last = width - 1;
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][j].is_positive() {
                    continue;
                }
                let ratio = &self.rows[i][last] / &self.rows[i][j];
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (i, _) = leave.expect("simplex objective is unbounded");
            self.pivot(i, j);
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct FmRow {
    coeffs: Vec<Rational>,
    strict: bool,
    rhs: Rational,
}

/// Fourier–Motzkin elimination with back-substitution. Exponential in the
/// worst case; intended for small systems and for cross-checking.
pub fn fourier_motzkin_feasible(system: &LinearSystem) -> Option<Vec<Rational>> {
    let n = system.num_vars;
    let mut rows = Vec::new();
    for c in &system.constraints {
        let row = FmRow { coeffs: c.coeffs.clone(), strict: c.relation == Relation::Gt, rhs: c.rhs.clone() };
        if c.relation == Relation::Eq {
            rows.push(FmRow {
                coeffs: c.coeffs.iter().map(|v| -v).collect(),
                strict: false,
                rhs: -&c.rhs,
            });
        }
        rows.push(row);
    }

    // stages[k] holds the rows that still mention variables k..n
    let mut stages: Vec<Vec<FmRow>> = Vec::with_capacity(n + 1);
    stages.push(dedup_rows(rows));
    for k in 0..n {
        let current = &stages[k];
        let mut next = Vec::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for r in current {
            if r.coeffs[k].is_positive() {
                pos.push(r);
            } else if r.coeffs[k].is_negative() {
                neg.push(r);
            } else {
                next.push(r.clone());
            }
        }
        for p in &pos {
            for q in &neg {
                // scale so the k-th coefficients cancel
                let a = &p.coeffs[k];
                let b = -&q.coeffs[k];
                let coeffs: Vec<Rational> =
                    p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| x * &b + y * a).collect();
                let rhs = &p.rhs * &b + &q.rhs * a;
                next.push(FmRow { coeffs, strict: p.strict || q.strict, rhs });
            }
        }
        stages.push(dedup_rows(next));
    }
    for r in &stages[n] {
        let ok = if r.strict { r.rhs.is_negative() } else { !r.rhs.is_positive() };
        if !ok {
            return None;
        }
    }

    let mut x = vec![Rational::zero(); n];
    for k in (0..n).rev() {
        // bounds on x_k given x_{k+1..n}; rows of stage k mention only x_k..x_n
        let mut lower: Option<(Rational, bool)> = None;
        let mut upper: Option<(Rational, bool)> = None;
        for r in &stages[k] {
            let a = &r.coeffs[k];
            if a.is_zero() {
                continue;
            }
            let rest: Rational = (k + 1..n).map(|j| &r.coeffs[j] * &x[j]).sum();
            let bound = (&r.rhs - rest) / a;
            if a.is_positive() {
                let tighter = match &lower {
                    None => true,
                    Some((v, s)) => bound > *v || (bound == *v && r.strict && !s),
                };
                if tighter {
                    lower = Some((bound, r.strict));
                }
            } else {
                let tighter = match &upper {
                    None => true,
                    Some((v, s)) => bound < *v || (bound == *v && r.strict && !s),
                };
                if tighter {
                    upper = Some((bound, r.strict));
                }
            }
        }
        x[k] = match (lower, upper) {
            (None, None) => Rational::zero(),
            (Some((l, _)), None) => l + Rational::one(),
            (None, Some((u, _))) => u - Rational::one(),
            (Some((l, _)), Some((u, _))) if l == u => l,
            (Some((l, _)), Some((u, _))) => (l + u) / Rational::from_integer(2.into()),
        };
    }
    debug_assert!(system.is_satisfied_by(&x));
    Some(x)
}

fn dedup_rows(rows: Vec<FmRow>) -> Vec<FmRow> {
    let mut out: Vec<FmRow> = Vec::with_capacity(rows.len());
    for mut r in rows {
        // normalize by the first non-zero coefficient magnitude
        if let Some(lead) = r.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in r.coeffs.iter_mut() {
                *c /= &lead;
            }
            r.rhs /= &lead;
        }
        let all_zero = r.coeffs.iter().all(Zero::is_zero);
        if all_zero {
            let trivially_true = if r.strict { r.rhs.is_negative() } else { !r.rhs.is_positive() };
            if trivially_true {
                continue;
            }
        }
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}
