//! Exact-rational linear programming.
//!
//! A dense two-phase simplex with Bland's rule. All variables are implicitly
//! nonnegative; any other bound is stated as a constraint. The programs
//! solved here have at most a few dozen variables, so exactness is cheap.
//!
//! The two builders encode the maximal-segment program `P_n` and the
//! minimal-discovery-cost program; solving them gives an oracle for
//! `(n + 2) 2^(n+1)` and `d*(l)` that does not share code with the closed
//! forms in [`crate::discovery`].

use std::fmt;

use num_traits::{Signed, Zero};

use crate::discovery::min_turns;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Objective {
    pub coefficients: Vec<Rational>,
    pub sense: Sense,
    pub constant: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Objective,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Option<Rational>,
    pub assignment: Option<Vec<Rational>>,
}

impl LpSolution {
    fn without_optimum(status: LpStatus) -> Self {
        Self {
            status,
            value: None,
            assignment: None,
        }
    }
}

fn dot(coefficients: &[Rational], x: &[Rational]) -> Rational {
    coefficients.iter().zip(x).map(|(a, b)| a * b).sum()
}

impl LinearProgram {
    pub fn new(num_vars: usize, sense: Sense) -> Self {
        Self {
            num_vars,
            objective: Objective {
                coefficients: vec![Rational::zero(); num_vars],
                sense,
                constant: Rational::zero(),
            },
            constraints: Vec::new(),
        }
    }

    /// Adds `sum coefficients[j] * x_j  relation  rhs` from sparse terms.
    pub fn constrain(&mut self, terms: &[(usize, Rational)], relation: Relation, rhs: Rational) {
        let mut coefficients = vec![Rational::zero(); self.num_vars];
        for (j, a) in terms {
            coefficients[*j] += a;
        }
        self.constraints.push(Constraint {
            coefficients,
            relation,
            rhs,
        });
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        dot(&self.objective.coefficients, x) + &self.objective.constant
    }

    /// Nonnegative exactly when constraint `k` holds at `x`; zero when tight.
    pub fn slack(&self, k: usize, x: &[Rational]) -> Rational {
        let c = &self.constraints[k];
        let lhs = dot(&c.coefficients, x);
        match c.relation {
            Relation::Le => &c.rhs - lhs,
            Relation::Ge => lhs - &c.rhs,
            Relation::Eq => -(lhs - &c.rhs).abs(),
        }
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars
            && x.iter().all(|v| !v.is_negative())
            && (0..self.constraints.len()).all(|k| !self.slack(k, x).is_negative())
    }

    fn check_shape(&self) -> Result<()> {
        let bad = |what: String| {
            Err(Error::InvalidParameter(format!(
                "malformed program: {what}"
            )))
        };
        if self.objective.coefficients.len() != self.num_vars {
            return bad(format!(
                "objective has {} coefficients for {} variables",
                self.objective.coefficients.len(),
                self.num_vars
            ));
        }
        if let Some(k) = self
            .constraints
            .iter()
            .position(|c| c.coefficients.len() != self.num_vars)
        {
            return bad(format!(
                "constraint {k} has the wrong number of coefficients"
            ));
        }
        Ok(())
    }
}

/// One line per row, rational coefficients as `p/q`.
impl fmt::Display for LinearProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |coefficients: &[Rational]| {
            coefficients
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "vars {}", self.num_vars)?;
        let sense = match self.objective.sense {
            Sense::Minimize => "min",
            Sense::Maximize => "max",
        };
        writeln!(
            f,
            "{sense} {} + {}",
            row(&self.objective.coefficients),
            self.objective.constant
        )?;
        for c in &self.constraints {
            let rel = match c.relation {
                Relation::Le => "<=",
                Relation::Ge => ">=",
                Relation::Eq => "=",
            };
            writeln!(f, "st {} {rel} {}", row(&c.coefficients), c.rhs)?;
        }
        Ok(())
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.width]
    }

    fn pivot(&mut self, r: usize, col: usize, objective: Option<&mut Vec<Rational>>) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        // the pivot row itself is empty while taken
        let eliminate = |row: &mut Vec<Rational>| {
            if row.is_empty() || row[col].is_zero() {
                return;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        };
        self.rows.iter_mut().for_each(eliminate);
        if let Some(objective) = objective {
            eliminate(objective);
        }
        self.rows[r] = pivot_row;
        self.basis[r] = col;
    }

    /// Minimizes `cost . x` over columns `< allowed`, Bland's rule throughout.
    fn minimize(&mut self, cost: &[Rational], allowed: usize) -> Outcome {
        // Reduced costs, kept current through every pivot.
        let mut reduced: Vec<Rational> = cost.to_vec();
        reduced.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if cost[b].is_zero() {
                continue;
            }
            for (z, a) in reduced.iter_mut().zip(row) {
                *z -= &cost[b] * a;
            }
        }
        loop {
            let Some(col) = (0..allowed).find(|&j| reduced[j].is_negative()) else {
                return Outcome::Optimal;
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &leaving {
                    None => true,
                    Some((best_r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*best_r])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
            match leaving {
                Some((r, _)) => self.pivot(r, col, Some(&mut reduced)),
                None => return Outcome::Unbounded,
            }
        }
    }
}

/// Solves `lp` exactly. Pivot choices are deterministic, so identical
/// programs give identical assignments.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution> {
    lp.check_shape()?;
    let n = lp.num_vars;

    // Normalize to nonnegative right-hand sides.
    let rows: Vec<(Vec<Rational>, Relation, Rational)> = lp
        .constraints
        .iter()
        .map(|c| {
            if c.rhs.is_negative() {
                let flipped = match c.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                (
                    c.coefficients.iter().map(|a| -a).collect(),
                    flipped,
                    -&c.rhs,
                )
            } else {
                (c.coefficients.clone(), c.relation, c.rhs.clone())
            }
        })
        .collect();

    let slacks = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let artificials = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let width = n + slacks + artificials;
    let (mut next_slack, mut next_art) = (n, n + slacks);

    let mut tableau = Tableau {
        rows: Vec::with_capacity(rows.len()),
        basis: Vec::with_capacity(rows.len()),
        width,
    };
    for (coefficients, relation, rhs) in rows {
        let mut row = coefficients;
        row.resize(width + 1, Rational::zero());
        row[width] = rhs;
        let basic = match relation {
            Relation::Le => {
                row[next_slack] = int(1);
                next_slack += 1;
                next_slack - 1
            }
            Relation::Ge => {
                row[next_slack] = int(-1);
                row[next_art] = int(1);
                next_slack += 1;
                next_art += 1;
                next_art - 1
            }
            Relation::Eq => {
                row[next_art] = int(1);
                next_art += 1;
                next_art - 1
            }
        };
        tableau.rows.push(row);
        tableau.basis.push(basic);
    }

    // Phase 1: minimize the sum of artificials.
    let first_art = n + slacks;
    let phase1: Vec<Rational> = (0..width)
        .map(|j| {
            if j >= first_art {
                int(1)
            } else {
                Rational::zero()
            }
        })
        .collect();
    tableau.minimize(&phase1, width);
    let infeasibility: Rational = tableau
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= first_art)
        .map(|(r, _)| tableau.rhs(r).clone())
        .sum();
    if infeasibility.is_positive() {
        return Ok(LpSolution::without_optimum(LpStatus::Infeasible));
    }

    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut r = 0;
    while r < tableau.rows.len() {
        if tableau.basis[r] >= first_art {
            match (0..first_art).find(|&j| !tableau.rows[r][j].is_zero()) {
                Some(col) => tableau.pivot(r, col, None),
                None => {
                    tableau.rows.remove(r);
                    tableau.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    // Phase 2 on the original objective.
    let mut phase2 = vec![Rational::zero(); width];
    for (j, c) in lp.objective.coefficients.iter().enumerate() {
        phase2[j] = match lp.objective.sense {
            Sense::Minimize => c.clone(),
            Sense::Maximize => -c,
        };
    }
    if let Outcome::Unbounded = tableau.minimize(&phase2, first_art) {
        return Ok(LpSolution::without_optimum(LpStatus::Unbounded));
    }

    let mut assignment = vec![Rational::zero(); n];
    for (r, &b) in tableau.basis.iter().enumerate() {
        if b < n {
            assignment[b] = tableau.rhs(r).clone();
        }
    }
    debug_assert!(lp.is_feasible(&assignment));
    Ok(LpSolution {
        status: LpStatus::Optimal,
        value: Some(lp.objective_value(&assignment)),
        assignment: Some(assignment),
    })
}

/// Adds `x_i <= 3 x_{i-1} - (x_0 + ... + x_{i-2})`.
fn constrain_competitive(lp: &mut LinearProgram, i: usize) {
    let mut terms = vec![(i, int(1)), (i - 1, int(-3))];
    terms.extend((0..i.saturating_sub(1)).map(|j| (j, int(1))));
    lp.constrain(&terms, Relation::Le, Rational::zero());
}

/// `P_n`: maximize `x_n` subject to `1 <= x_0 <= 4`, `x_1 >= 1` and
/// `x_i <= 3 x_{i-1} - T_{i-2}` for `1 <= i <= n`.
pub fn build_max_segment_lp(n: i64) -> Result<LinearProgram> {
    if n < 0 {
        return Err(Error::InvalidParameter(format!(
            "n must be nonnegative, got {n}"
        )));
    }
    let n = n as usize;
    let mut lp = LinearProgram::new(n + 1, Sense::Maximize);
    lp.objective.coefficients[n] = int(1);
    lp.constrain(&[(0, int(1))], Relation::Ge, int(1));
    lp.constrain(&[(0, int(1))], Relation::Le, int(4));
    if n >= 1 {
        lp.constrain(&[(1, int(1))], Relation::Ge, int(1));
    }
    for i in 1..=n {
        constrain_competitive(&mut lp, i);
    }
    Ok(lp)
}

/// Minimal cost of discovering `l` when discovery completes in iteration
/// `n`: minimize `2 (x_0 + ... + x_{n-2}) + x_{n-1} + l` subject to
/// `x_n + x_{n-1} >= l`, `1 <= x_0 <= 4`, `x_{i-2} <= x_i` and
/// `1 <= x_i <= 3 x_{i-1} - T_{i-2}`.
pub fn build_min_discovery_lp(l: &Rational, n: i64) -> Result<LinearProgram> {
    if *l <= int(4) {
        return Err(Error::InvalidParameter(format!(
            "l = {l} is in the turn-free regime l <= 4"
        )));
    }
    if n < 1 {
        return Err(Error::InvalidParameter(format!(
            "n must be at least 1, got {n}"
        )));
    }
    let n = n as usize;
    let mut lp = LinearProgram::new(n + 1, Sense::Minimize);
    for j in 0..n - 1 {
        lp.objective.coefficients[j] = int(2);
    }
    lp.objective.coefficients[n - 1] = int(1);
    lp.objective.constant = l.clone();

    lp.constrain(&[(n, int(1)), (n - 1, int(1))], Relation::Ge, l.clone());
    lp.constrain(&[(0, int(1))], Relation::Ge, int(1));
    lp.constrain(&[(0, int(1))], Relation::Le, int(4));
    for i in 2..=n {
        lp.constrain(
            &[(i, int(1)), (i - 2, int(-1))],
            Relation::Ge,
            Rational::zero(),
        );
    }
    for i in 1..=n {
        lp.constrain(&[(i, int(1))], Relation::Ge, int(1));
        constrain_competitive(&mut lp, i);
    }
    Ok(lp)
}

/// `d*(l)` as the best optimum of the minimal-discovery programs for
/// `n = m*(l), ..., n_max`, infeasible programs skipped.
pub fn oracle_min_discovery_cost(l: &Rational, n_max: i64) -> Result<Rational> {
    let first = min_turns(l)? as i64;
    let mut best: Option<Rational> = None;
    for n in first..=n_max {
        let solution = solve_lp(&build_min_discovery_lp(l, n)?)?;
        if let (LpStatus::Optimal, Some(v)) = (solution.status, solution.value) {
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
    }
    best.ok_or(Error::OracleHorizonTooSmall {
        n_max: n_max.max(0) as usize,
    })
}

/// `n_max` used when none is given: `m*(l) + 3`.
pub fn default_n_max(l: &Rational) -> Result<i64> {
    Ok(min_turns(l)? as i64 + 3)
}

/// `count` deterministic lengths in `(4, 1000]` for cross-checking the
/// oracle against the closed form: every turn threshold in range, both
/// ends of the range, and seeded pseudo-random fractions for the rest.
pub fn sample_lengths(count: usize, seed: u64) -> Vec<Rational> {
    use rand::{Rng, SeedableRng};

    let mut out: Vec<Rational> = [16, 44, 112, 272, 640, 1000, 5]
        .into_iter()
        .map(int)
        .chain([Rational::new(4001.into(), 1000.into())])
        .take(count)
        .collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        let den: i64 = rng.gen_range(1..=97);
        let num: i64 = rng.gen_range(4 * den + 1..=1000 * den);
        let l = Rational::new(num.into(), den.into());
        if !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

/// Optimum of `P_n`.
pub fn oracle_max_segment(n: i64) -> Result<Rational> {
    let solution = solve_lp(&build_max_segment_lp(n)?)?;
    solution.value.ok_or_else(|| {
        Error::InvalidParameter(format!("P_{n} has no optimum ({:?})", solution.status))
    })
}
