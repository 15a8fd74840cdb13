//! Competitive and discovery ratios as exact suprema.
//!
//! Every functional here is a supremum of Möbius functions `(l + a)/(r l + b)`
//! over half-open intervals `(p, q]`. Such a function is monotone on each
//! interval, so the supremum is either its value at `q` or its one-sided
//! limit at `p`; both are evaluated exactly. Suprema over infinitely many
//! iterations are scanned up to a horizon and marked `certified` only where
//! a family-specific argument bounds everything beyond it.

use num_traits::{One, Signed};
use serde::Serialize;

use crate::discovery::{discovery_factor, discovery_profile, min_turns, turn_threshold};
use crate::error::{Error, Result};
use crate::rational::{int, pow2, Rational};
use crate::strategy::{Family, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RatioKind {
    /// The supremum is a maximum.
    Attained,
    /// Approached as `δ -> 0+` (or `l -> p+`) at the witness, never reached.
    RightLimit,
    /// Approached as the iteration index grows without bound.
    LimitAtInfinity,
}

impl std::fmt::Display for RatioKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RatioKind::Attained => "attained",
            RatioKind::RightLimit => "right_limit",
            RatioKind::LimitAtInfinity => "limit_at_infinity",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub index: i64,
    pub delta: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioResult {
    /// The supremum when `certified`, otherwise a lower bound for it.
    pub value: Rational,
    pub kind: RatioKind,
    pub witness: Witness,
    pub certified: bool,
    pub horizon_used: usize,
    /// Largest candidate evaluated inside the horizon.
    pub scanned: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TradeoffPoint {
    pub alpha: Rational,
    pub cr: Rational,
    pub dr_sigma: Rational,
}

/// Running maximum; ties keep the earlier candidate.
#[derive(Default)]
struct Best {
    top: Option<(Rational, RatioKind, Witness)>,
}

impl Best {
    fn offer(&mut self, value: Rational, kind: RatioKind, index: i64, delta: impl Into<String>) {
        if self.top.as_ref().is_none_or(|(v, _, _)| value > *v) {
            self.top = Some((
                value,
                kind,
                Witness {
                    index,
                    delta: delta.into(),
                },
            ));
        }
    }

    fn merge(&mut self, other: Best) {
        if let Some((v, k, w)) = other.top {
            self.offer(v, k, w.index, w.delta);
        }
    }

    fn finish(self, horizon_used: usize) -> Result<RatioResult> {
        let (value, kind, witness) = self
            .top
            .ok_or_else(|| Error::InvalidStrategy("not enough segments to evaluate".into()))?;
        Ok(RatioResult {
            scanned: value.clone(),
            value,
            kind,
            witness,
            certified: false,
            horizon_used,
        })
    }
}

fn ensure_valid(strategy: &Strategy, horizon: usize) -> Result<()> {
    let report = strategy.validate(horizon);
    match report.first_violation {
        None => Ok(()),
        Some(v) => Err(Error::InvalidStrategy(v.reason)),
    }
}

/// Last usable index `<= horizon` such that `x_{index + extra}` exists.
fn last_index(strategy: &Strategy, horizon: usize, extra: usize) -> Option<usize> {
    match strategy.len() {
        Some(len) if len < extra + 1 => None,
        Some(len) => Some(horizon.min(len - 1 - extra)),
        None => Some(horizon),
    }
}

fn replace_with_limit(result: &mut RatioResult, limit: Rational) {
    result.value = limit;
    result.kind = RatioKind::LimitAtInfinity;
    result.witness = Witness {
        index: result.horizon_used as i64,
        delta: "i -> infinity".into(),
    };
    result.certified = true;
}

/// `cr(S)`: the hider at distance 1 on branch 1, and a hider just past each
/// turning point, `1 + 2 T_{n+1} / x_n` for `0 <= n <= horizon`.
pub fn competitive_ratio(strategy: &Strategy, horizon: usize) -> Result<RatioResult> {
    ensure_valid(strategy, horizon)?;
    let mut best = Best::default();
    let x0 = strategy.segment(0)?;
    best.offer(
        int(2) * &x0 + int(1),
        RatioKind::Attained,
        0,
        "hider at distance 1 on branch 1",
    );
    let last = last_index(strategy, horizon, 1);
    let mut used = 0;
    if let Some(last) = last {
        for n in 0..=last as i64 {
            let term = int(1) + int(2) * strategy.prefix_sum(n + 1)? / strategy.segment(n)?;
            best.offer(
                term,
                RatioKind::RightLimit,
                n,
                "hider at x_n + eps, eps -> 0+",
            );
            used = n as usize;
        }
    }
    let mut result = best.finish(used)?;
    match strategy.family() {
        // 1 + 2 (alpha^(n+2) - 1) / ((alpha - 1) alpha^n) increases to its limit.
        Family::Geometric { alpha } => {
            let limit = int(1) + int(2) * alpha * alpha / (alpha - Rational::one());
            replace_with_limit(&mut result, limit);
        }
        // Every term is 1 + 2 t (n+2) 2^(n+1) / (t (n+2) 2^(n-1)) = 9.
        Family::Aggressive { .. } => replace_with_limit(&mut result, int(9)),
        Family::Explicit { .. } => {}
    }
    Ok(result)
}

/// `dr(X, Σ) = sup_i (2 T_{i-1} + x_{i-2}) / (x_{i-1} + x_{i-2})`, each term a
/// `δ -> 0+` limit, for `1 <= i <= horizon`.
pub fn discovery_ratio_all(strategy: &Strategy, horizon: usize) -> Result<RatioResult> {
    ensure_valid(strategy, horizon)?;
    let last = last_index(strategy, horizon, 0)
        .ok_or_else(|| Error::InvalidStrategy("no segments".into()))?;
    let mut best = Best::default();
    let mut used = 0;
    for i in 1..=last.max(1) as i64 {
        if strategy.len().is_some_and(|len| i as usize >= len) {
            break;
        }
        let num = int(2) * strategy.prefix_sum(i - 1)? + strategy.segment(i - 2)?;
        let den = strategy.segment(i - 1)? + strategy.segment(i - 2)?;
        best.offer(num / den, RatioKind::RightLimit, i, "delta -> 0+");
        used = i as usize;
    }
    let mut result = best.finish(used)?;
    match strategy.family() {
        // Increasing in i toward (2 alpha^2 + alpha - 1) / (alpha^2 - 1).
        Family::Geometric { alpha } => {
            let a2 = alpha * alpha;
            let limit = (int(2) * &a2 + alpha - int(1)) / (a2 - int(1));
            replace_with_limit(&mut result, limit);
        }
        // Terms 9i / (3i + 2) for i >= 2 increase to 3.
        Family::Aggressive { .. } => replace_with_limit(&mut result, int(3)),
        Family::Explicit { .. } => {}
    }
    Ok(result)
}

/// Supremum over `δ in (0, x_i - x_{i-2}]` of
/// `F_i(X, δ) = (2 T_{i-1} + x_{i-2} + δ) / d*(x_{i-1} + x_{i-2} + δ)`.
fn sigma9_term(strategy: &Strategy, i: i64) -> Result<Best> {
    let xi = strategy.segment(i)?;
    let x1 = strategy.segment(i - 1)?;
    let x2 = strategy.segment(i - 2)?;
    let start = &x1 + &x2;
    let end = &xi + &x1;
    // numerator = l + offset with l = start + δ
    let offset = int(2) * strategy.prefix_sum(i - 1)? - &x1;

    // d* is linear on each (θ_{n-1}, θ_n]; split at thresholds inside (start, end).
    let mut cuts = vec![start.clone()];
    let mut n = min_turns(&start)?;
    while turn_threshold(n) < end {
        let theta = turn_threshold(n);
        if theta > start {
            cuts.push(theta);
        }
        n += 1;
    }
    cuts.push(end);

    let mut best = Best::default();
    for pair in cuts.windows(2) {
        let (lo, hi) = (&pair[0], &pair[1]);
        let factor = discovery_factor(min_turns(hi)?);
        let at = |l: &Rational| (l + &offset) / (l * &factor);
        let from = if *lo == start {
            "delta -> 0+".to_string()
        } else {
            format!("delta -> {}+", lo - &start)
        };
        best.offer(at(lo), RatioKind::RightLimit, i, from);
        best.offer(
            at(hi),
            RatioKind::Attained,
            i,
            format!("delta = {}", hi - &start),
        );
    }
    Ok(best)
}

/// Analytic bound on `sup_δ F_i` for every `i > horizon`, where one is known.
fn sigma9_tail_bound(strategy: &Strategy, horizon: usize) -> Option<Rational> {
    if strategy.is_r4() {
        // sup_δ F_i(R_4) = 9i(3i+5) / ((3i+2)(6i+4)) for i >= 2, increasing
        // for i < 10/3 and decreasing after; its largest value is 189/121 at i = 3.
        let per_i = |i: i64| int(9 * i * (3 * i + 5)) / int((3 * i + 2) * (6 * i + 4));
        return Some(if horizon >= 3 {
            per_i(horizon as i64 + 1)
        } else {
            per_i(3)
        });
    }
    if strategy.is_doubling() {
        // With m* >= 1: F_3 <= (16 + δ) / ((12 + δ) 5/4) <= 32/15 and
        // F_4 <= (34 + δ) / ((12 + δ) 5/4) <= 34/15; with m* >= 2 for
        // i >= 5: F_i <= 99/48.
        return match horizon {
            0 | 1 => None,
            2 | 3 => Some(Rational::new(34.into(), 15.into())),
            _ => Some(Rational::new(99.into(), 48.into())),
        };
    }
    None
}

/// `dr(X, Σ_9)`: supremum of `F_i(X, δ)` over `1 <= i <= horizon`.
///
/// Membership of `X` in `Σ_9` is not required; the functional is evaluated
/// either way.
pub fn discovery_ratio_sigma9(strategy: &Strategy, horizon: usize) -> Result<RatioResult> {
    discovery_ratio_sigma9_from(strategy, 1, horizon)
}

/// As [`discovery_ratio_sigma9`], restricted to `first <= i <= horizon`.
pub fn discovery_ratio_sigma9_from(
    strategy: &Strategy,
    first: usize,
    horizon: usize,
) -> Result<RatioResult> {
    if first < 1 || first > horizon {
        return Err(Error::InvalidParameter(format!(
            "iteration range [{first}, {horizon}] is empty or starts below 1"
        )));
    }
    ensure_valid(strategy, horizon)?;
    let last = last_index(strategy, horizon, 0)
        .ok_or_else(|| Error::InvalidStrategy("no segments".into()))?;
    let mut best = Best::default();
    let mut used = 0;
    for i in first..=last {
        best.merge(sigma9_term(strategy, i as i64)?);
        used = i;
    }
    let mut result = best.finish(used)?;
    if let Some(bound) = sigma9_tail_bound(strategy, used) {
        result.certified = result.value >= bound;
    }
    Ok(result)
}

/// `dr(X, Y) = sup_{0 < l <= horizon} D(X, l) / D(Y, l)`.
///
/// Both costs have unit slope between consecutive breakpoints of the two
/// profiles, so the ratio is monotone there and only breakpoints (approached
/// from the right at the left end) are candidates. Witness indices refer to
/// the pieces of `X`.
pub fn discovery_ratio_pair(x: &Strategy, y: &Strategy, horizon: &Rational) -> Result<RatioResult> {
    let px = discovery_profile(x, horizon)?;
    let py = discovery_profile(y, horizon)?;
    ensure_valid(x, px.pieces.len())?;
    ensure_valid(y, py.pieces.len())?;

    let mut cuts: Vec<Rational> = px
        .pieces
        .iter()
        .chain(py.pieces.iter())
        .map(|p| p.l_end.clone())
        .collect();
    cuts.push(Rational::from_integer(0.into()));
    cuts.sort();
    cuts.dedup();

    let mut best = Best::default();
    for pair in cuts.windows(2) {
        let (lo, hi) = (&pair[0], &pair[1]);
        let (Some(a), Some(b)) = (px.piece_at(hi), py.piece_at(hi)) else {
            continue;
        };
        let (ox, oy) = (a.offset(), b.offset());
        if lo.is_positive() {
            best.offer(
                (lo + &ox) / (lo + &oy),
                RatioKind::RightLimit,
                a.index as i64,
                format!("l -> {lo}+"),
            );
        }
        best.offer(
            (hi + &ox) / (hi + &oy),
            RatioKind::Attained,
            a.index as i64,
            format!("l = {hi}"),
        );
    }
    best.finish(px.pieces.len())
}

/// Exact `(cr, dr(., Σ))` of the geometric strategy with ratio `alpha`.
pub fn geometric_tradeoff(alpha: &Rational) -> Result<TradeoffPoint> {
    if *alpha <= Rational::one() {
        return Err(Error::InvalidParameter(format!(
            "alpha must exceed 1, got {alpha}"
        )));
    }
    let a2 = alpha * alpha;
    Ok(TradeoffPoint {
        alpha: alpha.clone(),
        cr: int(1) + int(2) * &a2 / (alpha - int(1)),
        dr_sigma: (int(2) * &a2 + alpha - int(1)) / (a2 - int(1)),
    })
}

/// `steps + 1` evenly spaced points from `alpha_min` to `alpha_max`
/// inclusive; a single point when the endpoints coincide.
pub fn tradeoff_curve(
    alpha_min: &Rational,
    alpha_max: &Rational,
    steps: usize,
) -> Result<Vec<TradeoffPoint>> {
    if *alpha_min <= Rational::one() || alpha_min > alpha_max || steps == 0 {
        return Err(Error::InvalidParameter(format!(
            "need 1 < alpha_min <= alpha_max and steps >= 1, got [{alpha_min}, {alpha_max}] with {steps} steps"
        )));
    }
    if alpha_min == alpha_max {
        return Ok(vec![geometric_tradeoff(alpha_min)?]);
    }
    let step = (alpha_max - alpha_min) / int(steps as i64);
    (0..=steps)
        .map(|k| geometric_tradeoff(&(alpha_min + &step * int(k as i64))))
        .collect()
}

/// Lower bound on `dr(X, Σ_9)` for a strategy that follows `R_4` on
/// `0..j-1` and has segment `xj <= (j+2) 2^(j+1)` at index `j`: the
/// `ε -> 0+` limit of `F_{j+1}` with `d*` bounded using `m* <= j`.
pub fn prefix_deviation_bound(j: u32, xj: &Rational) -> Result<Rational> {
    if j < 1 {
        return Err(Error::InvalidParameter("j must be at least 1".into()));
    }
    let j = j as i64;
    let cap = int(j + 2) * pow2(j + 1);
    if !xj.is_positive() || *xj > cap {
        return Err(Error::InvalidParameter(format!(
            "x_{j} must lie in (0, {cap}], got {xj}"
        )));
    }
    let r4 = Strategy::r4();
    let prev = r4.segment(j - 1)?;
    let num = int(2) * r4.prefix_sum(j - 1)? + int(2) * xj + &prev;
    let den = xj + &prev;
    Ok(num * int(3 * j + 5) / (den * int(6 * j + 4)))
}
