//! Report assembly and rendering for the `cowpath` binary.
//!
//! Every command returns its full standard-output text so the binary stays a
//! thin argument parser and tests can compare outputs byte for byte.

use std::path::{Path, PathBuf};

use num_traits::Zero;
use serde::Serialize;
use serde_json::json;

use crate::discovery::{discovery_profile, min_discovery_cost, min_turns, turns_to_discover};
use crate::error::{Error, Result};
use crate::lp::{
    build_max_segment_lp, build_min_discovery_lp, default_n_max, oracle_max_segment,
    oracle_min_discovery_cost, sample_lengths, solve_lp,
};
use crate::ratio::{
    competitive_ratio, discovery_ratio_all, discovery_ratio_sigma9, discovery_ratio_sigma9_from,
    tradeoff_curve, RatioResult,
};
use crate::rational::{format_rational, int, pow2, rat, to_decimal, Rational};
use crate::strategy::{Sigma9Report, Strategy, ValidityReport, DEFAULT_HORIZON};

/// Significant digits of the decimal renderings.
pub const DECIMAL_DIGITS: usize = 12;
/// Number of lengths in the LP cross-check.
pub const LP_SAMPLES: usize = 200;
pub const LP_SAMPLE_SEED: u64 = 0x5EED_0009;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID_STRATEGY: i32 = 3;
pub const EXIT_VERIFICATION_FAILED: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Structured,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub horizon_iterations: usize,
    pub horizon_length: Rational,
    pub output_format: OutputFormat,
    pub strategy_files: Vec<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            horizon_iterations: DEFAULT_HORIZON,
            horizon_length: int(100),
            output_format: OutputFormat::Csv,
            strategy_files: Vec::new(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.horizon_iterations == 0 || self.horizon_length <= Rational::zero() {
            return Err(Error::InvalidParameter("horizons must be positive".into()));
        }
        Ok(())
    }
}

/// Exit status for a failed command.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidStrategy(_) | Error::OutOfRange { .. } => EXIT_INVALID_STRATEGY,
        Error::Parse(_) | Error::InvalidParameter(_) | Error::OracleHorizonTooSmall { .. } => {
            EXIT_USAGE
        }
    }
}

pub fn load_strategy(path: &Path) -> Result<Strategy> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    Strategy::from_toml(&text)
}

fn exact(q: &Rational) -> String {
    format_rational(q)
}

fn decimal(q: &Rational) -> String {
    to_decimal(q, DECIMAL_DIGITS)
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
    writer.write_record(header).expect("in-memory write");
    for row in rows {
        writer.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

fn structured(value: serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(&value).expect("json value");
    text.push('\n');
    text
}

fn ratio_json(r: &RatioResult) -> serde_json::Value {
    json!({
        "value": exact(&r.value),
        "decimal": decimal(&r.value),
        "kind": r.kind,
        "certified": r.certified,
        "witness": r.witness,
        "horizon_used": r.horizon_used,
        "scanned": exact(&r.scanned),
    })
}

#[derive(Debug, Clone)]
pub struct EvalReport {
    pub strategy: Strategy,
    pub segments: Vec<Rational>,
    pub validity: ValidityReport,
    pub sigma9: Sigma9Report,
    pub competitive: RatioResult,
    pub discovery_all: RatioResult,
    pub discovery_sigma9: RatioResult,
}

impl EvalReport {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Structured => structured(json!({
                "strategy": self.strategy.to_string(),
                "segments": self.segments.iter().map(exact).collect::<Vec<_>>(),
                "validity": self.validity,
                "sigma9": self.sigma9,
                "cr": ratio_json(&self.competitive),
                "dr_sigma": ratio_json(&self.discovery_all),
                "dr_sigma9": ratio_json(&self.discovery_sigma9),
            })),
            OutputFormat::Csv => {
                let mut rows: Vec<Vec<String>> = self
                    .segments
                    .iter()
                    .enumerate()
                    .map(|(i, x)| {
                        vec![
                            format!("x_{i}"),
                            exact(x),
                            decimal(x),
                            String::new(),
                            String::new(),
                            String::new(),
                        ]
                    })
                    .collect();
                let flag = |name: &str, value: bool, certified: bool| {
                    vec![
                        name.to_string(),
                        value.to_string(),
                        String::new(),
                        String::new(),
                        certified.to_string(),
                        String::new(),
                    ]
                };
                rows.push(flag("valid", self.validity.valid, self.validity.certified));
                rows.push(flag(
                    "sigma9_member",
                    self.sigma9.member,
                    self.sigma9.certified,
                ));
                for (name, r) in [
                    ("cr", &self.competitive),
                    ("dr_sigma", &self.discovery_all),
                    ("dr_sigma9", &self.discovery_sigma9),
                ] {
                    rows.push(vec![
                        name.to_string(),
                        exact(&r.value),
                        decimal(&r.value),
                        r.kind.to_string(),
                        r.certified.to_string(),
                        format!("i={} {}", r.witness.index, r.witness.delta),
                    ]);
                }
                csv_text(
                    &[
                        "quantity",
                        "value",
                        "decimal",
                        "kind",
                        "certified",
                        "witness",
                    ],
                    rows,
                )
            }
        }
    }

    /// Diagnostic for standard error when the strategy is outside `Σ_9`.
    pub fn warning(&self) -> Option<String> {
        (!self.sigma9.member).then(|| {
            let detail = self
                .sigma9
                .first_violation
                .as_ref()
                .map(|(i, slack)| format!(" (constraint {i} violated by {})", exact(&-slack.clone())))
                .unwrap_or_default();
            format!(
                "warning: {} does not have competitive ratio 9{detail}; dr_sigma9 is still evaluated",
                self.strategy
            )
        })
    }
}

/// Segments `x_0..x_8`, validity, membership and the three ratios.
pub fn eval(config: &RunConfig, strategy: &Strategy) -> Result<EvalReport> {
    config.validate()?;
    let horizon = config.horizon_iterations;
    let validity = strategy.validate(horizon);
    if let Some(v) = &validity.first_violation {
        return Err(Error::InvalidStrategy(format!(
            "violation at index {}: {}",
            v.index, v.reason
        )));
    }
    Ok(EvalReport {
        segments: strategy.segments().take(9).collect(),
        sigma9: strategy.validate_sigma9(horizon),
        competitive: competitive_ratio(strategy, horizon)?,
        discovery_all: discovery_ratio_all(strategy, horizon)?,
        discovery_sigma9: discovery_ratio_sigma9(strategy, horizon)?,
        validity,
        strategy: strategy.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: Rational,
    pub actual: Rational,
    pub pass: bool,
    /// The claim the check reproduces, in words.
    pub anchor: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub all_pass: bool,
}

impl VerificationReport {
    fn push(
        &mut self,
        name: impl Into<String>,
        expected: Rational,
        actual: Rational,
        anchor: &str,
    ) {
        self.checks.push(Check {
            name: name.into(),
            pass: expected == actual,
            expected,
            actual,
            anchor: anchor.to_string(),
        });
        self.all_pass = self.checks.iter().all(|c| c.pass);
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass {
            EXIT_OK
        } else {
            EXIT_VERIFICATION_FAILED
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => csv_text(
                &["status", "check", "expected", "actual", "anchor"],
                self.checks
                    .iter()
                    .map(|c| {
                        vec![
                            if c.pass { "PASS" } else { "FAIL" }.to_string(),
                            c.name.clone(),
                            exact(&c.expected),
                            exact(&c.actual),
                            c.anchor.clone(),
                        ]
                    })
                    .collect(),
            ),
            OutputFormat::Structured => structured(json!({
                "all_pass": self.all_pass,
                "checks": self.checks.iter().map(|c| json!({
                    "name": c.name,
                    "expected": exact(&c.expected),
                    "actual": exact(&c.actual),
                    "pass": c.pass,
                    "anchor": c.anchor,
                })).collect::<Vec<_>>(),
            })),
        }
    }
}

fn value_or_sentinel(r: Result<RatioResult>) -> Rational {
    // A failed evaluation shows up as actual = -1, which never matches.
    r.map(|r| r.value).unwrap_or_else(|_| int(-1))
}

/// The closed-form constants for the geometric, doubling and aggressive
/// strategies, recomputed by the library.
pub fn verify_constants(config: &RunConfig, report: &mut VerificationReport) {
    let h = config.horizon_iterations;
    let g2 = Strategy::doubling();
    let r4 = Strategy::r4();

    report.push(
        "cr(G2)",
        int(9),
        value_or_sentinel(competitive_ratio(&g2, h)),
        "the competitive ratio of linear search is 9, attained by doubling",
    );
    for alpha in [rat(3, 2), int(2), int(3), int(4)] {
        let g = Strategy::geometric(alpha.clone()).expect("alpha > 1");
        let a2 = &alpha * &alpha;
        report.push(
            format!("dr(G{alpha},Sigma)"),
            (int(2) * &a2 + &alpha - int(1)) / (&a2 - int(1)),
            value_or_sentinel(discovery_ratio_all(&g, h)),
            "discovery ratio of G_alpha against all strategies: (2a^2 + a - 1)/(a^2 - 1)",
        );
        report.push(
            format!("cr(G{alpha})"),
            int(1) + int(2) * &a2 / (&alpha - int(1)),
            value_or_sentinel(competitive_ratio(&g, h)),
            "competitive ratio of G_alpha: 1 + 2a^2/(a - 1)",
        );
    }
    report.push(
        "dr(R4,Sigma9)",
        rat(8, 5),
        value_or_sentinel(discovery_ratio_sigma9(&r4, h)),
        "R4 has discovery ratio 8/5 among 9-competitive strategies",
    );
    report.push(
        "dr(R4,Sigma9) over i>=2",
        rat(99, 64),
        value_or_sentinel(discovery_ratio_sigma9_from(&r4, 2, h.max(2))),
        "claimed supremum of the i >= 2 terms for R4 (the i = 2 term)",
    );
    report.push(
        "dr(R4,Sigma9) term i=2",
        rat(99, 64),
        value_or_sentinel(discovery_ratio_sigma9_from(&r4, 2, 2)),
        "i = 2 term for R4: 9i(3i+5)/((3i+2)(6i+4))",
    );
    report.push(
        "dr(G2,Sigma9)",
        rat(7, 3),
        value_or_sentinel(discovery_ratio_sigma9(&g2, h)),
        "doubling has discovery ratio 7/3 among 9-competitive strategies",
    );
    for t in [rat(3, 2), int(2), int(4)] {
        let rt = Strategy::aggressive(t.clone()).expect("t in [1, 4]");
        report.push(
            format!("dr(R{t},Sigma)"),
            int(3),
            value_or_sentinel(discovery_ratio_all(&rt, h)),
            "every R_t has discovery ratio 3 against all strategies",
        );
    }
    for n in 0..=10i64 {
        report.push(
            format!("R4 segment n={n}"),
            int(n + 2) * pow2(n + 1),
            r4.segment(n).unwrap_or_else(|_| int(-1)),
            "R4 segments (n+2)2^(n+1)",
        );
        report.push(
            format!("R4 prefix sum n={n}"),
            int(n + 1) * pow2(n + 2),
            r4.prefix_sum(n).unwrap_or_else(|_| int(-1)),
            "R4 prefix sums (n+1)2^(n+2)",
        );
    }
}

/// The LP oracle against the closed forms for `d*(l)` and the maximal
/// segments.
pub fn verify_oracles(report: &mut VerificationReport) {
    for (l, expected) in [
        (int(5), rat(25, 4)),
        (int(16), int(20)),
        (int(100), rat(1100, 7)),
    ] {
        let actual = default_n_max(&l)
            .and_then(|n| oracle_min_discovery_cost(&l, n))
            .unwrap_or_else(|_| int(-1));
        report.push(
            format!("oracle d*({l})"),
            expected,
            actual,
            "minimal discovery cost l(6m*+4)/(3m*+5)",
        );
    }

    let samples = sample_lengths(LP_SAMPLES, LP_SAMPLE_SEED);
    let mut agree = 0i64;
    let mut witness_ok = 0i64;
    let mut turns_ok = 0i64;
    for l in &samples {
        let Ok(closed) = min_discovery_cost(l) else {
            continue;
        };
        let oracle = default_n_max(l).and_then(|n| oracle_min_discovery_cost(l, n));
        if oracle.as_ref() == Ok(&closed.d_star) {
            agree += 1;
        }
        let witness = build_min_discovery_lp(l, closed.m_star as i64)
            .and_then(|lp| solve_lp(&lp))
            .ok()
            .and_then(|s| s.assignment)
            .map(|x| x[0].clone());
        if let Some(x0) = witness {
            if x0 == closed.witness_t && x0 > int(1) && x0 <= int(4) {
                witness_ok += 1;
            }
            let turns = Strategy::aggressive(x0)
                .ok()
                .and_then(|rt| turns_to_discover(&rt, l).ok());
            if turns.map(|m| m as u32) == min_turns(l).ok() {
                turns_ok += 1;
            }
        }
    }
    let n = samples.len() as i64;
    report.push(
        "LP d*(l) = closed form (sample count)",
        int(n),
        int(agree),
        "d*(l) = l(6m*+4)/(3m*+5), attained by R_t",
    );
    report.push(
        "LP witness x0 = t in (1,4] (sample count)",
        int(n),
        int(witness_ok),
        "optimal witness t = l 2^(2-m*)/(3m*+5)",
    );
    report.push(
        "m(R_t, l) = m*(l) (sample count)",
        int(n),
        int(turns_ok),
        "R_t discovers l with the minimal number of turns",
    );

    for n in 0..=10i64 {
        report.push(
            format!("max segment n={n}"),
            int(n + 2) * pow2(n + 1),
            oracle_max_segment(n).unwrap_or_else(|_| int(-1)),
            "segments of 9-competitive strategies are at most (n+2)2^(n+1)",
        );
        let tight = build_max_segment_lp(n)
            .and_then(|lp| {
                let x = solve_lp(&lp)?.assignment.unwrap_or_default();
                let first = lp.constraints.len() - n as usize;
                Ok((first..lp.constraints.len())
                    .filter(|&k| lp.slack(k, &x).is_zero())
                    .count())
            })
            .unwrap_or(0);
        report.push(
            format!("max segment n={n} tight constraints"),
            int(n),
            int(tight as i64),
            "the maximizer makes every competitive constraint tight",
        );
    }
}

pub fn verify(config: &RunConfig) -> Result<VerificationReport> {
    config.validate()?;
    let mut report = VerificationReport {
        all_pass: true,
        ..Default::default()
    };
    verify_constants(config, &mut report);
    verify_oracles(&mut report);
    Ok(report)
}

pub fn tradeoff(
    config: &RunConfig,
    alpha_min: &Rational,
    alpha_max: &Rational,
    steps: usize,
) -> Result<String> {
    let curve = tradeoff_curve(alpha_min, alpha_max, steps)?;
    Ok(match config.output_format {
        OutputFormat::Csv => csv_text(
            &[
                "alpha",
                "alpha_decimal",
                "cr",
                "cr_decimal",
                "dr_sigma",
                "dr_sigma_decimal",
            ],
            curve
                .iter()
                .map(|p| {
                    vec![
                        exact(&p.alpha),
                        decimal(&p.alpha),
                        exact(&p.cr),
                        decimal(&p.cr),
                        exact(&p.dr_sigma),
                        decimal(&p.dr_sigma),
                    ]
                })
                .collect(),
        ),
        OutputFormat::Structured => structured(json!(curve
            .iter()
            .map(|p| json!({
                "alpha": exact(&p.alpha),
                "cr": exact(&p.cr),
                "dr_sigma": exact(&p.dr_sigma),
            }))
            .collect::<Vec<_>>())),
    })
}

#[derive(Serialize)]
struct PieceRow {
    l_start: String,
    l_end: String,
    cost_start: String,
    jump_after: String,
}

/// Discovery profile up to `config.horizon_length`.
pub fn profile(config: &RunConfig, strategy: &Strategy) -> Result<String> {
    config.validate()?;
    let profile = discovery_profile(strategy, &config.horizon_length)?;
    let rows: Vec<PieceRow> = profile
        .pieces
        .iter()
        .map(|p| PieceRow {
            l_start: exact(&p.l_start),
            l_end: exact(&p.l_end),
            cost_start: exact(&p.cost_start),
            jump_after: p.jump_after.as_ref().map(exact).unwrap_or_default(),
        })
        .collect();
    Ok(match config.output_format {
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                writer.serialize(row).expect("in-memory write");
            }
            if rows.is_empty() {
                writer
                    .write_record(["l_start", "l_end", "cost_start", "jump_after"])
                    .expect("in-memory write");
            }
            String::from_utf8(writer.into_inner().expect("flush")).expect("utf-8 csv")
        }
        OutputFormat::Structured => structured(serde_json::to_value(&rows).expect("rows")),
    })
}

pub fn oracle_min_discovery(
    config: &RunConfig,
    l: &Rational,
    n_max: Option<i64>,
) -> Result<String> {
    let n_max = match n_max {
        Some(n) => n,
        None => default_n_max(l)?,
    };
    let value = oracle_min_discovery_cost(l, n_max)?;
    let closed = min_discovery_cost(l)?;
    Ok(match config.output_format {
        OutputFormat::Csv => csv_text(
            &[
                "l",
                "n_max",
                "oracle_d_star",
                "closed_form_d_star",
                "m_star",
                "witness_t",
                "agree",
            ],
            vec![vec![
                exact(l),
                n_max.to_string(),
                exact(&value),
                exact(&closed.d_star),
                closed.m_star.to_string(),
                exact(&closed.witness_t),
                (value == closed.d_star).to_string(),
            ]],
        ),
        OutputFormat::Structured => structured(json!({
            "l": exact(l),
            "n_max": n_max,
            "oracle_d_star": exact(&value),
            "closed_form_d_star": exact(&closed.d_star),
            "m_star": closed.m_star,
            "witness_t": exact(&closed.witness_t),
            "agree": value == closed.d_star,
        })),
    })
}

pub fn oracle_max_segment_report(config: &RunConfig, n: i64) -> Result<String> {
    let value = oracle_max_segment(n)?;
    let closed = if n >= 0 {
        int(n + 2) * pow2(n + 1)
    } else {
        int(0)
    };
    Ok(match config.output_format {
        OutputFormat::Csv => csv_text(
            &["n", "oracle_max_segment", "closed_form", "agree"],
            vec![vec![
                n.to_string(),
                exact(&value),
                exact(&closed),
                (value == closed).to_string(),
            ]],
        ),
        OutputFormat::Structured => structured(json!({
            "n": n,
            "oracle_max_segment": exact(&value),
            "closed_form": exact(&closed),
            "agree": value == closed,
        })),
    })
}
