//! Search strategies and their segment sequences.
//!
//! A strategy is the infinite sequence of search segments `x_0, x_1, ...`:
//! in iteration `i` the searcher walks from the origin to depth `x_i` on
//! branch `i mod 2` and walks back. Segments with negative index are zero,
//! and so are the prefix sums `T_n` for `n < 0`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, pow, pow2, Rational};

/// Default number of iterations scanned when no horizon is given.
pub const DEFAULT_HORIZON: usize = 64;

/// Geometric continuation `base * ratio^k` after an explicit prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricTail {
    pub base: Rational,
    pub ratio: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `x_n = alpha^n`.
    Geometric { alpha: Rational },
    /// `x_n = t (1 + n/2) 2^n`; every competitive-ratio-9 inequality is tight.
    Aggressive { t: Rational },
    Explicit {
        prefix: Vec<Rational>,
        tail: Option<GeometricTail>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    family: Family,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub index: i64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub valid: bool,
    pub first_violation: Option<Violation>,
    pub horizon_checked: usize,
    /// Validity holds for every index, not only up to `horizon_checked`.
    pub certified: bool,
}

/// Membership in the set of strategies with competitive ratio exactly 9.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sigma9Report {
    pub member: bool,
    /// Indices `n >= 1` with `x_n = 3 x_{n-1} - T_{n-2}`.
    pub tight_indices: Vec<i64>,
    /// First failing constraint and its (negative) slack.
    #[serde(serialize_with = "serialize_violation")]
    pub first_violation: Option<(i64, Rational)>,
    pub horizon_checked: usize,
    pub certified: bool,
}

fn serialize_violation<S: serde::Serializer>(
    value: &Option<(i64, Rational)>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    value
        .as_ref()
        .map(|(i, slack)| (*i, format_rational(slack)))
        .serialize(serializer)
}

impl Strategy {
    pub fn geometric(alpha: Rational) -> Result<Self> {
        if alpha <= Rational::one() {
            return Err(Error::InvalidParameter(format!(
                "geometric ratio must exceed 1, got {alpha}"
            )));
        }
        Ok(Self {
            family: Family::Geometric { alpha },
        })
    }

    pub fn aggressive(t: Rational) -> Result<Self> {
        if t < Rational::one() || t > int(4) {
            return Err(Error::InvalidParameter(format!(
                "aggressive parameter must lie in [1, 4], got {t}"
            )));
        }
        Ok(Self {
            family: Family::Aggressive { t },
        })
    }

    /// The doubling strategy `(1, 2, 4, ...)`.
    pub fn doubling() -> Self {
        Self::geometric(int(2)).expect("2 > 1")
    }

    /// `R_4`, the strategy with maximal segments `(n + 2) 2^(n+1)`.
    pub fn r4() -> Self {
        Self::aggressive(int(4)).expect("4 in [1, 4]")
    }

    /// Accepts any positive prefix; the ordering constraints are left to
    /// [`Strategy::validate`].
    pub fn explicit(prefix: Vec<Rational>, tail: Option<GeometricTail>) -> Result<Self> {
        if prefix.is_empty() {
            return Err(Error::InvalidParameter("explicit prefix is empty".into()));
        }
        if let Some((i, x)) = prefix.iter().enumerate().find(|(_, x)| !x.is_positive()) {
            return Err(Error::InvalidParameter(format!(
                "segment x_{i} = {x} is not positive"
            )));
        }
        if let Some(tail) = &tail {
            if !tail.base.is_positive() || !tail.ratio.is_positive() {
                return Err(Error::InvalidParameter(
                    "tail base and ratio must be positive".into(),
                ));
            }
        }
        Ok(Self {
            family: Family::Explicit { prefix, tail },
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Number of defined segments, or `None` for infinite strategies.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> Option<usize> {
        match &self.family {
            Family::Explicit { prefix, tail: None } => Some(prefix.len()),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.len().is_some()
    }

    pub fn is_doubling(&self) -> bool {
        matches!(&self.family, Family::Geometric { alpha } if *alpha == int(2))
    }

    pub fn is_r4(&self) -> bool {
        matches!(&self.family, Family::Aggressive { t } if *t == int(4))
    }

    /// `x_n`; zero for negative `n`.
    pub fn segment(&self, n: i64) -> Result<Rational> {
        if n < 0 {
            return Ok(Rational::zero());
        }
        match &self.family {
            Family::Geometric { alpha } => Ok(pow(alpha, n as u32)),
            Family::Aggressive { t } => Ok(t * int(n + 2) * pow2(n - 1)),
            Family::Explicit { prefix, tail } => {
                let idx = n as usize;
                if idx < prefix.len() {
                    return Ok(prefix[idx].clone());
                }
                match tail {
                    Some(tail) => Ok(&tail.base * pow(&tail.ratio, (idx - prefix.len()) as u32)),
                    None => Err(Error::OutOfRange {
                        index: n,
                        available: prefix.len(),
                    }),
                }
            }
        }
    }

    /// `T_n = x_0 + ... + x_n`; zero for negative `n`.
    pub fn prefix_sum(&self, n: i64) -> Result<Rational> {
        if n < 0 {
            return Ok(Rational::zero());
        }
        match &self.family {
            Family::Geometric { alpha } => {
                Ok((pow(alpha, n as u32 + 1) - Rational::one()) / (alpha - Rational::one()))
            }
            Family::Aggressive { t } => Ok(t * int(n + 1) * pow2(n)),
            Family::Explicit { .. } => {
                let mut sum = Rational::zero();
                for i in 0..=n {
                    sum += self.segment(i)?;
                }
                Ok(sum)
            }
        }
    }

    /// Iterates `x_0, x_1, ...`; finite for explicit strategies without a tail.
    pub fn segments(&self) -> Segments<'_> {
        Segments {
            strategy: self,
            next: 0,
        }
    }

    /// Multiplies every segment by `factor > 0`.
    pub fn scaled(&self, factor: &Rational) -> Result<Self> {
        if !factor.is_positive() {
            return Err(Error::InvalidParameter(
                "scale factor must be positive".into(),
            ));
        }
        let family = match &self.family {
            Family::Explicit { prefix, tail } => Family::Explicit {
                prefix: prefix.iter().map(|x| x * factor).collect(),
                tail: tail.as_ref().map(|t| GeometricTail {
                    base: &t.base * factor,
                    ratio: t.ratio.clone(),
                }),
            },
            Family::Geometric { alpha } => Family::Explicit {
                prefix: vec![factor.clone()],
                tail: Some(GeometricTail {
                    base: factor * alpha,
                    ratio: alpha.clone(),
                }),
            },
            Family::Aggressive { t } => {
                let t = t * factor;
                if t >= Rational::one() && t <= int(4) {
                    Family::Aggressive { t }
                } else {
                    return Err(Error::InvalidParameter(format!(
                        "scaled aggressive parameter {t} leaves [1, 4]"
                    )));
                }
            }
        };
        Ok(Self { family })
    }

    /// Checks `x_i > 0` and `x_{i+2} > x_i` for `i <= horizon` (as far as
    /// the strategy is defined).
    pub fn validate(&self, horizon: usize) -> ValidityReport {
        let analytic = match &self.family {
            Family::Geometric { .. } | Family::Aggressive { .. } => true,
            Family::Explicit { tail, .. } => {
                tail.as_ref().is_some_and(|t| t.ratio > Rational::one())
            }
        };
        let last = match self.len() {
            Some(len) => horizon.saturating_add(2).min(len.saturating_sub(1)),
            None => horizon + 2,
        };
        let xs: Vec<Rational> = self.segments().take(last + 1).collect();
        let mut violation = None;
        for (i, x) in xs.iter().enumerate() {
            if !x.is_positive() {
                violation = Some(Violation {
                    index: i as i64,
                    reason: format!("x_{i} = {x} is not positive"),
                });
                break;
            }
            if i >= 2 && xs[i] <= xs[i - 2] {
                violation = Some(Violation {
                    index: i as i64,
                    reason: format!(
                        "x_{i} = {} does not exceed x_{} = {}",
                        xs[i],
                        i - 2,
                        xs[i - 2]
                    ),
                });
                break;
            }
        }
        // For an explicit tail the first two tail terms must also clear the
        // prefix; beyond that the tail is strictly increasing on its own.
        let tail_covered = match &self.family {
            Family::Explicit {
                prefix,
                tail: Some(_),
            } => xs.len() >= prefix.len() + 2,
            _ => true,
        };
        let valid = violation.is_none();
        ValidityReport {
            valid,
            certified: valid && analytic && tail_covered,
            first_violation: violation,
            horizon_checked: last.saturating_sub(2).min(horizon),
        }
    }

    /// Checks `1 <= x_0 <= 4`, `x_1 >= 1` and `x_n <= 3 x_{n-1} - T_{n-2}`
    /// for `1 <= n <= horizon`.
    pub fn validate_sigma9(&self, horizon: usize) -> Sigma9Report {
        let last = match self.len() {
            Some(len) => horizon.min(len - 1),
            None => horizon,
        };
        let xs: Vec<Rational> = self.segments().take(last + 1).collect();
        let mut first_violation = None;
        let mut tight_indices = Vec::new();

        let x0 = &xs[0];
        if *x0 < Rational::one() {
            first_violation = Some((0, x0 - Rational::one()));
        } else if *x0 > int(4) {
            first_violation = Some((0, int(4) - x0));
        } else if xs.len() > 1 && xs[1] < Rational::one() {
            first_violation = Some((1, &xs[1] - Rational::one()));
        }

        if first_violation.is_none() {
            // running = T_{n-2}
            let mut running = Rational::zero();
            for n in 1..xs.len() {
                if n >= 2 {
                    running += &xs[n - 2];
                }
                let slack = int(3) * &xs[n - 1] - &running - &xs[n];
                if slack.is_zero() {
                    tight_indices.push(n as i64);
                } else if slack.is_negative() {
                    first_violation = Some((n as i64, slack));
                    break;
                }
            }
        }

        let member = first_violation.is_none();
        // Aggressive: tight for every n by construction. G_2: the slack is
        // 3 * 2^(n-1) - (2^(n-1) - 1) - 2^n = 1 for every n >= 1.
        let analytic = matches!(self.family, Family::Aggressive { .. }) || self.is_doubling();
        Sigma9Report {
            member,
            certified: if member { analytic } else { true },
            tight_indices,
            first_violation,
            horizon_checked: last,
        }
    }
}

pub struct Segments<'a> {
    strategy: &'a Strategy,
    next: i64,
}

impl Iterator for Segments<'_> {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        let x = self.strategy.segment(self.next).ok()?;
        self.next += 1;
        Some(x)
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.family {
            Family::Geometric { alpha } => write!(f, "G({alpha})"),
            Family::Aggressive { t } => write!(f, "R({t})"),
            Family::Explicit { prefix, tail } => {
                let body: Vec<String> = prefix.iter().map(format_rational).collect();
                write!(f, "({}", body.join(", "))?;
                if let Some(tail) = tail {
                    write!(f, ", {} * {}^k ...", tail.base, tail.ratio)?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StrategyFile {
    family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    prefix: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tail: Option<TailFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TailFile {
    base: String,
    ratio: String,
}

impl Strategy {
    /// Reads the TOML strategy document:
    ///
    /// ```toml
    /// family = "explicit"
    /// prefix = ["4", "12", "32"]
    /// tail = { base = "80", ratio = "5/2" }
    /// ```
    ///
    /// Malformed documents are [`Error::Parse`]; well-formed documents with
    /// out-of-range parameters are [`Error::InvalidParameter`].
    pub fn from_toml(text: &str) -> Result<Self> {
        let file: StrategyFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let require = |value: Option<String>, key: &str| {
            value
                .ok_or_else(|| Error::Parse(format!("family `{}` requires `{key}`", file.family)))
                .and_then(|v| parse_rational(&v))
        };
        match file.family.as_str() {
            "geometric" => Strategy::geometric(require(file.alpha.clone(), "alpha")?),
            "aggressive" => Strategy::aggressive(require(file.t.clone(), "t")?),
            "explicit" => {
                let prefix = file
                    .prefix
                    .as_ref()
                    .ok_or_else(|| Error::Parse("family `explicit` requires `prefix`".into()))?
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?;
                let tail = match &file.tail {
                    Some(t) => Some(GeometricTail {
                        base: parse_rational(&t.base)?,
                        ratio: parse_rational(&t.ratio)?,
                    }),
                    None => None,
                };
                Strategy::explicit(prefix, tail)
            }
            other => Err(Error::Parse(format!("unknown family `{other}`"))),
        }
    }

    pub fn to_toml(&self) -> String {
        let mut file = StrategyFile {
            family: String::new(),
            alpha: None,
            t: None,
            prefix: None,
            tail: None,
        };
        match &self.family {
            Family::Geometric { alpha } => {
                file.family = "geometric".into();
                file.alpha = Some(format_rational(alpha));
            }
            Family::Aggressive { t } => {
                file.family = "aggressive".into();
                file.t = Some(format_rational(t));
            }
            Family::Explicit { prefix, tail } => {
                file.family = "explicit".into();
                file.prefix = Some(prefix.iter().map(format_rational).collect());
                file.tail = tail.as_ref().map(|t| TailFile {
                    base: format_rational(&t.base),
                    ratio: format_rational(&t.ratio),
                });
            }
        }
        toml::to_string(&file).expect("strategy document serializes")
    }
}
