//! Locate and discovery costs of a strategy.
//!
//! Before iteration `i` the searcher has explored `x_{i-1} + x_{i-2}` in
//! total (the deepest point on each branch). During iteration `i` new ground
//! is broken once it passes depth `x_{i-2}`, so for
//! `l in (x_{i-1} + x_{i-2}, x_i + x_{i-1}]` the discovery cost is
//! `D(l) = 2 T_{i-1} - x_{i-1} + l`: a unit-slope piece. At each boundary the
//! cost jumps by `x_i + x_{i-1}`, the walk back through the origin to the
//! other branch's frontier.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, pow2, Rational};
use crate::strategy::Strategy;

/// Upper bound on iterations walked while searching for a piece.
const MAX_SCAN: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hider {
    branch: u8,
    distance: Rational,
}

impl Hider {
    pub fn new(branch: u8, distance: Rational) -> Result<Self> {
        if branch > 1 {
            return Err(Error::InvalidParameter(format!(
                "branch must be 0 or 1, got {branch}"
            )));
        }
        if distance < Rational::one() {
            return Err(Error::InvalidParameter(format!(
                "hider distance must be at least 1, got {distance}"
            )));
        }
        Ok(Self { branch, distance })
    }

    pub fn branch(&self) -> u8 {
        self.branch
    }

    pub fn distance(&self) -> &Rational {
        &self.distance
    }
}

/// One unit-slope piece of the discovery cost, `l in (l_start, l_end]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfilePiece {
    /// Iteration during which this piece is discovered (turns made so far).
    pub index: usize,
    pub l_start: Rational,
    pub l_end: Rational,
    /// `lim D(l)` as `l -> l_start+`.
    pub cost_start: Rational,
    /// Jump at `l_end`, or `None` when the piece was cut by the horizon or
    /// ends the strategy.
    pub jump_after: Option<Rational>,
}

impl ProfilePiece {
    /// Constant `D(l) - l` on this piece.
    pub fn offset(&self) -> Rational {
        &self.cost_start - &self.l_start
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscoveryProfile {
    pub pieces: Vec<ProfilePiece>,
    pub horizon: Rational,
}

impl DiscoveryProfile {
    /// `D(l)` for `0 < l <= horizon`.
    pub fn cost_at(&self, l: &Rational) -> Option<Rational> {
        self.piece_at(l).map(|p| l + p.offset())
    }

    pub fn piece_at(&self, l: &Rational) -> Option<&ProfilePiece> {
        if !l.is_positive() || *l > self.horizon {
            return None;
        }
        self.pieces.iter().find(|p| *l > p.l_start && *l <= p.l_end)
    }
}

/// The minimal cost of discovering `l` over all competitively optimal
/// strategies, with the minimal turn count and the `R_t` attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalDiscovery {
    pub l: Rational,
    pub m_star: u32,
    pub d_star: Rational,
    /// Parameter of the aggressive strategy that attains `d_star`. For
    /// `l <= 4` every `R_t` with `t >= l` does; 4 is reported.
    pub witness_t: Rational,
}

/// Piece `i` containing a length, with its cost offset.
#[derive(Debug, Clone)]
pub(crate) struct PieceLocation {
    pub index: usize,
    pub l_start: Rational,
    pub l_end: Rational,
    /// `D(l) = l + offset`.
    pub offset: Rational,
    /// `x_i + x_{i-1}`.
    pub jump: Rational,
}

/// Walks the pieces `0, 1, 2, ...` in order.
pub(crate) struct PieceWalk<'a> {
    segments: crate::strategy::Segments<'a>,
    index: usize,
    prev1: Rational,
    prev2: Rational,
    sum_before_prev: Rational,
}

impl<'a> PieceWalk<'a> {
    pub fn new(strategy: &'a Strategy) -> Self {
        Self {
            segments: strategy.segments(),
            index: 0,
            prev1: Rational::zero(),
            prev2: Rational::zero(),
            sum_before_prev: Rational::zero(),
        }
    }

    pub fn next_piece(&mut self) -> Result<PieceLocation> {
        if self.index >= MAX_SCAN {
            return Err(Error::OutOfRange {
                index: self.index as i64,
                available: MAX_SCAN,
            });
        }
        let x = self.segments.next().ok_or(Error::OutOfRange {
            index: self.index as i64,
            available: self.index,
        })?;
        // T_{i-1} = T_{i-2} + x_{i-1}
        let t_prev = &self.sum_before_prev + &self.prev1;
        let location = PieceLocation {
            index: self.index,
            l_start: &self.prev1 + &self.prev2,
            l_end: &x + &self.prev1,
            offset: int(2) * &t_prev - &self.prev1,
            jump: &x + &self.prev1,
        };
        self.sum_before_prev = t_prev;
        self.prev2 = std::mem::replace(&mut self.prev1, x);
        self.index += 1;
        Ok(location)
    }
}

fn require_positive(l: &Rational) -> Result<()> {
    if !l.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "length must be positive, got {l}"
        )));
    }
    Ok(())
}

pub(crate) fn locate_piece(strategy: &Strategy, l: &Rational) -> Result<PieceLocation> {
    require_positive(l)?;
    let mut walk = PieceWalk::new(strategy);
    loop {
        let piece = walk.next_piece()?;
        if *l <= piece.l_end {
            return Ok(piece);
        }
    }
}

/// `c(S, H)`: distance walked until the searcher first reaches the hider.
pub fn locate_cost(strategy: &Strategy, hider: &Hider) -> Result<Rational> {
    let mut walked = Rational::zero();
    for (k, x) in strategy.segments().enumerate().take(MAX_SCAN) {
        if k % 2 == hider.branch as usize && x >= hider.distance {
            return Ok(walked + &hider.distance);
        }
        walked += int(2) * x;
    }
    Err(Error::OutOfRange {
        index: strategy.len().unwrap_or(MAX_SCAN) as i64,
        available: strategy.len().unwrap_or(MAX_SCAN),
    })
}

/// `D(S, l)`: cost at the moment the total explored length first reaches
/// `l`. At a piece boundary the pre-jump value is returned.
pub fn discovery_cost(strategy: &Strategy, l: &Rational) -> Result<Rational> {
    Ok(l + locate_piece(strategy, l)?.offset)
}

/// `m(S, l)`: turns performed before the explored length reaches `l`.
pub fn turns_to_discover(strategy: &Strategy, l: &Rational) -> Result<usize> {
    Ok(locate_piece(strategy, l)?.index)
}

/// Tabulates `D(S, .)` on `(0, horizon]`.
pub fn discovery_profile(strategy: &Strategy, horizon: &Rational) -> Result<DiscoveryProfile> {
    require_positive(horizon)?;
    let mut walk = PieceWalk::new(strategy);
    let mut pieces = Vec::new();
    loop {
        let piece = walk.next_piece()?;
        let cut = piece.l_end > *horizon;
        // A finite strategy stops searching after its last segment.
        let last = strategy.len() == Some(piece.index + 1);
        let done = piece.l_end >= *horizon;
        pieces.push(ProfilePiece {
            index: piece.index,
            cost_start: &piece.l_start + &piece.offset,
            l_end: if cut {
                horizon.clone()
            } else {
                piece.l_end.clone()
            },
            l_start: piece.l_start,
            jump_after: (!cut && !last).then_some(piece.jump),
        });
        if done {
            break;
        }
    }
    Ok(DiscoveryProfile {
        pieces,
        horizon: horizon.clone(),
    })
}

/// Largest length any competitively optimal strategy can discover with `n`
/// turns: 4 for `n = 0`, `(3n + 5) 2^n` otherwise (the `R_4` boundaries).
pub fn turn_threshold(n: u32) -> Rational {
    if n == 0 {
        int(4)
    } else {
        int(3 * n as i64 + 5) * pow2(n as i64)
    }
}

/// `m*(l)`.
pub fn min_turns(l: &Rational) -> Result<u32> {
    require_positive(l)?;
    let mut n = 0;
    while turn_threshold(n) < *l {
        n += 1;
    }
    Ok(n)
}

/// `d*(l) / l` for `m* = m`: 1 without turns, `(6m + 4) / (3m + 5)` otherwise.
pub fn discovery_factor(m: u32) -> Rational {
    if m == 0 {
        Rational::one()
    } else {
        Rational::new((6 * m as i64 + 4).into(), (3 * m as i64 + 5).into())
    }
}

/// `d*(l)`.
pub fn optimal_discovery_cost(l: &Rational) -> Result<Rational> {
    Ok(l * discovery_factor(min_turns(l)?))
}

/// `d*(l)` with `m*(l)` and the aggressive witness `t = l 2^(2-m*) / (3m* + 5)`.
pub fn min_discovery_cost(l: &Rational) -> Result<OptimalDiscovery> {
    let m_star = min_turns(l)?;
    let d_star = l * discovery_factor(m_star);
    let witness_t = if m_star == 0 {
        int(4)
    } else {
        l * pow2(2 - m_star as i64) / int(3 * m_star as i64 + 5)
    };
    debug_assert!(witness_t > Rational::one() || m_star == 0);
    debug_assert!(witness_t <= int(4));
    debug_assert_eq!(
        discovery_cost(
            &Strategy::aggressive(witness_t.clone()).expect("t in (1, 4]"),
            l
        )
        .ok(),
        Some(d_star.clone())
    );
    Ok(OptimalDiscovery {
        l: l.clone(),
        m_star,
        d_star,
        witness_t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::strategy::GeometricTail;
    use crate::strategy::Strategy;
    use proptest::prelude::*;

    #[test]
    fn locate_costs() {
        let g2 = Strategy::doubling();
        let cost = |b, d| locate_cost(&g2, &Hider::new(b, int(d)).unwrap()).unwrap();
        assert_eq!(cost(0, 1), int(1));
        assert_eq!(cost(1, 2), int(4));
        assert_eq!(cost(0, 3), int(9));
        assert!(Hider::new(0, rat(1, 2)).is_err());
        assert!(Hider::new(2, int(1)).is_err());

        let short = Strategy::explicit(vec![int(1), int(2)], None).unwrap();
        assert!(matches!(
            locate_cost(&short, &Hider::new(0, int(3)).unwrap()),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn discovery_costs() {
        let g2 = Strategy::doubling();
        let r4 = Strategy::r4();
        assert_eq!(discovery_cost(&g2, &int(3)).unwrap(), int(4));
        assert_eq!(discovery_cost(&r4, &int(16)).unwrap(), int(20));
        for l in [rat(1, 3), rat(1, 1), rat(5, 2), int(4)] {
            assert_eq!(discovery_cost(&r4, &l).unwrap(), l);
        }
        assert!(discovery_cost(&g2, &int(0)).is_err());

        assert_eq!(turns_to_discover(&r4, &int(4)).unwrap(), 0);
        assert_eq!(turns_to_discover(&r4, &int(16)).unwrap(), 1);
        assert_eq!(turns_to_discover(&g2, &int(3)).unwrap(), 1);
    }

    #[test]
    fn exhausted_prefix() {
        let s = Strategy::explicit(vec![int(1), int(2)], None).unwrap();
        assert_eq!(discovery_cost(&s, &int(3)).unwrap(), int(4));
        assert!(matches!(
            discovery_cost(&s, &rat(7, 2)),
            Err(Error::OutOfRange { .. })
        ));
        assert!(discovery_profile(&s, &int(5)).is_err());
    }

    #[test]
    fn doubling_profile() {
        let profile = discovery_profile(&Strategy::doubling(), &int(6)).unwrap();
        let bounds: Vec<_> = profile
            .pieces
            .iter()
            .map(|p| (p.l_start.clone(), p.l_end.clone(), p.cost_start.clone()))
            .collect();
        assert_eq!(
            bounds,
            vec![
                (int(0), int(1), int(0)),
                (int(1), int(3), int(2)),
                (int(3), int(6), int(7)),
            ]
        );
        // jump at the end of piece 2 is x_2 + x_1
        assert_eq!(profile.pieces[2].jump_after, Some(int(6)));

        let cut = discovery_profile(&Strategy::doubling(), &int(5)).unwrap();
        assert_eq!(cut.pieces.len(), 3);
        assert_eq!(cut.pieces[2].l_end, int(5));
        assert_eq!(cut.pieces[2].jump_after, None);
    }

    #[test]
    fn r4_profile_single_piece() {
        let profile = discovery_profile(&Strategy::r4(), &int(4)).unwrap();
        assert_eq!(profile.pieces.len(), 1);
        assert_eq!(profile.cost_at(&rat(7, 2)), Some(rat(7, 2)));
        assert_eq!(profile.cost_at(&int(5)), None);
    }

    #[test]
    fn turn_counts() {
        assert_eq!(min_turns(&int(4)).unwrap(), 0);
        assert_eq!(min_turns(&rat(1, 2)).unwrap(), 0);
        assert_eq!(min_turns(&rat(401, 100)).unwrap(), 1);
        assert_eq!(min_turns(&int(16)).unwrap(), 1);
        assert_eq!(min_turns(&int(44)).unwrap(), 2);
        assert_eq!(min_turns(&int(45)).unwrap(), 3);
        assert_eq!(min_turns(&int(100)).unwrap(), 3);
        assert!(min_turns(&int(0)).is_err());
    }

    #[test]
    fn threshold_sequence_matches_r4_boundaries() {
        // Oracle: enumerate (3n+5) 2^n directly.
        let expected = [4, 16, 44, 112, 272, 640];
        let r4 = Strategy::r4();
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(turn_threshold(n as u32), int(*e));
            let boundary = r4.segment(n as i64).unwrap() + r4.segment(n as i64 - 1).unwrap();
            assert_eq!(boundary, int(*e));
        }
    }

    #[test]
    fn optimal_discovery() {
        let at4 = min_discovery_cost(&int(4)).unwrap();
        assert_eq!((at4.m_star, at4.d_star), (0, int(4)));

        let at16 = min_discovery_cost(&int(16)).unwrap();
        assert_eq!(
            (at16.d_star.clone(), at16.witness_t.clone()),
            (int(20), int(4))
        );

        let at5 = min_discovery_cost(&int(5)).unwrap();
        assert_eq!((at5.d_star, at5.witness_t), (rat(25, 4), rat(5, 4)));
    }

    #[test]
    fn explicit_tail_profile_matches_geometric() {
        let tail = Strategy::explicit(
            vec![int(1)],
            Some(GeometricTail {
                base: int(2),
                ratio: int(2),
            }),
        )
        .unwrap();
        assert_eq!(
            discovery_profile(&tail, &int(200)).unwrap(),
            discovery_profile(&Strategy::doubling(), &int(200)).unwrap()
        );
    }

    proptest! {
        #[test]
        fn witness_attains_optimum(n in 1i64..100_000, d in 1i64..100) {
            let l = rat(n, d);
            let opt = min_discovery_cost(&l).unwrap();
            let witness = Strategy::aggressive(opt.witness_t.clone()).unwrap();
            prop_assert_eq!(discovery_cost(&witness, &l).unwrap(), opt.d_star.clone());
            if l > int(4) {
                prop_assert!(opt.witness_t > int(1) && opt.witness_t <= int(4));
                prop_assert_eq!(turns_to_discover(&witness, &l).unwrap() as u32, opt.m_star);
            }
            prop_assert_eq!(turns_to_discover(&Strategy::r4(), &l).unwrap() as u32, opt.m_star);
        }

        #[test]
        fn monotone_in_length(a in 1i64..50_000, b in 1i64..50_000, d in 1i64..50) {
            let (lo, hi) = (rat(a.min(b), d), rat(a.max(b), d));
            prop_assert!(min_turns(&lo).unwrap() <= min_turns(&hi).unwrap());
            let r_lo = optimal_discovery_cost(&lo).unwrap() / &lo;
            let r_hi = optimal_discovery_cost(&hi).unwrap() / &hi;
            prop_assert!(r_lo <= r_hi);
            prop_assert!(r_hi < int(2));
        }

        #[test]
        fn cost_dominates_length(n in 1i64..10_000, d in 1i64..100, alpha in 5i64..20) {
            let l = rat(n, d);
            for s in [Strategy::doubling(), Strategy::r4(), Strategy::geometric(rat(alpha, 4)).unwrap()] {
                let cost = discovery_cost(&s, &l).unwrap();
                prop_assert!(cost >= l);
                let before_first_turn = l <= s.segment(0).unwrap();
                prop_assert_eq!(cost == l, before_first_turn);
            }
        }

        #[test]
        fn locate_dominates_discovery(branch in 0u8..2, n in 1i64..10_000, d in 1i64..10) {
            let dist = rat(n, d);
            prop_assume!(dist >= int(1));
            let hider = Hider::new(branch, dist.clone()).unwrap();
            for s in [Strategy::doubling(), Strategy::r4(), Strategy::geometric(int(3)).unwrap()] {
                prop_assert!(locate_cost(&s, &hider).unwrap() >= discovery_cost(&s, &dist).unwrap());
            }
        }
    }
}
