//! Reference implementations used only by the tests. They simulate the
//! searcher move by move instead of using prefix-sum formulas.
#![allow(dead_code)]

use cowpath::{int, Rational};
use num_traits::Zero;
use rand::Rng;

/// Walks the segments one iteration at a time, tracking the clock and the
/// deepest explored point of each branch. Returns the clock when the total
/// explored length first reaches `l`.
pub fn walk_discovery(segments: &[Rational], l: &Rational) -> Option<Rational> {
    let mut depth = [Rational::zero(), Rational::zero()];
    let mut clock = Rational::zero();
    for (i, x) in segments.iter().enumerate() {
        let b = i % 2;
        if *x > depth[b] {
            let explored = &depth[0] + &depth[1];
            let needed = l - &explored;
            // Old ground costs depth[b] of walking before anything new appears.
            if needed <= x - &depth[b] {
                return Some(&clock + &depth[b] + needed);
            }
            depth[b] = x.clone();
        }
        clock += x + x;
    }
    None
}

/// Clock when the searcher first stands at distance `d` on `branch`.
pub fn walk_locate(segments: &[Rational], branch: usize, d: &Rational) -> Option<Rational> {
    let mut clock = Rational::zero();
    for (i, x) in segments.iter().enumerate() {
        if i % 2 == branch && x >= d {
            return Some(clock + d);
        }
        clock += x + x;
    }
    None
}

fn random_rational(rng: &mut impl Rng, lo: i64, hi: i64) -> Rational {
    let den: i64 = rng.gen_range(1..=12);
    let num: i64 = rng.gen_range(lo * den..=hi * den);
    Rational::new(num.into(), den.into())
}

/// `len` segments with `x_0, x_1 >= 1` and `x_{i+2} > x_i`.
pub fn random_valid_segments(rng: &mut impl Rng, len: usize) -> Vec<Rational> {
    let mut xs = vec![random_rational(rng, 1, 5), random_rational(rng, 1, 8)];
    while xs.len() < len {
        let step = random_rational(rng, 0, 10);
        let step = if step.is_zero() {
            Rational::new(1.into(), 13.into())
        } else {
            step
        };
        xs.push(&xs[xs.len() - 2] + step);
    }
    xs.truncate(len);
    xs
}

/// Lengths in `(0, x_{n-1} + x_{n-2}]`, mixing piece boundaries with
/// random interior points.
pub fn random_lengths(rng: &mut impl Rng, xs: &[Rational], count: usize) -> Vec<Rational> {
    let n = xs.len();
    let reach = &xs[n - 1] + &xs[n - 2];
    (0..count)
        .map(|k| {
            if k % 3 == 0 {
                let i = rng.gen_range(0..n);
                let prev = if i == 0 {
                    Rational::zero()
                } else {
                    xs[i - 1].clone()
                };
                &xs[i] + prev
            } else {
                let den: i64 = rng.gen_range(1..=1000);
                &reach * Rational::new(rng.gen_range(1..=den).into(), den.into())
            }
        })
        .collect()
}

/// Largest `D_x(l) / D_y(l)` over `steps` equally spaced `l` in
/// `(0, horizon]`, plus points just right of each grid point.
pub fn sampled_pair_ratio(
    x: &[Rational],
    y: &[Rational],
    horizon: &Rational,
    steps: i64,
) -> Rational {
    let eps = horizon / int(steps * 1000);
    let mut best = Rational::zero();
    for k in 1..=steps {
        let l = horizon * Rational::new(k.into(), steps.into());
        for at in [l.clone(), &l - &eps] {
            let (Some(a), Some(b)) = (walk_discovery(x, &at), walk_discovery(y, &at)) else {
                continue;
            };
            let r = a / b;
            if r > best {
                best = r;
            }
        }
    }
    best
}
