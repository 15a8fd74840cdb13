//! Acceptance suite: one PASS/FAIL line per criterion, with the individual
//! mismatches listed beneath a failing criterion. Exits non-zero on failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{random_lengths, random_valid_segments, walk_discovery, walk_locate};
use cowpath::discovery::{discovery_profile, min_turns, turns_to_discover};
use cowpath::lp::{
    build_max_segment_lp, build_min_discovery_lp, oracle_max_segment, oracle_min_discovery_cost,
    sample_lengths, solve_lp,
};
use cowpath::ratio::{
    competitive_ratio, discovery_ratio_all, discovery_ratio_sigma9, discovery_ratio_sigma9_from,
    prefix_deviation_bound, tradeoff_curve, RatioKind,
};
use cowpath::rational::pow2;
use cowpath::report::{tradeoff, RunConfig};
use cowpath::{
    discovery_cost, int, locate_cost, min_discovery_cost, rat, Hider, Rational, Strategy,
};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const H: usize = 64;

#[derive(Default)]
struct Criterion {
    failures: Vec<String>,
    checks: usize,
}

impl Criterion {
    fn eq(&mut self, what: impl std::fmt::Display, expected: &Rational, actual: Option<Rational>) {
        self.checks += 1;
        match actual {
            Some(a) if a == *expected => {}
            Some(a) => self
                .failures
                .push(format!("{what}: expected {expected}, got {a}")),
            None => self
                .failures
                .push(format!("{what}: expected {expected}, got an error")),
        }
    }

    fn holds(&mut self, what: impl std::fmt::Display, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures.push(what.to_string());
        }
    }
}

fn bar(n: i64) -> Rational {
    int(n + 2) * pow2(n + 1)
}

fn constants(c: &mut Criterion) {
    let g2 = Strategy::doubling();
    let r4 = Strategy::r4();
    c.eq(
        "cr(G2)",
        &int(9),
        competitive_ratio(&g2, H).ok().map(|r| r.value),
    );
    c.eq(
        "dr(G2, all)",
        &int(3),
        discovery_ratio_all(&g2, H).ok().map(|r| r.value),
    );
    for alpha in [rat(3, 2), int(2), int(3), int(4)] {
        let g = Strategy::geometric(alpha.clone()).unwrap();
        let a2 = &alpha * &alpha;
        let dr = (int(2) * &a2 + &alpha - int(1)) / (&a2 - int(1));
        let cr = int(1) + int(2) * &a2 / (&alpha - int(1));
        let got_dr = discovery_ratio_all(&g, H).unwrap();
        c.eq(
            format!("dr(G{alpha}, all)"),
            &dr,
            Some(got_dr.value.clone()),
        );
        c.eq(
            format!("cr(G{alpha})"),
            &cr,
            competitive_ratio(&g, H).ok().map(|r| r.value),
        );
        // The scanned finite-horizon value approaches the limit from below.
        c.holds(
            format!("dr(G{alpha}) scan below limit"),
            got_dr.scanned < dr && got_dr.certified,
        );
    }
    c.eq(
        "dr(R4, Sigma9)",
        &rat(8, 5),
        discovery_ratio_sigma9(&r4, H).ok().map(|r| r.value),
    );
    c.eq(
        "dr(R4, Sigma9) restricted to i >= 2",
        &rat(99, 64),
        discovery_ratio_sigma9_from(&r4, 2, H).ok().map(|r| r.value),
    );
    c.eq(
        "dr(G2, Sigma9)",
        &rat(7, 3),
        discovery_ratio_sigma9(&g2, H).ok().map(|r| r.value),
    );
    for t in [rat(3, 2), int(2), int(4)] {
        let rt = Strategy::aggressive(t.clone()).unwrap();
        c.eq(
            format!("dr(R{t}, all)"),
            &int(3),
            discovery_ratio_all(&rt, H).ok().map(|r| r.value),
        );
    }
    // Unroll x_n = 3 x_{n-1} - T_{n-2} from x_0 = 4 instead of using the
    // closed forms inside the library.
    let mut xs: Vec<Rational> = vec![int(4)];
    let mut sums: Vec<Rational> = vec![int(4)];
    for n in 1..=10usize {
        let t2 = if n >= 2 {
            sums[n - 2].clone()
        } else {
            Rational::zero()
        };
        let x = int(3) * &xs[n - 1] - t2;
        sums.push(&sums[n - 1] + &x);
        xs.push(x);
    }
    for n in 0..=10i64 {
        c.eq(format!("xbar_{n}"), &bar(n), r4.segment(n).ok());
        c.eq(
            format!("xbar_{n} by recurrence"),
            &bar(n),
            Some(xs[n as usize].clone()),
        );
        c.eq(
            format!("T_{n}(R4)"),
            &(int(n + 1) * pow2(n + 2)),
            r4.prefix_sum(n).ok(),
        );
        c.eq(
            format!("T_{n}(R4) by recurrence"),
            &(int(n + 1) * pow2(n + 2)),
            Some(sums[n as usize].clone()),
        );
    }
}

fn lp_cross_validation(c: &mut Criterion) {
    let samples = sample_lengths(200, 0xC0FFEE);
    c.holds("200 distinct samples in (4, 1000]", {
        let mut sorted = samples.clone();
        sorted.sort();
        sorted.dedup();
        sorted.len() == 200 && samples.iter().all(|l| *l > int(4) && *l <= int(1000))
    });
    for l in &samples {
        // Independent closed form: smallest m with theta_m >= l, where
        // theta_0 = 4 and theta_m = (3m + 5) 2^m.
        let theta = |m: i64| {
            if m == 0 {
                int(4)
            } else {
                int(3 * m + 5) * pow2(m)
            }
        };
        let mut m = 0i64;
        while theta(m) < *l {
            m += 1;
        }
        let d_star = if m == 0 {
            l.clone()
        } else {
            l * int(6 * m + 4) / int(3 * m + 5)
        };
        let t = l * pow2(2 - m) / int(3 * m + 5);
        let oracle = oracle_min_discovery_cost(l, min_turns(l).unwrap() as i64 + 3).ok();
        c.eq(format!("oracle d*({l})"), &d_star, oracle);
        let x0 = build_min_discovery_lp(l, m)
            .and_then(|lp| solve_lp(&lp))
            .ok()
            .and_then(|s| s.assignment)
            .map(|x| x[0].clone());
        c.eq(format!("LP witness x0 at l={l}"), &t, x0.clone());
        c.holds(
            format!("witness {t} in (1, 4]"),
            t > Rational::one() && t <= int(4),
        );
        c.eq(
            format!("library witness at l={l}"),
            &t,
            min_discovery_cost(l).ok().map(|o| o.witness_t),
        );
        let turns = Strategy::aggressive(t.clone())
            .ok()
            .and_then(|rt| turns_to_discover(&rt, l).ok())
            .map(|k| int(k as i64));
        c.eq(format!("m(R_t, {l})"), &int(m), turns);
        c.eq(
            format!("min_turns({l})"),
            &int(m),
            min_turns(l).ok().map(|k| int(k as i64)),
        );
    }
}

fn max_segment(c: &mut Criterion) {
    for n in 0..=10i64 {
        c.eq(
            format!("max segment {n}"),
            &bar(n),
            oracle_max_segment(n).ok(),
        );
        let lp = build_max_segment_lp(n).unwrap();
        let x = solve_lp(&lp).unwrap().assignment.unwrap();
        let first = lp.constraints.len() - n as usize;
        for k in first..lp.constraints.len() {
            c.holds(
                format!("n={n}: competitive constraint {k} tight"),
                lp.slack(k, &x).is_zero(),
            );
        }
        for (i, xi) in x.iter().enumerate() {
            c.eq(
                format!("n={n}: maximizer x_{i}"),
                &bar(i as i64),
                Some(xi.clone()),
            );
        }
    }
}

fn walk_equivalence(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let xs = random_valid_segments(&mut rng, 8);
        let s = Strategy::explicit(xs.clone(), None).unwrap();
        c.holds(format!("{s} valid"), s.validate(H).valid);
        for l in random_lengths(&mut rng, &xs, 50) {
            c.eq(
                format!("D({s}, {l})"),
                &walk_discovery(&xs, &l).unwrap(),
                discovery_cost(&s, &l).ok(),
            );
            let branch = (l.numer().bits() % 2) as u8;
            let deepest = &xs[6 + branch as usize];
            let d = if l <= *deepest && l >= Rational::one() {
                l.clone()
            } else {
                deepest.clone()
            };
            let hider = Hider::new(branch, d.clone()).unwrap();
            c.eq(
                format!("locate({s}, {branch}, {d})"),
                &walk_locate(&xs, branch as usize, &d).unwrap(),
                locate_cost(&s, &hider).ok(),
            );
        }
        let profile = discovery_profile(&s, &(&xs[7] + &xs[6])).unwrap();
        for piece in &profile.pieces {
            let Some(jump) = &piece.jump_after else {
                continue;
            };
            let i = piece.index;
            let prev = if i == 0 {
                Rational::zero()
            } else {
                xs[i - 1].clone()
            };
            c.eq(
                format!("{s} jump {i}"),
                &(&xs[i] + prev),
                Some(jump.clone()),
            );
        }
    }
}

fn tradeoff_curve_shape(c: &mut Criterion) {
    let curve = tradeoff_curve(&rat(11, 10), &int(4), 29).unwrap();
    c.holds("30 grid points", curve.len() == 30);
    for (k, p) in curve.iter().enumerate() {
        c.eq(
            format!("grid point {k}"),
            &rat(11 + k as i64, 10),
            Some(p.alpha.clone()),
        );
    }
    let best = curve.iter().min_by(|a, b| a.cr.cmp(&b.cr)).unwrap();
    c.eq("argmin cr", &int(2), Some(best.alpha.clone()));
    c.eq("min cr", &int(9), Some(best.cr.clone()));
    c.holds(
        "minimum is unique",
        curve.iter().filter(|p| p.cr == best.cr).count() == 1,
    );
    for w in curve.windows(2) {
        c.holds(
            format!("dr decreasing at alpha={}", w[1].alpha),
            w[1].dr_sigma < w[0].dr_sigma,
        );
    }
    let config = RunConfig::default();
    let a = tradeoff(&config, &rat(11, 10), &int(4), 29).unwrap();
    let b = tradeoff(&config, &rat(11, 10), &int(4), 29).unwrap();
    c.holds("CSV byte-identical", a == b);
}

fn prefix_forcing(c: &mut Criterion) {
    for j in 1..=4u32 {
        for q in [rat(1, 2), rat(9, 10), rat(999, 1000)] {
            let bound = prefix_deviation_bound(j, &(&q * bar(j as i64)));
            c.holds(
                format!("bound(j={j}, q={q}) > 8/5"),
                bound.as_ref().is_ok_and(|b| *b > rat(8, 5)),
            );
        }
        let jj = j as i64;
        c.eq(
            format!("bound(j={j}, xbar)"),
            &rat(9 * jj + 9, 6 * jj + 4),
            prefix_deviation_bound(j, &bar(jj)).ok(),
        );
    }
    c.eq(
        "bound(4, xbar_4)",
        &rat(45, 28),
        prefix_deviation_bound(4, &bar(4)).ok(),
    );
    let five = prefix_deviation_bound(5, &bar(5)).ok();
    c.eq("bound(5, xbar_5)", &rat(27, 17), five.clone());
    c.holds("27/17 < 8/5", five.is_some_and(|b| b < rat(8, 5)));
    for x0 in [int(1), int(2), rat(7, 2), rat(3999, 1000)] {
        let s = Strategy::doubling().scaled(&x0).unwrap();
        let r = discovery_ratio_sigma9_from(&s, 1, 1).unwrap();
        c.holds(
            format!("x0={x0}: i=1 right limit {} >= 2", r.value),
            r.value >= int(2) && r.kind == RatioKind::RightLimit && r.witness.index == 1,
        );
    }
}

fn sigma9_membership(c: &mut Criterion) {
    for t in [int(1), int(2), int(4)] {
        let report = Strategy::aggressive(t.clone()).unwrap().validate_sigma9(H);
        c.holds(format!("R{t} member"), report.member && report.certified);
        c.holds(
            format!("R{t} all constraints tight"),
            report.tight_indices == (1..=H as i64).collect::<Vec<_>>(),
        );
    }
    let g2 = Strategy::doubling().validate_sigma9(H);
    c.holds("G2 member", g2.member && g2.certified);
    let g3 = Strategy::geometric(int(3)).unwrap();
    let report = g3.validate_sigma9(H);
    c.holds("G3 not a member", !report.member);
    c.eq(
        "G3 first violation index",
        &int(2),
        report.first_violation.as_ref().map(|v| int(v.0)),
    );
    c.eq("G3 x_2", &int(9), g3.segment(2).ok());
    c.eq(
        "G3 bound 3 x_1 - T_0",
        &int(8),
        Some(int(3) * g3.segment(1).unwrap() - g3.prefix_sum(0).unwrap()),
    );
}

type Entry = (&'static str, fn(&mut Criterion), Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Entry; 7] = [
        (
            "1 reference constants",
            constants,
            Some(Duration::from_secs(1)),
        ),
        (
            "2 LP cross-validation",
            lp_cross_validation,
            Some(Duration::from_secs(10)),
        ),
        ("3 max-segment LP", max_segment, None),
        ("4 walk-oracle equivalence", walk_equivalence, None),
        ("5 tradeoff curve", tradeoff_curve_shape, None),
        ("6 prefix forcing", prefix_forcing, None),
        ("7 Sigma9 membership", sigma9_membership, None),
    ];
    let mut all_pass = true;
    for (name, run, limit) in criteria {
        let mut c = Criterion::default();
        let start = Instant::now();
        run(&mut c);
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            c.holds(
                format!("runtime {elapsed:?} under {limit:?}"),
                elapsed < limit,
            );
        }
        let pass = c.failures.is_empty();
        all_pass &= pass;
        println!(
            "{} criterion {name}: {} checks, {} failed, {:.2?}",
            if pass { "PASS" } else { "FAIL" },
            c.checks,
            c.failures.len(),
            elapsed
        );
        for f in &c.failures {
            println!("    {f}");
        }
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
