mod common;

use common::sampled_pair_ratio;
use cowpath::ratio::discovery_ratio_pair;
use cowpath::{int, Rational, Strategy};

fn segments(s: &Strategy, n: usize) -> Vec<Rational> {
    s.segments().take(n).collect()
}

#[test]
fn sampled_ratio_never_exceeds_exact() {
    let horizon = int(100);
    let pairs = [
        (
            Strategy::doubling(),
            Strategy::explicit(vec![int(100), int(101)], None).unwrap(),
        ),
        (Strategy::doubling(), Strategy::r4()),
        (Strategy::r4(), Strategy::doubling()),
        (
            Strategy::geometric(int(3)).unwrap(),
            Strategy::aggressive(int(1)).unwrap(),
        ),
    ];
    for (x, y) in &pairs {
        let exact = discovery_ratio_pair(x, y, &horizon).unwrap();
        let sampled = sampled_pair_ratio(&segments(x, 20), &segments(y, 20), &horizon, 10_000);
        assert!(
            sampled <= exact.value,
            "{x} vs {y}: {sampled} > {}",
            exact.value
        );
        // The grid includes every integer, so it gets within a few percent.
        assert!(
            sampled * Rational::new(21.into(), 20.into()) >= exact.value,
            "{x} vs {y}"
        );
    }
}
