//! Competitive ratio and discovery ratio of a few classic strategies.

use cowpath::ratio::{competitive_ratio, discovery_ratio_all, RatioResult};
use cowpath::{int, rat, Result, Strategy};

fn line(name: &str, r: &RatioResult) {
    println!(
        "  {name:<9} {:<6} {:<17} certified={} ({})",
        r.value.to_string(),
        r.kind.to_string(),
        r.certified,
        r.witness.delta
    );
}

fn main() -> Result<()> {
    let strategies = [
        Strategy::doubling(),
        Strategy::geometric(rat(3, 2))?,
        Strategy::geometric(int(3))?,
        Strategy::r4(),
        Strategy::explicit(vec![int(1), int(2), int(4), int(8)], None)?,
    ];
    for s in &strategies {
        println!("{s}");
        line("cr", &competitive_ratio(s, 64)?);
        line("dr_sigma", &discovery_ratio_all(s, 64)?);
    }
    Ok(())
}
