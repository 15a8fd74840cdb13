//! Build strategies from each family and print their first turns.
//!
//! ```text
//! cargo run --example strategies [path/to/strategy.toml]
//! ```

use cowpath::{int, rat, Result, Strategy};

fn show(s: &Strategy) -> Result<()> {
    let first: Vec<String> = s.segments().take(8).map(|x| x.to_string()).collect();
    let report = s.validate(64);
    println!("{s}");
    println!("  x_0..x_7 = {}", first.join(", "));
    println!("  T_5      = {}", s.prefix_sum(5)?);
    println!(
        "  valid    = {} (certified {})",
        report.valid, report.certified
    );
    Ok(())
}

fn main() -> Result<()> {
    if let Some(path) = std::env::args().nth(1) {
        return show(&cowpath::report::load_strategy(path.as_ref())?);
    }

    show(&Strategy::doubling())?;
    show(&Strategy::geometric(rat(3, 2))?)?;
    show(&Strategy::r4())?;
    show(&Strategy::aggressive(int(1))?)?;

    let stalled = Strategy::explicit(vec![int(1), int(1), int(1)], None)?;
    let report = stalled.validate(64);
    println!("{stalled}");
    if let Some(v) = report.first_violation {
        println!("  invalid at index {}: {}", v.index, v.reason);
    }

    // Strategies round-trip through the same TOML format the CLI reads.
    println!("\n{}", Strategy::r4().to_toml());
    Ok(())
}
