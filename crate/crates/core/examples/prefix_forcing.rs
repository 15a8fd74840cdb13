use cowpath::ratio::prefix_deviation_bound;
use cowpath::{int, rat, Result};

/// How much shrinking one early turn of R4 costs in discovery ratio.
fn main() -> Result<()> {
    for j in 1..=6u32 {
        let full = int(i64::from(j) + 2) * cowpath::rational::pow2(i64::from(j) + 1);
        let half = prefix_deviation_bound(j, &(&full / int(2)))?;
        let tiny = prefix_deviation_bound(j, &rat(1, 1000))?;
        println!("j={j} x_j={full:<5} half -> {half:<10} tiny -> {tiny}");
    }
    Ok(())
}
