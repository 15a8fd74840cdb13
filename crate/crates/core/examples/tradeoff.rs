//! Competitive ratio against discovery ratio along the geometric family,
//! written as CSV to standard output.

use cowpath::report::{tradeoff, RunConfig};
use cowpath::{int, rat, Result};

fn main() -> Result<()> {
    print!(
        "{}",
        tradeoff(&RunConfig::default(), &rat(11, 10), &int(4), 29)?
    );
    Ok(())
}
