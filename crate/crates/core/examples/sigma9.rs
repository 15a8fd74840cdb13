//! Discovery ratio among searchers that keep the optimal competitive ratio 9.
//!
//! R4 achieves 8/5 while doubling only reaches 7/3. Tripling is not
//! 9-competitive, so the report flags it but still evaluates the functional.

use cowpath::ratio::{discovery_ratio_sigma9, discovery_ratio_sigma9_from};
use cowpath::{int, Result, Strategy};

fn main() -> Result<()> {
    for s in [
        Strategy::r4(),
        Strategy::doubling(),
        Strategy::geometric(int(3))?,
    ] {
        let membership = s.validate_sigma9(64);
        let r = discovery_ratio_sigma9(&s, 64)?;
        println!(
            "{s}: member={} tight={} dr={} ({} at i={}, {})",
            membership.member,
            membership.tight_indices.len(),
            r.value,
            r.kind,
            r.witness.index,
            r.witness.delta
        );
        if let Some((i, slack)) = membership.first_violation {
            println!("  constraint {i} has slack {slack}");
        }
    }

    let rest = discovery_ratio_sigma9_from(&Strategy::r4(), 2, 64)?;
    println!(
        "R4 ignoring the first turn: {} at i={}",
        rest.value, rest.witness.index
    );
    Ok(())
}
