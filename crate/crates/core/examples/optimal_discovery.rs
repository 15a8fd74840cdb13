//! Cheapest possible discovery of each length by a 9-competitive searcher,
//! and the aggressive strategy that attains it.

use cowpath::{discovery_cost, int, min_discovery_cost, rat, Result, Strategy};

fn main() -> Result<()> {
    println!("{:>6} {:>3} {:>12} {:>10}", "l", "m*", "d*(l)", "t");
    for l in [
        int(3),
        int(5),
        int(16),
        int(17),
        int(44),
        int(100),
        rat(1999, 2),
    ] {
        let best = min_discovery_cost(&l)?;
        let rt = Strategy::aggressive(best.witness_t.clone())?;
        assert_eq!(discovery_cost(&rt, &l)?, best.d_star);
        println!(
            "{:>6} {:>3} {:>12} {:>10}",
            l, best.m_star, best.d_star, best.witness_t
        );
    }
    Ok(())
}
