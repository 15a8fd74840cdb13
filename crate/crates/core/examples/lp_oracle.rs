//! Exact linear programs behind the closed forms.

use cowpath::lp::{build_max_segment_lp, default_n_max, oracle_min_discovery_cost, solve_lp};
use cowpath::{int, min_discovery_cost, Result};

fn main() -> Result<()> {
    // Largest segment a 9-competitive strategy can use at step n.
    let lp = build_max_segment_lp(3)?;
    print!("{lp}");
    let solution = solve_lp(&lp)?;
    println!(
        "status {:?}, value {}",
        solution.status,
        solution.value.clone().unwrap_or_default()
    );
    if let Some(x) = &solution.assignment {
        let xs: Vec<String> = x.iter().map(|v| v.to_string()).collect();
        println!("maximizer: {}\n", xs.join(" "));
    }

    for l in [int(5), int(16), int(100), int(1000)] {
        let n_max = default_n_max(&l)?;
        let oracle = oracle_min_discovery_cost(&l, n_max)?;
        let closed = min_discovery_cost(&l)?;
        println!(
            "l={l:<5} oracle={oracle:<10} closed={:<10} agree={}",
            closed.d_star,
            oracle == closed.d_star
        );
    }
    Ok(())
}
