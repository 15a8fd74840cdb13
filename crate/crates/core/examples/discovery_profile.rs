//! Discovery cost as a function of the target length.
//!
//! The cost is piecewise linear with slope 1 and jumps exactly where the
//! searcher turns before reaching a new length on the other branch.

use cowpath::{discovery_cost, discovery_profile, int, locate_cost, rat, Hider, Result, Strategy};

fn main() -> Result<()> {
    let g2 = Strategy::doubling();
    let profile = discovery_profile(&g2, &int(50))?;
    println!(
        "{:>8} {:>8} {:>10} {:>8}",
        "l_start", "l_end", "cost_start", "jump"
    );
    for piece in &profile.pieces {
        let jump = piece
            .jump_after
            .as_ref()
            .map(|j| j.to_string())
            .unwrap_or("-".into());
        println!(
            "{:>8} {:>8} {:>10} {:>8}",
            piece.l_start, piece.l_end, piece.cost_start, jump
        );
    }

    for l in [rat(1, 2), int(3), rat(7, 2), int(20)] {
        println!("D(G2, {l}) = {}", discovery_cost(&g2, &l)?);
    }

    // Locating a hider is never cheaper than discovering its distance.
    let hider = Hider::new(1, int(5))?;
    println!(
        "locate branch {} at {}: {}",
        hider.branch(),
        hider.distance(),
        locate_cost(&g2, &hider)?
    );
    Ok(())
}
