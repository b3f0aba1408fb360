//! Multichains of NC_{7;2} counted by their rank jumps.

use ncpk::poset::{build_poset, count_multichains_by_jump, RankJumpVector};
use ncpk::KParams;

fn main() -> ncpk::Result<()> {
    let p = KParams::new(2, 3)?;
    let poset = build_poset(p)?;
    for r in RankJumpVector::all(p.n, 2) {
        println!("{:?}: {} (brute force {})", r.0, count_multichains_by_jump(p, &r)?, poset.multichains_by_jump(&r.0, p.n)?);
    }
    Ok(())
}
