//! The 30 elements of NC_{7;2}, grouped by rank, with their Kreweras complements.

use ncpk::nc::enumerate_nc;
use ncpk::poset::count_by_rank;
use ncpk::KParams;

fn main() -> ncpk::Result<()> {
    let p = KParams::new(2, 3)?;
    let elements = enumerate_nc(p)?;
    for l in 0..=p.n {
        println!("rank {l}: {} elements (closed form {})", elements.iter().filter(|e| e.rank() == l).count(), count_by_rank(p, l)?);
        for w in elements.iter().filter(|e| e.rank() == l) {
            println!("  {w:<22} Krew = {}", w.kreweras());
        }
    }
    Ok(())
}
