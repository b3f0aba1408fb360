//! Builds the poset by brute force and checks the zeta polynomial and Möbius
//! invariant against their closed forms.

use ncpk::poset::{build_poset, mobius_invariant, zeta};
use ncpk::KParams;

fn main() -> ncpk::Result<()> {
    for (k, n) in [(1, 3), (2, 3), (3, 2), (2, 4)] {
        let p = KParams::new(k, n)?;
        let poset = build_poset(p)?;
        print!("k={k} n={n}: {} elements, lattice {}", poset.len(), poset.is_lattice());
        for q in 1..=3 {
            print!(", Z({}) = {} / {}", q + 1, zeta(p, q as i64 + 1), poset.multichains(q));
        }
        println!(", mu = {} / {}", mobius_invariant(p)?, poset.mobius()?);
    }
    Ok(())
}
