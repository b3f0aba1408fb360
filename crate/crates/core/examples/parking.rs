//! Minima of factors give k-parking functions; the map commutes with the
//! symmetric group action.

use ncpk::bijections::{phi, phi_inverse, ParkingFunction};
use ncpk::hurwitz::enumerate_factorizations;
use ncpk::KParams;

fn main() -> ncpk::Result<()> {
    let p = KParams::new(2, 3)?;
    for f in enumerate_factorizations(p, 100)?.iter().take(8) {
        let pf = phi(f);
        println!("{f:<28} -> {pf}   s_1: {} -> {}", f.sym_action(1)?, pf.swap(1)?);
    }
    let pf = ParkingFunction::parse(2, "3,1,5")?;
    println!("{pf} comes from {}", phi_inverse(&pf)?);
    Ok(())
}
