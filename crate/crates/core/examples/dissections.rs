//! Commutation classes as dissections into (2k+2)-gons, and the lattice of
//! clockwise rotations.

use ncpk::geometry::{build_cambrian, theta_class, theta_inverse};
use ncpk::hurwitz::commutation_classes;
use ncpk::KParams;

fn main() -> ncpk::Result<()> {
    let p = KParams::new(1, 3)?;
    for c in commutation_classes(p, 1000)? {
        let d = theta_class(&c)?;
        assert_eq!(theta_inverse(&d)?, c);
        println!("{:<20} size {}  {d}", c.representative.to_string(), c.size);
    }
    let lattice = build_cambrian(p, 100)?;
    println!("{} elements, {} covers, lattice {}", lattice.len(), lattice.covers().len(), lattice.is_lattice());
    Ok(())
}
