//! The braid group acts transitively on factorizations of the long cycle.

use ncpk::hurwitz::{hurwitz_orbit, orbit_report, staircase, DEFAULT_MAX_STATES};
use ncpk::KParams;

fn main() -> ncpk::Result<()> {
    let p = KParams::new(2, 3)?;
    let start = staircase(p);
    println!("start {start}");
    let orbit = hurwitz_orbit(&start, DEFAULT_MAX_STATES)?;
    for f in orbit.iter().take(5) {
        println!("  {f}");
    }
    println!("  ... {} in all", orbit.len());
    for (k, n) in [(1, 5), (2, 4), (3, 3), (1, 8)] {
        let r = orbit_report(&staircase(KParams::new(k, n)?), DEFAULT_MAX_STATES)?;
        println!("k={k} n={n}: orbit {} expected {}", r.orbit_size, r.expected);
    }
    Ok(())
}
