//! Type-B analogues: observed against conjectured counts.

use ncpk::hurwitz::DEFAULT_MAX_STATES;
use ncpk::typeb::typeb_report;

fn main() -> ncpk::Result<()> {
    for (k, n) in [(1, 1), (1, 2), (2, 2), (1, 3), (1, 4), (4, 1)] {
        let r = typeb_report(k, n, 3, DEFAULT_MAX_STATES)?;
        println!("k={k} n={n} product preserved {}", r.product_preserved);
        for c in &r.comparisons {
            println!("  {:<12} {:>6} {:>6} {}", c.what, c.observed, c.conjectured, c.status);
        }
    }
    Ok(())
}
