use ncpk::mdiv::{build_mposet, m_maximal_chains, m_mobius, mzeta, MobiusVariant};
use ncpk::KParams;

fn main() -> ncpk::Result<()> {
    let p = KParams::new(2, 2)?;
    for m in 1..=3 {
        let poset = build_mposet(p, m)?;
        println!("m={m}: {} multichains as elements", poset.len());
        println!("  maximal chains {} / {}", m_maximal_chains(p, m), poset.maximal_chains());
        println!("  zeta(3) {} / {}", mzeta(p, m, 2), poset.multichains(2));
        println!("  mobius with new bottom {} / {}", m_mobius(p, m, MobiusVariant::Hat)?, poset.mobius_with_new_bottom()?);
        println!("  mobius with merged minima {} / {}", m_mobius(p, m, MobiusVariant::Bar)?, poset.mobius_with_merged_minima()?);
    }
    Ok(())
}
