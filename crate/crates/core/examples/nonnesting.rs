//! Noncrossing to nonnesting: tree halves, k-Dyck paths, one lattice path,
//! one order ideal.

use ncpk::bijections::{gj_tree, ideal_to_path, nc_to_nn, path_decompose, split_and_contract, tree_to_dyck};
use ncpk::nc::enumerate_nc;
use ncpk::KParams;

fn main() -> ncpk::Result<()> {
    let p = KParams::new(2, 3)?;
    for w in enumerate_nc(p)?.iter().take(10) {
        let (a, b) = split_and_contract(&gj_tree(w))?;
        let ideal = nc_to_nn(w)?;
        let path = ideal_to_path(&ideal);
        let (p1, p2) = path_decompose(&path);
        assert_eq!((p1.clone(), p2.clone()), (tree_to_dyck(&a, p.k)?, tree_to_dyck(&b, p.k)?));
        println!("{w:<18} {path}  = U[{p1}]R[{p2}]  {ideal}");
    }
    Ok(())
}
