//! The bicolored tree of w in NC_{25;3}, its halves and their 4-ary contractions.

use ncpk::bijections::{gj_tree, split_and_contract};
use ncpk::nc::NoncrossingElement;
use ncpk::{KParams, Permutation};

fn main() -> ncpk::Result<()> {
    let p = KParams::new(3, 8)?;
    let w = NoncrossingElement::new(Permutation::parse("(1 14 15 16 20 21 22)(2 3 4 5 9 10 11)", 25)?, p)?;
    let t = gj_tree(&w);
    t.validate()?;
    println!("w       {w}");
    println!("Krew(w) {}", w.kreweras());
    println!("read back white {}  black {}", t.white_permutation(), t.black_permutation());
    let (white, black) = t.split();
    println!("white half {white}\nblack half {black}");
    let (a, b) = split_and_contract(&t)?;
    println!("contracted {a}\n           {b}");
    Ok(())
}
