//! Latest and earliest <=k-cuts of a single pair, checked against the flow
//! oracle, on the binary-tree gadget where the number of latest cuts of each
//! size follows the Catalan numbers.

use apmc::cuts::{earliest_cuts_upto_k, latest_cuts_upto_k};
use apmc::flow::{earliest_min_cut, latest_min_cut, min_cut_value};
use apmc::gen;

fn main() -> apmc::Result<()> {
    let tree = gen::binary_tree(3, 5);
    let (s, t) = (0, tree.n() - 1);
    println!("tree gadget: n={} m={}", tree.n(), tree.m());
    println!(
        "min cut (capped at 4): {:?}",
        min_cut_value(&tree, s, t, 4)?
    );
    println!("earliest min cut: {:?}", earliest_min_cut(&tree, s, t)?);
    println!("latest min cut:   {:?}", latest_min_cut(&tree, s, t)?);

    let latest = latest_cuts_upto_k(&tree, s, t, 4)?;
    println!("latest <=4-cuts by size: {:?}", latest.size_histogram());
    for cut in latest.cuts() {
        println!("  {cut:?}");
    }
    let earliest = earliest_cuts_upto_k(&tree, s, t, 4)?;
    println!("earliest <=4-cuts by size: {:?}", earliest.size_histogram());
    Ok(())
}
