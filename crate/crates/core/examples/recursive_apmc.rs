//! The divide-and-conquer algorithm: splits the topological order in half and
//! combines the halves through tensor-encoded witness families. Produces both
//! latest and earliest families; must agree with the iterative algorithm.

use apmc::gen;
use apmc::iterative::{all_pairs_earliest_cuts, all_pairs_latest_cuts};
use apmc::recursive::{all_pairs_extremal_cuts_recursive, default_max_family, RecursiveConfig};

fn main() -> apmc::Result<()> {
    let g = gen::random_dag(10, 24, 3, 11);
    for k in 1..=3 {
        let cfg = RecursiveConfig::default();
        let (latest, earliest) = all_pairs_extremal_cuts_recursive(&g, k, &cfg)?;
        assert_eq!(latest, all_pairs_latest_cuts(&g, k)?);
        assert_eq!(earliest, all_pairs_earliest_cuts(&g, k)?);
        let cuts: usize = (0..g.n())
            .flat_map(|s| (0..g.n()).map(move |t| (s, t)))
            .filter_map(|(s, t)| latest.family(s, t))
            .map(|f| f.len())
            .sum();
        println!(
            "k={k}: family cap {}, {cuts} latest cuts in total",
            default_max_family(k)
        );
    }
    Ok(())
}
