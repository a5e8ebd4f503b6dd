//! All-pairs latest <=k-cuts on a random DAG with the reverse-topological
//! dynamic program, compared with per-pair max flow.

use apmc::flow::oracle_values;
use apmc::gen;
use apmc::iterative::{all_pairs_latest_cuts, verify_witnesses};

fn main() -> apmc::Result<()> {
    let g = gen::random_dag(8, 20, 2, 7);
    let k = 2;
    let table = all_pairs_latest_cuts(&g, k)?;
    let values = table.values();
    print!("{values}");
    assert_eq!(values, oracle_values(&g, k));
    verify_witnesses(&g, &table).expect("witnesses are minimal cuts");

    let (s, t) = (0..g.n())
        .flat_map(|s| (0..g.n()).map(move |t| (s, t)))
        .find(|&(s, t)| s != t && table.family(s, t).is_some_and(|f| f.len() > 1))
        .unwrap_or((0, 1));
    println!(
        "latest cuts for {s}->{t}: {:?}",
        table.family(s, t).map(|f| f.cuts())
    );
    Ok(())
}
