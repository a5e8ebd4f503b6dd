//! Randomized network coding for k-bounded vertex connectivity on a general
//! digraph (cycles allowed), compared with the max-flow oracle.

use apmc::flow::vertex_connectivity_bounded;
use apmc::gen;
use apmc::netcoding::{kapmvc, kstmvc};

fn main() -> apmc::Result<()> {
    let g = gen::random_digraph(8, 24, 2, 3);
    let k = 3;
    let report = kapmvc(&g, k, 42)?;
    let mut mismatches = 0;
    for s in 0..g.n() {
        let row: Vec<String> = (0..g.n())
            .map(|t| match report.get(s, t) {
                None => Ok("-".into()),
                Some(v) => {
                    mismatches += (v != vertex_connectivity_bounded(&g, s, t, k)?) as usize;
                    Ok(v.to_string())
                }
            })
            .collect::<apmc::Result<_>>()?;
        println!("{}", row.join("\t"));
    }
    println!(
        "seed {} after {} retries, {mismatches} mismatches",
        report.seed, report.retries
    );

    let sub = kstmvc(&g, &[0, 1], &[6, 7], k, 42)?;
    println!("{{0,1}} x {{6,7}}: {:?}", sub.values);
    Ok(())
}
