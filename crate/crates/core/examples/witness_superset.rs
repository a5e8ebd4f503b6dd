//! Witness Superset: find every minimal set of at most k elements that
//! contains a member of each family. Solved by the pruning recursion, by
//! brute force, and by decoding the OR of superimposed-code tensor encodings.

use apmc::codes::{decode_witness, encode_family, BoxCodeword, Codeword, SuperimposedCode};
use apmc::witness::{solve_ws_bruteforce, solve_ws_pruning, WsInstance};

fn main() -> apmc::Result<()> {
    let families = vec![
        vec![vec![2], vec![1, 5]],
        vec![vec![1, 3], vec![4]],
        vec![vec![4], vec![2, 4]],
    ];
    let k = 2;
    let inst = WsInstance::new(families, k)?;
    println!("pruning:     {:?}", solve_ws_pruning(&inst));
    println!("brute force: {:?}", solve_ws_bruteforce(&inst)?);

    let code = SuperimposedCode::fast(k, 6)?;
    let big_k = inst.max_family();
    let mut s = BoxCodeword::empty(code.len(), big_k)?;
    for fam in inst.families() {
        s = s.union(&encode_family(&code, big_k, fam)?);
    }
    println!(
        "code length {}, tensor order {big_k}, {} boxes",
        code.len(),
        s.boxes().len()
    );
    println!("decoded:     {:?}", decode_witness(&s, &code, k)?);
    Ok(())
}
