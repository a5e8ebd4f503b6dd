//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test --test acceptance`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use apmc::clique::{
    decide_4clique_bounded, decide_4clique_unbounded, edge_reports, flow_solver, has_4clique,
};
use apmc::codes::{
    decode_witness, encode_family, BoxCodeword, Codeword, DenseCodeword, SuperimposedCode,
};
use apmc::cuts::{is_minimal_cut, latest_cuts_upto_k, ArcSet, CutFamily};
use apmc::flow::{
    enumerate_extremal_cuts_bruteforce, find_4clique_bruteforce, oracle_values,
    vertex_connectivity_bounded,
};
use apmc::gen;
use apmc::graph::MultiDigraph;
use apmc::iterative::{all_pairs_earliest_cuts, all_pairs_latest_cuts};
use apmc::netcoding::kapmvc;
use apmc::recursive::{all_pairs_extremal_cuts_recursive, catalan, RecursiveConfig};
use apmc::table::{ApmcTable, CutValue};
use apmc::witness::{solve_ws_bruteforce, solve_ws_pruning, WsInstance};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |s| (0..n).filter(move |&t| t != s).map(move |t| (s, t)))
}

/// Criterion 1 corpus: 200 DAGs with n <= 10, m <= 20, multiplicity <= 3.
fn dag_corpus() -> Vec<MultiDigraph> {
    (0..200u64)
        .map(|seed| {
            let mut r = gen::rng(1_000 + seed);
            let n = r.gen_range(1..=10);
            let m = r.gen_range(0..=20);
            gen::random_dag(n, m, 3, seed)
        })
        .collect()
}

/// Criterion 3 corpus: 300 DAGs with at most 14 arcs.
fn small_corpus() -> Vec<(MultiDigraph, usize)> {
    (0..300u64)
        .map(|seed| {
            let mut r = gen::rng(5_000 + seed);
            let n = r.gen_range(2..=7);
            let m = r.gen_range(0..=14);
            let k = r.gen_range(1..=3);
            (gen::random_dag(n, m, 3, 7_000 + seed), k)
        })
        .collect()
}

fn solve_both(
    g: &MultiDigraph,
    k: usize,
) -> Result<(ApmcTable, ApmcTable, ApmcTable, ApmcTable), String> {
    let it = all_pairs_latest_cuts(g, k).map_err(|e| e.to_string())?;
    let it_e = all_pairs_earliest_cuts(g, k).map_err(|e| e.to_string())?;
    let (rec, rec_e) = all_pairs_extremal_cuts_recursive(g, k, &RecursiveConfig::default())
        .map_err(|e| e.to_string())?;
    Ok((it, it_e, rec, rec_e))
}

fn criterion_1(corpus: &[MultiDigraph]) -> Outcome {
    let start = Instant::now();
    let mut runs = 0;
    for (i, g) in corpus.iter().enumerate() {
        for k in 1..=3 {
            let oracle = oracle_values(g, k);
            let it = all_pairs_latest_cuts(g, k)
                .map_err(|e| format!("graph {i} k={k}: {e}"))?
                .values();
            let (rec, _) = all_pairs_extremal_cuts_recursive(g, k, &RecursiveConfig::default())
                .map_err(|e| format!("graph {i} k={k}: {e}"))?;
            let rec = rec.values();
            ensure(it == oracle, || {
                format!(
                    "graph {i} k={k}: iterative differs at {:?}",
                    it.first_difference(&oracle)
                )
            })?;
            ensure(rec == oracle, || {
                format!(
                    "graph {i} k={k}: recursive differs at {:?}",
                    rec.first_difference(&oracle)
                )
            })?;
            runs += 1;
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("{runs} (graph, k) runs identical, {took:.2?}"))
}

fn check_family(
    g: &MultiDigraph,
    s: usize,
    t: usize,
    fam: &CutFamily,
    value: CutValue,
    k: usize,
) -> Result<(), String> {
    for cut in fam.cuts() {
        let reach = g.reach_from(s, cut);
        ensure(!reach[t], || {
            format!("({s},{t}): {cut:?} does not disconnect")
        })?;
        for (i, _) in cut.iter().enumerate() {
            let mut less = cut.clone();
            less.remove(i);
            ensure(g.reach_from(s, &less)[t], || {
                format!("({s},{t}): {cut:?} is not minimal")
            })?;
        }
        ensure(is_minimal_cut(g, s, t, cut), || {
            format!("({s},{t}): {cut:?} rejected by is_minimal_cut")
        })?;
        ensure(cut.len() <= k, || {
            format!("({s},{t}): {cut:?} larger than k")
        })?;
    }
    let reported = match fam.cuts().iter().map(Vec::len).min() {
        Some(v) => CutValue::Exact(v),
        None => CutValue::AboveK,
    };
    ensure(reported == value, || {
        format!("({s},{t}): value {value:?} but smallest cut gives {reported:?}")
    })
}

fn criterion_2(corpus: &[MultiDigraph]) -> Outcome {
    let mut cuts = 0;
    for (i, g) in corpus.iter().enumerate() {
        for k in 1..=3 {
            let (it, it_e, rec, rec_e) = solve_both(g, k).map_err(|e| format!("graph {i}: {e}"))?;
            let oracle = oracle_values(g, k);
            for table in [&it, &it_e, &rec, &rec_e] {
                for (s, t) in pairs(g.n()) {
                    let fam = table
                        .family(s, t)
                        .ok_or_else(|| format!("graph {i}: ({s},{t}) missing"))?;
                    let value = oracle.get(s, t).expect("off-diagonal");
                    check_family(g, s, t, fam, value, k)
                        .map_err(|e| format!("graph {i} k={k} {e}"))?;
                    cuts += fam.len();
                }
            }
        }
    }
    Ok(format!(
        "{cuts} reported cuts disconnect, are minimal and match the value"
    ))
}

fn criterion_3(corpus: &[(MultiDigraph, usize)]) -> Outcome {
    let mut families = 0;
    for (i, (g, k)) in corpus.iter().enumerate() {
        let k = *k;
        let (it, it_e, rec, rec_e) = solve_both(g, k).map_err(|e| format!("instance {i}: {e}"))?;
        for (s, t) in pairs(g.n()) {
            let (early, late) =
                enumerate_extremal_cuts_bruteforce(g, s, t, k).map_err(|e| e.to_string())?;
            let want: BTreeSet<ArcSet> = late.cuts().iter().cloned().collect();
            let want_e: BTreeSet<ArcSet> = early.cuts().iter().cloned().collect();
            let as_set = |f: Option<&CutFamily>| {
                f.map(|f| f.cuts().iter().cloned().collect::<BTreeSet<_>>())
            };
            let direct = latest_cuts_upto_k(g, s, t, k).map_err(|e| e.to_string())?;
            let checks = [
                (
                    "latest_cuts_upto_k",
                    Some(direct.cuts().iter().cloned().collect()),
                    &want,
                ),
                ("iterative", as_set(it.family(s, t)), &want),
                ("recursive", as_set(rec.family(s, t)), &want),
                ("iterative earliest", as_set(it_e.family(s, t)), &want_e),
                ("recursive earliest", as_set(rec_e.family(s, t)), &want_e),
            ];
            for (who, got, want) in checks {
                ensure(got.as_ref() == Some(want), || {
                    format!(
                        "instance {i} k={k} ({s},{t}): {who} gave {got:?}, brute force {want:?}"
                    )
                })?;
            }
            families += 1;
        }
    }
    Ok(format!(
        "{families} pair families equal brute force (latest and earliest)"
    ))
}

fn criterion_4() -> Outcome {
    let tree = gen::binary_tree(3, 5);
    let t = tree.n() - 1;
    let fam = latest_cuts_upto_k(&tree, 0, t, 4).map_err(|e| e.to_string())?;
    let hist = fam.size_histogram();
    ensure(hist[2..] == [1, 2, 5], || {
        format!("root-sink histogram {hist:?}")
    })?;
    let (it, _, rec, _) = solve_both(&tree, 4)?;
    for table in [&it, &rec] {
        ensure(
            table.family(0, t).map(|f| f.size_histogram()) == Some(hist.clone()),
            || "all-pairs algorithms disagree on the root-sink family".into(),
        )?;
    }
    for k in 1..=4 {
        for (s, t) in pairs(tree.n()) {
            let f = latest_cuts_upto_k(&tree, s, t, k).map_err(|e| e.to_string())?;
            let h = f.size_histogram();
            for (j, &c) in h.iter().enumerate().skip(1) {
                ensure(c <= catalan(j - 1), || {
                    format!("k={k} ({s},{t}): {c} latest {j}-cuts")
                })?;
            }
            ensure(f.len() <= 1 << (2 * k), || {
                format!("k={k} ({s},{t}): {} cuts > 4^k", f.len())
            })?;
        }
    }
    Ok(format!(
        "latest cuts by size 2/3/4 = {}/{}/{}, Catalan and 4^k bounds hold",
        hist[2], hist[3], hist[4]
    ))
}

fn encode_all<C: Codeword>(
    inst: &WsInstance,
    code: &SuperimposedCode,
    big_k: usize,
) -> Result<C, String> {
    let mut s = C::empty(code.len(), big_k).map_err(|e| e.to_string())?;
    for fam in inst.families() {
        s = s.union(&encode_family(code, big_k, fam).map_err(|e| e.to_string())?);
    }
    Ok(s)
}

fn criterion_5() -> Outcome {
    let inst = WsInstance::new(
        vec![
            vec![vec![2], vec![1, 5]],
            vec![vec![1, 3], vec![4]],
            vec![vec![4], vec![2, 4]],
        ],
        2,
    )
    .map_err(|e| e.to_string())?;
    let want = vec![vec![2, 4]];
    let code = SuperimposedCode::fast(2, 6).map_err(|e| e.to_string())?;
    let dense: DenseCodeword = encode_all(&inst, &code, 2)?;
    let boxes: BoxCodeword = encode_all(&inst, &code, 2)?;
    let routes = [
        ("pruning", solve_ws_pruning(&inst)),
        (
            "brute force",
            solve_ws_bruteforce(&inst).map_err(|e| e.to_string())?,
        ),
        (
            "decode (dense)",
            decode_witness(&dense, &code, 2).map_err(|e| e.to_string())?,
        ),
        (
            "decode (boxes)",
            decode_witness(&boxes, &code, 2).map_err(|e| e.to_string())?,
        ),
    ];
    for (who, got) in routes {
        ensure(got == want, || format!("{who} gave {got:?}"))?;
    }
    Ok("all routes return {{2,4}}".into())
}

fn subsets_upto(u: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for x in 0..u {
        let grown: Vec<Vec<usize>> = out
            .iter()
            .filter(|s| s.len() < d)
            .map(|s| s.iter().copied().chain([x]).collect())
            .collect();
        out.extend(grown);
    }
    out
}

fn criterion_6() -> Outcome {
    let mut codes = 0;
    for u in 2..=16 {
        for d in 1..=3 {
            let ks = SuperimposedCode::kautz_singleton(d, u).map_err(|e| e.to_string())?;
            let fast = SuperimposedCode::fast(d, u).map_err(|e| e.to_string())?;
            ensure(ks.verify_superimposed(d), || {
                format!("KS u={u} d={d} not superimposed")
            })?;
            ensure(fast.verify_superimposed(d), || {
                format!("fast u={u} d={d} not superimposed")
            })?;
            for x in subsets_upto(u, d) {
                let got = fast
                    .decode(&fast.encode_set(&x))
                    .map_err(|e| format!("u={u} d={d} {x:?}: {e}"))?;
                ensure(got == x, || {
                    format!("u={u} d={d}: {x:?} decoded as {got:?}")
                })?;
            }
            codes += 2;
        }
        let parity = SuperimposedCode::parity(u).map_err(|e| e.to_string())?;
        ensure(parity.verify_superimposed(1), || {
            format!("parity u={u} not 1-superimposed")
        })?;
        codes += 1;
    }
    let mut r = gen::rng(6);
    for i in 0..200 {
        let k = r.gen_range(1..=3);
        let big_k = r.gen_range(1..=3);
        let fams: Vec<Vec<Vec<usize>>> = (0..r.gen_range(1..=4))
            .map(|_| {
                (0..r.gen_range(1..=big_k))
                    .map(|_| {
                        let set: BTreeSet<usize> = (0..r.gen_range(0..=k))
                            .map(|_| r.gen_range(0..10))
                            .collect();
                        set.into_iter().collect()
                    })
                    .collect()
            })
            .collect();
        let inst = WsInstance::new(fams, k).map_err(|e| e.to_string())?;
        let code = SuperimposedCode::fast(k, 10).map_err(|e| e.to_string())?;
        let s: BoxCodeword = encode_all(&inst, &code, big_k)?;
        let a = solve_ws_pruning(&inst);
        let b = solve_ws_bruteforce(&inst).map_err(|e| e.to_string())?;
        let c = decode_witness(&s, &code, k).map_err(|e| e.to_string())?;
        ensure(a == b && b == c, || {
            format!("instance {i}: {a:?} / {b:?} / {c:?}")
        })?;
    }
    Ok(format!(
        "{codes} codes verified exhaustively, 200 instances agree across three routes"
    ))
}

fn netcoding_matches(g: &MultiDigraph, k: usize, seed: u64) -> Result<bool, String> {
    let r = kapmvc(g, k, seed).map_err(|e| e.to_string())?;
    for (s, t) in pairs(g.n()) {
        let want = vertex_connectivity_bounded(g, s, t, k).map_err(|e| e.to_string())?;
        if r.get(s, t) != Some(want) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let (mut runs, mut first_seed_ok) = (0, 0);
    let mut previous_failed = false;
    for seed in 0..100u64 {
        let mut r = gen::rng(9_000 + seed);
        let n = r.gen_range(2..=8);
        let m = r.gen_range(0..=3 * n);
        let g = gen::random_digraph(n, m, 2, seed);
        for k in 1..=3 {
            runs += 1;
            if netcoding_matches(&g, k, seed)? {
                first_seed_ok += 1;
                previous_failed = false;
                continue;
            }
            ensure(!previous_failed, || {
                format!("graph {seed} k={k}: two consecutive mismatches")
            })?;
            previous_failed = true;
            ensure(netcoding_matches(&g, k, seed + 1_000_003)?, || {
                format!("graph {seed} k={k}: mismatch survives a reseed")
            })?;
        }
    }
    let took = start.elapsed();
    ensure(first_seed_ok * 100 >= runs * 99, || {
        format!("only {first_seed_ok}/{runs} matched at first seed")
    })?;
    ensure(took < Duration::from_secs(30), || format!("took {took:?}"))?;
    Ok(format!(
        "{first_seed_ok}/{runs} runs matched at first seed, {took:.2?}"
    ))
}

fn criterion_8() -> Outcome {
    let (mut yes, mut edges) = (0, 0);
    for seed in 0..100u64 {
        let n = 1 + (seed % 5) as usize;
        let g4 = gen::random_four_partite(n, 0.5, seed);
        let truth = find_4clique_bruteforce(&g4).is_some();
        ensure(truth == has_4clique(&g4), || {
            "brute-force helpers disagree".into()
        })?;
        let unbounded = decide_4clique_unbounded(&g4, &flow_solver).map_err(|e| e.to_string())?;
        ensure(unbounded == truth, || {
            format!("graph {seed}: unbounded says {unbounded}, brute force {truth}")
        })?;
        for k in 1..=n {
            let bounded =
                decide_4clique_bounded(&g4, k, &flow_solver).map_err(|e| e.to_string())?;
            ensure(bounded == truth, || {
                format!("graph {seed} k={k}: bounded says {bounded}, brute force {truth}")
            })?;
        }
        for e in edge_reports(&g4, &flow_solver).map_err(|e| e.to_string())? {
            let in_clique = g4.edge_in_clique(e.a, e.d);
            let ok = if in_clique {
                e.nc > e.estimate
            } else {
                e.nc == e.estimate
            };
            ensure(ok, || {
                format!(
                    "graph {seed} edge ({},{}): NC {} vs estimate {}",
                    e.a, e.d, e.nc, e.estimate
                )
            })?;
            edges += 1;
        }
        yes += truth as usize;
    }
    Ok(format!(
        "100 graphs ({yes} with a 4-clique) decided correctly, {edges} edge estimates checked"
    ))
}

fn closure(g: &MultiDigraph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut r = vec![vec![false; n]; n];
    for a in g.arcs() {
        r[a.tail][a.head] = true;
    }
    for m in 0..n {
        for i in 0..n {
            if r[i][m] {
                let via = r[m].clone();
                for (x, y) in r[i].iter_mut().zip(via) {
                    *x |= y;
                }
            }
        }
    }
    r
}

/// With k = 1 the value matrix restricted to cap 0 is exactly reachability.
fn criterion_9(corpus: &[MultiDigraph], small: &[(MultiDigraph, usize)]) -> Outcome {
    let mut graphs = 0;
    for g in corpus.iter().chain(small.iter().map(|(g, _)| g)) {
        let reach = closure(g);
        let (it, _, rec, _) = solve_both(g, 1)?;
        for (who, vm) in [
            ("oracle", oracle_values(g, 1)),
            ("iterative", it.values()),
            ("recursive", rec.values()),
        ] {
            for (s, t) in pairs(g.n()) {
                let v = vm.get(s, t).expect("off-diagonal");
                ensure((v != CutValue::Exact(0)) == reach[s][t], || {
                    format!("{who} ({s},{t}): {v:?} vs reach {}", reach[s][t])
                })?;
                ensure(
                    vm.restrict(0).get(s, t)
                        == Some(if reach[s][t] {
                            CutValue::AboveK
                        } else {
                            CutValue::Exact(0)
                        }),
                    || format!("{who} ({s},{t}): restriction disagrees"),
                )?;
            }
        }
        graphs += 1;
    }
    Ok(format!("{graphs} graphs agree with transitive closure"))
}

fn criterion_10() -> Outcome {
    let g = gen::random_dag(200, 800, 3, 10);
    ensure(g.n() == 200 && g.m() == 800, || {
        format!("generator gave n={} m={}", g.n(), g.m())
    })?;
    let start = Instant::now();
    let a = all_pairs_latest_cuts(&g, 2).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let b = all_pairs_latest_cuts(&g, 2).map_err(|e| e.to_string())?;
    ensure(a == b, || "repeated runs differ".into())?;
    ensure(took < Duration::from_secs(10), || format!("took {took:?}"))?;
    Ok(format!("n=200 m=800 k=2 in {took:.2?}, repeat identical"))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let corpus = dag_corpus();
    let small = small_corpus();
    let criteria: Vec<Criterion<'_>> = vec![
        (
            "oracle equivalence of values",
            Box::new(|| criterion_1(&corpus)),
        ),
        ("witness validity", Box::new(|| criterion_2(&corpus))),
        ("latest-family exactness", Box::new(|| criterion_3(&small))),
        (
            "Catalan tightness on the tree gadget",
            Box::new(criterion_4),
        ),
        (
            "six-element witness-superset fixture",
            Box::new(criterion_5),
        ),
        ("superimposed code soundness", Box::new(criterion_6)),
        ("network coding vertex connectivity", Box::new(criterion_7)),
        ("4-clique reductions", Box::new(criterion_8)),
        (
            "k=1 equals reachability",
            Box::new(|| criterion_9(&corpus, &small)),
        ),
        ("scale sanity", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
