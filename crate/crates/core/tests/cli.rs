use std::path::{Path, PathBuf};

use apmc::cli::{parse_witnesses, run, EXIT_DIVERGENCE, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE};
use apmc::clique::{has_4clique, FourPartiteGraph};
use apmc::gen;
use apmc::graph::{topological_order, MultiDigraph};
use apmc::iterative::all_pairs_latest_cuts;

const PATH: &str = "p 3 2\na 0 1\na 1 2\n";
const DIAMOND: &str = "p 4 4\na 0 1\na 0 2\na 1 3\na 2 3\n";

fn apmc(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        std::iter::once("apmc").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn file(dir: &Path, name: &str, text: &str) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn values_examples() {
    let dir = tempfile::tempdir().unwrap();
    let path = file(dir.path(), "path", PATH);
    let (code, out, _) = apmc(&["values", "-i", &path, "-k", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "-\t1\t1\n0\t-\t1\n0\t0\t-\n");

    let diamond = file(dir.path(), "diamond", DIAMOND);
    let (_, out, _) = apmc(&["values", "-i", &diamond, "-k", "1"]);
    assert_eq!(out.lines().next().unwrap(), "-\t1\t1\t>1");

    let (code, out, _) = apmc(&["values", "-i", &diamond, "-k", "2", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["values"][0], serde_json::json!([null, 1, 1, 2]));
    assert_eq!(v["k"], 2);
}

#[test]
fn all_algorithms_print_identical_matrices() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..8 {
        let g = file(dir.path(), "g", &gen::random_dag(7, 14, 3, seed).to_text());
        for k in ["1", "2", "3"] {
            for vc in [false, true] {
                let mut outs = Vec::new();
                for alg in ["oracle", "iterative", "recursive", "netcoding"] {
                    let mut args = vec!["values", "-i", &g, "-k", k, "-a", alg, "--jobs", "1"];
                    if vc {
                        args.push("--vertex-capacities");
                    }
                    let (code, out, err) = apmc(&args);
                    assert_eq!(code, EXIT_OK, "{alg}: {err}");
                    outs.push(out);
                }
                assert!(
                    outs.windows(2).all(|w| w[0] == w[1]),
                    "seed {seed} k={k} vc={vc}: {outs:#?}"
                );
            }
        }
    }
}

#[test]
fn shortcut_commands_match_values() {
    let dir = tempfile::tempdir().unwrap();
    let g = file(dir.path(), "g", &gen::random_dag(6, 12, 2, 3).to_text());
    let base = apmc(&["values", "-i", &g, "-k", "2"]).1;
    assert_eq!(apmc(&["iterative", "-i", &g, "-k", "2"]).1, base);
    assert_eq!(
        apmc(&["recursive", "-i", &g, "-k", "2", "--max-K", "3"]).1,
        base
    );
    let w = apmc(&["witnesses", "-i", &g, "-k", "2", "-a", "recursive"]).1;
    assert_eq!(
        apmc(&["recursive", "-i", &g, "-k", "2", "--witnesses"]).1,
        w
    );
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cyc = file(dir.path(), "cyc", "p 3 3\na 0 1\na 1 2\na 2 0\n");
    for alg in ["iterative", "recursive"] {
        assert_eq!(
            apmc(&["values", "-i", &cyc, "-a", alg]).0,
            EXIT_PRECONDITION
        );
    }
    assert_eq!(apmc(&["values", "-i", &cyc, "-a", "netcoding"]).0, EXIT_OK);
    let bad = file(dir.path(), "bad", "p 2 1\na 0 x\n");
    let (code, _, err) = apmc(&["values", "-i", &bad]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(apmc(&["values", "-i", "/no/such/file"]).0, EXIT_USAGE);
    assert_eq!(apmc(&["bogus"]).0, EXIT_USAGE);
    assert_eq!(apmc(&["--help"]).0, EXIT_OK);
    assert_eq!(apmc(&["--version"]).0, EXIT_OK);
    let path = file(dir.path(), "path", PATH);
    assert_eq!(
        apmc(&["witnesses", "-i", &path, "-a", "netcoding"]).0,
        EXIT_USAGE
    );
}

#[test]
fn witness_examples_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = file(dir.path(), "path", PATH);
    let (code, out, _) = apmc(&["witnesses", "-i", &path, "-k", "2"]);
    assert_eq!(code, EXIT_OK);
    let w = parse_witnesses(&out).unwrap();
    assert_eq!(w[&(0, 2)], vec![vec![1]]);
    assert_eq!(w[&(2, 0)], vec![Vec::<usize>::new()]);

    let diamond = file(dir.path(), "diamond", DIAMOND);
    let w = parse_witnesses(&apmc(&["witnesses", "-i", &diamond, "-k", "2"]).1).unwrap();
    assert_eq!(w[&(0, 3)], vec![vec![2, 3]]);
    let w = parse_witnesses(&apmc(&["witnesses", "-i", &diamond, "-k", "1"]).1).unwrap();
    assert!(w[&(0, 3)].is_empty());
    let e =
        parse_witnesses(&apmc(&["witnesses", "-i", &diamond, "-k", "2", "--kind", "earliest"]).1)
            .unwrap();
    assert_eq!(e[&(0, 3)], vec![vec![0, 1]]);

    for seed in 0..10 {
        let g = gen::random_dag(7, 16, 3, seed);
        let table = all_pairs_latest_cuts(&g, 2).unwrap();
        let f = file(dir.path(), "g", &g.to_text());
        for alg in ["iterative", "recursive", "oracle"] {
            let parsed =
                parse_witnesses(&apmc(&["witnesses", "-i", &f, "-k", "2", "-a", alg]).1).unwrap();
            assert_eq!(parsed.len(), g.n() * (g.n() - 1));
            for (&(s, t), cuts) in &parsed {
                assert_eq!(
                    table.family(s, t).unwrap().cuts(),
                    cuts.as_slice(),
                    "{alg} ({s},{t})"
                );
            }
        }
    }
}

#[test]
fn generators() {
    let (code, tree, _) = apmc(&["gen", "--family", "tree", "--depth", "3", "--mult", "5"]);
    assert_eq!(code, EXIT_OK);
    let g = MultiDigraph::parse(&tree).unwrap();
    assert_eq!((g.n(), g.m()), (16, 8 * 5 + 14));

    let args = [
        "gen",
        "--family",
        "random-dag",
        "--n",
        "12",
        "--m",
        "30",
        "--max-mult",
        "2",
        "--seed",
        "9",
    ];
    let (_, a, _) = apmc(&args);
    assert_eq!(a, apmc(&args).1);
    assert!(topological_order(&MultiDigraph::parse(&a).unwrap()).is_ok());

    let (_, c, _) = apmc(&[
        "gen", "--family", "clique4", "--n", "4", "--p", "0.5", "--seed", "2",
    ]);
    assert_eq!(FourPartiteGraph::parse(&c).unwrap().n(), 4);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.txt");
    let out = out.to_str().unwrap();
    assert_eq!(
        apmc(&["gen", "--family", "random-digraph", "--n", "5", "-o", out]).0,
        EXIT_OK
    );
    assert!(MultiDigraph::parse(&std::fs::read_to_string(out).unwrap()).is_ok());

    assert_eq!(
        apmc(&["gen", "--family", "tree", "--mult", "0"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        apmc(&["gen", "--family", "random-dag", "--n", "0"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        apmc(&["gen", "--family", "clique4", "--p", "1.5"]).0,
        EXIT_USAGE
    );
    assert_eq!(apmc(&["gen", "--family", "nope"]).0, EXIT_USAGE);
}

#[test]
fn verify_harness() {
    let (code, out, err) = apmc(&["verify"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("checks passed"));
    let (code, _, err) = apmc(&["verify", "--seeds", "1", "--inject-fault"]);
    assert_eq!(code, EXIT_DIVERGENCE);
    assert!(err.contains("iterative vs oracle"), "{err}");

    let dir = tempfile::tempdir().unwrap();
    let empty = file(dir.path(), "empty", "p 0 0\n");
    assert_eq!(apmc(&["verify", "-i", &empty]).0, EXIT_OK);
    let cyc = file(dir.path(), "cyc", "p 3 3\na 0 1\na 1 2\na 2 0\n");
    assert_eq!(apmc(&["verify", "-i", &cyc, "-k", "2"]).0, EXIT_OK);
}

#[test]
fn netcoding_command() {
    let dir = tempfile::tempdir().unwrap();
    let diamond = file(dir.path(), "diamond", DIAMOND);
    let (code, out, _) = apmc(&[
        "netcoding",
        "-i",
        &diamond,
        "-k",
        "3",
        "--sources",
        "0",
        "--sinks",
        "3,1",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("0\t3\t2\n"), "{out}");
    assert!(out.contains("0\t1\t1\n"), "{out}");
    let (_, json, _) = apmc(&["netcoding", "-i", &diamond, "-k", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["k"], 3);
}

#[test]
fn clique_commands() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..12 {
        let g4 = gen::random_four_partite(3, 0.5, seed);
        let f = file(dir.path(), "g4", &g4.to_text());
        let want = if has_4clique(&g4) { "yes\n" } else { "no\n" };
        assert_eq!(apmc(&["decide-clique", "-i", &f]).1, want);
        assert_eq!(
            apmc(&["decide-clique", "-i", &f, "--mode", "bounded", "-k", "2"]).1,
            want
        );
        assert_eq!(
            apmc(&[
                "decide-clique",
                "-i",
                &f,
                "--solver",
                "netcoding",
                "--seed",
                &seed.to_string()
            ])
            .1,
            want
        );
    }
    let g4 = gen::random_four_partite(4, 0.5, 1);
    let f = file(dir.path(), "g4", &g4.to_text());
    let (code, h, _) = apmc(&["reduce-clique", "-i", &f]);
    assert_eq!(code, EXIT_OK);
    let h = MultiDigraph::parse(&h).unwrap();
    assert_eq!(h.n(), 16);
    assert!(h.is_acyclic());
    let (code, hb, _) = apmc(&[
        "reduce-clique",
        "-i",
        &f,
        "--mode",
        "bounded",
        "-k",
        "2",
        "--block",
        "1,0",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(MultiDigraph::parse(&hb).unwrap().is_acyclic());
    assert_eq!(
        apmc(&[
            "reduce-clique",
            "-i",
            &f,
            "--mode",
            "bounded",
            "-k",
            "2",
            "--block",
            "5,0"
        ])
        .0,
        EXIT_USAGE
    );
}
