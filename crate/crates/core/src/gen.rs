//! Seeded instance generators. All randomness comes from ChaCha8 seeded with
//! a `u64`, so outputs are identical across platforms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clique::FourPartiteGraph;
use crate::graph::MultiDigraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complete binary tree of the given depth rooted at 0 (heap numbering), plus
/// a sink `2^(depth+1) - 1` fed by `mult` parallel arcs from every leaf.
pub fn binary_tree(depth: u32, mult: usize) -> MultiDigraph {
    let nodes = (1usize << (depth + 1)) - 1;
    let internal = (1usize << depth) - 1;
    let t = nodes;
    let mut pairs = Vec::new();
    for i in 0..internal {
        pairs.push((i, 2 * i + 1));
        pairs.push((i, 2 * i + 2));
    }
    for leaf in internal..nodes {
        pairs.extend(std::iter::repeat_n((leaf, t), mult));
    }
    MultiDigraph::new(nodes + 1, &pairs).expect("tree is valid")
}

fn random_arcs(
    n: usize,
    m: usize,
    max_mult: usize,
    rng: &mut ChaCha8Rng,
    acyclic: bool,
) -> Vec<(usize, usize)> {
    if n < 2 || max_mult == 0 {
        return Vec::new();
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut mult = vec![0usize; n * n];
    let mut pairs = Vec::with_capacity(m);
    let mut attempts = 0;
    while pairs.len() < m && attempts < 50 * m + 50 {
        attempts += 1;
        let (mut i, mut j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        if acyclic && i > j {
            std::mem::swap(&mut i, &mut j);
        }
        let (u, v) = (perm[i], perm[j]);
        if mult[u * n + v] < max_mult {
            mult[u * n + v] += 1;
            pairs.push((u, v));
        }
    }
    pairs
}

/// DAG with up to `m` arcs and at most `max_mult` parallel copies per pair,
/// over a random hidden topological order.
pub fn random_dag(n: usize, m: usize, max_mult: usize, seed: u64) -> MultiDigraph {
    let pairs = random_arcs(n, m, max_mult, &mut rng(seed), true);
    MultiDigraph::new(n, &pairs).expect("generated graph is valid")
}

/// Digraph (cycles allowed) with up to `m` arcs and bounded multiplicity.
pub fn random_digraph(n: usize, m: usize, max_mult: usize, seed: u64) -> MultiDigraph {
    let pairs = random_arcs(n, m, max_mult, &mut rng(seed), false);
    MultiDigraph::new(n, &pairs).expect("generated graph is valid")
}

/// Four-partite graph with each of the six side pairs' edges present
/// independently with probability `p`.
pub fn random_four_partite(n: usize, p: f64, seed: u64) -> FourPartiteGraph {
    let mut r = rng(seed);
    let mut g = FourPartiteGraph::empty(n);
    for pair in crate::clique::SidePair::ALL {
        for x in 0..n {
            for y in 0..n {
                if r.gen_bool(p) {
                    g.set(pair, x, y, true);
                }
            }
        }
    }
    g
}
