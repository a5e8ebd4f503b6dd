//! Reference computations: augmenting-path max-flow, extremal min-cuts,
//! brute-force cut enumeration and vertex connectivity.

use std::collections::VecDeque;

use crate::clique::FourPartiteGraph;
use crate::cuts::{ArcSet, CutFamily, CutKind};
use crate::error::{Error, Result};
use crate::graph::{split_vertices, ArcId, MultiDigraph, SplitGraph, Vertex};
use crate::table::{CutValue, ValueMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub value: usize,
    /// Vertices with a residual path to `t`.
    pub residual_reach_t: Vec<bool>,
    /// Arcs carrying flow, sorted by id.
    pub saturated: Vec<ArcId>,
}

fn check_pair(g: &MultiDigraph, s: Vertex, t: Vertex) -> Result<()> {
    if s >= g.n() || t >= g.n() {
        return Err(Error::InvalidArgument(format!(
            "vertex out of range 0..{}",
            g.n()
        )));
    }
    if s == t {
        return Err(Error::InvalidArgument("source equals target".into()));
    }
    Ok(())
}

/// Shortest augmenting paths, ties broken by lowest arc id, stopping once the
/// flow reaches `bound`.
pub fn max_flow_bounded(
    g: &MultiDigraph,
    s: Vertex,
    t: Vertex,
    bound: usize,
) -> Result<FlowResult> {
    check_pair(g, s, t)?;
    let arcs = g.arcs();
    // Incidence per vertex in arc-id order: (position, traversed forward).
    let mut inc: Vec<Vec<(usize, bool)>> = vec![Vec::new(); g.n()];
    for (pos, a) in arcs.iter().enumerate() {
        inc[a.tail].push((pos, true));
        inc[a.head].push((pos, false));
    }
    let mut flow = vec![false; arcs.len()];
    let mut value = 0;
    let mut parent: Vec<Option<(usize, bool)>> = vec![None; g.n()];
    while value < bound {
        parent.iter_mut().for_each(|p| *p = None);
        let mut seen = vec![false; g.n()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        'bfs: while let Some(u) = queue.pop_front() {
            for &(pos, fwd) in &inc[u] {
                let a = &arcs[pos];
                let (open, next) = if fwd {
                    (!flow[pos], a.head)
                } else {
                    (flow[pos], a.tail)
                };
                if open && !seen[next] {
                    seen[next] = true;
                    parent[next] = Some((pos, fwd));
                    if next == t {
                        break 'bfs;
                    }
                    queue.push_back(next);
                }
            }
        }
        if !seen[t] {
            break;
        }
        let mut v = t;
        while v != s {
            let (pos, fwd) = parent[v].expect("path recorded");
            flow[pos] = fwd;
            v = if fwd { arcs[pos].tail } else { arcs[pos].head };
        }
        value += 1;
    }

    let mut reach = vec![false; g.n()];
    reach[t] = true;
    let mut stack = vec![t];
    while let Some(y) = stack.pop() {
        for &(pos, fwd) in &inc[y] {
            // Residual arcs entering y: unsaturated (x, y), or saturated (y, x) reversed.
            let (open, x) = if fwd {
                (flow[pos], arcs[pos].head)
            } else {
                (!flow[pos], arcs[pos].tail)
            };
            if open && !reach[x] {
                reach[x] = true;
                stack.push(x);
            }
        }
    }
    let saturated = arcs
        .iter()
        .zip(&flow)
        .filter(|(_, &f)| f)
        .map(|(a, _)| a.id)
        .collect();
    Ok(FlowResult {
        value,
        residual_reach_t: reach,
        saturated,
    })
}

/// The unique min-cut whose target side is smallest.
pub fn latest_min_cut(g: &MultiDigraph, s: Vertex, t: Vertex) -> Result<ArcSet> {
    let f = max_flow_bounded(g, s, t, usize::MAX)?;
    let tside = &f.residual_reach_t;
    Ok(g.arcs()
        .iter()
        .filter(|a| !tside[a.tail] && tside[a.head])
        .map(|a| a.id)
        .collect())
}

/// The unique min-cut whose source side is smallest.
pub fn earliest_min_cut(g: &MultiDigraph, s: Vertex, t: Vertex) -> Result<ArcSet> {
    latest_min_cut(&g.reverse(), t, s)
}

/// Minimum cut size, capped: `Exact(v)` when `v <= k`.
pub fn min_cut_value(g: &MultiDigraph, s: Vertex, t: Vertex, k: usize) -> Result<CutValue> {
    let v = max_flow_bounded(g, s, t, k + 1)?.value;
    Ok(if v <= k {
        CutValue::Exact(v)
    } else {
        CutValue::AboveK
    })
}

/// k-capped min-cut values for every ordered pair.
pub fn oracle_values(g: &MultiDigraph, k: usize) -> ValueMatrix {
    let n = g.n();
    let mut vm = ValueMatrix::new(n, k);
    for s in 0..n {
        for t in 0..n {
            if s != t {
                vm.set(s, t, min_cut_value(g, s, t, k).expect("valid pair"));
            }
        }
    }
    vm
}

pub const BRUTE_FORCE_MAX_ARCS: usize = 20;

/// Every minimal s-t cut of size at most `k`, by subset enumeration.
pub fn minimal_cuts_bruteforce(
    g: &MultiDigraph,
    s: Vertex,
    t: Vertex,
    k: usize,
) -> Result<Vec<ArcSet>> {
    check_pair(g, s, t)?;
    if g.m() > BRUTE_FORCE_MAX_ARCS {
        return Err(Error::TooLarge(format!(
            "{} arcs > {}",
            g.m(),
            BRUTE_FORCE_MAX_ARCS
        )));
    }
    let ids: Vec<ArcId> = g.arcs().iter().map(|a| a.id).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    subsets_upto(&ids, 0, k, &mut current, &mut |set| {
        if crate::cuts::is_minimal_cut(g, s, t, set) {
            out.push(set.to_vec());
        }
    });
    Ok(out)
}

fn subsets_upto(
    ids: &[ArcId],
    from: usize,
    k: usize,
    current: &mut Vec<ArcId>,
    visit: &mut impl FnMut(&[ArcId]),
) {
    visit(current);
    if current.len() == k {
        return;
    }
    for i in from..ids.len() {
        current.push(ids[i]);
        subsets_upto(ids, i + 1, k, current, visit);
        current.pop();
    }
}

/// Earliest and latest <=k-cut families by exhaustive enumeration.
pub fn enumerate_extremal_cuts_bruteforce(
    g: &MultiDigraph,
    s: Vertex,
    t: Vertex,
    k: usize,
) -> Result<(CutFamily, CutFamily)> {
    let cuts = minimal_cuts_bruteforce(g, s, t, k)?;
    let with_sides: Vec<(ArcSet, Vec<bool>, Vec<bool>)> = cuts
        .into_iter()
        .map(|c| {
            let sside = g.reach_from(s, &c);
            let tside = g.reach_to(t, &c);
            (c, sside, tside)
        })
        .collect();
    let pick = |use_t: bool| {
        let side = |i: usize| {
            if use_t {
                &with_sides[i].2
            } else {
                &with_sides[i].1
            }
        };
        let keep: Vec<(ArcSet, Vec<bool>)> = (0..with_sides.len())
            .filter(|&i| {
                !(0..with_sides.len()).any(|j| {
                    with_sides[j].0.len() <= with_sides[i].0.len()
                        && proper_subset(side(j), side(i))
                })
            })
            .map(|i| (with_sides[i].0.clone(), side(i).clone()))
            .collect();
        keep
    };
    let earliest = CutFamily::from_sides(CutKind::Earliest, k, pick(false));
    let latest = CutFamily::from_sides(CutKind::Latest, k, pick(true));
    Ok((earliest, latest))
}

pub(crate) fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

pub(crate) fn proper_subset(a: &[bool], b: &[bool]) -> bool {
    subset(a, b) && a != b
}

/// `min(k, number of internally vertex-disjoint s-t paths)`; every direct
/// arc `s -> t` counts as its own path.
pub fn vertex_connectivity_bounded(
    g: &MultiDigraph,
    s: Vertex,
    t: Vertex,
    k: usize,
) -> Result<usize> {
    check_pair(g, s, t)?;
    let sg = split_vertices(g);
    Ok(max_flow_bounded(&sg.graph, SplitGraph::v_out(s), SplitGraph::v_in(t), k)?.value)
}

/// First 4-clique `(a, b, c, d)` in lexicographic order.
pub fn find_4clique_bruteforce(g: &FourPartiteGraph) -> Option<[usize; 4]> {
    let n = g.n();
    for a in 0..n {
        for b in 0..n {
            if !g.ab(a, b) {
                continue;
            }
            for c in 0..n {
                if !g.bc(b, c) || !g.ac(a, c) {
                    continue;
                }
                for d in 0..n {
                    if g.cd(c, d) && g.bd(b, d) && g.ad(a, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}
