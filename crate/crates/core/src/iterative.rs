//! All-pairs latest <=k-cuts on a DAG by dynamic programming over a reverse
//! topological order.

use crate::cuts::{is_minimal_cut, CutFamily, CutKind};
use crate::error::{Error, Result};
use crate::graph::{topological_order, ArcId, MultiDigraph, Vertex};
use crate::table::ApmcTable;
use crate::witness::{filter_latest, solve_ws_pruning, OrderedFamily, WsInstance};

/// Latest <=k s-t cuts given a cut `cover` that every latest cut is
/// later-or-equal to. Each arc `(x, y)` of `cover` contributes the family
/// `{(x, y)}` plus the latest y-t cuts returned by `latest_to_t(y)`; witness
/// sets of those families that are minimal cuts are then filtered to the
/// latest ones.
pub fn latest_from_cover<'a>(
    g: &MultiDigraph,
    s: Vertex,
    t: Vertex,
    cover: &[ArcId],
    k: usize,
    latest_to_t: impl Fn(Vertex) -> Option<&'a CutFamily>,
) -> Result<CutFamily> {
    let mut families = Vec::with_capacity(cover.len());
    for &id in cover {
        let arc = g
            .arc(id)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown arc {id}")))?;
        let rest = if arc.head == t {
            None
        } else {
            Some(latest_to_t(arc.head).ok_or_else(|| {
                Error::InvalidArgument(format!("no family for pair ({}, {t})", arc.head))
            })?)
        };
        families.push(OrderedFamily::singleton_then(id, rest));
    }
    let inst = WsInstance::new(families.iter().map(|f| f.members.clone()).collect(), k)?;
    let candidates: Vec<_> = solve_ws_pruning(&inst)
        .into_iter()
        .filter(|w| is_minimal_cut(g, s, t, w))
        .collect();
    if candidates.is_empty() {
        return Ok(CutFamily::above_k(CutKind::Latest, k));
    }
    filter_latest(&candidates, &families, k)
}

/// Latest <=k-cut families for every ordered pair of a DAG.
pub fn all_pairs_latest_cuts(g: &MultiDigraph, k: usize) -> Result<ApmcTable> {
    let order = topological_order(g)?;
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut table = ApmcTable::new(n, k);
    for &s in order.iter().rev() {
        let out: Vec<ArcId> = g.out_arcs(s).map(|a| a.id).collect();
        for t in 0..n {
            if t == s {
                continue;
            }
            let fam = if pos[t] < pos[s] {
                CutFamily::unreachable(CutKind::Latest, k)
            } else {
                latest_from_cover(g, s, t, &out, k, |y| table.family(y, t))?
            };
            table.set_family(s, t, fam);
        }
    }
    Ok(table)
}

/// Earliest <=k-cut families for every ordered pair, from the latest
/// families of the reversed graph.
pub fn all_pairs_earliest_cuts(g: &MultiDigraph, k: usize) -> Result<ApmcTable> {
    let rev = all_pairs_latest_cuts(&g.reverse(), k)?;
    Ok(transpose_as(&rev, CutKind::Earliest))
}

pub(crate) fn transpose_as(table: &ApmcTable, kind: CutKind) -> ApmcTable {
    let mut out = ApmcTable::new(table.n(), table.k());
    for s in 0..table.n() {
        for t in 0..table.n() {
            if let Some(f) = table.family(t, s) {
                out.set_family(s, t, f.clone().with_kind(kind));
            }
        }
    }
    out
}

/// Checks every reported cut: minimal, separating, of the reported value.
pub fn verify_witnesses(g: &MultiDigraph, table: &ApmcTable) -> std::result::Result<(), String> {
    for s in 0..g.n() {
        for t in 0..g.n() {
            let Some(fam) = table.family(s, t) else {
                continue;
            };
            for c in fam.cuts() {
                if c.len() > table.k() {
                    return Err(format!("({s},{t}): cut {c:?} exceeds k"));
                }
                if !is_minimal_cut(g, s, t, c) {
                    return Err(format!("({s},{t}): {c:?} is not a minimal cut"));
                }
            }
        }
    }
    Ok(())
}
