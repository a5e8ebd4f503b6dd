//! Directed multigraphs with stable arc identities.
//!
//! Arc ids survive every transformation in this module (reversal, arc
//! filtering, induced subgraphs, contraction), so a cut computed on a derived
//! graph can be read back on the original one.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type ArcId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub id: ArcId,
    pub tail: Vertex,
    pub head: Vertex,
}

/// Unit-capacity directed multigraph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiDigraph {
    n: usize,
    arcs: Vec<Arc>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl MultiDigraph {
    /// Builds a graph whose arc ids are the positions in `pairs`.
    pub fn new(n: usize, pairs: &[(Vertex, Vertex)]) -> Result<Self> {
        let arcs = pairs
            .iter()
            .enumerate()
            .map(|(id, &(tail, head))| Arc { id, tail, head })
            .collect();
        Self::from_arcs(n, arcs)
    }

    /// Builds a graph from arcs with explicit, distinct ids.
    pub fn from_arcs(n: usize, mut arcs: Vec<Arc>) -> Result<Self> {
        arcs.sort_by_key(|a| a.id);
        for w in arcs.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::InvalidGraph(format!("duplicate arc id {}", w[0].id)));
            }
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (pos, a) in arcs.iter().enumerate() {
            if a.tail >= n || a.head >= n {
                return Err(Error::InvalidGraph(format!(
                    "arc {} ({} -> {}) has an endpoint outside 0..{}",
                    a.id, a.tail, a.head, n
                )));
            }
            if a.tail == a.head {
                return Err(Error::InvalidGraph(format!(
                    "self-loop on vertex {}",
                    a.tail
                )));
            }
            out_adj[a.tail].push(pos);
            in_adj[a.head].push(pos);
        }
        Ok(MultiDigraph {
            n,
            arcs,
            out_adj,
            in_adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs sorted by id.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// One past the largest arc id (0 for an arcless graph).
    pub fn id_bound(&self) -> usize {
        self.arcs.last().map_or(0, |a| a.id + 1)
    }

    pub fn arc(&self, id: ArcId) -> Option<&Arc> {
        self.arcs
            .binary_search_by_key(&id, |a| a.id)
            .ok()
            .map(|pos| &self.arcs[pos])
    }

    /// Out-arcs of `v` in increasing id order.
    pub fn out_arcs(&self, v: Vertex) -> impl Iterator<Item = &Arc> + '_ {
        self.out_adj[v].iter().map(move |&p| &self.arcs[p])
    }

    /// In-arcs of `v` in increasing id order.
    pub fn in_arcs(&self, v: Vertex) -> impl Iterator<Item = &Arc> + '_ {
        self.in_adj[v].iter().map(move |&p| &self.arcs[p])
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len()
    }

    /// Distinct out-neighbours, sorted.
    pub fn out_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut r: Vec<Vertex> = self.out_arcs(v).map(|a| a.head).collect();
        r.sort_unstable();
        r.dedup();
        r
    }

    /// Distinct in-neighbours, sorted.
    pub fn in_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut r: Vec<Vertex> = self.in_arcs(v).map(|a| a.tail).collect();
        r.sort_unstable();
        r.dedup();
        r
    }

    /// Ids of all arcs from `u` to `v`.
    pub fn arcs_between(&self, u: Vertex, v: Vertex) -> Vec<ArcId> {
        self.out_arcs(u)
            .filter(|a| a.head == v)
            .map(|a| a.id)
            .collect()
    }

    pub fn reverse(&self) -> MultiDigraph {
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc {
                id: a.id,
                tail: a.head,
                head: a.tail,
            })
            .collect();
        MultiDigraph::from_arcs(self.n, arcs).expect("reversal preserves validity")
    }

    /// Same vertex set, keeping only arcs for which `keep` holds.
    pub fn filter_arcs(&self, mut keep: impl FnMut(&Arc) -> bool) -> MultiDigraph {
        let arcs = self.arcs.iter().copied().filter(|a| keep(a)).collect();
        MultiDigraph::from_arcs(self.n, arcs).expect("subgraph preserves validity")
    }

    /// Arcs with both endpoints in `vertices`. Vertex numbering is unchanged;
    /// vertices outside the set become isolated.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> MultiDigraph {
        let mut inside = vec![false; self.n];
        for &v in vertices {
            inside[v] = true;
        }
        self.filter_arcs(|a| inside[a.tail] && inside[a.head])
    }

    /// Merges every vertex with `merged[v]` into `into`. Merged vertices stay
    /// in the numbering but become isolated; arcs that would turn into
    /// self-loops are dropped.
    pub fn contract(&self, merged: &[bool], into: Vertex) -> MultiDigraph {
        let map = |v: Vertex| if merged[v] { into } else { v };
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc {
                id: a.id,
                tail: map(a.tail),
                head: map(a.head),
            })
            .filter(|a| a.tail != a.head)
            .collect();
        MultiDigraph::from_arcs(self.n, arcs).expect("contraction preserves validity")
    }

    /// Vertices reachable from `s` without using arcs in `removed` (sorted).
    pub fn reach_from(&self, s: Vertex, removed: &[ArcId]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for a in self.out_arcs(u) {
                if !seen[a.head] && removed.binary_search(&a.id).is_err() {
                    seen[a.head] = true;
                    stack.push(a.head);
                }
            }
        }
        seen
    }

    /// Vertices that reach `t` without using arcs in `removed` (sorted).
    pub fn reach_to(&self, t: Vertex, removed: &[ArcId]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[t] = true;
        let mut stack = vec![t];
        while let Some(u) = stack.pop() {
            for a in self.in_arcs(u) {
                if !seen[a.tail] && removed.binary_search(&a.id).is_err() {
                    seen[a.tail] = true;
                    stack.push(a.tail);
                }
            }
        }
        seen
    }

    pub fn is_acyclic(&self) -> bool {
        topological_order(self).is_ok()
    }

    /// Parses the line-oriented text format:
    ///
    /// ```text
    /// c optional comment
    /// p <n> <m>
    /// a <tail> <head>     (m times; arc ids follow line order)
    /// ```
    pub fn parse(text: &str) -> Result<MultiDigraph> {
        let mut header: Option<(usize, usize)> = None;
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |msg: &str| Error::Parse {
                line,
                msg: msg.to_string(),
            };
            let mut tok = raw.split_whitespace();
            let Some(kind) = tok.next() else { continue };
            let mut nums = || -> Result<Vec<usize>> {
                tok.by_ref()
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|_| err(&format!("bad integer `{t}`")))
                    })
                    .collect()
            };
            match kind {
                "c" => {}
                "p" => {
                    if header.is_some() {
                        return Err(err("duplicate `p` line"));
                    }
                    match nums()?[..] {
                        [n, m] => header = Some((n, m)),
                        _ => return Err(err("expected `p <n> <m>`")),
                    }
                }
                "a" => {
                    let Some((n, _)) = header else {
                        return Err(err("arc before `p` line"));
                    };
                    match nums()?[..] {
                        [u, v] => {
                            if u >= n || v >= n {
                                return Err(err(&format!("vertex out of range 0..{n}")));
                            }
                            if u == v {
                                return Err(err("self-loop"));
                            }
                            pairs.push((u, v));
                        }
                        _ => return Err(err("expected `a <tail> <head>`")),
                    }
                }
                other => return Err(err(&format!("unknown line type `{other}`"))),
            }
        }
        let (n, m) = header.ok_or(Error::Parse {
            line: 0,
            msg: "missing `p` line".into(),
        })?;
        if pairs.len() != m {
            return Err(Error::Parse {
                line: 0,
                msg: format!("header announces {m} arcs, found {}", pairs.len()),
            });
        }
        MultiDigraph::new(n, &pairs)
    }

    /// Serialises in the text format. Arcs are written in id order, so ids
    /// survive a round trip only when they are dense `0..m`.
    pub fn to_text(&self) -> String {
        let mut s = format!("p {} {}\n", self.n, self.m());
        for a in &self.arcs {
            let _ = writeln!(s, "a {} {}", a.tail, a.head);
        }
        s
    }
}

/// Kahn's algorithm, always taking the smallest available vertex.
pub fn topological_order(g: &MultiDigraph) -> Result<Vec<Vertex>> {
    let mut indeg: Vec<usize> = (0..g.n()).map(|v| g.in_adj[v].len()).collect();
    let mut heap: BinaryHeap<Reverse<Vertex>> =
        (0..g.n()).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(g.n());
    while let Some(Reverse(u)) = heap.pop() {
        order.push(u);
        for a in g.out_arcs(u) {
            indeg[a.head] -= 1;
            if indeg[a.head] == 0 {
                heap.push(Reverse(a.head));
            }
        }
    }
    if order.len() == g.n() {
        Ok(order)
    } else {
        Err(Error::CyclicGraph)
    }
}

/// Checks that `order` is a permutation of the vertices respecting every arc.
pub fn validate_order(g: &MultiDigraph, order: &[Vertex]) -> Result<Vec<usize>> {
    if order.len() != g.n() {
        return Err(Error::InvalidOrder);
    }
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        if v >= g.n() || pos[v] != usize::MAX {
            return Err(Error::InvalidOrder);
        }
        pos[v] = i;
    }
    if g.arcs().iter().any(|a| pos[a.tail] >= pos[a.head]) {
        return Err(Error::InvalidOrder);
    }
    Ok(pos)
}

/// Where arcs from the prefix to the suffix end up in an [`ArcSplit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CrossArcs {
    #[default]
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcSplit {
    pub first: Vec<Vertex>,
    pub second: Vec<Vertex>,
    pub a1: Vec<ArcId>,
    pub a2: Vec<ArcId>,
}

/// Splits along a topological order after position `i`: `first` is
/// `order[..i]`, `a1` holds the arcs inside it (plus the crossing arcs when
/// `cross` is [`CrossArcs::First`]) and `a2` holds the rest.
pub fn arc_split_prefix(
    g: &MultiDigraph,
    order: &[Vertex],
    i: usize,
    cross: CrossArcs,
) -> Result<ArcSplit> {
    let pos = validate_order(g, order)?;
    if i > order.len() {
        return Err(Error::InvalidArgument(format!(
            "split index {i} beyond {}",
            order.len()
        )));
    }
    let mut split = ArcSplit {
        first: order[..i].to_vec(),
        second: order[i..].to_vec(),
        a1: Vec::new(),
        a2: Vec::new(),
    };
    for a in g.arcs() {
        let tail_first = pos[a.tail] < i;
        let head_first = pos[a.head] < i;
        let to_a1 = tail_first && (head_first || cross == CrossArcs::First);
        if to_a1 {
            split.a1.push(a.id);
        } else {
            split.a2.push(a.id);
        }
    }
    Ok(split)
}

/// Vertex-split graph: `v` becomes `v_in = 2v` and `v_out = 2v + 1` joined by
/// an internal arc with id `id_bound + v`; every original arc `(u, v)` keeps
/// its id and runs `u_out -> v_in`.
#[derive(Debug, Clone)]
pub struct SplitGraph {
    pub graph: MultiDigraph,
    pub original_n: usize,
    pub internal_base: ArcId,
}

impl SplitGraph {
    pub fn v_in(v: Vertex) -> Vertex {
        2 * v
    }

    pub fn v_out(v: Vertex) -> Vertex {
        2 * v + 1
    }

    pub fn internal_arc(&self, v: Vertex) -> ArcId {
        self.internal_base + v
    }

    pub fn is_internal(&self, id: ArcId) -> bool {
        id >= self.internal_base
    }
}

pub fn split_vertices(g: &MultiDigraph) -> SplitGraph {
    let base = g.id_bound();
    let mut arcs: Vec<Arc> = (0..g.n())
        .map(|v| Arc {
            id: base + v,
            tail: SplitGraph::v_in(v),
            head: SplitGraph::v_out(v),
        })
        .collect();
    arcs.extend(g.arcs().iter().map(|a| Arc {
        id: a.id,
        tail: SplitGraph::v_out(a.tail),
        head: SplitGraph::v_in(a.head),
    }));
    SplitGraph {
        graph: MultiDigraph::from_arcs(2 * g.n(), arcs).expect("split graph is valid"),
        original_n: g.n(),
        internal_base: base,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diamond() -> MultiDigraph {
        MultiDigraph::new(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn topo_order_takes_smallest_first() {
        assert_eq!(topological_order(&diamond()).unwrap(), vec![0, 1, 2, 3]);
        let g = MultiDigraph::new(4, &[(3, 0), (2, 0), (1, 2)]).unwrap();
        assert_eq!(topological_order(&g).unwrap(), vec![1, 2, 3, 0]);
    }

    #[test]
    fn topo_order_rejects_cycles() {
        let g = MultiDigraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(topological_order(&g), Err(Error::CyclicGraph));
        let g = MultiDigraph::new(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(!g.is_acyclic());
    }

    #[test]
    fn self_loops_rejected() {
        assert!(matches!(
            MultiDigraph::new(2, &[(1, 1)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            MultiDigraph::parse("p 2 1\na 1 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn parse_with_comments_and_parallel_arcs() {
        let g = MultiDigraph::parse("c two parallel\np 3 3\na 0 1\nc mid\na 0 1\na 1 2\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.arcs_between(0, 1), vec![0, 1]);
        assert_eq!(g.arc(2).unwrap().head, 2);
        assert_eq!(MultiDigraph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(
            MultiDigraph::parse("a 0 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            MultiDigraph::parse("p 2 1\na 0 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            MultiDigraph::parse("p 2 2\na 0 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            MultiDigraph::parse("p 2 1\na 0 5\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            MultiDigraph::parse("q\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn split_path() {
        let g = MultiDigraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let sp = arc_split_prefix(&g, &[0, 1, 2], 1, CrossArcs::First).unwrap();
        assert_eq!(sp.first, vec![0]);
        assert_eq!(sp.a1, vec![0]);
        assert_eq!(sp.a2, vec![1]);
        let sp = arc_split_prefix(&g, &[0, 1, 2], 1, CrossArcs::Second).unwrap();
        assert!(sp.a1.is_empty());
        assert_eq!(sp.a2, vec![0, 1]);
        assert_eq!(
            arc_split_prefix(&g, &[1, 0, 2], 1, CrossArcs::First),
            Err(Error::InvalidOrder)
        );
    }

    #[test]
    fn contraction_keeps_ids_and_drops_loops() {
        let g = MultiDigraph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (1, 0)]).unwrap();
        let c = g.contract(&[true, true, false, false], 0);
        let ids: Vec<_> = c.arcs().iter().map(|a| (a.id, a.tail, a.head)).collect();
        assert_eq!(ids, vec![(1, 0, 2), (2, 2, 3), (3, 0, 3)]);
        assert_eq!(c.n(), 4);
    }

    #[test]
    fn split_vertices_layout() {
        let sg = split_vertices(&diamond());
        assert_eq!(sg.graph.n(), 8);
        assert_eq!(sg.graph.m(), 8);
        let internal = sg.graph.arc(sg.internal_arc(2)).unwrap();
        assert_eq!((internal.tail, internal.head), (4, 5));
        let orig = sg.graph.arc(1).unwrap();
        assert_eq!((orig.tail, orig.head), (1, 4));
    }

    proptest! {
        #[test]
        fn reverse_is_involution(pairs in prop::collection::vec((0usize..6, 0usize..6), 0..15)) {
            let pairs: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
            let g = MultiDigraph::new(6, &pairs).unwrap();
            prop_assert_eq!(g.reverse().reverse(), g.clone());
            let r = g.reverse();
            for a in g.arcs() {
                let b = r.arc(a.id).unwrap();
                prop_assert_eq!((b.tail, b.head), (a.head, a.tail));
            }
        }

        #[test]
        fn topo_order_respects_arcs(pairs in prop::collection::vec((0usize..7, 0usize..7), 0..20)) {
            let pairs: Vec<_> = pairs.into_iter().filter(|(u, v)| u < v).collect();
            let g = MultiDigraph::new(7, &pairs).unwrap();
            let order = topological_order(&g).unwrap();
            prop_assert!(validate_order(&g, &order).is_ok());
        }
    }
}
