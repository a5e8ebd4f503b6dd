//! Cut sides, the earlier/later orders, arc replacement and enumeration of
//! all extremal <=k-cuts.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::flow::{latest_min_cut, max_flow_bounded, proper_subset, subset};
use crate::graph::{ArcId, ArcSplit, MultiDigraph, Vertex};
use crate::table::CutValue;

/// Sorted, duplicate-free arc ids.
pub type ArcSet = Vec<ArcId>;

pub fn canonical(mut arcs: Vec<ArcId>) -> ArcSet {
    arcs.sort_unstable();
    arcs.dedup();
    arcs
}

/// An s-t cut together with both of its sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub arcs: ArcSet,
    pub source_side: Vec<bool>,
    pub target_side: Vec<bool>,
}

impl Cut {
    pub fn new(g: &MultiDigraph, s: Vertex, t: Vertex, arcs: &[ArcId]) -> Result<Cut> {
        let arcs = canonical(arcs.to_vec());
        let (source_side, target_side) = sides(g, s, t, &arcs)?;
        Ok(Cut {
            arcs,
            source_side,
            target_side,
        })
    }

    pub fn size(&self) -> usize {
        self.arcs.len()
    }

    /// `self >= other`: the target side of `self` is contained in that of `other`.
    pub fn later_than(&self, other: &Cut) -> bool {
        subset(&self.target_side, &other.target_side)
    }

    pub fn strictly_later(&self, other: &Cut) -> bool {
        proper_subset(&self.target_side, &other.target_side)
    }

    /// `self <= other`: the source side of `self` is contained in that of `other`.
    pub fn earlier_than(&self, other: &Cut) -> bool {
        subset(&self.source_side, &other.source_side)
    }

    pub fn strictly_earlier(&self, other: &Cut) -> bool {
        proper_subset(&self.source_side, &other.source_side)
    }
}

/// `(S_M, T_M)`: vertices reachable from `s`, and vertices reaching `t`, in `G - M`.
pub fn sides(
    g: &MultiDigraph,
    s: Vertex,
    t: Vertex,
    arcs: &[ArcId],
) -> Result<(Vec<bool>, Vec<bool>)> {
    let arcs = canonical(arcs.to_vec());
    let sside = g.reach_from(s, &arcs);
    if sside[t] {
        return Err(Error::NotACut);
    }
    Ok((sside, g.reach_to(t, &arcs)))
}

/// Cut whose removal separates `t` from `s` with no redundant arc.
pub fn is_minimal_cut(g: &MultiDigraph, s: Vertex, t: Vertex, arcs: &[ArcId]) -> bool {
    debug_assert!(
        arcs.windows(2).all(|w| w[0] < w[1]),
        "arc set must be canonical"
    );
    let r = g.reach_from(s, arcs);
    if r[t] {
        return false;
    }
    let tt = g.reach_to(t, arcs);
    arcs.iter().all(|&id| match g.arc(id) {
        Some(a) => r[a.tail] && tt[a.head],
        None => false,
    })
}

/// Latest test by brute force: no minimal cut of at most the same size has a
/// strictly smaller target side.
pub fn is_latest(g: &MultiDigraph, s: Vertex, t: Vertex, arcs: &[ArcId]) -> Result<bool> {
    let arcs = canonical(arcs.to_vec());
    if !is_minimal_cut(g, s, t, &arcs) {
        return Ok(false);
    }
    let tm = g.reach_to(t, &arcs);
    let others = crate::flow::minimal_cuts_bruteforce(g, s, t, arcs.len())?;
    Ok(!others.iter().any(|c| proper_subset(&g.reach_to(t, c), &tm)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CutKind {
    Earliest,
    Latest,
}

/// Extremal <=k-cuts of one pair in canonical order (size, then arc ids),
/// with the extremality order materialised: `dominates(i, j)` means cut `i`
/// is later-or-equal than cut `j` for a latest family and earlier-or-equal for
/// an earliest family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutFamily {
    kind: CutKind,
    k: usize,
    cuts: Vec<ArcSet>,
    dominates: Vec<Vec<bool>>,
}

impl CutFamily {
    pub fn new(kind: CutKind, k: usize, cuts: Vec<ArcSet>, dominates: Vec<Vec<bool>>) -> Self {
        assert_eq!(cuts.len(), dominates.len());
        let mut idx: Vec<usize> = (0..cuts.len()).collect();
        idx.sort_by(|&a, &b| (cuts[a].len(), &cuts[a]).cmp(&(cuts[b].len(), &cuts[b])));
        let dom = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| dominates[i][j]).collect())
            .collect();
        let cuts = idx.iter().map(|&i| cuts[i].clone()).collect();
        CutFamily {
            kind,
            k,
            cuts,
            dominates: dom,
        }
    }

    /// Family for a pair where `t` is unreachable: only the empty cut.
    pub fn unreachable(kind: CutKind, k: usize) -> Self {
        CutFamily {
            kind,
            k,
            cuts: vec![Vec::new()],
            dominates: vec![vec![true]],
        }
    }

    /// Family for a pair whose min-cut exceeds `k`.
    pub fn above_k(kind: CutKind, k: usize) -> Self {
        CutFamily {
            kind,
            k,
            cuts: Vec::new(),
            dominates: Vec::new(),
        }
    }

    /// Builds the order from one side per cut: target sides for latest
    /// families, source sides for earliest ones.
    pub fn from_sides(kind: CutKind, k: usize, cuts: Vec<(ArcSet, Vec<bool>)>) -> Self {
        let dom = cuts
            .iter()
            .map(|(_, a)| cuts.iter().map(|(_, b)| subset(a, b)).collect())
            .collect();
        CutFamily::new(kind, k, cuts.into_iter().map(|(c, _)| c).collect(), dom)
    }

    pub fn kind(&self) -> CutKind {
        self.kind
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cuts(&self) -> &[ArcSet] {
        &self.cuts
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn dominates(&self, i: usize, j: usize) -> bool {
        self.dominates[i][j]
    }

    pub fn strictly_dominates(&self, i: usize, j: usize) -> bool {
        self.dominates[i][j] && !self.dominates[j][i]
    }

    /// The pair is disconnected: the family is exactly `{∅}`.
    pub fn is_unreachable(&self) -> bool {
        self.cuts.len() == 1 && self.cuts[0].is_empty()
    }

    pub fn min_size(&self) -> Option<usize> {
        self.cuts.first().map(|c| c.len())
    }

    pub fn value(&self) -> CutValue {
        match self.min_size() {
            Some(v) => CutValue::Exact(v),
            None => CutValue::AboveK,
        }
    }

    pub fn restrict(&self, k: usize) -> CutFamily {
        let keep: Vec<usize> = (0..self.cuts.len())
            .filter(|&i| self.cuts[i].len() <= k)
            .collect();
        CutFamily {
            kind: self.kind,
            k,
            cuts: keep.iter().map(|&i| self.cuts[i].clone()).collect(),
            dominates: keep
                .iter()
                .map(|&i| keep.iter().map(|&j| self.dominates[i][j]).collect())
                .collect(),
        }
    }

    /// Number of cuts of each size `0..=k`.
    pub fn size_histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.k + 1];
        for c in &self.cuts {
            h[c.len()] += 1;
        }
        h
    }

    pub fn with_kind(mut self, kind: CutKind) -> Self {
        self.kind = kind;
        self
    }
}

/// Merges `S_M ∪ {head(a)}` into `s` and returns the latest min-cut of the
/// contracted graph, or `None` when `a` enters `t`.
pub fn arc_replacement(
    g: &MultiDigraph,
    s: Vertex,
    t: Vertex,
    m: &[ArcId],
    a: ArcId,
) -> Result<Option<ArcSet>> {
    let m = canonical(m.to_vec());
    if m.binary_search(&a).is_err() {
        return Err(Error::InvalidArgument(format!("arc {a} is not in the cut")));
    }
    let arc = *g
        .arc(a)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown arc {a}")))?;
    let mut merged = g.reach_from(s, &m);
    if merged[t] {
        return Err(Error::NotACut);
    }
    if arc.head == t {
        return Ok(None);
    }
    merged[arc.head] = true;
    let contracted = g.contract(&merged, s);
    Ok(Some(latest_min_cut(&contracted, s, t)?))
}

/// All s-t-latest cuts of size at most `k`: the arc-replacement closure of
/// the latest min-cut, filtered to latest cuts.
pub fn latest_cuts_upto_k(g: &MultiDigraph, s: Vertex, t: Vertex, k: usize) -> Result<CutFamily> {
    let flow = max_flow_bounded(g, s, t, k + 1)?;
    if flow.value == 0 {
        return Ok(CutFamily::unreachable(CutKind::Latest, k));
    }
    if flow.value > k {
        return Ok(CutFamily::above_k(CutKind::Latest, k));
    }
    let start = latest_min_cut(g, s, t)?;
    let mut seen: HashSet<ArcSet> = HashSet::from([start.clone()]);
    let mut found = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(m) = queue.pop_front() {
        for &a in &m {
            if let Some(r) = arc_replacement(g, s, t, &m, a)? {
                if r.len() <= k && seen.insert(r.clone()) {
                    found.push(r.clone());
                    queue.push_back(r);
                }
            }
        }
    }
    let tsides: Vec<Vec<bool>> = found.iter().map(|c| g.reach_to(t, c)).collect();
    let keep = (0..found.len())
        .filter(|&i| {
            !(0..found.len())
                .any(|j| found[j].len() <= found[i].len() && proper_subset(&tsides[j], &tsides[i]))
        })
        .map(|i| (found[i].clone(), tsides[i].clone()))
        .collect();
    Ok(CutFamily::from_sides(CutKind::Latest, k, keep))
}

/// All s-t-earliest cuts of size at most `k`, via the latest cuts of the
/// reversed graph.
pub fn earliest_cuts_upto_k(g: &MultiDigraph, s: Vertex, t: Vertex, k: usize) -> Result<CutFamily> {
    Ok(latest_cuts_upto_k(&g.reverse(), t, s, k)?.with_kind(CutKind::Earliest))
}

/// Per-vertex extremal families for the split-covering test.
#[derive(Debug, Clone)]
pub struct SplitFamilies {
    /// s-v-earliest cuts in `(V, A1)`; `None` for `v = s`.
    pub early: Vec<Option<CutFamily>>,
    /// v-t-latest cuts in `(V, A2)`; `None` for `v = t`.
    pub late: Vec<Option<CutFamily>>,
    /// `v` is unreachable from `s` in `A1` or does not reach `t` in `A2`.
    pub exempt: Vec<bool>,
}

pub fn split_covering_families(
    g: &MultiDigraph,
    s: Vertex,
    t: Vertex,
    split: &ArcSplit,
    k: usize,
) -> Result<SplitFamilies> {
    let in_a1: HashSet<ArcId> = split.a1.iter().copied().collect();
    let g1 = g.filter_arcs(|a| in_a1.contains(&a.id));
    let g2 = g.filter_arcs(|a| !in_a1.contains(&a.id));
    let from_s = g1.reach_from(s, &[]);
    let to_t = g2.reach_to(t, &[]);
    let mut fams = SplitFamilies {
        early: Vec::new(),
        late: Vec::new(),
        exempt: Vec::new(),
    };
    for v in 0..g.n() {
        fams.early.push(if v == s {
            None
        } else {
            Some(earliest_cuts_upto_k(&g1, s, v, k)?)
        });
        fams.late.push(if v == t {
            None
        } else {
            Some(latest_cuts_upto_k(&g2, v, t, k)?)
        });
        fams.exempt
            .push(v != s && v != t && (!from_s[v] || !to_t[v]));
    }
    Ok(fams)
}

fn contains_all(m: &[ArcId], sub: &[ArcId]) -> bool {
    sub.iter().all(|a| m.binary_search(a).is_ok())
}

/// Whether `m` contains, for every vertex, an earliest cut from its `A1`
/// family or a latest cut from its `A2` family.
pub fn check_split_covering(m: &[ArcId], fams: &SplitFamilies) -> bool {
    let m = canonical(m.to_vec());
    (0..fams.exempt.len()).all(|v| {
        fams.exempt[v]
            || fams.early[v]
                .iter()
                .chain(&fams.late[v])
                .any(|f| f.cuts().iter().any(|c| contains_all(&m, c)))
    })
}

/// Whether `m` contains, for every arc `(x, y)` of `c`, either the arc itself
/// or some y-t-latest cut of size at most `k`.
pub fn check_late_covering(
    g: &MultiDigraph,
    t: Vertex,
    c: &[ArcId],
    m: &[ArcId],
    k: usize,
) -> Result<bool> {
    let m = canonical(m.to_vec());
    for &id in c {
        if m.binary_search(&id).is_ok() {
            continue;
        }
        let arc = g
            .arc(id)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown arc {id}")))?;
        if arc.head == t {
            return Ok(false);
        }
        let fam = latest_cuts_upto_k(g, arc.head, t, k)?;
        if !fam.cuts().iter().any(|cut| contains_all(&m, cut)) {
            return Ok(false);
        }
    }
    Ok(true)
}
