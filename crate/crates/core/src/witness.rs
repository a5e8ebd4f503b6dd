//! The witness superset problem: given set families `F_1..F_c` and a bound
//! `k`, list every inclusion-minimal set `W` with `|W| <= k` that contains at
//! least one member of each family.

use std::collections::BTreeSet;

use crate::cuts::{CutFamily, CutKind};
use crate::error::{Error, Result};

/// Sorted, duplicate-free universe elements.
pub type ElemSet = Vec<usize>;

fn canon(mut v: Vec<usize>) -> ElemSet {
    v.sort_unstable();
    v.dedup();
    v
}

fn is_subset(sub: &[usize], sup: &[usize]) -> bool {
    // Both sorted.
    let mut it = sup.iter();
    sub.iter().all(|x| it.any(|y| y == x))
}

fn union(a: &[usize], b: &[usize]) -> ElemSet {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(_), Some(&y)) => {
                j += 1;
                y
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WsInstance {
    families: Vec<Vec<ElemSet>>,
    k: usize,
}

impl WsInstance {
    pub fn new(families: Vec<Vec<Vec<usize>>>, k: usize) -> Result<Self> {
        let mut out = Vec::with_capacity(families.len());
        for fam in families {
            if fam.is_empty() {
                return Err(Error::EmptyFamily);
            }
            let mut members: Vec<ElemSet> = fam.into_iter().map(canon).collect();
            if let Some(big) = members.iter().find(|m| m.len() > k) {
                return Err(Error::InvalidArgument(format!(
                    "member {big:?} has more than {k} elements"
                )));
            }
            members.sort();
            members.dedup();
            out.push(members);
        }
        Ok(WsInstance { families: out, k })
    }

    pub fn families(&self) -> &[Vec<ElemSet>] {
        &self.families
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Largest family size.
    pub fn max_family(&self) -> usize {
        self.families.iter().map(|f| f.len()).max().unwrap_or(0)
    }

    pub fn universe(&self) -> ElemSet {
        canon(self.families.iter().flatten().flatten().copied().collect())
    }

    /// Every family has a member inside `w` (sorted).
    pub fn covers(&self, w: &[usize]) -> bool {
        self.families
            .iter()
            .all(|f| f.iter().any(|m| is_subset(m, w)))
    }

    /// Covering, at most `k` elements, and no element can be dropped.
    pub fn is_witness(&self, w: &[usize]) -> bool {
        w.len() <= self.k
            && self.covers(w)
            && (0..w.len()).all(|i| {
                let mut smaller = w.to_vec();
                smaller.remove(i);
                !self.covers(&smaller)
            })
    }
}

/// Depth-first search over families, skipping families already covered and
/// branching on every member that keeps the union within `k`.
pub fn solve_ws_pruning(inst: &WsInstance) -> Vec<ElemSet> {
    fn rec(inst: &WsInstance, i: usize, s: &ElemSet, leaves: &mut BTreeSet<ElemSet>) {
        let Some(fam) = inst.families.get(i) else {
            leaves.insert(s.clone());
            return;
        };
        if fam.iter().any(|m| is_subset(m, s)) {
            rec(inst, i + 1, s, leaves);
            return;
        }
        for m in fam {
            let u = union(s, m);
            if u.len() <= inst.k {
                rec(inst, i + 1, &u, leaves);
            }
        }
    }
    let mut leaves = BTreeSet::new();
    rec(inst, 0, &Vec::new(), &mut leaves);
    let mut out: Vec<ElemSet> = leaves.into_iter().filter(|w| inst.is_witness(w)).collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

pub const BRUTE_FORCE_MAX_UNIVERSE: usize = 24;

/// Every subset of the universe with at most `k` elements, tested directly.
pub fn solve_ws_bruteforce(inst: &WsInstance) -> Result<Vec<ElemSet>> {
    let uni = inst.universe();
    if uni.len() > BRUTE_FORCE_MAX_UNIVERSE {
        return Err(Error::TooLarge(format!(
            "universe of {} elements",
            uni.len()
        )));
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        uni: &[usize],
        from: usize,
        inst: &WsInstance,
        cur: &mut Vec<usize>,
        out: &mut Vec<ElemSet>,
    ) {
        if inst.is_witness(cur) {
            out.push(cur.clone());
        }
        if cur.len() == inst.k {
            return;
        }
        for i in from..uni.len() {
            cur.push(uni[i]);
            rec(uni, i + 1, inst, cur, out);
            cur.pop();
        }
    }
    rec(&uni, 0, inst, &mut cur, &mut out);
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(out)
}

/// A set family with a later-or-equal relation on its members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedFamily {
    pub members: Vec<ElemSet>,
    /// `later[i][j]`: member `i` is later than or equal to member `j`.
    pub later: Vec<Vec<bool>>,
}

impl OrderedFamily {
    /// `{arc}` followed by the cuts of `rest`; the singleton counts as
    /// earlier than every cut of `rest`.
    pub fn singleton_then(arc: usize, rest: Option<&CutFamily>) -> Self {
        let cuts = rest.map_or(&[][..], |f| f.cuts());
        let n = cuts.len() + 1;
        let mut members = Vec::with_capacity(n);
        members.push(vec![arc]);
        members.extend(cuts.iter().cloned());
        let later = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (i, j) {
                        (0, 0) => true,
                        (0, _) => false,
                        (_, 0) => true,
                        _ => rest.expect("non-empty rest").dominates(i - 1, j - 1),
                    })
                    .collect()
            })
            .collect();
        OrderedFamily { members, later }
    }
}

/// Keeps the candidates no other candidate strictly beats: `M' > M` with
/// `|M'| <= |M|`, where `M' >= M` holds when every member of every family
/// inside `M'` is later-or-equal than every member of that family inside `M`.
pub fn filter_latest(
    candidates: &[ElemSet],
    families: &[OrderedFamily],
    k: usize,
) -> Result<CutFamily> {
    let inside: Vec<Vec<Vec<usize>>> = candidates
        .iter()
        .map(|m| {
            families
                .iter()
                .map(|f| {
                    (0..f.members.len())
                        .filter(|&i| is_subset(&f.members[i], m))
                        .collect::<Vec<_>>()
                })
                .collect()
        })
        .collect();
    for (c, ins) in candidates.iter().zip(&inside) {
        if ins.iter().any(|v| v.is_empty()) {
            return Err(Error::OrderUndefined(format!(
                "candidate {c:?} covers no member of some family"
            )));
        }
    }
    let ge = |a: usize, b: usize| {
        families.iter().enumerate().all(|(x, f)| {
            inside[a][x]
                .iter()
                .all(|&i| inside[b][x].iter().all(|&j| f.later[i][j]))
        })
    };
    let n = candidates.len();
    let ge_mat: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| ge(a, b)).collect()).collect();
    let keep: Vec<usize> = (0..n)
        .filter(|&b| {
            !(0..n).any(|a| {
                ge_mat[a][b] && !ge_mat[b][a] && candidates[a].len() <= candidates[b].len()
            })
        })
        .collect();
    let cuts = keep.iter().map(|&i| candidates[i].clone()).collect();
    let dom = keep
        .iter()
        .map(|&a| keep.iter().map(|&b| ge_mat[a][b]).collect())
        .collect();
    Ok(CutFamily::new(CutKind::Latest, k, cuts, dom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inst(f: &[&[&[usize]]], k: usize) -> WsInstance {
        WsInstance::new(
            f.iter()
                .map(|fam| fam.iter().map(|m| m.to_vec()).collect())
                .collect(),
            k,
        )
        .unwrap()
    }

    #[test]
    fn six_element_instance_has_unique_solution() {
        let i = inst(&[&[&[2], &[1, 5]], &[&[1, 3], &[4]], &[&[4], &[2, 4]]], 2);
        assert_eq!(solve_ws_pruning(&i), vec![vec![2, 4]]);
        assert_eq!(solve_ws_bruteforce(&i).unwrap(), vec![vec![2, 4]]);
    }

    #[test]
    fn small_instances() {
        let i = inst(&[&[&[1], &[2]], &[&[3]]], 2);
        assert_eq!(solve_ws_pruning(&i), vec![vec![1, 3], vec![2, 3]]);
        let i = inst(&[&[&[1, 2]], &[&[3]]], 2);
        assert!(solve_ws_pruning(&i).is_empty());
        let i = inst(&[&[&[], &[1]], &[&[2]]], 2);
        assert_eq!(solve_ws_pruning(&i), vec![vec![2]]);
        let i = inst(&[], 2);
        assert_eq!(solve_ws_pruning(&i), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn validation() {
        assert_eq!(WsInstance::new(vec![vec![]], 2), Err(Error::EmptyFamily));
        assert!(WsInstance::new(vec![vec![vec![1, 2, 3]]], 2).is_err());
    }

    #[test]
    fn filter_prefers_later_members() {
        // Family 0 orders {1} before {2}; both candidates cover it.
        let fam = OrderedFamily {
            members: vec![vec![1], vec![2]],
            later: vec![vec![true, false], vec![true, true]],
        };
        let out = filter_latest(&[vec![1], vec![2]], std::slice::from_ref(&fam), 2).unwrap();
        assert_eq!(out.cuts(), &[vec![2]]);
        // A larger later candidate does not beat a smaller earlier one.
        let out = filter_latest(&[vec![1], vec![2, 3]], std::slice::from_ref(&fam), 2).unwrap();
        assert_eq!(out.cuts(), &[vec![1], vec![2, 3]]);
        assert!(out.strictly_dominates(1, 0));
        let fam2 = OrderedFamily {
            members: vec![vec![2], vec![3, 4]],
            later: vec![vec![true, false], vec![true, true]],
        };
        let out = filter_latest(&[vec![1, 2], vec![2, 3, 4]], &[fam, fam2], 3).unwrap();
        assert_eq!(out.cuts(), &[vec![1, 2], vec![2, 3, 4]]);
        assert!(out.strictly_dominates(1, 0));
    }

    #[test]
    fn filter_rejects_uncovered_family() {
        let fam = OrderedFamily {
            members: vec![vec![1]],
            later: vec![vec![true]],
        };
        assert!(matches!(
            filter_latest(&[vec![2]], &[fam], 2),
            Err(Error::OrderUndefined(_))
        ));
    }

    pub(crate) fn arb_instance() -> impl Strategy<Value = WsInstance> {
        (1usize..=3, 1usize..=4).prop_flat_map(|(k, big_k)| {
            prop::collection::vec(
                prop::collection::vec(prop::collection::btree_set(0usize..10, 0..=k), 1..=big_k),
                1..=5,
            )
            .prop_map(move |fams| {
                let fams = fams
                    .into_iter()
                    .map(|f| f.into_iter().map(|m| m.into_iter().collect()).collect())
                    .collect();
                WsInstance::new(fams, k).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn pruning_matches_brute_force(i in arb_instance()) {
            let p = solve_ws_pruning(&i);
            prop_assert_eq!(&p, &solve_ws_bruteforce(&i).unwrap());
            prop_assert!(p.len() <= i.max_family().pow(i.k() as u32).max(1));
        }
    }
}
