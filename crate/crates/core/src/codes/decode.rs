//! Recovering witness-superset solutions from the union of tensor-encoded
//! families.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use fixedbitset::FixedBitSet;

use super::{Codeword, SuperimposedCode};
use crate::error::{Error, Result};
use crate::witness::ElemSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecodeOptions {
    /// Discard intermediate candidates that are not the code of some `<=k`
    /// set covering the current (sub)instance. Every candidate the final
    /// answer depends on has that form, so the output is unchanged.
    pub prune: bool,
}

impl Default for DecodeOptions {
    fn default() -> Self {
        DecodeOptions { prune: true }
    }
}

struct Collapser<'a, C> {
    code: &'a SuperimposedCode,
    k: usize,
    opts: DecodeOptions,
    memo: HashMap<C, Rc<Vec<FixedBitSet>>>,
}

impl<C: Codeword> Collapser<'_, C> {
    fn keep(&self, s: &C, cand: &FixedBitSet) -> bool {
        !self.opts.prune
            || (self.code.decode(cand).is_ok_and(|w| w.len() <= self.k) && s.avoids(cand))
    }

    fn run(&mut self, s: &C) -> Rc<Vec<FixedBitSet>> {
        if let Some(hit) = self.memo.get(s) {
            return hit.clone();
        }
        let mut ans = BTreeSet::new();
        if s.dim() <= 1 {
            let set = if s.dim() == 1 {
                s.to_set()
            } else {
                FixedBitSet::with_capacity(self.code.len())
            };
            if self.keep(s, &set) {
                ans.insert(set);
            }
        } else {
            let p = s.diagonal();
            let slices = s.distinct_slices();
            let empty = C::empty(s.base_len(), s.dim() - 1).expect("smaller than s");
            self.choose(s, &p, &slices, 0, self.k, &empty, &mut ans);
        }
        let out = Rc::new(ans.into_iter().collect::<Vec<_>>());
        self.memo.insert(s.clone(), out.clone());
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn choose(
        &mut self,
        s: &C,
        p: &FixedBitSet,
        slices: &[C],
        from: usize,
        left: usize,
        acc: &C,
        ans: &mut BTreeSet<FixedBitSet>,
    ) {
        for cand in self.run(acc).iter() {
            let mut with_p = cand.clone();
            with_p.union_with(p);
            if self.keep(s, &with_p) {
                ans.insert(with_p);
            }
        }
        if left == 0 {
            return;
        }
        for i in from..slices.len() {
            let next = acc.union(&slices[i]);
            if next == *acc {
                continue;
            }
            self.choose(s, p, slices, i + 1, left - 1, &next, ans);
        }
    }
}

/// Candidate code sets `I` for the union `s`: the base case returns `s`
/// itself; otherwise every union of at most `k` slices is collapsed
/// recursively and the diagonal is added.
pub fn collapse<C: Codeword>(
    s: &C,
    code: &SuperimposedCode,
    k: usize,
    opts: DecodeOptions,
) -> Vec<FixedBitSet> {
    let mut c = Collapser {
        code,
        k,
        opts,
        memo: HashMap::new(),
    };
    c.run(s).as_ref().clone()
}

pub fn decode_witness<C: Codeword>(
    s: &C,
    code: &SuperimposedCode,
    k: usize,
) -> Result<Vec<ElemSet>> {
    decode_witness_with(s, code, k, DecodeOptions::default())
}

/// All inclusion-minimal sets `W`, `|W| <= k`, covering every family whose
/// encoding was OR-ed into `s`.
pub fn decode_witness_with<C: Codeword>(
    s: &C,
    code: &SuperimposedCode,
    k: usize,
    opts: DecodeOptions,
) -> Result<Vec<ElemSet>> {
    if s.base_len() != code.len() {
        return Err(Error::DimensionMismatch(format!(
            "codeword base {} vs code length {}",
            s.base_len(),
            code.len()
        )));
    }
    if k > code.d() {
        return Err(Error::InvalidArgument(format!(
            "k = {k} exceeds code order {}",
            code.d()
        )));
    }
    let mut out = BTreeSet::new();
    for cand in collapse(s, code, k, opts) {
        let Ok(w) = code.decode(&cand) else { continue };
        if w.len() > k || !s.avoids(&cand) {
            continue;
        }
        let minimal = (0..w.len()).all(|i| {
            let mut smaller = w.clone();
            smaller.remove(i);
            !s.avoids(&code.encode_set(&smaller))
        });
        if minimal {
            out.insert(w);
        }
    }
    let mut out: Vec<ElemSet> = out.into_iter().collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(out)
}
