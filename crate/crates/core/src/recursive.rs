//! All-pairs latest <=k-cuts by halving the topological order. Cut families
//! across the halves are encoded with tensor powers of a superimposed code,
//! combined with a boolean matrix product, decoded into minimum cuts and then
//! fixed to the latest ones.
//!
//! Earliest families come from running the same combination on the reversed
//! graph, where earliest and latest swap roles.

use fixedbitset::FixedBitSet;

use crate::codes::{decode_witness, encode_family, BoxCodeword, Codeword, SuperimposedCode};
use crate::cuts::{CutFamily, CutKind};
use crate::error::{Error, Result};
use crate::graph::{topological_order, ArcId, MultiDigraph, Vertex};
use crate::iterative::latest_from_cover;
use crate::table::ApmcTable;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RecursiveConfig {
    /// Largest family size a codeword may encode. Defaults to the bound on
    /// the number of latest <=k-cuts.
    pub max_family: Option<usize>,
}

/// The `n`-th Catalan number.
pub fn catalan(n: usize) -> usize {
    (0..n).fold(1usize, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

/// `sum_{j=1..k} C_{j-1}`, never above `4^k`.
pub fn default_max_family(k: usize) -> usize {
    let sum: usize = (1..=k).map(|j| catalan(j - 1)).sum();
    sum.max(1).min(4usize.saturating_pow(k as u32))
}

/// Rectangular matrix of codewords; `None` entries behave as empty sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeMatrix<C> {
    rows: usize,
    cols: usize,
    entries: Vec<Option<C>>,
}

impl<C: Codeword> CodeMatrix<C> {
    pub fn new(rows: usize, cols: usize) -> Self {
        CodeMatrix {
            rows,
            cols,
            entries: vec![None; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&C> {
        self.entries[i * self.cols + j].as_ref()
    }

    pub fn set(&mut self, i: usize, j: usize, w: Option<C>) {
        self.entries[i * self.cols + j] = w;
    }

    fn shape(&self) -> Result<Option<(usize, usize)>> {
        let mut shape = None;
        for w in self.entries.iter().flatten() {
            let s = (w.base_len(), w.dim());
            if shape.is_some_and(|x| x != s) {
                return Err(Error::DimensionMismatch(format!(
                    "mixed entry shapes {:?} and {s:?}",
                    shape.unwrap()
                )));
            }
            shape = Some(s);
        }
        Ok(shape)
    }
}

/// `Z_ij = OR_a X_ia x Y_aj`: each term is the left entry with free axes
/// appended intersected with the right entry with free axes prepended.
pub fn star_product<C: Codeword>(x: &CodeMatrix<C>, y: &CodeMatrix<C>) -> Result<CodeMatrix<C>> {
    if x.cols != y.rows {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            x.rows, x.cols, y.rows, y.cols
        )));
    }
    if let (Some((qx, _)), Some((qy, _))) = (x.shape()?, y.shape()?) {
        if qx != qy {
            return Err(Error::DimensionMismatch(format!(
                "base lengths {qx} and {qy}"
            )));
        }
    }
    let mut z = CodeMatrix::new(x.rows, y.cols);
    for i in 0..x.rows {
        for j in 0..y.cols {
            let mut acc: Option<C> = None;
            for a in 0..x.cols {
                let (Some(l), Some(r)) = (x.get(i, a), y.get(a, j)) else {
                    continue;
                };
                let term = l.concat(r)?;
                acc = Some(match acc {
                    Some(prev) => prev.union(&term),
                    None => term,
                });
            }
            z.set(i, j, acc);
        }
    }
    Ok(z)
}

/// Latest <=k s-t cuts from a minimal s-t cut `mincut` of minimum size.
pub fn fix_to_latest<'a>(
    g: &MultiDigraph,
    s: Vertex,
    t: Vertex,
    mincut: &[ArcId],
    k: usize,
    latest_to_t: impl Fn(Vertex) -> Option<&'a CutFamily>,
) -> Result<CutFamily> {
    latest_from_cover(g, s, t, mincut, k, latest_to_t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dir {
    Forward,
    Backward,
}

struct Solver<'g> {
    g: &'g MultiDigraph,
    k: usize,
    max_family: usize,
    code: SuperimposedCode,
    lat: ApmcTable,
    ear: ApmcTable,
}

impl Solver<'_> {
    /// Family of `kind` for the pair `(x, y)` of the directed view.
    fn get(&self, dir: Dir, kind: CutKind, x: Vertex, y: Vertex) -> &CutFamily {
        let f = match (dir, kind) {
            (Dir::Forward, CutKind::Latest) => self.lat.family(x, y),
            (Dir::Forward, CutKind::Earliest) => self.ear.family(x, y),
            (Dir::Backward, CutKind::Latest) => self.ear.family(y, x),
            (Dir::Backward, CutKind::Earliest) => self.lat.family(y, x),
        };
        f.expect("family computed before use")
    }

    fn put(&mut self, dir: Dir, x: Vertex, y: Vertex, fam: CutFamily) {
        match dir {
            Dir::Forward => self.lat.set_family(x, y, fam),
            Dir::Backward => self.ear.set_family(y, x, fam.with_kind(CutKind::Earliest)),
        }
    }

    fn full(&self, dim: usize) -> BoxCodeword {
        let mut axis = FixedBitSet::with_capacity(self.code.len());
        axis.insert_range(..);
        BoxCodeword::product(self.code.len(), &vec![axis; dim]).expect("full box")
    }

    /// `None` when the pair is disconnected (the empty cut covers the
    /// family), the whole space when no <=k-cut exists.
    fn entry(&self, fam: &CutFamily, dim: usize) -> Result<Option<BoxCodeword>> {
        if fam.is_unreachable() {
            Ok(None)
        } else if fam.is_empty() {
            Ok(Some(self.full(dim)))
        } else {
            encode_family(&self.code, dim, fam.cuts()).map(Some)
        }
    }

    fn width<'f>(&self, fams: impl Iterator<Item = &'f CutFamily>) -> Result<usize> {
        let w = fams.map(|f| f.len()).max().unwrap_or(0).max(1);
        if w > self.max_family {
            return Err(Error::LimitExceeded(format!(
                "family of {w} cuts exceeds K = {}",
                self.max_family
            )));
        }
        Ok(w)
    }

    /// Minimum decoded solution of `z`, or the family for a pair without any
    /// <=k-cut or path.
    fn min_solution(
        &self,
        z: Option<&BoxCodeword>,
    ) -> Result<std::result::Result<Vec<ArcId>, CutFamily>> {
        let Some(z) = z else {
            return Ok(Err(CutFamily::unreachable(CutKind::Latest, self.k)));
        };
        let sols = decode_witness(z, &self.code, self.k)?;
        match sols.into_iter().next() {
            None => Ok(Err(CutFamily::above_k(CutKind::Latest, self.k))),
            Some(m) if m.is_empty() => Ok(Err(CutFamily::unreachable(CutKind::Latest, self.k))),
            Some(m) => Ok(Ok(m)),
        }
    }

    fn solve(&mut self, vs: &[Vertex]) -> Result<()> {
        if vs.len() < 2 {
            return Ok(());
        }
        let mid = vs.len().div_ceil(2);
        let (v1, v2) = vs.split_at(mid);
        self.solve(v1)?;
        self.solve(v2)?;
        let inner = self.g.induced_subgraph(vs);
        self.combine(Dir::Forward, &inner, v1, v2)?;
        let (r1, r2): (Vec<Vertex>, Vec<Vertex>) = (
            v2.iter().rev().copied().collect(),
            v1.iter().rev().copied().collect(),
        );
        self.combine(Dir::Backward, &inner.reverse(), &r1, &r2)
    }

    /// Fills the view's latest families for `first x second`, both given in
    /// the view's topological order.
    fn combine(
        &mut self,
        dir: Dir,
        gv: &MultiDigraph,
        first: &[Vertex],
        second: &[Vertex],
    ) -> Result<()> {
        let mut in_first = vec![false; gv.n()];
        for &v in first {
            in_first[v] = true;
        }
        let (n1, n2) = (first.len(), second.len());

        // Step 1: arcs across the halves composed with the second half.
        let h1 = gv.filter_arcs(|a| !(in_first[a.tail] && in_first[a.head]));
        let wy = self.width(
            second
                .iter()
                .flat_map(|&a| {
                    second
                        .iter()
                        .filter(move |&&t| t != a)
                        .map(move |&t| (a, t))
                })
                .map(|(a, t)| self.get(dir, CutKind::Latest, a, t)),
        )?;
        let mut x = CodeMatrix::new(n1, n2);
        for (i, &s) in first.iter().enumerate() {
            for (j, &a) in second.iter().enumerate() {
                let arcs = gv.arcs_between(s, a);
                let w = match arcs.len() {
                    0 => None,
                    c if c > self.k => Some(self.full(1)),
                    _ => Some(encode_family(&self.code, 1, &[arcs])?),
                };
                x.set(i, j, w);
            }
        }
        let mut y = CodeMatrix::new(n2, n2);
        for (i, &a) in second.iter().enumerate() {
            for (j, &t) in second.iter().enumerate() {
                let w = if a == t {
                    Some(self.full(wy))
                } else {
                    self.entry(self.get(dir, CutKind::Latest, a, t), wy)?
                };
                y.set(i, j, w);
            }
        }
        let z = star_product(&x, &y)?;
        let mut l1: Vec<CutFamily> = Vec::with_capacity(n1 * n2);
        for (i, &s) in first.iter().enumerate() {
            for (j, &t) in second.iter().enumerate() {
                let fam = match self.min_solution(z.get(i, j))? {
                    Err(f) => f,
                    Ok(m) => {
                        debug_assert!(
                            crate::cuts::is_minimal_cut(&h1, s, t, &m),
                            "decoded {m:?} is not a cut"
                        );
                        fix_to_latest(&h1, s, t, &m, self.k, |v| {
                            Some(self.get(dir, CutKind::Latest, v, t))
                        })?
                    }
                };
                l1.push(fam);
            }
        }

        // Step 2: the first half composed with the step-1 families.
        let wx = self.width(
            first
                .iter()
                .flat_map(|&s| first.iter().filter(move |&&a| a != s).map(move |&a| (s, a)))
                .map(|(s, a)| self.get(dir, CutKind::Earliest, s, a)),
        )?;
        let wl = self.width(l1.iter())?;
        let mut x2 = CodeMatrix::new(n1, n1);
        for (i, &s) in first.iter().enumerate() {
            for (j, &a) in first.iter().enumerate() {
                let w = if s == a {
                    Some(self.full(wx))
                } else {
                    self.entry(self.get(dir, CutKind::Earliest, s, a), wx)?
                };
                x2.set(i, j, w);
            }
        }
        let mut y2 = CodeMatrix::new(n1, n2);
        for i in 0..n1 {
            for j in 0..n2 {
                y2.set(i, j, self.entry(&l1[i * n2 + j], wl)?);
            }
        }
        let z2 = star_product(&x2, &y2)?;
        for (i, &s) in first.iter().enumerate().rev() {
            for (j, &t) in second.iter().enumerate() {
                let fam = match self.min_solution(z2.get(i, j))? {
                    Err(f) => f,
                    Ok(m) => {
                        debug_assert!(
                            crate::cuts::is_minimal_cut(gv, s, t, &m),
                            "decoded {m:?} is not a cut"
                        );
                        fix_to_latest(gv, s, t, &m, self.k, |v| {
                            Some(self.get(dir, CutKind::Latest, v, t))
                        })?
                    }
                };
                self.put(dir, s, t, fam);
            }
        }
        Ok(())
    }
}

/// Latest and earliest <=k-cut families for every ordered pair of a DAG.
pub fn all_pairs_extremal_cuts_recursive(
    g: &MultiDigraph,
    k: usize,
    cfg: &RecursiveConfig,
) -> Result<(ApmcTable, ApmcTable)> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let order = topological_order(g)?;
    let n = g.n();
    let code = SuperimposedCode::fast(k, g.id_bound().max(2))?;
    let mut solver = Solver {
        g,
        k,
        max_family: cfg.max_family.unwrap_or_else(|| default_max_family(k)),
        code,
        lat: ApmcTable::new(n, k),
        ear: ApmcTable::new(n, k),
    };
    for (i, &s) in order.iter().enumerate() {
        for &t in &order[..i] {
            solver
                .lat
                .set_family(s, t, CutFamily::unreachable(CutKind::Latest, k));
            solver
                .ear
                .set_family(s, t, CutFamily::unreachable(CutKind::Earliest, k));
        }
    }
    solver.solve(&order)?;
    Ok((solver.lat, solver.ear))
}

pub fn all_pairs_latest_cuts_recursive(
    g: &MultiDigraph,
    k: usize,
    cfg: &RecursiveConfig,
) -> Result<ApmcTable> {
    all_pairs_extremal_cuts_recursive(g, k, cfg).map(|(lat, _)| lat)
}
