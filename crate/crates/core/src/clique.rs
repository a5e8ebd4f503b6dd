//! Reductions from 4-clique detection in four-partite graphs to all-pairs
//! vertex connectivity on layered DAGs, in an unbounded and a k-bounded form.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::flow::{find_4clique_bruteforce, vertex_connectivity_bounded};
use crate::graph::{MultiDigraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SidePair {
    AB,
    BC,
    CD,
    AC,
    BD,
    AD,
}

impl SidePair {
    pub const ALL: [SidePair; 6] = [
        SidePair::AB,
        SidePair::BC,
        SidePair::CD,
        SidePair::AC,
        SidePair::BD,
        SidePair::AD,
    ];

    fn idx(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["AB", "BC", "CD", "AC", "BD", "AD"][self.idx()]
    }

    pub fn from_name(s: &str) -> Option<SidePair> {
        SidePair::ALL.into_iter().find(|p| p.name() == s)
    }
}

/// Four sides `A, B, C, D` of `n` vertices each; edges between distinct sides
/// stored as one boolean matrix per side pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourPartiteGraph {
    n: usize,
    edges: [Vec<bool>; 6],
}

impl FourPartiteGraph {
    pub fn empty(n: usize) -> Self {
        FourPartiteGraph {
            n,
            edges: std::array::from_fn(|_| vec![false; n * n]),
        }
    }

    /// Every edge between distinct sides present.
    pub fn complete(n: usize) -> Self {
        FourPartiteGraph {
            n,
            edges: std::array::from_fn(|_| vec![true; n * n]),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has(&self, pair: SidePair, x: usize, y: usize) -> bool {
        self.edges[pair.idx()][x * self.n + y]
    }

    pub fn set(&mut self, pair: SidePair, x: usize, y: usize, present: bool) {
        self.edges[pair.idx()][x * self.n + y] = present;
    }

    pub fn ab(&self, a: usize, b: usize) -> bool {
        self.has(SidePair::AB, a, b)
    }
    pub fn bc(&self, b: usize, c: usize) -> bool {
        self.has(SidePair::BC, b, c)
    }
    pub fn cd(&self, c: usize, d: usize) -> bool {
        self.has(SidePair::CD, c, d)
    }
    pub fn ac(&self, a: usize, c: usize) -> bool {
        self.has(SidePair::AC, a, c)
    }
    pub fn bd(&self, b: usize, d: usize) -> bool {
        self.has(SidePair::BD, b, d)
    }
    pub fn ad(&self, a: usize, d: usize) -> bool {
        self.has(SidePair::AD, a, d)
    }

    /// Whether edge `{a, d}` lies in some 4-clique.
    pub fn edge_in_clique(&self, a: usize, d: usize) -> bool {
        self.ad(a, d)
            && (0..self.n).any(|b| {
                self.ab(a, b)
                    && self.bd(b, d)
                    && (0..self.n).any(|c| self.bc(b, c) && self.ac(a, c) && self.cd(c, d))
            })
    }

    /// Adds isolated vertices until every side has `n` vertices.
    pub fn padded(&self, n: usize) -> FourPartiteGraph {
        assert!(n >= self.n);
        let mut g = FourPartiteGraph::empty(n);
        for p in SidePair::ALL {
            for x in 0..self.n {
                for y in 0..self.n {
                    g.set(p, x, y, self.has(p, x, y));
                }
            }
        }
        g
    }

    /// Text format: `q <n>` then one `e <pair> <x> <y>` line per edge, where
    /// `<pair>` is one of `AB BC CD AC BD AD`; `c` lines are comments.
    pub fn to_text(&self) -> String {
        let mut s = format!("q {}\n", self.n);
        for p in SidePair::ALL {
            for x in 0..self.n {
                for y in 0..self.n {
                    if self.has(p, x, y) {
                        let _ = writeln!(s, "e {} {} {}", p.name(), x, y);
                    }
                }
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<FourPartiteGraph> {
        let mut g: Option<FourPartiteGraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |msg: &str| Error::Parse {
                line,
                msg: msg.to_string(),
            };
            let tok: Vec<&str> = raw.split_whitespace().collect();
            let num = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| err(&format!("bad integer `{t}`")))
            };
            match tok.as_slice() {
                [] | ["c", ..] => {}
                ["q", n] => {
                    if g.is_some() {
                        return Err(err("duplicate `q` line"));
                    }
                    g = Some(FourPartiteGraph::empty(num(n)?));
                }
                ["e", pair, x, y] => {
                    let gr = g.as_mut().ok_or_else(|| err("edge before `q` line"))?;
                    let p = SidePair::from_name(pair)
                        .ok_or_else(|| err(&format!("unknown side pair `{pair}`")))?;
                    let (x, y) = (num(x)?, num(y)?);
                    if x >= gr.n || y >= gr.n {
                        return Err(err("vertex out of range"));
                    }
                    gr.set(p, x, y, true);
                }
                _ => return Err(err("expected `q <n>` or `e <pair> <x> <y>`")),
            }
        }
        g.ok_or(Error::Parse {
            line: 0,
            msg: "missing `q` line".into(),
        })
    }
}

/// Vertex layout of the unbounded construction: `A = 0..n`, `B = n..2n`,
/// `C = 2n..3n`, `D = 3n..4n`.
pub fn h_vertex(n: usize, side: usize, x: usize) -> Vertex {
    side * n + x
}

/// Layered DAG: `a->b`, `b->c`, `c->d` for present edges and `a->c`, `b->d`
/// for absent ones.
pub fn build_h(g4: &FourPartiteGraph) -> MultiDigraph {
    let n = g4.n();
    let v = |side, x| h_vertex(n, side, x);
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if g4.ab(x, y) {
                pairs.push((v(0, x), v(1, y)));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if g4.bc(x, y) {
                pairs.push((v(1, x), v(2, y)));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if g4.cd(x, y) {
                pairs.push((v(2, x), v(3, y)));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !g4.ac(x, y) {
                pairs.push((v(0, x), v(2, y)));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !g4.bd(x, y) {
                pairs.push((v(1, x), v(3, y)));
            }
        }
    }
    MultiDigraph::new(4 * n, &pairs).expect("layered graph is valid")
}

fn int_product(
    n: usize,
    x: impl Fn(usize, usize) -> bool,
    y: impl Fn(usize, usize) -> bool,
) -> Vec<usize> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for m in 0..n {
            if x(i, m) {
                for j in 0..n {
                    if y(m, j) {
                        out[i * n + j] += 1;
                    }
                }
            }
        }
    }
    out
}

/// `|B'_{a,d}|` and `|C'_{a,d}|` for every `(a, d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EstimateTable {
    n: usize,
    b_prime: Vec<usize>,
    c_prime: Vec<usize>,
}

impl EstimateTable {
    pub fn b_prime(&self, a: usize, d: usize) -> usize {
        self.b_prime[a * self.n + d]
    }

    pub fn c_prime(&self, a: usize, d: usize) -> usize {
        self.c_prime[a * self.n + d]
    }

    pub fn get(&self, a: usize, d: usize) -> usize {
        self.b_prime(a, d) + self.c_prime(a, d)
    }
}

/// Two integer matrix products: `AB · not(BD)` and `not(AC) · CD`.
pub fn estimates(g4: &FourPartiteGraph) -> EstimateTable {
    let n = g4.n();
    EstimateTable {
        n,
        b_prime: int_product(n, |a, b| g4.ab(a, b), |b, d| !g4.bd(b, d)),
        c_prime: int_product(n, |a, c| !g4.ac(a, c), |c, d| g4.cd(c, d)),
    }
}

/// Vertex connectivity between two vertices of a reduction graph.
pub type NcSolver<'a> = dyn Fn(&MultiDigraph, Vertex, Vertex) -> Result<usize> + 'a;

/// Flow-based connectivity, uncapped for graphs with at most `4n` vertices.
pub fn flow_solver(h: &MultiDigraph, s: Vertex, t: Vertex) -> Result<usize> {
    vertex_connectivity_bounded(h, s, t, h.n() + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeReport {
    pub a: usize,
    pub d: usize,
    pub nc: usize,
    pub estimate: usize,
}

/// Connectivity versus estimate for every edge `{a, d}`.
pub fn edge_reports(g4: &FourPartiteGraph, solver: &NcSolver<'_>) -> Result<Vec<EdgeReport>> {
    let n = g4.n();
    let h = build_h(g4);
    let est = estimates(g4);
    let mut out = Vec::new();
    for a in 0..n {
        for d in 0..n {
            if g4.ad(a, d) {
                let nc = solver(&h, h_vertex(n, 0, a), h_vertex(n, 3, d))?;
                out.push(EdgeReport {
                    a,
                    d,
                    nc,
                    estimate: est.get(a, d),
                });
            }
        }
    }
    Ok(out)
}

/// Some edge `{a, d}` has connectivity above its estimate.
pub fn decide_4clique_unbounded(g4: &FourPartiteGraph, solver: &NcSolver<'_>) -> Result<bool> {
    Ok(edge_reports(g4, solver)?.iter().any(|r| r.nc > r.estimate))
}

/// Side length after padding to a multiple of `k`.
pub fn padded_len(n: usize, k: usize) -> usize {
    n.div_ceil(k) * k
}

/// Block graph `H_ij` for a padded instance (`k | n`). With `r = n / k`:
/// `A' = {a_x}` at `x*k + a_local`, then `B` at `n + b`, `C` at `2n + c`,
/// `D' = {d_y}` at `3n + y*k + d_local`. Copy `a_x` feeds only block `B_x`,
/// copy `d_y` is fed only by block `C_y`.
pub fn build_h_bounded(
    g4: &FourPartiteGraph,
    k: usize,
    i: usize,
    j: usize,
) -> Result<MultiDigraph> {
    let n = g4.n();
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::InvalidArgument(format!(
            "k = {k} must divide n = {n}"
        )));
    }
    let r = n / k;
    if i >= r || j >= r {
        return Err(Error::InvalidArgument(format!(
            "block ({i},{j}) outside {r}x{r}"
        )));
    }
    let a_copy = |al: usize, x: usize| x * k + al;
    let d_copy = |dl: usize, y: usize| 3 * n + y * k + dl;
    let (b_at, c_at) = (|b: usize| n + b, |c: usize| 2 * n + c);
    let mut pairs = Vec::new();
    for x in 0..r {
        for al in 0..k {
            for b in x * k..(x + 1) * k {
                if g4.ab(i * k + al, b) {
                    pairs.push((a_copy(al, x), b_at(b)));
                }
            }
        }
    }
    for b in 0..n {
        for c in 0..n {
            if g4.bc(b, c) {
                pairs.push((b_at(b), c_at(c)));
            }
        }
    }
    for y in 0..r {
        for dl in 0..k {
            for c in y * k..(y + 1) * k {
                if g4.cd(c, j * k + dl) {
                    pairs.push((c_at(c), d_copy(dl, y)));
                }
            }
        }
    }
    for x in 0..r {
        for al in 0..k {
            for c in 0..n {
                if !g4.ac(i * k + al, c) {
                    pairs.push((a_copy(al, x), c_at(c)));
                }
            }
        }
    }
    for b in 0..n {
        for y in 0..r {
            for dl in 0..k {
                if !g4.bd(b, j * k + dl) {
                    pairs.push((b_at(b), d_copy(dl, y)));
                }
            }
        }
    }
    Ok(MultiDigraph::new(4 * n, &pairs).expect("block graph is valid"))
}

/// Sum test over all copies: edge `{a, d}` lies in a 4-clique iff
/// `Σ_{x,y} NC(a_x, d_y)` exceeds `Σ_{x,y} (|B'_{a_x,d_y}| + |C'_{a_x,d_y}|)`,
/// which is `(n/k)(|B'_{a,d}| + |C'_{a,d}|)` because each element of `B'`
/// (resp. `C'`) is counted once per `y` (resp. `x`).
pub fn decide_4clique_bounded(
    g4: &FourPartiteGraph,
    k: usize,
    solver: &NcSolver<'_>,
) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let orig = g4.n();
    let g = g4.padded(padded_len(orig, k));
    let n = g.n();
    let r = n / k;
    let est = estimates(&g);
    for i in 0..r {
        for j in 0..r {
            let h = build_h_bounded(&g, k, i, j)?;
            for al in 0..k {
                for dl in 0..k {
                    let (a, d) = (i * k + al, j * k + dl);
                    if a >= orig || d >= orig || !g.ad(a, d) {
                        continue;
                    }
                    let mut sum = 0;
                    for x in 0..r {
                        for y in 0..r {
                            sum += solver(&h, x * k + al, 3 * n + y * k + dl)?;
                        }
                    }
                    if sum > r * est.get(a, d) {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}

/// Brute-force answer, for cross-checking.
pub fn has_4clique(g4: &FourPartiteGraph) -> bool {
    find_4clique_bruteforce(g4).is_some()
}
