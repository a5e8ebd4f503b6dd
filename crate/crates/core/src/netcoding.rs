//! Randomized k-bounded vertex connectivity via linear network coding over a
//! prime field: random coefficients on adjacent vertex pairs, one inversion
//! of `I - K`, and a rank query per pair.
//!
//! Each source `s` gets a layer `L_s` of `k` fresh vertices fed by `s` and
//! feeding all of `N^out(s)`; each sink gets a mirrored layer `L'_t`. The
//! rank of the `L_s x L'_t` block of `(I - K)^-1` is then `min(k, κ(s, t))`
//! with high probability. Arcs from a source to a sink are subdivided so that
//! direct and parallel arcs count as separate paths.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gen::rng;
use crate::graph::{MultiDigraph, Vertex};

pub const DEFAULT_PRIME: u64 = 2_147_483_647;

fn mul(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

/// Dense matrix over GF(p), row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    p: u64,
    data: Vec<u64>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u64) -> Self {
        FieldMatrix {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.rows || self.p != other.p {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols, self.p);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + mul(a, other.get(l, j), self.p)) % self.p;
                }
            }
        }
        Ok(out)
    }

    /// `I - self`.
    pub fn identity_minus(&self) -> FieldMatrix {
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v = (self.p - *v) % self.p;
        }
        for i in 0..self.rows.min(self.cols) {
            let v = out.get(i, i);
            out.set(i, i, v + 1);
        }
        out
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<FieldMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} is not square",
                self.rows, self.cols
            )));
        }
        let (n, p) = (self.rows, self.p);
        let mut a = self.clone();
        let mut b = Self::identity(n, p);
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| a.get(r, col) != 0)
                .ok_or(Error::Singular)?;
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                    b.data.swap(piv * n + j, col * n + j);
                }
            }
            let f = inv(a.get(col, col), p);
            for j in 0..n {
                a.data[col * n + j] = mul(a.data[col * n + j], f, p);
                b.data[col * n + j] = mul(b.data[col * n + j], f, p);
            }
            for r in 0..n {
                let c = a.get(r, col);
                if r == col || c == 0 {
                    continue;
                }
                for j in 0..n {
                    a.data[r * n + j] =
                        (a.data[r * n + j] + p - mul(c, a.data[col * n + j], p)) % p;
                    b.data[r * n + j] =
                        (b.data[r * n + j] + p - mul(c, b.data[col * n + j], p)) % p;
                }
            }
        }
        Ok(b)
    }

    /// Rank of the submatrix on the given rows and columns.
    pub fn submatrix_rank(&self, rows: &[usize], cols: &[usize]) -> usize {
        let p = self.p;
        let mut m: Vec<Vec<u64>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| self.get(r, c)).collect())
            .collect();
        let mut rank = 0;
        for c in 0..cols.len() {
            let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(rank, piv);
            let f = inv(m[rank][c], p);
            let (top, below) = m.split_at_mut(rank + 1);
            let pivot = &top[rank];
            for row in below {
                let x = mul(row[c], f, p);
                if x == 0 {
                    continue;
                }
                for (e, &pv) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *e = (*e + p - mul(x, pv, p)) % p;
                }
            }
            rank += 1;
        }
        rank
    }
}

fn check_prime(p: u64) -> Result<()> {
    let ok = (2..=1u64 << 32).contains(&p)
        && (2..)
            .take_while(|f| f * f <= p)
            .all(|f| !p.is_multiple_of(f));
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{p} is not a prime below 2^32"
        )))
    }
}

/// `K[u][v]` uniform in GF(p) for every arc `(u, v)`, zero elsewhere.
pub fn build_vertex_coefficients(g: &MultiDigraph, seed: u64, p: u64) -> FieldMatrix {
    let mut r = rng(seed);
    let mut k = FieldMatrix::zeros(g.n(), g.n(), p);
    for u in 0..g.n() {
        for v in g.out_neighbors(u) {
            k.set(u, v, r.gen_range(0..p));
        }
    }
    k
}

pub fn invert_i_minus_k(k: &FieldMatrix) -> Result<FieldMatrix> {
    k.identity_minus().inverse()
}

/// Rank of the `N^out(s) x N^in(t)` block of `finv`.
pub fn pair_rank(finv: &FieldMatrix, g: &MultiDigraph, s: Vertex, t: Vertex) -> usize {
    finv.submatrix_rank(&g.out_neighbors(s), &g.in_neighbors(t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NetcodingConfig {
    pub prime: u64,
    /// Fresh seeds tried after a singular `I - K`.
    pub max_retries: usize,
}

impl Default for NetcodingConfig {
    fn default() -> Self {
        NetcodingConfig {
            prime: DEFAULT_PRIME,
            max_retries: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub k: usize,
    pub sources: Vec<Vertex>,
    pub sinks: Vec<Vertex>,
    /// `values[i][j]` for `(sources[i], sinks[j])`; `None` when they coincide.
    pub values: Vec<Vec<Option<usize>>>,
    pub seed: u64,
    pub retries: usize,
}

impl ConnectivityReport {
    pub fn get(&self, s: Vertex, t: Vertex) -> Option<usize> {
        let i = self.sources.iter().position(|&x| x == s)?;
        let j = self.sinks.iter().position(|&x| x == t)?;
        self.values[i][j]
    }
}

/// Gadget graph with per-source and per-sink layers of `k` vertices.
pub struct Gadget {
    pub graph: MultiDigraph,
    pub source_layers: Vec<Vec<Vertex>>,
    pub sink_layers: Vec<Vec<Vertex>>,
}

pub fn build_gadget(g: &MultiDigraph, sources: &[Vertex], sinks: &[Vertex], k: usize) -> Gadget {
    let mut is_source = vec![false; g.n()];
    let mut is_sink = vec![false; g.n()];
    sources.iter().for_each(|&s| is_source[s] = true);
    sinks.iter().for_each(|&t| is_sink[t] = true);
    let mut n = g.n();
    let mut pairs = Vec::new();
    for a in g.arcs() {
        if is_source[a.tail] && is_sink[a.head] {
            pairs.push((a.tail, n));
            pairs.push((n, a.head));
            n += 1;
        } else {
            pairs.push((a.tail, a.head));
        }
    }
    let base = MultiDigraph::new(n, &pairs).expect("subdivision is valid");
    let mut source_layers = Vec::with_capacity(sources.len());
    for &s in sources {
        let layer: Vec<Vertex> = (n..n + k).collect();
        n += k;
        for &l in &layer {
            pairs.push((s, l));
            for v in base.out_neighbors(s) {
                pairs.push((l, v));
            }
        }
        source_layers.push(layer);
    }
    let mut sink_layers = Vec::with_capacity(sinks.len());
    for &t in sinks {
        let layer: Vec<Vertex> = (n..n + k).collect();
        n += k;
        for &l in &layer {
            pairs.push((l, t));
            for v in base.in_neighbors(t) {
                pairs.push((v, l));
            }
        }
        sink_layers.push(layer);
    }
    Gadget {
        graph: MultiDigraph::new(n, &pairs).expect("gadget is valid"),
        source_layers,
        sink_layers,
    }
}

fn check_vertices(g: &MultiDigraph, vs: &[Vertex], what: &str) -> Result<()> {
    if vs.is_empty() {
        return Err(Error::InvalidArgument(format!("empty {what} set")));
    }
    if let Some(&v) = vs.iter().find(|&&v| v >= g.n()) {
        return Err(Error::InvalidArgument(format!("{what} {v} out of range")));
    }
    Ok(())
}

/// `min(k, κ(s, t))` for all `s` in `sources`, `t` in `sinks`, correct with
/// high probability.
pub fn kstmvc(
    g: &MultiDigraph,
    sources: &[Vertex],
    sinks: &[Vertex],
    k: usize,
    seed: u64,
) -> Result<ConnectivityReport> {
    kstmvc_with(g, sources, sinks, k, seed, &NetcodingConfig::default())
}

pub fn kstmvc_with(
    g: &MultiDigraph,
    sources: &[Vertex],
    sinks: &[Vertex],
    k: usize,
    seed: u64,
    cfg: &NetcodingConfig,
) -> Result<ConnectivityReport> {
    check_vertices(g, sources, "source")?;
    check_vertices(g, sinks, "sink")?;
    check_prime(cfg.prime)?;
    let gadget = build_gadget(g, sources, sinks, k);
    let mut retries = 0;
    let (finv, used) = loop {
        let used = seed.wrapping_add(retries as u64 * 0x9E37_79B9_7F4A_7C15);
        let coef = build_vertex_coefficients(&gadget.graph, used, cfg.prime);
        match invert_i_minus_k(&coef) {
            Ok(f) => break (f, used),
            Err(Error::Singular) if retries < cfg.max_retries => retries += 1,
            Err(e) => return Err(e),
        }
    };
    let values = sources
        .iter()
        .zip(&gadget.source_layers)
        .map(|(&s, ls)| {
            sinks
                .iter()
                .zip(&gadget.sink_layers)
                .map(|(&t, lt)| (s != t).then(|| finv.submatrix_rank(ls, lt).min(k)))
                .collect()
        })
        .collect();
    Ok(ConnectivityReport {
        k,
        sources: sources.to_vec(),
        sinks: sinks.to_vec(),
        values,
        seed: used,
        retries,
    })
}

pub fn kapmvc(g: &MultiDigraph, k: usize, seed: u64) -> Result<ConnectivityReport> {
    kapmvc_with(g, k, seed, &NetcodingConfig::default())
}

pub fn kapmvc_with(
    g: &MultiDigraph,
    k: usize,
    seed: u64,
    cfg: &NetcodingConfig,
) -> Result<ConnectivityReport> {
    let all: Vec<Vertex> = (0..g.n()).collect();
    kstmvc_with(g, &all, &all, k, seed, cfg)
}

/// `min(k, λ(s, t))` for arc capacities: every arc becomes a vertex and
/// every vertex `k` parallel copies, so only arcs can be cut below `k`.
/// Copy 0 of each vertex serves as its source and sink.
pub fn kapmc_arcs_with(
    g: &MultiDigraph,
    k: usize,
    seed: u64,
    cfg: &NetcodingConfig,
) -> Result<ConnectivityReport> {
    let n = g.n();
    let copies = k.max(1);
    let base = n * copies;
    let mut pairs = Vec::with_capacity(2 * copies * g.m());
    for (i, a) in g.arcs().iter().enumerate() {
        for c in 0..copies {
            pairs.push((a.tail * copies + c, base + i));
            pairs.push((base + i, a.head * copies + c));
        }
    }
    let expanded = MultiDigraph::new(base + g.m(), &pairs).expect("expansion is valid");
    let all: Vec<Vertex> = (0..n).map(|v| v * copies).collect();
    let mut rep = kstmvc_with(&expanded, &all, &all, k, seed, cfg)?;
    rep.sources = (0..n).collect();
    rep.sinks = (0..n).collect();
    Ok(rep)
}
