//! Superimposed codes: a Kautz–Singleton (Reed–Solomon) code, a parity code
//! detecting unions of two codewords, and their product which decodes fast.
//! Submodules hold tensor-power codewords and the witness decoder.

mod decode;
mod tensor;

pub use decode::{collapse, decode_witness, decode_witness_with, DecodeOptions};
pub use tensor::{encode_family, BoxCodeword, Codeword, DenseCodeword, DENSE_MAX_BITS};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

const MAX_FIELD: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeKind {
    /// Polynomials of degree `< ell` over GF(`field`), evaluated everywhere.
    KautzSingleton { field: usize, ell: usize },
    /// `bits` two-bit blocks `(b, 1 - b)`, most significant bit first.
    Parity { bits: usize },
    /// Product of a Kautz–Singleton outer code and a parity inner code.
    Fast { outer_len: usize, inner_len: usize },
}

/// A binary code `[u] -> 2^[q]` for which unions of at most `d` codewords
/// determine their constituents.
#[derive(Debug, Clone)]
pub struct SuperimposedCode {
    u: usize,
    q: usize,
    d: usize,
    kind: CodeKind,
    words: Vec<FixedBitSet>,
    owners: Vec<Vec<usize>>,
    parts: Option<Box<(SuperimposedCode, SuperimposedCode)>>,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= p {
        if p.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

fn next_prime(mut p: u64) -> u64 {
    while !is_prime(p) {
        p += 1;
    }
    p
}

/// Smallest `r` with `r^ell >= u`.
fn int_root_ceil(u: u64, ell: u32) -> u64 {
    let mut r = (u as f64).powf(1.0 / ell as f64).floor().max(1.0) as u64;
    while r.checked_pow(ell).is_some_and(|v| v < u) {
        r += 1;
    }
    while r > 1 && (r - 1).checked_pow(ell).is_none_or(|v| v >= u) {
        r -= 1;
    }
    r
}

/// `(field, ell)` minimising the field size subject to
/// `field > d(ell - 1)` and `field^ell >= u`; ties go to the smaller `ell`.
pub fn ks_parameters(d: usize, u: usize) -> Result<(usize, usize)> {
    let (d, u) = (d as u64, u as u64);
    let mut best: Option<(u64, u64)> = None;
    for ell in 1..=64u64 {
        let lower = (d * (ell - 1) + 1).max(int_root_ceil(u, ell as u32)).max(2);
        if lower > MAX_FIELD || best.is_some_and(|(q, _)| lower >= q) {
            continue;
        }
        let q = next_prime(lower);
        if q <= MAX_FIELD && best.is_none_or(|(b, _)| q < b) {
            best = Some((q, ell));
        }
    }
    let (q, ell) = best.ok_or_else(|| {
        Error::ParameterOverflow(format!(
            "no prime field of size <= {MAX_FIELD} fits d={d}, u={u}"
        ))
    })?;
    Ok((q as usize, ell as usize))
}

impl SuperimposedCode {
    fn from_words(u: usize, q: usize, d: usize, kind: CodeKind, words: Vec<FixedBitSet>) -> Self {
        let mut owners = vec![Vec::new(); q];
        for (x, w) in words.iter().enumerate() {
            for r in w.ones() {
                owners[r].push(x);
            }
        }
        SuperimposedCode {
            u,
            q,
            d,
            kind,
            words,
            owners,
            parts: None,
        }
    }

    /// Reed–Solomon based code: element `w` is the polynomial whose
    /// coefficients are the base-`Q` digits of `w`; evaluation `(i, f(i))`
    /// sets bit `i * Q + f(i)`.
    pub fn kautz_singleton(d: usize, u: usize) -> Result<Self> {
        if d == 0 || u < 2 {
            return Err(Error::InvalidArgument(format!(
                "need d >= 1 and u >= 2, got d={d} u={u}"
            )));
        }
        let (field, ell) = ks_parameters(d, u)?;
        let q = field * field;
        let words = (0..u)
            .map(|w| {
                let mut coef = Vec::with_capacity(ell);
                let mut rest = w;
                for _ in 0..ell {
                    coef.push(rest % field);
                    rest /= field;
                }
                let mut bits = FixedBitSet::with_capacity(q);
                for i in 0..field {
                    let fi = coef.iter().rev().fold(0, |acc, &c| (acc * i + c) % field);
                    bits.insert(i * field + fi);
                }
                bits
            })
            .collect();
        Ok(Self::from_words(
            u,
            q,
            d,
            CodeKind::KautzSingleton { field, ell },
            words,
        ))
    }

    /// Each bit `b` of the binary form becomes the block `(b, 1 - b)`.
    pub fn parity(u: usize) -> Result<Self> {
        if u < 2 {
            return Err(Error::InvalidArgument(format!("need u >= 2, got {u}")));
        }
        let bits = (usize::BITS - (u - 1).leading_zeros()) as usize;
        let q = 2 * bits;
        let words = (0..u)
            .map(|w| {
                let mut s = FixedBitSet::with_capacity(q);
                for i in 0..bits {
                    let bit = (w >> (bits - 1 - i)) & 1;
                    s.insert(2 * i + (1 - bit));
                }
                s
            })
            .collect();
        Ok(Self::from_words(u, q, 1, CodeKind::Parity { bits }, words))
    }

    /// Kautz–Singleton outer code tensored with the parity inner code on the
    /// same element: position `(i, j)` is `i * inner_len + j`.
    pub fn fast(d: usize, u: usize) -> Result<Self> {
        let outer = Self::kautz_singleton(d, u)?;
        let inner = Self::parity(u)?;
        let (ql, qr) = (outer.q, inner.q);
        let q = ql * qr;
        let words = (0..u)
            .map(|w| {
                let mut s = FixedBitSet::with_capacity(q);
                for i in outer.words[w].ones() {
                    for j in inner.words[w].ones() {
                        s.insert(i * qr + j);
                    }
                }
                s
            })
            .collect();
        let mut code = Self::from_words(
            u,
            q,
            d,
            CodeKind::Fast {
                outer_len: ql,
                inner_len: qr,
            },
            words,
        );
        code.parts = Some(Box::new((outer, inner)));
        Ok(code)
    }

    pub fn u(&self) -> usize {
        self.u
    }

    /// Code length.
    pub fn len(&self) -> usize {
        self.q
    }

    pub fn is_empty(&self) -> bool {
        self.q == 0
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn kind(&self) -> &CodeKind {
        &self.kind
    }

    pub fn encode(&self, x: usize) -> &FixedBitSet {
        &self.words[x]
    }

    /// Union of the codewords of `xs`.
    pub fn encode_set(&self, xs: &[usize]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.q);
        for &x in xs {
            s.union_with(&self.words[x]);
        }
        s
    }

    fn check_len(&self, s: &FixedBitSet) -> Result<()> {
        if s.len() != self.q {
            return Err(Error::DimensionMismatch(format!(
                "word of length {} for code of length {}",
                s.len(),
                self.q
            )));
        }
        Ok(())
    }

    /// The set `X` with `|X| <= d` whose codeword union is `s`.
    pub fn decode(&self, s: &FixedBitSet) -> Result<Vec<usize>> {
        self.check_len(s)?;
        match self.kind {
            CodeKind::KautzSingleton { .. } => {
                let xs: Vec<usize> = (0..self.u)
                    .filter(|&x| self.words[x].is_subset(s))
                    .collect();
                if xs.len() <= self.d && self.encode_set(&xs) == *s {
                    Ok(xs)
                } else {
                    Err(Error::NotDecodable)
                }
            }
            CodeKind::Parity { bits } => {
                if s.count_ones(..) == 0 {
                    return Ok(Vec::new());
                }
                let mut w = 0usize;
                for i in 0..bits {
                    let (one, zero) = (s.contains(2 * i), s.contains(2 * i + 1));
                    if one == zero {
                        return Err(Error::NotACodeword);
                    }
                    w = (w << 1) | one as usize;
                }
                if w < self.u {
                    Ok(vec![w])
                } else {
                    Err(Error::NotACodeword)
                }
            }
            CodeKind::Fast {
                outer_len,
                inner_len,
            } => {
                let (_, inner) = &**self.parts.as_ref().expect("fast code keeps its parts");
                let mut xs = Vec::new();
                let mut column = FixedBitSet::with_capacity(inner_len);
                for i in 0..outer_len {
                    column.clear();
                    let mut any = false;
                    for j in s
                        .ones()
                        .skip_while(|&r| r < i * inner_len)
                        .take_while(|&r| r < (i + 1) * inner_len)
                    {
                        column.insert(j - i * inner_len);
                        any = true;
                    }
                    if any {
                        if let Ok(v) = inner.decode(&column) {
                            xs.extend(v);
                        }
                    }
                }
                xs.sort_unstable();
                xs.dedup();
                if xs.len() <= self.d && self.encode_set(&xs) == *s {
                    Ok(xs)
                } else {
                    Err(Error::NotDecodable)
                }
            }
        }
    }

    /// Whether `s` fits inside the codeword union of some set of at most `k`
    /// elements.
    pub fn coverable(&self, s: &FixedBitSet, k: usize) -> bool {
        fn rec(code: &SuperimposedCode, left: &FixedBitSet, k: usize) -> bool {
            let Some(r) = left.ones().min_by_key(|&r| code.owners[r].len()) else {
                return true;
            };
            if k == 0 {
                return false;
            }
            code.owners[r].iter().any(|&x| {
                let mut rest = left.clone();
                rest.difference_with(&code.words[x]);
                rec(code, &rest, k - 1)
            })
        }
        rec(self, s, k)
    }

    /// Exhaustive check that no codeword lies inside a union of at most `d`
    /// others.
    pub fn verify_superimposed(&self, d: usize) -> bool {
        fn rec(code: &SuperimposedCode, from: usize, d: usize, xs: &mut Vec<usize>) -> bool {
            let union = code.encode_set(xs);
            let ok = (0..code.u)
                .filter(|y| !xs.contains(y))
                .all(|y| !code.words[y].is_subset(&union));
            if !ok {
                return false;
            }
            if xs.len() == d {
                return true;
            }
            (from..code.u).all(|x| {
                xs.push(x);
                let r = rec(code, x + 1, d, xs);
                xs.pop();
                r
            })
        }
        rec(self, 0, d, &mut Vec::new())
    }
}
