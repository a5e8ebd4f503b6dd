//! Subsets of `[q]^D`: a flat row-major bitset and a sparse union of boxes
//! (Cartesian products of axis sets). Encoded families are single boxes and
//! the operations used by the decoder keep box unions small, so the sparse
//! form is what the recursive algorithm runs on.

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use fixedbitset::FixedBitSet;

use super::SuperimposedCode;
use crate::error::{Error, Result};
use crate::witness::ElemSet;

/// Upper bound on `q^D` for dense codewords.
pub const DENSE_MAX_BITS: usize = 1 << 26;

pub trait Codeword: Clone + Eq + Hash + Debug {
    /// `axes[0] x axes[1] x ...`, every axis a subset of `[q]`.
    fn product(q: usize, axes: &[FixedBitSet]) -> Result<Self>;
    fn empty(q: usize, dim: usize) -> Result<Self>;
    fn base_len(&self) -> usize;
    fn dim(&self) -> usize;
    fn is_empty(&self) -> bool;
    fn contains(&self, point: &[usize]) -> bool;
    fn union(&self, other: &Self) -> Self;
    fn intersect(&self, other: &Self) -> Self;
    /// Points with coordinate `axis` equal to `value`, that coordinate removed.
    fn slice(&self, axis: usize, value: usize) -> Self;
    /// `[q]^before x self x [q]^after`.
    fn lift(&self, before: usize, after: usize) -> Result<Self>;
    /// `self x other`.
    fn concat(&self, other: &Self) -> Result<Self> {
        self.lift(0, other.dim())?
            .intersect_checked(&other.lift(self.dim(), 0)?)
    }
    /// `{r : (r, ..., r) in self}`.
    fn diagonal(&self) -> FixedBitSet;
    /// The set itself when `dim == 1`.
    fn to_set(&self) -> FixedBitSet;
    /// `self ∩ ([q] \ allowed)^D` is empty.
    fn avoids(&self, allowed: &FixedBitSet) -> bool;
    /// All distinct non-empty slices along every axis.
    fn distinct_slices(&self) -> Vec<Self>;
    /// Every point, lexicographically.
    fn points(&self) -> Vec<Vec<usize>>;

    fn intersect_checked(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() || self.base_len() != other.base_len() {
            return Err(Error::DimensionMismatch(format!(
                "{}^{} vs {}^{}",
                self.base_len(),
                self.dim(),
                other.base_len(),
                other.dim()
            )));
        }
        Ok(self.intersect(other))
    }
}

fn dense_len(q: usize, dim: usize) -> Result<usize> {
    let mut len = 1usize;
    for _ in 0..dim {
        len = len
            .checked_mul(q)
            .filter(|&l| l <= DENSE_MAX_BITS)
            .ok_or_else(|| {
                Error::LimitExceeded(format!("{q}^{dim} bits exceed the dense limit"))
            })?;
    }
    Ok(len)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DenseCodeword {
    q: usize,
    dim: usize,
    bits: FixedBitSet,
}

impl DenseCodeword {
    fn index(&self, point: &[usize]) -> usize {
        point.iter().fold(0, |acc, &c| acc * self.q + c)
    }

    fn coords(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim];
        for slot in out.iter_mut().rev() {
            *slot = idx % self.q;
            idx /= self.q;
        }
        out
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones(..)
    }
}

impl Codeword for DenseCodeword {
    fn product(q: usize, axes: &[FixedBitSet]) -> Result<Self> {
        let mut w = Self::empty(q, axes.len())?;
        let lists: Vec<Vec<usize>> = axes.iter().map(|a| a.ones().collect()).collect();
        if lists.iter().any(|l| l.is_empty()) {
            return Ok(w);
        }
        let mut pos = vec![0usize; lists.len()];
        loop {
            let idx = pos
                .iter()
                .zip(&lists)
                .fold(0, |acc, (&p, l)| acc * q + l[p]);
            w.bits.insert(idx);
            let mut ax = lists.len();
            loop {
                if ax == 0 {
                    return Ok(w);
                }
                ax -= 1;
                pos[ax] += 1;
                if pos[ax] < lists[ax].len() {
                    break;
                }
                pos[ax] = 0;
            }
        }
    }

    fn empty(q: usize, dim: usize) -> Result<Self> {
        Ok(DenseCodeword {
            q,
            dim,
            bits: FixedBitSet::with_capacity(dense_len(q, dim)?),
        })
    }

    fn base_len(&self) -> usize {
        self.q
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    fn contains(&self, point: &[usize]) -> bool {
        self.bits.contains(self.index(point))
    }

    fn union(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        DenseCodeword { bits, ..*self }
    }

    fn intersect(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        DenseCodeword { bits, ..*self }
    }

    fn slice(&self, axis: usize, value: usize) -> Self {
        let mut out = DenseCodeword {
            q: self.q,
            dim: self.dim - 1,
            bits: FixedBitSet::with_capacity(self.bits.len() / self.q),
        };
        for idx in self.bits.ones() {
            let mut c = self.coords(idx);
            if c[axis] == value {
                c.remove(axis);
                let j = out.index(&c);
                out.bits.insert(j);
            }
        }
        out
    }

    fn lift(&self, before: usize, after: usize) -> Result<Self> {
        let mut out = Self::empty(self.q, before + self.dim + after)?;
        let inner = self.bits.len();
        let outer_after = dense_len(self.q, after)?;
        let outer_before = dense_len(self.q, before)?;
        for b in 0..outer_before {
            for idx in self.bits.ones() {
                for a in 0..outer_after {
                    out.bits.insert((b * inner + idx) * outer_after + a);
                }
            }
        }
        Ok(out)
    }

    fn diagonal(&self) -> FixedBitSet {
        let mut d = FixedBitSet::with_capacity(self.q);
        for r in 0..self.q {
            if self.contains(&vec![r; self.dim]) {
                d.insert(r);
            }
        }
        d
    }

    fn to_set(&self) -> FixedBitSet {
        assert_eq!(self.dim, 1, "to_set needs a one-dimensional codeword");
        self.bits.clone()
    }

    fn avoids(&self, allowed: &FixedBitSet) -> bool {
        self.bits
            .ones()
            .all(|idx| self.coords(idx).iter().any(|&c| allowed.contains(c)))
    }

    fn distinct_slices(&self) -> Vec<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for axis in 0..self.dim {
            for value in 0..self.q {
                let s = self.slice(axis, value);
                if !s.is_empty() && seen.insert(s.clone()) {
                    out.push(s);
                }
            }
        }
        out
    }

    fn points(&self) -> Vec<Vec<usize>> {
        self.bits.ones().map(|i| self.coords(i)).collect()
    }
}

/// Union of boxes. Boxes with an empty axis are dropped and boxes contained
/// in another are absorbed, so equal representations mean equal sets but
/// not conversely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoxCodeword {
    q: usize,
    dim: usize,
    boxes: Vec<Vec<FixedBitSet>>,
}

fn box_subset(a: &[FixedBitSet], b: &[FixedBitSet]) -> bool {
    a.iter().zip(b).all(|(x, y)| x.is_subset(y))
}

impl BoxCodeword {
    fn normalized(q: usize, dim: usize, mut boxes: Vec<Vec<FixedBitSet>>) -> Self {
        boxes.retain(|b| b.iter().all(|a| !a.is_clear()));
        boxes.sort();
        boxes.dedup();
        let keep: Vec<bool> = (0..boxes.len())
            .map(|i| !(0..boxes.len()).any(|j| j != i && box_subset(&boxes[i], &boxes[j])))
            .collect();
        let boxes = boxes
            .into_iter()
            .zip(keep)
            .filter_map(|(b, k)| k.then_some(b))
            .collect();
        BoxCodeword { q, dim, boxes }
    }

    pub fn boxes(&self) -> &[Vec<FixedBitSet>] {
        &self.boxes
    }

    pub fn to_dense(&self) -> Result<DenseCodeword> {
        let mut out = DenseCodeword::empty(self.q, self.dim)?;
        for b in &self.boxes {
            out = out.union(&DenseCodeword::product(self.q, b)?);
        }
        Ok(out)
    }

    fn full_axis(&self) -> FixedBitSet {
        let mut f = FixedBitSet::with_capacity(self.q);
        f.insert_range(..);
        f
    }
}

impl Codeword for BoxCodeword {
    fn product(q: usize, axes: &[FixedBitSet]) -> Result<Self> {
        if let Some(a) = axes.iter().find(|a| a.len() != q) {
            return Err(Error::DimensionMismatch(format!(
                "axis of length {} for base {q}",
                a.len()
            )));
        }
        Ok(Self::normalized(q, axes.len(), vec![axes.to_vec()]))
    }

    fn empty(q: usize, dim: usize) -> Result<Self> {
        Ok(BoxCodeword {
            q,
            dim,
            boxes: Vec::new(),
        })
    }

    fn base_len(&self) -> usize {
        self.q
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    fn contains(&self, point: &[usize]) -> bool {
        self.boxes
            .iter()
            .any(|b| b.iter().zip(point).all(|(a, &c)| a.contains(c)))
    }

    fn union(&self, other: &Self) -> Self {
        let mut boxes = self.boxes.clone();
        boxes.extend(other.boxes.iter().cloned());
        Self::normalized(self.q, self.dim, boxes)
    }

    fn intersect(&self, other: &Self) -> Self {
        let mut boxes = Vec::new();
        for a in &self.boxes {
            for b in &other.boxes {
                boxes.push(
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| {
                            let mut z = x.clone();
                            z.intersect_with(y);
                            z
                        })
                        .collect(),
                );
            }
        }
        Self::normalized(self.q, self.dim, boxes)
    }

    fn slice(&self, axis: usize, value: usize) -> Self {
        let boxes = self
            .boxes
            .iter()
            .filter(|b| b[axis].contains(value))
            .map(|b| {
                let mut b = b.clone();
                b.remove(axis);
                b
            })
            .collect();
        Self::normalized(self.q, self.dim - 1, boxes)
    }

    fn lift(&self, before: usize, after: usize) -> Result<Self> {
        let full = self.full_axis();
        let boxes = self
            .boxes
            .iter()
            .map(|b| {
                let mut out = vec![full.clone(); before];
                out.extend(b.iter().cloned());
                out.extend(std::iter::repeat_n(full.clone(), after));
                out
            })
            .collect();
        Ok(BoxCodeword {
            q: self.q,
            dim: before + self.dim + after,
            boxes,
        })
    }

    fn concat(&self, other: &Self) -> Result<Self> {
        if self.q != other.q {
            return Err(Error::DimensionMismatch(format!(
                "base {} vs {}",
                self.q, other.q
            )));
        }
        let mut boxes = Vec::with_capacity(self.boxes.len() * other.boxes.len());
        for a in &self.boxes {
            for b in &other.boxes {
                let mut c = a.clone();
                c.extend(b.iter().cloned());
                boxes.push(c);
            }
        }
        Ok(Self::normalized(self.q, self.dim + other.dim, boxes))
    }

    fn diagonal(&self) -> FixedBitSet {
        let mut d = FixedBitSet::with_capacity(self.q);
        for b in &self.boxes {
            let mut x = self.full_axis();
            for a in b {
                x.intersect_with(a);
            }
            d.union_with(&x);
        }
        d
    }

    fn to_set(&self) -> FixedBitSet {
        assert_eq!(self.dim, 1, "to_set needs a one-dimensional codeword");
        let mut s = FixedBitSet::with_capacity(self.q);
        for b in &self.boxes {
            s.union_with(&b[0]);
        }
        s
    }

    fn avoids(&self, allowed: &FixedBitSet) -> bool {
        self.boxes
            .iter()
            .all(|b| b.iter().any(|a| a.is_subset(allowed)))
    }

    fn distinct_slices(&self) -> Vec<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for axis in 0..self.dim {
            // Values with the same set of containing boxes give the same slice.
            let mut sigs = HashSet::new();
            for value in 0..self.q {
                let sig: Vec<usize> = (0..self.boxes.len())
                    .filter(|&i| self.boxes[i][axis].contains(value))
                    .collect();
                if sig.is_empty() || !sigs.insert(sig) {
                    continue;
                }
                let s = self.slice(axis, value);
                if seen.insert(s.clone()) {
                    out.push(s);
                }
            }
        }
        out
    }

    fn points(&self) -> Vec<Vec<usize>> {
        let mut pts: Vec<Vec<usize>> = self.to_dense().map(|d| d.points()).unwrap_or_default();
        pts.sort();
        pts
    }
}

/// `C(F_1) x ... x C(F_K)`, padding the family to `K` members with copies
/// of its first member.
pub fn encode_family<C: Codeword>(
    code: &SuperimposedCode,
    big_k: usize,
    family: &[ElemSet],
) -> Result<C> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    if family.len() > big_k {
        return Err(Error::LimitExceeded(format!(
            "family of {} sets exceeds K = {big_k}",
            family.len()
        )));
    }
    if let Some(x) = family.iter().flatten().find(|&&x| x >= code.u()) {
        return Err(Error::InvalidArgument(format!(
            "element {x} outside universe of {}",
            code.u()
        )));
    }
    let mut axes: Vec<FixedBitSet> = family.iter().map(|f| code.encode_set(f)).collect();
    let pad = code.encode_set(first);
    axes.resize(big_k, pad);
    C::product(code.len(), &axes)
}
