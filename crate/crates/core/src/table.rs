//! All-pairs result containers shared by every solver.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cuts::CutFamily;
use crate::graph::Vertex;

/// A k-capped cut value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CutValue {
    Exact(usize),
    AboveK,
}

impl CutValue {
    pub fn capped(v: usize, k: usize) -> Self {
        if v <= k {
            CutValue::Exact(v)
        } else {
            CutValue::AboveK
        }
    }

    /// Re-caps at a smaller bound.
    pub fn restrict(self, k: usize) -> Self {
        match self {
            CutValue::Exact(v) => CutValue::capped(v, k),
            CutValue::AboveK => CutValue::AboveK,
        }
    }
}

/// `n x n` matrix of k-capped values; the diagonal is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueMatrix {
    n: usize,
    k: usize,
    values: Vec<Option<CutValue>>,
}

impl ValueMatrix {
    pub fn new(n: usize, k: usize) -> Self {
        ValueMatrix {
            n,
            k,
            values: vec![None; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, s: Vertex, t: Vertex) -> Option<CutValue> {
        self.values[s * self.n + t]
    }

    pub fn set(&mut self, s: Vertex, t: Vertex, v: CutValue) {
        assert_ne!(s, t, "diagonal has no value");
        self.values[s * self.n + t] = Some(v);
    }

    pub fn restrict(&self, k: usize) -> ValueMatrix {
        ValueMatrix {
            n: self.n,
            k,
            values: self
                .values
                .iter()
                .map(|v| v.map(|c| c.restrict(k)))
                .collect(),
        }
    }

    /// First pair where the two matrices disagree.
    pub fn first_difference(&self, other: &ValueMatrix) -> Option<(Vertex, Vertex)> {
        if self.n != other.n {
            return Some((0, 0));
        }
        (0..self.n * self.n)
            .find(|&i| self.values[i] != other.values[i])
            .map(|i| (i / self.n, i % self.n))
    }

    /// Tab-separated rows; `-` on the diagonal, `>k` above the cap.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for s in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|t| match self.get(s, t) {
                    None => "-".to_string(),
                    Some(CutValue::Exact(v)) => v.to_string(),
                    Some(CutValue::AboveK) => format!(">{}", self.k),
                })
                .collect();
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }

    /// Rows of JSON values: integers, `null` on the diagonal, `">k"` above the cap.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..self.n)
            .map(|s| {
                (0..self.n)
                    .map(|t| match self.get(s, t) {
                        None => serde_json::Value::Null,
                        Some(CutValue::Exact(v)) => v.into(),
                        Some(CutValue::AboveK) => format!(">{}", self.k).into(),
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({ "n": self.n, "k": self.k, "values": rows })
    }
}

impl fmt::Display for ValueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tsv())
    }
}

/// Per-pair latest <=k-cut families with their order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApmcTable {
    n: usize,
    k: usize,
    families: Vec<Option<CutFamily>>,
}

impl ApmcTable {
    pub fn new(n: usize, k: usize) -> Self {
        ApmcTable {
            n,
            k,
            families: vec![None; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn family(&self, s: Vertex, t: Vertex) -> Option<&CutFamily> {
        self.families[s * self.n + t].as_ref()
    }

    pub fn set_family(&mut self, s: Vertex, t: Vertex, fam: CutFamily) {
        assert_ne!(s, t, "diagonal has no family");
        self.families[s * self.n + t] = Some(fam);
    }

    pub fn value(&self, s: Vertex, t: Vertex) -> Option<CutValue> {
        self.family(s, t).map(|f| f.value())
    }

    pub fn values(&self) -> ValueMatrix {
        let mut vm = ValueMatrix::new(self.n, self.k);
        for s in 0..self.n {
            for t in 0..self.n {
                if let Some(v) = self.value(s, t) {
                    vm.set(s, t, v);
                }
            }
        }
        vm
    }

    /// Keeps only cuts of size at most `k`.
    pub fn restrict(&self, k: usize) -> ApmcTable {
        ApmcTable {
            n: self.n,
            k,
            families: self
                .families
                .iter()
                .map(|f| f.as_ref().map(|f| f.restrict(k)))
                .collect(),
        }
    }

    pub fn is_complete(&self) -> bool {
        (0..self.n * self.n).all(|i| (i / self.n == i % self.n) == self.families[i].is_none())
    }
}
