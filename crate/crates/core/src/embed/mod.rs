//! Codimension-zero embeddings of negative definite forms into the standard
//! diagonal lattice `<-1>^r`.
//!
//! A form `G` of dimension `r` embeds iff there is an integer `r x r` matrix
//! `A` with `A^T A = -G`; column `j` of `A` is the image of the `j`-th basis
//! vector written in the standard basis.

mod explicit;
mod search;

pub use explicit::{example_embedding_rational, example_embedding_slice};
pub use search::{search_embedding, SearchConfig, DEFAULT_NODE_BUDGET};

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::forms::GramForm;
use crate::scalar::{parse_decimal, Scalar};

/// A square integer matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EmbeddingWitness<T> {
    dim: usize,
    columns: Vec<Vec<T>>,
}

impl<T: Scalar> EmbeddingWitness<T> {
    pub fn from_columns(columns: Vec<Vec<T>>) -> Result<Self> {
        let dim = columns.len();
        if dim == 0 {
            return Err(Error::Shape("empty witness".into()));
        }
        if let Some(c) = columns.iter().position(|c| c.len() != dim) {
            return Err(Error::Shape(format!("column {c} has length {}, expected {dim}", columns[c].len())));
        }
        Ok(EmbeddingWitness { dim, columns })
    }

    pub fn from_i64_columns(columns: &[Vec<i64>]) -> Result<Self> {
        Self::from_columns(columns.iter().map(|c| c.iter().map(|&x| T::from_int(x)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn columns(&self) -> &[Vec<T>] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &[T] {
        &self.columns[j]
    }

    /// Standard coordinates on which column `j` is nonzero.
    pub fn support(&self, j: usize) -> Vec<usize> {
        self.columns[j].iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
    }

    /// The Gram matrix `A^T A` of the columns under the standard dot product.
    pub fn gram(&self) -> Vec<Vec<T>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| dot(&self.columns[i], &self.columns[j])).collect())
            .collect()
    }

    /// Block-diagonal concatenation, matching [`GramForm::direct_sum`].
    pub fn direct_sum(parts: &[Self]) -> Result<Self> {
        if parts.is_empty() {
            return param("direct sum of an empty list");
        }
        let dim: usize = parts.iter().map(|w| w.dim).sum();
        let mut columns = Vec::with_capacity(dim);
        let mut off = 0;
        for w in parts {
            for c in &w.columns {
                let mut col = vec![T::zero(); dim];
                col[off..off + w.dim].clone_from_slice(c);
                columns.push(col);
            }
            off += w.dim;
        }
        Ok(EmbeddingWitness { dim, columns })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// `true` iff `A^T A = -G` exactly.
pub fn verify_witness<T: Scalar>(g: &GramForm<T>, a: &EmbeddingWitness<T>) -> Result<bool> {
    if g.dim() != a.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), actual: a.dim() });
    }
    let n = g.dim();
    for i in 0..n {
        for j in i..n {
            if dot(a.column(i), a.column(j)) != -g.get(i, j).clone() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All integer vectors of squared length `norm` in `dim` coordinates, in
/// ascending lexicographic order.
pub fn enumerate_vectors(norm: i64, dim: usize) -> Result<Vec<Vec<i64>>> {
    if norm < 1 || dim < 1 {
        return param("enumerate_vectors needs norm >= 1 and dim >= 1");
    }
    fn rec(rest: i64, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if left == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let r = isqrt(rest);
        for x in -r..=r {
            cur.push(x);
            rec(rest - x * x, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(norm, dim, &mut Vec::with_capacity(dim), &mut out);
    Ok(out)
}

pub(crate) fn isqrt(v: i64) -> i64 {
    if v <= 0 {
        return 0;
    }
    let mut r = (v as f64).sqrt() as i64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SearchStatus {
    Found,
    NoneExists,
    Unknown,
}

/// Result of [`search_embedding`].
///
/// `NoneExists` is only reported after the reduced search space was
/// exhausted; `Found` always carries a verified witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome<T> {
    pub status: SearchStatus,
    pub witness: Option<EmbeddingWitness<T>>,
    pub nodes_explored: u64,
    pub budget_exhausted: bool,
    /// Set when the search was short-circuited, e.g. for indefinite input.
    pub reason: Option<String>,
}

impl<T: Scalar> SearchOutcome<T> {
    pub fn found(witness: EmbeddingWitness<T>, nodes_explored: u64) -> Self {
        SearchOutcome {
            status: SearchStatus::Found,
            witness: Some(witness),
            nodes_explored,
            budget_exhausted: false,
            reason: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("outcome serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessWire {
    dim: usize,
    columns: Vec<Vec<String>>,
}

impl<T: Scalar> Serialize for EmbeddingWitness<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WitnessWire {
            dim: self.dim,
            columns: self.columns.iter().map(|c| c.iter().map(|x| x.to_string()).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for EmbeddingWitness<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = WitnessWire::deserialize(d)?;
        let columns = wire
            .columns
            .iter()
            .map(|c| c.iter().map(|x| parse_decimal::<T>(x)).collect::<Result<Vec<T>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        if columns.len() != wire.dim {
            return Err(D::Error::custom("column count does not match dim"));
        }
        EmbeddingWitness::from_columns(columns).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct OutcomeWire<T: Scalar> {
    status: SearchStatus,
    #[serde(bound(serialize = "", deserialize = ""))]
    witness: Option<EmbeddingWitness<T>>,
    nodes_explored: String,
    budget_exhausted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

impl<T: Scalar> Serialize for SearchOutcome<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OutcomeWire {
            status: self.status,
            witness: self.witness.clone(),
            nodes_explored: self.nodes_explored.to_string(),
            budget_exhausted: self.budget_exhausted,
            reason: self.reason.clone(),
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for SearchOutcome<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = OutcomeWire::<T>::deserialize(d)?;
        if (w.status == SearchStatus::Found) != w.witness.is_some() {
            return Err(D::Error::custom("witness must be present exactly for Found"));
        }
        Ok(SearchOutcome {
            status: w.status,
            witness: w.witness,
            nodes_explored: w.nodes_explored.parse().map_err(D::Error::custom)?,
            budget_exhausted: w.budget_exhausted,
            reason: w.reason,
        })
    }
}
