//! Integral symmetric bilinear forms and the plumbing-type intersection
//! forms of branched-cover fillings.
//!
//! Basis convention for [`GramForm::intersection_form`]: the basis vector in
//! block `k` (0-based, `k < n`) with cyclic index `i` (0-based, `i < p`) has
//! index `k * p + i`. Block 0 carries the circulant block; blocks `1..n` are
//! the `-2` chains.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::linalg;
use crate::scalar::{parse_decimal, Scalar};

/// A symmetric integer matrix of dimension at least one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GramForm<T> {
    dim: usize,
    entries: Vec<T>,
}

impl<T: Scalar> GramForm<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Shape("a form needs dimension at least 1".into()));
        }
        if let Some(r) = rows.iter().position(|r| r.len() != dim) {
            return Err(Error::Shape(format!("row {r} has length {}, expected {dim}", rows[r].len())));
        }
        let entries: Vec<T> = rows.into_iter().flatten().collect();
        for i in 0..dim {
            for j in i + 1..dim {
                if entries[i * dim + j] != entries[j * dim + i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(GramForm { dim, entries })
    }

    /// Convenience constructor from small literals.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| T::from_int(x)).collect()).collect())
    }

    fn zeros(dim: usize) -> Self {
        GramForm { dim, entries: vec![T::zero(); dim * dim] }
    }

    fn set_sym(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.dim + j] = v.clone();
        self.entries[j * self.dim + i] = v;
    }

    /// `r` copies of `<-1>`.
    pub fn standard_negative(r: usize) -> Result<Self> {
        if r == 0 {
            return param("rank must be positive");
        }
        let mut g = Self::zeros(r);
        for i in 0..r {
            g.set_sym(i, i, -T::one());
        }
        Ok(g)
    }

    /// The `p x p` circulant block: `2m - 1` on the diagonal, `-m` between
    /// cyclic neighbours `i` and `i +- 1 (mod p)`.
    pub fn circulant_block(m: i64, p: usize) -> Result<Self> {
        check_domain(m, 1, p)?;
        let mut g = Self::zeros(p);
        for i in 0..p {
            g.set_sym(i, i, T::from_int(2 * m - 1));
            g.set_sym(i, (i + 1) % p, T::from_int(-m));
        }
        Ok(g)
    }

    /// The `np x np` intersection form: circulant block in position (0,0),
    /// `-2 I_p` on the remaining diagonal blocks and `I_p` on the first off-diagonal
    /// blocks.
    pub fn intersection_form(m: i64, n: i64, p: usize) -> Result<Self> {
        check_domain(m, n, p)?;
        let n = n as usize;
        let dim = n * p;
        let circ = Self::circulant_block(m, p)?;
        let mut g = Self::zeros(dim);
        for i in 0..p {
            for j in 0..p {
                g.entries[i * dim + j] = circ.get(i, j).clone();
            }
        }
        for k in 1..n {
            for i in 0..p {
                let a = k * p + i;
                g.set_sym(a, a, T::from_int(-2));
                g.set_sym(a - p, a, T::one());
            }
        }
        Ok(g)
    }

    pub fn direct_sum(forms: &[Self]) -> Result<Self> {
        if forms.is_empty() {
            return param("direct sum of an empty list");
        }
        let dim = forms.iter().map(|f| f.dim).sum();
        let mut g = Self::zeros(dim);
        let mut off = 0;
        for f in forms {
            for i in 0..f.dim {
                for j in 0..f.dim {
                    g.entries[(off + i) * dim + off + j] = f.get(i, j).clone();
                }
            }
            off += f.dim;
        }
        Ok(g)
    }

    /// `copies` copies of `self` as a block-diagonal form.
    pub fn repeat(&self, copies: usize) -> Result<Self> {
        Self::direct_sum(&vec![self.clone(); copies])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.dim).map(|i| self.get(i, i).clone()).collect()
    }

    /// `true` iff the leading principal minors alternate in sign starting
    /// negative. Exact.
    pub fn is_negative_definite(&self) -> bool {
        let minors = linalg::leading_minors(&self.rows());
        minors.len() == self.dim
            && minors.iter().enumerate().all(|(k, d)| if k % 2 == 0 { d.is_negative() } else { d.is_positive() })
    }

    /// Exact for every scalar type; the value may exceed the entry type.
    pub fn determinant(&self) -> BigInt {
        linalg::determinant(&self.rows())
    }

    /// `(positive, negative, zero)` eigenvalue counts.
    pub fn inertia(&self) -> (usize, usize, usize) {
        linalg::inertia(&self.rows())
    }

    /// Conjugate by the signed permutation sending basis vector `i` to
    /// `signs[i] * e_{perm[i]}`. The result is isometric to `self`.
    pub fn signed_permuted(&self, perm: &[usize], signs: &[i8]) -> Result<Self> {
        if perm.len() != self.dim || signs.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: perm.len() });
        }
        let mut seen = vec![false; self.dim];
        for &p in perm {
            if p >= self.dim || std::mem::replace(&mut seen[p], true) {
                return param("not a permutation");
            }
        }
        let mut g = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut v = self.get(i, j).clone();
                if signs[i] * signs[j] < 0 {
                    v = -v;
                }
                g.entries[perm[i] * self.dim + perm[j]] = v;
            }
        }
        Ok(g)
    }

    pub fn negated(&self) -> Self {
        GramForm { dim: self.dim, entries: self.entries.iter().map(|x| -x.clone()).collect() }
    }

    pub fn convert<U: Scalar>(&self) -> Result<GramForm<U>> {
        let entries = self
            .entries
            .iter()
            .map(|x| parse_decimal::<U>(&x.to_string()).map_err(|_| Error::Overflow(x.to_string())))
            .collect::<Result<Vec<U>>>()?;
        Ok(GramForm { dim: self.dim, entries })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("form serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn check_domain(m: i64, n: i64, p: usize) -> Result<()> {
    if m >= 0 {
        return param(format!("m must be negative, got {m}"));
    }
    if n < 1 {
        return param(format!("n must be positive, got {n}"));
    }
    if p < 3 {
        return param(format!("p must be at least 3, got {p}"));
    }
    Ok(())
}

impl<T: Scalar> fmt::Display for GramForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.entries.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for i in 0..self.dim {
            let cells: Vec<String> = self.row(i).iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct FormWire {
    dim: usize,
    rows: Vec<Vec<String>>,
}

impl<T: Scalar> Serialize for GramForm<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormWire {
            dim: self.dim,
            rows: (0..self.dim).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for GramForm<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = FormWire::deserialize(d)?;
        let rows = wire
            .rows
            .iter()
            .map(|r| r.iter().map(|x| parse_decimal::<T>(x)).collect::<Result<Vec<T>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        if rows.len() != wire.dim {
            return Err(D::Error::custom(format!("dim {} but {} rows", wire.dim, rows.len())));
        }
        GramForm::from_rows(rows).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = GramForm<i64>;

    #[test]
    fn circulant_small_cases() {
        let q = F::circulant_block(-1, 3).unwrap();
        assert_eq!(q.rows(), vec![vec![-3, 1, 1], vec![1, -3, 1], vec![1, 1, -3]]);

        let q = F::circulant_block(-2, 5).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let d = (i as i64 - j as i64).rem_euclid(5);
                let want = match d {
                    0 => -5,
                    1 | 4 => 2,
                    _ => 0,
                };
                assert_eq!(*q.get(i, j), want, "({i},{j})");
            }
        }

        let q = F::circulant_block(-1, 4).unwrap();
        assert_eq!(*q.get(0, 2), 0);
        assert_eq!(*q.get(1, 3), 0);
        assert_eq!(*q.get(0, 3), 1);
    }

    #[test]
    fn domain_errors() {
        assert!(F::circulant_block(-1, 2).is_err());
        assert!(F::circulant_block(0, 3).is_err());
        assert!(F::circulant_block(2, 5).is_err());
        assert!(F::intersection_form(-1, 0, 3).is_err());
        assert!(F::direct_sum(&[]).is_err());
        assert!(F::from_i64_rows(&[vec![1, 2], vec![3, 4]]).is_err());
        assert!(F::from_i64_rows(&[]).is_err());
    }

    #[test]
    fn block_display_layout() {
        let q = F::intersection_form(-1, 2, 3).unwrap();
        let want = vec![
            vec![-3, 1, 1, 1, 0, 0],
            vec![1, -3, 1, 0, 1, 0],
            vec![1, 1, -3, 0, 0, 1],
            vec![1, 0, 0, -2, 0, 0],
            vec![0, 1, 0, 0, -2, 0],
            vec![0, 0, 1, 0, 0, -2],
        ];
        assert_eq!(q.rows(), want);
        assert_eq!(F::intersection_form(-1, 1, 3).unwrap(), F::circulant_block(-1, 3).unwrap());
        let big = F::intersection_form(-3, 4, 3).unwrap();
        assert_eq!(big.dim(), 12);
        assert_eq!(*big.get(11, 11), -2);
        assert_eq!(*big.get(8, 11), 1);
        assert_eq!(*big.get(5, 11), 0);
    }

    #[test]
    fn row_nonzero_counts() {
        for &(m, n, p) in &[(-1i64, 3i64, 3usize), (-2, 4, 5), (-3, 2, 7), (-1, 5, 4)] {
            let q = F::intersection_form(m, n, p).unwrap();
            for r in 0..q.dim() {
                let k = r / p;
                let circ = if k == 0 { 3 } else { 1 };
                let coupling = usize::from(k > 0) + usize::from(k + 1 < n as usize);
                let nz = q.row(r).iter().filter(|x| **x != 0).count();
                assert_eq!(nz, circ + coupling, "(m,n,p)=({m},{n},{p}) row {r}");
            }
        }
    }

    #[test]
    fn definiteness_examples() {
        assert!(F::from_i64_rows(&[vec![-2, 1], vec![1, -2]]).unwrap().is_negative_definite());
        assert!(!F::from_i64_rows(&[vec![-2, 2], vec![2, -2]]).unwrap().is_negative_definite());
        assert!(!F::from_i64_rows(&[vec![2]]).unwrap().is_negative_definite());
        assert!(F::intersection_form(-1, 3, 3).unwrap().is_negative_definite());
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(F::from_i64_rows(&[vec![-1]]).unwrap().determinant(), BigInt::from(-1));
        for d in 1..6 {
            let g = F::standard_negative(d).unwrap();
            assert_eq!(g.determinant(), BigInt::from(if d % 2 == 0 { 1 } else { -1 }));
        }
        // eigenvalues of the 3x3 circulant are -1, -4, -4
        assert_eq!(F::circulant_block(-1, 3).unwrap().determinant(), BigInt::from(-16));
    }

    #[test]
    fn direct_sum_cases() {
        let a = F::from_i64_rows(&[vec![-1]]).unwrap();
        let s = F::direct_sum(&[a.clone(), a.clone()]).unwrap();
        assert_eq!(s.rows(), vec![vec![-1, 0], vec![0, -1]]);
        assert_eq!(F::direct_sum(std::slice::from_ref(&a)).unwrap(), a);

        let g = GramForm::<BigInt>::intersection_form(-2, 3, 5).unwrap();
        let d = g.determinant();
        assert_eq!(g.repeat(4).unwrap().determinant(), d.pow(4));
    }

    #[test]
    fn json_shape() {
        let g = F::from_i64_rows(&[vec![-3, 1], vec![1, -2]]).unwrap();
        assert_eq!(g.to_json(), r#"{"dim":2,"rows":[["-3","1"],["1","-2"]]}"#);
        assert_eq!(F::from_json(&g.to_json()).unwrap(), g);
        assert!(F::from_json(r#"{"dim":2,"rows":[["1","2"],["3","4"]]}"#).is_err());
        assert!(F::from_json(r#"{"dim":3,"rows":[["1"]]}"#).is_err());
    }

    #[test]
    fn big_entries_survive_round_trip() {
        let huge: BigInt = "123456789012345678901234567890".parse().unwrap();
        let g = GramForm::from_rows(vec![vec![-huge.clone()]]).unwrap();
        let back: GramForm<BigInt> = GramForm::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        assert!(g.convert::<i64>().is_err());
    }
}
