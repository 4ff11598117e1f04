use nalgebra::{Complex, DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{parse_decimal, Scalar};

/// A square integer matrix `V` with `det(V - V^T) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertMatrix<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> SeifertMatrix<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("Seifert matrix must be square".into()));
        }
        let skew: Vec<Vec<T>> = (0..n)
            .map(|i| (0..n).map(|j| rows[i][j].clone() - rows[j][i].clone()).collect())
            .collect();
        let det = linalg::determinant(&skew);
        if !det.is_one() {
            return Err(Error::Parameter(format!("det(V - V^T) = {det}, expected 1")));
        }
        Ok(SeifertMatrix { rows })
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    fn at(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    /// `det(V - t V^T)`, normalized to lowest exponent 0 and positive leading
    /// coefficient.
    ///
    /// The determinant has degree at most `size`, so it is recovered exactly
    /// from its values at `t = 0, 1, ..., size` by Newton interpolation.
    pub fn alexander(&self) -> LaurentPoly<T> {
        let n = self.size();
        let values: Vec<BigInt> = (0..=n as i64)
            .map(|t| {
                let t = T::from_int(t);
                let m: Vec<Vec<T>> = (0..n)
                    .map(|i| (0..n).map(|j| self.at(i, j).clone() - t.clone() * self.at(j, i).clone()).collect())
                    .collect();
                linalg::determinant(&m)
            })
            .collect();
        // forward differences at 0
        let mut diffs = Vec::with_capacity(values.len());
        let mut row = values;
        while !row.is_empty() {
            diffs.push(row[0].clone());
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        // sum_k diffs[k] * binom(t, k), expanded into monomials
        let mut coeffs = vec![BigRational::zero(); n + 1];
        let mut falling = vec![BigRational::one()]; // t(t-1)...(t-k+1) / k!
        for (k, d) in diffs.iter().enumerate() {
            for (e, c) in falling.iter().enumerate() {
                coeffs[e] += c * BigRational::from_integer(d.clone());
            }
            let kk = BigRational::from_integer(BigInt::from(k as i64));
            let denom = BigRational::from_integer(BigInt::from(k as i64 + 1));
            let mut next = vec![BigRational::zero(); falling.len() + 1];
            for (e, c) in falling.iter().enumerate() {
                next[e + 1] += c / &denom;
                next[e] -= c * &kk / &denom;
            }
            falling = next;
        }
        let terms = coeffs.into_iter().enumerate().map(|(e, c)| {
            assert!(c.is_integer(), "Alexander coefficients are integers");
            let v: T = parse_decimal(&c.to_integer().to_string()).expect("coefficient fits scalar");
            (e as i64, v)
        });
        LaurentPoly::from_terms(terms).normalized()
    }

    /// Inertia of the symmetrization `V + V^T`.
    pub fn symmetrized_inertia(&self) -> (usize, usize, usize) {
        let n = self.size();
        let sym: Vec<Vec<T>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone() + self.at(j, i).clone()).collect())
            .collect();
        linalg::inertia(&sym)
    }

    /// Signature of `V + V^T`.
    pub fn signature(&self) -> i64 {
        let (p, q, _) = self.symmetrized_inertia();
        p as i64 - q as i64
    }

    /// Signature of the Hermitian matrix `(1 - w) V + (1 - conj w) V^T`,
    /// `w = exp(2 pi i s)`, in floating point. `None` when an eigenvalue is
    /// too close to zero to classify.
    pub fn hermitian_signature(&self, s: f64) -> Option<i64> {
        let n = self.size();
        if n == 0 {
            return Some(0);
        }
        let w = Complex::from_polar(1.0, std::f64::consts::TAU * s);
        let a = Complex::new(1.0, 0.0) - w;
        let b = a.conj();
        let h = DMatrix::from_fn(n, n, |i, j| {
            let vij = self.at(i, j).to_f64().unwrap_or(f64::NAN);
            let vji = self.at(j, i).to_f64().unwrap_or(f64::NAN);
            a * vij + b * vji
        });
        let scale = h.norm().max(1.0);
        let eig = SymmetricEigen::new(h).eigenvalues;
        let tol = 1e-9 * scale;
        if eig.iter().any(|l| !l.is_finite() || l.abs() < tol) {
            return None;
        }
        Some(eig.iter().map(|l| if *l > 0.0 { 1 } else { -1 }).sum())
    }

    /// Seifert matrix of the mirror image.
    pub fn mirror(&self) -> Self {
        let n = self.size();
        SeifertMatrix { rows: (0..n).map(|i| (0..n).map(|j| -self.at(j, i).clone()).collect()).collect() }
    }
}
