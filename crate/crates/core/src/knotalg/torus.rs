//! Levine-Tristram signature integral of the mirrored torus knot
//! `-T_{k,k-1}`.
//!
//! The Seifert matrix of `T_{p,q}` comes from its fibre surface, the Milnor
//! fibre of `x^p + y^q`: the negated tensor product of the `A_{p-1}` and
//! `A_{q-1}` variation matrices. The signature function of any knot is
//! constant between consecutive roots of the Alexander polynomial on the
//! unit circle; for `T_{k,k-1}` those roots lie at angles `a / (k(k-1))`, so
//! sampling each arc between consecutive such angles gives the integral
//! exactly once the samples are unambiguous.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::SeifertMatrix;
use crate::error::{param, Result};
use crate::scalar::Scalar;

/// `(r - 1) x (r - 1)`: `-1` on the diagonal, `1` on the superdiagonal.
fn variation(r: usize) -> Vec<Vec<i64>> {
    let n = r.saturating_sub(1);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match j as i64 - i as i64 {
                    0 => -1,
                    1 => 1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

/// Seifert matrix of the positive torus knot `T_{p,q}`, of size
/// `(p - 1)(q - 1)`. Signs are such that `T_{3,2}` has signature `-2`.
pub fn torus_seifert_matrix<T: Scalar>(p: usize, q: usize) -> Result<SeifertMatrix<T>> {
    if p < 1 || q < 1 {
        return param("torus knot parameters must be positive");
    }
    let a = variation(p);
    let b = variation(q);
    let (na, nb) = (a.len(), b.len());
    let n = na * nb;
    let mut rows = vec![vec![T::zero(); n]; n];
    for i in 0..na {
        for j in 0..na {
            for k in 0..nb {
                for l in 0..nb {
                    rows[i * nb + k][j * nb + l] = T::from_int(-a[i][j] * b[k][l]);
                }
            }
        }
    }
    SeifertMatrix::new(rows)
}

/// `value +- error_bound` encloses the integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureIntegral {
    pub value: BigRational,
    pub error_bound: BigRational,
    pub intervals: usize,
    pub unresolved_intervals: usize,
}

impl SignatureIntegral {
    pub fn is_exact(&self) -> bool {
        self.error_bound.is_zero()
    }
}

/// `int_0^1 sigma_{-T_{k,k-1}}(exp(2 pi i s)) ds`, sampling each arc between
/// candidate jump angles at `resolution` interior points.
///
/// An arc whose samples disagree or cannot be classified contributes nothing
/// to `value` and `2g / (k(k-1))` to `error_bound`, since `|sigma| <= 2g`.
pub fn rho1_torus_integral(k: usize, resolution: usize) -> Result<SignatureIntegral> {
    if k < 2 {
        return param(format!("k must be at least 2, got {k}"));
    }
    if resolution == 0 {
        return param("resolution must be positive");
    }
    let v = torus_seifert_matrix::<i64>(k, k - 1)?.mirror();
    let genus2 = v.size() as i64;
    let arcs = k * (k - 1);
    let mut total = 0i64; // in units of 1 / arcs
    let mut unresolved = 0usize;
    for a in 0..arcs {
        let samples: Vec<Option<i64>> = (1..=resolution)
            .map(|j| {
                let s = (a as f64 + j as f64 / (resolution + 1) as f64) / arcs as f64;
                v.hermitian_signature(s)
            })
            .collect();
        match samples[0] {
            Some(first) if samples.iter().all(|x| *x == Some(first)) => total += first,
            _ => unresolved += 1,
        }
    }
    let denom = BigInt::from(arcs as i64);
    Ok(SignatureIntegral {
        value: BigRational::new(BigInt::from(total), denom.clone()),
        error_bound: BigRational::new(BigInt::from(genus2 * unresolved as i64), denom),
        intervals: arcs,
        unresolved_intervals: unresolved,
    })
}
