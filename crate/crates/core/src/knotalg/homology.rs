
use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::LaurentPoly;
use crate::error::{param, Result};
use crate::linalg;
use crate::scalar::{from_bigint, Scalar};

/// Resultant of two polynomials given by dense coefficients (constant term
/// first), as the determinant of the Sylvester matrix.
pub fn resultant<T: Scalar>(a: &[T], b: &[T]) -> BigInt {
    let da = a.len().saturating_sub(1);
    let db = b.len().saturating_sub(1);
    let size = da + db;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = Vec::with_capacity(size);
    for shift in 0..db {
        let mut row = vec![T::zero(); size];
        for (i, c) in a.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..da {
        let mut row = vec![T::zero(); size];
        for (i, c) in b.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    linalg::determinant(&rows)
}

/// `|H_1|` of the `p`-fold cyclic branched cover: the absolute value of the
/// resultant of `Delta` with `1 + t + ... + t^{p-1}`, i.e.
/// `|prod_{j=1}^{p-1} Delta(zeta_p^j)|`. Zero means infinite homology.
pub fn branched_homology_order<T: Scalar>(delta: &LaurentPoly<T>, p: u32) -> Result<T> {
    if p < 2 {
        return param(format!("p must be at least 2, got {p}"));
    }
    if delta.is_zero() {
        return param("zero polynomial");
    }
    let a = delta.dense_normalized();
    let b = vec![T::one(); p as usize];
    from_bigint(&resultant(&a, &b).abs())
}
