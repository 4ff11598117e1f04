//! Algebraic invariants of double twist knots: Seifert matrices, Alexander
//! polynomials, signatures, Fox-Milnor factorizations and branched-cover
//! homology orders, plus the torus-knot signature integral.
//!
//! Seifert convention: `K_{m,n}` has `V = [[m, 1], [0, n]]`, so
//! `det(V - t V^T) = mn t^2 - (2mn - 1) t + mn` and the twist knot
//! `K_n = K_{-1,n}` has `n t^2 - (2n + 1) t + n` after normalization.
//! The sign of [`DoubleTwist::signature`] depends on this convention; only
//! vanishing versus nonvanishing is convention independent.

mod fox_milnor;
mod homology;
mod laurent;
mod seifert;
mod torus;
pub mod trig;

pub use fox_milnor::{algebraic_classify, fox_milnor, AlgebraicClass, Factorization};
pub use homology::{branched_homology_order, resultant};
pub use laurent::LaurentPoly;
pub use seifert::SeifertMatrix;
pub use torus::{rho1_torus_integral, torus_seifert_matrix, SignatureIntegral};

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{param, Result};
use crate::scalar::Scalar;

/// The double twist knot `K_{m,n}` with `m` and `n` full twists in its two
/// twist regions. `mn = 0` is the unknot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DoubleTwist {
    pub m: i64,
    pub n: i64,
}

impl DoubleTwist {
    pub fn new(m: i64, n: i64) -> Self {
        DoubleTwist { m, n }
    }

    /// The twist knot `K_n = K_{-1,n}`.
    pub fn twist(n: i64) -> Self {
        DoubleTwist { m: -1, n }
    }

    pub fn is_unknot(&self) -> bool {
        self.m == 0 || self.n == 0
    }

    pub fn mirror(&self) -> Self {
        DoubleTwist { m: -self.m, n: -self.n }
    }

    pub fn swapped(&self) -> Self {
        DoubleTwist { m: self.n, n: self.m }
    }

    pub fn seifert_matrix<T: Scalar>(&self) -> SeifertMatrix<T> {
        SeifertMatrix::new(vec![vec![T::from_int(self.m), T::one()], vec![T::zero(), T::from_int(self.n)]])
            .expect("[[m, 1], [0, n]] is a Seifert matrix")
    }

    /// Normalized Alexander polynomial `det(V - t V^T)`.
    pub fn alexander<T: Scalar>(&self) -> LaurentPoly<T> {
        self.seifert_matrix::<T>().alexander()
    }

    /// Signature of `V + V^T = [[2m, 1], [1, 2n]]`.
    pub fn signature(&self) -> i64 {
        // det = 4mn - 1 never vanishes; definite iff mn > 0
        if self.m * self.n > 0 {
            2 * self.m.signum()
        } else {
            0
        }
    }

    /// Levine-Tristram signature at `omega = exp(2 pi i s)`: the signature of
    /// `(1 - omega) V + (1 - conj omega) V^T`.
    ///
    /// With `u = 1 - cos(2 pi s)` the matrix has trace `2(m + n) u` and
    /// determinant `2u (2mn u - 1)`. Where the determinant vanishes (roots of
    /// the Alexander polynomial) the average of the one-sided limits is
    /// returned.
    pub fn lt_signature(&self, s: &BigRational) -> Result<i64> {
        if trig::is_integer(s) {
            return param("omega = 1 is excluded");
        }
        let mn = self.m * self.n;
        if mn <= 0 {
            return Ok(0);
        }
        // sign(2mn u - 1) = sign((1 - 1/(2mn)) - cos(2 pi s))
        let threshold = BigRational::new(BigInt::from(2 * mn - 1), BigInt::from(2 * mn));
        let det_sign = match trig::cmp_cos(s, &threshold) {
            Ordering::Less => 1,
            Ordering::Equal => 0,
            Ordering::Greater => -1,
        };
        let trace_sign = (self.m + self.n).signum();
        Ok(match det_sign {
            1 => 2 * trace_sign,
            0 => trace_sign,
            _ => 0,
        })
    }
}
