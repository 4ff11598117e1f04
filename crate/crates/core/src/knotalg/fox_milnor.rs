//! Fox-Milnor factorizations `Delta(t^c) = u f(t) f(t^{-1})` for genus-one
//! Alexander polynomials, and the resulting classification of twist knots.

use serde::{Deserialize, Serialize};

use super::LaurentPoly;
use crate::embed::isqrt;
use crate::error::{param, Error, Result};
use crate::scalar::{to_i64, Scalar};

/// `Delta(t^c) = unit_sign * t^unit_exp * f(t) * f(t^{-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization<T> {
    pub f: LaurentPoly<T>,
    pub unit_sign: i8,
    pub unit_exp: i64,
    pub complexity: u32,
}

impl<T: Scalar> Factorization<T> {
    /// Re-multiply and compare with `delta(t^c)`.
    pub fn verify(&self, delta: &LaurentPoly<T>) -> bool {
        let lhs = delta.substitute_power(self.complexity as i64);
        let unit = LaurentPoly::monomial(T::from_int(self.unit_sign as i64), self.unit_exp);
        let rhs = &(&unit * &self.f) * &self.f.reflect();
        lhs == rhs
    }
}

/// Search for `f` of degree `c` with `Delta(t^c) = +-t^k f(t) f(t^{-1})`.
///
/// Only genus-one inputs `a t^2 + b t + a` (up to a unit) are accepted; the
/// coefficient comparison then confines `f = a_c t^c + ... + a_0` to
/// `sum a_i^2 = |b|` with `a_c a_0 = sign(b) a`, and all inner
/// autocorrelations of `f` must vanish. The first solution is returned in the
/// order: leading coefficient positive and descending, then `a_{c-1}, ...,
/// a_1` ascending.
pub fn fox_milnor<T: Scalar>(delta: &LaurentPoly<T>, c: u32) -> Result<Option<Factorization<T>>> {
    if c == 0 {
        return param("complexity must be positive");
    }
    if delta.is_zero() {
        return Err(Error::UnsupportedPolynomial("zero polynomial".into()));
    }
    let (s0, shift, d) = delta.normalize();
    let ci = c as i64;
    let build = |coeffs: Vec<i64>, eps: i64, extra: i64| {
        let fac = Factorization {
            f: LaurentPoly::from_i64_dense(&coeffs),
            unit_sign: (s0 as i64 * eps) as i8,
            unit_exp: shift * ci + extra,
            complexity: c,
        };
        debug_assert!(fac.verify(delta));
        fac
    };
    match d.span() {
        Some(0) => {
            // constant: f must be a constant with f^2 = d
            let v = to_i64(&d.coeff(0))?;
            let r = isqrt(v);
            Ok((r * r == v).then(|| build(vec![r], 1, 0)))
        }
        Some(2) => {
            let a = to_i64(&d.coeff(0))?;
            let b = to_i64(&d.coeff(1))?;
            if to_i64(&d.coeff(2))? != a {
                return Err(Error::UnsupportedPolynomial(format!("{delta} is not symmetric")));
            }
            Ok(search_quadratic(a, b, c as usize).map(|(coeffs, eps)| build(coeffs, eps, ci)))
        }
        _ => Err(Error::UnsupportedPolynomial(format!("{delta} is not of the form a t^2 + b t + a"))),
    }
}

/// Returns `(a_0..=a_c, eps)` with `eps * t^c f(t) f(1/t) = a t^{2c} + b t^c + a`.
fn search_quadratic(a: i64, b: i64, c: usize) -> Option<(Vec<i64>, i64)> {
    let eps = b.signum();
    if eps == 0 {
        return None;
    }
    let total = eps * b;
    let product = eps * a;
    let mut lead = isqrt(total);
    while lead >= 1 {
        if product % lead == 0 {
            let low = product / lead;
            let rest = total - lead * lead - low * low;
            if rest >= 0 {
                let mut coeffs = vec![0i64; c + 1];
                coeffs[c] = lead;
                coeffs[0] = low;
                if fill_middle(&mut coeffs, c - 1, rest) {
                    return Some((coeffs, eps));
                }
            }
        }
        lead -= 1;
    }
    None
}

/// Assign `coeffs[idx], coeffs[idx-1], ..., coeffs[1]` with squares summing
/// to `rest`, then check that every inner autocorrelation vanishes.
fn fill_middle(coeffs: &mut [i64], idx: usize, rest: i64) -> bool {
    if idx == 0 {
        return rest == 0 && inner_autocorrelations_vanish(coeffs);
    }
    let r = isqrt(rest);
    for v in -r..=r {
        coeffs[idx] = v;
        if fill_middle(coeffs, idx - 1, rest - v * v) {
            return true;
        }
    }
    coeffs[idx] = 0;
    false
}

fn inner_autocorrelations_vanish(coeffs: &[i64]) -> bool {
    let c = coeffs.len() - 1;
    (1..c).all(|shift| (0..=c - shift).map(|i| coeffs[i] * coeffs[i + shift]).sum::<i64>() == 0)
}

/// Algebraic concordance type of the twist knot `K_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraicClass {
    AlgebraicallySlice,
    AlgebraicallyRationallySliceOnly,
    NotAlgebraicallyRationallySlice,
}

fn is_square(v: i128) -> bool {
    if v < 0 {
        return false;
    }
    let r = (v as f64).sqrt() as i128;
    (r.saturating_sub(2)..=r + 2).any(|x| x >= 0 && x * x == v)
}

/// `K_n` is algebraically slice iff `n = k(k - 1)`, and algebraically
/// rationally slice iff additionally allowed `n = k^2`.
pub fn algebraic_classify(n: i64) -> AlgebraicClass {
    let n = n as i128;
    if n >= 0 && is_square(4 * n + 1) {
        AlgebraicClass::AlgebraicallySlice
    } else if n >= 1 && is_square(n) {
        AlgebraicClass::AlgebraicallyRationallySliceOnly
    } else {
        AlgebraicClass::NotAlgebraicallyRationallySlice
    }
}
