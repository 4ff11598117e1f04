//! Integer Laurent polynomials in one variable `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{parse_decimal, Scalar};

/// Finitely supported map from exponents to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly<T> {
    coeffs: BTreeMap<i64, T>,
}

impl<T: Scalar> LaurentPoly<T> {
    pub fn zero() -> Self {
        LaurentPoly { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(T::one(), 0)
    }

    pub fn monomial(c: T, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, T)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// `coeffs[i]` is the coefficient of `t^i`.
    pub fn from_dense(coeffs: &[T]) -> Self {
        Self::from_terms(coeffs.iter().cloned().enumerate().map(|(i, c)| (i as i64, c)))
    }

    pub fn from_i64_dense(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (i as i64, T::from_int(c))))
    }

    fn add_term(&mut self, exp: i64, c: T) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(T::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> T {
        self.coeffs.get(&exp).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `max_exp - min_exp`; the degree of the normalized representative.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.values().next_back()
    }

    /// `+-t^k`
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.values().all(|c| c.abs().is_one())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// `t -> t^c` for `c != 0`.
    pub fn substitute_power(&self, c: i64) -> Self {
        assert!(c != 0, "t -> t^0 is not a ring map on Laurent polynomials");
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, x)| (e * c, x.clone())).collect() }
    }

    /// `t -> t^{-1}`
    pub fn reflect(&self) -> Self {
        self.substitute_power(-1)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(e, c)| (*e, c.clone() * k.clone())))
    }

    /// Decompose as `sign * t^shift * p` with `p` having lowest exponent 0 and
    /// a positive leading coefficient. The zero polynomial returns itself.
    pub fn normalize(&self) -> (i8, i64, Self) {
        let Some(low) = self.min_exp() else {
            return (1, 0, self.clone());
        };
        let p = self.shift(-low);
        if p.leading().is_some_and(|c| c.is_negative()) {
            (-1, low, -p)
        } else {
            (1, low, p)
        }
    }

    pub fn normalized(&self) -> Self {
        self.normalize().2
    }

    /// Equality up to multiplication by `+-t^k`.
    pub fn eq_up_to_unit(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    /// `p(t^{-1}) = +-t^k p(t)` for some `k`.
    pub fn is_symmetric(&self) -> bool {
        self.eq_up_to_unit(&self.reflect())
    }

    /// `p(1)`
    pub fn value_at_one(&self) -> T {
        self.coeffs.values().fold(T::zero(), |a, c| a + c.clone())
    }

    /// `p(-1)`
    pub fn value_at_minus_one(&self) -> T {
        self.coeffs
            .iter()
            .fold(T::zero(), |a, (e, c)| if e.rem_euclid(2) == 0 { a + c.clone() } else { a - c.clone() })
    }

    /// Dense coefficients of the normalized representative, constant term first.
    pub fn dense_normalized(&self) -> Vec<T> {
        let p = self.normalized();
        match p.max_exp() {
            None => Vec::new(),
            Some(top) => (0..=top).map(|e| p.coeff(e)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl<T: Scalar> Add for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn add(self, rhs: Self) -> LaurentPoly<T> {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn sub(self, rhs: Self) -> LaurentPoly<T> {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<T: Scalar> Mul for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn mul(self, rhs: Self) -> LaurentPoly<T> {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Neg for LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn neg(self) -> LaurentPoly<T> {
        LaurentPoly { coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl<T: Scalar> $tr for LaurentPoly<T> {
            type Output = LaurentPoly<T>;
            fn $f(self, rhs: Self) -> LaurentPoly<T> {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<T: Scalar> fmt::Display for LaurentPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    coeffs: BTreeMap<i64, String>,
}

impl<T: Scalar> Serialize for LaurentPoly<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyWire { coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.to_string())).collect() }.serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for LaurentPoly<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = PolyWire::deserialize(d)?;
        let terms = wire
            .coeffs
            .into_iter()
            .map(|(e, c)| parse_decimal::<T>(&c).map(|c| (e, c)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(LaurentPoly::from_terms(terms))
    }
}
