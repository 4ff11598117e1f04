//! The integer scalar abstraction shared by forms, witnesses and polynomials.
//!
//! Everything in this crate is exact. Machine integers (`i64`, `i128`) are
//! fine for small instances; `BigInt` is used wherever magnitudes are not
//! bounded in advance (determinants of direct sums, resultants).

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact signed integer type.
pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + FromStr + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("i64 literal representable in every scalar type")
    }
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Debug + Display + FromStr + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// Narrow a scalar to `i64`, reporting the offending value on failure.
pub(crate) fn to_i64<T: Scalar>(v: &T) -> crate::Result<i64> {
    v.to_i64().ok_or_else(|| crate::Error::Overflow(v.to_string()))
}

pub(crate) fn from_bigint<T: Scalar>(v: &num_bigint::BigInt) -> crate::Result<T> {
    v.to_string().parse::<T>().map_err(|_| crate::Error::Overflow(v.to_string()))
}

pub(crate) fn parse_decimal<T: Scalar>(s: &str) -> crate::Result<T> {
    s.trim()
        .parse::<T>()
        .map_err(|_| crate::Error::Parse(format!("not a decimal integer: {s:?}")))
}
