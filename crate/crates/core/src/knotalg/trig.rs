//! Rigorous rational enclosures of `cos(2 pi s)` for rational `s`.
//!
//! Used to decide signs of expressions like `cos(2 pi s) - r` exactly. By
//! Niven's theorem `cos(2 pi s)` is rational only when it is one of
//! `0, +-1/2, +-1`; those cases are answered exactly and every other value is
//! irrational, so refining the enclosure always separates it from a rational.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Reduce `s` into `[0, 1/2]` preserving `cos(2 pi s)`.
fn reduce(s: &BigRational) -> BigRational {
    let mut r = s - s.floor();
    if r > rat(1, 2) {
        r = BigRational::one() - r;
    }
    r
}

/// `cos(2 pi s)` when it is rational.
pub fn exact_cos(s: &BigRational) -> Option<BigRational> {
    let r = reduce(s);
    let d = r.denom().clone();
    let n = r.numer().clone();
    let key = (n.to_string(), d.to_string());
    let v = match (key.0.as_str(), key.1.as_str()) {
        ("0", "1") => rat(1, 1),
        ("1", "6") => rat(1, 2),
        ("1", "4") => rat(0, 1),
        ("1", "3") => rat(-1, 2),
        ("1", "2") => rat(-1, 1),
        _ => return None,
    };
    Some(v)
}

/// Bracket of `atan(1/x)` from `terms` terms of the alternating series.
fn atan_inv(x: i64, terms: usize) -> (BigRational, BigRational) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut pow = x.clone();
    let mut sum = BigRational::zero();
    let mut last = BigRational::zero();
    for k in 0..terms {
        let term = BigRational::new(BigInt::one(), BigInt::from(2 * k + 1) * &pow);
        last = sum.clone();
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        pow *= &x2;
    }
    if last < sum {
        (last, sum)
    } else {
        (sum, last)
    }
}

/// Round outward to a multiple of `2^-bits`.
fn snap(x: &BigRational, bits: usize, up: bool) -> BigRational {
    let scale = BigRational::from_integer(BigInt::one() << bits);
    let y = x * &scale;
    let r = if up { y.ceil() } else { y.floor() };
    r / scale
}

/// Dyadic bracket of pi by Machin's formula.
fn pi_bounds(terms: usize) -> (BigRational, BigRational) {
    let (l5, u5) = atan_inv(5, terms);
    let (l239, u239) = atan_inv(239, terms.div_ceil(3).max(2));
    let sixteen = rat(16, 1);
    let four = rat(4, 1);
    let bits = 4 * terms + 16;
    let lo = &sixteen * l5 - &four * u239;
    let hi = sixteen * u5 - four * l239;
    (snap(&lo, bits, false), snap(&hi, bits, true))
}

/// Bracket of `cos(theta)` for `0 <= theta <= 3.2` from partial sums `K` and
/// `K + 1` of the Taylor series (alternating and decreasing from the second
/// term on in this range).
fn cos_bracket(theta: &BigRational, terms: usize) -> (BigRational, BigRational) {
    // partial sums over the common denominator D^{2K} (2K)!, in integers
    let (num, den) = (theta.numer(), theta.denom());
    let k_max = terms.max(2) + 1;
    let n2 = num * num;
    let d2 = den * den;
    let mut fact = vec![BigInt::one()];
    for i in 1..=2 * k_max {
        let next = &fact[i - 1] * BigInt::from(i as u64);
        fact.push(next);
    }
    let mut n_pow = vec![BigInt::one()];
    let mut d_pow = vec![BigInt::one()];
    for k in 1..=k_max {
        n_pow.push(&n_pow[k - 1] * &n2);
        d_pow.push(&d_pow[k - 1] * &d2);
    }
    let partial = |upto: usize| {
        let mut acc = BigInt::zero();
        for k in 0..=upto {
            let t = &n_pow[k] * &d_pow[upto - k] * (&fact[2 * upto] / &fact[2 * k]);
            if k % 2 == 0 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        BigRational::new(acc, &d_pow[upto] * &fact[2 * upto])
    };
    let a = partial(k_max - 1);
    let b = partial(k_max);
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Rational `[lo, hi]` containing `cos(2 pi s)`, tighter as `terms` grows.
pub fn cos_enclosure(s: &BigRational, terms: usize) -> (BigRational, BigRational) {
    let r = reduce(s);
    let (pi_lo, pi_hi) = pi_bounds(terms);
    let two_r = &r * rat(2, 1);
    let theta_lo = &two_r * pi_lo;
    let theta_hi = two_r * pi_hi;
    // cos is decreasing on [0, pi]
    let (lo, _) = cos_bracket(&theta_hi, terms);
    let (_, hi) = cos_bracket(&theta_lo, terms);
    (lo.max(rat(-1, 1)), hi.min(rat(1, 1)))
}

/// Exact comparison of `cos(2 pi s)` with the rational `r`.
pub fn cmp_cos(s: &BigRational, r: &BigRational) -> Ordering {
    if let Some(c) = exact_cos(s) {
        return c.cmp(r);
    }
    let mut terms = 8;
    loop {
        let (lo, hi) = cos_enclosure(s, terms);
        if &lo > r {
            return Ordering::Greater;
        }
        if &hi < r {
            return Ordering::Less;
        }
        terms *= 2;
        assert!(terms < 1 << 16, "cos enclosure failed to separate an irrational value");
    }
}

/// Whether `s` is an integer, i.e. `exp(2 pi i s) = 1`.
pub fn is_integer(s: &BigRational) -> bool {
    s.denom().is_one() || s.numer().is_multiple_of(s.denom())
}



#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn pi_is_bracketed() {
        let (lo, hi) = pi_bounds(20);
        assert!(lo.to_f64().unwrap() <= std::f64::consts::PI);
        assert!(hi.to_f64().unwrap() >= std::f64::consts::PI);
        assert!((hi - lo).to_f64().unwrap() < 1e-25);
    }

    #[test]
    fn enclosures_contain_float_cos() {
        for d in 1..40 {
            for n in 0..=d {
                let s = rat(n, d);
                let (lo, hi) = cos_enclosure(&s, 12);
                let c = (2.0 * std::f64::consts::PI * n as f64 / d as f64).cos();
                assert!(lo.to_f64().unwrap() <= c + 1e-12 && hi.to_f64().unwrap() >= c - 1e-12, "{n}/{d}");
                assert!((hi - lo).to_f64().unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn niven_values_exact() {
        assert_eq!(exact_cos(&rat(1, 6)), Some(rat(1, 2)));
        assert_eq!(exact_cos(&rat(5, 6)), Some(rat(1, 2)));
        assert_eq!(exact_cos(&rat(7, 4)), Some(rat(0, 1)));
        assert_eq!(exact_cos(&rat(-1, 3)), Some(rat(-1, 2)));
        assert_eq!(exact_cos(&rat(1, 5)), None);
        assert_eq!(cmp_cos(&rat(1, 6), &rat(1, 2)), Ordering::Equal);
        assert_eq!(cmp_cos(&rat(1, 7), &rat(1, 2)), Ordering::Greater);
        assert_eq!(cmp_cos(&rat(1, 5), &rat(3, 10)), Ordering::Greater); // cos(72 deg) = 0.309
        assert_eq!(cmp_cos(&rat(1, 5), &rat(31, 100)), Ordering::Less);
    }
}
