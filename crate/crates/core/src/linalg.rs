//! Fraction-free elimination and exact congruence diagonalization.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

pub(crate) fn to_bigint<T: Scalar>(v: &T) -> BigInt {
    match v.to_i128() {
        Some(x) => BigInt::from(x),
        None => v.to_string().parse().expect("scalar display is decimal"),
    }
}

fn to_bigint_rows<T: Scalar>(a: &[Vec<T>]) -> Vec<Vec<BigInt>> {
    a.iter().map(|row| row.iter().map(to_bigint).collect()).collect()
}

/// Leading principal minors `d_1, d_2, ...` of a square matrix by Bareiss
/// elimination without row exchanges.
///
/// Elimination stops at the first vanishing minor, which is the last element
/// of the returned vector; otherwise all `n` minors are returned.
pub fn leading_minors<T: Scalar>(a: &[Vec<T>]) -> Vec<BigInt> {
    let n = a.len();
    let mut m = to_bigint_rows(a);
    let mut prev = BigInt::one();
    let mut minors = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = m[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &pivot - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = pivot;
    }
    minors
}

/// Exact determinant by Bareiss elimination with row pivoting. Intermediate
/// minors can outgrow the entry type, so the elimination runs over `BigInt`.
pub fn determinant<T: Scalar>(a: &[Vec<T>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = to_bigint_rows(a);
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &pivot - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Inertia `(positive, negative, zero)` of a symmetric integer matrix, by
/// exact rational congruence diagonalization.
pub fn inertia<T: Scalar>(a: &[Vec<T>]) -> (usize, usize, usize) {
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(to_bigint(x))).collect())
        .collect();
    let n = m.len();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut k = 0;
    while k < n {
        // Bring a nonzero diagonal entry to position k if one exists.
        if let Some(i) = (k..n).find(|&i| !m[i][i].is_zero()) {
            swap_sym(&mut m, k, i);
        } else if let Some((i, j)) = (k..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !m[i][j].is_zero())
        {
            // All remaining diagonal entries vanish: replace row/col i by
            // row/col i + j, which makes the (i, i) entry 2 m[i][j] != 0.
            for c in 0..n {
                let add = m[j][c].clone();
                m[i][c] += add;
            }
            for r in 0..n {
                let add = m[r][j].clone();
                m[r][i] += add;
            }
            swap_sym(&mut m, k, i);
        } else {
            zero += n - k;
            break;
        }
        let pivot = m[k][k].clone();
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k].clone() / pivot.clone();
            for j in k..n {
                let sub = f.clone() * m[k][j].clone();
                m[i][j] -= sub;
            }
            for r in k..n {
                let sub = f.clone() * m[r][k].clone();
                m[r][i] -= sub;
            }
        }
        k += 1;
    }
    (pos, neg, zero)
}

fn swap_sym<X>(m: &mut [Vec<X>], a: usize, b: usize) {
    if a == b {
        return;
    }
    m.swap(a, b);
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}
