//! Explicit embeddings for the two families where one must exist: the slice
//! case `n = 1 - m` and the rationally slice case `n = -m` (odd `p`).
//!
//! The target basis is split into three runs: `a_0..a_{p-1}`,
//! `b_0..b_{p-1}`, and `c_0..c_{(n-2)p-1}`. Columns follow the
//! [`GramForm::intersection_form`](crate::GramForm::intersection_form) order:
//! the `v` block, then the `w` block, then the `x` blocks.

use super::EmbeddingWitness;
use crate::error::{param, Result};
use crate::scalar::Scalar;

struct Layout {
    p: usize,
    n: usize,
}

impl Layout {
    fn dim(&self) -> usize {
        self.n * self.p
    }
    fn a(&self, i: usize) -> usize {
        i % self.p
    }
    fn b(&self, i: usize) -> usize {
        self.p + i % self.p
    }
    /// `c_{kp+i}`
    fn c(&self, k: usize, i: usize) -> usize {
        2 * self.p + k * self.p + i % self.p
    }
    /// `a_i + b_i + c_i + c_{p+i} + ... + c_{(n-3)p+i}`
    fn strand(&self, i: usize) -> Vec<usize> {
        let mut s = vec![self.a(i), self.b(i)];
        s.extend((0..self.n - 2).map(|k| self.c(k, i)));
        s
    }

    /// The `w` and `x` columns shared by both families.
    fn chains(&self, columns: &mut [Vec<i64>]) {
        let p = self.p;
        for i in 0..p {
            let w = &mut columns[p + i];
            w[self.a(i)] += 1;
            w[self.b(i)] -= 1;
            if self.n >= 3 {
                let x = &mut columns[2 * p + i];
                x[self.b(i)] += 1;
                x[self.c(0, i)] -= 1;
            }
            for k in 1..self.n.saturating_sub(2) {
                let x = &mut columns[2 * p + k * p + i];
                x[self.c(k - 1, i)] += 1;
                x[self.c(k, i)] -= 1;
            }
        }
    }
}

fn check(m: i64, p: usize) -> Result<()> {
    if m >= 0 {
        return param(format!("m must be negative, got {m}"));
    }
    if p < 3 {
        return param(format!("p must be at least 3, got {p}"));
    }
    Ok(())
}

/// Witness that the form for `(m, 1 - m, p)` embeds:
/// `v_i = b_i + c_i + ... - (a_{i+1} + b_{i+1} + c_{i+1} + ...)`,
/// `w_i = a_i - b_i`, `x_i = b_i - c_i`, `x_{kp+i} = c_{(k-1)p+i} - c_{kp+i}`.
pub fn example_embedding_slice<T: Scalar>(m: i64, p: usize) -> Result<EmbeddingWitness<T>> {
    check(m, p)?;
    let layout = Layout { p, n: (1 - m) as usize };
    let mut columns = vec![vec![0i64; layout.dim()]; layout.dim()];
    for i in 0..p {
        let v = &mut columns[i];
        for &e in &layout.strand(i)[1..] {
            v[e] += 1;
        }
        for e in layout.strand(i + 1) {
            v[e] -= 1;
        }
    }
    layout.chains(&mut columns);
    EmbeddingWitness::from_i64_columns(&columns)
}

/// Witness that the form for `(m, -m, p)` embeds, `p = 2q + 1` odd:
/// `v_i = -a_i + strand(i + q) - strand(i + q + 1)` with the same `w`, `x`
/// columns as the slice case. Requires `-m >= 2`; for `n = 1` there are no
/// `w` or `x` blocks to build on.
pub fn example_embedding_rational<T: Scalar>(m: i64, p: usize) -> Result<EmbeddingWitness<T>> {
    check(m, p)?;
    if p.is_multiple_of(2) {
        return param(format!("p must be odd, got {p}"));
    }
    if m == -1 {
        return param("n = -m = 1 has no w/x blocks; use the search instead");
    }
    let q = (p - 1) / 2;
    let layout = Layout { p, n: (-m) as usize };
    let mut columns = vec![vec![0i64; layout.dim()]; layout.dim()];
    for i in 0..p {
        let v = &mut columns[i];
        v[layout.a(i)] -= 1;
        for e in layout.strand(i + q) {
            v[e] += 1;
        }
        for e in layout.strand(i + q + 1) {
            v[e] -= 1;
        }
    }
    layout.chains(&mut columns);
    EmbeddingWitness::from_i64_columns(&columns)
}
