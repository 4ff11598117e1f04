//! Test-only oracles, independent of the library's search and factorization code.
#![allow(dead_code, clippy::needless_range_loop)]

use concordance_core::GramForm;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All vectors in `[-r, r]^dim` with squared length `norm`, by brute force over the box.
pub fn brute_vectors(norm: i64, dim: usize) -> Vec<Vec<i64>> {
    let r = (1..).take_while(|x: &i64| x * x <= norm).last().unwrap_or(0);
    let side = (2 * r + 1) as usize;
    let total = side.pow(dim as u32);
    (0..total)
        .map(|mut code| {
            (0..dim)
                .map(|_| {
                    let v = (code % side) as i64 - r;
                    code /= side;
                    v
                })
                .collect::<Vec<i64>>()
        })
        .filter(|v| v.iter().map(|x| x * x).sum::<i64>() == norm)
        .collect()
}

/// Unpruned exhaustive embedding search: columns in index order, every
/// vector of the right norm tried, no symmetry reduction.
pub fn naive_embeds(g: &GramForm<i64>) -> bool {
    let d = g.dim();
    let target: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| -*g.get(i, j)).collect()).collect();
    if (0..d).any(|i| target[i][i] <= 0) {
        return false;
    }
    let pools: Vec<Vec<Vec<i64>>> = (0..d).map(|i| brute_vectors(target[i][i], d)).collect();
    fn rec(k: usize, target: &[Vec<i64>], pools: &[Vec<Vec<i64>>], cols: &mut Vec<Vec<i64>>) -> bool {
        if k == target.len() {
            return true;
        }
        for v in &pools[k] {
            let ok = cols
                .iter()
                .enumerate()
                .all(|(j, c)| c.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() == target[k][j]);
            if ok {
                cols.push(v.clone());
                if rec(k + 1, target, pools, cols) {
                    return true;
                }
                cols.pop();
            }
        }
        false
    }
    rec(0, &target, &pools, &mut Vec::new())
}

/// Fixed-seed corpus of negative definite forms, dimension 2..=6, diagonal in
/// [-5, -1]. Half are `-A^T A` for random small `A` (so they embed), half are
/// random symmetric matrices filtered for definiteness.
pub fn random_corpus(count: usize, seed: u64) -> Vec<GramForm<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let d = rng.gen_range(2..=6usize);
        let rows: Vec<Vec<i64>> = if out.len() % 2 == 0 {
            let a: Vec<Vec<i64>> = (0..d)
                .map(|_| (0..d).map(|_| [-1, 0, 0, 1, 2][rng.gen_range(0..5)]).collect())
                .collect();
            (0..d)
                .map(|i| (0..d).map(|j| -(0..d).map(|r| a[r][i] * a[r][j]).sum::<i64>()).collect())
                .collect()
        } else {
            let mut m = vec![vec![0i64; d]; d];
            for i in 0..d {
                m[i][i] = rng.gen_range(-5..=-1);
                for j in 0..i {
                    let v = rng.gen_range(-2..=2);
                    m[i][j] = v;
                    m[j][i] = v;
                }
            }
            m
        };
        if rows.iter().enumerate().any(|(i, r)| r[i] < -5 || r[i] > -1) {
            continue;
        }
        let g = GramForm::from_rows(rows).unwrap();
        if g.is_negative_definite() {
            out.push(g);
        }
    }
    out
}
