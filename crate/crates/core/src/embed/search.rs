//! Backtracking search for embeddings into the standard lattice.
//!
//! Columns are placed one at a time in a fixed order (ascending norm, ties by
//! index). Each new column is enumerated coordinate by coordinate subject to
//! the partial Gram constraints, and only one representative per orbit of the
//! signed-permutation symmetries fixing the already placed columns is
//! produced:
//!
//! * coordinates whose rows agree on all placed columns are interchangeable,
//!   so the new column is required to be non-increasing along each such class;
//! * coordinates not yet touched by any column may also be negated, so the
//!   new column is non-negative there.
//!
//! Enumeration within a column runs from large to small values, which fixes
//! the canonical first witness.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::{isqrt, verify_witness, EmbeddingWitness, SearchOutcome, SearchStatus};
use crate::error::{param, Result};
use crate::forms::GramForm;
use crate::scalar::{to_i64, Scalar};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of placed columns; `None` is unlimited.
    pub node_budget: Option<u64>,
    /// Disable the parallel split of the top of the search tree.
    pub sequential: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { node_budget: Some(DEFAULT_NODE_BUDGET), sequential: false }
    }
}

impl SearchConfig {
    pub fn with_budget(node_budget: u64) -> Self {
        SearchConfig { node_budget: Some(node_budget), ..Default::default() }
    }

    pub fn sequential(mut self) -> Self {
        self.sequential = true;
        self
    }
}

pub fn search_embedding<T: Scalar>(g: &GramForm<T>, config: SearchConfig) -> Result<SearchOutcome<T>> {
    if config.node_budget == Some(0) {
        return param("node budget must be positive");
    }
    if !g.is_negative_definite() {
        return Ok(SearchOutcome {
            status: SearchStatus::NoneExists,
            witness: None,
            nodes_explored: 0,
            budget_exhausted: false,
            reason: Some("form is not negative definite; it cannot embed in a definite lattice".into()),
        });
    }
    let problem = Problem::new(g)?;
    let ctx = Ctx {
        nodes: AtomicU64::new(0),
        budget: config.node_budget.unwrap_or(u64::MAX),
        exhausted: AtomicBool::new(false),
    };
    let flow = if config.sequential {
        let mut state = State::root(problem.dim);
        problem.dfs(&mut state, &ctx)
    } else {
        problem.parallel(&ctx)
    };
    let nodes_explored = ctx.nodes.load(Ordering::Relaxed).min(ctx.budget);
    Ok(match flow {
        Flow::Found(cols) => {
            let witness = problem.witness::<T>(cols)?;
            assert!(verify_witness(g, &witness)?, "search produced an invalid witness");
            SearchOutcome::found(witness, nodes_explored)
        }
        Flow::Exhausted => SearchOutcome {
            status: SearchStatus::NoneExists,
            witness: None,
            nodes_explored,
            budget_exhausted: false,
            reason: None,
        },
        Flow::OutOfBudget => SearchOutcome {
            status: SearchStatus::Unknown,
            witness: None,
            nodes_explored,
            budget_exhausted: true,
            reason: None,
        },
    })
}

enum Flow {
    Found(Vec<Vec<i64>>),
    Exhausted,
    OutOfBudget,
}

struct Ctx {
    nodes: AtomicU64,
    budget: u64,
    exhausted: AtomicBool,
}

impl Ctx {
    /// Account for one placed column; `false` once the budget is spent.
    fn tick(&self) -> bool {
        if self.exhausted.load(Ordering::Relaxed) {
            return false;
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

struct Problem {
    dim: usize,
    /// Processing position -> original basis index.
    order: Vec<usize>,
    norms: Vec<i64>,
    /// `dots[k][j]`, `j < k`: required dot product of columns `k` and `j`
    /// (processing positions).
    dots: Vec<Vec<i64>>,
}

#[derive(Clone)]
struct State {
    cols: Vec<Vec<i64>>,
    /// Coordinate classes; coordinates with equal rows over the placed
    /// columns share a class. Class 0 is the all-zero row.
    class: Vec<u32>,
}

impl State {
    fn root(dim: usize) -> Self {
        State { cols: Vec::with_capacity(dim), class: vec![0; dim] }
    }

    fn push(&mut self, col: Vec<i64>) -> Vec<u32> {
        let saved = self.class.clone();
        let mut ids: HashMap<(u32, i64), u32> = HashMap::new();
        ids.insert((0, 0), 0);
        for (c, &x) in self.class.iter_mut().zip(&col) {
            let next = ids.len() as u32;
            *c = *ids.entry((*c, x)).or_insert(next);
        }
        self.cols.push(col);
        saved
    }

    fn pop(&mut self, saved: Vec<u32>) {
        self.cols.pop();
        self.class = saved;
    }
}

impl Problem {
    fn new<T: Scalar>(g: &GramForm<T>) -> Result<Self> {
        let dim = g.dim();
        let mut entries = vec![vec![0i64; dim]; dim];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = -to_i64(g.get(i, j))?;
            }
        }
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by_key(|&i| (entries[i][i], i));
        let norms = order.iter().map(|&i| entries[i][i]).collect();
        let dots = (0..dim).map(|k| (0..k).map(|j| entries[order[k]][order[j]]).collect()).collect();
        Ok(Problem { dim, order, norms, dots })
    }

    fn witness<T: Scalar>(&self, cols: Vec<Vec<i64>>) -> Result<EmbeddingWitness<T>> {
        let mut columns = vec![Vec::new(); self.dim];
        for (k, col) in cols.into_iter().enumerate() {
            columns[self.order[k]] = col.into_iter().map(T::from_int).collect();
        }
        EmbeddingWitness::from_columns(columns)
    }

    fn dfs(&self, state: &mut State, ctx: &Ctx) -> Flow {
        let k = state.cols.len();
        if k == self.dim {
            return Flow::Found(state.cols.clone());
        }
        for cand in self.candidates(state) {
            if !ctx.tick() {
                return Flow::OutOfBudget;
            }
            let saved = state.push(cand);
            match self.dfs(state, ctx) {
                Flow::Exhausted => state.pop(saved),
                other => return other,
            }
        }
        Flow::Exhausted
    }

    /// Expand the top levels breadth-first until there is enough independent
    /// work, then finish each subtree in parallel. The first witness in
    /// frontier order wins, so the result matches the sequential search.
    fn parallel(&self, ctx: &Ctx) -> Flow {
        let target = 8 * rayon::current_num_threads().max(2);
        let mut frontier = vec![State::root(self.dim)];
        let mut depth = 0;
        while depth < self.dim && frontier.len() < target {
            let mut next = Vec::new();
            for state in &frontier {
                for cand in self.candidates(state) {
                    if !ctx.tick() {
                        return Flow::OutOfBudget;
                    }
                    let mut child = state.clone();
                    child.push(cand);
                    next.push(child);
                }
            }
            frontier = next;
            depth += 1;
            if frontier.is_empty() {
                return Flow::Exhausted;
            }
        }
        let found = frontier.into_par_iter().find_map_first(|mut state| match self.dfs(&mut state, ctx) {
            Flow::Found(cols) => Some(cols),
            _ => None,
        });
        match found {
            Some(cols) => Flow::Found(cols),
            None if ctx.exhausted.load(Ordering::Relaxed) => Flow::OutOfBudget,
            None => Flow::Exhausted,
        }
    }

    /// Canonical candidates for the next column, in enumeration order.
    fn candidates(&self, state: &State) -> Vec<Vec<i64>> {
        let k = state.cols.len();
        let d = self.dim;
        let mut last_seen: HashMap<u32, usize> = HashMap::new();
        let prev_same: Vec<Option<usize>> = state
            .class
            .iter()
            .enumerate()
            .map(|(i, &c)| last_seen.insert(c, i))
            .collect();
        // capacity[j][i] = sum of squares of column j over coordinates >= i
        let capacity: Vec<Vec<i64>> = state
            .cols
            .iter()
            .map(|col| {
                let mut cap = vec![0i64; d + 1];
                for i in (0..d).rev() {
                    cap[i] = cap[i + 1] + col[i] * col[i];
                }
                cap
            })
            .collect();
        let mut gen = CandidateGen {
            cols: &state.cols,
            class: &state.class,
            prev_same,
            capacity,
            x: vec![0; d],
            out: Vec::new(),
        };
        let mut need = self.dots[k].clone();
        gen.rec(0, self.norms[k], &mut need);
        gen.out
    }
}

struct CandidateGen<'a> {
    cols: &'a [Vec<i64>],
    class: &'a [u32],
    prev_same: Vec<Option<usize>>,
    capacity: Vec<Vec<i64>>,
    x: Vec<i64>,
    out: Vec<Vec<i64>>,
}

impl CandidateGen<'_> {
    /// `need[j]` is the dot product with column `j` still to be realized on
    /// coordinates `i..`.
    fn rec(&mut self, i: usize, rest: i64, need: &mut [i64]) {
        // Cauchy-Schwarz: |need_j| <= sqrt(rest * capacity_j)
        for (j, &nj) in need.iter().enumerate() {
            if nj * nj > rest * self.capacity[j][i] {
                return;
            }
        }
        if rest == 0 {
            // every remaining coordinate is zero; need is all zero by the check above
            let mut v = self.x.clone();
            v[i..].iter_mut().for_each(|c| *c = 0);
            self.out.push(v);
            return;
        }
        if i == self.x.len() {
            return;
        }
        let r = isqrt(rest);
        let mut hi = r;
        if let Some(prev) = self.prev_same[i] {
            hi = hi.min(self.x[prev]);
        }
        let lo = if self.class[i] == 0 { 0 } else { -r };
        let mut v = hi;
        while v >= lo {
            self.x[i] = v;
            for (j, nj) in need.iter_mut().enumerate() {
                *nj -= v * self.cols[j][i];
            }
            self.rec(i + 1, rest - v * v, need);
            for (j, nj) in need.iter_mut().enumerate() {
                *nj += v * self.cols[j][i];
            }
            v -= 1;
        }
        self.x[i] = 0;
    }
}
