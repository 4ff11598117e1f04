//! Acceptance gate: nine criteria, each printed as a single PASS/FAIL line.
//!
//! Runs without the libtest harness so the verdict lines always reach the
//! terminal. The process exits non-zero if any criterion fails.
//!
//! Time limits are enforced as stated for optimized builds. Debug builds
//! report elapsed times but only enforce a tenfold relaxed bound.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use concordance_core::embed::{
    example_embedding_rational, example_embedding_slice, search_embedding, verify_witness, SearchConfig,
};
use concordance_core::knotalg::{branched_homology_order, fox_milnor, rho1_torus_integral};
use concordance_core::pipeline::{classify, survey, Classification, ObstructOptions};
use concordance_core::{DoubleTwist, GramForm, LaurentPoly, SearchStatus};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

type Form = GramForm<BigInt>;
type Poly = LaurentPoly<BigInt>;

/// `Ok(detail)` passes; `Err` or a panic fails.
type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn limit(secs: u64) -> Duration {
    let base = Duration::from_secs(secs);
    if cfg!(debug_assertions) {
        base * 10
    } else {
        base
    }
}

fn within(start: Instant, secs: u64, what: &str) -> Result<Duration, String> {
    let took = start.elapsed();
    if took > limit(secs) {
        Err(format!("{what} took {took:.2?}, limit {:?}", limit(secs)))
    } else {
        Ok(took)
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn explicit_embeddings() -> Verdict {
    let start = Instant::now();
    let mut checked = 0;
    for m in [-1i64, -2, -3] {
        for p in [3usize, 5, 7] {
            let g = Form::intersection_form(m, 1 - m, p).map_err(|e| e.to_string())?;
            let a = example_embedding_slice(m, p).map_err(|e| e.to_string())?;
            ensure(verify_witness(&g, &a) == Ok(true), || format!("slice witness fails at m={m}, p={p}"))?;
            checked += 1;
            // n = -m = 1 has no closed form; its status is settled by search
            if m <= -2 {
                let g = Form::intersection_form(m, -m, p).map_err(|e| e.to_string())?;
                let a = example_embedding_rational(m, p).map_err(|e| e.to_string())?;
                ensure(verify_witness(&g, &a) == Ok(true), || format!("rational witness fails at m={m}, p={p}"))?;
                checked += 1;
            }
        }
    }
    let took = within(start, 1, "explicit witnesses")?;
    Ok(format!("{checked} witnesses satisfy A^T A = -G exactly in {took:.2?}"))
}

fn non_embedding() -> Verdict {
    let mut parts = Vec::new();
    for (m, n, p) in [(-1i64, 3i64, 3usize), (-1, 4, 3), (-1, 3, 5), (-2, 4, 3)] {
        let start = Instant::now();
        let g = Form::intersection_form(m, n, p).map_err(|e| e.to_string())?;
        let out = search_embedding(&g, SearchConfig::default()).map_err(|e| e.to_string())?;
        ensure(out.status == SearchStatus::NoneExists && !out.budget_exhausted, || {
            format!("({m},{n},{p}): {:?}, budget exhausted {}", out.status, out.budget_exhausted)
        })?;
        within(start, 300, &format!("({m},{n},{p})"))?;
        parts.push(format!("({m},{n},{p}) {} nodes", out.nodes_explored));
    }
    let start = Instant::now();
    let g2 = Form::intersection_form(-1, 3, 3).and_then(|g| g.repeat(2)).map_err(|e| e.to_string())?;
    let out = search_embedding(&g2, SearchConfig::with_budget(1_000_000_000)).map_err(|e| e.to_string())?;
    ensure(out.status != SearchStatus::Found, || "two copies of (-1,3,3) reported an embedding".into())?;
    parts.push(format!(
        "N=2 (-1,3,3) {:?} after {} nodes in {:.2?}",
        out.status,
        out.nodes_explored,
        start.elapsed()
    ));
    Ok(parts.join("; "))
}

fn search_oracle() -> Verdict {
    let corpus = common::random_corpus(240, 0x5eed_0001);
    let mut agree = 0;
    for (idx, g) in corpus.iter().enumerate() {
        let want = if common::naive_embeds(g) { SearchStatus::Found } else { SearchStatus::NoneExists };
        let got = search_embedding(g, SearchConfig { node_budget: None, sequential: true })
            .map_err(|e| e.to_string())?
            .status;
        ensure(got == want, || format!("form #{idx}: pruned {got:?}, naive {want:?}"))?;
        agree += 1;
    }
    Ok(format!("{agree}/{} forms agree", corpus.len()))
}

const GRID_P: [usize; 3] = [3, 5, 7];

fn definiteness() -> Verdict {
    let start = Instant::now();
    let mut count = 0;
    for m in -4..=-1 {
        for n in 1..=5 {
            for p in GRID_P {
                let g = Form::intersection_form(m, n, p).map_err(|e| e.to_string())?;
                ensure(g.is_negative_definite(), || format!("Q_{p}({m},{n}) is not negative definite"))?;
                count += 1;
            }
        }
    }
    let took = within(start, 1, "definiteness grid")?;
    Ok(format!("{count} forms negative definite in {took:.2?}"))
}

fn determinant_homology() -> Verdict {
    let mut count = 0;
    for m in -4..=-1 {
        for n in 1..=5 {
            let delta: Poly = DoubleTwist::new(m, n).alexander();
            for p in GRID_P {
                let det = Form::intersection_form(m, n, p).map_err(|e| e.to_string())?.determinant();
                let order = branched_homology_order(&delta, p as u32).map_err(|e| e.to_string())?;
                ensure(det.abs() == order, || format!("({m},{n},{p}): |det| {} vs order {order}", det.abs()))?;
                count += 1;
            }
        }
    }
    let fig8 = Form::intersection_form(-1, 1, 3).map_err(|e| e.to_string())?.determinant();
    let order = branched_homology_order(&DoubleTwist::new(-1, 1).alexander::<BigInt>(), 3).map_err(|e| e.to_string())?;
    ensure(fig8.abs() == BigInt::from(16) && order == BigInt::from(16), || format!("figure-eight: {fig8}, {order}"))?;
    Ok(format!("{count} instances equal; |det Q_3(-1,1)| = 16"))
}

fn algebraic_classification() -> Verdict {
    let pronic = |n: i64| (0..=11).any(|k| k * (k - 1) == n);
    let square = |n: i64| (1..=10).any(|k| k * k == n);
    let (mut c1, mut c2) = (0, 0);
    for n in -100..=100 {
        let delta: Poly = DoubleTwist::twist(n).alexander();
        let f1 = fox_milnor(&delta, 1).map_err(|e| e.to_string())?;
        let f2 = fox_milnor(&delta, 2).map_err(|e| e.to_string())?;
        ensure(f1.is_some() == pronic(n), || format!("n={n}: complexity 1 mismatch"))?;
        ensure(f2.is_some() == (pronic(n) || square(n)), || format!("n={n}: complexity 2 mismatch"))?;
        for f in f1.iter().chain(f2.iter()) {
            ensure(f.verify(&delta), || format!("n={n}: factor {} does not re-multiply", f.f))?;
        }
        c1 += usize::from(f1.is_some());
        c2 += usize::from(f2.is_some());
    }
    let same = |f: &Poly, want: &[i64]| {
        let w = Poly::from_dense(&want.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        f.eq_up_to_unit(&w) || f.eq_up_to_unit(&w.reflect())
    };
    let f6 = fox_milnor(&DoubleTwist::twist(6).alexander::<BigInt>(), 1).map_err(|e| e.to_string())?;
    let f6 = f6.ok_or("no factor for n = 6")?.f;
    ensure(same(&f6, &[-2, 3]), || format!("n = 6 factor {f6}"))?;
    let f4 = fox_milnor(&DoubleTwist::twist(4).alexander::<BigInt>(), 2).map_err(|e| e.to_string())?;
    let f4 = f4.ok_or("no factor for n = 4")?.f;
    ensure(same(&f4, &[-2, -1, 2]) || same(&f4, &[-2, 1, 2]), || format!("n = 4 factor {f4}"))?;
    Ok(format!("{c1} factorizations at c=1, {c2} at c=2; n=6 -> {f6}, n=4 -> {f4}"))
}

fn signatures() -> Verdict {
    let samples: Vec<BigRational> = (1..7)
        .map(|j| BigRational::new(j.into(), 7.into()))
        .chain([BigRational::new(1.into(), 2.into()), BigRational::new(1.into(), 3.into())])
        .collect();
    let mut zero = 0;
    for m in -5..=-1 {
        for n in 1..=5 {
            let k = DoubleTwist::new(m, n);
            ensure(k.signature() == 0, || format!("sigma({m},{n}) != 0"))?;
            for s in &samples {
                let v = k.lt_signature(s).map_err(|e| e.to_string())?;
                ensure(v == 0, || format!("LT({m},{n}) at {s} = {v}"))?;
                zero += 1;
            }
        }
    }
    let mut nonzero = 0;
    for a in 1..=5 {
        for b in 1..=5 {
            for k in [DoubleTwist::new(a, b), DoubleTwist::new(-a, -b)] {
                ensure(k.signature() != 0, || format!("sigma({},{}) = 0", k.m, k.n))?;
                nonzero += 1;
            }
        }
    }
    Ok(format!("{zero} mixed-sign values vanish; {nonzero} like-sign signatures nonzero"))
}

fn theorem_a() -> Verdict {
    let range: Vec<i64> = (-3..=3).collect();
    let reports = survey(&range, &range, &[3], 1, ObstructOptions::default()).map_err(|e| e.to_string())?;
    ensure(reports.len() == 49, || format!("{} reports", reports.len()))?;
    for r in &reports {
        let (m, n) = (r.params.m, r.params.n);
        ensure(r.consistent_with_theorem_a, || format!("({m},{n}) inconsistent"))?;
        if let Some(ok) = r.det_matches_homology {
            ensure(ok, || format!("({m},{n}) determinant/homology mismatch"))?;
        }
    }
    for m in -10..=10i64 {
        for n in -10..=10i64 {
            let finite = m * n == 0 || (m + n).abs() <= 1;
            let slice = m * n == 0 || (m + n).abs() == 1;
            let c = classify(m, n);
            let want = match (m * n == 0, slice, finite) {
                (true, _, _) => Classification::Unknot,
                (_, true, _) => Classification::Slice,
                (_, _, true) => Classification::RationallySliceNotSlice,
                _ => Classification::InfiniteOrder,
            };
            ensure(c == want, || format!("classify({m},{n}) = {c}, expected {want}"))?;
            ensure(c == classify(n, m) && c == classify(-m, -n), || format!("({m},{n}) not symmetric"))?;
        }
    }
    let searched = reports.iter().filter(|r| r.embedding.is_some()).count();
    Ok(format!("{} reports consistent ({searched} with embedding evidence)", reports.len()))
}

fn torus_integral() -> Verdict {
    let mut parts = Vec::new();
    for k in 3..=8usize {
        let start = Instant::now();
        let r = rho1_torus_integral(k, 4).map_err(|e| e.to_string())?;
        within(start, 30, &format!("k={k}"))?;
        ensure(r.is_exact(), || format!("k={k}: {} unresolved arcs", r.unresolved_intervals))?;
        ensure(!r.value.is_zero(), || format!("k={k}: integral vanishes"))?;
        if k == 3 {
            ensure(r.value == BigRational::new(4.into(), 3.into()), || format!("k=3 gives {}", r.value))?;
        }
        parts.push(format!("k={k}: {}", r.value));
    }
    Ok(parts.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("explicit embeddings verify", explicit_embeddings),
        ("non-embedding by exhaustion", non_embedding),
        ("pruned search matches naive search", search_oracle),
        ("intersection forms negative definite", definiteness),
        ("determinant equals branched-cover homology order", determinant_homology),
        ("Fox-Milnor classification of twist knots", algebraic_classification),
        ("signature vanishing and nonvanishing", signatures),
        ("survey consistent with the classification", theorem_a),
        ("torus-knot signature integrals", torus_integral),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let took = start.elapsed();
        match verdict {
            Ok(detail) => println!("criterion {} PASS  {name} [{took:.2?}]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name} [{took:.2?}]: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
