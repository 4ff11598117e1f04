//! Per-instance reports combining the closed-form classification of double
//! twist knots with the computed evidence: intersection forms, embedding
//! witnesses or exhaustive non-embedding, branched-cover homology orders,
//! signatures and Fox-Milnor probes.
//!
//! The classification never depends on the evidence. Evidence that disagrees
//! with it is surfaced through [`ObstructionReport::consistent_with_theorem_a`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::embed::{example_embedding_rational, example_embedding_slice, search_embedding, SearchConfig, SearchStatus};
use crate::error::{param, Result};
use crate::knotalg::{algebraic_classify, branched_homology_order, fox_milnor, AlgebraicClass, DoubleTwist};
use crate::{Form, Outcome, Poly, Witness};

/// Version tag written into every serialized report.
pub const SCHEMA_VERSION: u32 = 1;

/// Complexities probed by the Fox-Milnor evidence.
pub const FOX_MILNOR_PROBES: [u32; 2] = [1, 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    Unknot,
    Slice,
    RationallySliceNotSlice,
    InfiniteOrder,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::Unknot => "Unknot",
            Classification::Slice => "Slice",
            Classification::RationallySliceNotSlice => "RationallySliceNotSlice",
            Classification::InfiniteOrder => "InfiniteOrder",
        };
        f.write_str(s)
    }
}

/// Concordance type of `K_{m,n}`: unknot when `mn = 0`, slice when
/// `|m + n| = 1`, rationally slice but not slice when `m + n = 0`, and of
/// infinite order otherwise.
pub fn classify(m: i64, n: i64) -> Classification {
    if m == 0 || n == 0 {
        Classification::Unknot
    } else if (m + n).abs() == 1 {
        Classification::Slice
    } else if m + n == 0 {
        Classification::RationallySliceNotSlice
    } else {
        Classification::InfiniteOrder
    }
}

/// Parameters after the symmetries `K_{m,n} = K_{n,m}` and mirroring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Normalized {
    pub m: i64,
    pub n: i64,
    pub mirrored: bool,
    /// Set when any swap was applied along the way, even if two swaps cancel.
    pub swapped: bool,
}

/// Bring a mixed-sign pair to `m' < 0 < n'` with `n' >= -m'`.
///
/// A positive `m` is first swapped into place; if then `n < -m`, the pair is
/// mirrored and swapped once more.
pub fn normalize(m: i64, n: i64) -> Result<Normalized> {
    if m.checked_mul(n).is_none_or(|mn| mn >= 0) {
        return param(format!("normalization needs mn < 0, got ({m}, {n})"));
    }
    let mut out = Normalized { m, n, mirrored: false, swapped: false };
    if out.m > 0 {
        (out.m, out.n) = (out.n, out.m);
        out.swapped = true;
    }
    if out.n < -out.m {
        (out.m, out.n) = (-out.n, -out.m);
        out.mirrored = true;
        out.swapped = true;
    }
    Ok(out)
}

pub fn is_odd_prime_power(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut q = p;
    let mut d = 3;
    while d * d <= q {
        if q.is_multiple_of(d) {
            while q.is_multiple_of(d) {
                q /= d;
            }
            return q == 1;
        }
        d += 2;
    }
    true
}

/// Where the embedding evidence came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EmbeddingSource {
    /// Closed-form witness for `n' = -m' + 1`.
    ExplicitSlice,
    /// Closed-form witness for `n' = -m'`, odd `p`.
    ExplicitRational,
    Search,
}

/// Closed-form witness for the `copies`-fold sum of the normalized form, if
/// one of the explicit constructions applies.
pub fn explicit_witness(m: i64, n: i64, p: usize, copies: usize) -> Result<Option<(Witness, EmbeddingSource)>> {
    let single = if n == 1 - m {
        (example_embedding_slice(m, p)?, EmbeddingSource::ExplicitSlice)
    } else if n == -m && n >= 2 && p % 2 == 1 {
        (example_embedding_rational(m, p)?, EmbeddingSource::ExplicitRational)
    } else {
        return Ok(None);
    };
    let witness = Witness::direct_sum(&vec![single.0; copies])?;
    Ok(Some((witness, single.1)))
}

/// Search the `copies`-fold sum. A witness for one copy is tried first and,
/// when found, repeated; otherwise the full sum is searched.
pub fn search_sum(single: &Form, copies: usize, config: SearchConfig) -> Result<Outcome> {
    let first = search_embedding(single, config)?;
    if copies == 1 || first.status == SearchStatus::Unknown {
        return Ok(first);
    }
    if let Some(w) = &first.witness {
        let witness = Witness::direct_sum(&vec![w.clone(); copies])?;
        return Ok(Outcome::found(witness, first.nodes_explored));
    }
    let mut full = search_embedding(&single.repeat(copies)?, config)?;
    full.nodes_explored = full.nodes_explored.saturating_add(first.nodes_explored);
    Ok(full)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[derive(Default)]
pub struct ObstructOptions {
    pub search: SearchConfig,
    /// Also run the search when an explicit witness is available.
    pub confirm_by_search: bool,
}


#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    pub m: i64,
    pub n: i64,
    pub p: usize,
    pub copies: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoxMilnorProbe {
    pub complexity: u32,
    pub factor: Option<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicEvidence {
    /// Only for twist knots, `m' = -1`.
    pub twist_class: Option<AlgebraicClass>,
    pub probes: Vec<FoxMilnorProbe>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureEvidence {
    pub signature: i64,
    /// Levine-Tristram signatures at `s = j/p`, `0 < j < p`.
    pub levine_tristram: Vec<(BigRational, i64)>,
}

impl SignatureEvidence {
    fn compute(knot: DoubleTwist, p: usize) -> Result<Self> {
        let levine_tristram = (1..p)
            .map(|j| {
                let s = BigRational::new(BigInt::from(j), BigInt::from(p));
                knot.lt_signature(&s).map(|v| (s, v))
            })
            .collect::<Result<_>>()?;
        Ok(SignatureEvidence { signature: knot.signature(), levine_tristram })
    }

    pub fn all_vanish(&self) -> bool {
        self.signature == 0 && self.levine_tristram.iter().all(|(_, v)| *v == 0)
    }
}

/// Everything known about one `(m, n, p, N)` instance.
///
/// Form-related fields are `None` for like-sign and unknotted instances,
/// which only carry signature evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub params: Params,
    pub normalized: Option<Normalized>,
    pub classification: Classification,
    pub form_dim: Option<usize>,
    pub negative_definite: Option<bool>,
    pub determinant: Option<BigInt>,
    pub homology_order: Option<BigInt>,
    pub det_matches_homology: Option<bool>,
    pub embedding: Option<Outcome>,
    pub embedding_source: Option<EmbeddingSource>,
    /// Independent search run alongside an explicit witness.
    pub search_confirmation: Option<Outcome>,
    pub expected_embedding: Option<SearchStatus>,
    pub algebraic: Option<AlgebraicEvidence>,
    pub signatures: SignatureEvidence,
    pub consistent_with_theorem_a: bool,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

fn status_agrees(outcome: &Outcome, expected: Option<SearchStatus>) -> bool {
    match (outcome.status, expected) {
        (SearchStatus::Unknown, _) | (_, None) => true,
        (got, Some(want)) => got == want,
    }
}

/// Full evidence for a mixed-sign instance.
pub fn obstruct(m: i64, n: i64, p: usize, copies: usize, options: ObstructOptions) -> Result<ObstructionReport> {
    if copies == 0 {
        return param("number of copies must be at least 1");
    }
    let norm = normalize(m, n)?;
    let (mm, nn) = (norm.m, norm.n);
    let single = Form::intersection_form(mm, nn, p)?;
    let form = single.repeat(copies)?;
    let knot = DoubleTwist::new(mm, nn);
    let classification = classify(m, n);

    let mut warnings = Vec::new();
    let mut notes = Vec::new();
    let prime_power = is_odd_prime_power(p as u64);
    if !prime_power {
        warnings.push(format!(
            "p = {p} is not an odd prime power; the form is well defined but its non-embedding does not obstruct rational sliceness"
        ));
    }

    let negative_definite = form.is_negative_definite();
    let determinant = form.determinant();
    let single_order = branched_homology_order(&knot.alexander::<BigInt>(), p as u32)?;
    let homology_order = single_order.pow(copies as u32);
    let det_matches = determinant.abs() == homology_order;

    let (embedding, source, search_confirmation) = match explicit_witness(mm, nn, p, copies)? {
        Some((witness, source)) => {
            let confirmation = if options.confirm_by_search {
                Some(search_sum(&single, copies, options.search)?)
            } else {
                None
            };
            (Outcome::found(witness, 0), source, confirmation)
        }
        None => (search_sum(&single, copies, options.search)?, EmbeddingSource::Search, None),
    };

    let expected = prime_power.then(|| {
        if nn <= 1 - mm {
            SearchStatus::Found
        } else {
            SearchStatus::NoneExists
        }
    });
    if !prime_power && embedding.status == SearchStatus::NoneExists {
        notes.push("search result".to_string());
    }
    if embedding.status == SearchStatus::Unknown {
        notes.push(format!("node budget exhausted after {} nodes", embedding.nodes_explored));
    }

    let probes = FOX_MILNOR_PROBES
        .iter()
        .map(|&c| {
            fox_milnor(&knot.alexander::<BigInt>(), c).map(|f| FoxMilnorProbe { complexity: c, factor: f.map(|f| f.f) })
        })
        .collect::<Result<Vec<_>>>()?;
    let algebraic = AlgebraicEvidence { twist_class: (mm == -1).then(|| algebraic_classify(nn)), probes };
    let signatures = SignatureEvidence::compute(knot, p)?;

    let consistent = status_agrees(&embedding, expected)
        && search_confirmation.as_ref().is_none_or(|o| status_agrees(o, expected))
        && signatures.all_vanish();

    Ok(ObstructionReport {
        params: Params { m, n, p, copies },
        normalized: Some(norm),
        classification,
        form_dim: Some(form.dim()),
        negative_definite: Some(negative_definite),
        determinant: Some(determinant),
        homology_order: Some(homology_order),
        det_matches_homology: Some(det_matches),
        embedding: Some(embedding),
        embedding_source: Some(source),
        search_confirmation,
        expected_embedding: expected,
        algebraic: Some(algebraic),
        signatures,
        consistent_with_theorem_a: consistent,
        warnings,
        notes,
    })
}

/// Signature-only report for `mn >= 0`: the unknot has vanishing signature,
/// like-sign pairs have `sigma != 0`.
pub fn signature_report(m: i64, n: i64, p: usize, copies: usize) -> Result<ObstructionReport> {
    if m.checked_mul(n).is_none_or(|mn| mn < 0) {
        return param(format!("signature-only reports need mn >= 0, got ({m}, {n})"));
    }
    if p < 2 {
        return param(format!("p must be at least 2, got {p}"));
    }
    let classification = classify(m, n);
    let signatures = SignatureEvidence::compute(DoubleTwist::new(m, n), p)?;
    let consistent = match classification {
        Classification::Unknot => signatures.all_vanish(),
        _ => signatures.signature != 0,
    };
    Ok(ObstructionReport {
        params: Params { m, n, p, copies },
        normalized: None,
        classification,
        form_dim: None,
        negative_definite: None,
        determinant: None,
        homology_order: None,
        det_matches_homology: None,
        embedding: None,
        embedding_source: None,
        search_confirmation: None,
        expected_embedding: None,
        algebraic: None,
        signatures,
        consistent_with_theorem_a: consistent,
        warnings: Vec::new(),
        notes: Vec::new(),
    })
}

/// One report per `(m, n, p)`, ordered by `m`, then `n`, then `p` as given.
/// Instances are computed in parallel.
pub fn survey(
    m_range: &[i64],
    n_range: &[i64],
    p_list: &[usize],
    copies: usize,
    options: ObstructOptions,
) -> Result<Vec<ObstructionReport>> {
    let mut p_sorted = p_list.to_vec();
    p_sorted.sort_unstable();
    p_sorted.dedup();
    let instances: Vec<(i64, i64, usize)> = m_range
        .iter()
        .flat_map(|&m| n_range.iter().flat_map({
            let p_sorted = &p_sorted;
            move |&n| p_sorted.iter().map(move |&p| (m, n, p))
        }))
        .collect();
    instances
        .into_par_iter()
        .map(|(m, n, p)| {
            if m * n < 0 {
                obstruct(m, n, p, copies, options)
            } else {
                signature_report(m, n, p, copies)
            }
        })
        .collect()
}

fn outcome_value(o: &Outcome) -> Value {
    serde_json::to_value(o).expect("outcome serialization is infallible")
}

fn string<T: ToString>(v: T) -> Value {
    Value::String(v.to_string())
}

impl ObstructionReport {
    pub fn to_value(&self) -> Value {
        let p = &self.params;
        json!({
            "schema": SCHEMA_VERSION,
            "params": {"m": string(p.m), "n": string(p.n), "p": string(p.p), "N": string(p.copies)},
            "normalized_params": self.normalized.map(|q| json!({
                "m": string(q.m), "n": string(q.n), "mirrored": q.mirrored, "swapped": q.swapped,
            })),
            "classification": self.classification.to_string(),
            "form_dim": self.form_dim.map(string),
            "negative_definite": self.negative_definite,
            "determinant": self.determinant.as_ref().map(string),
            "homology_order": self.homology_order.as_ref().map(string),
            "det_matches_homology": self.det_matches_homology,
            "embedding": self.embedding.as_ref().map(outcome_value),
            "embedding_source": self.embedding_source,
            "search_confirmation": self.search_confirmation.as_ref().map(outcome_value),
            "expected_embedding": self.expected_embedding,
            "algebraic": self.algebraic.as_ref().map(|a| json!({
                "twist_class": a.twist_class,
                "fox_milnor": a.probes.iter().map(|pr| json!({
                    "complexity": string(pr.complexity),
                    "factor": pr.factor.as_ref().map(string),
                })).collect::<Vec<_>>(),
            })),
            "signatures": {
                "signature": string(self.signatures.signature),
                "levine_tristram": self.signatures.levine_tristram.iter().map(|(s, v)| json!({
                    "s": string(s), "value": string(v),
                })).collect::<Vec<_>>(),
            },
            "consistent_with_theorem_A": self.consistent_with_theorem_a,
            "warnings": self.warnings,
            "notes": self.notes,
        })
    }

    /// Single-line JSON, stable across runs.
    pub fn to_json(&self) -> String {
        self.to_value().to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        assert_eq!(classify(-1, 1), Classification::RationallySliceNotSlice);
        assert_eq!(classify(-1, 2), Classification::Slice);
        assert_eq!(classify(-1, 3), Classification::InfiniteOrder);
        assert_eq!(classify(0, 7), Classification::Unknot);
        assert_eq!(classify(2, 3), Classification::InfiniteOrder);
    }

    #[test]
    fn normalize_examples() {
        let n = normalize(1, -3).unwrap();
        assert_eq!((n.m, n.n, n.mirrored, n.swapped), (-1, 3, true, true));
        let n = normalize(-2, 3).unwrap();
        assert_eq!((n.m, n.n, n.mirrored, n.swapped), (-2, 3, false, false));
        let n = normalize(-3, 2).unwrap();
        assert_eq!((n.m, n.n, n.mirrored, n.swapped), (-2, 3, true, true));
        assert!(normalize(2, 3).is_err());
        assert!(normalize(0, 3).is_err());
    }

    #[test]
    fn prime_powers() {
        let got: Vec<u64> = (1..30).filter(|&p| is_odd_prime_power(p)).collect();
        assert_eq!(got, vec![3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29]);
    }

    #[test]
    fn obstruct_examples() {
        let r = obstruct(-1, 2, 3, 1, ObstructOptions::default()).unwrap();
        assert_eq!(r.classification, Classification::Slice);
        assert_eq!(r.embedding.as_ref().unwrap().status, SearchStatus::Found);
        assert!(r.consistent_with_theorem_a);

        let r = obstruct(-1, 3, 3, 1, ObstructOptions::default()).unwrap();
        assert_eq!(r.classification, Classification::InfiniteOrder);
        assert_eq!(r.embedding.as_ref().unwrap().status, SearchStatus::NoneExists);
        assert!(r.consistent_with_theorem_a);

        let r = obstruct(-2, 2, 5, 1, ObstructOptions::default()).unwrap();
        assert_eq!(r.classification, Classification::RationallySliceNotSlice);
        assert_eq!(r.embedding_source, Some(EmbeddingSource::ExplicitRational));
        assert!(r.consistent_with_theorem_a);
        assert_eq!(r.det_matches_homology, Some(true));
    }

    #[test]
    fn composite_p_is_flagged() {
        let options = ObstructOptions { search: SearchConfig::with_budget(20_000), ..Default::default() };
        let r = obstruct(-1, 3, 9, 1, options).unwrap();
        assert!(r.warnings.is_empty());
        assert_eq!(r.expected_embedding, Some(SearchStatus::NoneExists));
        let r = obstruct(-1, 3, 6, 1, options).unwrap();
        assert_eq!(r.warnings.len(), 1);
        assert_eq!(r.expected_embedding, None);
        assert!(r.consistent_with_theorem_a);
    }

    #[test]
    fn survey_examples() {
        let rs = survey(&[-1], &[1, 2, 3], &[3], 1, ObstructOptions::default()).unwrap();
        assert_eq!(rs.len(), 3);
        assert!(rs.iter().all(|r| r.consistent_with_theorem_a));
        assert!(survey(&[], &[], &[3], 1, ObstructOptions::default()).unwrap().is_empty());
        let rs = survey(&[1], &[1], &[3], 1, ObstructOptions::default()).unwrap();
        assert_eq!(rs[0].signatures.signature, 2);
        assert_eq!(rs[0].classification, Classification::InfiniteOrder);
    }

    #[test]
    fn json_uses_decimal_strings() {
        let r = obstruct(-1, 1, 3, 1, ObstructOptions::default()).unwrap();
        let v = r.to_value();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["determinant"], "-16");
        assert_eq!(v["homology_order"], "16");
        assert_eq!(v["params"]["m"], "-1");
    }
}
