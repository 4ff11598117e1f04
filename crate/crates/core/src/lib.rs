//! Exact computations behind the concordance obstructions for double twist
//! knots: intersection forms of branched-cover fillings, lattice embedding
//! search, and the algebraic invariants (Alexander polynomials, signatures,
//! Fox-Milnor factorizations, branched-cover homology orders).

#![allow(clippy::needless_range_loop)]

pub mod embed;
mod error;
pub mod forms;
pub mod knotalg;
pub mod linalg;
pub mod pipeline;
mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

use num_bigint::BigInt;

pub use embed::{EmbeddingWitness, SearchConfig, SearchOutcome, SearchStatus};
pub use forms::GramForm;
pub use knotalg::{DoubleTwist, LaurentPoly};
pub use pipeline::{classify, normalize, obstruct, survey, Classification, ObstructOptions, ObstructionReport};

/// Intersection forms with unbounded entries.
pub type Form = GramForm<BigInt>;
/// Embedding witnesses with unbounded entries.
pub type Witness = EmbeddingWitness<BigInt>;
/// Search outcomes carrying unbounded witnesses.
pub type Outcome = SearchOutcome<BigInt>;
/// Alexander polynomials and factors with unbounded coefficients.
pub type Poly = LaurentPoly<BigInt>;
