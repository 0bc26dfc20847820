//! Chevalley groups over commutative rings, from the combinatorial ground up:
//! root systems, Chevalley bases and structure constants, parabolic subgroups
//! and their unipotent kernels, relator generation for finite presentations,
//! exact verification in matrix models, and a finiteness-property classifier.
//!
//! The crate is organized bottom-up:
//!
//! * [`poly`] / [`matrix`] — exact sparse Laurent-polynomial arithmetic and
//!   dense matrices over it (no floating point anywhere);
//! * [`rootsys`] — root systems of types `A`–`G` with Bourbaki numbering;
//! * [`chevmodel`] — Chevalley bases, the adjoint and `SL_n` matrix models,
//!   and commutator structure constants extracted from them;
//! * [`parab`] — standard parabolic subsets, adjacency combinatorics, and the
//!   level grading of unipotent kernels;
//! * [`ringspec`] — coefficient-ring descriptions (unit group, generation
//!   data), toral pairs, and product/conjugation bookkeeping for relators;
//! * [`word`] / [`presgen`] — words, presentations, and the relator emitters;
//! * [`verify`] — exact evaluation of words and presentations in the models;
//! * [`classify`] — the finite-presentability decision rules with citations.

pub mod poly;
pub mod matrix;
pub mod rootsys;
pub mod chevmodel;
pub mod parab;
pub mod ringspec;
pub mod word;
pub mod presgen;
pub mod verify;
pub mod classify;

use thiserror::Error as ThisError;

/// Crate-wide error type.
#[derive(Debug, ThisError)]
pub enum Error {
    /// Family/rank combination outside the supported tables.
    #[error("invalid root system: {0}")]
    InvalidRootSystem(String),
    /// A root argument does not belong to the system at hand.
    #[error("root {0} is not in the system")]
    RootNotInSystem(String),
    /// Precondition on arguments violated (documented per operation).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Argument is not a unit of the coefficient ring.
    #[error("not a unit: {0}")]
    NotAUnit(String),
    /// The ring description lacks data needed for the requested expansion.
    #[error("ring description incomplete: {0}")]
    RingIncomplete(String),
    /// The ring does not satisfy the hypothesis an operation relies on.
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    /// The one configuration the presentation builder must refuse:
    /// `G2` with the long-simple-root subset over a ring where the rank-one
    /// Borel is not known to be finitely presented.
    #[error("refused: G2 long-root parabolic over this ring is an open configuration")]
    ExceptionalCase,
    /// Classifier refusal: the standing hypotheses are not met.
    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),
    /// No concrete matrix model is available for this ring description.
    #[error("verification unavailable: {0}")]
    VerificationUnavailable(String),
    /// An exact model computation did not close up (internal consistency).
    #[error("model check failed: {0}")]
    ModelCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Three-valued answers for facts that may be genuinely open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriBool {
    Yes,
    No,
    Unknown,
}

impl std::fmt::Display for TriBool {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TriBool::Yes => write!(f, "yes"),
            TriBool::No => write!(f, "no"),
            TriBool::Unknown => write!(f, "unknown"),
        }
    }
}

impl TriBool {
    /// Default for optional serialized facts.
    pub fn unknown() -> Self {
        TriBool::Unknown
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "yes" => Ok(TriBool::Yes),
            "no" => Ok(TriBool::No),
            "unknown" => Ok(TriBool::Unknown),
            other => Err(Error::InvalidInput(format!("expected yes/no/unknown, got {other}"))),
        }
    }
}
