//! Class groups of imaginary quadratic fields, Hilbert class polynomials,
//! and the genus-theoretic prediction of how they factor over `F_p`.
//!
//! The pipeline has three independent legs that are played against each other:
//!
//! * [`quadforms`] enumerates the class group of a fundamental discriminant
//!   `D < 0` as reduced binary quadratic forms with Gauss composition;
//! * [`classpoly`] constructs the Hilbert class polynomial `H_D(X)` with exact
//!   integer coefficients from high-precision evaluations of the modular
//!   `j`-function;
//! * [`ffpoly`] factors `H_D mod p` by distinct-degree factorization.
//!
//! [`genus`] turns the star decomposition `D = ∏ q*` into a prediction of the
//! splitting pattern of `H_D mod p` (split / inert-with-root / inert-without),
//! and [`lawcheck`] runs the comparison over ranges of discriminants and
//! primes, including the density experiment for the fraction of primes at
//! which `H_D` has a root.

pub mod bigfloat;
pub mod classpoly;
pub mod ffpoly;
pub mod genus;
pub mod lawcheck;
pub mod numtheory;
pub mod quadforms;

pub use classpoly::{ClassPolyOptions, ClassPolynomial};
pub use ffpoly::FpPoly;
pub use genus::{CaseTag, FundamentalDiscriminant, Prediction, PrimeStarFactor, SplittingPattern};
pub use lawcheck::{DensityReport, HdCache, Status, SweepSummary, VerificationReport, Verifier};
pub use quadforms::{ClassGroup, QuadForm};

/// Errors shared by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on the mathematical inputs was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// The integer is not a fundamental discriminant.
    #[error("{0} is not a fundamental discriminant: {1}")]
    NotFundamental(i64, String),

    /// A computation would exceed a configured resource limit.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// Coefficient recovery failed even after precision retries.
    #[error("precision failure for discriminant {d}: coefficients did not round at {bits} bits")]
    Precision { d: i64, bits: u32 },

    /// A cache record exists but fails validation.
    #[error("cache record for discriminant {d} failed integrity check: {reason}")]
    CacheIntegrity { d: i64, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
