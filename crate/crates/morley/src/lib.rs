//! Exact verification of Morley-type binomial congruences.
//!
//! The classical starting point is the prime congruence
//! `(-1)^((p-1)/2) * C(p-1, (p-1)/2) ≡ 4^(p-1) (mod p^3)` for primes `p >= 5`,
//! together with its composite-modulus relatives: products of `(kn - r)/r`
//! over restricted units, Mobius products of central binomial coefficients,
//! and the harmonic-sum congruences (restricted sums of `1/r` and `1/r^2`
//! modulo `n^2` and `n`) that drive them. This crate computes every object in
//! that circle exactly (big integers and rationals only), states each claimed
//! congruence as a checkable [`congruence::CongruenceClaim`], and sweeps
//! parameter grids for counterexamples with deterministic, reproducible
//! reports.
//!
//! Layering, bottom up:
//!
//! * [`modular`]: residues, factorization, CRT, rational reduction.
//! * [`multiplicative`]: Mobius, totients (classical, generalized, floor),
//!   the Jacobi-like unit `J_e`, Euler quotients.
//! * [`bernoulli`]: exact Bernoulli/Euler numbers and Bernoulli polynomials,
//!   plus the per-prime-power Bernoulli-factor congruence value `beta_e`.
//! * [`harmonic`]: restricted harmonic sums and their closed-form predictors.
//! * [`congruence`]: the claims themselves (theorem/corollary/lemma checks).
//! * [`grid`] and [`report`]: parallel grid evaluation and stable rendering.
//!
//! The `parallel` feature (on by default) enables a rayon-backed evaluator;
//! the sequential path is always available and produces byte-identical
//! reports.

pub mod bernoulli;
pub mod congruence;
pub mod grid;
pub mod harmonic;
pub mod modular;
pub mod multiplicative;
pub mod report;
pub mod selftest;

pub use modular::{Factorization, Modulus, Residue};

use num_bigint::BigInt;

/// Error taxonomy shared by all arithmetic layers.
///
/// Grid evaluation treats every variant except internal misuse as a
/// hypothesis-class condition: the cell is reported as skipped with the
/// error's message rather than silently dropped.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A modular inverse was requested for a value sharing a factor with the
    /// modulus.
    #[error("not invertible: gcd with the modulus is {gcd}")]
    NotInvertible { gcd: BigInt },
    /// Chinese-remainder reconstruction received overlapping moduli.
    #[error("moduli are not pairwise coprime: common factor {gcd}")]
    NonCoprimeModuli { gcd: BigInt },
    /// `J_e(n)` is only defined when `n ≡ +1 or -1 (mod e)`.
    #[error("J_{e}({n}) is undefined: {n} is not congruent to +1 or -1 (mod {e})")]
    UndefinedSymbol { e: u32, n: BigInt },
    /// An operation over the units mod n received a non-unit.
    #[error("{value} is not coprime to {modulus}")]
    NotCoprime { value: BigInt, modulus: BigInt },
    /// A claim or operation hypothesis fails for the given parameters.
    #[error("hypothesis violated: {0}")]
    BadHypothesis(String),
}

impl Error {
    /// Whether a grid sweep may record this error as a skipped cell.
    ///
    /// Hypothesis violations, undefined `J_e` symbols, non-unit arguments,
    /// and non-invertible reductions are legitimate exclusions: the claim
    /// says nothing about such cells. Anything else is an internal fault
    /// and must surface as a failure, never as a skip.
    pub fn is_hypothesis_filter(&self) -> bool {
        match self {
            Error::BadHypothesis(_)
            | Error::UndefinedSymbol { .. }
            | Error::NotCoprime { .. }
            | Error::NotInvertible { .. } => true,
            Error::NonCoprimeModuli { .. } => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
