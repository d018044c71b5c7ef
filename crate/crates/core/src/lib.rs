//! Randomness certification for maximum-confidence state discrimination.
//!
//! Two untrusted devices play a prepare-and-measure discrimination game with
//! binary inputs and ternary outputs. Given the observed outcome rate and
//! discrimination confidence, plus a distinguishability assumption on the
//! prepared states, this crate bounds the guessing probability of an
//! eavesdropper holding the measurement strategy label, and converts it to a
//! certifiable min-entropy.
//!
//! Two adversary/device models are covered:
//!
//! - a quantum model, where the bound is a small semidefinite program over
//!   qubit measurement strategies, and
//! - a preparation-noncontextual model, where the ontic-space picture reduces
//!   to a finite linear program over four region integrals.
//!
//! Both programs are solved by the built-in block-diagonal interior-point
//! solver in [`solver`], and every reported value carries a dual certificate.
//! Independent brute-force oracles live in [`oracle`].

pub mod experiments;
pub mod noncontextual;
pub mod oracle;
pub mod quantum;
pub mod scenario;
pub mod solver;
pub mod verify;

pub use noncontextual::NoncontextualProgram;
pub use quantum::QuantumProgram;
pub use scenario::{CertificationResult, Overlap, Priors, Theory};

/// Top-level error type for certification runs.
#[derive(Debug, thiserror::Error)]
pub enum CertError {
    #[error(transparent)]
    Scenario(#[from] scenario::ScenarioError),
    #[error("statistics are not achievable: {0}")]
    InfeasibleStatistics(String),
    #[error(transparent)]
    Solver(#[from] solver::SolverError),
    #[error("dual certificate rejected, cone violation {0:.3e}")]
    CertificateInvalid(f64),
}
