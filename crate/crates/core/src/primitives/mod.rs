//! Exact error functionals of the matrix-approximation primitives, the two
//! sufficient-condition certificates built from them, and Monte-Carlo JL
//! moment estimates.

mod certificate;
mod functionals;
mod jl;

pub use certificate::{certify_theorem1, certify_theorem2, Certificate, Condition, Theorem};
pub use functionals::{
    amm_error, frobenius_preservation_error, spectral_approx_error, subspace_embedding_analysis,
    subspace_embedding_error, SubspaceEmbeddingAnalysis,
};
pub use jl::{jl_moment_estimate, JlFamily, JlMomentEstimate};
