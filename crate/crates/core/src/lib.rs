//! Projection-cost-preserving (PCP) sketches.
//!
//! `Ã` is an `(ε, c, k)` PCP sketch of `A ∈ R^{n×d}` when, for every rank-≤k
//! orthogonal projection `P`,
//! `(1 − ε)‖A − PA‖_F² ≤ ‖Ã − PÃ‖_F² + c ≤ (1 + ε)‖A − PA‖_F²`.
//!
//! The crate builds such sketches ([`sketchers`]), evaluates the exact
//! sufficient conditions that certify them ([`primitives`]), audits the
//! inequality against adversarial and random probes ([`pcpcheck`]), and
//! solves downstream PCA / k-means problems on the sketch ([`solvers`]).
//!
//! All numerics are generic over [`Real`] (`f64` or `f32`); the aliases
//! below fix the scalar to `f64`, in which the documented tolerances are stated.

// `!(x >= y)` is used deliberately so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod io;
pub mod matcore;
pub mod pcpcheck;
pub mod primitives;
mod real;
pub mod rng;
pub mod sketchers;
pub mod solvers;
pub mod synth;

pub use error::{PcpError, Result};
pub use real::Real;

pub type Mat = matcore::Matrix<f64>;
pub type Mat32 = matcore::Matrix<f32>;
pub type Svd = matcore::SvdFactorization<f64>;
pub type Proj = matcore::Projection<f64>;
pub type SketchF64 = sketchers::Sketch<f64>;
pub type CertificateF64 = primitives::Certificate<f64>;
pub type ReportF64 = pcpcheck::PcpReport<f64>;
pub type ProbeSetF64 = pcpcheck::ProbeSet<f64>;
pub type ClusteringF64 = solvers::Clustering<f64>;
