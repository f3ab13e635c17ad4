//! Sketch constructions `Ã = A S`.
//!
//! Every constructor is a pure function of `(A, params)`; the seed lives in
//! [`SketchParams`] and identical inputs give bit-identical sketches.

mod gaussian;
mod non_oblivious;
mod ridge;
mod sampling;
mod svd_sketch;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{PcpError, Result};
use crate::matcore::{haar_subspace, Matrix};
use crate::Real;

pub use gaussian::{gaussian_operator, gaussian_sketch, gaussian_width};
pub use non_oblivious::{non_oblivious_rp, non_oblivious_width};
pub use ridge::{ridge_leverage_sample, ridge_scores, ridge_width, RidgeScores};
pub use sampling::{
    draw_with_replacement, leverage_residual_probs, leverage_residual_sample,
    leverage_residual_width, SamplingPattern,
};
pub use svd_sketch::svd_sketch;

/// Sketch construction recipe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Gaussian,
    NonOblivious,
    LeverageResidual,
    Ridge,
    Svd,
    /// Caller-supplied operator (e.g. a random orthogonal matrix).
    Custom,
}

impl Method {
    /// Randomized constructions that yield `c = 0`.
    pub const ZERO_CONSTANT: [Method; 4] = [
        Method::Gaussian,
        Method::NonOblivious,
        Method::LeverageResidual,
        Method::Ridge,
    ];

    /// Default for the unstated universal constant in the width formula.
    pub fn default_const(self) -> f64 {
        match self {
            Method::Gaussian => 8.0,
            Method::NonOblivious => 4.0,
            Method::LeverageResidual | Method::Ridge => 16.0,
            Method::Svd | Method::Custom => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Gaussian => "gaussian",
            Method::NonOblivious => "non-oblivious",
            Method::LeverageResidual => "leverage-residual",
            Method::Ridge => "ridge",
            Method::Svd => "svd",
            Method::Custom => "custom",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = PcpError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(Method::Gaussian),
            "non-oblivious" | "nonoblivious" => Ok(Method::NonOblivious),
            "leverage-residual" | "leverage" => Ok(Method::LeverageResidual),
            "ridge" => Ok(Method::Ridge),
            "svd" => Ok(Method::Svd),
            other => Err(PcpError::Config(format!("unknown sketch method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SketchParams {
    pub k: usize,
    pub eps: f64,
    pub delta: f64,
    /// Universal constant of the width formula; `None` uses [`Method::default_const`].
    pub const_c: Option<f64>,
    pub seed: u64,
    pub m_override: Option<usize>,
}

impl SketchParams {
    pub fn new(k: usize, eps: f64, delta: f64) -> Self {
        Self {
            k,
            eps,
            delta,
            const_c: None,
            seed: 0,
            m_override: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_const(mut self, c: f64) -> Self {
        self.const_c = Some(c);
        self
    }

    pub fn with_width(mut self, m: usize) -> Self {
        self.m_override = Some(m);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(PcpError::InvalidParams("k must be at least 1".into()));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(PcpError::InvalidParams(format!(
                "eps = {} not in (0, 1)",
                self.eps
            )));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(PcpError::InvalidParams(format!(
                "delta = {} not in (0, 1)",
                self.delta
            )));
        }
        if let Some(c) = self.const_c {
            if !(c > 0.0 && c.is_finite()) {
                return Err(PcpError::InvalidParams(format!(
                    "const_c = {c} must be positive"
                )));
            }
        }
        if self.m_override == Some(0) {
            return Err(PcpError::InvalidParams(
                "sketch width must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn const_for(&self, method: Method) -> f64 {
        self.const_c.unwrap_or_else(|| method.default_const())
    }
}

/// `ln(x)` floored at 1 so width formulas never collapse.
pub(crate) fn log_floor1(x: f64) -> f64 {
    x.ln().max(1.0)
}

/// The right-multiplying sketch operator.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SketchOperator<T> {
    Dense(Matrix<T>),
    Sampling(SamplingPattern<T>),
}

#[derive(Debug, Clone, Serialize)]
pub struct Sketch<T> {
    pub a_tilde: Matrix<T>,
    pub operator: SketchOperator<T>,
    /// Additive constant of the PCP guarantee.
    pub c_const: T,
    pub method: Method,
    pub params: SketchParams,
    pub m: usize,
    /// Set when the sketch is not narrower than the input (`m >= d`).
    pub width_not_reducing: bool,
}

impl<T: Real> Sketch<T> {
    /// Builds `Ã = A S` from an explicit operator.
    pub fn from_operator(
        a: &Matrix<T>,
        s: Matrix<T>,
        method: Method,
        params: SketchParams,
        c_const: T,
    ) -> Result<Self> {
        let a_tilde = a.matmul(&s)?;
        let m = s.cols();
        Ok(Self::assemble(
            a,
            a_tilde,
            SketchOperator::Dense(s),
            method,
            params,
            c_const,
            m,
        ))
    }

    pub(crate) fn assemble(
        a: &Matrix<T>,
        a_tilde: Matrix<T>,
        operator: SketchOperator<T>,
        method: Method,
        params: SketchParams,
        c_const: T,
        m: usize,
    ) -> Self {
        let width_not_reducing = m >= a.cols();
        if width_not_reducing {
            log::warn!("{method} sketch width m={m} does not reduce d={}", a.cols());
        }
        Self {
            a_tilde,
            operator,
            c_const,
            method,
            params,
            m,
            width_not_reducing,
        }
    }

    /// The operator as an explicit d×m matrix.
    pub fn operator_matrix(&self, d: usize) -> Matrix<T> {
        match &self.operator {
            SketchOperator::Dense(s) => s.clone(),
            SketchOperator::Sampling(p) => p.to_dense(d),
        }
    }

    pub fn sampling(&self) -> Option<&SamplingPattern<T>> {
        match &self.operator {
            SketchOperator::Sampling(p) => Some(p),
            SketchOperator::Dense(_) => None,
        }
    }
}

/// Random d×d orthogonal operator: a lossless sketch with `c = 0`.
pub fn orthogonal_sketch<T: Real>(a: &Matrix<T>, seed: u64) -> Result<Sketch<T>> {
    let d = a.cols();
    let q = haar_subspace::<T>(d, d, seed)?.basis;
    let params = SketchParams::new(d, 0.5, 0.5).with_seed(seed).with_width(d);
    Sketch::from_operator(a, q, Method::Custom, params, T::zero())
}

/// Dispatches to the constructor for `method`.
pub fn build_sketch<T: Real>(
    a: &Matrix<T>,
    method: Method,
    params: &SketchParams,
) -> Result<Sketch<T>> {
    match method {
        Method::Gaussian => gaussian_sketch(a, params),
        Method::NonOblivious => non_oblivious_rp(a, params),
        Method::LeverageResidual => leverage_residual_sample(a, params),
        Method::Ridge => ridge_leverage_sample(a, params, None),
        Method::Svd => svd_sketch(a, params),
        Method::Custom => Err(PcpError::Unsupported(
            "custom sketches are built with Sketch::from_operator".into(),
        )),
    }
}
