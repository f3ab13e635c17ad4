use serde::Serialize;

use crate::error::{PcpError, Result};
use crate::matcore::{head_tail_split, svd, tail_index_p, Matrix};
use crate::primitives::{
    amm_error, frobenius_preservation_error, spectral_approx_error, subspace_embedding_error,
};
use crate::Real;

/// Which sufficient condition a certificate checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Theorem {
    /// Subspace embedding + approximate multiplication + Frobenius preservation.
    T1,
    /// Ridge spectral sandwich + Frobenius preservation past the tail index.
    T2,
}

#[derive(Debug, Clone, Serialize)]
pub struct Condition<T> {
    pub name: &'static str,
    pub measured: T,
    pub threshold: T,
}

impl<T: Real> Condition<T> {
    pub fn satisfied(&self) -> bool {
        self.measured <= self.threshold + T::lit(1e-12)
    }
}

/// Measured errors against the thresholds of a sufficient condition for `Ã = AS`
/// to be an `(ε, 0, k)` projection-cost-preserving sketch.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate<T> {
    pub theorem: Theorem,
    pub k: usize,
    pub eps: T,
    pub conditions: Vec<Condition<T>>,
    /// Ridge parameter used by the spectral condition (T2 only).
    pub lambda: Option<T>,
    /// Tail index p (T2 only).
    pub p: Option<usize>,
    pub holds: bool,
}

impl<T: Real> Certificate<T> {
    fn new(theorem: Theorem, k: usize, eps: T, conditions: Vec<Condition<T>>) -> Self {
        let holds = conditions.iter().all(Condition::satisfied);
        Self {
            theorem,
            k,
            eps,
            conditions,
            lambda: None,
            p: None,
            holds,
        }
    }

    pub fn measured(&self, name: &str) -> Option<T> {
        self.conditions
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.measured)
    }

    pub fn threshold(&self, name: &str) -> Option<T> {
        self.conditions
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.threshold)
    }
}

fn check_args<T: Real>(k: usize, eps: T) -> Result<()> {
    if k < 1 {
        return Err(PcpError::InvalidRank("certificates need k >= 1".into()));
    }
    if !(eps > T::zero() && eps < T::one()) {
        return Err(PcpError::InvalidParams(format!(
            "eps = {eps} not in (0, 1)"
        )));
    }
    Ok(())
}

/// Four-condition certificate: subspace embedding for `A_k` at `ε/3`,
/// approximate multiplication for `(A_{\k}, A_{\k}ᵀ)` and `(A_{\k}, V_k)` at
/// `ε/(6√k)`, and Frobenius preservation for `A_{\k}` at `ε/6`.
pub fn certify_theorem1<T: Real>(
    a: &Matrix<T>,
    s: &Matrix<T>,
    k: usize,
    eps: T,
) -> Result<Certificate<T>> {
    check_args(k, eps)?;
    let fact = svd(a)?;
    let split = head_tail_split(&fact, a, k)?;
    let se_err = if fact.rank == 0 {
        T::zero()
    } else {
        subspace_embedding_error(&split.head, s)?
    };
    let tail = &split.tail;
    let amm_tail_tail = amm_error(tail, &tail.transpose(), s)?;
    let amm_tail_vk = amm_error(tail, &split.v_r, s)?;
    let frob_tail = frobenius_preservation_error(tail, s)?;
    let root_k = T::from_usize_lossy(k).sqrt();
    let amm_threshold = eps / (T::lit(6.0) * root_k);
    let conditions = vec![
        Condition {
            name: "se_err",
            measured: se_err,
            threshold: eps / T::lit(3.0),
        },
        Condition {
            name: "amm_tail_tail",
            measured: amm_tail_tail,
            threshold: amm_threshold,
        },
        Condition {
            name: "amm_tail_vk",
            measured: amm_tail_vk,
            threshold: amm_threshold,
        },
        Condition {
            name: "frob_tail",
            measured: frob_tail,
            threshold: eps / T::lit(6.0),
        },
    ];
    Ok(Certificate::new(Theorem::T1, k, eps, conditions))
}

/// Two-condition certificate: the spectral sandwich at `ε/24` with
/// `λ = ε ‖A − A_k‖_F² / (24k)`, and Frobenius preservation for `A_{\p}` at
/// `(ε/12) ‖A − A_k‖_F² / ‖A − A_p‖_F²` (infinite when `A_{\p} = 0`).
pub fn certify_theorem2<T: Real>(
    a: &Matrix<T>,
    s: &Matrix<T>,
    k: usize,
    eps: T,
) -> Result<Certificate<T>> {
    check_args(k, eps)?;
    let fact = svd(a)?;
    let tail_k = fact.tail_energy(k);
    let kt = T::from_usize_lossy(k);
    let lambda = eps * tail_k / (T::lit(24.0) * kt);
    let spectral_eps = spectral_approx_error(a, s, lambda)?;
    let p = tail_index_p(&fact, k)?;
    let split_p = head_tail_split(&fact, a, p)?;
    let frob_tail_p = frobenius_preservation_error(&split_p.tail, s)?;
    let tail_p = fact.tail_energy(p);
    let frob_threshold = if tail_p == T::zero() {
        T::infinity()
    } else {
        eps / T::lit(12.0) * tail_k / tail_p
    };
    let conditions = vec![
        Condition {
            name: "spectral_eps",
            measured: spectral_eps,
            threshold: eps / T::lit(24.0),
        },
        Condition {
            name: "frob_tail_p",
            measured: frob_tail_p,
            threshold: frob_threshold,
        },
    ];
    let mut cert = Certificate::new(Theorem::T2, k, eps, conditions);
    cert.lambda = Some(lambda);
    cert.p = Some(p);
    Ok(cert)
}
