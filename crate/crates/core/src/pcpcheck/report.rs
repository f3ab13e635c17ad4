use serde::Serialize;

use crate::error::{PcpError, Result};
use crate::matcore::{projection_cost, Matrix, Projection};
use crate::pcpcheck::ProbeSet;
use crate::Real;

#[derive(Debug, Clone, Serialize)]
pub struct ProbeEvaluation<T> {
    pub tag: String,
    pub cost_a: T,
    pub cost_sketch: T,
    /// `(cost_sketch + c − cost_a) / cost_a`; for zero-cost probes 0 when the
    /// sketch side is also zero, otherwise infinite.
    pub signed_rel_err: T,
    /// `cost_a` was numerically zero and the probe was checked absolutely.
    pub degenerate: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PcpReport<T> {
    pub per_probe: Vec<ProbeEvaluation<T>>,
    pub max_abs_rel_err: T,
    pub eps_target: T,
    pub pass: bool,
}

impl<T: Real> PcpReport<T> {
    pub fn n_probes(&self) -> usize {
        self.per_probe.len()
    }
}

fn evaluate<T: Real>(
    a: &Matrix<T>,
    a_tilde: &Matrix<T>,
    c: T,
    p: &Projection<T>,
    tag: &str,
) -> Result<ProbeEvaluation<T>> {
    if a.rows() != a_tilde.rows() {
        return Err(PcpError::DimensionError(format!(
            "A has {} rows, sketch has {}",
            a.rows(),
            a_tilde.rows()
        )));
    }
    let cost_a = projection_cost(a, p)?;
    let cost_sketch = projection_cost(a_tilde, p)?;
    let scale = a.frob_norm_sq();
    let degenerate = cost_a <= T::lit(1e-12) * scale;
    let signed_rel_err = if degenerate {
        let side = cost_sketch + c;
        if side.abs() <= T::lit(1e-8) * scale {
            T::zero()
        } else {
            side.signum() * T::infinity()
        }
    } else {
        (cost_sketch + c - cost_a) / cost_a
    };
    Ok(ProbeEvaluation {
        tag: tag.to_string(),
        cost_a,
        cost_sketch,
        signed_rel_err,
        degenerate,
    })
}

/// Signed relative PCP error of one probe.
pub fn pcp_error_on_probe<T: Real>(
    a: &Matrix<T>,
    a_tilde: &Matrix<T>,
    c: T,
    p: &Projection<T>,
) -> Result<T> {
    evaluate(a, a_tilde, c, p, "").map(|e| e.signed_rel_err)
}

/// Evaluates every probe (in probe order) and compares the worst error to `eps_target`.
pub fn pcp_report<T: Real>(
    a: &Matrix<T>,
    a_tilde: &Matrix<T>,
    c: T,
    probes: &ProbeSet<T>,
    eps_target: T,
) -> Result<PcpReport<T>> {
    if probes.is_empty() {
        return Err(PcpError::InvalidInput("empty probe set".into()));
    }
    let per_probe = probes
        .iter()
        .map(|(p, tag)| evaluate(a, a_tilde, c, p, tag))
        .collect::<Result<Vec<_>>>()?;
    let max_abs_rel_err = per_probe
        .iter()
        .fold(T::zero(), |m, e| m.max(e.signed_rel_err.abs()));
    Ok(PcpReport {
        per_probe,
        max_abs_rel_err,
        eps_target,
        pass: max_abs_rel_err <= eps_target,
    })
}
