use serde::Serialize;

use crate::error::{PcpError, Result};
use crate::matcore::{projection_cost, Matrix, Projection};
use crate::pcpcheck::{pcp_report, PcpReport, ProbeSet};
use crate::primitives::{certify_theorem1, certify_theorem2, Certificate};
use crate::Real;

#[derive(Debug, Clone, Serialize)]
pub struct ImplicationOutcome<T> {
    pub certificate_t1: Certificate<T>,
    pub certificate_t2: Certificate<T>,
    pub report: PcpReport<T>,
    /// Neither certificate holds while the audit exceeds `eps`.
    pub consistent: bool,
}

/// Checks "certificate holds ⇒ `Ã = AS` passes the PCP audit at ε" for both certificates.
pub fn implication_test<T: Real>(
    a: &Matrix<T>,
    s: &Matrix<T>,
    k: usize,
    eps: T,
    probes: &ProbeSet<T>,
) -> Result<ImplicationOutcome<T>> {
    let a_tilde = a.matmul(s)?;
    let certificate_t1 = certify_theorem1(a, s, k, eps)?;
    let certificate_t2 = certify_theorem2(a, s, k, eps)?;
    let report = pcp_report(a, &a_tilde, T::zero(), probes, eps)?;
    let consistent =
        (!certificate_t1.holds || report.pass) && (!certificate_t2.holds || report.pass);
    Ok(ImplicationOutcome {
        certificate_t1,
        certificate_t2,
        report,
        consistent,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TransferCheck<T> {
    /// Index of the selected candidate `P̃`.
    pub chosen: usize,
    /// `‖A − P̃A‖_F²`.
    pub lhs: T,
    /// `(1 + ε)γ/(1 − ε) · min_P ‖A − PA‖_F² + (1 − γ)c/(1 − ε)`.
    pub rhs: T,
    pub min_cost_a: T,
    pub min_cost_sketch: T,
    pub bound_holds: bool,
}

/// Checks the transfer of a γ-approximate sketch solution back to `A`.
///
/// Among the candidates whose sketch cost is within `γ` of the sketch
/// optimum, the one that is worst on `A` is selected, so the bound is tested
/// against the least favourable admissible choice.
pub fn approx_transfer_check<T: Real>(
    a: &Matrix<T>,
    a_tilde: &Matrix<T>,
    c: T,
    k: usize,
    eps: T,
    candidates: &[Projection<T>],
    gamma: T,
) -> Result<TransferCheck<T>> {
    if candidates.is_empty() {
        return Err(PcpError::InvalidInput("no candidate projections".into()));
    }
    if !(gamma >= T::one()) {
        return Err(PcpError::InvalidParams(format!(
            "gamma = {gamma} must be >= 1"
        )));
    }
    if !(eps > T::zero() && eps < T::one()) {
        return Err(PcpError::InvalidParams(format!(
            "eps = {eps} not in (0, 1)"
        )));
    }
    if let Some(bad) = candidates.iter().position(|p| p.rank() > k) {
        return Err(PcpError::InvalidInput(format!(
            "candidate {bad} has rank above k = {k}"
        )));
    }
    let costs_a = candidates
        .iter()
        .map(|p| projection_cost(a, p))
        .collect::<Result<Vec<_>>>()?;
    let costs_s = candidates
        .iter()
        .map(|p| projection_cost(a_tilde, p))
        .collect::<Result<Vec<_>>>()?;
    let min_cost_a = costs_a.iter().copied().fold(T::infinity(), T::min);
    let min_cost_sketch = costs_s.iter().copied().fold(T::infinity(), T::min);
    let admissible = gamma * min_cost_sketch + T::lit(1e-12) * a_tilde.frob_norm_sq();
    let chosen = (0..candidates.len())
        .filter(|&i| costs_s[i] <= admissible)
        .fold(None, |best: Option<usize>, i| match best {
            Some(b) if costs_a[b] >= costs_a[i] => Some(b),
            _ => Some(i),
        })
        .expect("the sketch minimiser is admissible");
    let lhs = costs_a[chosen];
    let one = T::one();
    let rhs = (one + eps) * gamma / (one - eps) * min_cost_a + (one - gamma) * c / (one - eps);
    let bound_holds = lhs <= rhs + T::lit(1e-9) * a.frob_norm_sq();
    Ok(TransferCheck {
        chosen,
        lhs,
        rhs,
        min_cost_a,
        min_cost_sketch,
        bound_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::haar_subspace;
    use crate::pcpcheck::{cluster_candidates, generate_probes};

    #[test]
    fn orthogonal_sketch_consistent() {
        let a = Matrix::from_diag(&[3.0, 2.0, 1.0, 0.5]);
        let q = haar_subspace::<f64>(4, 4, 3).unwrap().basis;
        let probes = generate_probes(&a, &a.matmul(&q).unwrap(), 2, 10, 0).unwrap();
        let out = implication_test(&a, &q, 2, 0.3, &probes).unwrap();
        assert!(out.certificate_t1.holds && out.certificate_t2.holds);
        assert!(out.report.max_abs_rel_err < 1e-12);
        assert!(out.consistent);
    }

    #[test]
    fn zero_sketch_vacuously_consistent() {
        let a = Matrix::from_diag(&[3.0, 2.0, 1.0]);
        let s = Matrix::zeros(3, 2);
        let probes = generate_probes(&a, &Matrix::zeros(3, 2), 1, 5, 0).unwrap();
        let out = implication_test(&a, &s, 1, 0.3, &probes).unwrap();
        assert!(!out.certificate_t1.holds && !out.certificate_t2.holds);
        assert!(!out.report.pass);
        assert!(out.consistent);
    }

    #[test]
    fn exact_sketch_transfer() {
        let a = Matrix::from_rows(&[vec![0.0], vec![0.0], vec![10.0], vec![10.0]]).unwrap();
        let cands = cluster_candidates::<f64>(4, 2).unwrap();
        let t = approx_transfer_check(&a, &a, 0.0, 2, 0.5, &cands, 1.0).unwrap();
        assert!(t.lhs.abs() < 1e-12 * a.frob_norm_sq());
        assert!(t.min_cost_a.abs() < 1e-12 * a.frob_norm_sq());
        assert!(t.bound_holds);
        assert!(approx_transfer_check(&a, &a, 0.0, 2, 0.5, &[], 1.0).is_err());
        assert!(approx_transfer_check(&a, &a, 0.0, 2, 0.5, &cands, 0.5).is_err());
    }
}
