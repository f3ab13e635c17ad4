use serde::Serialize;

use crate::error::{PcpError, Result};
use crate::matcore::{svd, Matrix, SvdFactorization};
use crate::rng::SeededRng;
use crate::sketchers::sampling::normalize;
use crate::sketchers::{log_floor1, Method, SamplingPattern, Sketch, SketchOperator, SketchParams};
use crate::Real;

/// Column ridge leverage scores `tau_i = a_iᵀ (A Aᵀ + lambda I)^{-1} a_i`
/// with `lambda = ||A - A_k||_F^2 / k`.
#[derive(Debug, Clone, Serialize)]
pub struct RidgeScores<T> {
    pub tau: Vec<T>,
    pub lambda: T,
    pub sum_tau: T,
}

/// Ridge scores through the SVD: `tau_i = sum_j sigma_j^2 / (sigma_j^2 + lambda) V_ij^2`.
///
/// With `lambda = 0` this reduces to the ordinary column leverage scores.
pub fn ridge_scores<T: Real>(a: &Matrix<T>, k: usize) -> Result<RidgeScores<T>> {
    ridge_scores_from(&svd(a)?, k)
}

pub(crate) fn ridge_scores_from<T: Real>(
    fact: &SvdFactorization<T>,
    k: usize,
) -> Result<RidgeScores<T>> {
    if k < 1 {
        return Err(PcpError::InvalidRank("ridge scores need k >= 1".into()));
    }
    let lambda = fact.tail_energy(k) / T::from_usize_lossy(k);
    let shrink: Vec<T> = fact
        .sigma
        .iter()
        .map(|&s| {
            let s2 = s * s;
            s2 / (s2 + lambda)
        })
        .collect();
    let tau = (0..fact.cols())
        .map(|i| {
            fact.v
                .row(i)
                .iter()
                .zip(&shrink)
                .map(|(&v, &w)| w * v * v)
                .sum::<T>()
                .min(T::one())
        })
        .collect();
    let sum_tau = shrink.iter().copied().sum();
    Ok(RidgeScores {
        tau,
        lambda,
        sum_tau,
    })
}

/// `ceil(c max(1, ln(k / delta)) / eps^2 * sum(tau))` unless overridden.
pub fn ridge_width<T: Real>(params: &SketchParams, tau_sum: T) -> usize {
    params.m_override.unwrap_or_else(|| {
        let c = params.const_for(Method::Ridge);
        let base = c * log_floor1(params.k as f64 / params.delta) / (params.eps * params.eps);
        ((base * tau_sum.to_f64_lossy()).ceil() as usize).max(1)
    })
}

/// Ridge leverage score column sampling, optionally from caller-supplied
/// overestimates `tau_over_i >= tau_i`.
pub fn ridge_leverage_sample<T: Real>(
    a: &Matrix<T>,
    params: &SketchParams,
    tau_over: Option<&[T]>,
) -> Result<Sketch<T>> {
    params.validate()?;
    let scores = ridge_scores(a, params.k)?;
    let tau_tilde: Vec<T> = match tau_over {
        None => scores.tau.clone(),
        Some(over) => {
            if over.len() != a.cols() {
                return Err(PcpError::DimensionError(format!(
                    "{} overestimates for {} columns",
                    over.len(),
                    a.cols()
                )));
            }
            let slack = T::lit(1e-10);
            for (index, (&given, &tau)) in over.iter().zip(&scores.tau).enumerate() {
                if !(given >= tau - slack) {
                    return Err(PcpError::InvalidOverestimate {
                        index,
                        given: given.to_f64_lossy(),
                        required: tau.to_f64_lossy(),
                    });
                }
            }
            over.to_vec()
        }
    };
    let total: T = tau_tilde.iter().copied().sum();
    let probs = normalize(&tau_tilde)?;
    let t = ridge_width(params, total);
    let mut rng = SeededRng::new(params.seed);
    let pattern = SamplingPattern::draw(probs, t, &mut rng);
    let a_tilde = pattern.apply(a);
    Ok(Sketch::assemble(
        a,
        a_tilde,
        SketchOperator::Sampling(pattern),
        Method::Ridge,
        params.clone(),
        T::zero(),
        t,
    ))
}
