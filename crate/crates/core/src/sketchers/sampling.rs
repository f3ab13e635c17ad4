use serde::Serialize;

use crate::error::{PcpError, Result};
use crate::matcore::{head_tail_split, svd, Matrix, SvdFactorization};
use crate::rng::SeededRng;
use crate::sketchers::{log_floor1, Method, Sketch, SketchOperator, SketchParams};
use crate::Real;

/// Column sampling with replacement: column `j` of `S` is `weights[j] * e_{indices[j]}`.
#[derive(Debug, Clone, Serialize)]
pub struct SamplingPattern<T> {
    pub indices: Vec<usize>,
    /// `1 / sqrt(m * probs[indices[j]])`.
    pub weights: Vec<T>,
    /// Sampling distribution over all d columns.
    pub probs: Vec<T>,
}

impl<T: Real> SamplingPattern<T> {
    /// Draws `m` columns from `probs` and attaches the rescaling weights.
    pub fn draw(probs: Vec<T>, m: usize, rng: &mut SeededRng) -> Self {
        let indices = draw_with_replacement(&probs, m, rng);
        let mt = T::from_usize_lossy(m);
        let weights = indices
            .iter()
            .map(|&i| T::one() / (mt * probs[i]).sqrt())
            .collect();
        Self {
            indices,
            weights,
            probs,
        }
    }

    pub fn m(&self) -> usize {
        self.indices.len()
    }

    /// `A S`: rescaled copies of the sampled columns.
    pub fn apply(&self, a: &Matrix<T>) -> Matrix<T> {
        Matrix::from_fn(a.rows(), self.m(), |i, j| {
            a[(i, self.indices[j])] * self.weights[j]
        })
    }

    pub fn to_dense(&self, d: usize) -> Matrix<T> {
        let mut s = Matrix::zeros(d, self.m());
        for (j, (&i, &w)) in self.indices.iter().zip(&self.weights).enumerate() {
            s[(i, j)] = w;
        }
        s
    }

    /// How often each of the d columns was drawn.
    pub fn counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.probs.len()];
        for &i in &self.indices {
            c[i] += 1;
        }
        c
    }
}

/// Inverse-CDF sampling with replacement.
///
/// A uniform `u` selects the first index whose cumulative mass exceeds `u`, so
/// zero-probability entries are never returned and ties go to the lowest index.
pub fn draw_with_replacement<T: Real>(probs: &[T], m: usize, rng: &mut SeededRng) -> Vec<usize> {
    let mut cum = Vec::with_capacity(probs.len());
    let mut acc = 0.0f64;
    for p in probs {
        acc += p.to_f64_lossy();
        cum.push(acc);
    }
    let last_positive = probs.iter().rposition(|&p| p > T::zero()).unwrap_or(0);
    (0..m)
        .map(|_| {
            let u = rng.uniform() * acc;
            let i = cum.partition_point(|&c| c <= u);
            i.min(last_positive)
        })
        .collect()
}

/// Normalises nonnegative weights into a probability vector.
pub(crate) fn normalize<T: Real>(w: &[T]) -> Result<Vec<T>> {
    let total: T = w.iter().copied().sum();
    if !(total > T::zero()) {
        return Err(PcpError::ZeroMatrix("sampling weights sum to zero".into()));
    }
    Ok(w.iter().map(|&x| x / total).collect())
}

/// Column probabilities mixing rank-k column leverage and residual column mass:
/// `p_i = ||(V_k)_i||^2 / (2k) + ||(A - A_k)_{:,i}||^2 / (2 ||A - A_k||_F^2)`.
///
/// With a vanishing residual the leverage half carries all the mass. When
/// `rank(A) < k` the leverage term is normalised by `rank(A)`.
pub fn leverage_residual_probs<T: Real>(
    a: &Matrix<T>,
    fact: &SvdFactorization<T>,
    k: usize,
) -> Result<Vec<T>> {
    if fact.rank == 0 {
        return Err(PcpError::ZeroMatrix(
            "cannot sample columns of a zero matrix".into(),
        ));
    }
    let split = head_tail_split(fact, a, k)?;
    let vk = &split.v_r;
    let k_eff = T::from_usize_lossy(vk.cols());
    let lev: Vec<T> = vk.row_norms_sq();
    let resid = split.tail.col_norms_sq();
    let resid_total: T = resid.iter().copied().sum();
    let half = T::lit(0.5);
    let raw: Vec<T> = if resid_total > T::zero() {
        lev.iter()
            .zip(&resid)
            .map(|(&l, &r)| half * l / k_eff + half * r / resid_total)
            .collect()
    } else {
        lev.iter().map(|&l| l / k_eff).collect()
    };
    // Renormalise away rounding so the distribution sums to one.
    normalize(&raw)
}

/// `ceil(c k max(1, ln(k / delta)) / eps^2)` unless overridden.
pub fn leverage_residual_width(params: &SketchParams) -> usize {
    params.m_override.unwrap_or_else(|| {
        let c = params.const_for(Method::LeverageResidual);
        let k = params.k as f64;
        (c * k * log_floor1(k / params.delta) / (params.eps * params.eps)).ceil() as usize
    })
}

/// Leverage score + residual column sampling.
pub fn leverage_residual_sample<T: Real>(
    a: &Matrix<T>,
    params: &SketchParams,
) -> Result<Sketch<T>> {
    params.validate()?;
    if a.cols() < 2 {
        return Err(PcpError::InvalidInput(
            "column sampling needs d >= 2".into(),
        ));
    }
    let fact = svd(a)?;
    let probs = leverage_residual_probs(a, &fact, params.k)?;
    let m = leverage_residual_width(params);
    let mut rng = SeededRng::new(params.seed);
    let pattern = SamplingPattern::draw(probs, m, &mut rng);
    let a_tilde = pattern.apply(a);
    Ok(Sketch::assemble(
        a,
        a_tilde,
        SketchOperator::Sampling(pattern),
        Method::LeverageResidual,
        params.clone(),
        T::zero(),
        m,
    ))
}
