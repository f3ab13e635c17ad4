use crate::error::Result;
use crate::matcore::{svd, Matrix};
use crate::sketchers::{Method, Sketch, SketchOperator, SketchParams};
use crate::Real;

/// Truncated-SVD sketch `Ã = A V_m = U_m Σ_m` with `c = ||A - A_m||_F^2`.
///
/// `m = ceil(k / eps)` unless overridden. When `m` exceeds `rank(A)` the
/// operator and the sketch are padded with zero columns so that `Ã` always
/// has `m` columns.
pub fn svd_sketch<T: Real>(a: &Matrix<T>, params: &SketchParams) -> Result<Sketch<T>> {
    params.validate()?;
    let m = params
        .m_override
        .unwrap_or_else(|| (params.k as f64 / params.eps).ceil() as usize);
    let fact = svd(a)?;
    let kept = m.min(fact.rank);
    let v_m = fact.v_r(kept).pad_cols(m - kept);
    let a_tilde = Matrix::from_fn(a.rows(), m, |i, j| {
        if j < kept {
            fact.u[(i, j)] * fact.sigma[j]
        } else {
            T::zero()
        }
    });
    let c_const = fact.tail_energy(m);
    Ok(Sketch::assemble(
        a,
        a_tilde,
        SketchOperator::Dense(v_m),
        Method::Svd,
        params.clone(),
        c_const,
        m,
    ))
}
