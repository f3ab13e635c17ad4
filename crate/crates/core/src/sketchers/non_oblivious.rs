use crate::error::Result;
use crate::matcore::{svd, Matrix};
use crate::rng::SeededRng;
use crate::sketchers::{Method, Sketch, SketchOperator, SketchParams};
use crate::Real;

/// Rows of the left Gaussian map: `ceil(c k / eps)` unless overridden.
pub fn non_oblivious_width(params: &SketchParams) -> usize {
    params.m_override.unwrap_or_else(|| {
        let c = params.const_for(Method::NonOblivious);
        (c * params.k as f64 / params.eps).ceil() as usize
    })
}

/// Non-oblivious random projection: `Ã = A Z` with `Z` an orthonormal basis of
/// the row space of `Π A` for a Gaussian `Π`.
///
/// The width of `Z` is `rank(Π A)`, which can be below the requested width.
pub fn non_oblivious_rp<T: Real>(a: &Matrix<T>, params: &SketchParams) -> Result<Sketch<T>> {
    params.validate()?;
    let rows = non_oblivious_width(params);
    let mut rng = SeededRng::new(params.seed);
    let pi = Matrix::from_fn(rows, a.rows(), |_, _| rng.normal_as::<T>());
    let pa = pi.matmul(a)?;
    let z = svd(&pa)?.v;
    let a_tilde = a.matmul(&z)?;
    let m = z.cols();
    Ok(Sketch::assemble(
        a,
        a_tilde,
        SketchOperator::Dense(z),
        Method::NonOblivious,
        params.clone(),
        T::zero(),
        m,
    ))
}
