use crate::error::Result;
use crate::matcore::Matrix;
use crate::rng::SeededRng;
use crate::sketchers::{Method, Sketch, SketchParams};
use crate::Real;

/// `ceil(c (k + ln(1/delta)) / eps^2)` unless overridden.
pub fn gaussian_width(params: &SketchParams) -> usize {
    params.m_override.unwrap_or_else(|| {
        let c = params.const_for(Method::Gaussian);
        let raw = c * (params.k as f64 + (1.0 / params.delta).ln()) / (params.eps * params.eps);
        raw.ceil() as usize
    })
}

/// d×m matrix of i.i.d. `N(0, 1) / sqrt(m)` entries.
pub fn gaussian_operator<T: Real>(d: usize, m: usize, seed: u64) -> Matrix<T> {
    let mut rng = SeededRng::new(seed);
    let scale = T::one() / T::from_usize_lossy(m).sqrt();
    Matrix::from_fn(d, m, |_, _| rng.normal_as::<T>() * scale)
}

/// Dense Gaussian random projection.
pub fn gaussian_sketch<T: Real>(a: &Matrix<T>, params: &SketchParams) -> Result<Sketch<T>> {
    params.validate()?;
    let m = gaussian_width(params);
    let s = gaussian_operator(a.cols(), m, params.seed);
    Sketch::from_operator(a, s, Method::Gaussian, params.clone(), T::zero())
}
