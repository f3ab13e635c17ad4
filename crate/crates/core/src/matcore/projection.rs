use serde::Serialize;

use crate::error::{PcpError, Result};
use crate::matcore::{dot, Matrix};
use crate::rng::SeededRng;
use crate::Real;

/// Where a projection came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectionKind {
    RandomSubspace,
    TopSingularOfA,
    TopSingularOfSketch,
    ClusterIndicator,
    BasisAxes,
    Custom,
}

/// Orthogonal projection `P = Q Qᵀ`, stored through its orthonormal basis `Q` (n×k').
#[derive(Debug, Clone, Serialize)]
pub struct Projection<T> {
    pub basis: Matrix<T>,
    pub kind: ProjectionKind,
}

impl<T: Real> Projection<T> {
    /// Wraps a basis after checking orthonormality to [`Real::CHECK_TOL`].
    pub fn new(basis: Matrix<T>, kind: ProjectionKind) -> Result<Self> {
        basis.check_finite()?;
        if basis.cols() > 0 {
            let dev = basis.gram().max_abs_dev_from_identity();
            if dev > T::lit(T::CHECK_TOL) {
                return Err(PcpError::InvalidInput(format!(
                    "projection basis is not orthonormal (deviation {dev})"
                )));
            }
        }
        Ok(Self { basis, kind })
    }

    pub(crate) fn new_unchecked(basis: Matrix<T>, kind: ProjectionKind) -> Self {
        Self { basis, kind }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Dense `Q Qᵀ`. Only for tests and small n.
    pub fn matrix(&self) -> Matrix<T> {
        self.basis.matmul_t(&self.basis).expect("basis shapes")
    }

    /// `P M`.
    pub fn apply(&self, m: &Matrix<T>) -> Result<Matrix<T>> {
        self.basis.matmul(&self.basis.t_matmul(m)?)
    }
}

/// `||A - P A||_F^2`, evaluated as `||A||_F^2 - ||Qᵀ A||_F^2` and clamped at zero.
pub fn projection_cost<T: Real>(a: &Matrix<T>, p: &Projection<T>) -> Result<T> {
    if p.dim() != a.rows() {
        return Err(PcpError::DimensionError(format!(
            "projection acts on R^{}, matrix has {} rows",
            p.dim(),
            a.rows()
        )));
    }
    let captured = p.basis.t_matmul(a)?.frob_norm_sq();
    Ok((a.frob_norm_sq() - captured).max(T::zero()))
}

/// Modified Gram-Schmidt with one re-orthogonalisation pass.
///
/// Columns whose norm collapses below `drop_tol` (relative to their original
/// norm) are dropped, so the result may have fewer columns than the input.
pub fn orthonormalize<T: Real>(m: &Matrix<T>, drop_tol: T) -> Matrix<T> {
    let n = m.rows();
    let mut basis: Vec<Vec<T>> = Vec::with_capacity(m.cols());
    for j in 0..m.cols() {
        let mut v = m.col(j);
        let orig = dot(&v, &v).sqrt();
        if orig == T::zero() {
            continue;
        }
        for _pass in 0..2 {
            for q in &basis {
                let proj = dot(q, &v);
                for (x, &y) in v.iter_mut().zip(q) {
                    *x -= proj * y;
                }
            }
        }
        let norm = dot(&v, &v).sqrt();
        if norm > drop_tol * orig {
            v.iter_mut().for_each(|x| *x /= norm);
            basis.push(v);
        }
    }
    Matrix::from_columns(n, &basis)
}

/// Uniformly random k-dimensional subspace of R^n: orthonormalised n×k Gaussian matrix.
pub fn haar_subspace<T: Real>(n: usize, k: usize, seed: u64) -> Result<Projection<T>> {
    if k < 1 || k > n {
        return Err(PcpError::InvalidRank(format!(
            "need 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    let mut rng = SeededRng::new(seed);
    // Redraw in the (probability-zero) event of a rank-deficient draw.
    loop {
        let g = Matrix::from_fn(n, k, |_, _| rng.normal_as::<T>());
        let q = orthonormalize(&g, T::lit(1e-6));
        if q.cols() == k {
            return Ok(Projection::new_unchecked(q, ProjectionKind::RandomSubspace));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cost_examples() {
        let p = Projection::new(
            Matrix::from_columns(2, &[vec![1.0, 0.0]]),
            ProjectionKind::Custom,
        )
        .unwrap();
        assert_eq!(projection_cost(&Matrix::identity(2), &p).unwrap(), 1.0);
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(projection_cost(&a, &p).unwrap(), 0.0);
        assert!(projection_cost(&Matrix::identity(3), &p).is_err());
    }

    #[test]
    fn haar_contracts() {
        let full = haar_subspace::<f64>(3, 3, 5).unwrap();
        assert!(full.matrix().max_abs_dev_from_identity() < 1e-12);
        let p = haar_subspace::<f64>(5, 2, 9).unwrap();
        assert!(p.basis.gram().max_abs_dev_from_identity() < 1e-12);
        let again = haar_subspace::<f64>(5, 2, 9).unwrap();
        assert_eq!(p.basis.as_slice(), again.basis.as_slice());
        let other = haar_subspace::<f64>(5, 2, 10).unwrap();
        assert_ne!(p.basis.as_slice(), other.basis.as_slice());
        assert!(matches!(
            haar_subspace::<f64>(2, 3, 0),
            Err(PcpError::InvalidRank(_))
        ));
    }

    #[test]
    fn rejects_non_orthonormal_basis() {
        let b = Matrix::from_columns(2, &[vec![1.0, 1.0]]);
        assert!(Projection::new(b, ProjectionKind::Custom).is_err());
    }

    #[test]
    fn orthonormalize_drops_dependent_columns() {
        let m = Matrix::from_columns(
            3,
            &[
                vec![1.0, 0.0, 0.0],
                vec![2.0, 0.0, 0.0],
                vec![1.0, 1.0, 0.0],
            ],
        );
        let q = orthonormalize(&m, 1e-10);
        assert_eq!(q.cols(), 2);
        assert!(q.gram().max_abs_dev_from_identity() < 1e-15);
    }
}
