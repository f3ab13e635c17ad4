use crate::error::{PcpError, Result};
use crate::matcore::Matrix;
use crate::Real;

/// Eigen-decomposition of a symmetric matrix, eigenvalues non-increasing.
#[derive(Debug, Clone)]
pub struct SymmetricEigen<T> {
    pub values: Vec<T>,
    /// Eigenvectors as columns, in the order of `values`.
    pub vectors: Matrix<T>,
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi eigensolver for symmetric matrices.
///
/// Only the upper triangle is trusted; the input is symmetrised first.
pub fn symmetric_eigen<T: Real>(sym: &Matrix<T>) -> Result<SymmetricEigen<T>> {
    let n = sym.rows();
    if n != sym.cols() {
        return Err(PcpError::DimensionError(format!(
            "eigensolve needs a square matrix, got {}x{}",
            sym.rows(),
            sym.cols()
        )));
    }
    sym.check_finite()?;
    let mut a = Matrix::from_fn(n, n, |i, j| if i <= j { sym[(i, j)] } else { sym[(j, i)] });
    let mut v = Matrix::<T>::identity(n);
    let scale = a.frob_norm();
    if scale == T::zero() {
        return Ok(SymmetricEigen {
            values: vec![T::zero(); n],
            vectors: v,
        });
    }
    let tiny = T::epsilon() * T::epsilon() * scale * scale;

    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)] * a[(p, q)];
            }
        }
        if off <= tiny {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                // Skip rotations that cannot change the diagonal in working precision.
                if apq.abs()
                    <= T::epsilon()
                        * T::lit(1e-3)
                        * (app.abs() + aqq.abs()).max(T::min_positive_value())
                {
                    a[(p, q)] = T::zero();
                    a[(q, p)] = T::zero();
                    continue;
                }
                let theta = (aqq - app) / (apq + apq);
                let t = if theta == T::zero() {
                    T::one()
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = T::zero();
                a[(q, p)] = T::zero();
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(j, j)]
            .partial_cmp(&a[(i, i)])
            .expect("finite eigenvalues")
    });
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = v.select_cols(&order);
    Ok(SymmetricEigen { values, vectors })
}

impl<T: Real> SymmetricEigen<T> {
    pub fn max(&self) -> T {
        self.values.first().copied().unwrap_or_else(T::zero)
    }

    pub fn min(&self) -> T {
        self.values.last().copied().unwrap_or_else(T::zero)
    }

    /// Largest eigenvalue magnitude together with its eigenvector.
    pub fn dominant_abs(&self) -> Option<(T, Vec<T>)> {
        let n = self.values.len();
        if n == 0 {
            return None;
        }
        let idx = if self.max().abs() >= self.min().abs() {
            0
        } else {
            n - 1
        };
        Some((self.values[idx].abs(), self.vectors.col(idx)))
    }
}
