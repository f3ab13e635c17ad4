use serde::Serialize;

use crate::error::{PcpError, Result};
use crate::matcore::{dot, Matrix};
use crate::Real;

/// Thin, rank-truncated singular value decomposition `A ≈ U diag(sigma) Vᵀ`.
#[derive(Debug, Clone, Serialize)]
pub struct SvdFactorization<T> {
    /// n×r, orthonormal columns.
    pub u: Matrix<T>,
    /// Strictly positive, non-increasing, length r.
    pub sigma: Vec<T>,
    /// d×r, orthonormal columns.
    pub v: Matrix<T>,
    pub rank: usize,
    /// Relative truncation tolerance that produced `rank`.
    pub tol: T,
}

const MAX_SWEEPS: usize = 80;

/// SVD with the default relative truncation tolerance ([`Real::RANK_TOL`]).
pub fn svd<T: Real>(a: &Matrix<T>) -> Result<SvdFactorization<T>> {
    svd_with_tol(a, T::lit(T::RANK_TOL))
}

/// One-sided (Hestenes) Jacobi SVD on the thinner orientation of `a`.
///
/// Singular values at or below `tol * sigma_1` are dropped.
pub fn svd_with_tol<T: Real>(a: &Matrix<T>, tol: T) -> Result<SvdFactorization<T>> {
    a.check_finite()?;
    if !(tol >= T::zero() && tol < T::one()) {
        return Err(PcpError::InvalidParams(format!(
            "svd tolerance {tol} outside [0, 1)"
        )));
    }
    let (n, d) = a.shape();
    let tall = n >= d;
    // Work on the columns of the tall orientation: `cols` are length-`len` vectors.
    let (len, width) = if tall { (n, d) } else { (d, n) };
    let mut cols: Vec<Vec<T>> = if tall {
        (0..d).map(|j| a.col(j)).collect()
    } else {
        (0..n).map(|i| a.row(i).to_vec()).collect()
    };
    let mut right: Vec<Vec<T>> = (0..width)
        .map(|j| {
            let mut e = vec![T::zero(); width];
            e[j] = T::one();
            e
        })
        .collect();

    let conv = T::epsilon() * T::from_usize_lossy(len.max(1));
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..width {
            for q in p + 1..width {
                let alpha = dot(&cols[p], &cols[p]);
                let beta = dot(&cols[q], &cols[q]);
                let gamma = dot(&cols[p], &cols[q]);
                if gamma == T::zero() || gamma.abs() <= conv * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (gamma + gamma);
                let t = if zeta == T::zero() {
                    T::one()
                } else {
                    zeta.signum() / (zeta.abs() + (zeta * zeta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = c * t;
                rotate_pair(&mut cols, p, q, c, s);
                rotate_pair(&mut right, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<T> = cols.iter().map(|c| dot(c, c).sqrt()).collect();
    let mut order: Vec<usize> = (0..width).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).expect("finite norms"));
    let sigma_max = order.first().map_or(T::zero(), |&i| norms[i]);
    let cutoff = tol * sigma_max;
    let kept: Vec<usize> = order
        .into_iter()
        .take_while(|&i| norms[i] > T::zero() && norms[i] > cutoff)
        .collect();
    let rank = kept.len();

    let sigma: Vec<T> = kept.iter().map(|&i| norms[i]).collect();
    let left_cols: Vec<Vec<T>> = kept
        .iter()
        .map(|&i| cols[i].iter().map(|&x| x / norms[i]).collect())
        .collect();
    let right_cols: Vec<Vec<T>> = kept.iter().map(|&i| right[i].clone()).collect();
    let left = Matrix::from_columns(len, &left_cols);
    let rightm = Matrix::from_columns(width, &right_cols);
    let (u, v) = if tall { (left, rightm) } else { (rightm, left) };
    Ok(SvdFactorization {
        u,
        sigma,
        v,
        rank,
        tol,
    })
}

fn rotate_pair<T: Real>(cols: &mut [Vec<T>], p: usize, q: usize, c: T, s: T) {
    let (lo, hi) = cols.split_at_mut(q);
    let cp = &mut lo[p];
    let cq = &mut hi[0];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let xp = *x;
        let xq = *y;
        *x = c * xp - s * xq;
        *y = s * xp + c * xq;
    }
}

impl<T: Real> SvdFactorization<T> {
    pub fn rows(&self) -> usize {
        self.u.rows()
    }

    pub fn cols(&self) -> usize {
        self.v.rows()
    }

    /// `U diag(sigma) Vᵀ` restricted to the first `r` triplets.
    pub fn reconstruct_rank(&self, r: usize) -> Matrix<T> {
        let r = r.min(self.rank);
        let us = Matrix::from_fn(self.rows(), r, |i, j| self.u[(i, j)] * self.sigma[j]);
        us.matmul_t(&self.v.leading_cols(r))
            .expect("svd factor shapes")
    }

    pub fn reconstruct(&self) -> Matrix<T> {
        self.reconstruct_rank(self.rank)
    }

    /// `sum_{i >= r} sigma_i^2` (0-based), i.e. the squared residual of the best rank-r fit.
    pub fn tail_energy(&self, r: usize) -> T {
        self.sigma.iter().skip(r).map(|&s| s * s).sum()
    }

    pub fn energy(&self) -> T {
        self.tail_energy(0)
    }

    pub fn u_r(&self, r: usize) -> Matrix<T> {
        self.u.leading_cols(r)
    }

    pub fn v_r(&self, r: usize) -> Matrix<T> {
        self.v.leading_cols(r)
    }
}
