use serde::Serialize;

use crate::error::{PcpError, Result};
use crate::matcore::{Matrix, SvdFactorization};
use crate::Real;

/// `M = head + tail` where `head = U_r U_rᵀ M` is the best rank-r approximation.
#[derive(Debug, Clone, Serialize)]
pub struct HeadTailSplit<T> {
    pub r: usize,
    pub head: Matrix<T>,
    pub tail: Matrix<T>,
    pub u_r: Matrix<T>,
    pub v_r: Matrix<T>,
}

/// Splits `m` along its top-`r` left singular subspace.
///
/// When `r >= rank` the head is `m` itself and the tail is exactly zero.
pub fn head_tail_split<T: Real>(
    fact: &SvdFactorization<T>,
    m: &Matrix<T>,
    r: usize,
) -> Result<HeadTailSplit<T>> {
    if fact.rows() != m.rows() || fact.cols() != m.cols() {
        return Err(PcpError::DimensionError(format!(
            "factorization is {}x{}, matrix is {}x{}",
            fact.rows(),
            fact.cols(),
            m.rows(),
            m.cols()
        )));
    }
    let u_r = fact.u_r(r);
    let v_r = fact.v_r(r);
    if r >= fact.rank {
        return Ok(HeadTailSplit {
            r,
            head: m.clone(),
            tail: Matrix::zeros(m.rows(), m.cols()),
            u_r,
            v_r,
        });
    }
    let head = u_r.matmul(&u_r.t_matmul(m)?)?;
    let tail = m.sub(&head)?;
    Ok(HeadTailSplit {
        r,
        head,
        tail,
        u_r,
        v_r,
    })
}

/// Largest `p` with `sigma_p^2 >= ||A - A_k||_F^2 / k` (1-based, ties included).
///
/// Returns `rank(A)` when the rank-k residual vanishes. May return 0 when even
/// `sigma_1^2` falls below the threshold.
pub fn tail_index_p<T: Real>(fact: &SvdFactorization<T>, k: usize) -> Result<usize> {
    if k < 1 {
        return Err(PcpError::InvalidRank("tail index needs k >= 1".into()));
    }
    let tail = fact.tail_energy(k);
    if tail == T::zero() {
        return Ok(fact.rank);
    }
    let threshold = tail / T::from_usize_lossy(k);
    Ok(fact
        .sigma
        .iter()
        .take_while(|&&s| s * s >= threshold)
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::svd;

    #[test]
    fn diagonal_split() {
        let a = Matrix::from_diag(&[3.0, 2.0, 1.0]);
        let f = svd(&a).unwrap();
        let s = head_tail_split(&f, &a, 1).unwrap();
        assert_eq!(s.head, Matrix::from_diag(&[3.0, 0.0, 0.0]));
        assert_eq!(s.tail, Matrix::from_diag(&[0.0, 2.0, 1.0]));
        let full = head_tail_split(&f, &a, 3).unwrap();
        assert_eq!(full.tail, Matrix::zeros(3, 3));
        let none = head_tail_split(&f, &a, 0).unwrap();
        assert_eq!(none.tail, a);
    }

    #[test]
    fn tail_index_examples() {
        let p = |d: &[f64], k| tail_index_p(&svd(&Matrix::from_diag(d)).unwrap(), k).unwrap();
        assert_eq!(p(&[3.0, 2.0, 1.0, 1.0], 2), 4);
        assert_eq!(p(&[3.0, 1.0, 0.5, 0.5], 1), 1);
        assert_eq!(p(&[3.0, 2.0, 0.0, 0.0], 2), 2);
        assert_eq!(p(&[1.0; 6], 1), 0);
        let f = svd(&Matrix::<f64>::identity(2)).unwrap();
        assert!(matches!(tail_index_p(&f, 0), Err(PcpError::InvalidRank(_))));
    }

    #[test]
    fn dimension_mismatch() {
        let f = svd(&Matrix::<f64>::identity(2)).unwrap();
        assert!(head_tail_split(&f, &Matrix::identity(3), 1).is_err());
    }
}
