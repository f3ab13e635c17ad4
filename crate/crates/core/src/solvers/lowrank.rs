use crate::error::{PcpError, Result};
use crate::matcore::{svd, Matrix, Projection, ProjectionKind};
use crate::Real;

/// Projection onto the top-`min(k, rank)` left singular vectors of `m`.
pub fn best_rank_k_projection<T: Real>(m: &Matrix<T>, k: usize) -> Result<Projection<T>> {
    if k < 1 {
        return Err(PcpError::InvalidRank("k must be at least 1".into()));
    }
    let fact = svd(m)?;
    Projection::new(fact.u_r(k), ProjectionKind::TopSingularOfA)
}
