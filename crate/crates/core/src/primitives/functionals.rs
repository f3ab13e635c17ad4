use crate::error::{PcpError, Result};
use crate::matcore::{svd, symmetric_eigen, Matrix};
use crate::Real;

fn check_sketch_rows<T: Real>(m: &Matrix<T>, s: &Matrix<T>) -> Result<()> {
    if s.rows() != m.cols() {
        return Err(PcpError::DimensionError(format!(
            "sketch has {} rows, matrix has {} columns",
            s.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Worst-case subspace-embedding distortion and the direction attaining it.
#[derive(Debug, Clone)]
pub struct SubspaceEmbeddingAnalysis<T> {
    /// `sup_x |‖xᵀM‖² − ‖xᵀMS‖²| / ‖xᵀM‖²`.
    pub error: T,
    /// An `x ∈ R^n` at which the supremum is attained.
    pub witness: Vec<T>,
}

/// Exact subspace-embedding error of `s` for `m`: `‖Vᵀ S Sᵀ V − I‖₂` with `V`
/// an orthonormal basis of the row space of `m`.
pub fn subspace_embedding_error<T: Real>(m: &Matrix<T>, s: &Matrix<T>) -> Result<T> {
    subspace_embedding_analysis(m, s).map(|a| a.error)
}

pub fn subspace_embedding_analysis<T: Real>(
    m: &Matrix<T>,
    s: &Matrix<T>,
) -> Result<SubspaceEmbeddingAnalysis<T>> {
    check_sketch_rows(m, s)?;
    let fact = svd(m)?;
    if fact.rank == 0 {
        return Err(PcpError::ZeroMatrix(
            "subspace embedding error is undefined for a zero matrix".into(),
        ));
    }
    let w = fact.v.t_matmul(s)?;
    let g = w.matmul_t(&w)?.sub(&Matrix::identity(fact.rank))?;
    let eig = symmetric_eigen(&g)?;
    let (error, z) = eig.dominant_abs().expect("rank >= 1");
    // xᵀM = zᵀVᵀ  for  x = U Σ⁻¹ z.
    let scaled: Vec<T> = z
        .iter()
        .zip(&fact.sigma)
        .map(|(&zi, &si)| zi / si)
        .collect();
    let witness = (0..fact.rows())
        .map(|i| {
            fact.u
                .row(i)
                .iter()
                .zip(&scaled)
                .map(|(&u, &c)| u * c)
                .sum::<T>()
        })
        .collect();
    Ok(SubspaceEmbeddingAnalysis { error, witness })
}

/// `‖M N − M S Sᵀ N‖_F / (‖M‖_F ‖N‖_F)`; zero when either factor vanishes.
pub fn amm_error<T: Real>(m: &Matrix<T>, n: &Matrix<T>, s: &Matrix<T>) -> Result<T> {
    if m.cols() != n.rows() || s.rows() != m.cols() {
        return Err(PcpError::DimensionError(format!(
            "inner dimensions disagree: M {}x{}, N {}x{}, S {}x{}",
            m.rows(),
            m.cols(),
            n.rows(),
            n.cols(),
            s.rows(),
            s.cols()
        )));
    }
    let denom = m.frob_norm() * n.frob_norm();
    if denom == T::zero() {
        return Ok(T::zero());
    }
    let exact = m.matmul(n)?;
    let sketched = m.matmul(s)?.matmul(&s.t_matmul(n)?)?;
    Ok(exact.sub(&sketched)?.frob_norm() / denom)
}

/// `|‖M‖_F² − ‖MS‖_F²| / ‖M‖_F²`; zero for a zero matrix.
pub fn frobenius_preservation_error<T: Real>(m: &Matrix<T>, s: &Matrix<T>) -> Result<T> {
    check_sketch_rows(m, s)?;
    let base = m.frob_norm_sq();
    if base == T::zero() {
        return Ok(T::zero());
    }
    Ok((base - m.matmul(s)?.frob_norm_sq()).abs() / base)
}

/// Smallest `ε' >= 0` with `(1 − ε') A Aᵀ − λI ⪯ A S Sᵀ Aᵀ ⪯ (1 + ε') A Aᵀ + λI`.
///
/// Both forms vanish off `col(A)`, so the sandwich reduces to `col(A)`. In
/// the SVD basis of `A`, with `G = Vᵀ S Sᵀ V`, the answer is the largest
/// eigenvalue of `±(G − I) − λ Σ⁻²`, clamped at zero.
pub fn spectral_approx_error<T: Real>(a: &Matrix<T>, s: &Matrix<T>, lambda: T) -> Result<T> {
    check_sketch_rows(a, s)?;
    if !(lambda >= T::zero()) {
        return Err(PcpError::InvalidParams(format!(
            "lambda = {lambda} must be nonnegative"
        )));
    }
    let fact = svd(a)?;
    if fact.rank == 0 {
        return Err(PcpError::ZeroMatrix(
            "spectral error is undefined for A = 0".into(),
        ));
    }
    let r = fact.rank;
    let w = fact.v.t_matmul(s)?;
    let g = w.matmul_t(&w)?;
    let shift: Vec<T> = fact.sigma.iter().map(|&sg| lambda / (sg * sg)).collect();
    let upper = Matrix::from_fn(r, r, |i, j| {
        let id = if i == j { T::one() } else { T::zero() };
        let reg = if i == j { shift[i] } else { T::zero() };
        g[(i, j)] - id - reg
    });
    let lower = Matrix::from_fn(r, r, |i, j| {
        let id = if i == j { T::one() } else { T::zero() };
        let reg = if i == j { shift[i] } else { T::zero() };
        id - g[(i, j)] - reg
    });
    let hi = symmetric_eigen(&upper)?.max();
    let lo = symmetric_eigen(&lower)?.max();
    Ok(hi.max(lo).max(T::zero()))
}
