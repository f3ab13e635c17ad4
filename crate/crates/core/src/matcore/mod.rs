//! Dense linear-algebra kernel: matrices, SVD, head-tail splits, projections.

mod eigen;
mod matrix;
mod projection;
mod split;
mod svd;

pub use eigen::{symmetric_eigen, SymmetricEigen};
pub use matrix::{dot, Matrix};
pub use projection::{haar_subspace, orthonormalize, projection_cost, Projection, ProjectionKind};
pub use split::{head_tail_split, tail_index_p, HeadTailSplit};
pub use svd::{svd, svd_with_tol, SvdFactorization};
