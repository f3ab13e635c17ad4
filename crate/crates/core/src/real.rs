use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};
use serde::Serialize;

/// Floating-point scalar the whole crate is generic over: `f64` or `f32`.
///
/// The associated tolerances scale the numerical contracts to the precision
/// of the type. The `f64` values are the ones the public contracts are stated in.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Serialize
    + 'static
{
    /// Default relative cutoff (against sigma_1) for counting a singular value as zero.
    const RANK_TOL: f64;
    /// Tolerance for structural self-checks: orthonormality, reconstruction.
    const CHECK_TOL: f64;

    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const RANK_TOL: f64 = 1e-10;
    const CHECK_TOL: f64 = 1e-8;
}

impl Real for f32 {
    const RANK_TOL: f64 = 1e-5;
    const CHECK_TOL: f64 = 1e-4;
}
