use std::str::FromStr;

use serde::Serialize;

use crate::error::{PcpError, Result};
use crate::rng::SeededRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum JlFamily {
    /// i.i.d. `N(0, 1/m)` entries.
    Gaussian,
    /// i.i.d. `±1/√m` entries. Not rotation invariant, so not estimable from `x = e₁`.
    Rademacher,
}

impl FromStr for JlFamily {
    type Err = PcpError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(JlFamily::Gaussian),
            "rademacher" => Ok(JlFamily::Rademacher),
            other => Err(PcpError::Unsupported(format!("JL family `{other}`"))),
        }
    }
}

/// Monte-Carlo estimate of `E |‖xᵀS‖² − 1|^ℓ` for a unit vector `x`.
#[derive(Debug, Clone, Serialize)]
pub struct JlMomentEstimate {
    pub ell: u32,
    pub trials: usize,
    pub estimate: f64,
    pub stderr: f64,
}

/// Estimates the ℓ-th JL moment of a d×m sketch family at `x = e₁`.
///
/// For a rotation-invariant family the moment does not depend on the unit
/// vector, and `e₁ᵀS` is the first row of `S`, so each trial draws only that
/// row. Trial `t` uses the sub-stream `(seed, t)`; aggregation runs in trial order.
pub fn jl_moment_estimate(
    family: JlFamily,
    d: usize,
    m: usize,
    ell: u32,
    trials: usize,
    seed: u64,
) -> Result<JlMomentEstimate> {
    if family != JlFamily::Gaussian {
        return Err(PcpError::Unsupported(format!(
            "{family:?} is not rotation invariant; moments at e1 would be mis-measured"
        )));
    }
    if ell < 2 {
        return Err(PcpError::InvalidParams(format!("moment order {ell} < 2")));
    }
    if trials < 100 {
        return Err(PcpError::InvalidParams(format!("{trials} trials < 100")));
    }
    if d < 1 || m < 1 {
        return Err(PcpError::InvalidParams(
            "sketch dimensions must be positive".into(),
        ));
    }
    let inv_m = 1.0 / m as f64;
    let samples: Vec<f64> = (0..trials as u64)
        .map(|t| {
            let mut rng = SeededRng::stream(seed, t);
            let sq: f64 = (0..m).map(|_| rng.normal().powi(2)).sum();
            (sq * inv_m - 1.0).abs().powi(ell as i32)
        })
        .collect();
    let n = trials as f64;
    let estimate = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|x| (x - estimate).powi(2)).sum::<f64>() / (n - 1.0);
    Ok(JlMomentEstimate {
        ell,
        trials,
        estimate,
        stderr: (var / n).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_moment_matches_chi_square() {
        let e = jl_moment_estimate(JlFamily::Gaussian, 10, 100, 2, 20_000, 1).unwrap();
        assert!((e.estimate - 0.02).abs() < 0.1 * 0.02, "{e:?}");
    }

    #[test]
    fn decreases_with_width() {
        let est = |m| jl_moment_estimate(JlFamily::Gaussian, 10, m, 2, 5_000, 3).unwrap();
        let (a, b, c) = (est(25), est(100), est(400));
        assert!(a.estimate > b.estimate && b.estimate > c.estimate);
    }

    #[test]
    fn stderr_shrinks_with_trials() {
        let small = jl_moment_estimate(JlFamily::Gaussian, 10, 50, 2, 100, 5).unwrap();
        let large = jl_moment_estimate(JlFamily::Gaussian, 10, 50, 2, 10_000, 5).unwrap();
        let ratio = small.stderr / large.stderr;
        assert!(ratio > 5.0 && ratio < 20.0, "ratio {ratio}");
    }

    #[test]
    fn rejects_bad_requests() {
        assert!(matches!(
            jl_moment_estimate(JlFamily::Rademacher, 10, 10, 2, 100, 0),
            Err(PcpError::Unsupported(_))
        ));
        assert!(jl_moment_estimate(JlFamily::Gaussian, 10, 10, 1, 100, 0).is_err());
        assert!(jl_moment_estimate(JlFamily::Gaussian, 10, 10, 2, 99, 0).is_err());
        assert!("sparse".parse::<JlFamily>().is_err());
    }
}
