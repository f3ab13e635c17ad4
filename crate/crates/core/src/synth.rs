//! Seeded synthetic test matrices.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{PcpError, Result};
use crate::matcore::{haar_subspace, Matrix};
use crate::rng::{derive_seed, SeededRng};
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// `U_r Σ_r V_rᵀ + η G`, `Σ_r = diag(r, r−1, …, 1)`, Haar factors.
    LowRankPlusNoise,
    /// `k` Gaussian blobs as rows, centres `separation · N(0, I)`, blob scale `η`.
    Clustered,
    /// `σ_i = i^(−α)` with Haar factors.
    PowerLaw,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub d: usize,
    /// Rank for low-rank, number of blobs for clustered.
    pub rank: usize,
    pub noise: f64,
    pub alpha: f64,
    pub separation: f64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize, d: usize) -> Self {
        Self {
            kind,
            n,
            d,
            rank: 2,
            noise: if kind == GeneratorKind::Clustered {
                1.0
            } else {
                0.0
            },
            alpha: 1.0,
            separation: 10.0,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.d == 0 {
            return Err(PcpError::Config(format!(
                "dimensions {}x{} must be positive",
                self.n, self.d
            )));
        }
        if !(self.noise >= 0.0 && self.noise.is_finite()) {
            return Err(PcpError::Config(format!(
                "noise {} must be nonnegative",
                self.noise
            )));
        }
        match self.kind {
            GeneratorKind::LowRankPlusNoise if self.rank < 1 || self.rank > self.n.min(self.d) => {
                Err(PcpError::Config(format!(
                    "rank {} outside 1..={}",
                    self.rank,
                    self.n.min(self.d)
                )))
            }
            GeneratorKind::Clustered if self.rank < 1 || self.rank > self.n => Err(
                PcpError::Config(format!("{} clusters for {} rows", self.rank, self.n)),
            ),
            GeneratorKind::PowerLaw if !(self.alpha > 0.0 && self.alpha.is_finite()) => Err(
                PcpError::Config(format!("decay exponent {} must be positive", self.alpha)),
            ),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorKind::LowRankPlusNoise => "lowrank-plus-noise",
            GeneratorKind::Clustered => "clustered",
            GeneratorKind::PowerLaw => "powerlaw",
        })
    }
}

impl FromStr for GeneratorKind {
    type Err = PcpError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lowrank-plus-noise" | "lowrank" => Ok(GeneratorKind::LowRankPlusNoise),
            "clustered" => Ok(GeneratorKind::Clustered),
            "powerlaw" => Ok(GeneratorKind::PowerLaw),
            other => Err(PcpError::Config(format!("unknown generator `{other}`"))),
        }
    }
}

/// Parses `kind:key=value,...`, e.g. `powerlaw:n=40,d=200,alpha=1`.
///
/// Keys: `n`, `d`, `rank` (alias `k`), `noise` (alias `eta`), `alpha`,
/// `separation` (alias `sep`), `seed`.
impl FromStr for GeneratorSpec {
    type Err = PcpError;
    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut spec = GeneratorSpec::new(kind.trim().parse()?, 0, 0);
        for pair in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| PcpError::Config(format!("expected key=value, got `{pair}`")))?;
            let bad = |e: &dyn fmt::Display| PcpError::Config(format!("{key}={value}: {e}"));
            match key.trim() {
                "n" => spec.n = value.parse().map_err(|e| bad(&e))?,
                "d" => spec.d = value.parse().map_err(|e| bad(&e))?,
                "rank" | "k" => spec.rank = value.parse().map_err(|e| bad(&e))?,
                "noise" | "eta" => spec.noise = value.parse().map_err(|e| bad(&e))?,
                "alpha" => spec.alpha = value.parse().map_err(|e| bad(&e))?,
                "separation" | "sep" => spec.separation = value.parse().map_err(|e| bad(&e))?,
                "seed" => spec.seed = value.parse().map_err(|e| bad(&e))?,
                other => return Err(PcpError::Config(format!("unknown generator key `{other}`"))),
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn factored<T: Real>(n: usize, d: usize, sigma: &[T], seed: u64) -> Result<Matrix<T>> {
    let r = sigma.len();
    let u = haar_subspace::<T>(n, r, derive_seed(seed, 1))?.basis;
    let v = haar_subspace::<T>(d, r, derive_seed(seed, 2))?.basis;
    let us = Matrix::from_fn(n, r, |i, j| u[(i, j)] * sigma[j]);
    us.matmul_t(&v)
}

pub fn gen_synthetic<T: Real>(spec: &GeneratorSpec) -> Result<Matrix<T>> {
    spec.validate()?;
    let (n, d) = (spec.n, spec.d);
    match spec.kind {
        GeneratorKind::LowRankPlusNoise => {
            let r = spec.rank;
            let sigma: Vec<T> = (0..r).map(|i| T::from_usize_lossy(r - i)).collect();
            let mut a = factored(n, d, &sigma, spec.seed)?;
            if spec.noise > 0.0 {
                let mut rng = SeededRng::stream(spec.seed, 3);
                let eta = T::lit(spec.noise);
                let g = Matrix::from_fn(n, d, |_, _| rng.normal_as::<T>() * eta);
                a = a.add(&g)?;
            }
            Ok(a)
        }
        GeneratorKind::PowerLaw => {
            let sigma: Vec<T> = (1..=n.min(d))
                .map(|i| T::lit((i as f64).powf(-spec.alpha)))
                .collect();
            factored(n, d, &sigma, spec.seed)
        }
        GeneratorKind::Clustered => {
            let k = spec.rank;
            let mut rng = SeededRng::stream(spec.seed, 4);
            let centers: Vec<Vec<f64>> = (0..k)
                .map(|_| (0..d).map(|_| spec.separation * rng.normal()).collect())
                .collect();
            Ok(Matrix::from_fn(n, d, |i, j| {
                T::lit(centers[i % k][j] + spec.noise * rng.normal())
            }))
        }
    }
}
