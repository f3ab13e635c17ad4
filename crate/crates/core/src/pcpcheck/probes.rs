use serde::Serialize;

use crate::error::{PcpError, Result};
use crate::matcore::{haar_subspace, svd, Matrix, Projection, ProjectionKind};
use crate::rng::derive_seed;
use crate::solvers::{cluster_indicator_projection, lloyd_kmeans, partitions, EXHAUSTIVE_MAX_N};
use crate::Real;

/// Finite family of rank-≤k projections standing in for "every projection".
#[derive(Debug, Clone, Serialize)]
pub struct ProbeSet<T> {
    pub probes: Vec<Projection<T>>,
    pub provenance: Vec<String>,
    pub k: usize,
    pub seed: u64,
}

impl<T: Real> ProbeSet<T> {
    pub fn new(k: usize, seed: u64) -> Self {
        Self {
            probes: Vec::new(),
            provenance: Vec::new(),
            k,
            seed,
        }
    }

    pub fn push(&mut self, p: Projection<T>, tag: impl Into<String>) {
        debug_assert!(p.rank() <= self.k);
        self.probes.push(p);
        self.provenance.push(tag.into());
    }

    pub fn len(&self) -> usize {
        self.probes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Projection<T>, &str)> {
        self.probes
            .iter()
            .zip(self.provenance.iter().map(String::as_str))
    }

    pub fn extend(&mut self, other: ProbeSet<T>) {
        self.probes.extend(other.probes);
        self.provenance.extend(other.provenance);
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeOptions {
    pub n_random: usize,
    /// Seeded Lloyd runs on the rows of A and, separately, of Ã.
    pub lloyd_runs: usize,
    pub lloyd_iters: usize,
    /// Add every partition into exactly `min(k, n)` clusters (only when n <= 12).
    pub exhaustive_clusters: bool,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        Self {
            n_random: 50,
            lloyd_runs: 5,
            lloyd_iters: 50,
            exhaustive_clusters: false,
        }
    }
}

/// Structured and random probes with the default options and `n_random` Haar probes.
pub fn generate_probes<T: Real>(
    a: &Matrix<T>,
    a_tilde: &Matrix<T>,
    k: usize,
    n_random: usize,
    seed: u64,
) -> Result<ProbeSet<T>> {
    let opts = ProbeOptions {
        n_random,
        ..ProbeOptions::default()
    };
    generate_probes_with(a, a_tilde, k, seed, &opts)
}

/// Probe families:
/// 1. top-j left singular subspaces of A, j = 1..k;
/// 2. the same for Ã;
/// 3. top-k left singular subspace of A after removing Ã's top-k subspace;
/// 4. Haar random rank-k subspaces;
/// 5. spans of k standard basis vectors (the first k, and the k largest rows of A);
/// 6. cluster indicators from seeded Lloyd runs on the rows of A and of Ã;
/// 7. optionally, every k-cluster indicator for n <= 12.
pub fn generate_probes_with<T: Real>(
    a: &Matrix<T>,
    a_tilde: &Matrix<T>,
    k: usize,
    seed: u64,
    opts: &ProbeOptions,
) -> Result<ProbeSet<T>> {
    if k < 1 {
        return Err(PcpError::InvalidRank("probes need k >= 1".into()));
    }
    if a.rows() != a_tilde.rows() {
        return Err(PcpError::DimensionError(format!(
            "A has {} rows, sketch has {}",
            a.rows(),
            a_tilde.rows()
        )));
    }
    let n = a.rows();
    let mut set = ProbeSet::new(k, seed);

    let fa = svd(a)?;
    for j in 1..=k.min(fa.rank) {
        set.push(
            Projection::new_unchecked(fa.u_r(j), ProjectionKind::TopSingularOfA),
            format!("top-{j}(A)"),
        );
    }
    let fs = svd(a_tilde)?;
    for j in 1..=k.min(fs.rank) {
        set.push(
            Projection::new_unchecked(fs.u_r(j), ProjectionKind::TopSingularOfSketch),
            format!("top-{j}(sketch)"),
        );
    }

    let q = fs.u_r(k);
    let resid = a.sub(&q.matmul(&q.t_matmul(a)?)?)?;
    let fr = svd(&resid)?;
    if fr.rank > 0 {
        set.push(
            Projection::new_unchecked(fr.u_r(k), ProjectionKind::TopSingularOfA),
            "top-k(A minus sketch subspace)",
        );
    }

    let kr = k.min(n);
    for i in 0..opts.n_random {
        let p = haar_subspace(n, kr, derive_seed(seed, 1_000 + i as u64))?;
        set.push(p, format!("haar-{i}"));
    }

    set.push(
        axes_projection(n, &(0..kr).collect::<Vec<_>>()),
        "axes-first-k",
    );
    let norms = a.row_norms_sq();
    let mut by_norm: Vec<usize> = (0..n).collect();
    by_norm.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).expect("finite norms"));
    by_norm.truncate(kr);
    by_norm.sort_unstable();
    set.push(axes_projection(n, &by_norm), "axes-largest-rows");

    if n >= k {
        for (label, m) in [("A", a), ("sketch", a_tilde)] {
            for r in 0..opts.lloyd_runs {
                let s = derive_seed(seed, 2_000 + r as u64);
                let c = lloyd_kmeans(m, k, opts.lloyd_iters, s)?;
                set.push(c.projection()?, format!("lloyd-{label}-{r}"));
            }
        }
    }

    if opts.exhaustive_clusters && n <= EXHAUSTIVE_MAX_N {
        for (idx, assignment) in partitions(n, kr)
            .filter(|asg| asg.iter().max().is_some_and(|&m| m + 1 == kr))
            .enumerate()
        {
            let p = cluster_indicator_projection(&assignment, kr, n)?;
            set.push(p, format!("partition-{idx}"));
        }
    }
    Ok(set)
}

fn axes_projection<T: Real>(n: usize, idx: &[usize]) -> Projection<T> {
    let basis = Matrix::from_fn(
        n,
        idx.len(),
        |i, j| if i == idx[j] { T::one() } else { T::zero() },
    );
    Projection::new_unchecked(basis, ProjectionKind::BasisAxes)
}

/// Every cluster-indicator projection of `n` points into at most `k` clusters.
pub fn cluster_candidates<T: Real>(n: usize, k: usize) -> Result<Vec<Projection<T>>> {
    if n > EXHAUSTIVE_MAX_N {
        return Err(PcpError::TooLarge(format!(
            "enumerating clusterings supports n <= {EXHAUSTIVE_MAX_N}, got {n}"
        )));
    }
    partitions(n, k)
        .map(|a| cluster_indicator_projection(&a, k, n))
        .collect()
}
