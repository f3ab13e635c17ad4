use serde::Serialize;

use crate::error::{PcpError, Result};
use crate::matcore::{projection_cost, Matrix, Projection};
use crate::rng::derive_seed;
use crate::sketchers::Sketch;
use crate::solvers::{best_rank_k_projection, exhaustive_kmeans, lloyd_kmeans, Clustering};
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    LowRank,
    KMeans,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolverParams {
    /// Use exhaustive enumeration for k-means (n <= 12) instead of Lloyd.
    pub exhaustive: bool,
    pub iters: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SolverParams {
    fn default() -> Self {
        Self {
            exhaustive: false,
            iters: 100,
            restarts: 5,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Solution<T> {
    Projection(Projection<T>),
    Clustering(Clustering<T>),
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveOutcome<T> {
    pub solution: Solution<T>,
    pub projection: Projection<T>,
    /// `‖A − P̃A‖_F²` for the projection found on the sketch.
    pub cost_on_a: T,
    /// `‖Ã − P̃Ã‖_F²` (without the constant c).
    pub cost_on_sketch: T,
    /// Solver approximation factor on the sketch, when known.
    pub gamma: Option<T>,
    /// `(1 + ε) γ / (1 − ε)` when `γ` is known.
    pub certified_ratio: Option<T>,
}

/// Solves `task` on the sketch and evaluates the resulting projection on `A`.
pub fn sketch_and_solve<T: Real>(
    a: &Matrix<T>,
    sketch: &Sketch<T>,
    task: Task,
    solver: &SolverParams,
) -> Result<SolveOutcome<T>> {
    if sketch.a_tilde.rows() != a.rows() {
        return Err(PcpError::DimensionError(format!(
            "sketch has {} rows, A has {}",
            sketch.a_tilde.rows(),
            a.rows()
        )));
    }
    let k = sketch.params.k;
    let eps = T::lit(sketch.params.eps);
    let (solution, projection, gamma) = match task {
        Task::LowRank => {
            let p = best_rank_k_projection(&sketch.a_tilde, k)?;
            (Solution::Projection(p.clone()), p, Some(T::one()))
        }
        Task::KMeans => {
            let (clustering, gamma) = if solver.exhaustive {
                (exhaustive_kmeans(&sketch.a_tilde, k)?, Some(T::one()))
            } else {
                let mut best: Option<Clustering<T>> = None;
                for r in 0..solver.restarts.max(1) {
                    let c = lloyd_kmeans(
                        &sketch.a_tilde,
                        k,
                        solver.iters,
                        derive_seed(solver.seed, r as u64),
                    )?;
                    if best.as_ref().is_none_or(|b| c.cost < b.cost) {
                        best = Some(c);
                    }
                }
                (best.expect("at least one restart"), None)
            };
            let p = clustering.projection()?;
            (Solution::Clustering(clustering), p, gamma)
        }
    };
    let cost_on_a = projection_cost(a, &projection)?;
    let cost_on_sketch = projection_cost(&sketch.a_tilde, &projection)?;
    let certified_ratio = gamma.map(|g| (T::one() + eps) * g / (T::one() - eps));
    Ok(SolveOutcome {
        solution,
        projection,
        cost_on_a,
        cost_on_sketch,
        gamma,
        certified_ratio,
    })
}
