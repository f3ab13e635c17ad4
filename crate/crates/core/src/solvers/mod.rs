//! Constrained low-rank solvers: best rank-k projection, k-means (Lloyd and
//! exhaustive), and sketch-and-solve wrappers.
//!
//! Data points are the rows of the matrix, so a clustering of the n rows
//! induces an n×n projection acting on the left.

mod kmeans;
mod lowrank;
mod sketch_solve;

pub use kmeans::{
    cluster_indicator_projection, exhaustive_kmeans, kmeans_cost, lloyd_kmeans,
    lloyd_kmeans_traced, partitions, Clustering, LloydRun, EXHAUSTIVE_MAX_N,
};
pub use lowrank::best_rank_k_projection;
pub use sketch_solve::{sketch_and_solve, Solution, SolveOutcome, SolverParams, Task};
