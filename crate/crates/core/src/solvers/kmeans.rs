use serde::Serialize;

use crate::error::{PcpError, Result};
use crate::matcore::{Matrix, Projection, ProjectionKind};
use crate::rng::SeededRng;
use crate::Real;

/// Largest instance [`exhaustive_kmeans`] accepts (Bell(12) ≈ 4.2M partitions).
pub const EXHAUSTIVE_MAX_N: usize = 12;

/// Assignment of the rows of a matrix to at most `k` clusters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Clustering<T> {
    pub assignment: Vec<usize>,
    pub k: usize,
    /// k-means objective on the clustered rows.
    pub cost: T,
}

impl<T: Real> Clustering<T> {
    pub fn projection(&self) -> Result<Projection<T>> {
        cluster_indicator_projection(&self.assignment, self.k, self.assignment.len())
    }
}

/// Sum over clusters of squared distances of the rows to their cluster mean.
pub fn kmeans_cost<T: Real>(m: &Matrix<T>, assignment: &[usize], k: usize) -> T {
    let means = cluster_means(m, assignment, k);
    (0..m.rows())
        .map(|i| sq_dist(m.row(i), &means[assignment[i]]))
        .sum()
}

fn cluster_means<T: Real>(m: &Matrix<T>, assignment: &[usize], k: usize) -> Vec<Vec<T>> {
    let d = m.cols();
    let mut sums = vec![vec![T::zero(); d]; k];
    let mut counts = vec![0usize; k];
    for (i, &c) in assignment.iter().enumerate() {
        counts[c] += 1;
        for (s, &x) in sums[c].iter_mut().zip(m.row(i)) {
            *s += x;
        }
    }
    for (s, &n) in sums.iter_mut().zip(&counts) {
        if n > 0 {
            let nt = T::from_usize_lossy(n);
            s.iter_mut().for_each(|x| *x /= nt);
        }
    }
    sums
}

#[inline]
fn sq_dist<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| (x - y) * (x - y)).sum()
}

fn validate_assignment(assignment: &[usize], k: usize, n: usize) -> Result<()> {
    if assignment.len() != n {
        return Err(PcpError::InvalidInput(format!(
            "assignment has {} entries for {n} points",
            assignment.len()
        )));
    }
    if let Some(&bad) = assignment.iter().find(|&&c| c >= k) {
        return Err(PcpError::InvalidInput(format!(
            "cluster index {bad} >= k = {k}"
        )));
    }
    Ok(())
}

/// Projection onto the normalised cluster indicators (`1/√|C_j|` on members
/// of `C_j`). Empty clusters are dropped, so the rank is the number of
/// non-empty clusters.
pub fn cluster_indicator_projection<T: Real>(
    assignment: &[usize],
    k: usize,
    n: usize,
) -> Result<Projection<T>> {
    validate_assignment(assignment, k, n)?;
    let mut counts = vec![0usize; k];
    for &c in assignment {
        counts[c] += 1;
    }
    let nonempty: Vec<usize> = (0..k).filter(|&c| counts[c] > 0).collect();
    let basis = Matrix::from_fn(n, nonempty.len(), |i, j| {
        let c = nonempty[j];
        if assignment[i] == c {
            T::one() / T::from_usize_lossy(counts[c]).sqrt()
        } else {
            T::zero()
        }
    });
    Ok(Projection::new_unchecked(
        basis,
        ProjectionKind::ClusterIndicator,
    ))
}

/// A Lloyd run together with the objective after every iteration.
#[derive(Debug, Clone)]
pub struct LloydRun<T> {
    pub clustering: Clustering<T>,
    pub history: Vec<T>,
}

/// Lloyd's algorithm with k-means++ seeding on the rows of `m`.
pub fn lloyd_kmeans<T: Real>(
    m: &Matrix<T>,
    k: usize,
    iters: usize,
    seed: u64,
) -> Result<Clustering<T>> {
    lloyd_kmeans_traced(m, k, iters, seed).map(|r| r.clustering)
}

pub fn lloyd_kmeans_traced<T: Real>(
    m: &Matrix<T>,
    k: usize,
    iters: usize,
    seed: u64,
) -> Result<LloydRun<T>> {
    let n = m.rows();
    if k < 1 || n < k {
        return Err(PcpError::InvalidInput(format!(
            "k-means needs 1 <= k <= n (k={k}, n={n})"
        )));
    }
    if iters < 1 {
        return Err(PcpError::InvalidInput(
            "at least one Lloyd iteration required".into(),
        ));
    }
    let mut rng = SeededRng::new(seed);
    let mut centers = kmeans_pp(m, k, &mut rng);
    let mut assignment: Vec<usize> = Vec::new();
    let mut history = Vec::with_capacity(iters);
    for _ in 0..iters {
        let mut next: Vec<usize> = (0..n).map(|i| nearest(m.row(i), &centers).0).collect();
        reseed_empty(m, &mut next, &centers, k);
        let converged = next == assignment;
        assignment = next;
        centers = cluster_means(m, &assignment, k);
        history.push(
            (0..n)
                .map(|i| sq_dist(m.row(i), &centers[assignment[i]]))
                .sum(),
        );
        if converged {
            break;
        }
    }
    let cost = *history.last().expect("at least one iteration");
    Ok(LloydRun {
        clustering: Clustering {
            assignment,
            k,
            cost,
        },
        history,
    })
}

fn nearest<T: Real>(x: &[T], centers: &[Vec<T>]) -> (usize, T) {
    let mut best = (0, T::infinity());
    for (j, c) in centers.iter().enumerate() {
        let d = sq_dist(x, c);
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}

/// Gives every empty cluster the point farthest from its current center,
/// taken from a cluster that keeps at least one member.
fn reseed_empty<T: Real>(m: &Matrix<T>, assignment: &mut [usize], centers: &[Vec<T>], k: usize) {
    let mut counts = vec![0usize; k];
    for &c in assignment.iter() {
        counts[c] += 1;
    }
    for j in 0..k {
        if counts[j] > 0 {
            continue;
        }
        let donor = (0..assignment.len())
            .filter(|&i| counts[assignment[i]] > 1)
            .map(|i| (i, sq_dist(m.row(i), &centers[assignment[i]])))
            .fold(None, |best: Option<(usize, T)>, (i, d)| match best {
                Some((_, bd)) if bd >= d => best,
                _ => Some((i, d)),
            });
        if let Some((i, _)) = donor {
            counts[assignment[i]] -= 1;
            assignment[i] = j;
            counts[j] += 1;
        }
    }
}

fn kmeans_pp<T: Real>(m: &Matrix<T>, k: usize, rng: &mut SeededRng) -> Vec<Vec<T>> {
    let n = m.rows();
    let mut chosen = vec![rng.below(n)];
    let mut d2: Vec<T> = (0..n)
        .map(|i| sq_dist(m.row(i), m.row(chosen[0])))
        .collect();
    while chosen.len() < k {
        let total: f64 = d2.iter().map(|x| x.to_f64_lossy()).sum();
        let next = if total > 0.0 {
            let u = rng.uniform() * total;
            let mut acc = 0.0;
            let mut pick = n - 1;
            for (i, x) in d2.iter().enumerate() {
                acc += x.to_f64_lossy();
                if acc > u && *x > T::zero() {
                    pick = i;
                    break;
                }
            }
            pick
        } else {
            (0..n).find(|i| !chosen.contains(i)).expect("n >= k")
        };
        chosen.push(next);
        for (i, slot) in d2.iter_mut().enumerate() {
            *slot = slot.min(sq_dist(m.row(i), m.row(next)));
        }
    }
    chosen.into_iter().map(|i| m.row(i).to_vec()).collect()
}

/// Restricted growth strings of length `n` with at most `k` blocks, in
/// lexicographic order: every partition of `0..n` into at most `k`
/// non-empty clusters, each exactly once.
pub fn partitions(n: usize, k: usize) -> Partitions {
    Partitions {
        current: if n == 0 || k == 0 {
            None
        } else {
            Some(vec![0; n])
        },
        k,
    }
}

#[derive(Debug, Clone)]
pub struct Partitions {
    current: Option<Vec<usize>>,
    k: usize,
}

impl Iterator for Partitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let a = self.current.as_mut().expect("checked above");
        let n = a.len();
        // prefix_max[i] = max(a[0..i]).
        let mut prefix_max = vec![0usize; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(a[i - 1]);
        }
        let mut advanced = false;
        for i in (1..n).rev() {
            if a[i] <= prefix_max[i] && a[i] + 1 < self.k {
                a[i] += 1;
                for x in a.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            self.current = None;
        }
        Some(out)
    }
}

/// Optimal k-means clustering by enumerating every partition of the rows into
/// at most `k` clusters. Ties keep the lexicographically smallest assignment.
pub fn exhaustive_kmeans<T: Real>(m: &Matrix<T>, k: usize) -> Result<Clustering<T>> {
    let n = m.rows();
    if n > EXHAUSTIVE_MAX_N {
        return Err(PcpError::TooLarge(format!(
            "exhaustive k-means supports n <= {EXHAUSTIVE_MAX_N}, got {n}"
        )));
    }
    if k < 1 {
        return Err(PcpError::InvalidInput("k must be at least 1".into()));
    }
    let slack = T::lit(1e-12) * m.frob_norm_sq();
    let mut best: Option<Clustering<T>> = None;
    for assignment in partitions(n, k) {
        let cost = kmeans_cost(m, &assignment, k);
        let better = match &best {
            None => true,
            Some(b) => cost < b.cost - slack,
        };
        if better {
            best = Some(Clustering {
                assignment,
                k,
                cost,
            });
        }
    }
    best.ok_or_else(|| PcpError::InvalidInput("empty matrix".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::projection_cost;

    fn line(xs: &[f64]) -> Matrix<f64> {
        Matrix::from_rows(&xs.iter().map(|&x| vec![x]).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn indicator_bases() {
        let p = cluster_indicator_projection::<f64>(&[0, 1], 2, 2).unwrap();
        assert_eq!(p.basis, Matrix::identity(2));
        let one = cluster_indicator_projection::<f64>(&[0, 0, 0, 0], 2, 4).unwrap();
        assert_eq!(one.basis, Matrix::from_columns(4, &[vec![0.5; 4]]));
        assert!(cluster_indicator_projection::<f64>(&[0, 2], 2, 2).is_err());
        assert!(cluster_indicator_projection::<f64>(&[0], 2, 2).is_err());
    }

    #[test]
    fn partition_counts_are_stirling_sums() {
        assert_eq!(partitions(4, 2).count(), 8);
        assert_eq!(partitions(4, 2).filter(|a| a.contains(&1)).count(), 7);
        assert_eq!(partitions(5, 5).count(), 52);
        assert_eq!(partitions(6, 3).count(), 1 + 31 + 90);
        let all: Vec<_> = partitions(3, 3).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 0, 0],
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![0, 1, 1],
                vec![0, 1, 2]
            ]
        );
    }

    #[test]
    fn separated_duplicates() {
        let m = line(&[0.0, 0.0, 10.0, 10.0]);
        let ex = exhaustive_kmeans(&m, 2).unwrap();
        assert_eq!(ex.cost, 0.0);
        assert_eq!(ex.assignment, vec![0, 0, 1, 1]);
        assert_eq!(kmeans_cost(&m, &[0, 1, 0, 1], 2), 100.0);
        let ll = lloyd_kmeans(&m, 2, 20, 3).unwrap();
        assert_eq!(ll.cost, 0.0);
        assert_eq!(ll.assignment[0], ll.assignment[1]);
        assert_eq!(ll.assignment[2], ll.assignment[3]);
        assert_ne!(ll.assignment[0], ll.assignment[2]);
    }

    #[test]
    fn singletons_cost_nothing() {
        let m = line(&[1.0, 4.0, -2.0, 7.5, 0.25]);
        assert_eq!(lloyd_kmeans(&m, 5, 10, 0).unwrap().cost, 0.0);
        assert!(lloyd_kmeans(&m, 6, 10, 0).is_err());
    }

    #[test]
    fn cost_equals_projection_cost() {
        let mut rng = SeededRng::new(12);
        let m = Matrix::<f64>::from_fn(9, 3, |_, _| rng.normal());
        for seed in 0..20 {
            let assignment: Vec<usize> = {
                let mut r = SeededRng::new(seed);
                (0..9).map(|_| r.below(3)).collect()
            };
            let p = cluster_indicator_projection(&assignment, 3, 9).unwrap();
            let c1 = kmeans_cost(&m, &assignment, 3);
            let c2 = projection_cost(&m, &p).unwrap();
            assert!((c1 - c2).abs() < 1e-10 * m.frob_norm_sq());
        }
    }

    #[test]
    fn too_large_rejected() {
        assert!(matches!(
            exhaustive_kmeans(&Matrix::<f64>::zeros(13, 1), 2),
            Err(PcpError::TooLarge(_))
        ));
    }
}
