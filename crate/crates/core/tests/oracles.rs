//! Cross-checks against nalgebra's dense decompositions.

use approx::assert_relative_eq;
use nalgebra::{DMatrix, SymmetricEigen};
use pcp_core::matcore::projection_cost;
use pcp_core::matcore::{head_tail_split, svd, symmetric_eigen, Matrix};
use pcp_core::primitives::{spectral_approx_error, subspace_embedding_error};
use pcp_core::rng::SeededRng;
use pcp_core::sketchers::{gaussian_operator, ridge_scores};
use pcp_core::solvers::best_rank_k_projection;
use pcp_core::Mat;

fn matrix(n: usize, d: usize, seed: u64) -> Mat {
    let mut rng = SeededRng::new(seed);
    Matrix::from_fn(n, d, |_, _| rng.normal())
}

fn to_na(m: &Mat) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice())
}

fn sorted_singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

const SHAPES: [(usize, usize); 6] = [(1, 5), (5, 1), (4, 4), (7, 3), (3, 9), (12, 20)];

#[test]
fn singular_values_match() {
    for (i, &(n, d)) in SHAPES.iter().enumerate() {
        let a = matrix(n, d, i as u64);
        let ours = svd(&a).unwrap();
        let theirs = sorted_singular_values(&to_na(&a));
        assert_eq!(ours.rank, theirs.len());
        for (x, y) in ours.sigma.iter().zip(&theirs) {
            assert_relative_eq!(x, y, max_relative = 1e-12);
        }
        assert!(ours.reconstruct().sub(&a).unwrap().max_abs() < 1e-12);
    }
}

#[test]
fn symmetric_eigenvalues_match() {
    for seed in 0..5 {
        let b = matrix(6, 6, seed);
        let sym = b.add(&b.transpose()).unwrap();
        let ours = symmetric_eigen(&sym).unwrap();
        let mut theirs: Vec<f64> = SymmetricEigen::new(to_na(&sym))
            .eigenvalues
            .iter()
            .copied()
            .collect();
        theirs.sort_by(|a, b| b.total_cmp(a));
        for (x, y) in ours.values.iter().zip(&theirs) {
            assert!((x - y).abs() < 1e-12 * theirs[0].abs().max(1.0));
        }
    }
}

#[test]
fn head_tail_split_matches_truncated_svd() {
    let a = matrix(8, 5, 3);
    let na = to_na(&a);
    let s = na.clone().svd(true, true);
    for r in 1..=5 {
        let split = head_tail_split(&svd(&a).unwrap(), &a, r).unwrap();
        let mut sig = s.singular_values.clone();
        // nalgebra does not order singular values; zero out all but the r largest.
        let mut order: Vec<usize> = (0..sig.len()).collect();
        order.sort_by(|&i, &j| sig[j].total_cmp(&sig[i]));
        for &i in &order[r..] {
            sig[i] = 0.0;
        }
        let head = s.u.as_ref().unwrap() * DMatrix::from_diagonal(&sig) * s.v_t.as_ref().unwrap();
        for i in 0..8 {
            for j in 0..5 {
                assert!((split.head[(i, j)] - head[(i, j)]).abs() < 1e-11);
            }
        }
    }
}

#[test]
fn best_rank_k_cost_is_tail_energy() {
    let a = matrix(9, 6, 4);
    let sigma = sorted_singular_values(&to_na(&a));
    for k in 1..6 {
        let p = best_rank_k_projection(&a, k).unwrap();
        let tail: f64 = sigma[k..].iter().map(|s| s * s).sum();
        assert_relative_eq!(projection_cost(&a, &p).unwrap(), tail, max_relative = 1e-10);
    }
}

/// Column ridge scores from the definition `τ_i = a_iᵀ (A Aᵀ + λI)⁺ a_i`.
#[test]
fn ridge_scores_match_definition() {
    for (seed, &(n, d)) in SHAPES.iter().enumerate().skip(2) {
        let a = matrix(n, d, seed as u64 + 10);
        let na = to_na(&a);
        for k in 1..3 {
            let r = ridge_scores(&a, k).unwrap();
            let sigma = sorted_singular_values(&na);
            let lambda: f64 = sigma.iter().skip(k).map(|s| s * s).sum::<f64>() / k as f64;
            assert_relative_eq!(r.lambda, lambda, max_relative = 1e-10);
            let gram = &na * na.transpose() + DMatrix::identity(n, n) * lambda;
            let inv = gram.pseudo_inverse(1e-12).unwrap();
            for i in 0..d {
                let col = na.column(i);
                let tau = (col.transpose() * &inv * col)[(0, 0)];
                assert!(
                    (r.tau[i] - tau).abs() < 1e-9,
                    "column {i}: {} vs {tau}",
                    r.tau[i]
                );
            }
        }
    }
}

#[test]
fn subspace_embedding_error_matches_gram_eigenvalues() {
    for seed in 0..5 {
        let m = matrix(4, 10, seed);
        let s: Mat = gaussian_operator(10, 6, seed + 100);
        let ours = subspace_embedding_error(&m, &s).unwrap();
        let nm = to_na(&m);
        let v = nm.clone().svd(false, true).v_t.unwrap().transpose();
        let w = v.transpose() * to_na(&s);
        let g = &w * w.transpose() - DMatrix::identity(4, 4);
        let eig = SymmetricEigen::new(g).eigenvalues;
        let theirs = eig.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        assert_relative_eq!(ours, theirs, max_relative = 1e-10);
    }
}

/// Brute-force check of the sandwich `(1−ε)AAᵀ − λI ⪯ ASSᵀAᵀ ⪯ (1+ε)AAᵀ + λI` at the computed ε.
#[test]
fn spectral_error_is_tight() {
    for seed in 0..5 {
        let a = matrix(5, 8, seed);
        let s: Mat = gaussian_operator(8, 12, seed + 7);
        let lambda = 0.3;
        let eps = spectral_approx_error(&a, &s, lambda).unwrap();
        let na = to_na(&a);
        let aat = &na * na.transpose();
        let sk = &na * to_na(&s);
        let sks = &sk * sk.transpose();
        let id = DMatrix::identity(5, 5) * lambda;
        let upper = &aat * (1.0 + eps) + &id - &sks;
        let lower = &sks - (&aat * (1.0 - eps) - &id);
        let min_up = SymmetricEigen::new(upper).eigenvalues.min();
        let min_lo = SymmetricEigen::new(lower).eigenvalues.min();
        assert!(min_up > -1e-9 && min_lo > -1e-9);
        if eps > 0.0 {
            assert!(min_up.min(min_lo) < 1e-8, "not tight: {min_up} {min_lo}");
        }
    }
}
