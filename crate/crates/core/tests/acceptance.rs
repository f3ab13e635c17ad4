//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use pcp_core::matcore::{svd, tail_index_p, Matrix};
use pcp_core::pcpcheck::{generate_probes, generate_probes_with, pcp_report, ProbeOptions};
use pcp_core::primitives::{
    certify_theorem1, certify_theorem2, jl_moment_estimate, subspace_embedding_analysis, JlFamily,
};
use pcp_core::rng::{derive_seed, SeededRng};
use pcp_core::sketchers::{
    build_sketch, gaussian_operator, orthogonal_sketch, ridge_scores, svd_sketch, Method,
    SketchParams,
};
use pcp_core::solvers::{exhaustive_kmeans, sketch_and_solve, SolverParams, Task};
use pcp_core::synth::{gen_synthetic, GeneratorKind, GeneratorSpec};
use pcp_core::Mat;

type Criterion = (&'static str, fn() -> Outcome, Duration);

struct Outcome {
    pass: bool,
    detail: String,
}

fn gaussian_matrix(n: usize, d: usize, seed: u64) -> Mat {
    let mut rng = SeededRng::new(seed);
    Matrix::from_fn(n, d, |_, _| rng.normal())
}

/// Random matrix with a decaying spectrum and a random numerical rank.
fn structured_matrix(n: usize, d: usize, seed: u64) -> Mat {
    let mut rng = SeededRng::new(derive_seed(seed, 7));
    let rank = 1 + rng.below(n.min(d));
    let mut spec = GeneratorSpec::new(GeneratorKind::LowRankPlusNoise, n, d);
    spec.rank = rank;
    spec.noise = [0.0, 0.01, 0.1][rng.below(3)];
    spec.seed = seed;
    gen_synthetic(&spec).unwrap()
}

fn criterion_1() -> Outcome {
    let opts = ProbeOptions {
        n_random: 30,
        exhaustive_clusters: true,
        ..ProbeOptions::default()
    };
    let mut worst = 0.0f64;
    let mut reports = 0;
    for seed in 0..6u64 {
        let n = 4 + (seed as usize % 4);
        let a = structured_matrix(n, 9, seed);
        let rank = svd(&a).unwrap().rank;
        for k in 1..=2 {
            let orth = orthogonal_sketch(&a, seed).unwrap();
            let params = SketchParams::new(k, 0.5, 0.1).with_width(rank.max(k));
            let exact = svd_sketch(&a, &params).unwrap();
            for (a_tilde, c) in [(orth.a_tilde, orth.c_const), (exact.a_tilde, exact.c_const)] {
                let probes = generate_probes_with(&a, &a_tilde, k, seed, &opts).unwrap();
                let r = pcp_report(&a, &a_tilde, c, &probes, 1e-8).unwrap();
                worst = worst.max(r.max_abs_rel_err);
                reports += 1;
            }
        }
    }
    Outcome {
        pass: worst <= 1e-8,
        detail: format!("{reports} reports, max |err| = {worst:.2e}"),
    }
}

/// Shared harness for the certificate implication criteria.
fn implication_harness(theorem: u8) -> Outcome {
    const METHODS: [Method; 4] = [
        Method::Gaussian,
        Method::NonOblivious,
        Method::LeverageResidual,
        Method::Ridge,
    ];
    let mut trials = 0;
    let mut holds = 0;
    let mut violations = 0;
    for t in 0..240u64 {
        let mut rng = SeededRng::stream(0xacc, t);
        let n = 3 + rng.below(10);
        let d = 4 + rng.below(27);
        let k = 1 + rng.below(3);
        let eps = if rng.below(2) == 0 { 0.3 } else { 0.5 };
        let method = METHODS[(t % 4) as usize];
        let width = [d / 2, d, 4 * d, 16 * d][((t / 4) % 4) as usize].max(1);
        let a = structured_matrix(n, d, derive_seed(t, 1));
        let params = SketchParams::new(k, eps, 0.1)
            .with_seed(t)
            .with_width(width);
        let sketch = build_sketch(&a, method, &params).unwrap();
        let s = sketch.operator_matrix(d);
        let cert = if theorem == 1 {
            certify_theorem1(&a, &s, k, eps).unwrap()
        } else {
            certify_theorem2(&a, &s, k, eps).unwrap()
        };
        trials += 1;
        if cert.holds {
            holds += 1;
            let probes = generate_probes(&a, &sketch.a_tilde, k, 20, t).unwrap();
            let r = pcp_report(&a, &sketch.a_tilde, 0.0, &probes, eps).unwrap();
            if !r.pass {
                violations += 1;
            }
        }
    }
    Outcome {
        pass: violations == 0 && trials >= 200,
        detail: format!("{trials} trials, certificate held in {holds}, violations {violations}"),
    }
}

fn criterion_4() -> Outcome {
    let mut passes = 0;
    let mut worst = 0.0f64;
    let seeds = 30u64;
    for seed in 0..seeds {
        let mut spec = GeneratorSpec::new(GeneratorKind::LowRankPlusNoise, 60, 500);
        spec.rank = 5;
        spec.noise = 0.05;
        spec.seed = seed;
        let a: Mat = gen_synthetic(&spec).unwrap();
        let params = SketchParams::new(3, 0.4, 0.1)
            .with_const(8.0)
            .with_seed(seed);
        let sketch = build_sketch(&a, Method::Gaussian, &params).unwrap();
        assert_eq!(sketch.m, 266);
        let probes = generate_probes(&a, &sketch.a_tilde, 3, 20, seed).unwrap();
        let r = pcp_report(&a, &sketch.a_tilde, sketch.c_const, &probes, 0.4).unwrap();
        worst = worst.max(r.max_abs_rel_err);
        passes += r.pass as usize;
    }
    Outcome {
        pass: passes * 10 >= 9 * seeds as usize,
        detail: format!("m = 266, {passes}/{seeds} seeds pass, worst |err| = {worst:.3}"),
    }
}

fn oracle_singular_values(a: &Mat) -> Vec<f64> {
    let m = DMatrix::from_row_slice(a.rows(), a.cols(), a.as_slice());
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

fn criterion_5() -> Outcome {
    let mut worst_gap = 0.0f64;
    let mut max_ratio = 0.0f64;
    let mut p_ok = true;
    let mut sum_ok = true;
    for i in 0..100u64 {
        let mut rng = SeededRng::stream(0x5, i);
        let n = 2 + rng.below(14);
        let d = 2 + rng.below(19);
        let a = if i % 2 == 0 {
            gaussian_matrix(n, d, i)
        } else {
            structured_matrix(n, d, i)
        };
        let sigma = oracle_singular_values(&a);
        let fact = svd(&a).unwrap();
        for k in [1usize, 2, 4] {
            let r = ridge_scores(&a, k).unwrap();
            let tail: f64 = sigma.iter().skip(k).map(|s| s * s).sum();
            let lambda = tail / k as f64;
            let floor = 1e-10 * sigma[0];
            let expected: f64 = sigma
                .iter()
                .filter(|&&s| s > floor)
                .map(|s| s * s / (s * s + lambda))
                .sum();
            worst_gap = worst_gap.max((r.sum_tau - expected).abs());
            max_ratio = max_ratio.max(r.sum_tau / (2 * k) as f64);
            sum_ok &= r.sum_tau <= 2.0 * k as f64 + 1e-8;
            if tail > 1e-20 * sigma[0] * sigma[0] {
                p_ok &= tail_index_p(&fact, k).unwrap() <= 2 * k;
            }
        }
    }
    Outcome {
        pass: sum_ok && p_ok && worst_gap <= 1e-8,
        detail: format!(
            "max sum/2k = {max_ratio:.3}, max |sum - oracle| = {worst_gap:.1e}, p <= 2k: {p_ok}"
        ),
    }
}

fn planted_instance() -> Mat {
    let mut rng = SeededRng::new(66);
    let centres = [
        [4.0, 0.0, 1.0, 0.0, -2.0, 0.0],
        [-3.0, 2.0, 0.0, 1.0, 2.0, -1.0],
    ];
    Matrix::from_fn(8, 6, |i, j| centres[i / 4][j] + 0.3 * rng.normal())
}

fn criterion_6() -> Outcome {
    let a = planted_instance();
    let opt = exhaustive_kmeans(&a, 2).unwrap().cost;
    let solver = SolverParams {
        exhaustive: true,
        ..SolverParams::default()
    };
    let svd_params = SketchParams::new(2, 0.5, 0.1);
    let gauss_params = SketchParams::new(2, 0.5, 0.1).with_width(24).with_seed(6);
    let mut pass = true;
    let mut parts = Vec::new();
    for (method, params) in [(Method::Svd, svd_params), (Method::Gaussian, gauss_params)] {
        let sketch = build_sketch(&a, method, &params).unwrap();
        let out = sketch_and_solve(&a, &sketch, Task::KMeans, &solver).unwrap();
        let ratio = out.cost_on_a / opt;
        pass &= out.cost_on_a <= 3.0 * opt * (1.0 + 1e-12) && out.gamma == Some(1.0);
        pass &= method != Method::Svd || sketch.m == 4;
        parts.push(format!("{} m={} ratio {ratio:.4}", method.name(), sketch.m));
    }
    Outcome {
        pass,
        detail: format!("opt = {opt:.4}; {}", parts.join(", ")),
    }
}

fn criterion_7() -> Outcome {
    let mut worst_excess = f64::NEG_INFINITY;
    let mut worst_witness_gap = 0.0f64;
    for i in 0..200u64 {
        let mut rng = SeededRng::stream(0x7, i);
        let n = 2 + rng.below(9);
        let d = 2 + rng.below(14);
        let m = 1 + rng.below(20);
        let mm = gaussian_matrix(n, d, derive_seed(i, 1));
        let s: Mat = gaussian_operator(d, m, derive_seed(i, 2));
        let an = subspace_embedding_analysis(&mm, &s).unwrap();
        let ratio = |x: &[f64]| {
            let y: Vec<f64> = (0..d)
                .map(|j| (0..n).map(|r| x[r] * mm[(r, j)]).sum())
                .collect();
            let ys: f64 = (0..m)
                .map(|c| (0..d).map(|j| y[j] * s[(j, c)]).sum::<f64>().powi(2))
                .sum();
            let yy: f64 = y.iter().map(|v| v * v).sum();
            (ys / yy - 1.0).abs()
        };
        for _ in 0..10_000 {
            let x: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
            worst_excess = worst_excess.max(ratio(&x) - an.error);
        }
        worst_witness_gap = worst_witness_gap.max((ratio(&an.witness) - an.error).abs());
    }
    Outcome {
        pass: worst_excess <= 1e-9 && worst_witness_gap <= 1e-3,
        detail: format!(
            "max(probe - exact) = {worst_excess:.2e}, max witness gap = {worst_witness_gap:.2e}"
        ),
    }
}

fn criterion_8() -> Outcome {
    let est = jl_moment_estimate(JlFamily::Gaussian, 50, 100, 2, 100_000, 8).unwrap();
    let target = 2.0 / 100.0;
    let rel = (est.estimate - target).abs() / target;
    Outcome {
        pass: rel <= 0.1,
        detail: format!("estimate {:.5} vs {target}, rel dev {rel:.3}", est.estimate),
    }
}

fn criterion_9() -> Outcome {
    let mut worst_slack = f64::NEG_INFINITY;
    let mut evaluated = 0;
    for i in 0..50u64 {
        let mut rng = SeededRng::stream(0x9, i);
        let n = 3 + rng.below(18);
        let d = 3 + rng.below(38);
        let a = if i % 2 == 0 {
            gaussian_matrix(n, d, i)
        } else {
            structured_matrix(n, d, i)
        };
        let fact = svd(&a).unwrap();
        for k in 1..=3 {
            for eps in [0.25, 0.5] {
                let sketch = svd_sketch(&a, &SketchParams::new(k, eps, 0.1)).unwrap();
                let c = fact.tail_energy(sketch.m);
                assert!((sketch.c_const - c).abs() <= 1e-12 * fact.energy());
                let probes = generate_probes(&a, &sketch.a_tilde, k, 20, i).unwrap();
                let r = pcp_report(&a, &sketch.a_tilde, c, &probes, eps).unwrap();
                for e in &r.per_probe {
                    worst_slack = worst_slack.max(e.signed_rel_err.abs() - eps);
                    evaluated += 1;
                }
            }
        }
    }
    Outcome {
        pass: worst_slack <= 1e-6,
        detail: format!("{evaluated} probe evaluations, max(|err| - eps) = {worst_slack:.3}"),
    }
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("lossless sketches", criterion_1, Duration::from_secs(1)),
        (
            "certificate T1 implies audit pass",
            || implication_harness(1),
            Duration::from_secs(60),
        ),
        (
            "certificate T2 implies audit pass",
            || implication_harness(2),
            Duration::from_secs(60),
        ),
        (
            "gaussian at default width",
            criterion_4,
            Duration::from_secs(30),
        ),
        (
            "ridge leverage structure",
            criterion_5,
            Duration::from_secs(10),
        ),
        ("transfer bound", criterion_6, Duration::from_secs(10)),
        (
            "subspace embedding exactness",
            criterion_7,
            Duration::from_secs(30),
        ),
        ("jl moment", criterion_8, Duration::from_secs(20)),
        ("svd sketch constant", criterion_9, Duration::from_secs(30)),
    ];
    let mut failures = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let ok = out.pass && elapsed <= *budget;
        failures += !ok as usize;
        println!(
            "criterion {} {name}: {} ({}) [{:.2}s / {}s]",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
