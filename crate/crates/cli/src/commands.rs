use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use pcp_core::io::{load_matrix, save_matrix, to_csv};
use pcp_core::matcore::svd;
use pcp_core::pcpcheck::{generate_probes_with, pcp_report, ProbeOptions};
use pcp_core::primitives::{certify_theorem1, certify_theorem2, jl_moment_estimate};
use pcp_core::rng::derive_seed;
use pcp_core::sketchers::{build_sketch, Method, SketchParams};
use pcp_core::solvers::{
    exhaustive_kmeans, lloyd_kmeans, sketch_and_solve, Solution, SolverParams, Task,
    EXHAUSTIVE_MAX_N,
};
use pcp_core::synth::{gen_synthetic, GeneratorSpec};
use pcp_core::{Mat, SketchF64};
use rayon::prelude::*;

use crate::report::{emit, PcpSummary, Report, TransferSummary, TrialsReport};
use crate::{Command, InputArgs, ProbeArgs, SketchArgs, TaskArg, TrialArgs};

/// Runs one command; `Ok(false)` means a requested assertion failed.
pub fn run(command: Command) -> Result<bool> {
    match command {
        Command::Gen { gen, out } => {
            let a = generate(&gen)?;
            write_matrix(&a, out.as_deref())?;
            Ok(true)
        }
        Command::Sketch {
            input,
            sketch,
            out,
            format,
        } => {
            let a = load(&input)?;
            let mut timing = BTreeMap::new();
            let sk = timed(&mut timing, "sketch", || build(&a, &sketch))?;
            match out.as_deref() {
                Some(path) => {
                    save_matrix(path, &sk.a_tilde)
                        .with_context(|| format!("writing {}", path.display()))?;
                    emit(&base_report("sketch", &a, &sk, timing), format, None)?;
                }
                None => write_matrix(&sk.a_tilde, None)?,
            }
            Ok(true)
        }
        Command::Certify {
            input,
            sketch,
            output,
            require_holds,
        } => {
            let a = load(&input)?;
            let report = certify(&a, &sketch)?;
            emit(&report, output.format, output.out.as_deref())?;
            let holds = [&report.certificate_t1, &report.certificate_t2]
                .iter()
                .any(|c| c.as_ref().is_some_and(|c| c.holds));
            Ok(!require_holds || holds)
        }
        Command::Verify {
            input,
            sketch,
            probes,
            output,
            trials,
        } => {
            let a = load(&input)?;
            if trials.trials <= 1 {
                let report = verify(&a, &sketch, &probes)?;
                let pass = report.pcp.as_ref().is_some_and(|p| p.pass);
                emit(&report, output.format, output.out.as_deref())?;
                return Ok(pass);
            }
            let reports = run_trials(&sketch, &trials, |s| verify(&a, s, &probes))?;
            let summary = summarize(reports, sketch.delta, |r| {
                r.pcp.as_ref().is_some_and(|p| p.pass)
            });
            emit(&summary, output.format, output.out.as_deref())?;
            Ok(summary.pass)
        }
        Command::Solve {
            input,
            sketch,
            task,
            exhaustive,
            iters,
            restarts,
            output,
        } => {
            let a = load(&input)?;
            let task = match task {
                TaskArg::Lowrank => Task::LowRank,
                TaskArg::Kmeans => Task::KMeans,
            };
            let solver = SolverParams {
                exhaustive,
                iters,
                restarts,
                seed: sketch.seed,
            };
            let report = solve(&a, &sketch, task, &solver)?;
            let holds = report.transfer.as_ref().and_then(|t| t.holds);
            emit(&report, output.format, output.out.as_deref())?;
            Ok(holds != Some(false))
        }
        Command::Bench {
            input,
            sketch,
            probes,
            output,
            trials,
        } => {
            let a = load(&input)?;
            let mut reports = Vec::new();
            for method in [
                Method::Gaussian,
                Method::NonOblivious,
                Method::LeverageResidual,
                Method::Ridge,
                Method::Svd,
            ] {
                let args = SketchArgs {
                    method,
                    ..sketch.clone()
                };
                reports.extend(run_trials(&args, &trials, |s| verify(&a, s, &probes))?);
            }
            emit(&reports, output.format, output.out.as_deref())?;
            Ok(true)
        }
        Command::JlMoment {
            family,
            d,
            m,
            ell,
            trials,
            seed,
            output,
        } => {
            let est = jl_moment_estimate(family, d, m, ell, trials, seed)?;
            emit(&est, output.format, output.out.as_deref())?;
            Ok(true)
        }
    }
}

fn generate(spec: &str) -> Result<Mat> {
    let spec: GeneratorSpec = spec.parse()?;
    Ok(gen_synthetic(&spec)?)
}

fn load(input: &InputArgs) -> Result<Mat> {
    match (&input.input, &input.gen) {
        (Some(path), None) => {
            load_matrix(path).with_context(|| format!("reading {}", path.display()))
        }
        (None, Some(spec)) => generate(spec),
        _ => bail!("exactly one of --input and --gen is required"),
    }
}

fn write_matrix(a: &Mat, out: Option<&std::path::Path>) -> Result<()> {
    match out {
        Some(path) => save_matrix(path, a).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(to_csv(a).as_bytes())?;
            Ok(())
        }
    }
}

fn params(args: &SketchArgs) -> SketchParams {
    let mut p = SketchParams::new(args.k, args.eps, args.delta).with_seed(args.seed);
    if let Some(c) = args.const_c {
        p = p.with_const(c);
    }
    if let Some(m) = args.m {
        p = p.with_width(m);
    }
    p
}

fn build(a: &Mat, args: &SketchArgs) -> Result<SketchF64> {
    Ok(build_sketch(a, args.method, &params(args))?)
}

fn timed<R>(
    timing: &mut BTreeMap<&'static str, f64>,
    stage: &'static str,
    f: impl FnOnce() -> R,
) -> R {
    let start = Instant::now();
    let r = f();
    timing.insert(stage, start.elapsed().as_secs_f64() * 1e3);
    r
}

fn base_report(
    command: &'static str,
    a: &Mat,
    sk: &SketchF64,
    timing_ms: BTreeMap<&'static str, f64>,
) -> Report {
    Report {
        command,
        method: sk.method,
        params: sk.params.clone(),
        n: a.rows(),
        d: a.cols(),
        m: sk.m,
        c_const: sk.c_const,
        width_not_reducing: sk.width_not_reducing,
        certificate_t1: None,
        certificate_t2: None,
        pcp: None,
        transfer: None,
        timing_ms,
    }
}

/// Certificates apply to `Ã = AS`; the deterministic SVD sketch is not of that form.
fn certificates(a: &Mat, sk: &SketchF64, report: &mut Report) -> Result<()> {
    if sk.method == Method::Svd {
        log::info!(
            "certificates skipped for the svd sketch (nonzero c, not a right multiplication)"
        );
        return Ok(());
    }
    let s = sk.operator_matrix(a.cols());
    let (k, eps) = (sk.params.k, sk.params.eps);
    let start = Instant::now();
    report.certificate_t1 = Some(certify_theorem1(a, &s, k, eps)?);
    report.certificate_t2 = Some(certify_theorem2(a, &s, k, eps)?);
    report
        .timing_ms
        .insert("certify", start.elapsed().as_secs_f64() * 1e3);
    Ok(())
}

fn certify(a: &Mat, args: &SketchArgs) -> Result<Report> {
    if args.method == Method::Svd {
        bail!("certificates need a sketch of the form AS; the svd sketch is not");
    }
    let mut timing = BTreeMap::new();
    let sk = timed(&mut timing, "sketch", || build(a, args))?;
    let mut report = base_report("certify", a, &sk, timing);
    certificates(a, &sk, &mut report)?;
    Ok(report)
}

fn verify(a: &Mat, args: &SketchArgs, probes: &ProbeArgs) -> Result<Report> {
    let mut timing = BTreeMap::new();
    let sk = timed(&mut timing, "sketch", || build(a, args))?;
    let mut report = base_report("verify", a, &sk, timing);
    certificates(a, &sk, &mut report)?;
    let opts = ProbeOptions {
        n_random: probes.n_random,
        exhaustive_clusters: probes.exhaustive && a.rows() <= EXHAUSTIVE_MAX_N,
        ..ProbeOptions::default()
    };
    let start = Instant::now();
    let set = generate_probes_with(a, &sk.a_tilde, args.k, args.seed, &opts)?;
    let r = pcp_report(a, &sk.a_tilde, sk.c_const, &set, args.eps)?;
    report
        .timing_ms
        .insert("audit", start.elapsed().as_secs_f64() * 1e3);
    report.pcp = Some(PcpSummary {
        max_abs_rel_err: r.max_abs_rel_err,
        eps_target: r.eps_target,
        pass: r.pass,
        n_probes: r.n_probes(),
        per_probe: r.per_probe,
    });
    Ok(report)
}

fn solve(a: &Mat, args: &SketchArgs, task: Task, solver: &SolverParams) -> Result<Report> {
    let mut timing = BTreeMap::new();
    let sk = timed(&mut timing, "sketch", || build(a, args))?;
    let out = timed(&mut timing, "solve", || {
        sketch_and_solve(a, &sk, task, solver)
    })?;
    let optimum_on_a = timed(&mut timing, "optimum", || -> Result<f64> {
        Ok(match task {
            Task::LowRank => svd(a)?.tail_energy(args.k),
            Task::KMeans if solver.exhaustive => exhaustive_kmeans(a, args.k)?.cost,
            Task::KMeans => lloyd_kmeans(a, args.k, solver.iters, solver.seed)?.cost,
        })
    })?;
    // The bound needs γ and an exact optimum; both are available for the exact solvers only.
    let eps = args.eps;
    let rhs = out
        .certified_ratio
        .zip(out.gamma)
        .map(|(ratio, g)| ratio * optimum_on_a + (1.0 - g) * sk.c_const / (1.0 - eps));
    let holds = rhs.map(|r| out.cost_on_a <= r + 1e-9 * a.frob_norm_sq());
    let assignment = match &out.solution {
        Solution::Clustering(c) => Some(c.assignment.clone()),
        Solution::Projection(_) => None,
    };
    let mut report = base_report("solve", a, &sk, timing);
    report.transfer = Some(TransferSummary {
        task,
        gamma: out.gamma,
        lhs: out.cost_on_a,
        rhs,
        holds,
        optimum_on_a,
        cost_on_sketch: out.cost_on_sketch,
        assignment,
    });
    Ok(report)
}

/// Trial `t` uses seed `derive_seed(seed, t)`; results are returned in trial order.
fn run_trials<F>(args: &SketchArgs, trials: &TrialArgs, f: F) -> Result<Vec<Report>>
where
    F: Fn(&SketchArgs) -> Result<Report> + Sync,
{
    let count = trials.trials.max(1);
    let one = |t: usize| {
        let seed = if count == 1 {
            args.seed
        } else {
            derive_seed(args.seed, t as u64)
        };
        f(&SketchArgs {
            seed,
            ..args.clone()
        })
    };
    if trials.parallel {
        (0..count).into_par_iter().map(one).collect()
    } else {
        (0..count).map(one).collect()
    }
}

fn summarize(reports: Vec<Report>, delta: f64, pass: impl Fn(&Report) -> bool) -> TrialsReport {
    let passed = reports.iter().filter(|r| pass(r)).count();
    let required_fraction = 1.0 - delta;
    TrialsReport {
        trials: reports.len(),
        passed,
        required_fraction,
        pass: passed as f64 >= required_fraction * reports.len() as f64,
        reports,
    }
}
