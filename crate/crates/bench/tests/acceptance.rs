//! Acceptance suite. Runs every criterion, prints one `[PASS]`/`[FAIL]` line each, and exits
//! non-zero if any failed. Pass a substring to run only the matching criteria.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::process::{self, Command};
use std::time::Instant;

use clap::Parser;
use prc_bench::{run_bench, Cli, Command as Sub};
use prc_core::rng::SeededRng;
use prc_core::{
    compute_scatters, dprc_fit, run_projection, solve_generalized_eig, Dataset, EpsilonMode,
    Matrix, PrcConfig, StopReason, Vector,
};

/// Allowed increase between consecutive distances.
const MONOTONE_SLACK: f64 = 1e-10;
/// Allowed undershoot of the affine-hull distance.
const HULL_SLACK: f64 = 1e-9;
const MONOTONE_BUDGET_SECS: f64 = 30.0;
const CALIBRATION_MEDIAN_MAX: f64 = 1.10;
const HIGH_DIM_MIN_GAP_STOPS: usize = 90;
const HIGH_DIM_BUDGET_SECS: f64 = 60.0;
const SCATTER_TOL: f64 = 1e-9;
const EIGENVALUE_REL_TOL: f64 = 1e-6;
const DIRECTION_TOL: f64 = 1e-9;
const GEN_EIG_RESIDUAL_TOL: f64 = 1e-8;
const SEPARABILITY_MIN_COS: f64 = 0.99;
const E2E_MIN_PRC_ACCURACY: f64 = 0.95;
const E2E_MIN_PRC_GE_NN: usize = 16;
const E2E_DPRC_SLACK: f64 = 0.02;
/// Per-iteration time may grow by at most this factor times the dimension ratio.
const SCALING_MAX_FACTOR: f64 = 2.5;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|t| t * t).sum::<f64>().sqrt()
}

/// Distance from `x` to the affine hull of `points` via modified Gram–Schmidt, independent
/// of the library's least-squares path.
fn hull_distance(x: &[f64], points: &[Vec<f64>]) -> f64 {
    let base = &points[0];
    let reduce = |v: &mut Vec<f64>, basis: &[Vec<f64>]| {
        for _ in 0..2 {
            for u in basis {
                let c: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(u).for_each(|(a, b)| *a -= c * b);
            }
        }
    };
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for p in &points[1..] {
        let mut v: Vec<f64> = p.iter().zip(base).map(|(a, b)| a - b).collect();
        let scale = norm(&v).max(1.0);
        reduce(&mut v, &basis);
        let n = norm(&v);
        if n > 1e-10 * scale {
            basis.push(v.into_iter().map(|t| t / n).collect());
        }
    }
    let mut r: Vec<f64> = x.iter().zip(base).map(|(a, b)| a - b).collect();
    reduce(&mut r, &basis);
    norm(&r)
}

/// Largest increase of the distance sequence, starting from the first anchor's distance.
fn max_increase(initial: f64, trace: &[f64]) -> f64 {
    let mut prev = initial;
    let mut worst = f64::NEG_INFINITY;
    for &d in trace {
        worst = worst.max(d - prev);
        prev = d;
    }
    worst
}

fn gaussian_instance(rng: &mut SeededRng, q: usize, n: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let points = (0..n).map(|_| rng.gaussian_vec(q)).collect();
    (points, rng.gaussian_vec(q))
}

fn random_instances() -> Vec<(Vec<Vec<f64>>, Vec<f64>)> {
    (0..1000u64)
        .map(|seed| {
            let mut rng = SeededRng::new(seed, 0);
            let q = 2 + (rng.uniform() * 49.0) as usize;
            let n = 1 + (rng.uniform() * 10.0) as usize;
            gaussian_instance(&mut rng, q, n)
        })
        .collect()
}

fn monotonicity() -> Verdict {
    let instances = random_instances();
    let cfg = PrcConfig::new(1e-8, 500).unwrap();
    let start = Instant::now();
    let mut worst = f64::NEG_INFINITY;
    let mut iterations = 0;
    for (points, x) in &instances {
        let r = run_projection(x, &Matrix::from_columns(points).unwrap(), &cfg).unwrap();
        worst = worst.max(max_increase(r.initial_distance, &r.trace));
        iterations += r.iterations_used;
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        worst <= MONOTONE_SLACK && secs <= MONOTONE_BUDGET_SECS,
        format!(
            "1000 instances ({iterations} projections), largest step increase {worst:.3e} (slack {MONOTONE_SLACK:e}), \
             {secs:.2} s (limit {MONOTONE_BUDGET_SECS} s)"
        ),
    )
}

fn hull_lower_bound() -> Verdict {
    let cfg = PrcConfig::new(1e-8, 500).unwrap();
    let mut worst = f64::INFINITY;
    for (points, x) in random_instances() {
        let r = run_projection(&x, &Matrix::from_columns(&points).unwrap(), &cfg).unwrap();
        worst = worst.min(r.distance - hull_distance(&x, &points));
    }
    verdict(
        worst >= -HULL_SLACK,
        format!("1000 instances, min(final - hull) = {worst:.3e} (slack {HULL_SLACK:e})"),
    )
}

fn calibration() -> Verdict {
    let cfg = PrcConfig::new(1e-10, 10_000).unwrap();
    let mut ratios: Vec<f64> = (0..200u64)
        .map(|seed| {
            let (points, x) = gaussian_instance(&mut SeededRng::new(seed, 1), 10, 4);
            let r = run_projection(&x, &Matrix::from_columns(&points).unwrap(), &cfg).unwrap();
            r.distance / hull_distance(&x, &points)
        })
        .collect();
    ratios.sort_by(f64::total_cmp);
    let at = |p: f64| ratios[((ratios.len() - 1) as f64 * p).round() as usize];
    let median = (ratios[99] + ratios[100]) / 2.0;
    verdict(
        median <= CALIBRATION_MEDIAN_MAX,
        format!(
            "200 instances, final/oracle ratio: min {:.4} p25 {:.4} median {median:.4} p75 {:.4} \
             p90 {:.4} max {:.4} (median limit {CALIBRATION_MEDIAN_MAX})",
            ratios[0],
            at(0.25),
            at(0.75),
            at(0.90),
            ratios[199]
        ),
    )
}

fn high_dimensional_stopping() -> Verdict {
    let cfg = PrcConfig::default();
    let start = Instant::now();
    let mut gap_stops = 0;
    let mut monotone = true;
    let mut iters = Vec::new();
    for seed in 0..100u64 {
        let (points, x) = gaussian_instance(&mut SeededRng::new(seed, 2), 5000, 20);
        let r = run_projection(&x, &Matrix::from_columns(&points).unwrap(), &cfg).unwrap();
        monotone &= max_increase(r.initial_distance, &r.trace) <= MONOTONE_SLACK;
        if r.stop_reason == StopReason::GapBelowThreshold && r.iterations_used <= 100 {
            gap_stops += 1;
        }
        iters.push(r.iterations_used);
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        monotone && gap_stops >= HIGH_DIM_MIN_GAP_STOPS && secs <= HIGH_DIM_BUDGET_SECS,
        format!(
            "q=5000, 20 samples, 100 seeds: monotone={monotone}, gap-rule stops {gap_stops} \
             (need {HIGH_DIM_MIN_GAP_STOPS}), iterations {}..={}, {secs:.2} s (limit {HIGH_DIM_BUDGET_SECS} s)",
            iters.iter().min().unwrap(),
            iters.iter().max().unwrap()
        ),
    )
}

fn parse_bench(args: &[&str]) -> prc_bench::cli::BenchArgs {
    let argv = ["prc-bench", "bench"].iter().chain(args).copied();
    match Cli::try_parse_from(argv).expect("valid flags").command {
        Sub::Bench(b) => b,
        Sub::Trace(_) => unreachable!(),
    }
}

fn defaults() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_prc-bench");
    let help = |sub: &str| {
        String::from_utf8(
            Command::new(bin)
                .args([sub, "--help"])
                .output()
                .unwrap()
                .stdout,
        )
        .unwrap()
    };
    let golden = help("bench") == include_str!("golden/bench_help.txt")
        && help("trace") == include_str!("golden/trace_help.txt");
    let report = run_bench(&parse_bench(&[
        "--synth",
        "q=6,m=2,n=4,k=2",
        "--train-per-class",
        "2",
    ]))
    .unwrap();
    let lib = PrcConfig::default();
    let echoed = report.config.delta0 == 0.01 && report.config.max_iters == 100;
    let core = lib.delta0 == 0.01 && lib.max_iters == 100;
    verdict(
        golden && echoed && core,
        format!(
            "golden help {golden}, report echo delta0={} max_iters={}, library default {}/{}",
            report.config.delta0, report.config.max_iters, lib.delta0, lib.max_iters
        ),
    )
}

fn hand_case() -> Verdict {
    let v = |a: f64, b: f64| Vector::from(vec![a, b]);
    let data = Dataset::from_labeled(&[
        ("1", v(0.0, 0.0)),
        ("1", v(1.0, 0.0)),
        ("2", v(0.0, 3.0)),
        ("2", v(1.0, 3.0)),
    ])
    .unwrap();
    let cfg = PrcConfig::default();
    let s = compute_scatters(&data, &cfg).unwrap();
    let jw = [[1.0, 0.0], [0.0, 0.0]];
    let jb = [[0.0, 0.0], [0.0, 9.0]];
    let mut err: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            err = err
                .max((s.jw[(i, j)] - jw[i][j]).abs())
                .max((s.jb[(i, j)] - jb[i][j]).abs());
        }
    }
    let eps = 0.01;
    let expected_lambda = jb[1][1] / (jw[1][1] + eps);
    let model = dprc_fit(&data, 1, EpsilonMode::Absolute(eps), &cfg).unwrap();
    let p = [model.projection[(0, 0)], model.projection[(1, 0)]];
    let lambda = model.eigenvalues[0];
    let lambda_rel = (lambda - expected_lambda).abs() / expected_lambda;
    let dir_err = p[0].abs().max((p[1].abs() - 1.0).abs());
    verdict(
        err <= SCATTER_TOL && lambda_rel <= EIGENVALUE_REL_TOL && dir_err <= DIRECTION_TOL,
        format!(
            "scatter max error {err:.2e}, P = ({:.3e}, {:.12}), lambda1 = {lambda:.9} \
             (expected {expected_lambda}, rel err {lambda_rel:.2e})",
            p[0], p[1]
        ),
    )
}

fn random_spd(q: usize, rng: &mut SeededRng) -> Matrix {
    let mut m = Matrix::zeros(q, q);
    for _ in 0..q + 2 {
        m.add_outer(&rng.gaussian_vec(q), 1.0);
    }
    m
}

fn generalized_eigen() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut sorted = true;
    for seed in 0..100u64 {
        let mut rng = SeededRng::new(seed, 3);
        let q = 1 + (rng.uniform() * 30.0) as usize;
        let jb = random_spd(q, &mut rng);
        let jw = random_spd(q, &mut rng);
        let eps = EpsilonMode::default().resolve(&jw);
        let sol = solve_generalized_eig(&jb, &jw, eps, q).unwrap();
        sorted &= sol.eigenvalues.windows(2).all(|w| w[0] >= w[1]);
        let scale = 1.0 + jb.frobenius_norm();
        for k in 0..q {
            let lambda = sol.eigenvalues[k];
            let resid: Vec<f64> = (0..q)
                .map(|i| {
                    (0..q)
                        .map(|j| {
                            let b = jb[(i, j)];
                            let w = jw[(i, j)] + if i == j { eps } else { 0.0 };
                            (b - lambda * w) * sol.projection[(j, k)]
                        })
                        .sum::<f64>()
                })
                .collect();
            worst = worst.max(norm(&resid) / scale);
        }
    }
    verdict(
        worst <= GEN_EIG_RESIDUAL_TOL && sorted,
        format!(
            "100 pairs, max residual/(1+|Jb|_F) {worst:.3e} (limit {GEN_EIG_RESIDUAL_TOL:e}), \
             descending={sorted}"
        ),
    )
}

fn separability() -> Verdict {
    let (q, n, sigma) = (10, 20, 0.1);
    let mut worst: f64 = 1.0;
    for seed in 0..20u64 {
        let mut rng = SeededRng::new(seed, 4);
        let mut samples = Vec::new();
        for (label, axis) in [("pos", 1.0), ("neg", -1.0)] {
            for _ in 0..n {
                let mut x: Vec<f64> = rng.gaussian_vec(q).into_iter().map(|t| sigma * t).collect();
                x[0] = axis;
                samples.push((label, Vector::from(x)));
            }
        }
        let data = Dataset::from_labeled(&samples).unwrap();
        let model = dprc_fit(&data, 1, EpsilonMode::default(), &PrcConfig::default()).unwrap();
        let p: Vec<f64> = (0..q).map(|i| model.projection[(i, 0)]).collect();
        worst = worst.min(p[0].abs() / norm(&p));
    }
    verdict(
        worst >= SEPARABILITY_MIN_COS,
        format!("20 seeds, min |cos(p1, e1)| = {worst:.6} (need {SEPARABILITY_MIN_COS})"),
    )
}

fn end_to_end() -> Verdict {
    let (mut prc, mut nn, mut dprc) = (0.0, 0.0, 0.0);
    let mut prc_ge_nn = 0;
    for seed in 0..20u64 {
        let seed_s = seed.to_string();
        let report = run_bench(&parse_bench(&[
            "--synth",
            "q=20,m=5,k=3,noise=0.05,sep=5,n=10",
            "--train-per-class",
            "5",
            "--seed",
            &seed_s,
            "--methods",
            "prc,dprc,nn",
            "--dprc-dim",
            "4",
        ]))
        .unwrap();
        let acc = |m: &str| report.method(m).unwrap().accuracy;
        prc += acc("prc") / 20.0;
        nn += acc("nn") / 20.0;
        dprc += acc("dprc") / 20.0;
        prc_ge_nn += usize::from(acc("prc") >= acc("nn"));
    }
    verdict(
        prc >= E2E_MIN_PRC_ACCURACY
            && prc_ge_nn >= E2E_MIN_PRC_GE_NN
            && dprc >= prc - E2E_DPRC_SLACK,
        format!(
            "20 seeds: mean accuracy prc {prc:.4} dprc {dprc:.4} nn {nn:.4}; \
             prc >= nn on {prc_ge_nn}/20"
        ),
    )
}

fn time_per_iteration(q: usize) -> f64 {
    let cfg = PrcConfig::new(0.0, 100).unwrap();
    let inputs: Vec<_> = (0..50u64)
        .map(|seed| {
            let (points, x) = gaussian_instance(&mut SeededRng::new(seed, 5), q, 20);
            (Matrix::from_columns(&points).unwrap(), x)
        })
        .collect();
    // Warm caches and the allocator.
    for (m, x) in inputs.iter().take(5) {
        run_projection(x, m, &cfg).unwrap();
    }
    let mut total = 0.0;
    for (m, x) in &inputs {
        let start = Instant::now();
        let r = run_projection(x, m, &cfg).unwrap();
        total += start.elapsed().as_secs_f64() / r.iterations_used as f64;
    }
    total / inputs.len() as f64
}

fn scaling() -> Verdict {
    let small = time_per_iteration(1_000);
    let large = time_per_iteration(10_000);
    let normalized = large / small / 10.0;
    verdict(
        normalized <= SCALING_MAX_FACTOR,
        format!(
            "per iteration: q=1000 {:.2} us, q=10000 {:.2} us; ratio / 10 = {normalized:.3} \
             (limit {SCALING_MAX_FACTOR})",
            small * 1e6,
            large * 1e6
        ),
    )
}

fn determinism() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_prc-bench");
    let dir = tempfile::tempdir().unwrap();
    let outputs: Vec<Vec<Vec<u8>>> = (0..2)
        .map(|i| {
            let p = |name: &str| dir.path().join(format!("{name}{i}"));
            let ok = |args: Vec<String>| {
                let out = Command::new(bin).args(args).output().unwrap();
                assert!(
                    out.status.success(),
                    "{}",
                    String::from_utf8_lossy(&out.stderr)
                );
            };
            let s = |p: std::path::PathBuf| p.to_str().unwrap().to_string();
            ok([
                "bench",
                "--synth",
                "q=20,m=5,n=10",
                "--train-per-class",
                "5",
                "--seed",
                "3",
                "--pca-dim",
                "12",
                "--out",
            ]
            .iter()
            .map(|a| a.to_string())
            .chain([s(p("report")), "--model-out".into(), s(p("model"))])
            .collect());
            ok(["trace", "--random", "5000x20", "--seed", "3", "--out"]
                .iter()
                .map(|a| a.to_string())
                .chain([s(p("trace"))])
                .collect());
            ok([
                "trace",
                "--synth",
                "q=20,m=5,n=10",
                "--class",
                "c2",
                "--query",
                "heldout:4",
                "--out",
            ]
            .iter()
            .map(|a| a.to_string())
            .chain([s(p("heldout"))])
            .collect());
            ["report", "model", "trace", "heldout"]
                .map(|n| fs::read(p(n)).unwrap())
                .to_vec()
        })
        .collect();
    let same = outputs[0] == outputs[1];
    verdict(
        same,
        format!("bench report, model file and two traces byte-identical across runs: {same}"),
    )
}

type Criterion = (&'static str, &'static str, fn() -> Verdict);

const CRITERIA: [Criterion; 11] = [
    ("1", "monotone-trace", monotonicity),
    ("2", "affine-hull-lower-bound", hull_lower_bound),
    ("3", "convergence-calibration", calibration),
    ("4", "high-dimensional-stopping", high_dimensional_stopping),
    ("5", "defaults", defaults),
    ("6", "scatter-hand-case", hand_case),
    ("7", "generalized-eigen-residuals", generalized_eigen),
    ("8", "separability-recovery", separability),
    ("9", "end-to-end-accuracy", end_to_end),
    ("10", "linear-scaling", scaling),
    ("11", "determinism", determinism),
];

fn main() {
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    if std::env::args().any(|a| a == "--list") {
        for (id, name, _) in CRITERIA {
            println!("{id}-{name}: test");
        }
        return;
    }
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    let mut ran = 0;
    for (id, name, check) in CRITERIA {
        let key = format!("{id}-{name}");
        if filter.as_deref().is_some_and(|f| !key.contains(f)) {
            continue;
        }
        ran += 1;
        let v = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            verdict(false, format!("panicked: {msg}"))
        });
        failed += usize::from(!v.pass);
        println!(
            "[{}] {key:<34} {}",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", ran - failed);
    if failed > 0 {
        process::exit(1);
    }
}
