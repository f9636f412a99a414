//! Acceptance criteria, one verdict line each.
//!
//! Run with `cargo test -p tailcovar --test acceptance`. Pass criterion
//! numbers as trailing arguments to run a subset, e.g. `-- 1 4 5`.

use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tailcovar::experiments::{quantile_score, run_table1, ExperimentConfig, ExperimentReport};
use tailcovar::{
    covar_estimate, m_estimate, rank_pairs, solve_eta_star, true_covar, AdjustmentQuery,
    FamilyKind, InvertedHuslerReiss, ModelSpec, ParetoMixture, SchemeSpec, TailFamily, Tuning,
    Variant, WeightScheme,
};

const P: f64 = 0.05;
const N: usize = 5000;
const REPS: usize = 200;

/// One row of the published simulation table.
struct Row {
    model: ModelSpec,
    true_value: f64,
    k1000: (f64, f64),
    k1500: (f64, f64),
    naive: (f64, f64),
}

const fn m1(theta1: f64, theta2: f64) -> ModelSpec {
    ModelSpec::Model1 { theta1, theta2 }
}

const fn m2(theta: f64) -> ModelSpec {
    ModelSpec::Model2 { theta }
}

const TABLE: [Row; 6] = [
    Row { model: m1(0.85, 0.45), true_value: 11.17, k1000: (13.76, 1.88), k1500: (14.30, 1.42), naive: (18.26, 3.57) },
    Row { model: m1(0.80, 0.42), true_value: 9.52, k1000: (11.64, 1.50), k1500: (12.08, 1.12), naive: (15.22, 2.80) },
    Row { model: m1(0.75, 0.40), true_value: 8.55, k1000: (10.20, 1.23), k1500: (10.55, 0.92), naive: (13.06, 2.22) },
    Row { model: m2(0.91), true_value: 35.54, k1000: (38.42, 11.29), k1500: (40.21, 8.17), naive: (40.49, 14.46) },
    Row { model: m2(0.93), true_value: 30.85, k1000: (32.59, 9.34), k1500: (33.74, 6.70), naive: (35.30, 11.74) },
    Row { model: m2(0.95), true_value: 26.90, k1000: (28.85, 8.16), k1500: (29.03, 5.79), naive: (31.10, 10.54) },
];

fn label(m: &ModelSpec) -> String {
    match m {
        ModelSpec::Model1 { theta1, theta2 } => format!("model1 ({theta1:.2}, {theta2:.2})"),
        ModelSpec::Model2 { theta } => format!("model2 {theta}"),
    }
}

fn table_runs() -> &'static [ExperimentReport] {
    static RUNS: OnceLock<Vec<ExperimentReport>> = OnceLock::new();
    RUNS.get_or_init(|| {
        TABLE
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let config = ExperimentConfig {
                    model: row.model,
                    p: P,
                    n: N,
                    reps: REPS,
                    k_grid: serde_json::from_str("[1000, 1500]").unwrap(),
                    seed: 1_000_000 * (i as u64 + 1),
                    family: None,
                    scheme: None,
                    output: None,
                };
                run_table1(&config).expect("table run")
            })
            .collect()
    })
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok  "
    } else {
        "MISS"
    }
}

fn criterion_1() -> bool {
    let start = Instant::now();
    let mut ok = true;
    for row in &TABLE {
        let v = true_covar(&row.model, P).unwrap();
        let hit = (v - row.true_value).abs() <= 0.02;
        ok &= hit;
        println!("    {} {:<20} oracle {v:.4} expected {:.2}", mark(hit), label(&row.model), row.true_value);
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!("    runtime {elapsed:.3} s (limit 1 s)");
    ok && elapsed < 1.0
}

fn criterion_2() -> bool {
    let mut ok = true;
    let band = |sd: f64| 3.0 * sd / (REPS as f64).sqrt();
    for (row, report) in TABLE.iter().zip(table_runs()) {
        let cols = [
            ("k=1000", report.rows[0].mean, row.k1000),
            ("k=1500", report.rows[1].mean, row.k1500),
            ("naive", report.naive.mean, row.naive),
        ];
        for (name, got, (mean, sd)) in cols {
            let hit = (got - mean).abs() <= band(sd);
            ok &= hit;
            println!(
                "    {} {:<20} {name:<7} mean {got:.3} expected {mean:.2} ± {:.3}",
                mark(hit),
                label(&row.model),
                band(sd)
            );
        }
    }
    ok
}

fn criterion_3() -> bool {
    let mut ok = true;
    for report in table_runs() {
        let name = label(&report.config.model);
        let naive_sd = report.naive.sd.unwrap();
        let naive_bias = report.naive_bias.abs();
        for r in &report.rows {
            let sd = r.sd.unwrap();
            let beats = r.bias.abs() < naive_bias && sd < naive_sd;
            let over = r.mean >= report.true_value;
            ok &= beats && over;
            println!(
                "    {} {name:<20} k={} |bias| {:.3} vs naive {naive_bias:.3}, sd {sd:.3} vs naive {naive_sd:.3}",
                mark(beats),
                r.k1,
                r.bias.abs()
            );
            println!(
                "    {} {name:<20} k={} mean {:.3} >= true {:.3}",
                mark(over),
                r.k1,
                r.mean,
                report.true_value
            );
        }
        let (sd1000, sd1500) = (report.rows[0].sd.unwrap(), report.rows[1].sd.unwrap());
        let shrinks = sd1500 < sd1000;
        ok &= shrinks;
        println!("    {} {name:<20} sd(k=1500) {sd1500:.3} < sd(k=1000) {sd1000:.3}", mark(shrinks));
    }
    ok
}

fn criterion_4() -> bool {
    let start = Instant::now();
    let ps: Vec<f64> = (0..20).map(|j| 10f64.powf(-3.0 + 2.5 * j as f64 / 19.0)).collect();
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let theta = 0.5 + 0.49 * i as f64 / 19.0;
        let alpha = 1.0 + 0.99 * i as f64 / 19.0;
        for &p in &ps {
            let ihr = solve(&InvertedHuslerReiss, theta, p);
            worst = worst.max((ihr - p.powf((2.0 - 2.0 * theta) / theta)).abs());
            let pm = solve(&ParetoMixture, alpha, p);
            worst = worst.max((pm - p.powf(2.0 / alpha - 1.0) * 2f64.powf(1.0 / alpha - 1.0)).abs());
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!("    max |solved − closed form| {worst:.3e} over 2×20×20 points, {elapsed:.3} s");
    worst <= 1e-10 && elapsed < 1.0
}

fn solve(family: &dyn TailFamily, theta: f64, p: f64) -> f64 {
    solve_eta_star(&AdjustmentQuery {
        p,
        variant: Variant::Exceedance,
        family,
        theta: &[theta],
        eta: family.eta(&[theta]),
    })
    .unwrap()
}

fn criterion_5() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut ok = true;
    for family in [&ParetoMixture as &dyn TailFamily, &InvertedHuslerReiss] {
        let (lo, hi) = family.param_box()[0];
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let theta = [rng.random_range(lo..=hi)];
            let a = rng.random_range(0.01..100.0);
            let (x, y) = (rng.random_range(0.0..5.0), rng.random_range(0.0..5.0));
            let lhs = family.c(a * x, a * y, &theta);
            let rhs = a.powf(1.0 / family.eta(&theta)) * family.c(x, y, &theta);
            worst = worst.max((lhs - rhs).abs() / rhs.abs().max(1.0));
        }
        let hit = worst <= 1e-12;
        ok &= hit;
        println!("    {} {:<22} max relative deviation {worst:.3e}", mark(hit), family.name());
    }
    ok
}

fn criterion_6() -> bool {
    let mut ok = true;
    for (model, tol, base) in [(m2(0.93), 0.05, 600_000u64), (m1(0.85, 0.45), 0.15, 700_000)] {
        let kind = model.family_kind();
        let scheme = default_scheme(kind);
        let mean = (0..50)
            .map(|rep| {
                let s = model.sample(N, base + rep).unwrap();
                m_estimate(&rank_pairs(&s).unwrap(), 1000, kind.family(), &scheme)
                    .unwrap()
                    .theta_hat[0]
            })
            .sum::<f64>()
            / 50.0;
        let target = model.tail_parameter();
        let hit = (mean - target).abs() <= tol;
        ok &= hit;
        println!("    {} {:<20} mean θ̂ {mean:.4} target {target:.4} ± {tol}", mark(hit), label(&model));
    }
    ok
}

fn default_scheme(kind: FamilyKind) -> WeightScheme {
    let spec = match kind {
        FamilyKind::ParetoMixture => SchemeSpec::pareto_mixture_default(),
        FamilyKind::InvertedHuslerReiss => SchemeSpec::inverted_husler_reiss_default(),
    };
    WeightScheme::new(spec, kind.family()).unwrap()
}

fn criterion_7() -> bool {
    let n = 1_000_000;
    let mut ok = true;
    for (model, seed) in [(m1(0.85, 0.45), 71u64), (m2(0.93), 72)] {
        let js = model.joint_survival();
        let sample = model.sample(n, seed).unwrap();
        let grid: Vec<f64> = [0.5, 0.1, 0.02].iter().map(|&u| js.quantile_x(u)).collect();
        let mut worst: f64 = 0.0;
        for &s in &grid {
            for &t in &grid {
                let exact = js.joint(s, t);
                let hits = sample.pairs().filter(|&(x, y)| x > s && y > t).count() as f64 / n as f64;
                let se = (exact * (1.0 - exact) / n as f64).sqrt();
                worst = worst.max((hits - exact).abs() / se);
            }
        }
        let hit = worst <= 3.0;
        ok &= hit;
        println!("    {} {:<20} max |empirical − analytic| / SE = {worst:.2} over 9 points", mark(hit), label(&model));
    }
    ok
}

fn criterion_8() -> bool {
    let scheme = default_scheme(FamilyKind::InvertedHuslerReiss);
    let mut ok = true;
    for (model, base) in [(m2(1.0 - 1e-3), 800u64), (m2(1.0), 900)] {
        let ratio = (0..20u64)
            .map(|seed| {
                let s = model.sample(N, base + seed).unwrap();
                let e = covar_estimate(&s, Tuning::uniform(P, 1000), &InvertedHuslerReiss, &scheme).unwrap();
                e.covar_hat / e.var_hat_p
            })
            .sum::<f64>()
            / 20.0;
        let hit = (0.9..=1.1).contains(&ratio);
        ok &= hit;
        println!("    {} {:<20} mean covar_hat / var_hat {ratio:.4} (band [0.9, 1.1])", mark(hit), label(&model));
    }
    ok
}

/// Recorded only; the verdict does not affect the exit status.
fn criterion_9() -> bool {
    let report = &table_runs()[0];
    let truth = report.true_value;
    let k: f64 = 1000.0;
    let scale = k.sqrt() / (k / (N as f64 * P)).ln();
    let z: Vec<f64> = report
        .reps
        .iter()
        .map(|r| scale * (r.estimates[0].covar_hat / truth - 1.0))
        .collect();
    let sd = tailcovar::experiments::summarize(&z).sd.unwrap();
    let gamma = report.config.model.gamma_y();
    let ok = sd.is_finite() && sd >= gamma / 3.0 && sd <= 3.0 * gamma;
    println!("    standardized-error sd {sd:.3}, γ = {gamma} (band [{:.3}, {:.3}])", gamma / 3.0, 3.0 * gamma);
    ok
}

fn criterion_10() -> bool {
    let a = quantile_score(2.0, 1.0, 0.05);
    let b = quantile_score(2.0, 3.0, 0.05);
    let hand = (a - 0.10).abs() < 1e-15 && (b - 1.10).abs() < 1e-15;
    println!("    {} S(2, 1) = {a}, S(2, 3) = {b}", mark(hand));
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (r, x) = (rng.random_range(0.0..100.0), rng.random_range(0.0..100.0));
        let c = rng.random_range(0.01..50.0);
        let p = rng.random_range(0.001..0.5);
        let rhs = c * quantile_score(r, x, p);
        worst = worst.max((quantile_score(c * r, c * x, p) - rhs).abs() / rhs.abs().max(1.0));
    }
    println!("    {} 1-homogeneity max relative deviation {worst:.3e}", mark(worst <= 1e-12));
    hand && worst <= 1e-12
}

struct Criterion {
    id: u32,
    title: &'static str,
    run: fn() -> bool,
    gated: bool,
}

const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, title: "oracle reproduces the six true values", run: criterion_1, gated: true },
    Criterion { id: 2, title: "simulation means at 200 reps", run: criterion_2, gated: true },
    Criterion { id: 3, title: "ordering properties at 200 reps", run: criterion_3, gated: true },
    Criterion { id: 4, title: "adjustment factor closed forms", run: criterion_4, gated: true },
    Criterion { id: 5, title: "homogeneity of both families", run: criterion_5, gated: true },
    Criterion { id: 6, title: "M-estimator recovery", run: criterion_6, gated: true },
    Criterion { id: 7, title: "sampler fidelity", run: criterion_7, gated: true },
    Criterion { id: 8, title: "independence sanity", run: criterion_8, gated: true },
    Criterion { id: 9, title: "standardized error spread (recorded)", run: criterion_9, gated: false },
    Criterion { id: 10, title: "quantile scoring", run: criterion_10, gated: true },
];

fn main() -> ExitCode {
    let selected: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = Vec::new();
    for c in CRITERIA.iter().filter(|c| selected.is_empty() || selected.contains(&c.id)) {
        println!("criterion {}: {}", c.id, c.title);
        let start = Instant::now();
        let ok = (c.run)();
        let verdict = match (ok, c.gated) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "FAIL (not gated)",
        };
        println!("criterion {} {verdict} ({:.1} s)", c.id, start.elapsed().as_secs_f64());
        if !ok && c.gated {
            failed.push(c.id);
        }
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
