//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::f64::consts::LN_2;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{rel_err, Hp};
use qdist_core::density::{self, DensityMatrix};
use qdist_core::distinguish::{criteria_agreement_profile, jsd_criterion, monte_carlo_discrimination, wootters_criterion, MinTrials};
use qdist_core::expansions::{
    binary_shift_half_wootters_sq, binary_shift_jsd, geometric_sequence, infinitesimal_ratio_check,
    jsd_series_coeffs, verify_expansion_order, wootters_sq_half_series_coeffs, InfinitesimalMetric,
};
use qdist_core::figures::{self, BOUND_TOLERANCE, DEFAULT_FIG2_PHIS};
use qdist_core::hilbert::PureState;
use qdist_core::properties::{run_suite, Report, Suite, SuiteConfig};
use qdist_core::simplex::{self, ProbVec};

type Outcome = Result<String, String>;

/// Number, name, runtime budget, check.
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

/// "Instant" criteria get one second.
const INSTANT: Duration = Duration::from_secs(1);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn pv(v: &[f64]) -> ProbVec {
    ProbVec::new(v.to_vec()).unwrap()
}

fn suite(s: Suite) -> Report {
    run_suite(s, SuiteConfig::default()).unwrap()
}

fn require(report: &Report, name: &str) -> Result<String, String> {
    let c = report.check(name).ok_or_else(|| format!("missing check {name}"))?;
    let line = format!("{name}: samples={} worst={:.3e} tol={:e}", c.samples, c.worst_margin, c.tolerance);
    if c.passed {
        Ok(line)
    } else {
        Err(line)
    }
}

fn c1() -> Outcome {
    let v = simplex::jsd(&pv(&[1.0, 0.0]), &pv(&[0.0, 1.0])).map_err(|e| e.to_string())?;
    ensure((v - LN_2).abs() <= 1e-12, format!("jsd = {v}"))?;
    Ok(format!("jsd = {v}, |jsd - ln 2| = {:.1e}", (v - LN_2).abs()))
}

fn c2() -> Outcome {
    let r = suite(Suite::Metric);
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for n in 2..=6 {
        let name = format!("sqrt_jsd_triangle_n{n}");
        match require(&r, &name) {
            Ok(_) => {}
            Err(l) => failures.push(l),
        }
    }
    for name in ["wootters_triangle_violation_found", "bhattacharyya_triangle_violation_found"] {
        match require(&r, name) {
            Ok(l) => notes.push(format!("{l} witness={}", r.check(name).unwrap().witness.clone().unwrap_or_default())),
            Err(l) => failures.push(l),
        }
    }
    if failures.is_empty() {
        Ok(format!("sqrt-jsd triangle holds in n = 2..6; {}", notes.join("; ")))
    } else {
        Err(failures.join("; "))
    }
}

fn c3() -> Outcome {
    require(&suite(Suite::Kernel), "jsd_negative_definite")
}

fn c4() -> Outcome {
    require(&suite(Suite::Desig), "overlap_le_sum_of_projections")
}

fn c5() -> Outcome {
    let r = suite(Suite::Chain);
    let a = require(&r, "grid_sqrt2jsd_le_wootters")?;
    let b = require(&r, "grid_wootters_le_phi")?;
    let c = require(&r, "small_angle_peak_within_2pct")?;
    Ok(format!("{a}; {b}; {c}"))
}

fn c6() -> Outcome {
    const STEP: f64 = 1e-9;
    let mut hp = Hp::new();
    let mut worst: f64 = 0.0;
    let mut worst_fit: f64 = 0.0;
    for p in [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9] {
        let oj = hp.taylor_coefficients(|hp, dp| hp.binary_jsd(p, dp), STEP);
        let ow = hp.taylor_coefficients(|hp, dp| hp.binary_half_wootters_sq(p, dp), STEP);
        let j = jsd_series_coeffs(p).map_err(|e| e.to_string())?;
        let w = wootters_sq_half_series_coeffs(p).map_err(|e| e.to_string())?;
        for (closed, oracle) in [(j.as_array(), oj), (w.as_array(), ow)] {
            for k in 0..3 {
                // c3 vanishes at ½; measure it against a unit floor there
                let floor = if k == 1 { 1.0 } else { 0.0 };
                worst = worst.max(rel_err(closed[k], oracle[k], floor));
            }
        }
        ensure(
            (j.c2 - w.c2).abs() <= 1e-14 * j.c2.abs() && (j.c3 - w.c3).abs() <= 1e-14 * j.c3.abs().max(1e-300),
            format!("c2/c3 differ at p = {p}"),
        )?;
        let top = (0.9 * p.min(1.0 - p) / 2.0).min(0.1);
        let dps = geometric_sequence(top, 1e-4, 12).map_err(|e| e.to_string())?;
        let fit = verify_expansion_order(
            |dp| Ok(binary_shift_jsd(p, dp)? - binary_shift_half_wootters_sq(p, dp)?),
            |_| Ok(0.0),
            p,
            &dps,
        )
        .map_err(|e| e.to_string())?;
        ensure((fit.estimated_order - 4.0).abs() <= 0.2, format!("gap order {} at p = {p}", fit.estimated_order))?;
        worst_fit = worst_fit.max((fit.estimated_order - 4.0).abs());
    }
    ensure(worst <= 1e-8, format!("worst coefficient relative error {worst:e}"))?;
    Ok(format!("worst coefficient rel. error {worst:.2e}; worst |order - 4| {worst_fit:.3}"))
}

fn c7() -> Outcome {
    let cases: [(&[f64], &[f64]); 5] = [
        (&[0.5, 0.5], &[1.0, -1.0]),
        (&[0.2, 0.8], &[1.0, -1.0]),
        (&[0.2, 0.3, 0.5], &[1.0, 0.5, -1.5]),
        (&[0.1, 0.2, 0.3, 0.4], &[-0.5, 1.0, 0.25, -0.75]),
        (&[0.3, 0.3, 0.2, 0.1, 0.1], &[0.5, -0.5, 1.0, -0.25, -0.75]),
    ];
    let mut worst: f64 = 0.0;
    for (p, d) in cases {
        // unit max-norm direction, so the magnitude is the largest |dp_i|
        let scale = d.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let d: Vec<f64> = d.iter().map(|x| x / scale).collect();
        let p = pv(p);
        for metric in [InfinitesimalMetric::Jsd, InfinitesimalMetric::FubiniStudySq] {
            let est = infinitesimal_ratio_check(metric, &p, &d, &[1e-4]).map_err(|e| e.to_string())?;
            let dev = (est.at_smallest - metric.expected_limit()).abs();
            ensure(dev <= 1e-4, format!("{metric:?} at {:?}: ratio {}", p.as_slice(), est.at_smallest))?;
            worst = worst.max(dev);
        }
    }
    Ok(format!("worst |ratio - limit| = {worst:.2e} (limits 1/8, 1/4)"))
}

fn c8() -> Outcome {
    let r = suite(Suite::Fubini);
    let a = require(&r, "angle_is_twice_arccos_overlap")?;
    let b = require(&r, "scaling_invariance")?;
    Ok(format!("{a}; {b}"))
}

fn c9() -> Outcome {
    let t = criteria_agreement_profile(&pv(&[0.5, 0.5]), &[1.0, -1.0], &[1e-4]).map_err(|e| e.to_string())?;
    let ratio = t.column("ratio").unwrap()[0];
    ensure((ratio - 1.0).abs() <= 0.01, format!("ratio {ratio}"))?;
    let (p, q) = (pv(&[0.5, 0.5]), pv(&[0.6, 0.4]));
    let m = wootters_criterion(&p, &q, 1).map_err(|e| e.to_string())?.min_trials;
    ensure(m == MinTrials::Finite(101), format!("min_trials {m}"))?;
    let scanned = (1..=1000u64).find(|&l| wootters_criterion(&p, &q, l).unwrap().distinguishable);
    ensure(scanned == Some(101), format!("scan gives {scanned:?}"))?;
    let j = jsd_criterion(&p, &q, 1).map_err(|e| e.to_string())?.min_trials;
    Ok(format!("ratio at 1e-4 = {ratio:.6}; wootters min_trials = {m} (scan 101); jsd min_trials = {j}"))
}

fn binary_entropy(x: f64) -> f64 {
    let t = |v: f64| if v > 0.0 { -v * v.ln() } else { 0.0 };
    t(x) + t(1.0 - x)
}

fn c10() -> Outcome {
    let mut worst: f64 = 0.0;
    for c in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let a = DensityMatrix::from_pure_state(&PureState::at_angle(0.0));
        let b = DensityMatrix::from_pure_state(&PureState::at_angle(f64::acos(c)));
        let v = density::quantum_jsd(&a, &b).map_err(|e| e.to_string())?;
        let dev = (v - binary_entropy((1.0 + c) / 2.0)).abs();
        ensure(dev <= 1e-10, format!("overlap {c}: {v}"))?;
        worst = worst.max(dev);
    }
    let (p, q) = (pv(&[0.2, 0.3, 0.5]), pv(&[0.6, 0.1, 0.3]));
    let diag = density::quantum_jsd(&DensityMatrix::diagonal(&p), &DensityMatrix::diagonal(&q)).map_err(|e| e.to_string())?;
    let classical = simplex::jsd(&p, &q).map_err(|e| e.to_string())?;
    ensure((diag - classical).abs() <= 1e-12, format!("diagonal {diag} vs {classical}"))?;
    let (p, q) = (pv(&[0.7, 0.3, 0.0]), pv(&[0.0, 0.4, 0.6]));
    let kl = simplex::kl_divergence(&p, &q).map_err(|e| e.to_string())?;
    let qj = density::quantum_jsd(&DensityMatrix::diagonal(&p), &DensityMatrix::diagonal(&q)).map_err(|e| e.to_string())?;
    ensure(kl.is_infinite() && qj.is_finite(), format!("kl {kl:?}, qjsd {qj}"))?;
    Ok(format!(
        "worst projector-pair deviation {worst:.1e}; diagonal reduction {:.1e}; disjoint support qjsd {qj:.6} with KL infinite",
        (diag - classical).abs()
    ))
}

fn c11() -> Outcome {
    let err = |e: qdist_core::Error| e.to_string();
    let g1 = figures::default_fig1_grid();
    let a = figures::fig1(0.5, &g1, BOUND_TOLERANCE).map_err(err)?;
    let b = figures::fig1(0.5, &g1, BOUND_TOLERANCE).map_err(err)?;
    ensure(a.to_csv() == b.to_csv(), "fig1 not byte-identical")?;
    let th = figures::default_fig2_theta();
    let f2 = figures::fig2(&DEFAULT_FIG2_PHIS, &th, BOUND_TOLERANCE).map_err(err)?.to_csv();
    ensure(f2 == figures::fig2(&DEFAULT_FIG2_PHIS, &th, BOUND_TOLERANCE).map_err(err)?.to_csv(), "fig2 not byte-identical")?;
    let (t3, p3) = (figures::default_fig3_theta(), figures::default_fig3_phi());
    let f3 = figures::fig3(&t3, &p3, BOUND_TOLERANCE).map_err(err)?.to_csv();
    ensure(f3 == figures::fig3(&t3, &p3, BOUND_TOLERANCE).map_err(err)?.to_csv(), "fig3 not byte-identical")?;
    let mut worst: f64 = 0.0;
    for row in a.rows() {
        if (row[0] - 0.5).abs() <= 0.1 + 1e-12 {
            worst = worst.max((row[1] - row[2]).abs());
        }
    }
    ensure(worst <= 2e-3, format!("max |jsd - W²/2| near ½ = {worst}"))?;
    Ok(format!("fig1/fig2/fig3 byte-identical across runs, bounds hold; max |jsd - W²/2| on |b-0.5| ≤ 0.1 = {worst:.2e}"))
}

fn c12() -> Outcome {
    let r = monte_carlo_discrimination(&pv(&[0.5, 0.5]), &pv(&[0.6, 0.4]), 101, 10_000, 7).map_err(|e| e.to_string())?;
    let exact = common::binary_ml_success(0.5, 0.6, 101);
    ensure(r.success_rate > 0.84, format!("success rate {}", r.success_rate))?;
    Ok(format!(
        "seed {} success rate {:.4} ± {:.4} (exact ML {:.5})",
        r.seed,
        r.success_rate,
        r.standard_error(),
        exact
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "jsd maximum", INSTANT, c1),
        (2, "metric property", Duration::from_secs(10), c2),
        (3, "negative-definite kernel", Duration::from_secs(10), c3),
        (4, "overlap inequality", Duration::from_secs(10), c4),
        (5, "inequality chain", Duration::from_secs(5), c5),
        (6, "expansion coefficients", Duration::from_secs(5), c6),
        (7, "infinitesimal ratios", INSTANT, c7),
        (8, "fubini-study identity", Duration::from_secs(5), c8),
        (9, "criteria equivalence", INSTANT, c9),
        (10, "quantum jsd", INSTANT, c10),
        (11, "figure reproduction", Duration::from_secs(5), c11),
        (12, "monte-carlo sanity", Duration::from_secs(10), c12),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, name, budget, f) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > budget => Err(format!("runtime {:.2?} over budget {budget:?}", elapsed)),
            o => o,
        };
        let (verdict, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {n:>2}: {verdict} {name} [{:.2?}] {detail}", elapsed);
    }
    println!("acceptance: {} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
