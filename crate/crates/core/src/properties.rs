//! Randomized invariant suites with machine-readable reports.
//!
//! Every check draws its samples in fixed-size chunks; chunk `k` of check `c`
//! uses ChaCha8 stream `(c << 32) | k` of the run seed, so a report depends
//! only on `(suite, samples, seed)`.

use std::f64::consts::{FRAC_PI_2, LN_2, TAU};
use std::fmt::Write as _;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::density::{self, DensityMatrix};
use crate::distinguish::{self, MinTrials};
use crate::error::{Error, Result};
use crate::figures;
use crate::hilbert::{self, MeasurementBasis, PureState, SearchBudget};
use crate::simplex::{self, Divergence, DistanceKind, ProbVec};
use crate::sweep::{format_value, Grid};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Metric,
    Kernel,
    Chain,
    Desig,
    Fubini,
    Simplex,
    Density,
    Criteria,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Metric,
        Suite::Kernel,
        Suite::Chain,
        Suite::Desig,
        Suite::Fubini,
        Suite::Simplex,
        Suite::Density,
        Suite::Criteria,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Metric => "metric",
            Suite::Kernel => "kernel",
            Suite::Chain => "chain",
            Suite::Desig => "desig",
            Suite::Fubini => "fubini",
            Suite::Simplex => "simplex",
            Suite::Density => "density",
            Suite::Criteria => "criteria",
        }
    }

    /// Default number of random samples per check.
    pub fn default_samples(self) -> u64 {
        match self {
            Suite::Metric | Suite::Simplex => 100_000,
            _ => 10_000,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    /// Samples per check; `None` uses [`Suite::default_samples`].
    pub samples: Option<u64>,
    pub seed: u64,
    /// Replaces the built-in slack of every check when set.
    pub tolerance: Option<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            samples: None,
            seed: 7,
            tolerance: None,
        }
    }
}

/// How a check turns its worst margin into a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    /// Passes when the largest margin is at most the tolerance.
    Bound,
    /// Passes when some sample has margin above the tolerance (a counterexample exists).
    Counterexample,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub samples: u64,
    /// Largest `lhs - rhs` seen; for counterexample searches, the largest violation.
    pub worst_margin: f64,
    pub tolerance: f64,
    pub expectation: Expectation,
    pub passed: bool,
    /// The inputs at the worst margin, `;`-separated.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// CSV with columns `suite,check,samples,worst_margin,tolerance,result,witness`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,check,samples,worst_margin,tolerance,result,witness\n");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                c.suite,
                c.name,
                c.samples,
                format_value(c.worst_margin),
                format_value(c.tolerance),
                if c.passed { "pass" } else { "fail" },
                c.witness.as_deref().unwrap_or("")
            );
        }
        out
    }
}

const CHUNK: u64 = 2048;

fn chunk_rng(seed: u64, check: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((check << 32) | chunk);
    rng
}

/// Largest margin over `samples` draws, with the witness of the first sample attaining it.
fn worst_over<T, F>(samples: u64, seed: u64, check: u64, draw: F) -> Result<(f64, Option<T>)>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> Result<(f64, T)> + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    let partial: Vec<Result<(f64, Option<T>)>> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = chunk_rng(seed, check, k);
            let size = CHUNK.min(samples - k * CHUNK);
            let mut best = (f64::NEG_INFINITY, None);
            for _ in 0..size {
                let (m, w) = draw(&mut rng)?;
                if m > best.0 || (best.1.is_none() && m.is_nan()) {
                    best = (m, Some(w));
                }
            }
            Ok(best)
        })
        .collect();
    let mut best = (f64::NEG_INFINITY, None);
    for r in partial {
        let (m, w) = r?;
        if m > best.0 || best.1.is_none() {
            best = (m, w);
        }
    }
    Ok(best)
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format_value(*x)).collect();
    format!("({})", parts.join(" "))
}

fn fmt_triple(t: &[ProbVec; 3]) -> String {
    format!(
        "p={};q={};r={}",
        fmt_vec(t[0].as_slice()),
        fmt_vec(t[1].as_slice()),
        fmt_vec(t[2].as_slice())
    )
}

fn fmt_complex(v: &[Complex64]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|z| {
            let sign = if z.im.is_sign_negative() { "" } else { "+" };
            format!("{}{sign}{}i", format_value(z.re), format_value(z.im))
        })
        .collect();
    format!("({})", parts.join(" "))
}

struct Builder {
    suite: Suite,
    config: SuiteConfig,
    next_check: u64,
    report: Report,
}

impl Builder {
    fn new(suite: Suite, config: SuiteConfig) -> Self {
        Self {
            suite,
            config,
            next_check: 0,
            report: Report::default(),
        }
    }

    fn samples(&self) -> u64 {
        self.config.samples.unwrap_or_else(|| self.suite.default_samples())
    }

    fn push(&mut self, name: &str, samples: u64, worst: f64, tolerance: f64, expectation: Expectation, witness: Option<String>) {
        let tolerance = self.config.tolerance.unwrap_or(tolerance);
        let passed = match expectation {
            Expectation::Bound => worst <= tolerance,
            Expectation::Counterexample => worst > tolerance,
        };
        self.report.checks.push(CheckResult {
            suite: self.suite.name(),
            name: name.to_string(),
            samples,
            worst_margin: worst,
            tolerance,
            expectation,
            passed,
            witness,
        });
    }

    /// Runs a sampled check with `samples` draws.
    fn sampled<T, F>(&mut self, name: &str, samples: u64, tolerance: f64, expectation: Expectation, draw: F, show: impl Fn(&T) -> String) -> Result<()>
    where
        T: Send,
        F: Fn(&mut ChaCha8Rng) -> Result<(f64, T)> + Sync,
    {
        let check = self.next_check;
        self.next_check += 1;
        let (worst, witness) = worst_over(samples, self.config.seed, check, draw)?;
        self.push(name, samples, worst, tolerance, expectation, witness.as_ref().map(show));
        Ok(())
    }
}

fn dim_in<R: Rng + ?Sized>(rng: &mut R, lo: usize, hi: usize) -> usize {
    rng.random_range(lo..=hi)
}

fn triple(rng: &mut ChaCha8Rng, n: usize) -> Result<[ProbVec; 3]> {
    Ok([
        simplex::random_simplex(n, rng)?,
        simplex::random_simplex(n, rng)?,
        simplex::random_simplex(n, rng)?,
    ])
}

/// `d(p, r) - d(p, q) - d(q, r)`, with `inf - inf` treated as no violation.
fn triangle_excess(d: impl Fn(&ProbVec, &ProbVec) -> Result<f64>, t: &[ProbVec; 3]) -> Result<f64> {
    let pr = d(&t[0], &t[2])?;
    let pq = d(&t[0], &t[1])?;
    let qr = d(&t[1], &t[2])?;
    let excess = pr - pq - qr;
    Ok(if excess.is_nan() { f64::NEG_INFINITY } else { excess })
}

fn sqrt_jsd(p: &ProbVec, q: &ProbVec) -> Result<f64> {
    Ok(simplex::jsd(p, q)?.sqrt())
}

fn wootters(p: &ProbVec, q: &ProbVec) -> Result<f64> {
    simplex::wootters_classical(p, q)
}

fn bhattacharyya(p: &ProbVec, q: &ProbVec) -> Result<f64> {
    Ok(simplex::bhattacharyya_distance(p, q)?.value())
}

fn metric_suite(b: &mut Builder) -> Result<()> {
    let samples = b.samples();
    for n in 2..=6 {
        b.sampled(
            &format!("sqrt_jsd_triangle_n{n}"),
            samples,
            1e-12,
            Expectation::Bound,
            |rng| {
                let t = triple(rng, n)?;
                Ok((triangle_excess(sqrt_jsd, &t)?, t))
            },
            fmt_triple,
        )?;
    }
    let search = |d: fn(&ProbVec, &ProbVec) -> Result<f64>| {
        move |rng: &mut ChaCha8Rng| {
            let n = dim_in(rng, 2, 6);
            let t = triple(rng, n)?;
            Ok((triangle_excess(d, &t)?, t))
        }
    };
    b.sampled("wootters_triangle_holds", samples, 1e-12, Expectation::Bound, search(wootters), fmt_triple)?;
    b.sampled(
        "wootters_triangle_violation_found",
        samples,
        1e-12,
        Expectation::Counterexample,
        search(wootters),
        fmt_triple,
    )?;
    b.sampled(
        "bhattacharyya_triangle_violation_found",
        samples,
        1e-12,
        Expectation::Counterexample,
        search(bhattacharyya),
        fmt_triple,
    )?;
    Ok(())
}

fn kernel_suite(b: &mut Builder) -> Result<()> {
    let samples = b.samples();
    b.sampled(
        "jsd_negative_definite",
        samples,
        1e-10,
        Expectation::Bound,
        |rng| {
            let m = dim_in(rng, 2, 8);
            let n = dim_in(rng, 2, 6);
            let points: Vec<ProbVec> = (0..m)
                .map(|_| simplex::random_simplex(n, rng))
                .collect::<Result<_>>()?;
            let mut zeta: Vec<f64> = (0..m).map(|_| rng.sample(StandardNormal)).collect();
            let mean = zeta.iter().sum::<f64>() / m as f64;
            zeta.iter_mut().for_each(|z| *z -= mean);
            let mut total = 0.0;
            for i in 0..m {
                for j in 0..m {
                    if i != j {
                        total += zeta[i] * zeta[j] * simplex::jsd(&points[i], &points[j])?;
                    }
                }
            }
            Ok((total, (points, zeta)))
        },
        |(points, zeta): &(Vec<ProbVec>, Vec<f64>)| {
            let pts: Vec<String> = points.iter().map(|p| fmt_vec(p.as_slice())).collect();
            format!("points={};zeta={}", pts.join(" "), fmt_vec(zeta))
        },
    )
}

/// Upper bound on the rotated-family chain margins over a θ × φ grid.
pub fn chain_grid_margins(theta: &Grid, phi: &Grid) -> Result<(f64, f64)> {
    let mut lower = f64::NEG_INFINITY;
    let mut upper = f64::NEG_INFINITY;
    for t in theta.points() {
        for f in phi.points() {
            let f = f.min(FRAC_PI_2);
            let js = (2.0 * hilbert::rotated_jsd_2d(f, t)?).sqrt();
            let w = figures::rotated_wootters_2d(f, t)?;
            lower = lower.max(js - w);
            upper = upper.max(w - f);
        }
    }
    Ok((lower, upper))
}

/// `max_θ √(2·jsd)` over the rotated family for states at angle φ.
pub fn small_angle_peak(phi: f64) -> Result<f64> {
    let best = hilbert::maximize_induced_distance(
        DistanceKind::Jsd,
        &PureState::at_angle(0.0),
        &PureState::at_angle(phi),
        SearchBudget::rotated(),
    )?;
    Ok((2.0 * best.value.value()).sqrt())
}

fn chain_suite(b: &mut Builder) -> Result<()> {
    let theta = Grid::linspace(0.0, TAU, 128)?;
    let phi = Grid::linspace(0.0, FRAC_PI_2, 128)?;
    let (lower, upper) = chain_grid_margins(&theta, &phi)?;
    b.push("grid_sqrt2jsd_le_wootters", 128 * 128, lower, 1e-10, Expectation::Bound, None);
    b.push("grid_wootters_le_phi", 128 * 128, upper, 1e-10, Expectation::Bound, None);

    let peak = small_angle_peak(0.05)?;
    b.push(
        "small_angle_peak_within_2pct",
        1,
        (peak - 0.05).abs() / 0.05,
        0.02,
        Expectation::Bound,
        Some(format!("phi=0.05;peak={}", format_value(peak))),
    );

    let samples = b.samples();
    let draw = |rng: &mut ChaCha8Rng| -> Result<(f64, (PureState, PureState, MeasurementBasis))> {
        let s1 = hilbert::random_pure_state(2, rng)?;
        let s2 = hilbert::random_pure_state(2, rng)?;
        let basis = MeasurementBasis::random(2, rng)?;
        let js = hilbert::induced_distance(DistanceKind::Jsd, &basis, &s1, &s2)?.value();
        let w = hilbert::induced_distance(DistanceKind::Wootters, &basis, &s1, &s2)?.value();
        let max = hilbert::wootters_hilbert_max(&s1, &s2)?;
        Ok((((2.0 * js).sqrt() - w).max(w - max), (s1, s2, basis)))
    };
    b.sampled("random_bases_chain", samples, 1e-10, Expectation::Bound, draw, |(s1, s2, _)| {
        format!("psi1={};psi2={}", fmt_complex(s1.amplitudes()), fmt_complex(s2.amplitudes()))
    })
}

fn desig_suite(b: &mut Builder) -> Result<()> {
    let samples = b.samples();
    let draw = |rng: &mut ChaCha8Rng| -> Result<(PureState, PureState, MeasurementBasis)> {
        let n = dim_in(rng, 2, 6);
        Ok((
            hilbert::random_pure_state(n, rng)?,
            hilbert::random_pure_state(n, rng)?,
            MeasurementBasis::random(n, rng)?,
        ))
    };
    let show = |(s1, s2, _): &(PureState, PureState, MeasurementBasis)| {
        format!("psi1={};psi2={}", fmt_complex(s1.amplitudes()), fmt_complex(s2.amplitudes()))
    };
    b.sampled(
        "overlap_le_sum_of_projections",
        samples,
        1e-12,
        Expectation::Bound,
        |rng| {
            let (s1, s2, basis) = draw(rng)?;
            let mut sum = 0.0;
            for phi in basis.vectors() {
                sum += phi.inner(&s1)?.norm() * phi.inner(&s2)?.norm();
            }
            Ok((hilbert::overlap(&s1, &s2)? - sum, (s1, s2, basis)))
        },
        show,
    )?;
    b.sampled(
        "induced_wootters_le_max",
        samples,
        1e-12,
        Expectation::Bound,
        |rng| {
            let (s1, s2, basis) = draw(rng)?;
            let w = hilbert::induced_distance(DistanceKind::Wootters, &basis, &s1, &s2)?.value();
            Ok((w - hilbert::wootters_hilbert_max(&s1, &s2)?, (s1, s2, basis)))
        },
        show,
    )?;
    b.sampled(
        "probabilities_sum_to_one",
        samples,
        1e-12,
        Expectation::Bound,
        |rng| {
            let (s1, s2, basis) = draw(rng)?;
            let p = hilbert::measurement_probabilities(&s1, &basis)?;
            Ok(((p.as_slice().iter().sum::<f64>() - 1.0).abs(), (s1, s2, basis)))
        },
        show,
    )
}

fn random_lambda<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(10f64.powf(rng.random_range(-1.0..1.0)), rng.random_range(0.0..TAU))
}

fn fubini_suite(b: &mut Builder) -> Result<()> {
    let samples = b.samples();
    let pair = |rng: &mut ChaCha8Rng| -> Result<(PureState, PureState)> {
        let n = dim_in(rng, 2, 6);
        Ok((hilbert::random_pure_state(n, rng)?, hilbert::random_pure_state(n, rng)?))
    };
    let show = |(s1, s2): &(PureState, PureState)| {
        format!("psi1={};psi2={}", fmt_complex(s1.amplitudes()), fmt_complex(s2.amplitudes()))
    };
    b.sampled(
        "angle_is_twice_arccos_overlap",
        samples,
        1e-12,
        Expectation::Bound,
        |rng| {
            let (s1, s2) = pair(rng)?;
            let fs = hilbert::fubini_study_angle(s1.amplitudes(), s2.amplitudes())?;
            let c = hilbert::overlap(&s1, &s2)?;
            Ok(((fs - 2.0 * c.acos()).abs(), (s1, s2)))
        },
        show,
    )?;
    b.sampled(
        "angle_is_twice_wootters_max",
        samples,
        1e-12,
        Expectation::Bound,
        |rng| {
            let (s1, s2) = pair(rng)?;
            let fs = hilbert::fubini_study_angle(s1.amplitudes(), s2.amplitudes())?;
            Ok(((fs - 2.0 * hilbert::wootters_hilbert_max(&s1, &s2)?).abs(), (s1, s2)))
        },
        show,
    )?;
    b.sampled(
        "scaling_invariance",
        samples,
        1e-10,
        Expectation::Bound,
        |rng| {
            let (s1, s2) = pair(rng)?;
            let base = hilbert::fubini_study_angle(s1.amplitudes(), s2.amplitudes())?;
            let a = hilbert::fubini_study_angle(&s1.scaled(random_lambda(rng)), s2.amplitudes())?;
            let c = hilbert::fubini_study_angle(s1.amplitudes(), &s2.scaled(random_lambda(rng)))?;
            Ok(((a - base).abs().max((c - base).abs()), (s1, s2)))
        },
        show,
    )
}

fn fmt_pair(t: &(ProbVec, ProbVec)) -> String {
    format!("p={};q={}", fmt_vec(t.0.as_slice()), fmt_vec(t.1.as_slice()))
}

fn random_pair(rng: &mut ChaCha8Rng) -> Result<(ProbVec, ProbVec)> {
    let n = dim_in(rng, 2, 6);
    Ok((simplex::random_simplex(n, rng)?, simplex::random_simplex(n, rng)?))
}

fn simplex_suite(b: &mut Builder) -> Result<()> {
    let samples = b.samples();
    for kind in DistanceKind::ALL.into_iter().filter(|k| k.is_symmetric()) {
        b.sampled(
            &format!("{}_symmetric", kind.name()),
            samples,
            1e-12,
            Expectation::Bound,
            move |rng| {
                let (p, q) = random_pair(rng)?;
                let a = simplex::distance(kind, &p, &q)?.value();
                let c = simplex::distance(kind, &q, &p)?.value();
                Ok(((a - c).abs(), (p, q)))
            },
            fmt_pair,
        )?;
    }
    b.sampled(
        "ranges",
        samples,
        1e-12,
        Expectation::Bound,
        |rng| {
            let (p, q) = random_pair(rng)?;
            let js = simplex::jsd(&p, &q)?;
            let w = simplex::wootters_classical(&p, &q)?;
            let h = simplex::hellinger_sq(&p, &q)?;
            let m = [-js, js - LN_2, -w, w - FRAC_PI_2, -h, h - 1.0]
                .into_iter()
                .fold(f64::NEG_INFINITY, f64::max);
            Ok((m, (p, q)))
        },
        fmt_pair,
    )?;
    b.sampled(
        "hellinger_is_one_minus_coefficient",
        samples,
        1e-12,
        Expectation::Bound,
        |rng| {
            let (p, q) = random_pair(rng)?;
            let h = simplex::hellinger_sq(&p, &q)?;
            let bc = simplex::bhattacharyya_coefficient(&p, &q)?;
            Ok(((h - (1.0 - bc)).abs(), (p, q)))
        },
        fmt_pair,
    )?;
    b.sampled(
        "wootters_is_arccos_coefficient",
        samples,
        1e-12,
        Expectation::Bound,
        |rng| {
            let (p, q) = random_pair(rng)?;
            let w = simplex::wootters_classical(&p, &q)?;
            let bc = simplex::bhattacharyya_coefficient(&p, &q)?;
            Ok(((w - bc.clamp(-1.0, 1.0).acos()).abs(), (p, q)))
        },
        fmt_pair,
    )?;
    b.sampled(
        "zero_at_identity",
        samples,
        1e-12,
        Expectation::Bound,
        |rng| {
            let (p, q) = random_pair(rng)?;
            let mut worst = 0.0f64;
            for kind in DistanceKind::ALL {
                worst = worst.max(simplex::distance(kind, &p, &p)?.value());
            }
            Ok((worst, (p, q)))
        },
        fmt_pair,
    )?;
    b.sampled(
        "positive_when_distinct",
        samples,
        0.0,
        Expectation::Bound,
        |rng| {
            let (p, q) = random_pair(rng)?;
            let l1: f64 = p.as_slice().iter().zip(q.as_slice()).map(|(a, b)| (a - b).abs()).sum();
            if l1 < 1e-4 {
                return Ok((f64::NEG_INFINITY, (p, q)));
            }
            let mut margin = f64::NEG_INFINITY;
            for kind in DistanceKind::ALL.into_iter().filter(|k| *k != DistanceKind::Chi2Half) {
                margin = margin.max(1e-12 - simplex::distance(kind, &p, &q)?.value());
            }
            Ok((margin, (p, q)))
        },
        fmt_pair,
    )
}

/// Haar-random unitary whose columns are a random orthonormal basis.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<DMatrix<Complex64>> {
    let basis = MeasurementBasis::random(n, rng)?;
    Ok(DMatrix::from_fn(n, n, |i, j| basis.vectors()[j].amplitudes()[i]))
}

/// Random density matrix `Σ w_k |ψ_k><ψ_k|` with flat-Dirichlet weights.
pub fn random_density<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<DensityMatrix> {
    let weights = simplex::random_simplex(n, rng)?;
    let mut m = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for &w in weights.as_slice() {
        let psi = hilbert::random_pure_state(n, rng)?;
        let a = psi.amplitudes();
        m += DMatrix::from_fn(n, n, |i, j| a[i] * a[j].conj() * w);
    }
    // exact Hermitian part; roundoff otherwise leaves ~1e-17 asymmetry
    let h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let tr = h.trace().re;
    DensityMatrix::new(h / Complex64::new(tr, 0.0))
}

fn density_suite(b: &mut Builder) -> Result<()> {
    let samples = b.samples();
    let show = |(r1, r2): &(DensityMatrix, DensityMatrix)| {
        format!("eig1={};eig2={}", fmt_vec(r1.eigenvalues()), fmt_vec(r2.eigenvalues()))
    };
    b.sampled(
        "entropy_unitary_invariance",
        samples,
        1e-10,
        Expectation::Bound,
        |rng| {
            let n = dim_in(rng, 2, 3);
            let rho = random_density(n, rng)?;
            let u = random_unitary(n, rng)?;
            let rotated = rho.conjugated(&u)?;
            let d = (density::von_neumann_entropy(&rho) - density::von_neumann_entropy(&rotated)).abs();
            Ok((d, (rho, rotated)))
        },
        show,
    )?;
    b.sampled(
        "qjsd_symmetric_nonnegative",
        samples,
        1e-12,
        Expectation::Bound,
        |rng| {
            let n = dim_in(rng, 2, 4);
            let r1 = random_density(n, rng)?;
            let r2 = random_density(n, rng)?;
            let a = density::quantum_jsd(&r1, &r2)?;
            let c = density::quantum_jsd(&r2, &r1)?;
            Ok(((a - c).abs().max(-a), (r1, r2)))
        },
        show,
    )?;
    b.sampled(
        "diagonal_reduces_to_classical",
        samples,
        1e-12,
        Expectation::Bound,
        |rng| {
            let (p, q) = random_pair(rng)?;
            let r1 = DensityMatrix::diagonal(&p);
            let r2 = DensityMatrix::diagonal(&q);
            let d = (density::quantum_jsd(&r1, &r2)? - simplex::jsd(&p, &q)?).abs();
            Ok((d, (r1, r2)))
        },
        show,
    )
}

fn trials_pairs() -> Result<Vec<(ProbVec, ProbVec)>> {
    let mut out = Vec::new();
    let grid = [0.05, 0.2, 0.35, 0.5, 0.65, 0.8, 0.95];
    for &a in &grid {
        for &c in &grid {
            if a != c {
                out.push((ProbVec::binary(a)?, ProbVec::binary(c)?));
            }
        }
    }
    Ok(out)
}

fn criteria_suite(b: &mut Builder) -> Result<()> {
    let pairs = trials_pairs()?;
    let mut minimality = 0u64;
    let mut symmetric = true;
    for (p, q) in &pairs {
        for crit in [distinguish::wootters_criterion, distinguish::jsd_criterion] {
            if let MinTrials::Finite(m) = crit(p, q, 1)?.min_trials {
                let before = m > 1 && crit(p, q, m - 1)?.distinguishable;
                if before || !crit(p, q, m)?.distinguishable {
                    minimality += 1;
                }
            }
        }
        if distinguish::jsd_criterion(p, q, 1)?.min_trials != distinguish::jsd_criterion(q, p, 1)?.min_trials {
            symmetric = false;
        }
    }
    let n = pairs.len() as u64;
    b.push("min_trials_minimal", n, minimality as f64, 0.0, Expectation::Bound, None);
    b.push(
        "jsd_min_trials_symmetric",
        n,
        if symmetric { 0.0 } else { 1.0 },
        0.0,
        Expectation::Bound,
        None,
    );
    let asym = pairs.iter().find_map(|(p, q)| {
        let ab = distinguish::wootters_criterion(p, q, 1).ok()?.min_trials;
        let ba = distinguish::wootters_criterion(q, p, 1).ok()?.min_trials;
        (ab != ba).then(|| format!("p1={};p2={};{ab} vs {ba}", fmt_vec(p.as_slice()), fmt_vec(q.as_slice())))
    });
    b.push(
        "wootters_min_trials_order_sensitive",
        n,
        if asym.is_some() { 1.0 } else { 0.0 },
        0.0,
        Expectation::Counterexample,
        asym,
    );
    Ok(())
}

/// Runs one suite.
pub fn run_suite(suite: Suite, config: SuiteConfig) -> Result<Report> {
    if config.samples == Some(0) {
        return Err(Error::OutOfDomain("sample count must be positive".into()));
    }
    let mut b = Builder::new(suite, config);
    match suite {
        Suite::Metric => metric_suite(&mut b)?,
        Suite::Kernel => kernel_suite(&mut b)?,
        Suite::Chain => chain_suite(&mut b)?,
        Suite::Desig => desig_suite(&mut b)?,
        Suite::Fubini => fubini_suite(&mut b)?,
        Suite::Simplex => simplex_suite(&mut b)?,
        Suite::Density => density_suite(&mut b)?,
        Suite::Criteria => criteria_suite(&mut b)?,
    }
    Ok(b.report)
}

/// Searches for a triple violating the triangle inequality for `kind`.
pub fn find_triangle_violation(kind: DistanceKind, attempts: u64, seed: u64) -> Result<Option<([ProbVec; 3], f64)>> {
    let d = move |p: &ProbVec, q: &ProbVec| simplex::distance(kind, p, q).map(Divergence::value);
    let (worst, witness) = worst_over(attempts, seed, 0, |rng| {
        let n = dim_in(rng, 2, 6);
        let t = triple(rng, n)?;
        Ok((triangle_excess(d, &t)?, t))
    })?;
    Ok(witness.filter(|_| worst > 1e-12).map(|t| (t, worst)))
}
