//! Trial-count criteria for telling two distributions apart.
//!
//! Two distributions are declared distinguishable after L trials when
//!
//! * χ² form: `(√L / 2) · √(Σ δp_i² / p_i) > 1`, with `p` the first argument;
//! * JSD form: `√jsd(p, q) > 1 / √(2L)`.
//!
//! For nearby distributions jsd ≈ χ²/8, so the two agree asymptotically.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::simplex::{self, ProbVec};
use crate::sweep::SweepTable;

/// Smallest trial count at which a criterion fires, or the infinite flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MinTrials {
    Finite(u64),
    Infinite,
}

impl MinTrials {
    pub fn as_f64(self) -> f64 {
        match self {
            MinTrials::Finite(n) => n as f64,
            MinTrials::Infinite => f64::INFINITY,
        }
    }
}

impl std::fmt::Display for MinTrials {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MinTrials::Finite(n) => write!(f, "{n}"),
            MinTrials::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriterionVerdict {
    /// `statistic > threshold`.
    pub distinguishable: bool,
    pub statistic: f64,
    pub threshold: f64,
    pub trials: u64,
    pub min_trials: MinTrials,
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::OutOfDomain("trial count must be positive".into()));
    }
    Ok(())
}

/// Inverts a monotone trial predicate starting from a closed-form guess, then
/// nudges the guess so that `fires(m - 1)` is false and `fires(m)` is true.
fn invert(guess: f64, fires: impl Fn(u64) -> bool) -> Result<MinTrials> {
    if !guess.is_finite() {
        return Ok(MinTrials::Infinite);
    }
    if guess >= 9.0e18 {
        return Err(Error::OutOfDomain(format!(
            "minimum trial count {guess:e} exceeds the representable range"
        )));
    }
    let mut m = (guess.floor() as u64).saturating_add(1).max(1);
    while m > 1 && fires(m - 1) {
        m -= 1;
    }
    while !fires(m) {
        m += 1;
    }
    Ok(MinTrials::Finite(m))
}

fn chi2_statistic(chi2: f64, trials: u64) -> f64 {
    0.5 * (trials as f64).sqrt() * chi2.sqrt()
}

/// χ²-based criterion; `p1` supplies the denominators.
pub fn wootters_criterion(p1: &ProbVec, p2: &ProbVec, trials: u64) -> Result<CriterionVerdict> {
    check_trials(trials)?;
    let chi2 = simplex::chi_squared(p1, p2)?;
    let statistic = chi2_statistic(chi2, trials);
    let min_trials = if chi2 == 0.0 {
        MinTrials::Infinite
    } else {
        invert(4.0 / chi2, |l| chi2_statistic(chi2, l) > 1.0)?
    };
    Ok(CriterionVerdict {
        distinguishable: statistic > 1.0,
        statistic,
        threshold: 1.0,
        trials,
        min_trials,
    })
}

fn jsd_threshold(trials: u64) -> f64 {
    1.0 / (2.0 * trials as f64).sqrt()
}

/// JSD-based criterion; symmetric and finite for every pair.
pub fn jsd_criterion(p1: &ProbVec, p2: &ProbVec, trials: u64) -> Result<CriterionVerdict> {
    check_trials(trials)?;
    let js = simplex::jsd(p1, p2)?;
    let statistic = js.sqrt();
    let min_trials = if js == 0.0 {
        MinTrials::Infinite
    } else {
        invert(1.0 / (2.0 * js), |l| statistic > jsd_threshold(l))?
    };
    Ok(CriterionVerdict {
        distinguishable: statistic > jsd_threshold(trials),
        statistic,
        threshold: jsd_threshold(trials),
        trials,
        min_trials,
    })
}

/// Minimum trial counts of both criteria along `p1 + s · direction`.
///
/// Columns: `separation, min_trials_wootters, min_trials_jsd, ratio` where
/// `ratio = jsd / wootters`; `inf` marks the infinite flag and `nan` an
/// undefined ratio (both infinite).
pub fn criteria_agreement_profile(
    p1: &ProbVec,
    direction: &[f64],
    separations: &[f64],
) -> Result<SweepTable> {
    if p1.as_slice().iter().any(|&x| x <= 0.0) {
        return Err(Error::OutOfDomain("reference distribution must be strictly interior".into()));
    }
    let mut table = SweepTable::new(["separation", "min_trials_wootters", "min_trials_jsd", "ratio"]);
    for &s in separations {
        let p2 = p1.perturbed(direction, s)?;
        let w = wootters_criterion(p1, &p2, 1)?.min_trials;
        let j = jsd_criterion(p1, &p2, 1)?.min_trials;
        let ratio = match (w, j) {
            (MinTrials::Finite(a), MinTrials::Finite(b)) => b as f64 / a as f64,
            _ => f64::NAN,
        };
        table.push_row(vec![s, w.as_f64(), j.as_f64(), ratio])?;
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloResult {
    pub successes: u64,
    pub experiments: u64,
    pub success_rate: f64,
    pub trials: u64,
    pub seed: u64,
}

impl MonteCarloResult {
    /// Binomial standard error of the success rate.
    pub fn standard_error(&self) -> f64 {
        let r = self.success_rate;
        (r * (1.0 - r) / self.experiments as f64).sqrt()
    }
}

const BATCH: u64 = 1024;

/// Per-outcome log-likelihood ratio ln p1 - ln p2, with ±∞ where one side is 0.
fn log_ratios(p1: &ProbVec, p2: &ProbVec) -> Vec<f64> {
    p1.as_slice()
        .iter()
        .zip(p2.as_slice())
        .map(|(&a, &b)| match (a > 0.0, b > 0.0) {
            (true, true) => a.ln() - b.ln(),
            (true, false) => f64::INFINITY,
            (false, true) => f64::NEG_INFINITY,
            (false, false) => 0.0,
        })
        .collect()
}

/// Simulates `experiments` rounds of: pick p1 or p2 with a fair coin, draw
/// `trials` i.i.d. outcomes from it, and guess the source by maximum
/// likelihood (ties go to p1). Returns the fraction guessed correctly.
///
/// Experiments are split into batches of 1024; batch `b` draws from the
/// ChaCha8 stream `b` of `seed`, so the result does not depend on scheduling.
pub fn monte_carlo_discrimination(
    p1: &ProbVec,
    p2: &ProbVec,
    trials: u64,
    experiments: u64,
    seed: u64,
) -> Result<MonteCarloResult> {
    check_trials(trials)?;
    if experiments == 0 {
        return Err(Error::OutOfDomain("experiment count must be positive".into()));
    }
    if p1.len() != p2.len() {
        return Err(Error::DimensionMismatch {
            left: p1.len(),
            right: p2.len(),
        });
    }
    let sampler1 = WeightedIndex::new(p1.as_slice())
        .map_err(|e| Error::InvalidDistribution(e.to_string()))?;
    let sampler2 = WeightedIndex::new(p2.as_slice())
        .map_err(|e| Error::InvalidDistribution(e.to_string()))?;
    let lr = log_ratios(p1, p2);
    let n = p1.len();

    let batches = experiments.div_ceil(BATCH);
    let successes: u64 = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let size = BATCH.min(experiments - b * BATCH);
            let mut counts = vec![0u64; n];
            let mut hits = 0;
            for _ in 0..size {
                let from_first = rng.random_bool(0.5);
                let sampler = if from_first { &sampler1 } else { &sampler2 };
                counts.iter_mut().for_each(|c| *c = 0);
                for _ in 0..trials {
                    counts[sampler.sample(&mut rng)] += 1;
                }
                let llr: f64 = counts
                    .iter()
                    .zip(&lr)
                    .filter(|(c, _)| **c > 0)
                    .map(|(&c, &r)| c as f64 * r)
                    .sum();
                let guess_first = llr >= 0.0;
                if guess_first == from_first {
                    hits += 1;
                }
            }
            hits
        })
        .sum();

    Ok(MonteCarloResult {
        successes,
        experiments,
        success_rate: successes as f64 / experiments as f64,
        trials,
        seed,
    })
}
