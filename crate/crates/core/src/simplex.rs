//! Discrete probability distributions and the classical distances between them.
//!
//! | Function | Formula | Range |
//! |----------|---------|-------|
//! | [`shannon_entropy`] | H(p) = -Σ p ln p | [0, ln N] |
//! | [`kl_divergence`] | Σ p ln(p/q) | [0, ∞] |
//! | [`jsd`] | H((p+q)/2) - H(p)/2 - H(q)/2 | [0, ln 2] |
//! | [`bhattacharyya_coefficient`] | B = Σ √(p q) | [0, 1] |
//! | [`wootters_classical`] | arccos B | [0, π/2] |
//! | [`hellinger_sq`] | ½ Σ (√p - √q)² = 1 - B | [0, 1] |
//! | [`bhattacharyya_distance`] | -ln B | [0, ∞] |
//! | [`chi2_half_distance`] | ½ √(Σ (p - q)² / p) | [0, ∞) |
//!
//! All logarithms are natural; `0 ln 0 = 0`.
//!
//! The near-coincident regime (p ≈ q) matters for the expansion checks, so the
//! JSD, Hellinger and Wootters routes avoid forming `1 - B` or `H(m) - ...` by
//! subtraction of O(1) quantities.

use std::fmt;

use rand::Rng;
use rand_distr::Exp1;

use crate::error::{Error, Result};
use crate::tol;

/// An element of the probability simplex X_N^+ (N ≥ 2).
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVec(Vec<f64>);

impl ProbVec {
    /// Validates `values` against the simplex within [`tol::SIMPLEX`].
    ///
    /// Entries within tolerance of the box `[0, 1]` are clamped into it; the
    /// vector is never rescaled. Use [`ProbVec::normalized`] to rescale.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidDistribution(format!(
                "need at least 2 outcomes, got {}",
                values.len()
            )));
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::InvalidDistribution(format!("entry {i} is not finite")));
            }
            if !(-tol::SIMPLEX..=1.0 + tol::SIMPLEX).contains(&v) {
                return Err(Error::InvalidDistribution(format!(
                    "entry {i} = {v} outside [0, 1]"
                )));
            }
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > tol::SIMPLEX {
            return Err(Error::InvalidDistribution(format!("entries sum to {sum}, not 1")));
        }
        Ok(Self(values.into_iter().map(|v| v.clamp(0.0, 1.0)).collect()))
    }

    /// Rescales nonnegative weights so they sum to one.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidDistribution(
                "weights must be finite and nonnegative".into(),
            ));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidDistribution("weights sum to zero".into()));
        }
        Self::new(weights.into_iter().map(|w| w / total).collect())
    }

    /// Point mass on outcome `index`.
    pub fn deterministic(n: usize, index: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::InvalidDistribution(format!(
                "index {index} out of range for {n} outcomes"
            )));
        }
        let mut v = vec![0.0; n];
        v[index] = 1.0;
        Self::new(v)
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    /// Two-outcome distribution `(p, 1 - p)`.
    pub fn binary(p: f64) -> Result<Self> {
        Self::new(vec![p, 1.0 - p])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Equal-weight mixture (p + q) / 2.
    pub fn midpoint(&self, other: &Self) -> Result<Self> {
        check_dims(self, other)?;
        Self::new(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| 0.5 * (a + b))
                .collect(),
        )
    }

    /// Returns `self + scale * direction`, failing if the result leaves the simplex.
    pub fn perturbed(&self, direction: &[f64], scale: f64) -> Result<Self> {
        if direction.len() != self.len() {
            return Err(Error::DimensionMismatch {
                left: self.len(),
                right: direction.len(),
            });
        }
        let values: Vec<f64> = self
            .0
            .iter()
            .zip(direction)
            .map(|(p, d)| p + scale * d)
            .collect();
        Self::new(values).map_err(|e| Error::OutsideSimplex(e.to_string()))
    }
}

impl AsRef<[f64]> for ProbVec {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// A distance value that may be the explicit infinite flag.
///
/// KL divergence with a support mismatch and the Bhattacharyya distance of
/// disjoint distributions are infinite; that is a property of the quantity,
/// not a failure, so it is returned as a value.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum Divergence {
    Finite(f64),
    Infinite,
}

impl Divergence {
    /// The numeric value, `f64::INFINITY` for the flag.
    pub fn value(self) -> f64 {
        match self {
            Divergence::Finite(v) => v,
            Divergence::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Divergence::Infinite)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Divergence::Finite(v) => Some(v),
            Divergence::Infinite => None,
        }
    }
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Divergence::Finite(v) => write!(f, "{v}"),
            Divergence::Infinite => f.write_str("inf"),
        }
    }
}

/// Selector for the classical distances, shared by the Hilbert-space layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistanceKind {
    Wootters,
    HellingerSq,
    Bhattacharyya,
    Jsd,
    KullbackLeibler,
    Chi2Half,
}

impl DistanceKind {
    pub const ALL: [DistanceKind; 6] = [
        DistanceKind::Wootters,
        DistanceKind::HellingerSq,
        DistanceKind::Bhattacharyya,
        DistanceKind::Jsd,
        DistanceKind::KullbackLeibler,
        DistanceKind::Chi2Half,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DistanceKind::Wootters => "wootters",
            DistanceKind::HellingerSq => "hellinger_sq",
            DistanceKind::Bhattacharyya => "bhattacharyya",
            DistanceKind::Jsd => "jsd",
            DistanceKind::KullbackLeibler => "kl",
            DistanceKind::Chi2Half => "chi2_half",
        }
    }

    pub fn is_symmetric(self) -> bool {
        !matches!(self, DistanceKind::KullbackLeibler | DistanceKind::Chi2Half)
    }
}

impl std::str::FromStr for DistanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown distance kind `{s}`")))
    }
}

/// Evaluates the selected distance.
pub fn distance(kind: DistanceKind, p: &ProbVec, q: &ProbVec) -> Result<Divergence> {
    Ok(match kind {
        DistanceKind::Wootters => Divergence::Finite(wootters_classical(p, q)?),
        DistanceKind::HellingerSq => Divergence::Finite(hellinger_sq(p, q)?),
        DistanceKind::Bhattacharyya => bhattacharyya_distance(p, q)?,
        DistanceKind::Jsd => Divergence::Finite(jsd(p, q)?),
        DistanceKind::KullbackLeibler => kl_divergence(p, q)?,
        DistanceKind::Chi2Half => Divergence::Finite(chi2_half_distance(p, q)?),
    })
}

fn check_dims(p: &ProbVec, q: &ProbVec) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(())
}

/// `x ln x` with the continuous extension at 0.
fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

pub fn shannon_entropy(p: &ProbVec) -> f64 {
    let h: f64 = -p.0.iter().map(|&x| xlnx(x)).sum::<f64>();
    h.max(0.0)
}

pub fn kl_divergence(p: &ProbVec, q: &ProbVec) -> Result<Divergence> {
    check_dims(p, q)?;
    let mut acc = 0.0;
    for (&pi, &qi) in p.0.iter().zip(&q.0) {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return Ok(Divergence::Infinite);
        }
        acc += pi * (pi / qi).ln();
    }
    Ok(Divergence::Finite(acc.max(0.0)))
}

/// `(1 + x) ln(1 + x) - x` on `[-1, 1]`, accurate to full relative precision near 0.
fn one_plus_x_log_minus_x(x: f64) -> f64 {
    if x <= -1.0 {
        return 1.0;
    }
    if x.abs() < 0.05 {
        // Σ_{k≥2} (-x)^k / (k (k - 1))
        let mut sum = 0.0;
        let mut power = x * x;
        for k in 2..60 {
            let kf = k as f64;
            let term = power / (kf * (kf - 1.0));
            sum += if k % 2 == 0 { term } else { -term };
            if term.abs() <= f64::EPSILON * 1e-2 * sum.abs() {
                break;
            }
            power *= x;
        }
        return sum;
    }
    (1.0 + x) * x.ln_1p() - x
}

/// Jensen-Shannon divergence in nats.
///
/// Evaluated as ½ Σ m_i [g(x_i) + g(-x_i)] with m = (p+q)/2, x = (p-q)/(p+q) and
/// g(x) = (1+x) ln(1+x) - x, which is algebraically the entropy form but keeps
/// full relative accuracy when p ≈ q.
pub fn jsd(p: &ProbVec, q: &ProbVec) -> Result<f64> {
    check_dims(p, q)?;
    let mut acc = 0.0;
    for (&pi, &qi) in p.0.iter().zip(&q.0) {
        let m = 0.5 * (pi + qi);
        if m == 0.0 {
            continue;
        }
        let x = (0.5 * (pi - qi) / m).clamp(-1.0, 1.0);
        acc += m * (one_plus_x_log_minus_x(x) + one_plus_x_log_minus_x(-x));
    }
    Ok((0.5 * acc).clamp(0.0, std::f64::consts::LN_2))
}

/// B(p, q) = Σ √(p_i q_i), clamped to `[0, 1]`.
pub fn bhattacharyya_coefficient(p: &ProbVec, q: &ProbVec) -> Result<f64> {
    check_dims(p, q)?;
    let b: f64 = p.0.iter().zip(&q.0).map(|(a, b)| (a * b).sqrt()).sum();
    Ok(b.clamp(0.0, 1.0))
}

/// ½ Σ (√p_i - √q_i)².
pub fn hellinger_sq(p: &ProbVec, q: &ProbVec) -> Result<f64> {
    check_dims(p, q)?;
    let acc: f64 = p
        .0
        .iter()
        .zip(&q.0)
        .map(|(&a, &b)| {
            let denom = a.sqrt() + b.sqrt();
            if denom == 0.0 {
                0.0
            } else {
                // (√a - √b) without cancellation
                let d = (a - b) / denom;
                d * d
            }
        })
        .sum();
    Ok((0.5 * acc).clamp(0.0, 1.0))
}

/// Wootters' statistical angle arccos B(p, q), in radians.
///
/// Computed as 2 asin √(h/2) with h the squared Hellinger distance, which is the
/// same angle since cos W = B = 1 - h, but stays accurate as B → 1.
pub fn wootters_classical(p: &ProbVec, q: &ProbVec) -> Result<f64> {
    let h = hellinger_sq(p, q)?;
    Ok(2.0 * (0.5 * h).sqrt().clamp(0.0, 1.0).asin())
}

/// -ln B(p, q); the infinite flag when the supports are disjoint.
pub fn bhattacharyya_distance(p: &ProbVec, q: &ProbVec) -> Result<Divergence> {
    let b = bhattacharyya_coefficient(p, q)?;
    if b == 0.0 {
        return Ok(Divergence::Infinite);
    }
    if b < 0.5 {
        return Ok(Divergence::Finite(-b.ln()));
    }
    let h = hellinger_sq(p, q)?;
    Ok(Divergence::Finite((-(-h).ln_1p()).max(0.0)))
}

/// Pearson χ² with the first argument as reference: Σ (p_i - q_i)² / p_i.
pub fn chi_squared(p: &ProbVec, q: &ProbVec) -> Result<f64> {
    check_dims(p, q)?;
    let mut acc = 0.0;
    for (index, (&pi, &qi)) in p.0.iter().zip(&q.0).enumerate() {
        if pi == 0.0 {
            if qi != 0.0 {
                return Err(Error::SingularDenominator { index, other: qi });
            }
            continue;
        }
        let d = pi - qi;
        acc += d * d / pi;
    }
    Ok(acc)
}

/// ½ √χ²(p, q), the infinitesimal form of the Wootters angle.
pub fn chi2_half_distance(p: &ProbVec, q: &ProbVec) -> Result<f64> {
    Ok(0.5 * chi_squared(p, q)?.sqrt())
}

/// Draws a point uniformly from X_N^+ (flat Dirichlet via normalized exponentials).
pub fn random_simplex<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ProbVec> {
    if n < 2 {
        return Err(Error::InvalidDistribution(format!(
            "need at least 2 outcomes, got {n}"
        )));
    }
    let draws: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    ProbVec::normalized(draws)
}
