//! Small-separation behaviour of the JSD and the Wootters angle.
//!
//! For a binary pair `(p, 1-p)` and `(p+dp, 1-p-dp)`:
//!
//! ```text
//! jsd        = -1/(8(p-1)p) dp² + (2p-1)/(16p²(p-1)²) dp³ - 7/192 (3p²-3p+1)/(p³(p-1)³) dp⁴ + O(dp⁵)
//! ½ W²       = -1/(8(p-1)p) dp² + (2p-1)/(16p²(p-1)²) dp³ - 1/384 (44p²-44p+15)/(p³(p-1)³) dp⁴ + O(dp⁵)
//! ```
//!
//! The two agree through dp³. Their dp⁴ coefficients differ by
//! `(2p²-2p+1) / (384 p³(p-1)³)`, which depends on p (it is -1/12 at p = ½).

use crate::error::{Error, Result};
use crate::hilbert::fubini_study_angle;
use crate::simplex::{self, ProbVec};
use num_complex::Complex64;

/// Coefficients of dp², dp³, dp⁴.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesCoefficients {
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

impl SeriesCoefficients {
    /// Partial sum through `dp^order` (`order` in 2..=4).
    pub fn sum(&self, dp: f64, order: u32) -> f64 {
        let mut s = self.c2 * dp * dp;
        if order >= 3 {
            s += self.c3 * dp.powi(3);
        }
        if order >= 4 {
            s += self.c4 * dp.powi(4);
        }
        s
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.c2, self.c3, self.c4]
    }
}

fn check_open_unit(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::Singularity(p))
    }
}

/// Shared dp² and dp³ coefficients.
fn low_order(p: f64) -> (f64, f64) {
    let pm1 = p - 1.0;
    let c2 = -1.0 / (8.0 * pm1 * p);
    let c3 = (2.0 * p - 1.0) / (16.0 * p * p * pm1 * pm1);
    (c2, c3)
}

/// Taylor coefficients of `jsd((p, 1-p), (p+dp, 1-p-dp))` in dp.
pub fn jsd_series_coeffs(p: f64) -> Result<SeriesCoefficients> {
    check_open_unit(p)?;
    let (c2, c3) = low_order(p);
    let cube = (p * (p - 1.0)).powi(3);
    let c4 = -(7.0 / 192.0) * (3.0 * p * p - 3.0 * p + 1.0) / cube;
    Ok(SeriesCoefficients { c2, c3, c4 })
}

/// Taylor coefficients of `½ W²((p, 1-p), (p+dp, 1-p-dp))` in dp.
pub fn wootters_sq_half_series_coeffs(p: f64) -> Result<SeriesCoefficients> {
    check_open_unit(p)?;
    let (c2, c3) = low_order(p);
    let cube = (p * (p - 1.0)).powi(3);
    let c4 = -(1.0 / 384.0) * (44.0 * p * p - 44.0 * p + 15.0) / cube;
    Ok(SeriesCoefficients { c2, c3, c4 })
}

fn binary_pair(p: f64, dp: f64) -> Result<(ProbVec, ProbVec)> {
    check_open_unit(p)?;
    let base = ProbVec::binary(p)?;
    let shifted = base.perturbed(&[1.0, -1.0], dp)?;
    Ok((base, shifted))
}

/// Exact `jsd((p, 1-p), (p+dp, 1-p-dp))`.
pub fn binary_shift_jsd(p: f64, dp: f64) -> Result<f64> {
    let (a, b) = binary_pair(p, dp)?;
    simplex::jsd(&a, &b)
}

/// Exact `½ W²((p, 1-p), (p+dp, 1-p-dp))`.
pub fn binary_shift_half_wootters_sq(p: f64, dp: f64) -> Result<f64> {
    let (a, b) = binary_pair(p, dp)?;
    let w = simplex::wootters_classical(&a, &b)?;
    Ok(0.5 * w * w)
}

/// `count` points geometrically spaced from `start` to `end` inclusive.
pub fn geometric_sequence(start: f64, end: f64, count: usize) -> Result<Vec<f64>> {
    if !(start > 0.0 && end > 0.0) || count < 2 {
        return Err(Error::InvalidGrid(format!(
            "geometric sequence needs positive endpoints and ≥ 2 points (got {start}, {end}, {count})"
        )));
    }
    let ratio = (end / start).powf(1.0 / (count - 1) as f64);
    Ok((0..count).map(|i| start * ratio.powi(i as i32)).collect())
}

/// Log-log least-squares fit of a residual against dp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderFit {
    /// Slope of ln|residual| against ln dp. `f64::INFINITY` when degenerate.
    pub estimated_order: f64,
    pub r_squared: f64,
    /// Residuals were at roundoff level; no order can be fitted.
    pub degenerate: bool,
}

/// Fits the order at which `|exact(dp) - approx(dp)|` vanishes as dp → 0.
///
/// `dps` must lie in `(0, min(p, 1-p)/2)`. Residuals below a few ulps of the
/// exact value are discarded; if fewer than two remain the fit is degenerate.
pub fn verify_expansion_order<E, S>(exact: E, approx: S, p: f64, dps: &[f64]) -> Result<OrderFit>
where
    E: Fn(f64) -> Result<f64>,
    S: Fn(f64) -> Result<f64>,
{
    check_open_unit(p)?;
    if dps.len() < 3 {
        return Err(Error::InvalidGrid("need at least 3 dp values".into()));
    }
    let limit = 0.5 * p.min(1.0 - p);
    if let Some(bad) = dps.iter().find(|&&dp| !(dp > 0.0 && dp < limit)) {
        return Err(Error::OutsideSimplex(format!(
            "dp = {bad} outside (0, {limit}) at p = {p}"
        )));
    }
    let mut xs = Vec::with_capacity(dps.len());
    let mut ys = Vec::with_capacity(dps.len());
    for &dp in dps {
        let e = exact(dp)?;
        let a = approx(dp)?;
        let residual = (e - a).abs();
        let floor = 8.0 * f64::EPSILON * e.abs().max(a.abs());
        if residual > floor {
            xs.push(dp.ln());
            ys.push(residual.ln());
        }
    }
    if xs.len() < 2 {
        return Ok(OrderFit {
            estimated_order: f64::INFINITY,
            r_squared: 0.0,
            degenerate: true,
        });
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r_squared = if syy > 0.0 { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) } else { 1.0 };
    Ok(OrderFit {
        estimated_order: slope,
        r_squared,
        degenerate: false,
    })
}

/// Quantities whose ratio to `Σ dp_i² / p_i` has a finite limit as dp → 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfinitesimalMetric {
    /// jsd(p, p+dp); limit 1/8.
    Jsd,
    /// ½ W²(p, p+dp); limit 1/8.
    HalfWoottersSq,
    /// Squared Fubini-Study distance between `Σ √p_i |i>` and `Σ √(p_i+dp_i) |i>`,
    /// measured as the ray angle θ_FS/2; limit 1/4.
    FubiniStudySq,
    /// Square of the full angle θ_FS = 2 arccos|<ψ|η>|; limit 1.
    FubiniStudyFullAngleSq,
    /// chi2_half_distance²; exactly 1/4.
    Chi2HalfSq,
}

impl InfinitesimalMetric {
    pub fn expected_limit(self) -> f64 {
        match self {
            InfinitesimalMetric::Jsd | InfinitesimalMetric::HalfWoottersSq => 0.125,
            InfinitesimalMetric::FubiniStudySq | InfinitesimalMetric::Chi2HalfSq => 0.25,
            InfinitesimalMetric::FubiniStudyFullAngleSq => 1.0,
        }
    }

    fn evaluate(self, p: &ProbVec, q: &ProbVec) -> Result<f64> {
        match self {
            InfinitesimalMetric::Jsd => simplex::jsd(p, q),
            InfinitesimalMetric::HalfWoottersSq => {
                let w = simplex::wootters_classical(p, q)?;
                Ok(0.5 * w * w)
            }
            InfinitesimalMetric::FubiniStudySq | InfinitesimalMetric::FubiniStudyFullAngleSq => {
                let psi: Vec<Complex64> = p.as_slice().iter().map(|&x| Complex64::new(x.sqrt(), 0.0)).collect();
                let eta: Vec<Complex64> = q.as_slice().iter().map(|&x| Complex64::new(x.sqrt(), 0.0)).collect();
                let theta = fubini_study_angle(&psi, &eta)?;
                Ok(if self == InfinitesimalMetric::FubiniStudySq {
                    0.25 * theta * theta
                } else {
                    theta * theta
                })
            }
            InfinitesimalMetric::Chi2HalfSq => Ok(simplex::chi2_half_distance(p, q)?.powi(2)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioEstimate {
    /// `(magnitude, metric / Σ dp²/p)` per requested magnitude.
    pub samples: Vec<(f64, f64)>,
    /// Ratio at the smallest magnitude.
    pub at_smallest: f64,
    /// Linear extrapolation to zero from the two smallest magnitudes.
    pub extrapolated: f64,
}

/// Ratio of `metric(p, p + ε·direction)` to the quadratic form `Σ (ε d_i)² / p_i`.
pub fn infinitesimal_ratio_check(
    metric: InfinitesimalMetric,
    p: &ProbVec,
    direction: &[f64],
    magnitudes: &[f64],
) -> Result<RatioEstimate> {
    if let Some(&edge) = p.as_slice().iter().find(|&&x| x <= 0.0 || x >= 1.0) {
        return Err(Error::Singularity(edge));
    }
    if direction.len() != p.len() {
        return Err(Error::DimensionMismatch {
            left: p.len(),
            right: direction.len(),
        });
    }
    let scale: f64 = direction.iter().map(|d| d.abs()).sum();
    if scale == 0.0 || direction.iter().sum::<f64>().abs() > 1e-12 * scale {
        return Err(Error::OutOfDomain("direction must be nonzero and sum to 0".into()));
    }
    if magnitudes.is_empty() || magnitudes.iter().any(|m| m.is_nan() || *m <= 0.0) {
        return Err(Error::InvalidGrid("magnitudes must be positive".into()));
    }
    let mut samples = Vec::with_capacity(magnitudes.len());
    for &eps in magnitudes {
        let q = p.perturbed(direction, eps)?;
        let quad: f64 = p
            .as_slice()
            .iter()
            .zip(direction)
            .map(|(pi, d)| (eps * d).powi(2) / pi)
            .sum();
        samples.push((eps, metric.evaluate(p, &q)? / quad));
    }
    let mut sorted = samples.clone();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (e1, r1) = sorted[0];
    let extrapolated = match sorted.get(1) {
        Some(&(e2, r2)) if e2 > e1 => (e2 * r1 - e1 * r2) / (e2 - e1),
        _ => r1,
    };
    Ok(RatioEstimate {
        samples,
        at_smallest: r1,
        extrapolated,
    })
}

/// Discretized shift experiment on a density sampled on a uniform grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FisherShift {
    /// jsd between the cell masses of p(x) and p(x + δ).
    pub jsd: f64,
    /// `∫ p'(x)² / p(x) dx`.
    pub fisher: f64,
    /// `jsd / (δ² I / 8)`; `None` when δ = 0.
    pub ratio: Option<f64>,
}

/// Samples of a Gaussian density with standard deviation `sigma` on
/// `[-half_width, half_width]` with spacing `step`.
pub fn gaussian_profile(sigma: f64, half_width: f64, step: f64) -> Result<Vec<f64>> {
    if !(sigma > 0.0 && half_width > 0.0 && step > 0.0) {
        return Err(Error::InvalidGrid("sigma, width and step must be positive".into()));
    }
    let cells = (2.0 * half_width / step).round() as usize;
    let norm = 1.0 / (sigma * (2.0 * std::f64::consts::PI).sqrt());
    Ok((0..=cells)
        .map(|i| {
            let x = -half_width + i as f64 * step;
            norm * (-0.5 * (x / sigma).powi(2)).exp()
        })
        .collect())
}

/// Compares jsd(p(x), p(x+δ)) with the small-shift form δ² I / 8.
///
/// `density` holds strictly positive samples on a uniform grid of spacing
/// `step`; `delta` must be an integer multiple of `step`. The mass in the
/// outermost |δ/step| + 1 cells at either end must be below 1e-12.
pub fn fisher_shift_check(density: &[f64], step: f64, delta: f64) -> Result<FisherShift> {
    if density.len() < 3 {
        return Err(Error::InvalidProfile("need at least 3 samples".into()));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidProfile("grid step must be positive".into()));
    }
    if let Some(i) = density.iter().position(|&f| !(f > 0.0 && f.is_finite())) {
        return Err(Error::InvalidProfile(format!("sample {i} is not strictly positive")));
    }
    let shift_cells = (delta / step).round();
    if (shift_cells * step - delta).abs() > 1e-9 * step {
        return Err(Error::InvalidProfile(format!(
            "shift {delta} is not a multiple of the grid step {step}"
        )));
    }
    let k = shift_cells as i64;
    let n = density.len();
    let edge = k.unsigned_abs() as usize + 1;
    if 2 * edge >= n {
        return Err(Error::InvalidProfile("shift is wider than the grid".into()));
    }
    let total: f64 = density.iter().sum::<f64>() * step;
    let boundary: f64 =
        (density[..edge].iter().sum::<f64>() + density[n - edge..].iter().sum::<f64>()) * step / total;
    if boundary >= 1e-12 {
        return Err(Error::InvalidProfile(format!(
            "boundary mass {boundary:e} is not below 1e-12"
        )));
    }

    let p = ProbVec::normalized(density.to_vec())?;
    let shifted: Vec<f64> = (0..n as i64)
        .map(|i| {
            let j = i + k;
            if (0..n as i64).contains(&j) {
                density[j as usize]
            } else {
                0.0
            }
        })
        .collect();
    let q = ProbVec::normalized(shifted)?;
    let jsd = simplex::jsd(&p, &q)?;

    let f: Vec<f64> = density.iter().map(|d| d / total).collect();
    let fisher: f64 = (0..n)
        .map(|i| {
            let deriv = if i == 0 {
                (f[1] - f[0]) / step
            } else if i == n - 1 {
                (f[n - 1] - f[n - 2]) / step
            } else {
                (f[i + 1] - f[i - 1]) / (2.0 * step)
            };
            deriv * deriv / f[i]
        })
        .sum::<f64>()
        * step;

    let ratio = if k == 0 {
        None
    } else {
        Some(jsd / (delta * delta * fisher / 8.0))
    };
    Ok(FisherShift { jsd, fisher, ratio })
}
