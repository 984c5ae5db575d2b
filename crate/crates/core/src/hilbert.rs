//! Pure states, measurement bases, and the map from states to outcome
//! distributions `p_i = |<φ_i|Ψ>|²`.
//!
//! A classical distance on the simplex induces a basis-dependent distance on
//! states ([`induced_distance`]). For the Wootters, Hellinger and Bhattacharyya
//! distances the supremum over bases is a closed-form function of the overlap
//! `|<Ψ1|Ψ2>|`; for the JSD it is found numerically ([`maximize_induced_distance`]).

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::simplex::{self, Divergence, DistanceKind, ProbVec};
use crate::tol;

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// A normalized state vector in C^N (N ≥ 2), compared as a ray.
#[derive(Debug, Clone)]
pub struct PureState(Vec<Complex64>);

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::InvalidState(format!(
                "need dimension at least 2, got {}",
                amplitudes.len()
            )));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        let n2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (n2 - 1.0).abs() > tol::STATE_NORM {
            return Err(Error::InvalidState(format!("squared norm is {n2}, not 1")));
        }
        Ok(Self(amplitudes))
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = norm(&amplitudes);
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        Self::new(amplitudes.into_iter().map(|a| a / n).collect())
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// The `index`-th vector of the standard basis of C^n.
    pub fn basis_vector(n: usize, index: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::InvalidState(format!(
                "index {index} out of range for dimension {n}"
            )));
        }
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[index] = Complex64::new(1.0, 0.0);
        Self::new(v)
    }

    /// `(cos φ, sin φ)`, the state at Wootters angle φ from `(1, 0)`.
    pub fn at_angle(phi: f64) -> Self {
        Self(vec![
            Complex64::new(phi.cos(), 0.0),
            Complex64::new(phi.sin(), 0.0),
        ])
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        check_dims(self.dim(), other.dim())?;
        Ok(inner(&self.0, &other.0))
    }

    /// True when the two states differ by at most a global phase.
    pub fn same_ray(&self, other: &Self) -> bool {
        self.dim() == other.dim() && (inner(&self.0, &other.0).norm() - 1.0).abs() <= tol::STATE_NORM
    }

    /// Multiplies every amplitude by `lambda`; the result is generally unnormalized.
    pub fn scaled(&self, lambda: Complex64) -> Vec<Complex64> {
        self.0.iter().map(|a| a * lambda).collect()
    }
}

impl PartialEq for PureState {
    fn eq(&self, other: &Self) -> bool {
        self.same_ray(other)
    }
}

fn check_dims(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch { left, right });
    }
    Ok(())
}

/// An orthonormal basis `{|φ_i>}` of C^N; the eigenbasis of a nondegenerate observable.
#[derive(Debug, Clone)]
pub struct MeasurementBasis {
    vectors: Vec<PureState>,
}

impl MeasurementBasis {
    pub fn new(vectors: Vec<PureState>) -> Result<Self> {
        let n = vectors.len();
        if n < 2 {
            return Err(Error::InvalidState(format!("basis needs at least 2 vectors, got {n}")));
        }
        for v in &vectors {
            check_dims(n, v.dim())?;
        }
        let mut deviation: f64 = 0.0;
        for (i, a) in vectors.iter().enumerate() {
            for (j, b) in vectors.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                deviation = deviation.max((inner(&a.0, &b.0) - expected).norm());
            }
        }
        if deviation > tol::GRAM {
            return Err(Error::NonOrthonormalBasis { deviation });
        }
        Ok(Self { vectors })
    }

    pub fn standard(n: usize) -> Result<Self> {
        Self::new(
            (0..n)
                .map(|i| PureState::basis_vector(n, i))
                .collect::<Result<_>>()?,
        )
    }

    /// Haar-random basis: Gram-Schmidt on complex Gaussian vectors.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidState(format!("basis needs dimension ≥ 2, got {n}")));
        }
        let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(n);
        while out.len() < n {
            let mut v = gaussian_vector(n, rng);
            // two passes of modified Gram-Schmidt
            for _ in 0..2 {
                for u in &out {
                    let c = inner(u, &v);
                    for (vi, ui) in v.iter_mut().zip(u) {
                        *vi -= c * ui;
                    }
                }
            }
            let nv = norm(&v);
            if nv < 1e-8 {
                continue;
            }
            out.push(v.into_iter().map(|x| x / nv).collect());
        }
        Self::new(out.into_iter().map(PureState).collect())
    }

    pub fn vectors(&self) -> &[PureState] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Largest entrywise deviation of the Gram matrix from the identity.
    pub fn gram_deviation(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.vectors.iter().enumerate() {
            for (j, b) in self.vectors.iter().enumerate() {
                let e = if i == j { 1.0 } else { 0.0 };
                d = d.max((inner(&a.0, &b.0) - e).norm());
            }
        }
        d
    }

    /// Expresses the basis vectors, given as coordinates in `frame`, in the
    /// standard basis.
    fn from_frame(frame: &[Vec<Complex64>; 2], coords: [[Complex64; 2]; 2]) -> Result<Self> {
        let vectors = coords
            .iter()
            .map(|c| {
                let v: Vec<Complex64> = (0..2).map(|k| c[0] * frame[0][k] + c[1] * frame[1][k]).collect();
                PureState::new(v)
            })
            .collect::<Result<_>>()?;
        Self::new(vectors)
    }
}

/// The one-parameter family of two-dimensional bases
///
/// ```text
/// |φ̃1(θ)> =  e^{iθ}/√2 |φ1> + e^{-iθ}/√2 |φ2>
/// |φ̃2(θ)> = -e^{iθ}/√2 |φ1> + e^{-iθ}/√2 |φ2>
/// ```
///
/// relative to the standard basis `{|φ1>, |φ2>}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotatedBasis2D {
    theta: f64,
}

impl RotatedBasis2D {
    pub fn new(theta: f64) -> Result<Self> {
        if !(0.0..=TAU + 1e-12).contains(&theta) {
            return Err(Error::OutOfDomain(format!("theta = {theta} outside [0, 2π]")));
        }
        Ok(Self { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn basis(&self) -> MeasurementBasis {
        let frame = standard_frame();
        MeasurementBasis::from_frame(&frame, tilted_coords(self.theta, std::f64::consts::FRAC_PI_4))
            .expect("rotated basis is orthonormal for every theta")
    }
}

fn standard_frame() -> [Vec<Complex64>; 2] {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    [vec![one, zero], vec![zero, one]]
}

/// Coordinates of `(cos β e^{iθ}, sin β e^{-iθ})` and `(-sin β e^{iθ}, cos β e^{-iθ})`.
/// β = π/4 is the rotated family; β ∈ [0, π/2] with θ ∈ [0, π) covers every
/// 2D basis up to the phases of its vectors.
fn tilted_coords(theta: f64, tilt: f64) -> [[Complex64; 2]; 2] {
    let plus = Complex64::from_polar(1.0, theta);
    let minus = Complex64::from_polar(1.0, -theta);
    let (s, c) = tilt.sin_cos();
    [[plus * c, minus * s], [-plus * s, minus * c]]
}

fn gaussian_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        })
        .collect()
}

/// Haar-distributed pure state from normalized complex Gaussian amplitudes.
pub fn random_pure_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<PureState> {
    if n < 2 {
        return Err(Error::InvalidState(format!("need dimension at least 2, got {n}")));
    }
    loop {
        let v = gaussian_vector(n, rng);
        if norm(&v) > 1e-12 {
            return PureState::normalized(v);
        }
    }
}

/// [`random_pure_state`] from a fresh generator seeded with `seed`.
pub fn random_pure_state_seeded(n: usize, seed: u64) -> Result<PureState> {
    random_pure_state(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Outcome probabilities `p_i = |<φ_i|Ψ>|²` of measuring `state` in `basis`.
pub fn measurement_probabilities(state: &PureState, basis: &MeasurementBasis) -> Result<ProbVec> {
    check_dims(basis.dim(), state.dim())?;
    ProbVec::new(
        basis
            .vectors
            .iter()
            .map(|phi| inner(&phi.0, &state.0).norm_sqr())
            .collect(),
    )
}

/// `|<Ψ1|Ψ2>|`, clamped to `[0, 1]`.
pub fn overlap(s1: &PureState, s2: &PureState) -> Result<f64> {
    Ok(s1.inner(s2)?.norm().clamp(0.0, 1.0))
}

/// Angle between the rays of two nonzero vectors, in `[0, π/2]`.
///
/// Uses atan2 of the perpendicular and parallel components, which stays
/// accurate when the rays nearly coincide (where arccos of the overlap does not).
fn ray_angle(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    check_dims(a.len(), b.len())?;
    let na = norm(a);
    let nb = norm(b);
    if !(na > 0.0 && nb > 0.0) {
        return Err(Error::InvalidState("zero vector has no ray".into()));
    }
    let ua: Vec<Complex64> = a.iter().map(|x| x / na).collect();
    let ub: Vec<Complex64> = b.iter().map(|x| x / nb).collect();
    let c = inner(&ua, &ub);
    let perp: f64 = ub
        .iter()
        .zip(&ua)
        .map(|(y, x)| (y - x * c).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(perp.atan2(c.norm()).clamp(0.0, FRAC_PI_2))
}

/// Supremum over bases of the induced Wootters distance: arccos |<Ψ1|Ψ2>|.
pub fn wootters_hilbert_max(s1: &PureState, s2: &PureState) -> Result<f64> {
    ray_angle(&s1.0, &s2.0)
}

/// Supremum over bases of the induced squared Hellinger distance: 1 - |<Ψ1|Ψ2>|.
pub fn hellinger_hilbert_max_sq(s1: &PureState, s2: &PureState) -> Result<f64> {
    let half = 0.5 * wootters_hilbert_max(s1, s2)?;
    // 1 - cos W = 2 sin²(W/2)
    Ok(2.0 * half.sin().powi(2))
}

/// Supremum over bases of the induced Bhattacharyya distance: -ln |<Ψ1|Ψ2>|.
pub fn bhattacharyya_hilbert_max(s1: &PureState, s2: &PureState) -> Result<Divergence> {
    if overlap(s1, s2)? == 0.0 {
        return Ok(Divergence::Infinite);
    }
    let h = hellinger_hilbert_max_sq(s1, s2)?;
    Ok(Divergence::Finite(-(-h).ln_1p()))
}

/// Fubini-Study angle `θ_FS = 2 arccos(|<ψ|η>| / (‖ψ‖ ‖η‖))` between two
/// nonzero, not necessarily normalized vectors. 0 for the same ray, π for
/// orthogonal rays.
pub fn fubini_study_angle(psi: &[Complex64], eta: &[Complex64]) -> Result<f64> {
    Ok(2.0 * ray_angle(psi, eta)?)
}

/// The classical distance `kind` between the outcome distributions of `s1`
/// and `s2` measured in `basis`.
pub fn induced_distance(
    kind: DistanceKind,
    basis: &MeasurementBasis,
    s1: &PureState,
    s2: &PureState,
) -> Result<Divergence> {
    let p = measurement_probabilities(s1, basis)?;
    let q = measurement_probabilities(s2, basis)?;
    simplex::distance(kind, &p, &q)
}

fn phase(z: Complex64) -> f64 {
    if z == Complex64::new(0.0, 0.0) {
        0.0
    } else {
        z.arg()
    }
}

/// Outcome distribution of a two-level `state` in the rotated basis at `theta`,
/// from the closed form
///
/// `p̃_1(θ) = (p_1 + p_2)/2 + √(p_1 p_2) cos(2θ + α_2 - α_1)`
///
/// where `√p_k e^{iα_k}` are the amplitudes of `state` (arg 0 := 0).
pub fn rotated_probabilities_2d(state: &PureState, theta: f64) -> Result<ProbVec> {
    if state.dim() != 2 {
        return Err(Error::UnsupportedDimension(state.dim()));
    }
    let a = state.amplitudes();
    let p1 = a[0].norm_sqr();
    let p2 = a[1].norm_sqr();
    let first = 0.5 * (p1 + p2) + (p1 * p2).sqrt() * (2.0 * theta + phase(a[1]) - phase(a[0])).cos();
    let first = first.clamp(0.0, 1.0);
    ProbVec::new(vec![first, 1.0 - first])
}

/// JSD between the rotated-basis distributions of `(1, 0)` and `(cos φ, sin φ)`.
pub fn rotated_jsd_2d(phi: f64, theta: f64) -> Result<f64> {
    if !(0.0..=FRAC_PI_2 + 1e-12).contains(&phi) {
        return Err(Error::OutOfDomain(format!("phi = {phi} outside [0, π/2]")));
    }
    if !(0.0..=TAU + 1e-12).contains(&theta) {
        return Err(Error::OutOfDomain(format!("theta = {theta} outside [0, 2π]")));
    }
    let s1 = PureState::at_angle(0.0);
    let s2 = PureState::at_angle(phi);
    let p = rotated_probabilities_2d(&s1, theta)?;
    let q = rotated_probabilities_2d(&s2, theta)?;
    simplex::jsd(&p, &q)
}

/// Which two-dimensional bases [`maximize_induced_distance`] searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisFamily {
    /// Only the rotated family, with `|φ1>` aligned to the first state.
    Rotated,
    /// Every orthonormal basis of C²: the rotation angle plus a tilt angle.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Grid points over the rotation angle θ ∈ [0, π).
    pub theta_grid: usize,
    /// Grid points over the tilt angle β ∈ [0, π/2] (ignored for [`BasisFamily::Rotated`]).
    pub tilt_grid: usize,
    /// Golden-section iterations per refinement pass.
    pub refine_iters: usize,
    /// Alternating θ/β refinement passes.
    pub refine_passes: usize,
    pub family: BasisFamily,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            theta_grid: 1024,
            tilt_grid: 65,
            refine_iters: 80,
            refine_passes: 6,
            family: BasisFamily::All,
        }
    }
}

impl SearchBudget {
    pub fn rotated() -> Self {
        Self {
            family: BasisFamily::Rotated,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct InducedMaximum {
    pub value: Divergence,
    pub basis: MeasurementBasis,
    pub theta: f64,
    pub tilt: f64,
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
fn golden_max(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Numerically maximizes the induced distance over two-dimensional measurement bases.
///
/// The bases are written in the frame `{|Ψ1>, |u>}` where `|u> ⊥ |Ψ1>` is
/// phased so that `|Ψ2> ∝ cos φ |Ψ1> + sin φ |u>` with real coefficients.
/// A dense grid over (θ, β) is followed by alternating golden-section
/// refinement; grid ties go to the smallest θ, then the smallest β.
pub fn maximize_induced_distance(
    kind: DistanceKind,
    s1: &PureState,
    s2: &PureState,
    budget: SearchBudget,
) -> Result<InducedMaximum> {
    check_dims(s1.dim(), s2.dim())?;
    if s1.dim() != 2 {
        return Err(Error::UnsupportedDimension(s1.dim()));
    }
    if budget.theta_grid == 0 || (budget.family == BasisFamily::All && budget.tilt_grid < 2) {
        return Err(Error::InvalidGrid("search grid is empty".into()));
    }
    let frame = adapted_frame(s1, s2);
    let eval = |theta: f64, tilt: f64| -> Result<Divergence> {
        let basis = MeasurementBasis::from_frame(&frame, tilted_coords(theta, tilt))?;
        induced_distance(kind, &basis, s1, s2)
    };
    let score = |theta: f64, tilt: f64| eval(theta, tilt).map(Divergence::value).unwrap_or(f64::NEG_INFINITY);

    let tilts: Vec<f64> = match budget.family {
        BasisFamily::Rotated => vec![std::f64::consts::FRAC_PI_4],
        BasisFamily::All => (0..budget.tilt_grid)
            .map(|j| FRAC_PI_2 * j as f64 / (budget.tilt_grid - 1) as f64)
            .collect(),
    };
    let theta_step = PI / budget.theta_grid as f64;

    let mut best = (0.0, tilts[0], f64::NEG_INFINITY);
    for k in 0..budget.theta_grid {
        let theta = k as f64 * theta_step;
        for &tilt in &tilts {
            let v = score(theta, tilt);
            if v > best.2 {
                best = (theta, tilt, v);
            }
        }
    }

    if best.2.is_finite() {
        let tilt_step = if tilts.len() > 1 { tilts[1] - tilts[0] } else { 0.0 };
        let (mut theta, mut tilt, mut value) = best;
        let mut dtheta = theta_step;
        let mut dtilt = tilt_step;
        for _ in 0..budget.refine_passes.max(1) {
            let (t, v) = golden_max(&|x| score(x, tilt), theta - dtheta, theta + dtheta, budget.refine_iters);
            if v > value {
                theta = t;
                value = v;
            }
            if budget.family == BasisFamily::All {
                let lo = (tilt - dtilt).max(0.0);
                let hi = (tilt + dtilt).min(FRAC_PI_2);
                let (b, v) = golden_max(&|x| score(theta, x), lo, hi, budget.refine_iters);
                if v > value {
                    tilt = b;
                    value = v;
                }
            }
            dtheta *= 0.5;
            dtilt *= 0.5;
        }
        best = (theta.rem_euclid(PI), tilt, value);
    }

    let (theta, tilt, _) = best;
    let basis = MeasurementBasis::from_frame(&frame, tilted_coords(theta, tilt))?;
    let value = induced_distance(kind, &basis, s1, s2)?;
    Ok(InducedMaximum {
        value,
        basis,
        theta,
        tilt,
    })
}

/// Orthonormal frame `{|Ψ1>, |u>}` in which `|Ψ2>` has real nonnegative
/// coordinates up to a global phase.
fn adapted_frame(s1: &PureState, s2: &PureState) -> [Vec<Complex64>; 2] {
    let e1 = s1.0.clone();
    let c = inner(&e1, &s2.0);
    let mut u: Vec<Complex64> = s2.0.iter().zip(&e1).map(|(b, a)| b - a * c).collect();
    let nu = norm(&u);
    if nu < 1e-12 {
        // same ray: any unit vector orthogonal to Ψ1
        u = vec![-e1[1].conj(), e1[0].conj()];
    } else {
        let rephase = if c.norm() > 0.0 { c.conj() / c.norm() } else { Complex64::new(1.0, 0.0) };
        u = u.into_iter().map(|x| x * rephase / nu).collect();
    }
    [e1, u]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn state_validation() {
        assert!(PureState::new(vec![c(1.0, 0.0)]).is_err());
        assert!(PureState::new(vec![c(1.0, 0.0), c(1.0, 0.0)]).is_err());
        assert!(PureState::normalized(vec![c(1.0, 0.0), c(1.0, 0.0)]).is_ok());
        assert!(PureState::normalized(vec![c(0.0, 0.0), c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn equality_is_up_to_global_phase() {
        let s = PureState::from_real(&[0.6, 0.8]).unwrap();
        let t = PureState::new(s.scaled(Complex64::from_polar(1.0, 1.3))).unwrap();
        assert_eq!(s, t);
        assert_ne!(s, PureState::from_real(&[0.8, 0.6]).unwrap());
    }

    #[test]
    fn basis_rejects_non_orthonormal_sets() {
        let a = PureState::from_real(&[1.0, 0.0]).unwrap();
        let b = PureState::from_real(&[0.6, 0.8]).unwrap();
        assert!(matches!(
            MeasurementBasis::new(vec![a, b]),
            Err(Error::NonOrthonormalBasis { .. })
        ));
    }

    #[test]
    fn eigenstate_and_superposition_probabilities() {
        let basis = MeasurementBasis::standard(3).unwrap();
        let e1 = PureState::basis_vector(3, 0).unwrap();
        assert_eq!(measurement_probabilities(&e1, &basis).unwrap().as_slice(), &[1.0, 0.0, 0.0]);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let plus = PureState::from_real(&[r, r, 0.0]).unwrap();
        let p = measurement_probabilities(&plus, &basis).unwrap();
        assert_abs_diff_eq!(p.as_slice()[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p.as_slice()[1], 0.5, epsilon = 1e-15);
        assert_eq!(p.as_slice()[2], 0.0);
    }

    #[test]
    fn dimension_mismatch() {
        let basis = MeasurementBasis::standard(2).unwrap();
        let s = PureState::basis_vector(3, 0).unwrap();
        assert!(matches!(
            measurement_probabilities(&s, &basis),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(overlap(&s, &PureState::basis_vector(2, 0).unwrap()).is_err());
    }

    #[test]
    fn overlap_of_angle_states() {
        for &phi in &[0.0, 0.3, 0.8, 1.2, FRAC_PI_2] {
            let o = overlap(&PureState::at_angle(0.0), &PureState::at_angle(phi)).unwrap();
            assert_abs_diff_eq!(o, phi.cos(), epsilon = 1e-15);
        }
    }

    #[test]
    fn hilbert_maxima_trivial_cases() {
        let a = PureState::basis_vector(2, 0).unwrap();
        let b = PureState::basis_vector(2, 1).unwrap();
        assert_eq!(wootters_hilbert_max(&a, &a).unwrap(), 0.0);
        assert_abs_diff_eq!(wootters_hilbert_max(&a, &b).unwrap(), FRAC_PI_2, epsilon = 1e-15);
        assert_eq!(hellinger_hilbert_max_sq(&a, &a).unwrap(), 0.0);
        assert_abs_diff_eq!(hellinger_hilbert_max_sq(&a, &b).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(bhattacharyya_hilbert_max(&a, &a).unwrap(), Divergence::Finite(0.0));
        assert!(bhattacharyya_hilbert_max(&a, &b).unwrap().is_infinite());
    }

    #[test]
    fn hilbert_maxima_from_prescribed_overlap() {
        let s1 = PureState::at_angle(0.0);
        assert_abs_diff_eq!(wootters_hilbert_max(&s1, &PureState::at_angle(0.8)).unwrap(), 0.8, epsilon = 1e-15);
        let s06 = PureState::at_angle(0.6f64.acos());
        assert_abs_diff_eq!(hellinger_hilbert_max_sq(&s1, &s06).unwrap(), 0.4, epsilon = 1e-15);
        let s05 = PureState::at_angle(0.5f64.acos());
        assert_abs_diff_eq!(
            bhattacharyya_hilbert_max(&s1, &s05).unwrap().value(),
            std::f64::consts::LN_2,
            epsilon = 1e-15
        );
    }

    #[test]
    fn fubini_study_limits() {
        let a = [c(1.0, 0.0), c(0.0, 0.0)];
        let b = [c(0.0, 0.0), c(0.0, 2.0)];
        assert_abs_diff_eq!(fubini_study_angle(&a, &b).unwrap(), PI, epsilon = 1e-15);
        let scaled = [c(0.0, 3.0), c(0.0, 0.0)];
        assert_eq!(fubini_study_angle(&a, &scaled).unwrap(), 0.0);
        assert!(fubini_study_angle(&a, &[c(0.0, 0.0), c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn rotated_basis_is_orthonormal() {
        for k in 0..=64 {
            let theta = TAU * k as f64 / 64.0;
            let basis = RotatedBasis2D::new(theta).unwrap().basis();
            assert!(basis.gram_deviation() < 1e-15);
        }
        assert!(RotatedBasis2D::new(-0.1).is_err());
        assert!(RotatedBasis2D::new(7.0).is_err());
    }

    #[test]
    fn rotated_probabilities_examples() {
        let e1 = PureState::at_angle(0.0);
        for &theta in &[0.0, 0.4, 2.0, 5.5] {
            let p = rotated_probabilities_2d(&e1, theta).unwrap();
            assert_abs_diff_eq!(p.as_slice()[0], 0.5, epsilon = 1e-15);
        }
        let phi: f64 = 0.7;
        let p = rotated_probabilities_2d(&PureState::at_angle(phi), 0.0).unwrap();
        assert_abs_diff_eq!(
            p.as_slice()[0],
            (1.0 + 2.0 * phi.sin() * phi.cos()) / 2.0,
            epsilon = 1e-15
        );
        let s = random_pure_state_seeded(2, 5).unwrap();
        let a = rotated_probabilities_2d(&s, 0.3).unwrap();
        let b = rotated_probabilities_2d(&s, 0.3 + PI).unwrap();
        assert_abs_diff_eq!(a.as_slice()[0], b.as_slice()[0], epsilon = 1e-14);
        assert!(matches!(
            rotated_probabilities_2d(&PureState::basis_vector(3, 0).unwrap(), 0.0),
            Err(Error::UnsupportedDimension(3))
        ));
    }

    #[test]
    fn rotated_closed_form_agrees_with_inner_products_for_complex_phases() {
        let s = PureState::normalized(vec![c(0.3, -0.4), c(-0.5, 0.7)]).unwrap();
        for k in 0..50 {
            let theta = TAU * k as f64 / 50.0;
            let closed = rotated_probabilities_2d(&s, theta).unwrap();
            let direct = measurement_probabilities(&s, &RotatedBasis2D::new(theta).unwrap().basis()).unwrap();
            assert_abs_diff_eq!(closed.as_slice()[0], direct.as_slice()[0], epsilon = 1e-12);
        }
    }

    #[test]
    fn rotated_jsd_basics() {
        for &theta in &[0.0, 1.0, 3.0] {
            assert_eq!(rotated_jsd_2d(0.0, theta).unwrap(), 0.0);
        }
        assert!(rotated_jsd_2d(2.0, 0.0).is_err());
        assert!(rotated_jsd_2d(0.5, 7.0).is_err());
    }

    #[test]
    fn induced_distance_trivial_cases() {
        let basis = MeasurementBasis::standard(3).unwrap();
        let s = random_pure_state_seeded(3, 1).unwrap();
        for kind in DistanceKind::ALL {
            if kind == DistanceKind::Chi2Half || kind == DistanceKind::KullbackLeibler {
                continue;
            }
            assert_abs_diff_eq!(induced_distance(kind, &basis, &s, &s).unwrap().value(), 0.0, epsilon = 1e-15);
        }
        let e1 = PureState::basis_vector(3, 0).unwrap();
        let e2 = PureState::basis_vector(3, 1).unwrap();
        assert_abs_diff_eq!(
            induced_distance(DistanceKind::Wootters, &basis, &e1, &e2).unwrap().value(),
            FRAC_PI_2,
            epsilon = 1e-15
        );
    }

    #[test]
    fn induced_jsd_matches_rotated_jsd() {
        for &phi in &[0.2, 0.5, 0.8, 1.4] {
            for k in 0..16 {
                let theta = TAU * k as f64 / 16.0;
                let basis = RotatedBasis2D::new(theta).unwrap().basis();
                let induced = induced_distance(
                    DistanceKind::Jsd,
                    &basis,
                    &PureState::at_angle(0.0),
                    &PureState::at_angle(phi),
                )
                .unwrap()
                .value();
                assert_abs_diff_eq!(induced, rotated_jsd_2d(phi, theta).unwrap(), epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn maximizer_rejects_higher_dimensions() {
        let s = PureState::basis_vector(3, 0).unwrap();
        assert!(matches!(
            maximize_induced_distance(DistanceKind::Jsd, &s, &s, SearchBudget::default()),
            Err(Error::UnsupportedDimension(3))
        ));
    }

    #[test]
    fn maximizer_recovers_analytic_wootters_maximum() {
        let s1 = PureState::at_angle(0.0);
        for &phi in &[0.1, 0.5, 0.8, 1.2, 1.5] {
            let s2 = PureState::at_angle(phi);
            let m = maximize_induced_distance(DistanceKind::Wootters, &s1, &s2, SearchBudget::default()).unwrap();
            assert_abs_diff_eq!(m.value.value(), phi, epsilon = 1e-6);
        }
    }

    #[test]
    fn rotated_family_alone_reaches_wootters_maximum_only_below_quarter_pi() {
        let s1 = PureState::at_angle(0.0);
        for &phi in &[0.3, 0.7] {
            let m = maximize_induced_distance(DistanceKind::Wootters, &s1, &PureState::at_angle(phi), SearchBudget::rotated())
                .unwrap();
            assert_abs_diff_eq!(m.value.value(), phi, epsilon = 1e-6);
        }
        // above π/4 the family tops out at π/2 - φ
        let phi = 1.2;
        let m = maximize_induced_distance(DistanceKind::Wootters, &s1, &PureState::at_angle(phi), SearchBudget::rotated())
            .unwrap();
        assert_abs_diff_eq!(m.value.value(), FRAC_PI_2 - phi, epsilon = 1e-6);
    }
}
