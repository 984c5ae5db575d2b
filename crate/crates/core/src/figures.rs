//! Data tables behind the three figures: binary JSD against half the squared
//! Wootters distance, and the rotated-basis JSD of two pure qubit states
//! bounded by their angle φ.
//!
//! Each builder checks its bound on every row before returning the table.

use std::f64::consts::{FRAC_PI_2, TAU};

use crate::error::{Error, Result};
use crate::hilbert::{self, PureState};
use crate::simplex::{self, ProbVec};
use crate::sweep::{Grid, SweepTable};

/// Default slack for the per-row bound checks.
pub const BOUND_TOLERANCE: f64 = 1e-10;

pub fn default_fig1_grid() -> Grid {
    Grid::stepped(0.001, 0.999, 0.001).expect("default grid is valid")
}

pub fn default_fig2_theta() -> Grid {
    Grid::linspace(0.0, TAU, 1025).expect("default grid is valid")
}

pub fn default_fig3_theta() -> Grid {
    Grid::linspace(0.0, TAU, 128).expect("default grid is valid")
}

pub fn default_fig3_phi() -> Grid {
    Grid::linspace(0.0, FRAC_PI_2, 128).expect("default grid is valid")
}

pub const DEFAULT_FIG2_PHIS: [f64; 2] = [0.5, 0.8];

fn violation(what: String) -> Error {
    Error::BoundViolation(what)
}

/// Rows `(b, jsd, half_wootters_sq)` for `p1 = (a, 1-a)`, `p2 = (b, 1-b)`.
///
/// Checks `0 ≤ jsd ≤ ln 2` and `jsd ≤ W²/2` on every row.
pub fn fig1(a: f64, b: &Grid, tolerance: f64) -> Result<SweepTable> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::OutOfDomain(format!("a = {a} outside (0, 1)")));
    }
    b.check_within(0.0, 1.0, "b")?;
    let p1 = ProbVec::binary(a)?;
    let mut table = SweepTable::new(["b", "jsd", "half_wootters_sq"]);
    for x in b.points() {
        let p2 = ProbVec::binary(x.clamp(0.0, 1.0))?;
        let js = simplex::jsd(&p1, &p2)?;
        let w = simplex::wootters_classical(&p1, &p2)?;
        let half_w2 = 0.5 * w * w;
        if js > std::f64::consts::LN_2 + tolerance || js > half_w2 + tolerance {
            return Err(violation(format!(
                "fig1 row b = {x}: jsd {js} exceeds ln 2 or W²/2 = {half_w2}"
            )));
        }
        table.push_row(vec![x, js, half_w2])?;
    }
    Ok(table)
}

fn check_phi(phi: f64) -> Result<()> {
    if !(0.0..=FRAC_PI_2 + 1e-12).contains(&phi) {
        return Err(Error::OutOfDomain(format!("phi = {phi} outside [0, π/2]")));
    }
    Ok(())
}

/// `√(2·jsd)` of the rotated-basis distributions at `(θ, φ)`, checked against `φ`.
fn bounded_value(phi: f64, theta: f64, tolerance: f64) -> Result<f64> {
    let v = (2.0 * hilbert::rotated_jsd_2d(phi, theta)?).sqrt();
    if v > phi + tolerance {
        return Err(violation(format!(
            "value {v} exceeds phi = {phi} at theta = {theta}"
        )));
    }
    Ok(v)
}

/// Column name for a φ value, e.g. `phi_0.5`.
pub fn phi_column(phi: f64) -> String {
    format!("phi_{}", crate::sweep::format_value(phi))
}

/// Rows `(theta, one column per φ)` holding `√(2·jsd)` in the rotated basis.
pub fn fig2(phis: &[f64], theta: &Grid, tolerance: f64) -> Result<SweepTable> {
    if phis.is_empty() {
        return Err(Error::OutOfDomain("at least one phi value is required".into()));
    }
    for &phi in phis {
        check_phi(phi)?;
    }
    theta.check_within(0.0, TAU, "theta")?;
    let mut columns = vec!["theta".to_string()];
    columns.extend(phis.iter().map(|&p| phi_column(p)));
    let mut table = SweepTable::new(columns);
    for t in theta.points() {
        let mut row = Vec::with_capacity(phis.len() + 1);
        row.push(t);
        for &phi in phis {
            row.push(bounded_value(phi, t, tolerance)?);
        }
        table.push_row(row)?;
    }
    Ok(table)
}

/// Long-format rows `(theta, phi, value)`, θ outer and φ inner.
pub fn fig3(theta: &Grid, phi: &Grid, tolerance: f64) -> Result<SweepTable> {
    theta.check_within(0.0, TAU, "theta")?;
    phi.check_within(0.0, FRAC_PI_2, "phi")?;
    let phis = phi.points();
    let mut table = SweepTable::new(["theta", "phi", "value"]);
    for t in theta.points() {
        for &f in &phis {
            let f = f.min(FRAC_PI_2);
            table.push_row(vec![t, f, bounded_value(f, t, tolerance)?])?;
        }
    }
    Ok(table)
}

/// Rotated-basis Wootters distance between `(1, 0)` and `(cos φ, sin φ)`.
pub fn rotated_wootters_2d(phi: f64, theta: f64) -> Result<f64> {
    check_phi(phi)?;
    let p = hilbert::rotated_probabilities_2d(&PureState::at_angle(0.0), theta)?;
    let q = hilbert::rotated_probabilities_2d(&PureState::at_angle(phi), theta)?;
    simplex::wootters_classical(&p, &q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn fig1_defaults() {
        let t = fig1(0.5, &default_fig1_grid(), BOUND_TOLERANCE).unwrap();
        assert_eq!(t.rows().len(), 999);
        let mid = &t.rows()[499];
        assert!((mid[0] - 0.5).abs() < 1e-15);
        assert!(mid[1].abs() < 1e-15 && mid[2].abs() < 1e-15);
        let last = t.rows().last().unwrap();
        assert!((last[2] - last[1]) >= 0.01);
        assert!(fig1(1.0, &default_fig1_grid(), BOUND_TOLERANCE).is_err());
        assert!(fig1(0.5, &Grid::linspace(-0.1, 0.5, 3).unwrap(), BOUND_TOLERANCE).is_err());
    }

    #[test]
    fn fig2_columns_and_periodicity() {
        let t = fig2(&[0.0, 0.5, 0.8], &default_fig2_theta(), BOUND_TOLERANCE).unwrap();
        assert_eq!(t.columns(), ["theta", "phi_0", "phi_0.5", "phi_0.8"]);
        assert!(t.column("phi_0").unwrap().iter().all(|&v| v == 0.0));
        let rows = t.rows();
        // θ + π is 512 steps away on the default grid
        for (a, b) in rows[..512].iter().zip(&rows[512..]) {
            for c in 1..4 {
                assert!((a[c] - b[c]).abs() < 1e-12);
            }
        }
        assert!(fig2(&[2.0], &default_fig2_theta(), BOUND_TOLERANCE).is_err());
        assert!(fig2(&[], &default_fig2_theta(), BOUND_TOLERANCE).is_err());
    }

    #[test]
    fn fig3_shape() {
        let t = fig3(&default_fig3_theta(), &default_fig3_phi(), BOUND_TOLERANCE).unwrap();
        assert_eq!(t.rows().len(), 128 * 128);
        assert_eq!(t.rows()[1][0], 0.0);
        assert!(t.rows().iter().filter(|r| r[1] == 0.0).all(|r| r[2] == 0.0));
    }

    #[test]
    fn negative_tolerance_trips_the_bound() {
        let g = Grid::linspace(0.0, PI, 5).unwrap();
        assert!(matches!(fig2(&[0.5], &g, -1.0), Err(Error::BoundViolation(_))));
    }

    #[test]
    fn rotated_wootters_attains_phi_below_quarter_turn() {
        assert!((rotated_wootters_2d(0.5, 0.0).unwrap() - 0.5).abs() < 1e-12);
    }
}
