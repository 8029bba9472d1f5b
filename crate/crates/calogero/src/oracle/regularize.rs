//! Zero-energy cut-off experiments: solve with `psi(0) = 0` inside `r0`, continue the
//! solution outward by shooting, and read the extension parameter off a boundary fit.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::shoot::{shoot, Seed};
use super::PotentialSpec;
use crate::extensions::{
    classify, fit_boundary_coefficients, reduce_mod_pi, BoundaryCoefficients, ExtParam, Region,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegularizationPoint {
    pub r0: f64,
    pub potential: PotentialSpec,
    pub coefficients: BoundaryCoefficients,
    pub param: ExtParam,
}

/// Value and derivative at `r0` of the regular zero-energy solution inside the core.
fn inside(v_in: f64, r0: f64) -> (f64, f64) {
    // psi'' = v_in psi, psi(0) = 0
    if v_in > 0.0 {
        let q = v_in.sqrt();
        ((q * r0).sinh(), q * (q * r0).cosh())
    } else if v_in < 0.0 {
        let q = (-v_in).sqrt();
        ((q * r0).sin(), q * (q * r0).cos())
    } else {
        (r0, 1.0)
    }
}

const FIT_NODES: usize = 48;

/// Continue the inside solution over `(r0, 10 r0]` and fit the boundary coefficients.
pub fn fit_after_core(potential: PotentialSpec, k0: f64) -> Result<RegularizationPoint> {
    potential.validate()?;
    let (alpha, r0) = match potential {
        PotentialSpec::CutOff { alpha, r0 } | PotentialSpec::CutOffPlusWell { alpha, r0, .. } => {
            (alpha, r0)
        }
        PotentialSpec::Exact(_) => {
            return Err(Error::Argument(
                "the experiment needs a regularized potential".into(),
            ))
        }
    };
    let (u, du) = inside(potential.value(0.5 * r0), r0);
    let nodes: Vec<f64> = (1..=FIT_NODES)
        .map(|i| r0 * 10f64.powf(i as f64 / FIT_NODES as f64))
        .collect();
    let seed = Seed::Values(Complex64::new(u, 0.0), Complex64::new(du, 0.0));
    let shot = shoot(alpha, Complex64::new(0.0, 0.0), seed, r0, &nodes)?;
    let regime = classify(alpha);
    let coefficients = fit_boundary_coefficients(&shot.grid_function()?, &regime, k0)?;
    let param = coefficients.extension_param(&regime)?;
    Ok(RegularizationPoint {
        r0,
        potential,
        coefficients,
        param,
    })
}

fn check_span(r0s: &[f64]) -> Result<()> {
    if r0s.len() < 2 || r0s.windows(2).any(|w| !(w[1] < w[0])) || r0s.iter().any(|&r| !(r > 0.0)) {
        return Err(Error::Argument(
            "r0 values must be positive and strictly descending".into(),
        ));
    }
    if r0s[0] / r0s[r0s.len() - 1] < 100.0 * (1.0 - 1e-12) {
        return Err(Error::Argument(
            "r0 values must span at least two decades".into(),
        ));
    }
    Ok(())
}

/// Cut-off potential for each `r0`; reports the fitted `lambda` (R2, R3) or `theta` (R4).
pub fn regularization_experiment(
    alpha: f64,
    r0s: &[f64],
    k0: f64,
) -> Result<Vec<RegularizationPoint>> {
    check_span(r0s)?;
    if classify(alpha).region == Region::R1 {
        return Err(Error::Argument(
            "R1 has a unique extension; nothing to fit".into(),
        ));
    }
    r0s.iter()
        .map(|&r0| fit_after_core(PotentialSpec::CutOff { alpha, r0 }, k0))
        .collect()
}

/// Well depth `alpha_s` for which the zero-energy matching at `r0` gives
/// `theta = theta_star` (R4).
pub fn tune_square_well(alpha: f64, r0: f64, theta_star: f64, k0: f64) -> Result<f64> {
    let regime = classify(alpha);
    if regime.region != Region::R4 {
        return Err(Error::Argument(
            "square-well tuning is defined for alpha < -1/4".into(),
        ));
    }
    let sg = regime.sigma();
    // outside x^{1/2} cos(sigma ln(k0 x) + theta): r0 psi'/psi = 1/2 - sigma tan(phase)
    let target = 0.5 - sg * (sg * (k0 * r0).ln() + theta_star).tan();
    // r0 psi'/psi inside = q cot q with q = sqrt(alpha_s): decreasing from 1 to -inf on
    // (0, pi) and from +inf to -inf on (pi, 2 pi)
    let g = |q: f64| q / q.tan();
    let (mut lo, mut hi) = if target < 1.0 {
        (1e-9, PI - 1e-12)
    } else {
        (PI + 1e-12, 2.0 * PI - 1e-12)
    };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let q = 0.5 * (lo + hi);
    Ok(q * q)
}

/// Square-well regularization with the depth tuned at each `r0` to pin `theta_star`.
pub fn square_well_experiment(
    alpha: f64,
    r0s: &[f64],
    theta_star: f64,
    k0: f64,
) -> Result<Vec<RegularizationPoint>> {
    check_span(r0s)?;
    r0s.iter()
        .map(|&r0| {
            let alpha_s = tune_square_well(alpha, r0, theta_star, k0)?;
            fit_after_core(PotentialSpec::CutOffPlusWell { alpha, r0, alpha_s }, k0)
        })
        .collect()
}

/// Mean change of the fitted `theta` (mod pi, unwrapped) between consecutive points.
pub fn drift_per_halving(points: &[RegularizationPoint]) -> Option<f64> {
    let thetas: Vec<f64> = points
        .iter()
        .filter_map(|p| match p.param {
            ExtParam::Theta(t) => Some(t),
            _ => None,
        })
        .collect();
    if thetas.len() < 2 || thetas.len() != points.len() {
        return None;
    }
    let mut total = 0.0;
    for w in thetas.windows(2) {
        let d = reduce_mod_pi(w[1] - w[0] + 0.5 * PI) - 0.5 * PI;
        total += d;
    }
    Some(total / (thetas.len() - 1) as f64)
}
