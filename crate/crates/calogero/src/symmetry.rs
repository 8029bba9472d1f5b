//! Finite dilations `U(l) psi(x) = l^{-1/2} psi(x / l)` and checks of how they act on
//! the family of self-adjoint Hamiltonians.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::extensions::{
    param_convert, reduce_mod_pi, ExtParam, ExtendedReal, ExtensionSpec, Region, ScaleParam,
};
use crate::spectral::{bound_states, eigenfunction, r4_level, BoundState, Which};
use crate::transform::{Domain, GridFunction};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleAction {
    pub l: f64,
}

impl ScaleAction {
    pub fn new(l: f64) -> Result<Self> {
        if !(l > 0.0 && l.is_finite()) {
            return Err(Error::Domain(format!(
                "dilation factor must be positive, got {l}"
            )));
        }
        Ok(ScaleAction { l })
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &ScaleAction) -> ScaleAction {
        ScaleAction {
            l: self.l * first.l,
        }
    }

    pub fn apply(&self, psi: &GridFunction) -> Result<GridFunction> {
        scale_transform(psi, self.l)
    }
}

/// `U(l)`: nodes and weights stretched by `l`, values scaled by `l^{-1/2}`.
pub fn scale_transform(psi: &GridFunction, l: f64) -> Result<GridFunction> {
    ScaleAction::new(l)?;
    if psi.domain != Domain::XSpace {
        return Err(Error::Argument("dilations act on x-space functions".into()));
    }
    let s = l.sqrt().recip();
    GridFunction::new(
        psi.nodes.iter().map(|x| x * l).collect(),
        psi.values.iter().map(|v| v * s).collect(),
        psi.weights.iter().map(|w| w * l).collect(),
        Domain::XSpace,
    )
}

/// Extension reached by conjugating with `U(l)`: `U(l) H U(l)^{-1} = l^{-2} H'`.
pub fn maps_to(spec: &ExtensionSpec, l: f64) -> Result<ExtensionSpec> {
    ScaleAction::new(l)?;
    let param = match (spec.region(), spec.param) {
        (Region::R1, p) => p,
        (Region::R2, ExtParam::Lambda(ExtendedReal::Finite(v))) => {
            ExtParam::Lambda(ExtendedReal::Finite(v * l.powf(2.0 * spec.kappa())))
        }
        (Region::R3, ExtParam::Lambda(ExtendedReal::Finite(v))) => {
            ExtParam::Lambda(ExtendedReal::Finite(v - l.ln()))
        }
        (Region::R4, ExtParam::Theta(t)) => {
            ExtParam::Theta(reduce_mod_pi(t - spec.sigma() * l.ln()))
        }
        (_, p) => p,
    };
    ExtensionSpec::new(spec.regime.alpha, param, spec.k0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CovarianceReport {
    pub spec: ExtensionSpec,
    pub l: f64,
    pub maps_to: ExtensionSpec,
    /// scale parameters before and after, when the regime has one
    pub mu: Option<(ScaleParam, ScaleParam)>,
    /// sup over a standard grid of `|U(l) u_E - l^{-1} u'_{l^{-2} E}|` and of the bound-profile mismatch
    pub pointwise_residual: f64,
    /// max relative deviation of `E'_n / E_n` from `l^{-2}`
    pub level_law_residual: f64,
    /// `m` when `l = e^{pi m / sigma}` maps an R4 Hamiltonian to itself
    pub index_shift: Option<i64>,
}

/// Standard comparison grid on `(0, 20]`.
pub fn standard_grid() -> Vec<f64> {
    (1..=200).map(|i| 0.1 * i as f64).collect()
}

const SAMPLE_ENERGIES: [f64; 5] = [0.05, 0.5, 1.0, 3.7, 12.0];

fn same_up_to_sign(a: &[f64], b: &[f64]) -> f64 {
    // the sign is fixed at the sample of largest magnitude
    let i = (0..a.len())
        .max_by(|&i, &j| a[i].abs().total_cmp(&a[j].abs()))
        .unwrap_or(0);
    let s = if a.get(i).copied().unwrap_or(0.0) * b.get(i).copied().unwrap_or(0.0) < 0.0 {
        -1.0
    } else {
        1.0
    };
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - s * y).abs())
        .fold(0.0, f64::max)
}

fn window_levels(spec: &ExtensionSpec) -> Result<Vec<BoundState>> {
    bound_states(spec, Some((-3, 3)))
}

pub fn covariance_check(spec: &ExtensionSpec, l: f64) -> Result<CovarianceReport> {
    let target = maps_to(spec, l)?;
    let xs = standard_grid();
    let mut residual: f64 = 0.0;
    let sl = l.sqrt().recip();
    for &e in &SAMPLE_ENERGIES {
        // U(l) u_E sampled at x = l y; compare with l^{-1} u'_{E/l^2}(l y)
        let lhs: Vec<f64> = xs
            .iter()
            .map(|&y| eigenfunction(spec, Which::Continuum(e), y).map(|v| sl * v))
            .collect::<Result<_>>()?;
        let rhs: Vec<f64> = xs
            .iter()
            .map(|&y| eigenfunction(&target, Which::Continuum(e / (l * l)), l * y).map(|v| v / l))
            .collect::<Result<_>>()?;
        residual = residual.max(same_up_to_sign(&lhs, &rhs));
    }
    let before = window_levels(spec)?;
    let after = window_levels(&target)?;
    let mut level_res: f64 = 0.0;
    for b in &before {
        let e_new = b.energy / (l * l);
        let m = match spec.region() {
            Region::R4 => {
                // every index carries a level; take the one nearest l^{-2} E_n
                let tt = target.theta_tilde().unwrap_or(0.0);
                let sg = target.sigma();
                let c = 4.0 * target.k0 * target.k0;
                let n = ((0.5 * sg * (e_new.abs() / c).ln() - 0.5 * PI - tt) / PI).round() as i64;
                let e = r4_level(&target, n).unwrap_or(f64::NAN);
                BoundState {
                    n,
                    energy: e,
                    rho: 0.0,
                    spec: target,
                }
            }
            _ => match after.iter().min_by(|x, y| {
                (x.energy / e_new - 1.0)
                    .abs()
                    .total_cmp(&(y.energy / e_new - 1.0).abs())
            }) {
                Some(m) => *m,
                None => {
                    level_res = f64::INFINITY;
                    continue;
                }
            },
        };
        level_res = level_res.max((m.energy / e_new - 1.0).abs());
        let lhs: Vec<f64> = xs
            .iter()
            .map(|&y| b.profile(y).map(|v| sl * v))
            .collect::<Result<_>>()?;
        let rhs: Vec<f64> = xs
            .iter()
            .map(|&y| bound_profile_of(&target, m.energy, l * y))
            .collect::<Result<_>>()?;
        residual = residual.max(same_up_to_sign(&lhs, &rhs));
    }
    if before.len() != after.len() && spec.region() != Region::R4 {
        level_res = f64::INFINITY;
    }
    let mu = match spec.region() {
        Region::R1 => None,
        _ => Some((param_convert(spec)?, param_convert(&target)?)),
    };
    let index_shift = match spec.region() {
        Region::R4 => {
            let m = spec.sigma() * l.ln() / PI;
            ((m - m.round()).abs() < 1e-12).then(|| m.round() as i64)
        }
        _ => None,
    };
    Ok(CovarianceReport {
        spec: *spec,
        l,
        maps_to: target,
        mu,
        pointwise_residual: residual,
        level_law_residual: level_res,
        index_shift,
    })
}

fn bound_profile_of(spec: &ExtensionSpec, e: f64, x: f64) -> Result<f64> {
    BoundState {
        n: 0,
        energy: e,
        rho: 0.0,
        spec: *spec,
    }
    .profile(x)
}

/// Smallest relative distance between level sets of two R4 Hamiltonians over a window,
/// measured in `ln |E|`; zero when the spectra coincide.
pub fn level_set_mismatch(a: &ExtensionSpec, b: &ExtensionSpec, window: (i64, i64)) -> Result<f64> {
    let ea = bound_states(a, Some(window))?;
    let eb = bound_states(b, Some((window.0 - 1, window.1 + 1)))?;
    let mut worst: f64 = 0.0;
    for x in &ea {
        let d = eb
            .iter()
            .map(|y| (x.energy.abs().ln() - y.energy.abs().ln()).abs())
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(d);
    }
    Ok(worst)
}

/// Smallest pairwise distance in `ln |E|` between the two level sets.
pub fn min_level_distance(a: &ExtensionSpec, b: &ExtensionSpec, window: (i64, i64)) -> Result<f64> {
    let ea = bound_states(a, Some(window))?;
    let eb = bound_states(b, Some(window))?;
    let mut best = f64::INFINITY;
    for x in &ea {
        for y in &eb {
            best = best.min((x.energy.abs().ln() - y.energy.abs().ln()).abs());
        }
    }
    Ok(best)
}
