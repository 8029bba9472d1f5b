//! Independent numerical ground truth: a finite-difference eigensolver, a Taylor-series
//! shooting integrator and the cut-off regularization experiments.

pub mod fd;
pub mod regularize;
pub mod shoot;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use fd::{fd_eigen, fd_eigen_in, refine_level, DiscretizedProblem, LeftBc, Pencil};
pub use regularize::{
    drift_per_halving, fit_after_core, regularization_experiment, square_well_experiment,
    tune_square_well, RegularizationPoint,
};
pub use shoot::{frobenius, shoot, Seed, Shot};

/// Potential for the oracle problems.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PotentialSpec {
    Exact(f64),
    /// `alpha / x^2` outside `r0`, `alpha / r0^2` inside
    CutOff {
        alpha: f64,
        r0: f64,
    },
    /// `alpha / x^2` outside `r0`, `-alpha_s / r0^2` inside
    CutOffPlusWell {
        alpha: f64,
        r0: f64,
        alpha_s: f64,
    },
}

impl PotentialSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PotentialSpec::Exact(a) if a.is_finite() => Ok(()),
            PotentialSpec::CutOff { alpha, r0 } if alpha.is_finite() && r0 > 0.0 => Ok(()),
            PotentialSpec::CutOffPlusWell { alpha, r0, alpha_s }
                if alpha.is_finite() && alpha_s.is_finite() && r0 > 0.0 =>
            {
                Ok(())
            }
            _ => Err(Error::Argument(format!("invalid potential {self:?}"))),
        }
    }

    pub fn alpha(&self) -> f64 {
        match *self {
            PotentialSpec::Exact(a)
            | PotentialSpec::CutOff { alpha: a, .. }
            | PotentialSpec::CutOffPlusWell { alpha: a, .. } => a,
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        match *self {
            PotentialSpec::Exact(a) => a / (x * x),
            PotentialSpec::CutOff { alpha, r0 } => alpha / (x.max(r0) * x.max(r0)),
            PotentialSpec::CutOffPlusWell { alpha, r0, alpha_s } => {
                if x < r0 {
                    -alpha_s / (r0 * r0)
                } else {
                    alpha / (x * x)
                }
            }
        }
    }
}
