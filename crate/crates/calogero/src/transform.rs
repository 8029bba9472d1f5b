//! Eigenfunction-expansion transforms.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::extensions::{ExtensionSpec, Region};
use crate::quad;
use crate::spectral::{bound_states, BoundState, ContinuumKernel};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Domain {
    XSpace,
    ESpace,
}

/// Sampled function with quadrature weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    pub nodes: Vec<f64>,
    pub values: Vec<Complex64>,
    pub weights: Vec<f64>,
    pub domain: Domain,
}

impl GridFunction {
    pub fn new(
        nodes: Vec<f64>,
        values: Vec<Complex64>,
        weights: Vec<f64>,
        domain: Domain,
    ) -> Result<Self> {
        if nodes.len() != values.len() || nodes.len() != weights.len() {
            return Err(Error::Argument("grid lengths differ".into()));
        }
        if nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Argument(
                "grid nodes must be strictly ascending".into(),
            ));
        }
        if weights.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::Argument(
                "quadrature weights must be positive".into(),
            ));
        }
        Ok(GridFunction {
            nodes,
            values,
            weights,
            domain,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Composite Gauss–Legendre grid on `(0, x_max]`: geometric panels (about 4.3 per decade)
/// from `x_max * 1e-14` to 1, then uniform panels of width at most `panel`. The deep start
/// keeps the `x^{1-2 kappa}` densities of R2 bound states accurate near the origin.
pub fn x_grid(x_max: f64, panel: f64, order: usize) -> Result<GridFunction> {
    if !(x_max > 1.0 && panel > 0.0 && order > 0) {
        return Err(Error::Argument(
            "x grid needs x_max > 1, panel > 0 and order > 0".into(),
        ));
    }
    let start = x_max * 1e-14;
    let count = (4.3 * (1.0 / start).log10()).ceil() as usize;
    let mut breaks = quad::geometric_breaks(start, 1.0, count);
    let n = ((x_max - 1.0) / panel).ceil() as usize;
    breaks.extend(quad::linear_breaks(1.0, x_max, n).into_iter().skip(1));
    let (x, w) = quad::panels(&breaks, order);
    let zeros = vec![Complex64::new(0.0, 0.0); x.len()];
    GridFunction::new(x, zeros, w, Domain::XSpace)
}

/// Energy grid on `[0, e_max]` built in `k = sqrt(E)`: geometric panels on `[k_lo, k_mid]`
/// followed by uniform panels no wider than `dk`. Weights are for `dE`.
pub fn e_grid(k_lo: f64, k_mid: f64, e_max: f64, dk: f64, order: usize) -> Result<GridFunction> {
    let k_max = e_max.sqrt();
    if !(k_lo > 0.0 && k_mid > k_lo && k_max > k_mid && dk > 0.0 && order > 0) {
        return Err(Error::Argument(
            "energy grid needs 0 < k_lo < k_mid < sqrt(e_max)".into(),
        ));
    }
    let decades = (k_mid / k_lo).log10().ceil() as usize;
    let mut breaks = quad::geometric_breaks(k_lo, k_mid, 3 * decades.max(1));
    let n = ((k_max - k_mid) / dk).ceil() as usize;
    breaks.extend(quad::linear_breaks(k_mid, k_max, n).into_iter().skip(1));
    let (k, wk) = quad::panels(&breaks, order);
    let e: Vec<f64> = k.iter().map(|k| k * k).collect();
    let w: Vec<f64> = k.iter().zip(&wk).map(|(k, w)| 2.0 * k * w).collect();
    let zeros = vec![Complex64::new(0.0, 0.0); e.len()];
    GridFunction::new(e, zeros, w, Domain::ESpace)
}

/// Default largest energy, in units of `k0^2`.
pub const DEFAULT_E_MAX: f64 = 1600.0;

/// Energy grid up to `e_max` with panels in `k` no wider than a half-period of `cos(k X)`;
/// the geometric part ends at `k = pi / X`.
pub fn default_e_grid(k0: f64, x_max: f64, e_max: f64) -> Result<GridFunction> {
    let dk = PI / x_max;
    e_grid(1e-5 * k0, dk, e_max, dk, 6)
}

/// Samples `f` on the nodes of `grid`.
pub fn sample<F: Fn(f64) -> f64>(grid: &GridFunction, f: F) -> GridFunction {
    let values = grid
        .nodes
        .iter()
        .map(|&x| Complex64::new(f(x), 0.0))
        .collect();
    GridFunction {
        values,
        ..grid.clone()
    }
}

/// Window of R4 level indices with `|E_n|` in `[e_lo, e_hi]`.
pub fn r4_window(spec: &ExtensionSpec, e_lo: f64, e_hi: f64) -> Option<(i64, i64)> {
    let tt = spec.theta_tilde()?;
    let sg = spec.sigma();
    let c = 4.0 * spec.k0 * spec.k0;
    // |E_n| = c exp(2(pi/2 + tt + pi n)/sigma)
    let n_of = |e: f64| (0.5 * sg * (e / c).ln() - 0.5 * PI - tt) / PI;
    let lo = n_of(e_lo).ceil() as i64;
    let hi = n_of(e_hi).floor() as i64;
    Some((lo, hi))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformResult {
    pub spec: ExtensionSpec,
    pub phi_n: Vec<Complex64>,
    pub bound: Vec<BoundState>,
    pub phi_c: GridFunction,
    pub parseval_lhs: f64,
    pub parseval_rhs: f64,
    /// right end of the x grid
    pub x_max: f64,
    /// largest energy node
    pub e_max: f64,
}

/// Eigenfunction tables on fixed x and E grids, reusable across input functions.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub spec: ExtensionSpec,
    pub x: GridFunction,
    pub e: GridFunction,
    pub bound: Vec<BoundState>,
    /// `continuum[i * nx + j] = u_{E_i}(x_j)`
    continuum: Vec<f64>,
    /// `discrete[n * nx + j] = u_n(x_j)`
    discrete: Vec<f64>,
}

impl Expansion {
    /// `window` selects R4 levels; when `None` in R4 the levels with `|E|` between
    /// `1e-8 k0^2` and 100 times the top of the energy grid are kept. Levels just past the
    /// continuum cutoff still carry weight, and their profiles are cheap on the log x grid.
    pub fn new(
        spec: &ExtensionSpec,
        x: &GridFunction,
        e: &GridFunction,
        window: Option<(i64, i64)>,
    ) -> Result<Self> {
        if x.domain != Domain::XSpace || e.domain != Domain::ESpace {
            return Err(Error::Argument(
                "grid domains must be XSpace and ESpace".into(),
            ));
        }
        let window = match (spec.region(), window) {
            (Region::R4, None) => {
                let top = e.nodes.last().copied().unwrap_or(1.0);
                r4_window(spec, 1e-8 * spec.k0 * spec.k0, 100.0 * top)
            }
            (_, w) => w,
        };
        let bound = match (spec.region(), window) {
            (Region::R4, Some((lo, hi))) if lo > hi => vec![],
            _ => bound_states(spec, window)?,
        };
        let nx = x.len();
        let rows: Vec<Result<Vec<f64>>> = e
            .nodes
            .par_iter()
            .map(|&en| {
                let k = ContinuumKernel::new(spec, en)?;
                x.nodes.iter().map(|&xj| k.eval(xj)).collect()
            })
            .collect();
        let mut continuum = Vec::with_capacity(e.len() * nx);
        for r in rows {
            continuum.extend(r?);
        }
        let mut discrete = Vec::with_capacity(bound.len() * nx);
        for b in &bound {
            for &xj in &x.nodes {
                discrete.push(b.profile(xj)?);
            }
        }
        Ok(Expansion {
            spec: *spec,
            x: x.clone(),
            e: e.clone(),
            bound,
            continuum,
            discrete,
        })
    }

    fn check(&self, psi: &GridFunction) -> Result<()> {
        if psi.domain != Domain::XSpace || psi.nodes != self.x.nodes {
            return Err(Error::Argument(
                "function is not sampled on the expansion grid".into(),
            ));
        }
        if psi
            .values
            .iter()
            .any(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(Error::Input("function has non-finite samples".into()));
        }
        Ok(())
    }

    pub fn forward(&self, psi: &GridFunction) -> Result<TransformResult> {
        self.check(psi)?;
        let nx = self.x.len();
        let wpsi: Vec<Complex64> = psi
            .values
            .iter()
            .zip(&self.x.weights)
            .map(|(v, w)| v * w)
            .collect();
        let project =
            |row: &[f64]| -> Complex64 { row.iter().zip(&wpsi).map(|(u, v)| v * u).sum() };
        let phi_n: Vec<Complex64> = self.discrete.chunks(nx).map(project).collect();
        let phi: Vec<Complex64> = self.continuum.par_chunks(nx).map(project).collect();
        let lhs: f64 = psi
            .values
            .iter()
            .zip(&self.x.weights)
            .map(|(v, w)| w * v.norm_sqr())
            .sum();
        let rhs = phi_n.iter().map(|p| p.norm_sqr()).sum::<f64>()
            + phi
                .iter()
                .zip(&self.e.weights)
                .map(|(p, w)| w * p.norm_sqr())
                .sum::<f64>();
        Ok(TransformResult {
            spec: self.spec,
            phi_n,
            bound: self.bound.clone(),
            phi_c: GridFunction {
                values: phi,
                ..self.e.clone()
            },
            parseval_lhs: lhs,
            parseval_rhs: rhs,
            x_max: self.x.nodes.last().copied().unwrap_or(0.0),
            e_max: self.e.nodes.last().copied().unwrap_or(0.0),
        })
    }

    /// Reconstruction on the expansion's x grid.
    pub fn inverse(&self, coeffs: &TransformResult) -> Result<GridFunction> {
        if coeffs.spec != self.spec
            || coeffs.phi_c.nodes != self.e.nodes
            || coeffs.phi_n.len() != self.bound.len()
        {
            return Err(Error::Argument(
                "coefficients do not match the expansion grids".into(),
            ));
        }
        let nx = self.x.len();
        let mut out = vec![Complex64::new(0.0, 0.0); nx];
        for (c, row) in coeffs.phi_n.iter().zip(self.discrete.chunks(nx)) {
            for (o, u) in out.iter_mut().zip(row) {
                *o += c * u;
            }
        }
        let scaled: Vec<Complex64> = coeffs
            .phi_c
            .values
            .iter()
            .zip(&self.e.weights)
            .map(|(p, w)| p * w)
            .collect();
        for (c, row) in scaled.iter().zip(self.continuum.chunks(nx)) {
            for (o, u) in out.iter_mut().zip(row) {
                *o += c * u;
            }
        }
        Ok(GridFunction {
            values: out,
            ..self.x.clone()
        })
    }
}

pub fn forward(
    psi: &GridFunction,
    spec: &ExtensionSpec,
    e_grid: &GridFunction,
    window: Option<(i64, i64)>,
) -> Result<TransformResult> {
    Expansion::new(spec, psi, e_grid, window)?.forward(psi)
}

/// Reconstruction on an arbitrary set of x nodes.
pub fn inverse(
    coeffs: &TransformResult,
    spec: &ExtensionSpec,
    x_grid: &GridFunction,
) -> Result<GridFunction> {
    if coeffs.spec != *spec || coeffs.phi_n.len() != coeffs.bound.len() {
        return Err(Error::Argument(
            "coefficients were produced for a different extension".into(),
        ));
    }
    let e = &coeffs.phi_c;
    let kernels: Vec<ContinuumKernel> = e
        .nodes
        .iter()
        .map(|&en| ContinuumKernel::new(spec, en))
        .collect::<Result<_>>()?;
    let values: Vec<Result<Complex64>> = x_grid
        .nodes
        .par_iter()
        .map(|&x| {
            let mut s = Complex64::new(0.0, 0.0);
            for (c, b) in coeffs.phi_n.iter().zip(&coeffs.bound) {
                s += c * b.profile(x)?;
            }
            for ((p, w), k) in e.values.iter().zip(&e.weights).zip(&kernels) {
                s += p * w * k.eval(x)?;
            }
            Ok(s)
        })
        .collect();
    let values = values.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(GridFunction {
        values,
        ..x_grid.clone()
    })
}

/// `|‖ψ‖² − Σ|φₙ|² − ∫|φ|² dE| / ‖ψ‖²`
pub fn parseval_residual(psi: &GridFunction, coeffs: &TransformResult) -> Result<f64> {
    let norm = l2_norm_sqr(psi);
    if !(norm > 0.0) {
        return Err(Error::Degenerate(
            "zero function has no Parseval ratio".into(),
        ));
    }
    Ok((norm - coeffs.parseval_rhs).abs() / norm)
}

pub fn l2_norm_sqr(f: &GridFunction) -> f64 {
    f.values
        .iter()
        .zip(&f.weights)
        .map(|(v, w)| w * v.norm_sqr())
        .sum()
}

/// Relative discrete L² distance between two functions on the same grid.
pub fn relative_l2_error(a: &GridFunction, b: &GridFunction) -> Result<f64> {
    if a.nodes != b.nodes {
        return Err(Error::Argument("grids differ".into()));
    }
    let num: f64 = a
        .values
        .iter()
        .zip(&b.values)
        .zip(&a.weights)
        .map(|((x, y), w)| w * (x - y).norm_sqr())
        .sum();
    let den = l2_norm_sqr(a);
    if !(den > 0.0) {
        return Err(Error::Degenerate("reference function is zero".into()));
    }
    Ok((num / den).sqrt())
}
