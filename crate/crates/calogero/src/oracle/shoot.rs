//! Taylor-series integration of `x^2 u'' = (alpha - W x^2) u`, seeded near the origin
//! by Frobenius series.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::extensions::{ExtParam, ExtendedReal, ExtensionSpec, Region};
use crate::transform::{Domain, GridFunction};
use crate::{Error, Result};

const C0: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Seed {
    /// `x^{1/2 + nu} (1 + O(x^2))`
    Branch(Complex64),
    /// solution whose leading asymptote is the one selected by the extension
    Extension(ExtensionSpec),
    /// explicit value and derivative at the start point
    Values(Complex64, Complex64),
}

/// Values and derivatives of a shot at its output nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Shot {
    pub nodes: Vec<f64>,
    pub u: Vec<Complex64>,
    pub du: Vec<Complex64>,
}

impl Shot {
    /// Samples with trapezoid weights (nodes must be ascending).
    pub fn grid_function(&self) -> Result<GridFunction> {
        let n = self.nodes.len();
        let mut w = vec![0.0; n];
        for i in 0..n.saturating_sub(1) {
            let h = 0.5 * (self.nodes[i + 1] - self.nodes[i]);
            w[i] += h;
            w[i + 1] += h;
        }
        GridFunction::new(self.nodes.clone(), self.u.clone(), w, Domain::XSpace)
    }

    pub fn wronskian_with(&self, other: &Shot) -> Vec<Complex64> {
        self.u
            .iter()
            .zip(&self.du)
            .zip(other.u.iter().zip(&other.du))
            .map(|((a, da), (b, db))| a * db - da * b)
            .collect()
    }
}

/// Tail `sum_{j>=1} c_j x^{2j}` of the Frobenius factor with `c_j = -W c_{j-1} / (4 j (j + nu))`,
/// and its derivative.
pub(crate) fn branch_tail(nu: Complex64, w: Complex64, x: f64) -> Result<(Complex64, Complex64)> {
    let (mut f, mut df) = (C0, C0);
    let mut c = Complex64::new(1.0, 0.0);
    let x2 = x * x;
    let mut p = 1.0;
    for j in 1..200 {
        let jf = j as f64;
        let den = 4.0 * jf * (jf + nu);
        if den.norm() == 0.0 {
            return Err(Error::Domain(format!(
                "Frobenius branch with nu = {nu} is not defined"
            )));
        }
        c *= -w / den;
        p *= x2;
        let t = c * p;
        f += t;
        df += 2.0 * jf * t / x;
        if t.norm() < 1e-18 * (1.0 + f.norm()) && j > 2 {
            break;
        }
    }
    Ok((f, df))
}

/// `x^{1/2+nu} (1 + tail)` and its derivative.
fn branch(nu: Complex64, w: Complex64, x: f64) -> Result<(Complex64, Complex64)> {
    let (t, dt) = branch_tail(nu, w, x)?;
    let f = 1.0 + t;
    let a = nu + 0.5;
    let lead = (a * x.ln()).exp();
    Ok((lead * f, lead * (a / x * f + dt)))
}

/// Power-series parts of the zero-order logarithmic solution `x^{1/2}(F ln x + G)`:
/// returns `(F - 1, F', G, G')`.
pub(crate) fn log_parts(w: Complex64, x: f64) -> (Complex64, Complex64, Complex64, Complex64) {
    let (mut f, mut df, mut g, mut dg) = (C0, C0, C0, C0);
    let (mut c, mut e) = (Complex64::new(1.0, 0.0), C0);
    let x2 = x * x;
    let mut p = 1.0;
    for j in 1..200 {
        let jf = j as f64;
        c *= -w / (4.0 * jf * jf);
        e = -(w * e + 4.0 * jf * c) / (4.0 * jf * jf);
        p *= x2;
        f += c * p;
        df += 2.0 * jf * c * p / x;
        g += e * p;
        dg += 2.0 * jf * e * p / x;
        if (c * p).norm() + (e * p).norm() < 1e-18 && j > 2 {
            break;
        }
    }
    (f, df, g, dg)
}

/// Logarithmic branch `x^{1/2}(F ln x + G)` at zero order.
fn log_branch(w: Complex64, x: f64) -> (Complex64, Complex64) {
    let (ft, df, g, dg) = log_parts(w, x);
    let f = 1.0 + ft;
    let (l, s) = (x.ln(), x.sqrt());
    let phi = f * l + g;
    let dphi = df * l + f / x + dg;
    (s * phi, 0.5 / s * phi + s * dphi)
}

/// Value and derivative at `x` of the seed solution.
pub fn frobenius(alpha: f64, w: Complex64, seed: Seed, x: f64) -> Result<(Complex64, Complex64)> {
    match seed {
        Seed::Values(u, du) => Ok((u, du)),
        Seed::Branch(nu) => branch(nu, w, x),
        Seed::Extension(spec) => {
            if (spec.regime.alpha - alpha).abs() > 0.0 {
                return Err(Error::Argument(
                    "seed extension has a different coupling".into(),
                ));
            }
            let k0 = spec.k0;
            let c = |v: f64| Complex64::new(v, 0.0);
            match (spec.region(), spec.param) {
                (Region::R1, _) => branch(c(spec.kappa()), w, x),
                (Region::R2, ExtParam::Lambda(ExtendedReal::Finite(l))) => {
                    let k = spec.kappa();
                    let (a, da) = branch(c(k), w, x)?;
                    let (b, db) = branch(c(-k), w, x)?;
                    let (pa, pb) = (k0.powf(0.5 + k), l * k0.powf(0.5 - k));
                    Ok((pa * a + pb * b, pa * da + pb * db))
                }
                (Region::R2, _) => {
                    let k = spec.kappa();
                    let (b, db) = branch(c(-k), w, x)?;
                    let p = k0.powf(0.5 - k);
                    Ok((p * b, p * db))
                }
                (Region::R3, ExtParam::Lambda(ExtendedReal::Finite(l))) => {
                    // x^{1/2} (lambda + ln(k0 x)) leading
                    let (f, df) = branch(c(0.0), w, x)?;
                    let (g, dg) = log_branch(w, x);
                    let m = l + k0.ln();
                    Ok((g + m * f, dg + m * df))
                }
                (Region::R3, _) => branch(c(0.0), w, x),
                (Region::R4, ExtParam::Theta(t)) => {
                    // x^{1/2} cos(sigma ln(k0 x) + theta) leading
                    let sg = spec.sigma();
                    let (a, da) = branch(Complex64::new(0.0, sg), w, x)?;
                    let (b, db) = branch(Complex64::new(0.0, -sg), w, x)?;
                    let ph = sg * k0.ln() + t;
                    let pa = 0.5 * Complex64::from_polar(1.0, ph);
                    let pb = pa.conj();
                    Ok((pa * a + pb * b, pa * da + pb * db))
                }
                _ => Err(Error::Argument(
                    "extension parameter does not match its region".into(),
                )),
            }
        }
    }
}

/// One Taylor step of length `h` from `x0`.
fn taylor_step(
    alpha: f64,
    w: Complex64,
    x0: f64,
    u0: Complex64,
    du0: Complex64,
    h: f64,
) -> (Complex64, Complex64) {
    let mut a: Vec<Complex64> = Vec::with_capacity(96);
    a.push(u0);
    a.push(du0);
    let (mut u, mut du) = (u0 + du0 * h, du0);
    let mut hp = h;
    let mut small = 0;
    let x02 = x0 * x0;
    for m in 0..400usize {
        let mf = m as f64;
        let am_1 = if m >= 1 { a[m - 1] } else { C0 };
        let am_2 = if m >= 2 { a[m - 2] } else { C0 };
        let next = (alpha * a[m]
            - w * (x02 * a[m] + 2.0 * x0 * am_1 + am_2)
            - 2.0 * x0 * (mf + 1.0) * mf * a[m + 1]
            - mf * (mf - 1.0) * a[m])
            / (x02 * (mf + 2.0) * (mf + 1.0));
        a.push(next);
        let du_term = (mf + 2.0) * next * hp;
        hp *= h;
        let u_term = next * hp;
        u += u_term;
        du += du_term;
        if u_term.norm() <= 1e-18 * u.norm().max(f64::MIN_POSITIVE)
            && du_term.norm() <= 1e-18 * du.norm().max(f64::MIN_POSITIVE)
        {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
    }
    (u, du)
}

/// Integrates from `x0` through `nodes` (monotone, all on one side of `x0`).
pub fn shoot(alpha: f64, w: Complex64, seed: Seed, x0: f64, nodes: &[f64]) -> Result<Shot> {
    if !(x0 > 0.0) || nodes.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::Argument("shooting needs positive abscissae".into()));
    }
    let (mut u, mut du) = frobenius(alpha, w, seed, x0)?;
    let scale = w.norm().sqrt();
    let mut x = x0;
    let mut out = Shot {
        nodes: nodes.to_vec(),
        u: Vec::with_capacity(nodes.len()),
        du: Vec::with_capacity(nodes.len()),
    };
    for &target in nodes {
        loop {
            let dist = target - x;
            if dist.abs() <= 1e-15 * target {
                break;
            }
            let mut h = 0.4 * x;
            if scale > 0.0 {
                h = h.min(2.0 / scale);
            }
            if h < 1e-300 {
                return Err(Error::Integration("step size underflow".into()));
            }
            let step = if dist.abs() <= h {
                dist
            } else {
                h * dist.signum()
            };
            let (nu, ndu) = taylor_step(alpha, w, x, u, du, step);
            u = nu;
            du = ndu;
            x = if dist.abs() <= h { target } else { x + step };
        }
        out.u.push(u);
        out.du.push(du);
    }
    Ok(out)
}
