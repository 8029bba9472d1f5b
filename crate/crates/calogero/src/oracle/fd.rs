//! Three-point finite differences on a grid uniform in `t = ln x`.
//!
//! With `psi = x^{1/2} phi(t)` the radial equation becomes
//! `-phi'' + (x^2 V + 1/4) phi = E x^2 phi`, a symmetric tridiagonal pencil.

use serde::{Deserialize, Serialize};

use super::shoot::{branch_tail, log_parts};
use super::PotentialSpec;
use crate::extensions::{boundary_asymptote, ExtParam, ExtendedReal, ExtensionSpec, Region};
use crate::{Error, Result};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LeftBc {
    Dirichlet,
    /// `psi'/psi` at the left node taken from the leading asymptote of the extension
    RobinFromAsymptote(ExtensionSpec),
    /// Ghost value from the boundary solution of the extension at a trial energy: the leading
    /// asymptote is carried by the exact discrete modes of the three-point scheme, its
    /// Frobenius corrections are added in the continuum. Needs the exact potential.
    BoundarySolution(ExtensionSpec, f64),
}

/// `phi(t0 - h) / phi(t0)` for the boundary solution in `phi = x^{-1/2} psi`, `t0 = ln eps`.
fn ghost_ratio(spec: &ExtensionSpec, e: f64, eps: f64, h: f64) -> Result<f64> {
    let w = Complex64::new(e, 0.0);
    let k0 = spec.k0;
    let t0 = eps.ln();
    let xm = eps * (-h).exp();
    let one = Complex64::new(1.0, 0.0);
    // leading-mode amplitudes at t0 for exponents +nu, -nu and discrete step factors
    let pair = |nu: Complex64, c1: Complex64, c2: Complex64| -> Result<(Complex64, Complex64)> {
        // cosh(nu_d h) = 1 + nu^2 h^2 / 2
        let nud = (one + nu * nu * (h * h) * 0.5).acosh() / h;
        let a = c1 * (nu * t0).exp();
        let b = c2 * (-nu * t0).exp();
        let (tp0, _) = branch_tail(nu, w, eps)?;
        let (tm0, _) = branch_tail(-nu, w, eps)?;
        let (tp1, _) = branch_tail(nu, w, xm)?;
        let (tm1, _) = branch_tail(-nu, w, xm)?;
        let at0 = a + b + a * tp0 + b * tm0;
        let a1 = a * (-nud * h).exp();
        let b1 = b * (nud * h).exp();
        let c_1 = c1 * (nu * (t0 - h)).exp() * tp1 + c2 * (-nu * (t0 - h)).exp() * tm1;
        Ok((at0, a1 + b1 + c_1))
    };
    let (v0, v1) = match (spec.region(), spec.param) {
        (Region::R1, _) => pair(
            Complex64::new(spec.kappa(), 0.0),
            one,
            Complex64::new(0.0, 0.0),
        )?,
        (Region::R2, ExtParam::Lambda(ExtendedReal::Finite(l))) => {
            let k = spec.kappa();
            pair(
                Complex64::new(k, 0.0),
                Complex64::new(k0.powf(0.5 + k), 0.0),
                Complex64::new(l * k0.powf(0.5 - k), 0.0),
            )?
        }
        (Region::R2, _) => pair(
            Complex64::new(spec.kappa(), 0.0),
            Complex64::new(0.0, 0.0),
            one,
        )?,
        (Region::R4, ExtParam::Theta(t)) => {
            let sg = spec.sigma();
            let c1 = 0.5 * Complex64::from_polar(1.0, sg * k0.ln() + t);
            pair(Complex64::new(0.0, sg), c1, c1.conj())?
        }
        (Region::R3, p) => {
            // phi = m F + (F ln x + G), or F alone at infinite lambda; linear in t is exact on the grid
            let (f0, _, g0, _) = log_parts(w, eps);
            let (f1, _, g1, _) = log_parts(w, xm);
            match p {
                ExtParam::Lambda(ExtendedReal::Finite(l)) => {
                    let m = l + k0.ln();
                    let lead0 = m + t0;
                    let lead1 = m + t0 - h;
                    (lead0 + f0 * lead0 + g0, lead1 + f1 * lead1 + g1)
                }
                _ => (one + f0, one + f1),
            }
        }
        _ => {
            return Err(Error::Argument(
                "extension parameter does not match its region".into(),
            ))
        }
    };
    if v0.norm() <= 1e-10 * v1.norm() {
        return Err(Error::IllConditioned(
            "boundary solution nearly vanishes at the left node".into(),
        ));
    }
    Ok((v1 / v0).re)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscretizedProblem {
    pub potential: PotentialSpec,
    pub eps: f64,
    pub x_max: f64,
    /// number of grid nodes including both ends
    pub n: usize,
    pub left: LeftBc,
}

/// `A - lambda B` with `A` symmetric tridiagonal and `B` diagonal positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Pencil {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
    pub mass: Vec<f64>,
}

impl Pencil {
    /// Number of eigenvalues below `lambda` (negative pivots of `A - lambda B`).
    pub fn count_below(&self, lambda: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for i in 0..self.diag.len() {
            let e2 = if i == 0 {
                0.0
            } else {
                self.off[i - 1] * self.off[i - 1]
            };
            d = self.diag[i] - lambda * self.mass[i] - if i == 0 { 0.0 } else { e2 / d };
            if d == 0.0 {
                d = -f64::MIN_POSITIVE;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// The `j`-th eigenvalue (0-based) inside `[lo, hi]`, given `count_below(lo) <= j < count_below(hi)`.
    fn bisect(&self, j: usize, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || (hi - lo) <= 1e-15 * mid.abs().max(f64::MIN_POSITIVE) {
                break;
            }
            if self.count_below(mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

impl DiscretizedProblem {
    pub fn new(
        potential: PotentialSpec,
        eps: f64,
        x_max: f64,
        n: usize,
        left: LeftBc,
    ) -> Result<Self> {
        potential.validate()?;
        if !(eps > 0.0 && x_max > eps && n >= 4) {
            return Err(Error::Argument(
                "need 0 < eps < x_max and at least 4 nodes".into(),
            ));
        }
        Ok(DiscretizedProblem {
            potential,
            eps,
            x_max,
            n,
            left,
        })
    }

    /// Step in `ln x`.
    pub fn step(&self) -> f64 {
        (self.x_max / self.eps).ln() / (self.n - 1) as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        let (t0, h) = (self.eps.ln(), self.step());
        (0..self.n).map(|i| (t0 + h * i as f64).exp()).collect()
    }

    pub fn pencil(&self) -> Result<Pencil> {
        let h = self.step();
        let xs = self.nodes();
        let q: Vec<f64> = xs
            .iter()
            .map(|&x| x * x * self.potential.value(x) + 0.25)
            .collect();
        let qmax = q.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if h * h * qmax >= 1.0 {
            return Err(Error::Argument(format!(
                "grid too coarse: h^2 max|q| = {}",
                h * h * qmax
            )));
        }
        let ih2 = 1.0 / (h * h);
        // interior unknowns 1..n-2; the right end is Dirichlet
        let (first, mut diag, mut mass) = match self.left {
            LeftBc::Dirichlet => (1, Vec::new(), Vec::new()),
            LeftBc::BoundarySolution(spec, e) => {
                if self.potential != PotentialSpec::Exact(spec.regime.alpha) {
                    return Err(Error::Argument(
                        "boundary-solution ghost needs the exact potential of the extension".into(),
                    ));
                }
                let rho = ghost_ratio(&spec, e, self.eps, h)?;
                (0, vec![(2.0 - rho) * ih2 + q[0]], vec![xs[0] * xs[0]])
            }
            LeftBc::RobinFromAsymptote(spec) => {
                let (v, d) = boundary_asymptote(&spec, Complex64::new(1.0, 0.0), self.eps);
                if v.norm() <= 1e-8 * d.norm() * self.eps {
                    return Err(Error::IllConditioned(
                        "asymptote nearly vanishes at the left node".into(),
                    ));
                }
                let g = self.eps * (d / v).re - 0.5;
                // ghost node eliminated, row halved to keep the pencil symmetric
                (
                    0,
                    vec![(1.0 + h * g) * ih2 + 0.5 * q[0]],
                    vec![0.5 * xs[0] * xs[0]],
                )
            }
        };
        for i in first.max(1)..self.n - 1 {
            diag.push(2.0 * ih2 + q[i]);
            mass.push(xs[i] * xs[i]);
        }
        let off = vec![-ih2; diag.len() - 1];
        Ok(Pencil { diag, off, mass })
    }
}

fn lower_bound(p: &Pencil) -> f64 {
    let mut lo = -1.0;
    while p.count_below(lo) > 0 {
        lo *= 4.0;
        if !lo.is_finite() {
            break;
        }
    }
    lo
}

/// The `k` lowest eigenvalues, ascending, by Sturm bisection.
pub fn fd_eigen(problem: &DiscretizedProblem, k: usize) -> Result<Vec<f64>> {
    let p = problem.pencil()?;
    if k > p.len() {
        return Err(Error::Argument(format!(
            "asked for {k} eigenvalues of a {}-point problem",
            p.len()
        )));
    }
    let lo = lower_bound(&p);
    let mut hi = 1.0;
    while p.count_below(hi) < k {
        hi *= 4.0;
    }
    Ok((0..k).map(|j| p.bisect(j, lo, hi)).collect())
}

/// All eigenvalues in `[lo, hi)`, ascending.
pub fn fd_eigen_in(problem: &DiscretizedProblem, lo: f64, hi: f64) -> Result<Vec<f64>> {
    if !(hi > lo) {
        return Err(Error::Argument("empty interval".into()));
    }
    let p = problem.pencil()?;
    let (a, b) = (p.count_below(lo), p.count_below(hi));
    Ok((a..b).map(|j| p.bisect(j, lo, hi)).collect())
}

/// Self-consistent level with the boundary-solution ghost: starting from `e_start`, re-solve
/// with the ghost taken at the current eigenvalue until it settles.
pub fn refine_level(problem: &DiscretizedProblem, e_start: f64) -> Result<f64> {
    let spec = match problem.left {
        LeftBc::RobinFromAsymptote(s) | LeftBc::BoundarySolution(s, _) => s,
        LeftBc::Dirichlet => {
            return Err(Error::Argument(
                "refinement needs an extension boundary condition".into(),
            ))
        }
    };
    let mut e = e_start;
    for _ in 0..50 {
        let p = DiscretizedProblem {
            left: LeftBc::BoundarySolution(spec, e),
            ..*problem
        };
        let (lo, hi) = if e < 0.0 {
            (2.0 * e, 0.5 * e)
        } else {
            (0.5 * e - 1.0, 2.0 * e + 1.0)
        };
        let found = fd_eigen_in(&p, lo, hi)?;
        let next = found
            .iter()
            .copied()
            .min_by(|a, b| (a - e).abs().total_cmp(&(b - e).abs()))
            .ok_or_else(|| Error::Integration(format!("no discrete level near {e}")))?;
        let done = (next - e).abs() <= 1e-13 * e.abs();
        e = next;
        if done {
            return Ok(e);
        }
    }
    Ok(e)
}
