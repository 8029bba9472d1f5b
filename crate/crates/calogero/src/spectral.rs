//! Spectra, Weyl-type omega functions, normalized eigenfunctions and spectral
//! densities for every self-adjoint extension.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::extensions::{ExtParam, ExtendedReal, ExtensionSpec, Region};
use crate::specialfn::{
    bessel_j_nu, bessel_k, hankel1_integer, hankel1_nu, neumann0_nu, Order, EULER_GAMMA,
};
use crate::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Default level window for R4.
pub const DEFAULT_WINDOW: (i64, i64) = (-5, 5);

/// `sqrt(W)` on the branch with `arg` in `[0, pi]`; `W = E < 0` on the real axis
/// is read as `E + i0` and gives `i sqrt|E|`.
pub fn beta(w: Complex64) -> Complex64 {
    if w.im == 0.0 {
        if w.re < 0.0 {
            return Complex64::new(0.0, (-w.re).sqrt());
        }
        return Complex64::new(w.re.sqrt(), 0.0);
    }
    let b = w.sqrt();
    if b.im < 0.0 {
        -b
    } else {
        b
    }
}

fn cpow(base: Complex64, p: Complex64) -> Complex64 {
    (p * base.ln()).exp()
}

/// The solutions `u`, `u_tilde`, `v` at a fixed spectral parameter `W`, with their
/// Wronskian constants `omega = -Wr(u, v)` and `omega_tilde = -Wr(u, u_tilde)`.
#[derive(Debug, Clone, Copy)]
pub struct FundamentalTriple {
    pub spec: ExtensionSpec,
    pub w: Complex64,
    pub beta: Complex64,
    /// `beta / 2k0`
    scaled: Complex64,
}

impl FundamentalTriple {
    fn s(&self, x: f64) -> f64 {
        x.sqrt()
    }

    fn z(&self, x: f64) -> Complex64 {
        self.beta * x
    }

    fn kappa_c(&self) -> Complex64 {
        match self.spec.region() {
            Region::R4 => Complex64::new(0.0, self.spec.sigma()),
            _ => Complex64::new(self.spec.kappa(), 0.0),
        }
    }

    /// `(beta/2k0)^{-nu} x^{1/2} J_nu(beta x)`
    pub fn u1(&self, x: f64) -> Result<Complex64> {
        let nu = self.kappa_c();
        Ok(cpow(self.scaled, -nu) * self.s(x) * bessel_j_nu(nu, self.z(x))?)
    }

    /// `(beta/2k0)^{nu} x^{1/2} J_{-nu}(beta x)`
    pub fn u2(&self, x: f64) -> Result<Complex64> {
        let nu = self.kappa_c();
        Ok(cpow(self.scaled, nu) * self.s(x) * bessel_j_nu(-nu, self.z(x))?)
    }

    /// `x^{1/2} [J0 ln(k0 x) - R0]` written through N0.
    fn u3(&self, x: f64) -> Result<Complex64> {
        let z = self.z(x);
        let j0 = bessel_j_nu(Complex64::new(0.0, 0.0), z)?;
        let n0 = neumann0_nu(z)?;
        Ok(self.s(x) * (0.5 * PI * n0 - (self.scaled.ln() + EULER_GAMMA) * j0))
    }

    fn lambda(&self) -> ExtendedReal {
        self.spec.lambda_value().unwrap_or(ExtendedReal::Infinity)
    }

    fn theta_tilde(&self) -> f64 {
        self.spec.theta_tilde().unwrap_or(0.0)
    }

    pub fn u(&self, x: f64) -> Result<Complex64> {
        match self.spec.region() {
            Region::R1 => self.u1(x),
            Region::R2 => match self.lambda() {
                ExtendedReal::Finite(_) => {
                    let lt = self.spec.lambda_tilde().unwrap_or(0.0);
                    Ok(self.u1(x)? + lt * self.u2(x)?)
                }
                ExtendedReal::Infinity => self.u2(x),
            },
            Region::R3 => match self.lambda() {
                ExtendedReal::Finite(l) => Ok(l * self.u1(x)? + self.u3(x)?),
                ExtendedReal::Infinity => self.u1(x),
            },
            Region::R4 => {
                let t = self.theta_tilde();
                Ok(Complex64::from_polar(1.0, t) * self.u1(x)?
                    + Complex64::from_polar(1.0, -t) * self.u2(x)?)
            }
        }
    }

    /// Second real-entire solution; `None` in R1 at integer kappa.
    pub fn u_tilde(&self, x: f64) -> Result<Option<Complex64>> {
        Ok(Some(match self.spec.region() {
            Region::R1 => {
                let k = self.spec.kappa();
                if k == k.round() {
                    return Ok(None);
                }
                self.u2(x)?
            }
            Region::R2 => match self.lambda() {
                ExtendedReal::Finite(_) => self.u2(x)?,
                ExtendedReal::Infinity => self.u1(x)?,
            },
            Region::R3 => match self.lambda() {
                ExtendedReal::Finite(_) => self.u1(x)?,
                ExtendedReal::Infinity => self.u3(x)?,
            },
            Region::R4 => {
                let t = self.theta_tilde();
                I * (Complex64::from_polar(1.0, -t) * self.u2(x)?
                    - Complex64::from_polar(1.0, t) * self.u1(x)?)
            }
        }))
    }

    pub fn omega_tilde(&self) -> Option<Complex64> {
        let k = self.spec.kappa();
        let c = |v: f64| Some(Complex64::new(v, 0.0));
        match self.spec.region() {
            Region::R1 => {
                if k == k.round() {
                    None
                } else {
                    c(2.0 * (PI * k).sin() / PI)
                }
            }
            Region::R2 => match self.lambda() {
                ExtendedReal::Finite(_) => c(2.0 * (PI * k).sin() / PI),
                ExtendedReal::Infinity => c(-2.0 * (PI * k).sin() / PI),
            },
            Region::R3 => match self.lambda() {
                ExtendedReal::Finite(_) => c(1.0),
                ExtendedReal::Infinity => c(-1.0),
            },
            Region::R4 => c(-4.0 * (PI * self.spec.sigma()).sinh() / PI),
        }
    }

    pub fn omega(&self) -> Complex64 {
        omega(&self.spec, self.w)
    }

    /// The solution decaying at infinity for `Im W > 0`, built from H1 directly.
    pub fn v(&self, x: f64) -> Result<Complex64> {
        let s = self.s(x);
        let z = self.z(x);
        let sc = self.scaled;
        match self.spec.region() {
            Region::R1 => {
                let kr = self.spec.kappa();
                let k = Complex64::new(kr, 0.0);
                let h = if kr == kr.round() {
                    hankel1_integer(kr as u32, z)?
                } else {
                    hankel1_nu(k, z)?
                };
                Ok(cpow(sc, k) * s * h)
            }
            Region::R2 => {
                let kr = self.spec.kappa();
                let k = Complex64::new(kr, 0.0);
                let h = hankel1_nu(k, z)?;
                match self.lambda() {
                    ExtendedReal::Finite(_) => Ok(-I
                        * Complex64::from_polar(1.0, PI * kr)
                        * (PI * kr).sin()
                        * cpow(sc, -k)
                        * s
                        * h),
                    ExtendedReal::Infinity => Ok(I * (PI * kr).sin() * cpow(sc, k) * s * h),
                }
            }
            Region::R3 => {
                let h = hankel1_nu(Complex64::new(0.0, 0.0), z)?;
                match self.lambda() {
                    ExtendedReal::Finite(_) => Ok(-I * 0.5 * PI * s * h),
                    ExtendedReal::Infinity => {
                        let denom = 1.0 + 2.0 * I / PI * (sc.ln() + EULER_GAMMA);
                        Ok(s * h / denom)
                    }
                }
            }
            Region::R4 => {
                let sg = self.spec.sigma();
                let (a, b) = r4_ab(sg, self.theta_tilde(), sc);
                let h = hankel1_nu(Complex64::new(0.0, sg), z)?;
                Ok(2.0 * (PI * sg).sinh() / (a - b) * s * h)
            }
        }
    }
}

/// `A = e^{pi sigma} e^{-i theta~} (beta/2k0)^{i sigma}`, `B = e^{i theta~} (beta/2k0)^{-i sigma}`.
fn r4_ab(sigma: f64, tt: f64, scaled: Complex64) -> (Complex64, Complex64) {
    let p = cpow(scaled, Complex64::new(0.0, sigma));
    let a = (PI * sigma).exp() * Complex64::from_polar(1.0, -tt) * p;
    let b = Complex64::from_polar(1.0, tt) / p;
    (a, b)
}

/// Bessel orders are implemented for `kappa < 2`, which bounds the R1 couplings that can be evaluated.
fn check_order(spec: &ExtensionSpec) -> Result<()> {
    if spec.kappa() >= 2.0 {
        return Err(Error::UnsupportedOrder(spec.kappa()));
    }
    Ok(())
}

pub fn fundamental_solutions(spec: &ExtensionSpec, w: Complex64) -> Result<FundamentalTriple> {
    check_order(spec)?;
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(Error::Argument(format!("non-finite W = {w}")));
    }
    if w == Complex64::new(0.0, 0.0) {
        return Err(Error::Argument("W = 0 is a branch point".into()));
    }
    let b = beta(w);
    Ok(FundamentalTriple {
        spec: *spec,
        w,
        beta: b,
        scaled: b / (2.0 * spec.k0),
    })
}

/// Closed-form `omega(W) = -Wr(u, v)`; real `W` is read as `W + i0`.
pub fn omega(spec: &ExtensionSpec, w: Complex64) -> Complex64 {
    let sc = beta(w) / (2.0 * spec.k0);
    match spec.region() {
        Region::R1 => Complex64::new(0.0, -2.0 / PI),
        Region::R2 => {
            let k = spec.kappa();
            let sn = (PI * k).sin();
            match spec.param {
                ExtParam::Lambda(ExtendedReal::Finite(_)) => {
                    let lt = spec.lambda_tilde().unwrap_or(0.0);
                    let rot = -I * sc;
                    -(2.0 * sn / PI) * (lt + cpow(rot, Complex64::new(-2.0 * k, 0.0)))
                }
                _ => {
                    (2.0 * sn / PI)
                        * Complex64::from_polar(1.0, -PI * k)
                        * cpow(sc, Complex64::new(2.0 * k, 0.0))
                }
            }
        }
        Region::R3 => match spec.param {
            ExtParam::Lambda(ExtendedReal::Finite(l)) => sc.ln() + EULER_GAMMA - l - I * (0.5 * PI),
            _ => -1.0 / (sc.ln() + EULER_GAMMA - I * (0.5 * PI)),
        },
        Region::R4 => {
            let sg = spec.sigma();
            let (a, b) = r4_ab(sg, spec.theta_tilde().unwrap_or(0.0), sc);
            -I * (4.0 / PI) * (PI * sg).sinh() * (a + b) / (a - b)
        }
    }
}

/// `Phi(E) = sigma ln(E/4k0^2) - 2 theta~` for R4.
pub fn phase_phi(spec: &ExtensionSpec, e: f64) -> Option<f64> {
    let tt = spec.theta_tilde()?;
    Some(spec.sigma() * (e / (4.0 * spec.k0 * spec.k0)).ln() - 2.0 * tt)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    pub n: i64,
    pub energy: f64,
    /// jump of the spectral function at `energy`
    pub rho: f64,
    pub spec: ExtensionSpec,
}

impl BoundState {
    /// Normalized profile, positive at large x.
    pub fn profile(&self, x: f64) -> Result<f64> {
        bound_profile(&self.spec, self.energy, x)
    }
}

fn bound_profile(spec: &ExtensionSpec, e: f64, x: f64) -> Result<f64> {
    let a = (-e).sqrt();
    let s = x.sqrt();
    match spec.region() {
        Region::R2 => {
            let k = spec.kappa();
            let pre = (2.0 * (PI * k).sin() / (PI * k)).sqrt() * a;
            Ok(pre * s * bessel_k(Order::Real(k), a * x)?)
        }
        Region::R3 => Ok(2f64.sqrt() * a * s * bessel_k(Order::Real(0.0), a * x)?),
        Region::R4 => {
            let sg = spec.sigma();
            let pre = (2.0 * (PI * sg).sinh() / (PI * sg)).sqrt() * a;
            Ok(pre * s * bessel_k(Order::Imag(sg), a * x)?)
        }
        Region::R1 => Err(Error::Argument("R1 has no bound states".into())),
    }
}

pub fn r4_level(spec: &ExtensionSpec, n: i64) -> Option<f64> {
    let tt = spec.theta_tilde()?;
    let k0 = spec.k0;
    Some(-4.0 * k0 * k0 * (2.0 * (0.5 * PI + tt + PI * n as f64) / spec.sigma()).exp())
}

/// Closed-form bound levels. `window` selects `n` in R4 (default `[-5, 5]`) and is ignored elsewhere.
pub fn bound_states(spec: &ExtensionSpec, window: Option<(i64, i64)>) -> Result<Vec<BoundState>> {
    let k0 = spec.k0;
    match spec.region() {
        Region::R1 => Ok(vec![]),
        Region::R2 => {
            let Some(lt) = spec.lambda_tilde() else {
                return Ok(vec![]);
            };
            if lt >= 0.0 {
                return Ok(vec![]);
            }
            let k = spec.kappa();
            let e = -4.0 * k0 * k0 * lt.abs().powf(-1.0 / k);
            let rho = PI * e / (2.0 * k * (PI * k).sin() * lt);
            Ok(vec![BoundState {
                n: 0,
                energy: e,
                rho,
                spec: *spec,
            }])
        }
        Region::R3 => match spec.lambda_value() {
            Some(ExtendedReal::Finite(l)) => {
                let e = -4.0 * k0 * k0 * (2.0 * (l - EULER_GAMMA)).exp();
                Ok(vec![BoundState {
                    n: 0,
                    energy: e,
                    rho: 2.0 * e.abs(),
                    spec: *spec,
                }])
            }
            _ => Ok(vec![]),
        },
        Region::R4 => {
            let (lo, hi) = window.unwrap_or(DEFAULT_WINDOW);
            if lo > hi {
                return Err(Error::Argument(format!("empty level window [{lo}, {hi}]")));
            }
            let sg = spec.sigma();
            let w = 2.0 * sg * (PI * sg).sinh();
            Ok((lo..=hi)
                .map(|n| {
                    let e = r4_level(spec, n).unwrap_or(f64::NAN);
                    BoundState {
                        n,
                        energy: e,
                        rho: PI * e.abs() / w,
                        spec: *spec,
                    }
                })
                .collect())
        }
    }
}

/// Closed-form density of the absolutely continuous part.
pub fn spectral_density(spec: &ExtensionSpec, e: f64) -> f64 {
    if !(e > 0.0) {
        return 0.0;
    }
    let k0 = spec.k0;
    let r = e / (4.0 * k0 * k0);
    match (spec.region(), spec.param) {
        (Region::R1, _) => 0.5 * r.powf(spec.kappa()),
        (Region::R2, ExtParam::Lambda(ExtendedReal::Finite(_))) => {
            let k = spec.kappa();
            let g = spec.lambda_tilde().unwrap_or(0.0) * r.powf(k);
            let zeta = 1.0 + 2.0 * g * (PI * k).cos() + g * g;
            r.powf(k) / (2.0 * zeta)
        }
        (Region::R2, _) => 0.5 * r.powf(-spec.kappa()),
        (Region::R3, ExtParam::Lambda(ExtendedReal::Finite(l))) => {
            let lt = 0.5 * r.ln() + EULER_GAMMA - l;
            1.0 / (2.0 * (lt * lt + 0.25 * PI * PI))
        }
        (Region::R3, _) => 0.5,
        (Region::R4, _) => {
            let phi = phase_phi(spec, e).unwrap_or(0.0);
            1.0 / (4.0 * ((PI * spec.sigma()).cosh() + phi.cos()))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Which {
    Bound(i64),
    Continuum(f64),
}

/// Normalized continuum eigenfunction at a fixed energy, with per-energy constants
/// precomputed for repeated evaluation in x.
#[derive(Debug, Clone, Copy)]
pub struct ContinuumKernel {
    spec: ExtensionSpec,
    k: f64,
    form: KernelForm,
}

#[derive(Debug, Clone, Copy)]
enum KernelForm {
    /// `a x^{1/2} J_nu(kx)`
    Single {
        nu: f64,
        a: f64,
    },
    /// `a x^{1/2} [J_kappa(kx) + g J_{-kappa}(kx)]`
    Pair {
        kappa: f64,
        g: f64,
        a: f64,
    },
    /// `x^{1/2} [p J0(kx) + q N0(kx)]`
    Log {
        p: f64,
        q: f64,
    },
    /// `x^{1/2} Re[c J_{i sigma}(kx)]`
    Imag {
        sigma: f64,
        c: Complex64,
    },
    Zero,
}

impl ContinuumKernel {
    pub fn new(spec: &ExtensionSpec, e: f64) -> Result<Self> {
        if e < 0.0 || !e.is_finite() {
            return Err(Error::Argument(format!(
                "continuum energy must be >= 0, got {e}"
            )));
        }
        check_order(spec)?;
        let k0 = spec.k0;
        let r = e / (4.0 * k0 * k0);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let form = match (spec.region(), spec.param) {
            (Region::R1, _) => {
                if e == 0.0 {
                    KernelForm::Zero
                } else {
                    KernelForm::Single {
                        nu: spec.kappa(),
                        a: h,
                    }
                }
            }
            (Region::R2, ExtParam::Lambda(ExtendedReal::Finite(_))) => {
                if e == 0.0 {
                    KernelForm::Zero
                } else {
                    let k = spec.kappa();
                    let g = spec.lambda_tilde().unwrap_or(0.0) * r.powf(k);
                    let norm = (1.0 + 2.0 * g * (PI * k).cos() + g * g).sqrt();
                    KernelForm::Pair {
                        kappa: k,
                        g,
                        a: h / norm,
                    }
                }
            }
            (Region::R2, _) => {
                if e == 0.0 {
                    return Err(Error::Argument(
                        "continuum eigenfunction diverges at E = 0".into(),
                    ));
                }
                KernelForm::Single {
                    nu: -spec.kappa(),
                    a: h,
                }
            }
            (Region::R3, ExtParam::Lambda(ExtendedReal::Finite(l))) => {
                if e == 0.0 {
                    KernelForm::Zero
                } else {
                    let lt = l - EULER_GAMMA - 0.5 * r.ln();
                    let zeta = lt * lt + 0.25 * PI * PI;
                    let n = (2.0 * zeta).sqrt();
                    KernelForm::Log {
                        p: lt / n,
                        q: 0.5 * PI / n,
                    }
                }
            }
            (Region::R3, _) => KernelForm::Single { nu: 0.0, a: h },
            (Region::R4, _) => {
                if e == 0.0 {
                    return Err(Error::Argument(
                        "R4 continuum eigenfunction has no E = 0 limit".into(),
                    ));
                }
                let sg = spec.sigma();
                let tt = spec.theta_tilde().unwrap_or(0.0);
                let phi = phase_phi(spec, e).unwrap_or(0.0);
                let norm = ((PI * sg).cosh() + phi.cos()).sqrt();
                // e^{i theta~} (E/4k0^2)^{-i sigma/2}, doubled real part over 2 sqrt(...)
                let c = Complex64::from_polar(1.0 / norm, tt - 0.5 * sg * r.ln());
                KernelForm::Imag { sigma: sg, c }
            }
        };
        Ok(ContinuumKernel {
            spec: *spec,
            k: e.sqrt(),
            form,
        })
    }

    pub fn spec(&self) -> &ExtensionSpec {
        &self.spec
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if x <= 0.0 {
            return Ok(0.0);
        }
        let s = x.sqrt();
        let z = Complex64::new(self.k * x, 0.0);
        let c = |v: f64| Complex64::new(v, 0.0);
        Ok(match self.form {
            KernelForm::Zero => 0.0,
            KernelForm::Single { nu, a } => a * s * bessel_j_nu(c(nu), z)?.re,
            KernelForm::Pair { kappa, g, a } => {
                let jp = bessel_j_nu(c(kappa), z)?.re;
                let jm = bessel_j_nu(c(-kappa), z)?.re;
                a * s * (jp + g * jm)
            }
            KernelForm::Log { p, q } => {
                let j0 = bessel_j_nu(c(0.0), z)?.re;
                let n0 = neumann0_nu(z)?.re;
                s * (p * j0 + q * n0)
            }
            KernelForm::Imag { sigma, c: cc } => {
                s * (cc * bessel_j_nu(Complex64::new(0.0, sigma), z)?).re
            }
        })
    }
}

/// Normalized eigenfunction value.
pub fn eigenfunction(spec: &ExtensionSpec, which: Which, x: f64) -> Result<f64> {
    match which {
        Which::Continuum(e) => ContinuumKernel::new(spec, e)?.eval(x),
        Which::Bound(n) => {
            let levels = match spec.region() {
                Region::R4 => bound_states(spec, Some((n, n)))?,
                _ => bound_states(spec, None)?,
            };
            let b = levels
                .iter()
                .find(|b| b.n == n)
                .ok_or_else(|| Error::Argument(format!("no bound state with index {n}")))?;
            b.profile(x)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralMeasure {
    pub spec: ExtensionSpec,
    pub bound: Vec<BoundState>,
}

impl SpectralMeasure {
    pub fn new(spec: &ExtensionSpec, window: Option<(i64, i64)>) -> Result<Self> {
        Ok(SpectralMeasure {
            spec: *spec,
            bound: bound_states(spec, window)?,
        })
    }

    pub fn density(&self, e: f64) -> f64 {
        spectral_density(&self.spec, e)
    }
}

/// `pi^{-1} Im M(c; E + i eps) / u(c; E)^2` with `M = u v / omega`.
pub fn greens_density(spec: &ExtensionSpec, e: f64, eps: f64, c: f64) -> Result<f64> {
    if !(eps > 0.0 && eps <= 1e-3) {
        return Err(Error::Argument(format!(
            "eps must lie in (0, 1e-3], got {eps}"
        )));
    }
    if !(c > 0.0) {
        return Err(Error::Argument(format!(
            "matching point must be positive, got {c}"
        )));
    }
    let real = fundamental_solutions(spec, Complex64::new(e, 0.0))?;
    let u_real = real.u(c)?;
    let scale = match real.u_tilde(c)? {
        Some(t) => t.norm().max(u_real.norm()),
        None => real.v(c)?.norm().max(u_real.norm()),
    };
    if u_real.norm() < 1e-7 * scale {
        return Err(Error::IllConditioned(format!(
            "u(c; E) nearly vanishes at c = {c}"
        )));
    }
    Ok(green_m(spec, Complex64::new(e, eps), c)?.im / (PI * u_real.re * u_real.re))
}

/// `M(c; W) = u(c) v(c) / omega(W)`.
pub fn green_m(spec: &ExtensionSpec, w: Complex64, c: f64) -> Result<Complex64> {
    let t = fundamental_solutions(spec, w)?;
    Ok(t.u(c)? * t.v(c)? / t.omega())
}

/// Weight `-1 / omega'(E0)` at a simple zero, by central differences.
pub fn pole_weight(spec: &ExtensionSpec, e0: f64) -> f64 {
    let h = 1e-5 * e0.abs();
    let f = |e: f64| omega(spec, Complex64::new(e, 0.0)).re;
    let d = (-f(e0 + 2.0 * h) + 8.0 * f(e0 + h) - 8.0 * f(e0 - h) + f(e0 - 2.0 * h)) / (12.0 * h);
    -1.0 / d
}

fn omega_scale(spec: &ExtensionSpec) -> f64 {
    match spec.region() {
        Region::R2 => 2.0 * (PI * spec.kappa()).sin() / PI,
        Region::R4 => 4.0 * (PI * spec.sigma()).sinh() / PI,
        _ => 1.0,
    }
}

/// Zeros of `omega(E + i0)` for `E` in `[-e_hi, -e_lo]`: sign changes on a log grid in |E|,
/// refined by bisection; sign changes across poles are discarded.
pub fn find_bound_levels(spec: &ExtensionSpec, e_lo: f64, e_hi: f64) -> Vec<f64> {
    if spec.region() == Region::R1 || !(e_lo > 0.0 && e_hi > e_lo) {
        return vec![];
    }
    let f = |t: f64| omega(spec, Complex64::new(-t.exp(), 0.0)).re;
    let (a, b) = (e_lo.ln(), e_hi.ln());
    let step = 0.01;
    let n = ((b - a) / step).ceil() as usize;
    let scale = omega_scale(spec);
    let mut out = Vec::new();
    let mut t0 = a;
    let mut f0 = f(t0);
    for i in 1..=n {
        let t1 = a + (b - a) * i as f64 / n as f64;
        let f1 = f(t1);
        if f0 == 0.0 {
            out.push(-t0.exp());
        } else if f0.signum() != f1.signum() && f1 != 0.0 {
            let (mut lo, mut hi, mut flo) = (t0, t1, f0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = f(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            let root = 0.5 * (lo + hi);
            if f(root).abs() < 1e-6 * scale {
                out.push(-root.exp());
            }
        }
        t0 = t1;
        f0 = f1;
    }
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    out
}
