//! Coupling regimes, extension parameters, boundary asymptotes at the origin and
//! the scale-parameter reparametrization.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::specialfn::{gamma, theta_sigma};
use crate::transform::GridFunction;
use crate::{Error, Result};

/// |alpha + 1/4| below this is the critical coupling.
pub const CRITICAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    /// alpha >= 3/4, unique Hamiltonian
    R1,
    /// -1/4 < alpha < 3/4
    R2,
    /// alpha = -1/4
    R3,
    /// alpha < -1/4, fall to the center
    R4,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingRegime {
    pub alpha: f64,
    pub region: Region,
    /// kappa for R1-R3, sigma for R4
    pub kappa_or_sigma: f64,
}

impl CouplingRegime {
    pub fn kappa(&self) -> f64 {
        match self.region {
            Region::R4 => 0.0,
            _ => self.kappa_or_sigma,
        }
    }

    pub fn sigma(&self) -> f64 {
        match self.region {
            Region::R4 => self.kappa_or_sigma,
            _ => 0.0,
        }
    }
}

pub fn classify(alpha: f64) -> CouplingRegime {
    let shifted = alpha + 0.25;
    let (region, v) = if shifted.abs() <= CRITICAL_TOL {
        (Region::R3, 0.0)
    } else if alpha >= 0.75 {
        (Region::R1, shifted.sqrt())
    } else if shifted > 0.0 {
        (Region::R2, shifted.sqrt())
    } else {
        (Region::R4, (-shifted).sqrt())
    };
    CouplingRegime {
        alpha,
        region,
        kappa_or_sigma: v,
    }
}

/// Real line with a single point at infinity (`+inf ~ -inf`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExtendedReal {
    Finite(f64),
    Infinity,
}

impl ExtendedReal {
    pub fn from_f64(v: f64) -> Self {
        if v.is_infinite() {
            ExtendedReal::Infinity
        } else {
            ExtendedReal::Finite(v)
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(v) => Some(v),
            ExtendedReal::Infinity => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExtParam {
    None,
    Lambda(ExtendedReal),
    /// in [0, pi)
    Theta(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtensionSpec {
    pub regime: CouplingRegime,
    pub param: ExtParam,
    pub k0: f64,
}

pub fn reduce_mod_pi(theta: f64) -> f64 {
    let t = theta.rem_euclid(PI);
    if t >= PI {
        0.0
    } else {
        t
    }
}

impl ExtensionSpec {
    pub fn new(alpha: f64, param: ExtParam, k0: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::Argument(format!(
                "alpha must be finite, got {alpha}"
            )));
        }
        if !(k0 > 0.0 && k0.is_finite()) {
            return Err(Error::Argument(format!("k0 must be positive, got {k0}")));
        }
        let regime = classify(alpha);
        let param = match (regime.region, param) {
            (Region::R1, ExtParam::None) => ExtParam::None,
            (Region::R2 | Region::R3, ExtParam::Lambda(l)) => {
                if let ExtendedReal::Finite(v) = l {
                    if v.is_nan() {
                        return Err(Error::Argument("lambda is NaN".into()));
                    }
                }
                ExtParam::Lambda(l)
            }
            (Region::R4, ExtParam::Theta(t)) if t.is_finite() => ExtParam::Theta(reduce_mod_pi(t)),
            (r, p) => {
                return Err(Error::Argument(format!(
                    "parameter {p:?} does not fit region {r:?}"
                )));
            }
        };
        Ok(ExtensionSpec { regime, param, k0 })
    }

    pub fn r1(alpha: f64) -> Result<Self> {
        Self::new(alpha, ExtParam::None, 1.0)
    }

    pub fn lambda(alpha: f64, lambda: f64, k0: f64) -> Result<Self> {
        Self::new(alpha, ExtParam::Lambda(ExtendedReal::from_f64(lambda)), k0)
    }

    pub fn theta(alpha: f64, theta: f64, k0: f64) -> Result<Self> {
        Self::new(alpha, ExtParam::Theta(theta), k0)
    }

    /// From the U(1) phase: `lambda = -tan(phase/2)` in R2, `lambda = -cot(phase/2)` in R3.
    pub fn from_phase(alpha: f64, phase: f64, k0: f64) -> Result<Self> {
        let regime = classify(alpha);
        let half = 0.5 * phase;
        let lambda = match regime.region {
            Region::R2 => {
                if half.cos().abs() < 1e-15 {
                    ExtendedReal::Infinity
                } else {
                    ExtendedReal::Finite(-half.tan())
                }
            }
            Region::R3 => {
                if half.sin().abs() < 1e-15 {
                    ExtendedReal::Infinity
                } else {
                    ExtendedReal::Finite(-half.cos() / half.sin())
                }
            }
            r => {
                return Err(Error::Argument(format!(
                    "no phase parametrization in {r:?}"
                )))
            }
        };
        Self::new(alpha, ExtParam::Lambda(lambda), k0)
    }

    /// The U(1) phase, when the extension is labelled by lambda.
    pub fn phase(&self) -> Option<f64> {
        let ExtParam::Lambda(l) = self.param else {
            return None;
        };
        Some(match (self.regime.region, l) {
            (Region::R2, ExtendedReal::Finite(v)) => -2.0 * v.atan(),
            (Region::R2, ExtendedReal::Infinity) => PI,
            (Region::R3, ExtendedReal::Finite(v)) => 2.0 * 1f64.atan2(-v),
            (Region::R3, ExtendedReal::Infinity) => 0.0,
            _ => return None,
        })
    }

    pub fn region(&self) -> Region {
        self.regime.region
    }

    pub fn kappa(&self) -> f64 {
        self.regime.kappa()
    }

    pub fn sigma(&self) -> f64 {
        self.regime.sigma()
    }

    pub fn lambda_value(&self) -> Option<ExtendedReal> {
        match self.param {
            ExtParam::Lambda(l) => Some(l),
            _ => None,
        }
    }

    pub fn theta_value(&self) -> Option<f64> {
        match self.param {
            ExtParam::Theta(t) => Some(t),
            _ => None,
        }
    }

    /// `lambda Gamma(1-kappa)/Gamma(1+kappa)` for a finite R2 lambda.
    pub fn lambda_tilde(&self) -> Option<f64> {
        if self.region() != Region::R2 {
            return None;
        }
        let l = self.lambda_value()?.finite()?;
        Some(l * gamma_ratio(self.kappa()))
    }

    /// `theta + theta_sigma` in R4.
    pub fn theta_tilde(&self) -> Option<f64> {
        let t = self.theta_value()?;
        Some(t + theta_sigma(self.sigma()).ok()?)
    }
}

/// `Gamma(1 - kappa) / Gamma(1 + kappa)`.
pub fn gamma_ratio(kappa: f64) -> f64 {
    let a = gamma(Complex64::new(1.0 - kappa, 0.0))
        .map(|z| z.re)
        .unwrap_or(f64::NAN);
    let b = gamma(Complex64::new(1.0 + kappa, 0.0))
        .map(|z| z.re)
        .unwrap_or(f64::NAN);
    a / b
}

/// Leading asymptote at the origin selected by the extension, and its x-derivative.
pub fn boundary_asymptote(spec: &ExtensionSpec, c: Complex64, x: f64) -> (Complex64, Complex64) {
    let k0 = spec.k0;
    let y = k0 * x;
    match (spec.region(), spec.param) {
        (Region::R1, _) => (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
        (Region::R2, ExtParam::Lambda(l)) => {
            let k = spec.kappa();
            let (pu, pd) = (0.5 + k, 0.5 - k);
            match l {
                ExtendedReal::Finite(lam) => {
                    let v = y.powf(pu) + lam * y.powf(pd);
                    let d = k0 * (pu * y.powf(pu - 1.0) + lam * pd * y.powf(pd - 1.0));
                    (c * v, c * d)
                }
                ExtendedReal::Infinity => (c * y.powf(pd), c * (k0 * pd * y.powf(pd - 1.0))),
            }
        }
        (Region::R3, ExtParam::Lambda(l)) => {
            let s = x.sqrt();
            match l {
                ExtendedReal::Finite(lam) => {
                    let v = s * (lam + y.ln());
                    let d = (0.5 * (lam + y.ln()) + 1.0) / s;
                    (c * v, c * d)
                }
                ExtendedReal::Infinity => (c * s, c * (0.5 / s)),
            }
        }
        (Region::R4, ExtParam::Theta(t)) => {
            let sg = spec.sigma();
            let s = x.sqrt();
            let ph = sg * y.ln() + t;
            let v = s * ph.cos();
            let d = (0.5 * ph.cos() - sg * ph.sin()) / s;
            (c * v, c * d)
        }
        _ => unreachable!("ExtensionSpec::new enforces region/parameter pairing"),
    }
}

/// Coefficients of the two leading asymptotes at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCoefficients {
    pub c1: Complex64,
    pub c2: Complex64,
    /// rms misfit of the least-squares fit
    pub residual: f64,
    /// coefficient of the x^{3/2} remainder term, when it was part of the basis
    pub remainder: Option<Complex64>,
    /// norm of the fitted leading part relative to the norm of the samples
    pub leading_fraction: f64,
}

impl BoundaryCoefficients {
    pub fn c_plus(&self) -> Complex64 {
        self.c1 + Complex64::i() * self.c2
    }

    pub fn c_minus(&self) -> Complex64 {
        self.c1 - Complex64::i() * self.c2
    }

    /// Recover the extension parameter from the coefficients.
    pub fn extension_param(&self, regime: &CouplingRegime) -> Result<ExtParam> {
        let scale = self.c1.norm().max(self.c2.norm());
        if !(self.leading_fraction > 1e-10) || scale == 0.0 {
            return Err(Error::Degenerate(
                "both boundary coefficients vanish".into(),
            ));
        }
        Ok(match regime.region {
            Region::R1 => ExtParam::None,
            Region::R2 => {
                if self.c1.norm() <= 1e-14 * scale {
                    ExtParam::Lambda(ExtendedReal::Infinity)
                } else {
                    ExtParam::Lambda(ExtendedReal::Finite((self.c2 / self.c1).re))
                }
            }
            Region::R3 => {
                if self.c2.norm() <= 1e-14 * scale {
                    ExtParam::Lambda(ExtendedReal::Infinity)
                } else {
                    ExtParam::Lambda(ExtendedReal::Finite((self.c1 / self.c2).re))
                }
            }
            Region::R4 => ExtParam::Theta(reduce_mod_pi(0.5 * (self.c1 / self.c2).arg())),
        })
    }
}

fn basis(regime: &CouplingRegime, k0: f64, x: f64) -> [Complex64; 2] {
    let y = k0 * x;
    match regime.region {
        Region::R1 | Region::R2 => {
            let k = regime.kappa();
            [
                Complex64::new(y.powf(0.5 + k), 0.0),
                Complex64::new(y.powf(0.5 - k), 0.0),
            ]
        }
        Region::R3 => [
            Complex64::new(x.sqrt(), 0.0),
            Complex64::new(x.sqrt() * y.ln(), 0.0),
        ],
        Region::R4 => {
            let ph = regime.sigma() * y.ln();
            let s = x.sqrt();
            [Complex64::from_polar(s, ph), Complex64::from_polar(s, -ph)]
        }
    }
}

fn remainder_separated(regime: &CouplingRegime) -> bool {
    match regime.region {
        Region::R1 | Region::R2 => {
            let k = regime.kappa();
            (1.0 - k).abs() >= 0.25 && (1.0 + k).abs() >= 0.25
        }
        _ => true,
    }
}

/// Complex least squares by modified Gram-Schmidt on normalized columns.
fn least_squares(cols: &[Vec<Complex64>], rhs: &[Complex64]) -> Result<(Vec<Complex64>, f64)> {
    let m = cols.len();
    let n = rhs.len();
    let norms: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut q: Vec<Vec<Complex64>> = cols
        .iter()
        .zip(&norms)
        .map(|(c, &s)| c.iter().map(|v| v / s).collect())
        .collect();
    let mut r = vec![vec![Complex64::new(0.0, 0.0); m]; m];
    for j in 0..m {
        for i in 0..j {
            let dot: Complex64 = (0..n).map(|t| q[i][t].conj() * q[j][t]).sum();
            r[i][j] = dot;
            let (head, tail) = q.split_at_mut(j);
            for (qj, qi) in tail[0].iter_mut().zip(&head[i]) {
                *qj -= dot * qi;
            }
        }
        let nn = q[j].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if nn < 1e-13 {
            return Err(Error::Degenerate(
                "asymptote basis is rank deficient on these samples".into(),
            ));
        }
        r[j][j] = Complex64::new(nn, 0.0);
        for v in q[j].iter_mut() {
            *v /= nn;
        }
    }
    let qtb: Vec<Complex64> = (0..m)
        .map(|i| (0..n).map(|t| q[i][t].conj() * rhs[t]).sum())
        .collect();
    let mut coef = vec![Complex64::new(0.0, 0.0); m];
    for i in (0..m).rev() {
        let mut s = qtb[i];
        for j in i + 1..m {
            s -= r[i][j] * coef[j];
        }
        coef[i] = s / r[i][i];
    }
    for (c, s) in coef.iter_mut().zip(&norms) {
        *c /= *s;
    }
    let mut ss = 0.0;
    for t in 0..n {
        let fit: Complex64 = (0..m).map(|j| coef[j] * cols[j][t]).sum();
        ss += (rhs[t] - fit).norm_sqr();
    }
    Ok((coef, (ss / n as f64).sqrt()))
}

/// Least-squares fit of the leading asymptotes to samples near the origin. The
/// x^{3/2} remainder and the `x^2` corrections of both branches are included as extra
/// basis functions whenever their exponents are well separated from the leading ones.
pub fn fit_boundary_coefficients(
    samples: &GridFunction,
    regime: &CouplingRegime,
    k0: f64,
) -> Result<BoundaryCoefficients> {
    if samples.len() < 8 {
        return Err(Error::Degenerate(format!(
            "need at least 8 samples, got {}",
            samples.len()
        )));
    }
    if samples
        .values
        .iter()
        .any(|v| !v.re.is_finite() || !v.im.is_finite())
    {
        return Err(Error::Input("non-finite sample".into()));
    }
    let with_rem = remainder_separated(regime);
    let mut cols = vec![Vec::new(); if with_rem { 5 } else { 2 }];
    for &x in &samples.nodes {
        let b = basis(regime, k0, x);
        cols[0].push(b[0]);
        cols[1].push(b[1]);
        if with_rem {
            // generic remainder plus the first Frobenius corrections of both branches
            let y2 = (k0 * x).powi(2);
            cols[2].push(Complex64::new(x.powf(1.5), 0.0));
            cols[3].push(b[0] * y2);
            cols[4].push(b[1] * y2);
        }
    }
    let (coef, residual) = least_squares(&cols, &samples.values)?;
    let data: f64 = samples
        .values
        .iter()
        .map(|v| v.norm_sqr())
        .sum::<f64>()
        .sqrt();
    let lead: f64 = (0..samples.len())
        .map(|t| (coef[0] * cols[0][t] + coef[1] * cols[1][t]).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let leading_fraction = if data > 0.0 { lead / data } else { 0.0 };
    Ok(BoundaryCoefficients {
        c1: coef[0],
        c2: coef[1],
        residual,
        remainder: with_rem.then(|| coef[2]),
        leading_fraction,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignTag {
    Plus,
    Minus,
    NotApplicable,
}

/// Dimensional scale parameter; `mu` may be `+inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleParam {
    pub mu: f64,
    pub sign: SignTag,
}

/// Fold `mu` into `[mu0, mu0 e^{pi/sigma})`.
pub fn fold_mu(mu: f64, sigma: f64, mu0: f64) -> f64 {
    let period = PI / sigma;
    let t = (mu / mu0).ln().rem_euclid(period);
    let t = if t >= period { 0.0 } else { t };
    mu0 * t.exp()
}

pub fn param_convert(spec: &ExtensionSpec) -> Result<ScaleParam> {
    param_convert_with(spec, spec.k0)
}

pub fn param_convert_with(spec: &ExtensionSpec, mu0: f64) -> Result<ScaleParam> {
    let k0 = spec.k0;
    match (spec.region(), spec.param) {
        (Region::R1, _) => Err(Error::Argument("R1 has no extension parameter".into())),
        (Region::R2, ExtParam::Lambda(l)) => Ok(match l {
            ExtendedReal::Infinity => ScaleParam {
                mu: 0.0,
                sign: SignTag::NotApplicable,
            },
            ExtendedReal::Finite(0.0) => ScaleParam {
                mu: f64::INFINITY,
                sign: SignTag::NotApplicable,
            },
            ExtendedReal::Finite(v) => ScaleParam {
                mu: k0 * v.abs().powf(-0.5 / spec.kappa()),
                sign: if v > 0.0 {
                    SignTag::Plus
                } else {
                    SignTag::Minus
                },
            },
        }),
        (Region::R3, ExtParam::Lambda(l)) => Ok(match l {
            ExtendedReal::Infinity => ScaleParam {
                mu: 0.0,
                sign: SignTag::NotApplicable,
            },
            ExtendedReal::Finite(v) => ScaleParam {
                mu: k0 * v.exp(),
                sign: SignTag::NotApplicable,
            },
        }),
        (Region::R4, ExtParam::Theta(t)) => {
            if !(mu0 > 0.0) {
                return Err(Error::Argument(format!("mu0 must be positive, got {mu0}")));
            }
            let s = spec.sigma();
            Ok(ScaleParam {
                mu: fold_mu(k0 * (t / s).exp(), s, mu0),
                sign: SignTag::NotApplicable,
            })
        }
        _ => unreachable!(),
    }
}

/// Inverse of [`param_convert`].
pub fn from_scale(alpha: f64, scale: ScaleParam, k0: f64) -> Result<ExtensionSpec> {
    let regime = classify(alpha);
    let mu = scale.mu;
    if !(mu >= 0.0) {
        return Err(Error::Argument(format!("mu must be nonnegative, got {mu}")));
    }
    match regime.region {
        Region::R1 => ExtensionSpec::new(alpha, ExtParam::None, k0),
        Region::R2 => {
            let l = if mu == 0.0 {
                ExtendedReal::Infinity
            } else if mu.is_infinite() {
                ExtendedReal::Finite(0.0)
            } else {
                let mag = (k0 / mu).powf(2.0 * regime.kappa());
                match scale.sign {
                    SignTag::Minus => ExtendedReal::Finite(-mag),
                    SignTag::Plus => ExtendedReal::Finite(mag),
                    SignTag::NotApplicable => {
                        return Err(Error::Argument("R2 scale parameter needs a sign".into()));
                    }
                }
            };
            ExtensionSpec::new(alpha, ExtParam::Lambda(l), k0)
        }
        Region::R3 => {
            let l = if mu == 0.0 || mu.is_infinite() {
                ExtendedReal::Infinity
            } else {
                ExtendedReal::Finite((mu / k0).ln())
            };
            ExtensionSpec::new(alpha, ExtParam::Lambda(l), k0)
        }
        Region::R4 => {
            if !(mu > 0.0 && mu.is_finite()) {
                return Err(Error::Argument(format!("R4 needs 0 < mu < inf, got {mu}")));
            }
            ExtensionSpec::new(alpha, ExtParam::Theta(regime.sigma() * (mu / k0).ln()), k0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{Domain, GridFunction};

    fn samples(spec: &ExtensionSpec, lo: f64, hi: f64, n: usize) -> GridFunction {
        let nodes: Vec<f64> = (0..n)
            .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
            .collect();
        let values = nodes
            .iter()
            .map(|&x| boundary_asymptote(spec, Complex64::new(1.3, 0.0), x).0)
            .collect();
        GridFunction::new(nodes.clone(), values, vec![1.0; n], Domain::XSpace).unwrap()
    }

    #[test]
    fn classify_examples() {
        let r = classify(0.0);
        assert_eq!(r.region, Region::R2);
        assert!((r.kappa() - 0.5).abs() < 1e-15);
        let r = classify(0.75);
        assert_eq!(r.region, Region::R1);
        assert_eq!(r.kappa(), 1.0);
        let r = classify(-0.5);
        assert_eq!(r.region, Region::R4);
        assert!((r.sigma() - 0.5).abs() < 1e-15);
        assert_eq!(classify(-0.25).region, Region::R3);
        assert_eq!(classify(-0.25 + 5e-13).region, Region::R3);
        assert_eq!(classify(-0.25 + 1e-9).region, Region::R2);
    }

    #[test]
    fn asymptote_examples() {
        let one = Complex64::new(1.0, 0.0);
        let s = ExtensionSpec::lambda(0.0, 0.0, 1.0).unwrap();
        assert!((boundary_asymptote(&s, one, 0.01).0.re - 0.01).abs() < 1e-15);
        let s = ExtensionSpec::theta(-1.25, 0.0, 1.0).unwrap();
        let x = (-PI).exp();
        assert!((boundary_asymptote(&s, one, x).0.re + (-PI / 2.0).exp()).abs() < 1e-15);
        let s = ExtensionSpec::r1(2.0).unwrap();
        assert_eq!(
            boundary_asymptote(&s, one, 0.01).0,
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn asymptote_derivative_matches_difference() {
        let specs = [
            ExtensionSpec::lambda(0.1, -0.7, 1.5).unwrap(),
            ExtensionSpec::lambda(0.1, f64::INFINITY, 1.5).unwrap(),
            ExtensionSpec::lambda(-0.25, 0.4, 0.8).unwrap(),
            ExtensionSpec::theta(-1.0, 1.1, 2.0).unwrap(),
        ];
        for s in specs {
            let x = 0.03;
            let h = 1e-6;
            let one = Complex64::new(1.0, 0.0);
            let fd = (boundary_asymptote(&s, one, x + h).0 - boundary_asymptote(&s, one, x - h).0)
                / (2.0 * h);
            let d = boundary_asymptote(&s, one, x).1;
            assert!((fd - d).norm() < 1e-6 * d.norm(), "{s:?}");
        }
    }

    #[test]
    fn fit_round_trip() {
        let s = ExtensionSpec::lambda(0.1, 3.0, 1.0).unwrap();
        let c = fit_boundary_coefficients(&samples(&s, 1e-4, 0.1, 20), &s.regime, 1.0).unwrap();
        assert!(((c.c2 / c.c1).re - 3.0).abs() < 1e-8);
        let s = ExtensionSpec::lambda(-0.25, -1.7, 2.0).unwrap();
        let c = fit_boundary_coefficients(&samples(&s, 1e-4, 0.05, 20), &s.regime, 2.0).unwrap();
        let ExtParam::Lambda(ExtendedReal::Finite(l)) = c.extension_param(&s.regime).unwrap()
        else {
            panic!()
        };
        assert!((l + 1.7).abs() < 1e-8, "{l}");
        let s = ExtensionSpec::theta(-2.0, 2.9, 1.0).unwrap();
        let c = fit_boundary_coefficients(&samples(&s, 1e-5, 0.1, 30), &s.regime, 1.0).unwrap();
        let t = c.extension_param(&s.regime).unwrap();
        let ExtParam::Theta(t) = t else { panic!() };
        assert!((t - 2.9).abs() < 1e-8, "{t}");
    }

    #[test]
    fn pure_remainder_has_no_leading_part() {
        let regime = classify(0.3 * 0.3 - 0.25);
        let nodes: Vec<f64> = (1..=16).map(|i| 0.1 * i as f64 / 16.0).collect();
        let vals = nodes
            .iter()
            .map(|&x| Complex64::new(x.powf(1.5), 0.0))
            .collect();
        let g = GridFunction::new(nodes, vals, vec![1.0; 16], Domain::XSpace).unwrap();
        let c = fit_boundary_coefficients(&g, &regime, 1.0).unwrap();
        assert!(c.c1.norm() < 1e-10 && c.c2.norm() < 1e-10, "{c:?}");
        assert!(c.extension_param(&regime).is_err());
    }

    #[test]
    fn param_convert_examples() {
        let s = ExtensionSpec::lambda(0.0, -1.0, 1.0).unwrap();
        let p = param_convert(&s).unwrap();
        assert!((p.mu - 1.0).abs() < 1e-15 && p.sign == SignTag::Minus);
        let s = ExtensionSpec::lambda(-0.25, 0.0, 2.0).unwrap();
        assert_eq!(param_convert(&s).unwrap().mu, 2.0);
        let s = ExtensionSpec::theta(-1.25, PI / 2.0, 1.0).unwrap();
        assert!((param_convert(&s).unwrap().mu - (PI / 2.0).exp()).abs() < 1e-14);
    }

    #[test]
    fn param_convert_inverts() {
        for (alpha, p) in [(0.2, -0.8), (0.2, 2.5), (-0.25, -1.3), (-0.25, 0.7)] {
            let s = ExtensionSpec::lambda(alpha, p, 1.7).unwrap();
            let back = from_scale(alpha, param_convert(&s).unwrap(), 1.7).unwrap();
            let l = back.lambda_value().unwrap().finite().unwrap();
            assert!((l - p).abs() < 1e-13 * p.abs().max(1.0));
        }
        for t in [0.0, 0.4, 3.0] {
            let s = ExtensionSpec::theta(-3.0, t, 0.6).unwrap();
            let back = from_scale(-3.0, param_convert(&s).unwrap(), 0.6).unwrap();
            let d = (back.theta_value().unwrap() - t).rem_euclid(PI);
            assert!(d.min(PI - d) < 1e-12);
        }
        let s = ExtensionSpec::lambda(0.2, f64::INFINITY, 1.0).unwrap();
        assert_eq!(param_convert(&s).unwrap().mu, 0.0);
        let back = from_scale(
            -0.25,
            ScaleParam {
                mu: f64::INFINITY,
                sign: SignTag::NotApplicable,
            },
            1.0,
        )
        .unwrap();
        assert_eq!(back.lambda_value(), Some(ExtendedReal::Infinity));
    }

    #[test]
    fn phase_parametrization() {
        let s = ExtensionSpec::from_phase(0.0, PI / 2.0, 1.0).unwrap();
        assert!((s.lambda_value().unwrap().finite().unwrap() + 1.0).abs() < 1e-15);
        assert!((s.phase().unwrap() - PI / 2.0).abs() < 1e-15);
        let s = ExtensionSpec::from_phase(-0.25, PI / 2.0, 1.0).unwrap();
        assert!((s.lambda_value().unwrap().finite().unwrap() + 1.0).abs() < 1e-15);
        assert_eq!(
            ExtensionSpec::from_phase(0.0, PI, 1.0)
                .unwrap()
                .lambda_value(),
            Some(ExtendedReal::Infinity)
        );
    }

    #[test]
    fn r4_asymptote_periodic_in_mu() {
        // mu -> mu e^{pi m / sigma} leaves the boundary condition unchanged up to sign
        let sigma: f64 = 0.8;
        let alpha = -0.25 - sigma * sigma;
        let a = from_scale(
            alpha,
            ScaleParam {
                mu: 1.3,
                sign: SignTag::NotApplicable,
            },
            1.0,
        )
        .unwrap();
        for m in 1..4 {
            let mu = 1.3 * (PI * m as f64 / sigma).exp();
            let b = from_scale(
                alpha,
                ScaleParam {
                    mu,
                    sign: SignTag::NotApplicable,
                },
                1.0,
            )
            .unwrap();
            for x in [1e-4, 3e-3, 0.05] {
                let one = Complex64::new(1.0, 0.0);
                let va = boundary_asymptote(&a, one, x).0.re;
                let vb = boundary_asymptote(&b, one, x).0.re;
                assert!((va.abs() - vb.abs()).abs() < 1e-12);
            }
        }
    }
}
