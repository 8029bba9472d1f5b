//! Bessel-type special functions of real and purely imaginary order.
//!
//! Argument ranges: the ascending series below |z| = 6, backward recurrence up to
//! |z| = 17, Hankel asymptotics beyond. `K` uses a Steed continued fraction for
//! |w| >= 2 and the `I_{-nu} - I_nu` combination below.

mod bessel;
mod gamma;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub(crate) use bessel::hankel1_integer;
pub use bessel::{bessel_i_nu, bessel_j_nu, bessel_k_nu, hankel1_nu, neumann0_nu, r0};
pub use gamma::{gamma, log_gamma, rgamma, theta_sigma, EULER_GAMMA};

use crate::{Error, Result};

/// Bessel order: real `kappa` with `|kappa| < 2`, or purely imaginary `i sigma` with `sigma > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Order {
    Real(f64),
    Imag(f64),
}

impl Order {
    pub fn real(kappa: f64) -> Result<Self> {
        if !kappa.is_finite() || kappa.abs() >= 2.0 {
            return Err(Error::Argument(format!(
                "real order must satisfy |kappa| < 2, got {kappa}"
            )));
        }
        Ok(Order::Real(kappa))
    }

    pub fn imag(sigma: f64) -> Result<Self> {
        if !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::Argument(format!(
                "imaginary order needs sigma > 0, got {sigma}"
            )));
        }
        Ok(Order::Imag(sigma))
    }

    /// The order as a complex number.
    pub fn nu(self) -> Complex64 {
        match self {
            Order::Real(k) => Complex64::new(k, 0.0),
            Order::Imag(s) => Complex64::new(0.0, s),
        }
    }

    fn check(self) -> Result<Self> {
        match self {
            Order::Real(k) => Order::real(k),
            Order::Imag(s) => Order::imag(s),
        }
    }
}

fn positive(x: f64, what: &str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} needs x > 0, got {x}")))
    }
}

/// `J_nu(x)` for real `x >= 0`; complex for imaginary order.
pub fn bessel_j(order: Order, x: f64) -> Result<Complex64> {
    let order = order.check()?;
    if x == 0.0 {
        return match order {
            Order::Real(k) if k >= 0.0 => bessel_j_nu(order.nu(), Complex64::new(0.0, 0.0)),
            _ => Err(Error::Domain(format!(
                "J of order {order:?} is singular at 0"
            ))),
        };
    }
    positive(x, "bessel_j")?;
    bessel_j_nu(order.nu(), Complex64::new(x, 0.0))
}

/// `J_nu(z)` for complex `z` in the closed first quadrant.
pub fn bessel_j_complex(order: Order, z: Complex64) -> Result<Complex64> {
    bessel_j_nu(order.check()?.nu(), z)
}

/// Complex intermediate of `K_nu(x)`; its imaginary part is rounding noise for real `x`.
pub fn bessel_k_complex(order: Order, w: Complex64) -> Result<Complex64> {
    bessel_k_nu(order.check()?.nu(), w)
}

/// Macdonald function `K_nu(x)`, real for real order and for imaginary order.
pub fn bessel_k(order: Order, x: f64) -> Result<f64> {
    positive(x, "bessel_k")?;
    let order = order.check()?;
    let v = bessel_k_nu(order.nu(), Complex64::new(x, 0.0))?;
    if let Order::Imag(_) = order {
        // K_{i s} = K_{-i s}: average with the conjugate-order value
        let w = bessel_k_nu(order.nu().conj(), Complex64::new(x, 0.0))?;
        return Ok(0.5 * (v.re + w.re));
    }
    Ok(v.re)
}

/// Neumann function `N0(x)` for real `x > 0`.
pub fn neumann0(x: f64) -> Result<f64> {
    positive(x, "neumann0")?;
    Ok(neumann0_nu(Complex64::new(x, 0.0))?.re)
}

/// Hankel `H1_nu(x)` for real `x > 0`. Nonzero integer real orders are rejected.
pub fn hankel1(order: Order, x: f64) -> Result<Complex64> {
    positive(x, "hankel1")?;
    hankel1_complex(order, Complex64::new(x, 0.0))
}

pub fn hankel1_complex(order: Order, z: Complex64) -> Result<Complex64> {
    let order = order.check()?;
    if let Order::Real(k) = order {
        if k != 0.0 && k == k.round() {
            return Err(Error::UnsupportedOrder(k));
        }
    }
    hankel1_nu(order.nu(), z)
}
