use num_complex::Complex64;

use crate::{Error, Result};

/// Euler's constant, 30 significant digits.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577215664901532860606512090082;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;

// B_{2k} / (2k (2k - 1))
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

const SHIFT_TO: f64 = 12.0;

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn stirling(z: Complex64) -> Complex64 {
    let zi = z.inv();
    let zi2 = zi * zi;
    let mut corr = Complex64::new(0.0, 0.0);
    let mut p = zi;
    for c in STIRLING {
        corr += p * c;
        p *= zi2;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + corr
}

/// Log-gamma on the branch continuous from the positive real axis.
///
/// For arguments with small real part the upward recurrence subtracts principal
/// logarithms of `z + j`, which reproduces the usual analytic continuation.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("log_gamma of non-finite {z}")));
    }
    if is_pole(z) {
        return Err(Error::Domain(format!("gamma pole at {}", z.re)));
    }
    if z.re >= SHIFT_TO {
        return Ok(stirling(z));
    }
    let n = (SHIFT_TO - z.re).ceil() as usize;
    // modulus as one running product, phase as a sum of principal arguments
    let mut modulus = 1.0;
    let mut log_scale = 0.0;
    let mut phase = 0.0;
    for j in 0..n {
        let t = z + j as f64;
        modulus *= t.norm();
        phase += t.arg();
        if !(1e-100..=1e100).contains(&modulus) {
            log_scale += modulus.ln();
            modulus = 1.0;
        }
    }
    let acc = Complex64::new(log_scale + modulus.ln(), phase);
    Ok(stirling(z + n as f64) - acc)
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// `1 / Gamma(z)`, zero at the poles.
pub fn rgamma(z: Complex64) -> Complex64 {
    match log_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// Phase `Im ln Gamma(1 + i sigma)`, continuous in sigma with value `-C sigma` near 0.
pub fn theta_sigma(sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::Domain(format!(
            "theta_sigma needs sigma > 0, got {sigma}"
        )));
    }
    Ok(log_gamma(Complex64::new(1.0, sigma))?.im)
}
