use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{rgamma, EULER_GAMMA};
use crate::{Error, Result};

/// Beyond this modulus the Hankel asymptotic expansion is used.
const ASYM_R: f64 = 17.0;
/// Below this modulus the ascending series is used.
const SERIES_R: f64 = 6.0;
/// Continued fraction for K needs |w| at least this large.
const K_CF_R: f64 = 2.0;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

fn is_real_integer(nu: Complex64) -> bool {
    nu.im == 0.0 && nu.re == nu.re.round()
}

fn series_preferred(z: Complex64) -> bool {
    let r = z.norm();
    r <= SERIES_R || 2.0 * z.im.abs() > r
}

fn pow_half(z: Complex64, nu: Complex64) -> Complex64 {
    if nu == ZERO {
        return ONE;
    }
    (nu * (z * 0.5).ln()).exp()
}

fn series_j(nu: Complex64, z: Complex64) -> Complex64 {
    let q = -z * z * 0.25;
    let half = 0.5 * z.norm();
    let mut term = ONE;
    let mut sum = ONE;
    for k in 1..500 {
        let kf = k as f64;
        term *= q / (kf * (nu + kf));
        sum += term;
        if kf > half && term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    pow_half(z, nu) * rgamma(nu + 1.0) * sum
}

fn series_i(nu: Complex64, w: Complex64) -> Complex64 {
    let q = w * w * 0.25;
    let half = 0.5 * w.norm();
    let mut term = ONE;
    let mut sum = ONE;
    for k in 1..500 {
        let kf = k as f64;
        term *= q / (kf * (nu + kf));
        sum += term;
        if kf > half && term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    pow_half(w, nu) * rgamma(nu + 1.0) * sum
}

struct Miller {
    j0: Complex64,
    j1: Complex64,
    /// sum over k >= 1 of (-1)^k J_{nu+2k} / k
    alt: Complex64,
    /// sum over k >= 1 of (-1)^k (J_{nu+2k-1} - J_{nu+2k+1}) / k
    dalt: Complex64,
}

/// Backward recurrence normalized by the Neumann-type sum
/// `(z/2)^nu = sum_k (nu + 2k) Gamma(nu + k) / k! J_{nu+2k}(z)`; needs Re nu >= 0.
fn miller(nu: Complex64, z: Complex64) -> Miller {
    let az = z.norm();
    let mut n = (az + 30.0 + 10.0 * az.cbrt()) as usize;
    if n % 2 == 1 {
        n += 1;
    }
    let kmax = n / 2;
    let mut d = vec![ONE; kmax + 1];
    let mut h = ONE;
    for (k, dk) in d.iter_mut().enumerate().skip(1) {
        let kf = k as f64;
        if k > 1 {
            h *= (nu + (kf - 1.0)) / kf;
        }
        *dk = (nu + 2.0 * kf) * h;
    }
    let zi = z.inv();
    let mut fp = ZERO;
    let mut f = Complex64::new(1e-30, 0.0);
    let mut sum = ZERO;
    let mut alt = ZERO;
    let mut dalt = ZERO;
    let sgn = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut m = n;
    while m > 0 {
        if m.is_multiple_of(2) {
            let k = m / 2;
            sum += d[k] * f;
            alt += f * (sgn(k) / k as f64);
        } else {
            let k = m.div_ceil(2);
            let mut c = sgn(k) / k as f64;
            if m >= 3 {
                c -= sgn(k - 1) / (k - 1) as f64;
            }
            dalt += f * c;
        }
        let fm = 2.0 * (nu + m as f64) * zi * f - fp;
        fp = f;
        f = fm;
        m -= 1;
        if f.norm() > 1e200 {
            f *= 1e-200;
            fp *= 1e-200;
            sum *= 1e-200;
            alt *= 1e-200;
            dalt *= 1e-200;
        }
    }
    sum += f;
    let norm = pow_half(z, nu) * rgamma(nu + 1.0) / sum;
    Miller {
        j0: f * norm,
        j1: fp * norm,
        alt: alt * norm,
        dalt: dalt * norm,
    }
}

/// Hankel asymptotic expansions, returns (H1, H2).
fn asym(nu: Complex64, z: Complex64) -> (Complex64, Complex64) {
    let mu = 4.0 * nu * nu;
    let zi = z.inv();
    let mut a = ONE;
    let mut s1 = ONE;
    let mut s2 = ONE;
    let mut p1 = ONE;
    let mut p2 = ONE;
    let mut prev = f64::INFINITY;
    for k in 1..80 {
        let odd = (2 * k - 1) as f64;
        a = a * (mu - odd * odd) / (8.0 * k as f64);
        p1 *= I * zi;
        p2 *= -I * zi;
        let t1 = a * p1;
        let mag = t1.norm();
        if mag > prev && k > 4 {
            break;
        }
        s1 += t1;
        s2 += a * p2;
        prev = mag;
        if mag < 1e-18 {
            break;
        }
    }
    let chi = z - nu * (0.5 * PI) - 0.25 * PI;
    let pre = (2.0 / (PI * z)).sqrt();
    (pre * (I * chi).exp() * s1, pre * (-I * chi).exp() * s2)
}

/// Bessel J of complex order and complex argument. Intended for `|Re nu| < 3`
/// and arguments in the closed first quadrant.
pub fn bessel_j_nu(nu: Complex64, z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite() && nu.re.is_finite() && nu.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite input J_{nu}({z})")));
    }
    if nu.im == 0.0 && nu.re < 0.0 && is_real_integer(nu) {
        return Err(Error::UnsupportedOrder(nu.re));
    }
    if z == ZERO {
        if nu == ZERO {
            return Ok(ONE);
        }
        if nu.re > 0.0 {
            return Ok(ZERO);
        }
        return Err(Error::Domain(format!("J_{nu} singular at 0")));
    }
    let r = z.norm();
    if r >= ASYM_R {
        let (h1, h2) = asym(nu, z);
        return Ok(0.5 * (h1 + h2));
    }
    if series_preferred(z) {
        return Ok(series_j(nu, z));
    }
    let shift = if nu.re < 0.0 {
        (-nu.re).ceil() as usize
    } else {
        0
    };
    let mut v = nu + shift as f64;
    let m = miller(v, z);
    let (mut j0, mut j1) = (m.j0, m.j1);
    for _ in 0..shift {
        let jm = 2.0 * v / z * j0 - j1;
        j1 = j0;
        j0 = jm;
        v -= 1.0;
    }
    Ok(j0)
}

/// Modified Bessel I by its ascending series; accurate for moderate |w|.
pub fn bessel_i_nu(nu: Complex64, w: Complex64) -> Result<Complex64> {
    if nu.im == 0.0 && nu.re < 0.0 && is_real_integer(nu) {
        return Err(Error::UnsupportedOrder(nu.re));
    }
    if w == ZERO {
        return if nu == ZERO {
            Ok(ONE)
        } else if nu.re > 0.0 {
            Ok(ZERO)
        } else {
            Err(Error::Domain(format!("I_{nu} singular at 0")))
        };
    }
    Ok(series_i(nu, w))
}

fn k0_series(w: Complex64) -> Complex64 {
    let q = w * w * 0.25;
    let mut term = ONE;
    let mut hk = 0.0;
    let mut sum = ZERO;
    let mut i0 = ONE;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * kf);
        hk += 1.0 / kf;
        sum += term * hk;
        i0 += term;
        if term.norm() * hk <= 1e-18 * sum.norm().max(1.0) {
            break;
        }
    }
    -((w * 0.5).ln() + EULER_GAMMA) * i0 + sum
}

/// Steed/Temme continued fraction: K_mu(w), K_{mu+1}(w) for |w| >= 2.
fn k_cf2(mu: Complex64, w: Complex64) -> (Complex64, Complex64) {
    let mut b = 2.0 * (1.0 + w);
    let mut d = b.inv();
    let mut h = d;
    let mut delh = d;
    let mut q1 = ZERO;
    let mut q2 = ONE;
    let a1 = 0.25 - mu * mu;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..20000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = (b + a * d).inv();
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if dels.norm() < 1e-17 * s.norm() {
            break;
        }
    }
    h *= a1;
    let kmu = (PI / (2.0 * w)).sqrt() * (-w).exp() / s;
    let k1 = kmu * (mu + w + 0.5 - h) / w;
    (kmu, k1)
}

/// Macdonald K of complex order for `Re w > 0`.
pub fn bessel_k_nu(nu: Complex64, w: Complex64) -> Result<Complex64> {
    if !(w.re > 0.0) || !w.re.is_finite() || !w.im.is_finite() {
        return Err(Error::Domain(format!("K needs Re w > 0, got {w}")));
    }
    let nu = if nu.re < 0.0 || (nu.re == 0.0 && nu.im < 0.0) {
        -nu
    } else {
        nu
    };
    if w.norm() >= K_CF_R {
        let n = nu.re.round();
        let mu = nu - n;
        let (mut k0, mut k1) = k_cf2(mu, w);
        let mut v = mu + 1.0;
        for _ in 0..n as usize {
            let kn = k0 + 2.0 * v / w * k1;
            k0 = k1;
            k1 = kn;
            v += 1.0;
        }
        return Ok(k0);
    }
    if nu == ZERO {
        return Ok(k0_series(w));
    }
    if is_real_integer(nu) {
        return Err(Error::UnsupportedOrder(nu.re));
    }
    let ip = series_i(nu, w);
    let im = series_i(-nu, w);
    Ok(PI / (2.0 * (PI * nu).sin()) * (im - ip))
}

/// Hankel function of the first kind for arguments in the closed upper half plane.
pub fn hankel1_nu(nu: Complex64, z: Complex64) -> Result<Complex64> {
    if z == ZERO {
        return Err(Error::Domain("H1 singular at 0".into()));
    }
    if z.norm() >= ASYM_R {
        return Ok(asym(nu, z).0);
    }
    if z.im >= K_CF_R {
        let k = bessel_k_nu(nu, -I * z)?;
        return Ok(2.0 / (PI * I) * (-I * nu * (0.5 * PI)).exp() * k);
    }
    if nu.norm() <= 1e-7 {
        // the J combination cancels here; H_nu = H_0 (1 - i pi nu / 2) + O(nu^2)
        let h0 = bessel_j_nu(ZERO, z)? + I * neumann0_nu(z)?;
        return Ok(h0 * (ONE - 0.5 * I * PI * nu));
    }
    if is_real_integer(nu) {
        return Err(Error::UnsupportedOrder(nu.re));
    }
    let jp = bessel_j_nu(nu, z)?;
    let jm = bessel_j_nu(-nu, z)?;
    Ok((jm - (-I * PI * nu).exp() * jp) / (I * (PI * nu).sin()))
}

/// `H1_n(z)` for integer `n >= 0`, used where the spectral code meets integer kappa.
/// `N1 = -N0'` comes from differentiating the Neumann series of `R0` term by term;
/// higher orders follow by forward recurrence, which is stable for `H1`.
pub(crate) fn hankel1_integer(n: u32, z: Complex64) -> Result<Complex64> {
    if z == ZERO {
        return Err(Error::Domain("H1 singular at 0".into()));
    }
    let nf = n as f64;
    let nu = Complex64::new(nf, 0.0);
    if z.norm() >= ASYM_R {
        return Ok(asym(nu, z).0);
    }
    if z.im >= K_CF_R {
        let k = bessel_k_nu(nu, -I * z)?;
        return Ok(2.0 / (PI * I) * (-I * nu * (0.5 * PI)).exp() * k);
    }
    let m = miller(ZERO, z);
    let l = (z * 0.5).ln() + EULER_GAMMA;
    let n0 = 2.0 / PI * (l * m.j0 - 2.0 * m.alt);
    let n1 = -2.0 / PI * (m.j0 / z - l * m.j1 - m.dalt);
    let (mut h0, mut h1) = (m.j0 + I * n0, m.j1 + I * n1);
    if n == 0 {
        return Ok(h0);
    }
    for k in 1..n {
        let h2 = 2.0 * k as f64 / z * h1 - h0;
        h0 = h1;
        h1 = h2;
    }
    Ok(h1)
}

/// The entire function `R0(z) = sum_{k>=1} (-1)^k (z/2)^{2k} H_k / (k!)^2`.
pub fn r0(z: Complex64) -> Complex64 {
    if z == ZERO {
        return ZERO;
    }
    let r = z.norm();
    if r >= ASYM_R {
        let (h1, h2) = asym(ZERO, z);
        let j0 = 0.5 * (h1 + h2);
        let y0 = (h1 - h2) / (2.0 * I);
        return ((z * 0.5).ln() + EULER_GAMMA) * j0 - 0.5 * PI * y0;
    }
    if series_preferred(z) {
        let q = -z * z * 0.25;
        let mut term = ONE;
        let mut hk = 0.0;
        let mut sum = ZERO;
        for k in 1..500 {
            let kf = k as f64;
            term *= q / (kf * kf);
            hk += 1.0 / kf;
            sum += term * hk;
            if kf > 0.5 * r && term.norm() * hk <= 1e-18 * sum.norm() {
                break;
            }
        }
        return sum;
    }
    2.0 * miller(ZERO, z).alt
}

/// Neumann function N0 (also written Y0) for arguments in the closed upper half plane,
/// from `(pi/2) N0(z) = (ln(z/2) + C) J0(z) - R0(z)`.
pub fn neumann0_nu(z: Complex64) -> Result<Complex64> {
    if z == ZERO {
        return Err(Error::Domain("N0 singular at 0".into()));
    }
    if z.norm() >= ASYM_R {
        let (h1, h2) = asym(ZERO, z);
        return Ok((h1 - h2) / (2.0 * I));
    }
    let j0 = bessel_j_nu(ZERO, z)?;
    Ok(2.0 / PI * (((z * 0.5).ln() + EULER_GAMMA) * j0 - r0(z)))
}
