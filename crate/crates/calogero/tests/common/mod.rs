//! Independent oracles shared by the integration tests.
#![allow(dead_code, clippy::excessive_precision)]

use std::f64::consts::PI;

use calogero::extensions::ExtensionSpec;
use calogero::oracle::{shoot, Seed};
use calogero::specialfn::{bessel_j, bessel_k, Order};
use calogero::spectral::{fundamental_solutions, BoundState};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const C: f64 = 0.57721566490153286060651209008240243;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(r: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    r.gen_range(lo..hi)
}

// ---------- fixed-point arithmetic with 2^-SHIFT resolution ----------

const SHIFT: u32 = 320;

#[derive(Clone, Debug)]
struct Fx {
    re: BigInt,
    im: BigInt,
}

fn fx_real(v: f64) -> BigInt {
    if v == 0.0 {
        return BigInt::zero();
    }
    let bits = v.to_bits();
    let sign = if bits >> 63 == 1 { -1 } else { 1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let mant = if exp == 0 {
        (bits & 0xfffffffffffff) << 1
    } else {
        (bits & 0xfffffffffffff) | 0x10000000000000
    };
    let e = exp - 1075 + SHIFT as i64;
    let m = BigInt::from(mant) * sign;
    if e >= 0 {
        m << (e as usize)
    } else {
        m >> ((-e) as usize)
    }
}

fn fx_to_f64(v: &BigInt) -> f64 {
    // keep 64 significant bits before converting
    let bits = v.bits() as i64;
    let drop = (bits - 64).max(0);
    let top = (v >> (drop as usize)).to_f64().unwrap();
    top * 2f64.powi((drop - SHIFT as i64) as i32)
}

impl Fx {
    fn from_c(z: Complex64) -> Fx {
        Fx {
            re: fx_real(z.re),
            im: fx_real(z.im),
        }
    }
    fn one() -> Fx {
        Fx {
            re: BigInt::one() << SHIFT as usize,
            im: BigInt::zero(),
        }
    }
    fn zero() -> Fx {
        Fx {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }
    fn add(&self, o: &Fx) -> Fx {
        Fx {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
    fn mul(&self, o: &Fx) -> Fx {
        let re = (&self.re * &o.re - &self.im * &o.im) >> SHIFT as usize;
        let im = (&self.re * &o.im + &self.im * &o.re) >> SHIFT as usize;
        Fx { re, im }
    }
    fn div(&self, o: &Fx) -> Fx {
        // self * conj(o) / |o|^2
        let den = (&o.re * &o.re + &o.im * &o.im) >> SHIFT as usize;
        let nre = &self.re * &o.re + &self.im * &o.im;
        let nim = &self.im * &o.re - &self.re * &o.im;
        Fx {
            re: nre / &den,
            im: nim / &den,
        }
    }
    fn to_c(&self) -> Complex64 {
        Complex64::new(fx_to_f64(&self.re), fx_to_f64(&self.im))
    }
    fn small(&self) -> bool {
        // below 2^-(SHIFT-40)
        self.re.abs().bits() < 40 && self.im.abs().bits() < 40
    }
}

// ---------- Lanczos gamma (g = 7, 9 terms), test-only ----------

const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

pub fn lanczos_gamma(z: Complex64) -> Complex64 {
    let pi = PI;
    if z.re < 0.5 {
        return pi / ((pi * z).sin() * lanczos_gamma(1.0 - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + 7.5;
    (2.0 * pi).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

/// `J_nu(x)` from the ascending series summed in 320-bit fixed point; the prefactor
/// `(x/2)^nu / Gamma(nu+1)` is evaluated in double precision.
pub fn series_j(nu: Complex64, x: f64) -> Complex64 {
    let q = Fx::from_c(Complex64::new(-0.25 * x * x, 0.0));
    let nu1 = Fx::from_c(nu);
    let mut term = Fx::one();
    let mut sum = Fx::one();
    let mut k = 1u32;
    loop {
        let kk = Fx::from_c(Complex64::new(k as f64, 0.0));
        let den = kk.mul(&nu1.add(&kk));
        term = term.mul(&q).div(&den);
        sum = sum.add(&term);
        if term.small() && k as f64 > x {
            break;
        }
        k += 1;
        if k > 2000 {
            break;
        }
    }
    let pre = (nu * (0.5 * x).ln()).exp() / lanczos_gamma(nu + 1.0);
    pre * sum.to_c()
}

/// `R0(x) = -sum_{k>=1} (-1)^{k+1} H_k (x^2/4)^k / (k!)^2` in fixed point, so that
/// `(pi/2) N0 = (ln(x/2) + C) J0 - R0`.
pub fn series_r0(x: f64) -> f64 {
    let q = Fx::from_c(Complex64::new(-0.25 * x * x, 0.0));
    let mut term = Fx::one();
    let mut h = Fx::zero();
    let mut sum = Fx::zero();
    for k in 1..400u32 {
        let kk = Fx::from_c(Complex64::new(k as f64, 0.0));
        term = term.mul(&q).div(&kk.mul(&kk));
        h = h.add(&Fx::one().div(&kk));
        sum = sum.add(&term.mul(&h));
        if term.small() && k as f64 > x {
            break;
        }
    }
    sum.to_c().re
}

/// `K_nu(x) = int_0^inf e^{-x cosh t} cosh(nu t) dt` by the trapezoid rule, which converges
/// geometrically for this analytic, double-exponentially decaying integrand.
pub fn integral_k(nu: Complex64, x: f64) -> f64 {
    let h: f64 = 0.005;
    let mut s = 0.5 * (-x).exp();
    let mut t = h;
    loop {
        let v = (-x * t.cosh()).exp() * (nu * t).cosh().re;
        s += v;
        if x * t.cosh() > 745.0 {
            break;
        }
        t += h;
    }
    s * h
}

/// Wronskian `f g' - f' g` at `x` with 8th-order central differences, step `0.01 x`.
pub fn wronskian<F, G>(f: F, g: G, x: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
    G: Fn(f64) -> Complex64,
{
    let h = 0.01 * x;
    let d = |u: &dyn Fn(f64) -> Complex64| {
        let c = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
        let mut s = Complex64::new(0.0, 0.0);
        for (k, ck) in c.iter().enumerate() {
            let j = (k + 1) as f64;
            s += ck * (u(x + j * h) - u(x - j * h));
        }
        s / h
    };
    f(x) * d(&g) - d(&f) * g(x)
}

/// Relative error against an envelope that stays away from zero at oscillation nodes.
pub fn envelope_error(got: Complex64, want: Complex64, envelope: f64) -> f64 {
    (got - want).norm() / want.norm().max(envelope)
}

/// Composite Simpson on a geometric-then-uniform grid, for norms of smooth decaying profiles.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + h * i as f64);
    }
    s * h / 3.0
}

/// `int_0^inf f` for profiles with an integrable power or oscillating-power behaviour at 0:
/// substitutes `x = e^t` on `[ln lo, ln hi]`.
pub fn log_integral<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> f64 {
    simpson(
        |t| {
            let x = t.exp();
            x * f(x)
        },
        lo.ln(),
        hi.ln(),
        n,
    )
}

pub fn is_zero(v: f64) -> bool {
    v.is_zero()
}

/// Smooth, rapidly decaying test functions for the expansion checks.
pub type TestFunction = (&'static str, fn(f64) -> f64);

pub fn test_functions() -> Vec<TestFunction> {
    vec![
        ("x^1.5 e^-x", |x| x.powf(1.5) * (-x).exp()),
        ("x^2 gauss", |x| x * x * (-(x - 2.0) * (x - 2.0)).exp()),
        ("damped cosine", |x| {
            x.powf(1.5) * (-x / 2.0).exp() * x.cos()
        }),
        ("x sin x e^-x", |x| x * x.sin() * (-x).exp()),
        ("signed bump", |x| {
            x.powf(2.5) * (-x).exp() * (1.0 - x / 4.0)
        }),
    ]
}

/// Finite-difference level near the closed-form value `e` with `n` grid nodes on `[1e-4/k0, 40/sqrt|e|]`.
pub fn fd_level(spec: &calogero::extensions::ExtensionSpec, e: f64, n: usize) -> f64 {
    use calogero::oracle::{fd_eigen_in, refine_level, DiscretizedProblem, LeftBc, PotentialSpec};
    let x_max = 40.0 / e.abs().sqrt();
    let p = DiscretizedProblem::new(
        PotentialSpec::Exact(spec.regime.alpha),
        1e-4 / spec.k0,
        x_max,
        n,
        LeftBc::BoundarySolution(*spec, 0.0),
    )
    .unwrap();
    let found = fd_eigen_in(&p, 4.0 * e, 0.25 * e).unwrap();
    let start = found
        .iter()
        .copied()
        .min_by(|a, b| (a - e).abs().total_cmp(&(b - e).abs()))
        .unwrap_or(e);
    refine_level(&p, start).unwrap_or(f64::NAN)
}

/// Random extension with a bound level, cycling through R2 (lambda < 0), R3 and R4.
/// Returns the extension and a level resolvable on the default oracle grid.
pub fn random_bound_case(
    r: &mut ChaCha8Rng,
    i: usize,
) -> (calogero::extensions::ExtensionSpec, f64) {
    use calogero::extensions::ExtensionSpec;
    use calogero::spectral::bound_states;
    loop {
        let k0 = uniform(r, 0.5, 2.0);
        let spec = match i % 3 {
            0 => ExtensionSpec::lambda(uniform(r, -0.2, 0.4), -uniform(r, 0.3, 3.0), k0).unwrap(),
            1 => ExtensionSpec::lambda(-0.25, uniform(r, -1.5, 1.5), k0).unwrap(),
            _ => ExtensionSpec::theta(uniform(r, -3.0, -0.3), uniform(r, 0.0, PI), k0).unwrap(),
        };
        let levels = bound_states(&spec, Some((-30, 30))).unwrap();
        // keep eps << |E|^{-1/2}: |E| between 1e-2 k0^2 and 1e3 k0^2
        let pick = levels
            .iter()
            .map(|b| b.energy)
            .filter(|e| e.abs() > 1e-2 * k0 * k0 && e.abs() < 1e3 * k0 * k0)
            .max_by(|a, b| a.total_cmp(b));
        if let Some(e) = pick {
            return (spec, e);
        }
    }
}

fn unit_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Worst error of `J_nu` against the fixed-point series on `(0, 50]`.
pub fn series_agreement(order: Order) -> f64 {
    let mut worst: f64 = 0.0;
    for x in unit_grid(0.05, 50.0, 400)
        .into_iter()
        .chain([1e-3, 0.01, 0.2])
    {
        let got = bessel_j(order, x).unwrap();
        let want = series_j(order.nu(), x);
        let env = (2.0 / (PI * x)).sqrt() * (PI * order.nu().im / 2.0).cosh();
        worst = worst.max(envelope_error(got, want, 1e-2 * env));
    }
    worst
}

/// Worst error of `sqrt(x) J_nu(x)` and `sqrt(x) K_nu(x)` against shooting on `[0.5, 20]`.
pub fn shooting_agreement(order: Order) -> f64 {
    let nu = order.nu();
    let alpha = (nu * nu).re - 0.25;
    let xs = unit_grid(0.5, 20.0, 79);
    let mut worst: f64 = 0.0;
    // J: Frobenius branch from small x; branch = 2^nu Gamma(nu+1) sqrt(x) J_nu(x)
    let shot = shoot(alpha, Complex64::new(1.0, 0.0), Seed::Branch(nu), 1e-3, &xs).unwrap();
    let norm = (nu * 2f64.ln()).exp() * lanczos_gamma(nu + 1.0);
    for (x, u) in xs.iter().zip(&shot.u) {
        let got = x.sqrt() * bessel_j(order, *x).unwrap();
        let env = (2.0 / PI).sqrt() * (PI * nu.im / 2.0).cosh();
        worst = worst.max(envelope_error(got, u / norm, 1e-3 * env));
    }
    // K: decaying solution at W = -1, integrated inward from its asymptotic series
    let x0 = 40.0;
    let mut a = 1.0;
    let (mut s, mut ds) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    let mut term = Complex64::new(1.0, 0.0);
    for k in 0..30 {
        let kf = k as f64;
        if k > 0 {
            term *= (4.0 * nu * nu - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf);
            a /= x0;
        }
        s += term * a;
        ds -= kf * term * a / x0;
    }
    let pre = (PI / 2.0).sqrt() * (-x0).exp();
    let seed = Seed::Values(pre * s, pre * (ds - s));
    let back: Vec<f64> = xs.iter().rev().copied().collect();
    let shot = shoot(alpha, Complex64::new(-1.0, 0.0), seed, x0, &back).unwrap();
    for (x, u) in back.iter().zip(&shot.u) {
        let got = x.sqrt() * bessel_k(order, *x).unwrap();
        let env = x.sqrt() * bessel_k(Order::Real(0.0), *x).unwrap();
        worst = worst.max((got - u.re).abs() / got.abs().max(1e-3 * env));
    }
    worst
}

/// `int_0^inf f g` for bound profiles with decay rates `a_lo <= a_hi`.
pub fn overlap(f: &BoundState, g: &BoundState) -> f64 {
    let (a, b) = ((-f.energy).sqrt(), (-g.energy).sqrt());
    let (slow, fast) = (a.min(b), a.max(b));
    let h = |x: f64| f.profile(x).unwrap() * g.profile(x).unwrap();
    let lo = 1e-9 / fast;
    // power-law piece on (0, lo): h ~ x^p
    let p = (h(1.01 * lo) / h(lo)).ln() / 1.01f64.ln();
    let tail = if p.is_finite() && p > -1.0 {
        lo * h(lo) / (p + 1.0)
    } else {
        0.0
    };
    tail + log_integral(h, lo, 60.0 / slow, 20000)
}

/// Matching point away from the nodes of `u(.; E)`.
pub fn matching_point(spec: &ExtensionSpec, e: f64) -> f64 {
    let t = fundamental_solutions(spec, Complex64::new(e, 0.0)).unwrap();
    let cands = [0.3, 0.45, 0.6, 0.8, 1.0, 1.3, 1.7];
    *cands
        .iter()
        .max_by(|&&a, &&b| t.u(a).unwrap().norm().total_cmp(&t.u(b).unwrap().norm()))
        .unwrap()
}
