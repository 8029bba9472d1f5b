//! Gauss–Legendre rules, composite panels and adaptive Gauss–Kronrod integration.

use std::f64::consts::PI;

use crate::{Error, Result};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 {
                1.0
            } else if n == 1 {
                z
            } else {
                p1
            };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * p - pm) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Composite rule: `order`-point Gauss–Legendre on each interval between consecutive `breaks`.
pub fn panels(breaks: &[f64], order: usize) -> (Vec<f64>, Vec<f64>) {
    let (gx, gw) = gauss_legendre(order);
    let mut xs = Vec::with_capacity(order * breaks.len());
    let mut ws = Vec::with_capacity(order * breaks.len());
    for b in breaks.windows(2) {
        let (c, h) = (0.5 * (b[0] + b[1]), 0.5 * (b[1] - b[0]));
        for (x, w) in gx.iter().zip(&gw) {
            xs.push(c + h * x);
            ws.push(h * w);
        }
    }
    (xs, ws)
}

/// Breakpoints `a, a*r, ..., b` geometrically spaced; `count` intervals.
pub fn geometric_breaks(a: f64, b: f64, count: usize) -> Vec<f64> {
    let r = (b / a).ln() / count as f64;
    let mut v: Vec<f64> = (0..=count).map(|i| a * (r * i as f64).exp()).collect();
    v[count] = b;
    v
}

pub fn linear_breaks(a: f64, b: f64, count: usize) -> Vec<f64> {
    (0..=count)
        .map(|i| a + (b - a) * i as f64 / count as f64)
        .collect()
}

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut rk = WGK[7] * fc;
    let mut rg = WG[3] * fc;
    for j in 0..7 {
        let d = h * XGK[j];
        let s = f(c - d) + f(c + d);
        rk += WGK[j] * s;
        if j % 2 == 1 {
            rg += WG[j / 2] * s;
        }
    }
    (rk * h, ((rk - rg) * h).abs())
}

/// Adaptive Gauss–Kronrod (7, 15) quadrature on `[a, b]`, bisecting the worst interval
/// until the summed error estimate is below `max(abs_tol, rel_tol |I|)`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64> {
    let mut parts = vec![{
        let (v, e) = gk15(&f, a, b);
        (a, b, v, e)
    }];
    for _ in 0..5000 {
        let total: f64 = parts.iter().map(|p| p.2).sum();
        let err: f64 = parts.iter().map(|p| p.3).sum();
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(total);
        }
        let (i, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .unwrap();
        let (lo, hi, _, _) = parts.swap_remove(i);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Err(Error::Integration("interval underflow".into()));
        }
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
    Err(Error::Integration(
        "adaptive quadrature did not converge".into(),
    ))
}

/// `int_a^inf f`, split at geometric breakpoints and each piece integrated adaptively;
/// stops once a piece contributes below `abs_tol`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64> {
    let mut total = 0.0;
    let mut lo = a;
    let mut step = a.max(1.0);
    for _ in 0..200 {
        let hi = lo + step;
        let part = integrate(&f, lo, hi, 0.1 * abs_tol, rel_tol)?;
        total += part;
        if part.abs() < abs_tol.max(rel_tol * total.abs()) * 1e-3 && lo > a {
            return Ok(total);
        }
        lo = hi;
        step *= 1.5;
    }
    Err(Error::Integration("tail did not decay".into()))
}
