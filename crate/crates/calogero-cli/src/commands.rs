use std::f64::consts::PI;

use calogero::extensions::{classify, Region};
use calogero::quad::integrate;
use calogero::spectral::{
    bound_states, fundamental_solutions, greens_density, spectral_density, BoundState,
};
use calogero::symmetry::{covariance_check, level_set_mismatch, maps_to};
use calogero::transform::{default_e_grid, l2_norm_sqr, sample, x_grid, Expansion, GridFunction};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::RunConfig;
use crate::input::Source;
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeInfo {
    pub region: String,
    pub alpha: f64,
    pub kappa: Option<f64>,
    pub sigma: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub n: i64,
    #[serde(rename = "E")]
    pub e: f64,
    pub rho: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityRow {
    #[serde(rename = "E")]
    pub e: f64,
    pub rho_c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoeffRow {
    pub n: i64,
    #[serde(rename = "E")]
    pub e: f64,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuumRow {
    #[serde(rename = "E")]
    pub e: f64,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReconRow {
    pub x: f64,
    pub psi: f64,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionOut {
    /// relative when the input has nonzero norm, absolute otherwise
    pub parseval_residual: f64,
    pub round_trip_residual: f64,
    pub phi_n: Vec<CoeffRow>,
    pub phi_c: Vec<ContinuumRow>,
    pub reconstruction: Vec<ReconRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub regime: RegimeInfo,
    pub bound: Vec<BoundRow>,
    pub density: Vec<DensityRow>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expansion: Option<ExpansionOut>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn regime_info(alpha: f64) -> RegimeInfo {
    let r = classify(alpha);
    let (kappa, sigma) = match r.region {
        Region::R1 | Region::R2 => (Some(r.kappa()), None),
        Region::R3 => (Some(0.0), Some(0.0)),
        Region::R4 => (None, Some(r.sigma())),
    };
    RegimeInfo {
        region: format!("{:?}", r.region),
        alpha,
        kappa,
        sigma,
    }
}

fn bound_rows(b: &[BoundState]) -> Vec<BoundRow> {
    b.iter()
        .map(|s| BoundRow {
            n: s.n,
            e: s.energy,
            rho: s.rho,
        })
        .collect()
}

fn density_rows(cfg: &RunConfig) -> Vec<DensityRow> {
    let lo = 1e-3 * cfg.k0 * cfg.k0;
    let n = cfg.grids.e_points;
    (0..n)
        .map(|i| {
            let e = lo * (cfg.grids.e_max / lo).powf(i as f64 / (n - 1) as f64);
            DensityRow {
                e,
                rho_c: spectral_density(&cfg.spec, e),
            }
        })
        .collect()
}

fn empty_report(cfg: RunConfig) -> Report {
    let regime = regime_info(cfg.alpha);
    Report {
        config: cfg,
        regime,
        bound: vec![],
        density: vec![],
        checks: vec![],
        expansion: None,
    }
}

pub fn spectrum(cfg: RunConfig) -> Result<Report, CliError> {
    if cfg.spec.region() == Region::R4 && cfg.window.is_none() {
        return Err(CliError::Usage(
            "for alpha < -1/4 the spectrum is unbounded below; pick level indices with --window, e.g. --window -2..2".into(),
        ));
    }
    let bound = bound_states(&cfg.spec, cfg.window)?;
    let density = density_rows(&cfg);
    let mut r = empty_report(cfg);
    r.bound = bound_rows(&bound);
    r.density = density;
    Ok(r)
}

fn check(cfg: &RunConfig, name: &str, residual: f64) -> Check {
    let threshold = cfg.tolerances[name];
    Check {
        name: name.into(),
        residual,
        threshold,
        pass: residual <= threshold,
    }
}

/// `f g' - f' g` by eighth-order central differences.
fn wronskian(f: impl Fn(f64) -> Complex64, g: impl Fn(f64) -> Complex64, x: f64) -> Complex64 {
    const C: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
    let h = 0.01 * x;
    let d = |u: &dyn Fn(f64) -> Complex64| -> Complex64 {
        C.iter()
            .enumerate()
            .map(|(j, c)| *c * (u(x + (j + 1) as f64 * h) - u(x - (j + 1) as f64 * h)))
            .sum::<Complex64>()
            / h
    };
    f(x) * d(&g) - d(&f) * g(x)
}

fn wronskian_residual(cfg: &RunConfig) -> Result<f64, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let w =
            Complex64::new(rng.gen_range(-1.0..4.0), rng.gen_range(0.05..1.0)) * cfg.k0 * cfg.k0;
        let t = fundamental_solutions(&cfg.spec, w)?;
        let om = t.omega();
        for x in [0.1, 0.5, 1.0, 2.0, 5.0] {
            let x = x / cfg.k0;
            let wr = wronskian(
                |y| t.u(y).unwrap_or_default(),
                |y| t.v(y).unwrap_or_default(),
                x,
            );
            worst = worst.max((wr + om).norm() / om.norm().max(1.0));
        }
    }
    Ok(worst)
}

/// `int_0^inf f g`, integrated in `ln x` with the power-law piece below the cut added in closed form.
fn overlap(f: &BoundState, g: &BoundState) -> Result<f64, CliError> {
    let (a, b) = ((-f.energy).sqrt(), (-g.energy).sqrt());
    let h = |x: f64| f.profile(x).unwrap_or(f64::NAN) * g.profile(x).unwrap_or(f64::NAN);
    let lo = 1e-10 / a.max(b);
    let hi = 60.0 / a.min(b);
    let p = (h(1.01 * lo) / h(lo)).ln() / 1.01f64.ln();
    let tail = if p.is_finite() && p > -1.0 {
        lo * h(lo) / (p + 1.0)
    } else {
        0.0
    };
    let body = integrate(|t| h(t.exp()) * t.exp(), lo.ln(), hi.ln(), 1e-14, 1e-12)?;
    Ok(tail + body)
}

fn green_residual(cfg: &RunConfig) -> Result<f64, CliError> {
    let k2 = cfg.k0 * cfg.k0;
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        let e = 0.05 * k2 * 400f64.powf(i as f64 / 9.0);
        let t = fundamental_solutions(&cfg.spec, Complex64::new(e, 0.0))?;
        // match where |u| is large so the O(eps) error stays small
        let c = [0.3, 0.45, 0.6, 0.8, 1.0, 1.3, 1.7]
            .map(|c| c / cfg.k0)
            .into_iter()
            .max_by(|&a, &b| {
                t.u(a)
                    .unwrap_or_default()
                    .norm()
                    .total_cmp(&t.u(b).unwrap_or_default().norm())
            })
            .unwrap_or(1.0);
        let g = greens_density(&cfg.spec, e, 1e-6, c)?;
        let d = spectral_density(&cfg.spec, e);
        worst = worst.max((g - d).abs() / (1.0 + d));
    }
    Ok(worst)
}

fn grids(cfg: &RunConfig) -> Result<(GridFunction, GridFunction), CliError> {
    let x = x_grid(cfg.grids.x_max, cfg.grids.x_panel, cfg.grids.x_order)?;
    let e = default_e_grid(cfg.k0, cfg.grids.x_max, cfg.grids.e_max)?;
    Ok((x, e))
}

struct Expanded {
    bound: Vec<BoundState>,
    parseval: f64,
    round_trip: f64,
    out: ExpansionOut,
}

fn expand_on_grid(
    cfg: &RunConfig,
    f: &dyn Fn(f64) -> f64,
    window: Option<(i64, i64)>,
) -> Result<Expanded, CliError> {
    let (x, e) = grids(cfg)?;
    let ex = Expansion::new(&cfg.spec, &x, &e, window)?;
    let psi = sample(&x, f);
    let c = ex.forward(&psi)?;
    let rec = ex.inverse(&c)?;
    let norm = l2_norm_sqr(&psi);
    let diff: f64 = psi
        .values
        .iter()
        .zip(&rec.values)
        .zip(&psi.weights)
        .map(|((a, b), w)| w * (a - b).norm_sqr())
        .sum();
    let (parseval, round_trip) = if norm > 0.0 {
        ((norm - c.parseval_rhs).abs() / norm, (diff / norm).sqrt())
    } else {
        (c.parseval_rhs.abs(), diff.sqrt())
    };
    let out = ExpansionOut {
        parseval_residual: parseval,
        round_trip_residual: round_trip,
        phi_n: c
            .bound
            .iter()
            .zip(&c.phi_n)
            .map(|(b, v)| CoeffRow {
                n: b.n,
                e: b.energy,
                re: v.re,
                im: v.im,
            })
            .collect(),
        phi_c: c
            .phi_c
            .nodes
            .iter()
            .zip(&c.phi_c.values)
            .map(|(&e, v)| ContinuumRow {
                e,
                re: v.re,
                im: v.im,
            })
            .collect(),
        reconstruction: x
            .nodes
            .iter()
            .zip(&psi.values)
            .zip(&rec.values)
            .map(|((&x, p), r)| ReconRow {
                x,
                psi: p.re,
                re: r.re,
                im: r.im,
            })
            .collect(),
    };
    Ok(Expanded {
        bound: c.bound,
        parseval,
        round_trip,
        out,
    })
}

pub fn verify(cfg: RunConfig) -> Result<Report, CliError> {
    let spec = cfg.spec;
    let region = spec.region();
    let window = cfg.window.or((region == Region::R4).then_some((-2, 2)));
    let bound = bound_states(&spec, window)?;
    let mut checks = vec![check(&cfg, "wronskian", wronskian_residual(&cfg)?)];
    let mut norm: f64 = 0.0;
    for b in &bound {
        norm = norm.max((overlap(b, b)? - 1.0).abs());
    }
    checks.push(check(&cfg, "normalization", norm));
    let mut cross: f64 = 0.0;
    for p in bound.windows(2) {
        cross = cross.max(overlap(&p[0], &p[1])?.abs());
    }
    checks.push(check(&cfg, "orthogonality", cross));
    checks.push(check(&cfg, "green", green_residual(&cfg)?));
    // the transform picks its own R4 window from the energy grid
    let t = expand_on_grid(&cfg, &|x: f64| x.powf(1.5) * (-x).exp(), None)?;
    checks.push(check(&cfg, "parseval", t.parseval));
    checks.push(check(&cfg, "round_trip", t.round_trip));
    let l = if region == Region::R4 {
        (PI / spec.sigma()).exp()
    } else {
        2.0
    };
    let cov = covariance_check(&spec, l)?;
    checks.push(check(
        &cfg,
        "covariance",
        cov.pointwise_residual.max(cov.level_law_residual),
    ));
    if region == Region::R4 {
        let m = level_set_mismatch(&spec, &maps_to(&spec, l)?, window.unwrap_or((-2, 2)))?;
        checks.push(check(&cfg, "r4_invariance", m));
    }
    let density = density_rows(&cfg);
    let mut r = empty_report(cfg);
    r.bound = bound_rows(&bound);
    r.density = density;
    r.checks = checks;
    Ok(r)
}

pub fn expand(cfg: RunConfig, source: Source) -> Result<Report, CliError> {
    let f = |x: f64| source.eval(x);
    let (x, _) = grids(&cfg)?;
    if let Some(&bad) = x.nodes.iter().find(|&&xi| !f(xi).is_finite()) {
        return Err(CliError::Input(format!(
            "input function is not finite at x = {bad}"
        )));
    }
    let t = expand_on_grid(&cfg, &f, cfg.window)?;
    let checks = vec![
        check(&cfg, "parseval", t.parseval),
        check(&cfg, "round_trip", t.round_trip),
    ];
    let mut r = empty_report(cfg);
    r.bound = bound_rows(&t.bound);
    r.checks = checks;
    r.expansion = Some(t.out);
    Ok(r)
}
