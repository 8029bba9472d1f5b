use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::PathBuf;

use calogero::extensions::{from_scale, ExtensionSpec, Region, ScaleParam, SignTag};
use calogero::transform::DEFAULT_E_MAX;
use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// coupling of the alpha/x^2 potential
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    /// extension parameter for -1/4 <= alpha < 3/4; accepts `inf` and `-inf`
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["theta", "mu"])]
    pub lambda: Option<String>,
    /// extension angle for alpha < -1/4; `0.5pi` means pi/2
    #[arg(long, allow_hyphen_values = true, conflicts_with = "mu")]
    pub theta: Option<String>,
    /// scale parameter; in R2 append the sign tag, e.g. `2.5-` or `0.3+`
    #[arg(long)]
    pub mu: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub k0: f64,
    /// R4 level indices `a..b`
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
    #[arg(long, default_value_t = 40.0)]
    pub x_max: f64,
    /// width of the linear x panels
    #[arg(long, default_value_t = 0.25)]
    pub x_panel: f64,
    /// Gauss-Legendre points per x panel
    #[arg(long, default_value_t = 10)]
    pub x_order: usize,
    #[arg(long, default_value_t = DEFAULT_E_MAX)]
    pub e_max: f64,
    /// number of density samples
    #[arg(long, default_value_t = 200)]
    pub e_points: usize,
    /// check threshold override `NAME=VALUE`; NAME `all` sets every check
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// output directory; stdout when unset
    #[arg(long, env = "CALOGERO_OUT_DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grids {
    pub x_max: f64,
    pub x_panel: f64,
    pub x_order: usize,
    pub e_max: f64,
    pub e_points: usize,
}

/// Everything a run depends on, echoed into every output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub alpha: f64,
    /// the extension flag as given, e.g. `("theta", "0.5pi")`
    pub extension: Option<(String, String)>,
    pub k0: f64,
    pub spec: ExtensionSpec,
    pub window: Option<(i64, i64)>,
    pub grids: Grids,
    pub tolerances: BTreeMap<String, f64>,
    pub format: Format,
    pub seed: u64,
    pub input: Option<String>,
}

pub const CHECKS: [(&str, f64); 8] = [
    ("wronskian", 1e-9),
    ("normalization", 1e-8),
    ("orthogonality", 1e-8),
    ("green", 1e-4),
    ("parseval", 1e-3),
    ("round_trip", 1e-3),
    ("covariance", 1e-10),
    ("r4_invariance", 1e-12),
];

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn parse_lambda(s: &str) -> Result<f64, CliError> {
    match s.trim() {
        "inf" | "+inf" | "infinity" => Ok(f64::INFINITY),
        "-inf" | "-infinity" => Ok(f64::NEG_INFINITY),
        t => t
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| usage(format!("cannot read lambda `{s}`"))),
    }
}

/// Plain number or a multiple of pi written with a `pi` suffix.
pub fn parse_theta(s: &str) -> Result<f64, CliError> {
    let t = s.trim();
    let v = match t.strip_suffix("pi") {
        Some(m) => {
            let m = m.trim_end_matches('*').trim();
            let f = match m {
                "" | "+" => 1.0,
                "-" => -1.0,
                _ => m
                    .parse::<f64>()
                    .map_err(|_| usage(format!("cannot read theta `{s}`")))?,
            };
            f * PI
        }
        None => t
            .parse::<f64>()
            .map_err(|_| usage(format!("cannot read theta `{s}`")))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(usage(format!("theta must be finite, got `{s}`")))
    }
}

pub fn parse_mu(s: &str) -> Result<ScaleParam, CliError> {
    let t = s.trim();
    let (body, sign) = if let Some(b) = t.strip_suffix('+') {
        (b, SignTag::Plus)
    } else if let Some(b) = t.strip_suffix('-') {
        (b, SignTag::Minus)
    } else {
        (t, SignTag::NotApplicable)
    };
    let mu = match body {
        "inf" => f64::INFINITY,
        b => b
            .parse::<f64>()
            .map_err(|_| usage(format!("cannot read mu `{s}`")))?,
    };
    if !(mu >= 0.0) {
        return Err(usage(format!("mu must be nonnegative, got `{s}`")));
    }
    Ok(ScaleParam { mu, sign })
}

pub fn parse_window(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || {
        usage(format!(
            "window must look like `a..b` with integers a <= b, got `{s}`"
        ))
    };
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn tolerances(items: &[String], region: Region) -> Result<BTreeMap<String, f64>, CliError> {
    let mut map: BTreeMap<String, f64> = CHECKS.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    if region == Region::R1 {
        // dilations leave the unique extension fixed, so the residual is pure round-off
        map.insert("covariance".into(), 1e-12);
    }
    for item in items {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("--tol expects NAME=VALUE, got `{item}`")))?;
        let v: f64 = value
            .parse()
            .ok()
            .filter(|v: &f64| *v > 0.0)
            .ok_or_else(|| usage(format!("bad threshold in `{item}`")))?;
        match name {
            "all" => map.values_mut().for_each(|t| *t = v),
            n if map.contains_key(n) => {
                map.insert(n.to_string(), v);
            }
            n => {
                let known: Vec<&str> = CHECKS.iter().map(|c| c.0).collect();
                return Err(usage(format!(
                    "unknown check `{n}`; known: all, {}",
                    known.join(", ")
                )));
            }
        }
    }
    Ok(map)
}

fn build_spec(c: &Common) -> Result<(ExtensionSpec, Option<(String, String)>), CliError> {
    let region = calogero::extensions::classify(c.alpha).region;
    let given = [("lambda", &c.lambda), ("theta", &c.theta), ("mu", &c.mu)]
        .into_iter()
        .find_map(|(k, v)| v.as_ref().map(|s| (k.to_string(), s.clone())));
    let lib = |e: calogero::Error| usage(e.to_string());
    let spec = match (&given, region) {
        (None, Region::R1) => ExtensionSpec::r1(c.alpha).map_err(lib)?,
        (Some(_), Region::R1) => {
            return Err(usage(
                "alpha >= 3/4 has a unique self-adjoint extension; drop the extension parameter",
            ));
        }
        (None, Region::R4) => {
            return Err(usage(
                "alpha < -1/4 needs an extension parameter: --theta or --mu",
            ))
        }
        (None, _) => {
            return Err(usage(
                "-1/4 <= alpha < 3/4 needs an extension parameter: --lambda or --mu",
            ))
        }
        (Some((k, v)), _) => match k.as_str() {
            "lambda" => ExtensionSpec::lambda(c.alpha, parse_lambda(v)?, c.k0).map_err(lib)?,
            "theta" => ExtensionSpec::theta(c.alpha, parse_theta(v)?, c.k0).map_err(lib)?,
            _ => {
                let p = parse_mu(v)?;
                let needs_sign = region == Region::R2 && p.mu > 0.0 && p.mu.is_finite();
                if needs_sign && p.sign == SignTag::NotApplicable {
                    return Err(usage(
                        "in R2 a finite nonzero mu needs a sign tag, e.g. `--mu 2-`",
                    ));
                }
                if !needs_sign && p.sign != SignTag::NotApplicable {
                    return Err(usage(
                        "the sign tag on mu only applies to finite nonzero mu in R2",
                    ));
                }
                from_scale(c.alpha, p, c.k0).map_err(lib)?
            }
        },
    };
    Ok((spec, given))
}

pub fn resolve(c: &Common, command: &str, input: Option<String>) -> Result<RunConfig, CliError> {
    if !(c.k0 > 0.0 && c.k0.is_finite()) {
        return Err(usage("--k0 must be positive"));
    }
    if !(c.x_max > 0.0 && c.x_panel > 0.0 && c.e_max > 0.0 && c.x_order > 0 && c.e_points > 1) {
        return Err(usage("grid extents and resolutions must be positive"));
    }
    let (spec, extension) = build_spec(c)?;
    let window = c.window.as_deref().map(parse_window).transpose()?;
    if window.is_some() && spec.region() != Region::R4 {
        return Err(usage(
            "--window selects R4 level indices and needs alpha < -1/4",
        ));
    }
    Ok(RunConfig {
        command: command.to_string(),
        alpha: c.alpha,
        extension,
        k0: c.k0,
        spec,
        window,
        grids: Grids {
            x_max: c.x_max,
            x_panel: c.x_panel,
            x_order: c.x_order,
            e_max: c.e_max,
            e_points: c.e_points,
        },
        tolerances: tolerances(&c.tol, spec.region())?,
        format: c.format,
        seed: c.seed,
        input,
    })
}
