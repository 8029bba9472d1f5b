//! Input functions for `expand`: an expression in `x` or a two-column `x value` file.

use std::path::Path;

use crate::CliError;

pub const BUILTIN: &str = "x^{3/2}*exp(-x)";

pub enum Source {
    Expr(Box<dyn Fn(f64) -> f64>),
    Table(Vec<(f64, f64)>),
}

impl Source {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Source::Expr(f) => f(x),
            Source::Table(t) => interpolate(t, x),
        }
    }
}

/// Braces are accepted as grouping, so `x^{3/2}` reads as `x^(3/2)`.
pub fn expression(text: &str) -> Result<Source, CliError> {
    let cleaned = text.replace('{', "(").replace('}', ")");
    let expr: meval::Expr = cleaned
        .parse()
        .map_err(|e| CliError::Input(format!("expression `{text}`: {e}")))?;
    let f = expr
        .bind("x")
        .map_err(|e| CliError::Input(format!("expression `{text}`: {e}")))?;
    Ok(Source::Expr(Box::new(f)))
}

/// Whitespace-separated `x value` rows; `#` starts a comment. `x` must increase.
pub fn parse_table(text: &str) -> Result<Vec<(f64, f64)>, CliError> {
    let mut rows: Vec<(f64, f64)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |m: &str| CliError::Input(format!("line {}: {m}: `{}`", i + 1, raw.trim()));
        let cols: Vec<&str> = line.split_whitespace().collect();
        if cols.len() != 2 {
            return Err(err("expected two columns"));
        }
        let x: f64 = cols[0].parse().map_err(|_| err("x is not a number"))?;
        let v: f64 = cols[1].parse().map_err(|_| err("value is not a number"))?;
        if !(x.is_finite() && v.is_finite()) || x < 0.0 {
            return Err(err("entries must be finite with x >= 0"));
        }
        if rows.last().is_some_and(|&(p, _)| x <= p) {
            return Err(err("x must be strictly increasing"));
        }
        rows.push((x, v));
    }
    if rows.len() < 2 {
        return Err(CliError::Input("the file needs at least two rows".into()));
    }
    Ok(rows)
}

pub fn table_file(path: &Path) -> Result<Source, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_table(&text).map(Source::Table).map_err(|e| match e {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Linear interpolation; zero outside the tabulated range.
fn interpolate(t: &[(f64, f64)], x: f64) -> f64 {
    let (first, last) = (t[0].0, t[t.len() - 1].0);
    if x < first || x > last {
        return 0.0;
    }
    let j = t.partition_point(|&(a, _)| a <= x).clamp(1, t.len() - 1);
    let ((x0, y0), (x1, y1)) = (t[j - 1], t[j]);
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}
