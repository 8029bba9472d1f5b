//! JSON documents and CSV tables. Every table carries the resolved config in its header.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::commands::Report;
use crate::config::Format;
use crate::CliError;

fn csv_table<T: Serialize>(rows: &[T], header: &[&str]) -> Result<String, CliError> {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        let v = serde_json::to_value(r).map_err(|e| CliError::Output(e.to_string()))?;
        let cells: Vec<String> = header.iter().map(|h| cell(&v[*h])).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}

fn cell(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Null => "nan".into(),
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Named CSV tables of a report, in a fixed order.
pub fn tables(r: &Report) -> Result<Vec<(&'static str, String)>, CliError> {
    let mut t = vec![
        ("bound", csv_table(&r.bound, &["n", "E", "rho"])?),
        ("density", csv_table(&r.density, &["E", "rho_c"])?),
        (
            "checks",
            csv_table(&r.checks, &["name", "residual", "threshold", "pass"])?,
        ),
    ];
    if let Some(x) = &r.expansion {
        t.push(("phi_n", csv_table(&x.phi_n, &["n", "E", "re", "im"])?));
        t.push(("phi_c", csv_table(&x.phi_c, &["E", "re", "im"])?));
        t.push((
            "reconstruction",
            csv_table(&x.reconstruction, &["x", "psi", "re", "im"])?,
        ));
        let summary = [
            ("parseval_residual", x.parseval_residual),
            ("round_trip_residual", x.round_trip_residual),
        ];
        let mut s = String::from("quantity,value\n");
        for (k, v) in summary {
            let _ = writeln!(s, "{k},{v}");
        }
        t.push(("summary", s));
    }
    Ok(t)
}

fn compact<T: Serialize>(v: &T) -> Result<String, CliError> {
    serde_json::to_string(v).map_err(|e| CliError::Output(e.to_string()))
}

fn preamble(r: &Report) -> Result<String, CliError> {
    Ok(format!(
        "# config: {}\n# regime: {}\n",
        compact(&r.config)?,
        compact(&r.regime)?
    ))
}

/// Writes `<command>.json` or `<command>_<table>.csv` into `dir`, or everything to stdout.
pub fn emit(r: &Report, dir: Option<&Path>) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Output(e.to_string());
    let cmd = r.config.command.as_str();
    match r.config.format {
        Format::Json => {
            let mut doc =
                serde_json::to_string_pretty(r).map_err(|e| CliError::Output(e.to_string()))?;
            doc.push('\n');
            match dir {
                Some(d) => {
                    std::fs::create_dir_all(d).map_err(io)?;
                    std::fs::write(d.join(format!("{cmd}.json")), doc).map_err(io)?;
                }
                None => print!("{doc}"),
            }
        }
        Format::Csv => {
            let head = preamble(r)?;
            let tabs = tables(r)?;
            match dir {
                Some(d) => {
                    std::fs::create_dir_all(d).map_err(io)?;
                    for (name, body) in tabs {
                        std::fs::write(
                            d.join(format!("{cmd}_{name}.csv")),
                            format!("{head}{body}"),
                        )
                        .map_err(io)?;
                    }
                }
                None => {
                    let parts: Vec<String> = tabs
                        .into_iter()
                        .map(|(name, body)| format!("# table: {name}\n{head}{body}"))
                        .collect();
                    print!("{}", parts.join("\n"));
                }
            }
        }
    }
    Ok(())
}
