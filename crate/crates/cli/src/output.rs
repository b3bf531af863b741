use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `value < tolerance`.
    pub fn below(name: &str, value: f64, tolerance: f64) -> Self {
        Check {
            name: name.to_string(),
            value,
            tolerance,
            pass: value < tolerance,
        }
    }

    pub fn flag(name: &str, ok: bool) -> Self {
        Check {
            name: name.to_string(),
            value: if ok { 1.0 } else { 0.0 },
            tolerance: 1.0,
            pass: ok,
        }
    }
}

/// Everything a command produces, independent of the output format.
pub struct Report {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Extra CSV lines, written after the rows with a leading `#`.
    pub notes: Vec<String>,
    pub results: Value,
    pub checks: Vec<Check>,
    /// Set when the rows already list the checks.
    pub checks_are_rows: bool,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self, format: Format, config: &Value) -> Result<String> {
        Ok(match format {
            Format::Csv => {
                let mut out = String::new();
                out.push_str(&self.header.join(","));
                out.push('\n');
                for r in &self.rows {
                    out.push_str(&r.join(","));
                    out.push('\n');
                }
                for n in &self.notes {
                    out.push_str("# ");
                    out.push_str(n);
                    out.push('\n');
                }
                for c in self.checks.iter().filter(|_| !self.checks_are_rows) {
                    out.push_str(&format!(
                        "# check {}: {} (value {}, tolerance {})\n",
                        c.name,
                        if c.pass { "PASS" } else { "FAIL" },
                        sci(c.value),
                        sci(c.tolerance)
                    ));
                }
                out
            }
            Format::Json => {
                let doc = json!({ "config": config, "results": self.results, "checks": self.checks });
                let mut s = serde_json::to_string_pretty(&doc)?;
                s.push('\n');
                s
            }
        })
    }
}

pub fn write_output(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

/// Eight significant digits, fixed notation in the usual range.
pub fn sig8(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    // the exponent after rounding to eight digits decides the layout
    let e_form = format!("{x:.7e}");
    let exp: i32 = e_form.rsplit('e').next().and_then(|s| s.parse().ok()).unwrap_or(0);
    if (-4..16).contains(&exp) {
        format!("{:.*}", (7 - exp).max(0) as usize, x)
    } else {
        e_form
    }
}

pub fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

/// Shortest exponent form that round-trips.
pub fn full(x: f64) -> String {
    format!("{x:e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eight_significant_digits() {
        assert_eq!(sig8(17.793015580), "17.793016");
        assert_eq!(sig8(-2.455832725), "-2.4558327");
        assert_eq!(sig8(79.789590076), "79.789590");
        assert_eq!(sig8(9.99999999), "10.000000");
        assert_eq!(sig8(0.0), "0");
        assert_eq!(sig8(-0.0), "0");
        assert_eq!(sig8(1.234e-9), "1.2340000e-9");
        assert_eq!(sig8(0.5), "0.50000000");
    }
}
