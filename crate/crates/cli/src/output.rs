//! Deterministic table formatting and the JSON sidecar.

use anyhow::{Context, Result};
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Fixed 12-significant-digit formatting: positional decimal in a sane
/// magnitude window, scientific outside it. Identical input bits give
/// identical strings.
pub fn fmt_g12(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000000".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..12).contains(&mag) {
        let decimals = (11 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}

/// A rectangular table with a mandatory header.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "ragged table row");
        self.rows.push(row);
    }

    /// Comma separated, '.' decimal, LF endings, UTF-8, header first.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str(&self.header.join(","));
        s.push('\n');
        for row in &self.rows {
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                self.header
                    .iter()
                    .zip(row)
                    .map(|(k, v)| ((*k).to_string(), serde_json::Value::String(v.clone())))
                    .collect::<serde_json::Map<_, _>>()
                    .into()
            })
            .collect();
        serde_json::json!({ "header": self.header, "rows": rows })
    }
}

/// One reference comparison in the sidecar.
#[derive(Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub computed: f64,
    pub reference: f64,
    pub abs_diff: f64,
    pub tol: f64,
    pub pass: bool,
    pub provenance: String,
}

impl Check {
    pub fn new(id: String, computed: f64, reference: f64, tol: f64, provenance: &str) -> Self {
        let abs_diff = (computed - reference).abs();
        Check {
            id,
            computed,
            reference,
            abs_diff,
            tol,
            pass: abs_diff <= tol,
            provenance: provenance.to_string(),
        }
    }
}

/// Sidecar payload: config echo, timing, checks and row-level failures.
#[derive(Debug, Serialize)]
pub struct Sidecar {
    pub command: String,
    /// The exact invocation, re-runnable as-is.
    pub argv: Vec<String>,
    pub reference_data: Option<String>,
    pub wall_time_s: f64,
    pub checks: Vec<Check>,
    pub row_errors: Vec<String>,
    pub notes: Vec<String>,
    pub pass: bool,
}

impl Sidecar {
    pub fn new(command: &str) -> Self {
        Sidecar {
            command: command.to_string(),
            argv: std::env::args().collect(),
            reference_data: None,
            wall_time_s: 0.0,
            checks: Vec::new(),
            row_errors: Vec::new(),
            notes: Vec::new(),
            pass: true,
        }
    }

    pub fn finish(&mut self, started: std::time::Instant) {
        self.wall_time_s = started.elapsed().as_secs_f64();
        self.pass = self.checks.iter().all(|c| c.pass) && self.row_errors.is_empty();
    }
}

/// Write the table (and sidecar when a path is given); returns the process
/// exit code: 0 only when every embedded check passed and no row failed.
pub fn emit(table: &Table, format: &str, out: Option<&PathBuf>, sidecar: &Sidecar) -> Result<i32> {
    let body = match format {
        "json" => {
            let mut doc = table.to_json();
            doc["meta"] = serde_json::to_value(sidecar)?;
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        _ => table.to_csv(),
    };
    match out {
        Some(path) => {
            write_atomic(path, body.as_bytes())?;
            let meta = serde_json::to_string_pretty(sidecar)? + "\n";
            let meta_path = sidecar_path(path);
            write_atomic(&meta_path, meta.as_bytes())?;
        }
        None => {
            print!("{body}");
            if format != "json" {
                // keep stdout byte-stable; the summary goes to stderr
                for check in sidecar.checks.iter().filter(|c| !c.pass) {
                    eprintln!(
                        "check failed: {} computed {} vs {} (tol {})",
                        check.id,
                        fmt_g12(check.computed),
                        fmt_g12(check.reference),
                        check.tol
                    );
                }
                for e in &sidecar.row_errors {
                    eprintln!("row error: {e}");
                }
            }
        }
    }
    Ok(if sidecar.pass { 0 } else { 1 })
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut os = out.as_os_str().to_os_string();
    os.push(".meta.json");
    PathBuf::from(os)
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut f =
        std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    f.write_all(bytes)?;
    Ok(())
}
