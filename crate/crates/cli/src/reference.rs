//! The embedded reference dataset of published values, overridable through
//! the HYPERADIA_REF_DATA environment variable.

use anyhow::{Context, Result};
use serde::Deserialize;

pub const ENV_OVERRIDE: &str = "HYPERADIA_REF_DATA";
const EMBEDDED: &str = include_str!("../data/reference.json");

#[derive(Debug, Deserialize)]
pub struct ReferenceData {
    pub potential: PotentialRef,
    pub rho: f64,
    pub table1: Table1Ref,
    pub table2: Table2Ref,
    pub table3: Table3Ref,
    pub fig3: Fig3Ref,
}

#[derive(Debug, Deserialize)]
pub struct PotentialRef {
    pub lambda_star: f64,
}

#[derive(Debug, Deserialize)]
pub struct Table1Ref {
    pub source: String,
    pub channel: [i64; 3],
    pub direct: String,
    pub direct_abs_tol: f64,
    pub ritz_abs_tol: f64,
    pub rows: Vec<Table1Row>,
}

#[derive(Debug, Deserialize)]
pub struct Table1Row {
    pub n_max: u32,
    pub v_eff: String,
}

#[derive(Debug, Deserialize)]
pub struct Table2Ref {
    pub source: String,
    pub rows: Vec<Table2Row>,
}

#[derive(Debug, Deserialize)]
pub struct Table2Row {
    pub parity: String,
    pub inplane: i32,
    pub order: u32,
    pub ritz: String,
    pub stated_n_max: u32,
    pub l: u32,
    pub l1: i32,
    pub l2: i32,
    pub direct: String,
}

#[derive(Debug, Deserialize)]
pub struct Table3Ref {
    pub source: String,
    pub abs_tol: f64,
    pub rows: Vec<Table3Row>,
}

#[derive(Debug, Deserialize)]
pub struct Table3Row {
    pub parity: String,
    pub inplane: i32,
    pub order: u32,
    pub l1: i32,
    pub l: u32,
    pub l2: i32,
    pub a_fit: String,
    pub a: String,
    pub a_star: String,
}

#[derive(Debug, Deserialize)]
pub struct Fig3Ref {
    pub source: String,
    pub abs_tol: f64,
    pub rows: Vec<Fig3Row>,
}

#[derive(Debug, Deserialize)]
pub struct Fig3Row {
    pub l1: u32,
    pub l2: i32,
    pub l: u32,
    pub q: String,
}

/// Five units of the last printed decimal digit.
pub fn last_digit_tol(printed: &str) -> f64 {
    let decimals = printed.split('.').nth(1).map_or(0, str::len);
    5.0 * 10f64.powi(-(decimals as i32))
}

/// Load the dataset, honoring the environment override; returns the data and
/// the path it came from (None for the embedded copy).
pub fn load() -> Result<(ReferenceData, Option<String>)> {
    match std::env::var(ENV_OVERRIDE) {
        Ok(path) if !path.is_empty() => {
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("reading {ENV_OVERRIDE}={path}"))?;
            let data = serde_json::from_str(&text)
                .with_context(|| format!("parsing reference data at {path}"))?;
            Ok((data, Some(path)))
        }
        _ => Ok((
            serde_json::from_str(EMBEDDED).context("parsing embedded reference data")?,
            None,
        )),
    }
}
