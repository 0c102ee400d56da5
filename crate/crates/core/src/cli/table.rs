//! Tabular output: CSV with a header row, or one JSON object per line.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    #[value(name = "json-lines")]
    JsonLines,
}

/// One row of a run table. Missing quantities are empty in CSV and `null` in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub model_id: String,
    pub x: f64,
    pub t: f64,
    pub v: f64,
    pub regime: String,
    pub gamma: f64,
    #[serde(rename = "Gamma_v")]
    pub gamma_v: Option<f64>,
    pub psi_star: Option<f64>,
    pub log_asymptotic: Option<f64>,
    pub log_mc: Option<f64>,
    pub mc_se_rel: Option<f64>,
    pub log_oracle: Option<f64>,
    pub n_paths: Option<u64>,
    pub seed: Option<u64>,
}

pub const RUN_COLUMNS: [&str; 14] = [
    "model_id",
    "x",
    "t",
    "v",
    "regime",
    "gamma",
    "Gamma_v",
    "psi_star",
    "log_asymptotic",
    "log_mc",
    "mc_se_rel",
    "log_oracle",
    "n_paths",
    "seed",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CltRow {
    pub model_id: String,
    pub x: f64,
    pub v: f64,
    pub omega_sq: f64,
    pub mean_tau: f64,
    pub mean_z: f64,
    pub var_z: f64,
    pub n: u64,
    pub seed: u64,
}

pub const CLT_COLUMNS: [&str; 9] =
    ["model_id", "x", "v", "omega_sq", "mean_tau", "mean_z", "var_z", "n", "seed"];

pub trait Row: Serialize {
    fn header() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt_f64(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

fn opt_u64(v: Option<u64>) -> String {
    v.map(|n| n.to_string()).unwrap_or_default()
}

impl Row for RunRow {
    fn header() -> &'static [&'static str] {
        &RUN_COLUMNS
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.model_id.clone(),
            fmt_f64(self.x),
            fmt_f64(self.t),
            fmt_f64(self.v),
            self.regime.clone(),
            fmt_f64(self.gamma),
            opt_f64(self.gamma_v),
            opt_f64(self.psi_star),
            opt_f64(self.log_asymptotic),
            opt_f64(self.log_mc),
            opt_f64(self.mc_se_rel),
            opt_f64(self.log_oracle),
            opt_u64(self.n_paths),
            opt_u64(self.seed),
        ]
    }
}

impl Row for CltRow {
    fn header() -> &'static [&'static str] {
        &CLT_COLUMNS
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.model_id.clone(),
            fmt_f64(self.x),
            fmt_f64(self.v),
            fmt_f64(self.omega_sq),
            fmt_f64(self.mean_tau),
            fmt_f64(self.mean_z),
            fmt_f64(self.var_z),
            self.n.to_string(),
            self.seed.to_string(),
        ]
    }
}

/// Renders rows in the requested format, newline-terminated.
pub fn render<R: Row>(rows: &[R], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(&R::header().join(","));
            out.push('\n');
            for row in rows {
                out.push_str(&row.cells().join(","));
                out.push('\n');
            }
        }
        Format::JsonLines => {
            for row in rows {
                let line = serde_json::to_string(row).expect("rows serialize");
                let _ = writeln!(out, "{line}");
            }
        }
    }
    out
}

fn cell_f64(raw: &str, line: usize, column: &str) -> Result<Option<f64>> {
    if raw.is_empty() {
        return Ok(None);
    }
    raw.parse::<f64>().map(Some).map_err(|_| Error::Parse {
        line,
        msg: format!("column {column}: expected a number, got {raw:?}"),
    })
}

fn cell_u64(raw: &str, line: usize, column: &str) -> Result<Option<u64>> {
    if raw.is_empty() {
        return Ok(None);
    }
    raw.parse::<u64>().map(Some).map_err(|_| Error::Parse {
        line,
        msg: format!("column {column}: expected an integer, got {raw:?}"),
    })
}

/// Reads a run table written by [`render`] in CSV format.
pub fn parse_run_csv(text: &str) -> Result<Vec<RunRow>> {
    let mut lines = text.lines().enumerate();
    let header = lines.next().map(|(_, h)| h).unwrap_or("");
    if header != RUN_COLUMNS.join(",") {
        return Err(Error::Parse { line: 1, msg: format!("unexpected header {header:?}") });
    }
    lines
        .filter(|(_, l)| !l.is_empty())
        .map(|(idx, l)| {
            let line = idx + 1;
            let cells: Vec<&str> = l.split(',').collect();
            if cells.len() != RUN_COLUMNS.len() {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected {} cells, got {}", RUN_COLUMNS.len(), cells.len()),
                });
            }
            let required = |i: usize| {
                cell_f64(cells[i], line, RUN_COLUMNS[i])?.ok_or_else(|| Error::Parse {
                    line,
                    msg: format!("column {} is required", RUN_COLUMNS[i]),
                })
            };
            Ok(RunRow {
                model_id: cells[0].to_string(),
                x: required(1)?,
                t: required(2)?,
                v: required(3)?,
                regime: cells[4].to_string(),
                gamma: required(5)?,
                gamma_v: cell_f64(cells[6], line, RUN_COLUMNS[6])?,
                psi_star: cell_f64(cells[7], line, RUN_COLUMNS[7])?,
                log_asymptotic: cell_f64(cells[8], line, RUN_COLUMNS[8])?,
                log_mc: cell_f64(cells[9], line, RUN_COLUMNS[9])?,
                mc_se_rel: cell_f64(cells[10], line, RUN_COLUMNS[10])?,
                log_oracle: cell_f64(cells[11], line, RUN_COLUMNS[11])?,
                n_paths: cell_u64(cells[12], line, RUN_COLUMNS[12])?,
                seed: cell_u64(cells[13], line, RUN_COLUMNS[13])?,
            })
        })
        .collect()
}
