//! Experiment rows and the fixed CSV/JSON output formats.
//!
//! Number formatting is pinned (`{:.12e}` for reals, exact decimal strings
//! for norms) so that identical configs produce byte-identical files.

use serde::Serialize;
use std::io::{self, Write};

/// One family member's measurement record. Gm scans leave the witness
/// columns empty; elliptic scans fill them. A nonempty `skip` marks a row
/// that was emitted without measurements (divisor zero, budget).
#[derive(Clone, Debug, Default, Serialize)]
pub struct ExperimentRow {
    pub n: i64,
    pub u: String,
    pub h_u: Option<f64>,
    pub h_d: Option<f64>,
    pub h_deg1: Option<f64>,
    pub h_deg_gt1: Option<f64>,
    pub norm_i: Option<String>,
    pub norm_j: Option<String>,
    pub c_u: Option<f64>,
    pub flag_eps: Option<bool>,
    pub skip: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_witness: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu_witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exceptional: Option<bool>,
}

pub const GM_HEADER: &str = "n,u,h_u,h_D,h_deg1,h_deg_gt1,norm_I,norm_J,c_u,flag_eps,skip";
pub const ELL_HEADER: &str =
    "n,u,h_u,h_D,h_deg1,h_deg_gt1,norm_I,norm_J,c_u,flag_eps,skip,m_witness,nu_witness,exceptional";

pub fn fmt_real(x: f64) -> String {
    format!("{:.12e}", x)
}

fn opt_real(x: &Option<f64>) -> String {
    x.map(fmt_real).unwrap_or_default()
}

fn opt_str(x: &Option<String>) -> String {
    x.clone().unwrap_or_default()
}

fn opt_bool(x: &Option<bool>) -> String {
    x.map(|b| b.to_string()).unwrap_or_default()
}

impl ExperimentRow {
    pub fn skipped(n: i64, u: String, reason: &str) -> Self {
        ExperimentRow {
            n,
            u,
            skip: reason.to_string(),
            ..Default::default()
        }
    }

    fn csv_core(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.u,
            opt_real(&self.h_u),
            opt_real(&self.h_d),
            opt_real(&self.h_deg1),
            opt_real(&self.h_deg_gt1),
            opt_str(&self.norm_i),
            opt_str(&self.norm_j),
            opt_real(&self.c_u),
            opt_bool(&self.flag_eps),
            self.skip,
        )
    }

    pub fn csv_gm(&self) -> String {
        self.csv_core()
    }

    pub fn csv_ell(&self) -> String {
        format!(
            "{},{},{},{}",
            self.csv_core(),
            self.m_witness.map(|m| m.to_string()).unwrap_or_default(),
            opt_str(&self.nu_witness),
            opt_bool(&self.exceptional),
        )
    }
}

/// Run metadata embedded in every output file.
#[derive(Clone, Debug, Serialize)]
pub struct RunMeta {
    pub command: String,
    pub version: String,
    pub precision: usize,
    pub tolerance: f64,
    pub config: serde_json::Value,
    pub config_hash: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub banner: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanOutput {
    #[serde(flatten)]
    pub meta: RunMeta,
    pub rows: Vec<ExperimentRow>,
}

impl ScanOutput {
    pub fn write_csv(&self, w: &mut dyn Write, elliptic: bool) -> io::Result<()> {
        writeln!(w, "# command: {}", self.meta.command)?;
        writeln!(w, "# version: {}", self.meta.version)?;
        writeln!(w, "# precision: {}", self.meta.precision)?;
        writeln!(w, "# tolerance: {:e}", self.meta.tolerance)?;
        writeln!(w, "# config: {}", self.meta.config)?;
        writeln!(w, "# config_hash: {}", self.meta.config_hash)?;
        for b in &self.meta.banner {
            writeln!(w, "# {}", b)?;
        }
        writeln!(w, "{}", if elliptic { ELL_HEADER } else { GM_HEADER })?;
        for row in &self.rows {
            writeln!(
                w,
                "{}",
                if elliptic {
                    row.csv_ell()
                } else {
                    row.csv_gm()
                }
            )?;
        }
        Ok(())
    }

    pub fn write_json(&self, w: &mut dyn Write) -> io::Result<()> {
        let s = serde_json::to_string_pretty(self).expect("serializable");
        writeln!(w, "{}", s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_is_fixed_width() {
        assert_eq!(fmt_real(0.5), "5.000000000000e-1");
        assert_eq!(fmt_real(169.0), "1.690000000000e2");
    }

    #[test]
    fn skipped_rows_have_empty_fields() {
        let r = ExperimentRow::skipped(3, "u".into(), "divisor-zero");
        assert_eq!(r.csv_gm(), "3,u,,,,,,,,,divisor-zero");
    }
}
