//! Output records and their JSON/CSV renderings. Both encodings carry the
//! same value strings; the CSV schema is versioned by its leading comment
//! line so reproduction tables stay stable.

use clap::ValueEnum;
use serde::Serialize;

pub const CSV_SCHEMA: &str = "# stn-csv v1";

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

fn csv_cell(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt(s: &Option<String>) -> String {
    s.as_deref().map(csv_cell).unwrap_or_default()
}

#[derive(Serialize)]
pub struct GraphOutput {
    pub command: &'static str,
    pub file: String,
    pub constraint: String,
    pub graph_class: String,
    pub method: &'static str,
    pub value: String,
    pub value_decimal: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    pub runtime_ms: u128,
}

impl GraphOutput {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(self).unwrap(),
            OutputFormat::Csv => format!(
                "{CSV_SCHEMA}\ncommand,file,constraint,graph_class,method,value,value_decimal,brute,verdict,runtime_ms\n{},{},{},{},{},{},{},{},{},{}",
                self.command,
                csv_cell(&self.file),
                csv_cell(&self.constraint),
                self.graph_class,
                self.method,
                csv_cell(&self.value),
                self.value_decimal,
                opt(&self.brute),
                opt(&self.verdict),
                self.runtime_ms
            ),
        }
    }
}

#[derive(Serialize)]
pub struct ChainOutput {
    pub command: &'static str,
    pub family: &'static str,
    pub n: usize,
    pub modes: String,
    pub value: String,
    pub value_decimal: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dumped_to: Option<String>,
    pub runtime_ms: u128,
}

impl ChainOutput {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(self).unwrap(),
            OutputFormat::Csv => format!(
                "{CSV_SCHEMA}\ncommand,family,n,modes,value,value_decimal,brute,verdict,runtime_ms\n{},{},{},{},{},{},{},{},{}",
                self.command,
                self.family,
                self.n,
                csv_cell(&self.modes),
                csv_cell(&self.value),
                self.value_decimal,
                opt(&self.brute),
                opt(&self.verdict),
                self.runtime_ms
            ),
        }
    }
}

#[derive(Serialize)]
pub struct ExpectRow {
    pub family: &'static str,
    pub n: usize,
    pub p1: String,
    pub p2: String,
    pub method: String,
    pub value: String,
    pub value_decimal: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhaustive: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Serialize)]
pub struct ExpectOutput {
    pub command: &'static str,
    pub rows: Vec<ExpectRow>,
    pub runtime_ms: u128,
}

impl ExpectOutput {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(self).unwrap(),
            OutputFormat::Csv => {
                let mut out = format!(
                    "{CSV_SCHEMA}\ncommand,family,n,p1,p2,method,value,value_decimal,exhaustive,residual,std_error,samples,seed"
                );
                for row in &self.rows {
                    out.push_str(&format!(
                        "\n{},{},{},{},{},{},{},{},{},{},{},{},{}",
                        self.command,
                        row.family,
                        row.n,
                        csv_cell(&row.p1),
                        csv_cell(&row.p2),
                        row.method,
                        csv_cell(&row.value),
                        row.value_decimal,
                        opt(&row.exhaustive),
                        opt(&row.residual),
                        row.std_error.map(|v| v.to_string()).unwrap_or_default(),
                        row.samples.map(|v| v.to_string()).unwrap_or_default(),
                        row.seed.map(|v| v.to_string()).unwrap_or_default(),
                    ));
                }
                out
            }
        }
    }
}
