use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::error::CliError;

pub const REPORT_SCHEMA: &str = "padelin-report/1";

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    config: &'a RunConfig,
    ok: bool,
    result: &'a T,
}

/// A finished command: the payload and how to lay it out as CSV.
pub struct Report<T: Serialize> {
    pub ok: bool,
    pub result: T,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl<T: Serialize> Report<T> {
    pub fn render(&self, cfg: &RunConfig) -> Result<String, CliError> {
        match cfg.format.unwrap_or(Format::Json) {
            Format::Json => {
                let env = Envelope { schema: REPORT_SCHEMA, config: cfg, ok: self.ok, result: &self.result };
                let mut out = serde_json::to_string_pretty(&env).map_err(|e| CliError::falsified(e.to_string()))?;
                out.push('\n');
                Ok(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::falsified(e.to_string());
                w.write_record(&self.header).map_err(io)?;
                for row in &self.rows {
                    w.write_record(row).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::falsified(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::falsified(e.to_string()))
            }
        }
    }
}

/// Little-endian base-`p` digits joined by `;`.
pub fn digit_string(digits: &[u64]) -> String {
    digits.iter().map(u64::to_string).collect::<Vec<_>>().join(";")
}
