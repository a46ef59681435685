use legendre_ms::rational::{to_fraction_string, Rational};
use legendre_ms::{Error, Result};
use serde::Serialize;

use crate::Format;

/// One report in every format the command supports.
pub struct Rendered {
    pub json: serde_json::Value,
    pub text: String,
    pub csv: Option<String>,
    /// Process exit status once the report is written.
    pub status: u8,
}

impl Rendered {
    pub fn new(value: &impl Serialize, text: String) -> Result<Self> {
        let json = serde_json::to_value(value).map_err(|e| Error::InternalConsistency(format!("json: {e}")))?;
        Ok(Rendered {
            json,
            text,
            csv: None,
            status: 0,
        })
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn with_status(mut self, status: u8) -> Self {
        self.status = status;
        self
    }

    pub fn body(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json)
                .map(|s| s + "\n")
                .map_err(|e| e.to_string()),
            Format::Text => Ok(self.text.clone()),
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| "this command has no CSV form; use --format json or text".to_string()),
        }
    }
}

/// CSV from a header and rows of already-formatted fields.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let err = |e: csv::Error| Error::InternalConsistency(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(row).map_err(err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InternalConsistency(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::InternalConsistency(format!("csv: {e}")))
}

pub fn frac(r: &Rational) -> String {
    to_fraction_string(r)
}
