//! JSON result envelope and CSV tables.

use crate::config::RunConfig;
use crate::error::CliError;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scalar {
    pub name: String,
    pub value: f64,
    pub unit: String,
}

/// How a computed value is judged against a published estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Agreement {
    /// |computed − reference| ≤ tolerance·reference.
    Relative { tolerance: f64 },
    /// max(a/b, b/a) ≤ factor.
    Factor { factor: f64 },
    /// Computed value within [lower, upper].
    Range { lower: f64, upper: f64 },
    /// The reference is only an order of magnitude; agreement means lying in
    /// [lower, upper] and a discrepancy means lying outside.
    OrderOfMagnitude { lower: f64, upper: f64 },
}

/// A computed quantity set beside a published estimate for the same
/// scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub scenario: String,
    pub quantity: String,
    pub computed: f64,
    pub reference: f64,
    pub unit: String,
    pub agreement: Agreement,
    pub relative_deviation: f64,
    pub within_tolerance: bool,
    /// Set when the two differ by more than one percent, or for an
    /// order-of-magnitude reference, when the value falls outside its range.
    pub discrepancy: bool,
    pub note: String,
}

/// Deviations up to this are treated as reproduction rather than discrepancy.
pub const DISCREPANCY_THRESHOLD: f64 = 0.01;

impl Comparison {
    pub fn new(
        scenario: &str,
        quantity: &str,
        computed: f64,
        reference: f64,
        unit: &str,
        agreement: Agreement,
        note: impl Into<String>,
    ) -> Self {
        let relative_deviation = (computed - reference).abs() / reference.abs();
        let within_tolerance = match agreement {
            Agreement::Relative { tolerance } => relative_deviation <= tolerance,
            Agreement::Factor { factor } => {
                let r = computed / reference;
                r > 0.0 && r.max(1.0 / r) <= factor
            }
            Agreement::Range { lower, upper } | Agreement::OrderOfMagnitude { lower, upper } => {
                (lower..=upper).contains(&computed)
            }
        };
        let discrepancy = match agreement {
            Agreement::OrderOfMagnitude { .. } => !within_tolerance,
            _ => relative_deviation > DISCREPANCY_THRESHOLD,
        };
        Comparison {
            scenario: scenario.into(),
            quantity: quantity.into(),
            computed,
            reference,
            unit: unit.into(),
            agreement,
            relative_deviation,
            within_tolerance,
            discrepancy,
            note: note.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRef {
    pub path: String,
    pub columns: Vec<String>,
    pub rows: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultEnvelope {
    pub command: String,
    pub version: String,
    pub config: RunConfig,
    pub scalars: Vec<Scalar>,
    pub comparisons: Vec<Comparison>,
    pub notes: Vec<String>,
    pub table: Option<TableRef>,
}

impl ResultEnvelope {
    pub fn new(command: &str, config: &RunConfig) -> Self {
        ResultEnvelope {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config: config.clone(),
            scalars: Vec::new(),
            comparisons: Vec::new(),
            notes: Vec::new(),
            table: None,
        }
    }

    pub fn scalar(&mut self, name: impl Into<String>, value: f64, unit: &str) {
        self.scalars.push(Scalar {
            name: name.into(),
            value,
            unit: unit.into(),
        });
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.scalars
            .iter()
            .find(|s| s.name == name)
            .map(|s| s.value)
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        serde_json::to_string_pretty(self).map_err(|e| CliError::Io(e.to_string()))
    }
}

/// Numeric table written as CSV with a header row.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Writes shortest round-trip decimals, so reading back is exact.
    pub fn write_csv(&self, path: &Path) -> Result<(), CliError> {
        let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Io(e.to_string()))?;
        w.write_record(&self.columns)
            .map_err(|e| CliError::Io(e.to_string()))?;
        let mut buf = Vec::with_capacity(self.columns.len());
        for row in &self.rows {
            buf.clear();
            buf.extend(row.iter().map(|v| v.to_string()));
            w.write_record(&buf)
                .map_err(|e| CliError::Io(e.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv(path: &Path) -> Result<Table, CliError> {
        let mut r = csv::Reader::from_path(path).map_err(|e| CliError::Io(e.to_string()))?;
        let columns = r
            .headers()
            .map_err(|e| CliError::Io(e.to_string()))?
            .iter()
            .map(String::from)
            .collect();
        let rows = r
            .records()
            .map(|rec| {
                let rec = rec.map_err(|e| CliError::Io(e.to_string()))?;
                rec.iter()
                    .map(|f| {
                        f.parse::<f64>()
                            .map_err(|e| CliError::Io(format!("{f}: {e}")))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        Ok(Table { columns, rows })
    }
}

/// Files written for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Written {
    pub envelope: PathBuf,
    pub table: Option<PathBuf>,
    pub config_echo: PathBuf,
}

/// Writes `<prefix>.json`, `<prefix>.csv` and the TOML echo
/// `<prefix>.config.toml` into `dir`.
pub fn write_outputs(
    dir: &Path,
    prefix: &str,
    envelope: &mut ResultEnvelope,
    table: Option<&Table>,
) -> Result<Written, CliError> {
    std::fs::create_dir_all(dir)?;
    let table_path = match table {
        Some(t) => {
            let p = dir.join(format!("{prefix}.csv"));
            t.write_csv(&p)?;
            envelope.table = Some(TableRef {
                path: p.display().to_string(),
                columns: t.columns.clone(),
                rows: t.rows.len(),
            });
            Some(p)
        }
        None => None,
    };
    let json = dir.join(format!("{prefix}.json"));
    std::fs::write(&json, envelope.to_json()?)?;
    let echo = dir.join(format!("{prefix}.config.toml"));
    std::fs::write(&echo, envelope.config.to_toml()?)?;
    Ok(Written {
        envelope: json,
        table: table_path,
        config_echo: echo,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agreement_kinds() {
        let c = Comparison::new(
            "s",
            "q",
            4.74,
            5.0,
            "cm",
            Agreement::Relative { tolerance: 0.1 },
            "",
        );
        assert!(c.within_tolerance && c.discrepancy);
        let c = Comparison::new(
            "s",
            "q",
            1.5e-2,
            1e-2,
            "cm",
            Agreement::Factor { factor: 3.0 },
            "",
        );
        assert!(c.within_tolerance);
        let c = Comparison::new(
            "s",
            "q",
            0.2,
            1.0,
            "cm",
            Agreement::Factor { factor: 3.0 },
            "",
        );
        assert!(!c.within_tolerance);
        let c = Comparison::new(
            "s",
            "q",
            8.6e8,
            1e8,
            "",
            Agreement::Range {
                lower: 1e8,
                upper: 1e9,
            },
            "",
        );
        assert!(c.within_tolerance && c.discrepancy);
        let oom = Agreement::OrderOfMagnitude {
            lower: 1e8,
            upper: 1e9,
        };
        let c = Comparison::new("s", "q", 8.6e8, 1e8, "", oom, "");
        assert!(c.within_tolerance && !c.discrepancy);
        let c = Comparison::new("s", "q", 2e9, 1e8, "", oom, "");
        assert!(!c.within_tolerance && c.discrepancy);
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let mut t = Table::new(&["a", "b"]);
        let vals = [
            0.1 + 0.2,
            1.0 / 3.0,
            6.02214076e23,
            -1.6e-19,
            f64::MIN_POSITIVE,
            2.5,
        ];
        for pair in vals.chunks(2) {
            t.push(pair.to_vec());
        }
        let p = dir.path().join("t.csv");
        t.write_csv(&p).unwrap();
        let back = Table::read_csv(&p).unwrap();
        assert_eq!(back, t);
    }
}
