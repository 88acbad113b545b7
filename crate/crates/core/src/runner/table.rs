//! Column-oriented result tables with CSV and JSON rendering.
//!
//! Tables carry their provenance: the configuration that produced them,
//! the crate version, a timestamp, and free-form notes (verdicts,
//! warnings). CSV output is deterministic except for the timestamp line.

use serde::{Deserialize, Serialize};

use crate::error::JcError;

/// One named column of equal-length table data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub series: Series,
}

/// Column payload. Untagged on the wire: integers are tried first so
/// counting columns survive a JSON round trip as integers.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Series {
    Integer(Vec<i64>),
    Numeric(Vec<f64>),
    Text(Vec<String>),
}

impl Series {
    pub fn len(&self) -> usize {
        match self {
            Series::Integer(v) => v.len(),
            Series::Numeric(v) => v.len(),
            Series::Text(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn cell(&self, row: usize) -> String {
        match self {
            Series::Integer(v) => v[row].to_string(),
            Series::Numeric(v) => format_float(v[row]),
            Series::Text(v) => escape_csv(&v[row]),
        }
    }
}

/// Provenance attached to every table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Metadata {
    /// The configuration the table was computed from, echoed verbatim.
    pub config: serde_json::Value,
    pub version: String,
    /// Unix seconds at creation; the one field excluded from output
    /// determinism.
    pub timestamp: String,
    pub notes: Vec<String>,
}

impl Metadata {
    pub fn new(config: serde_json::Value, notes: Vec<String>) -> Self {
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs().to_string())
            .unwrap_or_else(|_| "0".into());
        Metadata {
            config,
            version: env!("CARGO_PKG_VERSION").into(),
            timestamp,
            notes,
        }
    }
}

/// Equal-length named columns plus metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultTable {
    pub columns: Vec<Column>,
    pub metadata: Metadata,
}

impl ResultTable {
    pub fn new(columns: Vec<Column>, metadata: Metadata) -> Result<Self, JcError> {
        if let Some(first) = columns.first() {
            let rows = first.series.len();
            for column in &columns {
                if column.series.len() != rows {
                    return Err(JcError::Output(format!(
                        "column {:?} has {} rows, expected {rows}",
                        column.name,
                        column.series.len()
                    )));
                }
            }
        }
        Ok(ResultTable { columns, metadata })
    }

    pub fn n_rows(&self) -> usize {
        self.columns.first().map_or(0, |c| c.series.len())
    }

    pub fn column(&self, name: &str) -> Option<&Series> {
        self.columns
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.series)
    }

    /// CSV with `# key: value` provenance above the header and `# note`
    /// lines after the data. Always newline-terminated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# version: {}\n", self.metadata.version));
        out.push_str(&format!("# timestamp: {}\n", self.metadata.timestamp));
        out.push_str(&format!("# config: {}\n", self.metadata.config));
        let header: Vec<String> = self
            .columns
            .iter()
            .map(|c| escape_csv(&c.name))
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in 0..self.n_rows() {
            let cells: Vec<String> = self.columns.iter().map(|c| c.series.cell(row)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        for note in &self.metadata.notes {
            out.push_str(&format!("# {note}\n"));
        }
        out
    }

    /// Pretty JSON of the whole table. Non-finite values become null,
    /// following the JSON grammar.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("table serializes");
        text.push('\n');
        text
    }

    pub fn render(&self, format: super::OutputFormat) -> String {
        match format {
            super::OutputFormat::Csv => self.to_csv(),
            super::OutputFormat::Json => self.to_json(),
        }
    }
}

/// Float cell formatting: plain decimal where it is compact, scientific
/// below 1e-4 where decimals would be all zeros, and literal inf/NaN
/// markers. Exact zero prints as "0".
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else if x == 0.0 {
        "0".into()
    } else if x.abs() < 1e-4 {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn escape_csv(text: &str) -> String {
    if text.contains(',') || text.contains('"') || text.contains('\n') {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> ResultTable {
        ResultTable::new(
            vec![
                Column {
                    name: "k".into(),
                    series: Series::Integer(vec![1, 2]),
                },
                Column {
                    name: "value".into(),
                    series: Series::Numeric(vec![0.5, 3e-7]),
                },
                Column {
                    name: "tag".into(),
                    series: Series::Text(vec!["plain".into(), "a,b".into()]),
                },
            ],
            Metadata::new(json!({"case": "sample"}), vec!["note one".into()]),
        )
        .unwrap()
    }

    #[test]
    fn float_formatting_rules() {
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(-0.0), "0");
        assert_eq!(format_float(0.5), "0.5");
        assert_eq!(format_float(2e-4), "0.0002");
        assert_eq!(format_float(3e-7), "3e-7");
        assert_eq!(format_float(-1.25e-5), "-1.25e-5");
        assert_eq!(format_float(f64::INFINITY), "inf");
        assert_eq!(format_float(f64::NEG_INFINITY), "-inf");
        assert_eq!(format_float(f64::NAN), "NaN");
        assert_eq!(format_float(1.5414940825367982), "1.5414940825367982");
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        assert!(csv.ends_with('\n'));
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# version: "));
        assert!(lines[1].starts_with("# timestamp: "));
        assert_eq!(lines[2], r#"# config: {"case":"sample"}"#);
        assert_eq!(lines[3], "k,value,tag");
        assert_eq!(lines[4], "1,0.5,plain");
        assert_eq!(lines[5], "2,3e-7,\"a,b\"");
        assert_eq!(lines[6], "# note one");
    }

    #[test]
    fn csv_is_deterministic_outside_the_timestamp() {
        let strip = |csv: String| -> String {
            csv.lines()
                .filter(|l| !l.starts_with("# timestamp:"))
                .collect::<Vec<_>>()
                .join("\n")
        };
        assert_eq!(strip(sample().to_csv()), strip(sample().to_csv()));
    }

    #[test]
    fn json_round_trip_keeps_series_types() {
        let table = sample();
        let back: ResultTable = serde_json::from_str(&table.to_json()).unwrap();
        assert!(matches!(back.columns[0].series, Series::Integer(_)));
        assert!(matches!(back.columns[1].series, Series::Numeric(_)));
        assert!(matches!(back.columns[2].series, Series::Text(_)));
        assert_eq!(back.n_rows(), 2);
    }

    #[test]
    fn ragged_columns_are_rejected() {
        let result = ResultTable::new(
            vec![
                Column {
                    name: "a".into(),
                    series: Series::Integer(vec![1]),
                },
                Column {
                    name: "b".into(),
                    series: Series::Integer(vec![1, 2]),
                },
            ],
            Metadata::new(json!(null), vec![]),
        );
        assert!(matches!(result, Err(JcError::Output(_))));
    }
}
