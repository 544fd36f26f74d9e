//! CSV and JSON-lines emission of experiment records, and config loading.

use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::experiment::{ExperimentConfig, ExperimentRecord, TailPoint};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "jsonl",
        }
    }
}

pub const RECORD_COLUMNS: [&str; 9] = ["n", "k", "seed", "stat", "value", "b", "a", "M", "m"];

/// Writes rows of any serializable type: CSV with a header, or one JSON
/// object per line.
pub fn write_rows<T: Serialize, W: Write>(rows: &[T], format: OutputFormat, out: W) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            for row in rows {
                writer.serialize(row)?;
            }
            writer.flush()?;
        }
        OutputFormat::Json => {
            let mut out = out;
            for row in rows {
                serde_json::to_writer(&mut out, row)?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
    }
    Ok(())
}

pub fn read_rows<T: DeserializeOwned, R: Read>(input: R, format: OutputFormat) -> Result<Vec<T>> {
    match format {
        OutputFormat::Csv => csv::Reader::from_reader(input)
            .deserialize()
            .map(|r| r.map_err(Error::from))
            .collect(),
        OutputFormat::Json => BufReader::new(input)
            .lines()
            .filter(|l| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
            .map(|line| Ok(serde_json::from_str(&line?)?))
            .collect(),
    }
}

pub fn write_records<W: Write>(
    records: &[ExperimentRecord],
    format: OutputFormat,
    out: W,
) -> Result<()> {
    write_rows(records, format, out)
}

pub fn read_records<R: Read>(input: R, format: OutputFormat) -> Result<Vec<ExperimentRecord>> {
    read_rows(input, format)
}

pub fn write_tail_curve<W: Write>(curve: &[TailPoint], format: OutputFormat, out: W) -> Result<()> {
    write_rows(curve, format, out)
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<ExperimentRecord> {
        vec![
            ExperimentRecord {
                n: 64,
                k: 0,
                seed: 7,
                stat: "lambda_max".into(),
                value: 2.512_345_678_901_234,
                b: 2.466_441_431_158_106,
                a: std::f64::consts::SQRT_2,
                max_s: 4.0,
                min_s: 0.5,
            },
            ExperimentRecord {
                n: 3,
                k: 2,
                seed: u64::MAX,
                stat: "trace_uu".into(),
                value: 1e-300,
                b: 0.1 + 0.2,
                a: 0.0,
                max_s: 3.0,
                min_s: 1.0,
            },
        ]
    }

    #[test]
    fn csv_header_and_round_trip() {
        let mut buf = Vec::new();
        write_records(&sample(), OutputFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().next().unwrap(), RECORD_COLUMNS.join(","));
        assert_eq!(
            read_records(buf.as_slice(), OutputFormat::Csv).unwrap(),
            sample()
        );
    }

    #[test]
    fn json_lines_round_trip() {
        let mut buf = Vec::new();
        write_records(&sample(), OutputFormat::Json, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap().lines().count(), 2);
        assert_eq!(
            read_records(buf.as_slice(), OutputFormat::Json).unwrap(),
            sample()
        );
    }

    #[test]
    fn config_documents() {
        let rate = r#"{"kind":"rate","family":"uniform:0.5:4","n_grid":[64,128],"replications":12,"seed":5}"#;
        let parsed: ExperimentConfig = serde_json::from_str(rate).unwrap();
        assert!(matches!(parsed, ExperimentConfig::Rate(ref c) if c.n_grid == vec![64, 128]));
        let back: ExperimentConfig =
            serde_json::from_str(&serde_json::to_string(&parsed).unwrap()).unwrap();
        assert_eq!(back, parsed);
        let bad = r#"{"kind":"rate","family":"weird","n_grid":[4],"replications":12,"seed":5}"#;
        assert!(serde_json::from_str::<ExperimentConfig>(bad).is_err());
    }
}
