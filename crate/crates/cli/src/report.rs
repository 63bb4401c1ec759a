//! Report rows and their json, csv and text encodings.

use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// One JSON object per line.
    Json,
    Csv,
    #[default]
    Text,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

impl FromStr for Format {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => bail!("unknown report format {s:?} (json, csv, text)"),
        }
    }
}

/// Rows that can be laid out as a text table.
pub trait Tabular {
    fn headers() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

/// The outcome of checking one identity instance. Field order is the key
/// order of the json and csv encodings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub n: u32,
    pub params: String,
    pub weight: u32,
    /// Empty when nothing was evaluated.
    pub residual: String,
    pub err: String,
    pub numeric: String,
    pub exact: String,
    pub variant: Option<String>,
    pub wall_time_us: u64,
    /// Why a point was skipped.
    pub note: Option<String>,
}

impl Tabular for VerificationReport {
    fn headers() -> &'static [&'static str] {
        &["id", "n", "params", "weight", "residual", "err", "numeric", "exact", "variant", "time_us", "note"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.id.clone(),
            self.n.to_string(),
            self.params.clone(),
            self.weight.to_string(),
            self.residual.clone(),
            self.err.clone(),
            self.numeric.clone(),
            self.exact.clone(),
            self.variant.clone().unwrap_or_default(),
            self.wall_time_us.to_string(),
            self.note.clone().unwrap_or_default(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalRow {
    pub index: String,
    pub digits: u32,
    pub value: String,
    pub err: String,
}

impl Tabular for EvalRow {
    fn headers() -> &'static [&'static str] {
        &["index", "digits", "value", "err"]
    }

    fn cells(&self) -> Vec<String> {
        vec![self.index.clone(), self.digits.to_string(), self.value.clone(), self.err.clone()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationsRow {
    pub weight: u32,
    pub families: String,
    pub ambient: usize,
    pub rows: usize,
    pub rank: usize,
    /// `ambient - rank`, an upper bound on the dimension of the weight piece.
    pub quotient: usize,
}

impl Tabular for RelationsRow {
    fn headers() -> &'static [&'static str] {
        &["weight", "families", "ambient", "rows", "rank", "quotient"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.weight.to_string(),
            self.families.clone(),
            self.ambient.to_string(),
            self.rows.to_string(),
            self.rank.to_string(),
            self.quotient.to_string(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub identity: String,
    pub monomial: String,
    pub status: String,
    pub residual: String,
    pub err: String,
    pub difference: String,
}

impl Tabular for SeriesRow {
    fn headers() -> &'static [&'static str] {
        &["identity", "monomial", "status", "residual", "err", "difference"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.identity.clone(),
            self.monomial.clone(),
            self.status.clone(),
            self.residual.clone(),
            self.err.clone(),
            self.difference.clone(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub id: String,
    pub params: String,
    pub min_n: u32,
    pub weight: String,
    pub variants: String,
    pub summary: String,
}

impl Tabular for CatalogRow {
    fn headers() -> &'static [&'static str] {
        &["id", "params", "min_n", "weight", "variants", "summary"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.id.clone(),
            self.params.clone(),
            self.min_n.to_string(),
            self.weight.clone(),
            self.variants.clone(),
            self.summary.clone(),
        ]
    }
}

pub fn emit<T: Serialize + Tabular>(rows: &[T], format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut out = String::new();
            for r in rows {
                out.push_str(&serde_json::to_string(r)?);
                out.push('\n');
            }
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r)?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
        Format::Text => Ok(table(rows)),
    }
}

pub fn parse<T: DeserializeOwned>(text: &str, format: Format) -> Result<Vec<T>> {
    match format {
        Format::Json => text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .enumerate()
            .map(|(i, l)| serde_json::from_str(l).with_context(|| format!("json report line {}", i + 1)))
            .collect(),
        Format::Csv => {
            let mut r = csv::Reader::from_reader(text.as_bytes());
            r.deserialize().map(|row| row.context("csv report row")).collect()
        }
        Format::Text => bail!("text reports are not parsed back"),
    }
}

fn table<T: Tabular>(rows: &[T]) -> String {
    let headers = T::headers();
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.cells()).collect();
    let mut width: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in &cells {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |items: Vec<&str>| -> String {
        let mut s = String::new();
        for (i, (item, w)) in items.iter().zip(&width).enumerate() {
            if i + 1 == items.len() {
                s.push_str(item);
            } else {
                s.push_str(&format!("{item:<w$}  "));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    for row in &cells {
        out.push_str(&line(row.iter().map(|s| s.as_str()).collect()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<VerificationReport> {
        vec![
            VerificationReport {
                id: "euler-sum".into(),
                n: 5,
                params: String::new(),
                weight: 5,
                residual: "-1.2e-31".into(),
                err: "3.0e-31".into(),
                numeric: "pass".into(),
                exact: "proven".into(),
                variant: None,
                wall_time_us: 812,
                note: None,
            },
            VerificationReport {
                id: "thm-depth4".into(),
                n: 5,
                params: "1,2,3,4".into(),
                weight: 5,
                residual: "2.5e0".into(),
                err: "1.0e-30".into(),
                numeric: "fail".into(),
                exact: "skipped".into(),
                variant: Some("cycle".into()),
                wall_time_us: 90,
                note: Some("has, a comma".into()),
            },
        ]
    }

    #[test]
    fn json_and_csv_round_trip() {
        let rows = sample();
        for f in [Format::Json, Format::Csv] {
            let text = emit(&rows, f).unwrap();
            assert_eq!(parse::<VerificationReport>(&text, f).unwrap(), rows, "{f}");
        }
    }

    #[test]
    fn json_keys_in_fixed_order() {
        let text = emit(&sample()[..1], Format::Json).unwrap();
        let keys = ["id", "n", "params", "weight", "residual", "err", "numeric", "exact", "variant", "wall_time_us"];
        let pos: Vec<usize> = keys.iter().map(|k| text.find(&format!("\"{k}\"")).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn csv_header_matches_fields() {
        let text = emit(&sample(), Format::Csv).unwrap();
        assert!(text.starts_with("id,n,params,weight,residual,err,numeric,exact,variant,wall_time_us,note\n"));
    }

    #[test]
    fn text_table_aligns_columns() {
        let text = emit(&sample(), Format::Text).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        let col = lines[0].find("params").unwrap();
        assert_eq!(&lines[2][col..col + 7], "1,2,3,4");
        assert!(parse::<VerificationReport>(&text, Format::Text).is_err());
    }
}
