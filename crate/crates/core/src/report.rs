//! Ranked-table rendering (CSV, JSON, markdown) and score-file parsing.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::scoring::{EventScoreRow, RankedTable};

pub const SCORES_HEADER: [&str; 6] = [
    "rank",
    "activity_name",
    "problems_score",
    "conclusion_score",
    "recommendations_score",
    "event_score",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
    Md,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "md" | "markdown" => Ok(OutputFormat::Md),
            other => Err(format!("unknown output format `{other}` (expected csv, json or md)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("missing column `{0}`")]
    MissingColumn(String),
    #[error("row {row}: bad value {value:?} for `{column}`")]
    BadValue {
        row: usize,
        column: String,
        value: String,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// `0.69986` becomes `"69.99%"`; halves round up.
pub fn format_percent(fraction: f64) -> String {
    let hundredths_of_percent = fraction * 10_000.0;
    // snap away binary representation noise before the half-up step
    let snapped = (hundredths_of_percent * 1e6).round() / 1e6;
    let units = (snapped + 0.5).floor() as i64;
    let sign = if units < 0 { "-" } else { "" };
    let units = units.abs();
    format!("{sign}{}.{:02}%", units / 100, units % 100)
}

pub fn format_fraction(fraction: f64) -> String {
    format!("{fraction:.6}")
}

fn format_value(v: f64, percent: bool) -> String {
    if percent {
        format_percent(v)
    } else {
        format_fraction(v)
    }
}

#[derive(Serialize)]
struct JsonRow<'a> {
    rank: usize,
    activity_name: &'a str,
    problems_score: String,
    conclusion_score: String,
    recommendations_score: String,
    event_score: String,
}

fn cells(table: &RankedTable, percent: bool) -> impl Iterator<Item = (usize, &str, [String; 4])> {
    table.rows.iter().map(move |r| {
        (
            r.rank,
            r.row.name.as_str(),
            [
                format_value(r.row.n_p, percent),
                format_value(r.row.n_c, percent),
                format_value(r.row.n_r, percent),
                format_value(r.row.event_score, percent),
            ],
        )
    })
}

fn md_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('|', "\\|").replace(['\n', '\r'], " ")
}

pub fn render_table(table: &RankedTable, format: OutputFormat, percent: bool) -> String {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(SCORES_HEADER).expect("in-memory write");
            for (rank, name, [p, c, r, y]) in cells(table, percent) {
                w.write_record([rank.to_string().as_str(), name, &p, &c, &r, &y])
                    .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
        }
        OutputFormat::Json => {
            let rows: Vec<JsonRow> = cells(table, percent)
                .map(|(rank, activity_name, [p, c, r, y])| JsonRow {
                    rank,
                    activity_name,
                    problems_score: p,
                    conclusion_score: c,
                    recommendations_score: r,
                    event_score: y,
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&rows).expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Md => {
            let mut s = String::new();
            s.push_str("| Rank | Activity Name | Problems Encountered | Conclusion | Recommendations | Event Score |\n");
            s.push_str("|---:|---|---:|---:|---:|---:|\n");
            for (rank, name, [p, c, r, y]) in cells(table, percent) {
                let _ = writeln!(s, "| {rank} | {} | {p} | {c} | {r} | {y} |", md_escape(name));
            }
            s
        }
    }
}

fn parse_value(raw: &str, row: usize, column: &str) -> Result<f64, ReportError> {
    let bad = || ReportError::BadValue {
        row,
        column: column.to_string(),
        value: raw.to_string(),
    };
    let trimmed = raw.trim();
    let v = match trimmed.strip_suffix('%') {
        Some(pct) => pct.trim().parse::<f64>().map_err(|_| bad())? / 100.0,
        None => trimmed.parse::<f64>().map_err(|_| bad())?,
    };
    if !(0.0..=1.0).contains(&v) {
        return Err(bad());
    }
    Ok(v)
}

/// Reads a scores CSV as written by [`render_table`], in either number mode.
/// The `rank` column is ignored; callers re-rank.
pub fn parse_scores_csv(text: &str) -> Result<Vec<EventScoreRow>, ReportError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| ReportError::MissingColumn(name.to_string()))
    };
    let name_i = col("activity_name")?;
    let p_i = col("problems_score")?;
    let c_i = col("conclusion_score")?;
    let r_i = col("recommendations_score")?;
    let y_i = col("event_score")?;

    let mut rows = Vec::new();
    for (row, rec) in reader.records().enumerate() {
        let rec = rec?;
        let get = |i: usize| rec.get(i).unwrap_or("");
        rows.push(EventScoreRow {
            name: get(name_i).to_string(),
            n_p: parse_value(get(p_i), row, "problems_score")?,
            n_c: parse_value(get(c_i), row, "conclusion_score")?,
            n_r: parse_value(get(r_i), row, "recommendations_score")?,
            event_score: parse_value(get(y_i), row, "event_score")?,
        });
    }
    Ok(rows)
}
