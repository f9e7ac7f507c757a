//! Corpus ingestion, validation and feature selection.
//!
//! The input is the consolidated table of post-activity reports, either as
//! CSV with the header
//!
//! ```text
//! activity_name,date,duration_days,school_year,term,problems_encountered,recommendations,conclusion
//! ```
//!
//! or as JSONL objects carrying the same eight keys. Only the three narrative
//! features reach the sentiment backends; date, duration, school year and
//! term are dropped by [`select_features`].

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::Read;
use std::str::FromStr;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CorpusError;

/// Wire column names, in canonical order.
pub const COLUMNS: [&str; 8] = [
    "activity_name",
    "date",
    "duration_days",
    "school_year",
    "term",
    "problems_encountered",
    "recommendations",
    "conclusion",
];

pub const FLAG_EMPTY_P: &str = "empty:P";
pub const FLAG_EMPTY_R: &str = "empty:R";
pub const FLAG_EMPTY_C: &str = "empty:C";

/// One post-activity report row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActivityRecord {
    pub name: String,
    /// Raw `MM/DD/YYYY` string as it appeared on the wire.
    pub date: String,
    pub duration_days: Option<i64>,
    pub school_year: String,
    pub term: String,
    pub problems: String,
    pub recommendations: String,
    pub conclusion: String,
}

/// The three sentiment-bearing texts of a record, after cleanup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeatureText {
    pub p: String,
    pub r: String,
    pub c: String,
    pub flags: BTreeSet<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusManifest {
    pub source_id: String,
    pub records: Vec<ActivityRecord>,
    /// Non-fatal findings from parsing (ignored columns, empty corpus).
    #[serde(skip)]
    pub warnings: Vec<String>,
}

impl CorpusManifest {
    pub fn new(source_id: impl Into<String>, records: Vec<ActivityRecord>) -> Self {
        CorpusManifest {
            source_id: source_id.into(),
            records,
            warnings: Vec::new(),
        }
    }

    pub fn record_count(&self) -> usize {
        self.records.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Csv,
    Jsonl,
}

impl InputFormat {
    /// Guess from a file extension; anything but `.jsonl`/`.ndjson` is CSV.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("jsonl") || ext.eq_ignore_ascii_case("ndjson") => {
                InputFormat::Jsonl
            }
            _ => InputFormat::Csv,
        }
    }
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(InputFormat::Csv),
            "jsonl" => Ok(InputFormat::Jsonl),
            other => Err(format!("unknown input format `{other}` (expected csv or jsonl)")),
        }
    }
}

impl fmt::Display for InputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputFormat::Csv => "csv",
            InputFormat::Jsonl => "jsonl",
        })
    }
}

/// Reads a whole corpus. Records keep file order.
pub fn parse_corpus<R: Read>(
    mut source: R,
    format: InputFormat,
    source_id: &str,
) -> Result<CorpusManifest, CorpusError> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    let text = std::str::from_utf8(&bytes).map_err(|e| CorpusError::Encoding {
        offset: e.valid_up_to(),
    })?;
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);

    let mut manifest = match format {
        InputFormat::Csv => parse_csv(text, source_id)?,
        InputFormat::Jsonl => parse_jsonl(text, source_id)?,
    };
    if manifest.records.is_empty() {
        manifest.warnings.push("empty corpus".to_string());
    }
    for w in &manifest.warnings {
        log::warn!("{source_id}: {w}");
    }
    Ok(manifest)
}

fn parse_duration(raw: &str, row: usize) -> Result<Option<i64>, CorpusError> {
    let trimmed = raw.trim();
    if trimmed.is_empty() {
        return Ok(None);
    }
    trimmed
        .parse::<i64>()
        .map(Some)
        .map_err(|_| CorpusError::InvalidField {
            row,
            column: "duration_days".to_string(),
            value: raw.to_string(),
        })
}

fn parse_csv(text: &str, source_id: &str) -> Result<CorpusManifest, CorpusError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(text.as_bytes());

    let headers = reader.headers()?.clone();
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut warnings = Vec::new();
    for (i, h) in headers.iter().enumerate() {
        match COLUMNS.iter().find(|c| **c == h) {
            Some(col) => {
                index.entry(col).or_insert(i);
            }
            None => warnings.push(format!("ignoring unknown column `{h}`")),
        }
    }
    if let Some(missing) = COLUMNS.iter().find(|c| !index.contains_key(*c)) {
        return Err(CorpusError::MissingColumn {
            column: missing.to_string(),
        });
    }

    let mut records = Vec::new();
    for (row, result) in reader.records().enumerate() {
        let rec = result?;
        let field = |col: &str| rec.get(index[col]).unwrap_or("").to_string();
        records.push(ActivityRecord {
            name: field("activity_name"),
            date: field("date"),
            duration_days: parse_duration(&field("duration_days"), row)?,
            school_year: field("school_year"),
            term: field("term"),
            problems: field("problems_encountered"),
            recommendations: field("recommendations"),
            conclusion: field("conclusion"),
        });
    }

    Ok(CorpusManifest {
        source_id: source_id.to_string(),
        records,
        warnings,
    })
}

fn parse_jsonl(text: &str, source_id: &str) -> Result<CorpusManifest, CorpusError> {
    let mut records = Vec::new();
    let mut unknown: BTreeSet<String> = BTreeSet::new();

    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let line_no = lineno + 1;
        let row = records.len();
        let value: Value = serde_json::from_str(line).map_err(|e| CorpusError::Json {
            line: line_no,
            message: e.to_string(),
        })?;
        let obj = value.as_object().ok_or_else(|| CorpusError::Json {
            line: line_no,
            message: "expected a JSON object".to_string(),
        })?;
        for key in obj.keys() {
            if !COLUMNS.contains(&key.as_str()) {
                unknown.insert(key.clone());
            }
        }

        let text_field = |col: &str| -> Result<String, CorpusError> {
            match obj.get(col) {
                None => Err(CorpusError::MissingColumn {
                    column: col.to_string(),
                }),
                Some(Value::String(s)) => Ok(s.clone()),
                Some(Value::Null) => Ok(String::new()),
                Some(other) => Err(CorpusError::InvalidField {
                    row,
                    column: col.to_string(),
                    value: other.to_string(),
                }),
            }
        };
        let duration_days = match obj.get("duration_days") {
            None => {
                return Err(CorpusError::MissingColumn {
                    column: "duration_days".to_string(),
                })
            }
            Some(Value::Null) => None,
            Some(Value::Number(n)) => Some(n.as_i64().ok_or_else(|| CorpusError::InvalidField {
                row,
                column: "duration_days".to_string(),
                value: n.to_string(),
            })?),
            Some(Value::String(s)) => parse_duration(s, row)?,
            Some(other) => {
                return Err(CorpusError::InvalidField {
                    row,
                    column: "duration_days".to_string(),
                    value: other.to_string(),
                })
            }
        };

        records.push(ActivityRecord {
            name: text_field("activity_name")?,
            date: text_field("date")?,
            duration_days,
            school_year: text_field("school_year")?,
            term: text_field("term")?,
            problems: text_field("problems_encountered")?,
            recommendations: text_field("recommendations")?,
            conclusion: text_field("conclusion")?,
        });
    }

    Ok(CorpusManifest {
        source_id: source_id.to_string(),
        records,
        warnings: unknown
            .into_iter()
            .map(|k| format!("ignoring unknown column `{k}`"))
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationResult {
    Valid,
    ValidWithFlags(BTreeSet<String>),
    Invalid {
        reasons: Vec<String>,
        flags: BTreeSet<String>,
    },
}

impl ValidationResult {
    pub fn is_valid(&self) -> bool {
        !matches!(self, ValidationResult::Invalid { .. })
    }

    pub fn status(&self) -> &'static str {
        match self {
            ValidationResult::Valid => "valid",
            ValidationResult::ValidWithFlags(_) => "valid_with_flags",
            ValidationResult::Invalid { .. } => "invalid",
        }
    }
}

fn empty_feature_flags(record: &ActivityRecord) -> BTreeSet<String> {
    [
        (&record.problems, FLAG_EMPTY_P),
        (&record.recommendations, FLAG_EMPTY_R),
        (&record.conclusion, FLAG_EMPTY_C),
    ]
    .into_iter()
    .filter(|(text, _)| preprocess_text(text).is_empty())
    .map(|(_, flag)| flag.to_string())
    .collect()
}

fn check_date(raw: &str) -> Option<&'static str> {
    let b = raw.as_bytes();
    let shape_ok = b.len() == 10
        && b[2] == b'/'
        && b[5] == b'/'
        && b.iter()
            .enumerate()
            .all(|(i, c)| i == 2 || i == 5 || c.is_ascii_digit());
    if !shape_ok {
        return Some("bad_date_format");
    }
    let month: u32 = raw[0..2].parse().ok()?;
    let day: u32 = raw[3..5].parse().ok()?;
    let year: i32 = raw[6..10].parse().ok()?;
    match NaiveDate::from_ymd_opt(year, month, day) {
        Some(_) => None,
        None => Some("invalid_date"),
    }
}

/// Checks every rule and reports all violations at once.
pub fn validate_record(record: &ActivityRecord) -> ValidationResult {
    let mut reasons = Vec::new();
    if record.name.trim().is_empty() {
        reasons.push("empty_name".to_string());
    }
    if let Some(reason) = check_date(&record.date) {
        reasons.push(reason.to_string());
    }
    if matches!(record.duration_days, Some(d) if d < 1) {
        reasons.push("bad_duration".to_string());
    }

    let flags = empty_feature_flags(record);
    if !reasons.is_empty() {
        ValidationResult::Invalid { reasons, flags }
    } else if !flags.is_empty() {
        ValidationResult::ValidWithFlags(flags)
    } else {
        ValidationResult::Valid
    }
}

/// One line of a validation report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationEntry {
    pub row_index: usize,
    pub status: String,
    pub reasons: Vec<String>,
    pub flags: Vec<String>,
}

pub fn validate_corpus(manifest: &CorpusManifest) -> Vec<ValidationEntry> {
    manifest
        .records
        .iter()
        .enumerate()
        .map(|(row_index, record)| {
            let result = validate_record(record);
            let status = result.status().to_string();
            let (reasons, flags) = match result {
                ValidationResult::Valid => (Vec::new(), Vec::new()),
                ValidationResult::ValidWithFlags(flags) => (Vec::new(), flags.into_iter().collect()),
                ValidationResult::Invalid { reasons, flags } => (reasons, flags.into_iter().collect()),
            };
            ValidationEntry {
                row_index,
                status,
                reasons,
                flags,
            }
        })
        .collect()
}

const ELLIPSIS_CHAR: char = '\u{2026}';

fn strip_leading_ellipsis(s: &str) -> &str {
    let dots = s.chars().take_while(|c| *c == '.').count();
    if dots >= 3 {
        return &s[dots..];
    }
    s.strip_prefix(ELLIPSIS_CHAR).unwrap_or(s)
}

fn strip_trailing_ellipsis(s: &str) -> &str {
    let dots = s.chars().rev().take_while(|c| *c == '.').count();
    if dots >= 3 {
        return &s[..s.len() - dots];
    }
    s.strip_suffix(ELLIPSIS_CHAR).unwrap_or(s)
}

/// Removes noise from a feature text.
///
/// Control characters are dropped, whitespace runs collapse to one space, and
/// ellipses (`...` or `…`) at either end are removed. Case and interior
/// punctuation are left alone. The function is idempotent.
pub fn preprocess_text(raw: &str) -> String {
    let mut collapsed = String::with_capacity(raw.len());
    let mut pending_space = false;
    for ch in raw.chars() {
        if ch.is_whitespace() {
            pending_space = true;
        } else if ch.is_control() {
            continue;
        } else {
            if pending_space && !collapsed.is_empty() {
                collapsed.push(' ');
            }
            pending_space = false;
            collapsed.push(ch);
        }
    }

    let mut s = collapsed.as_str();
    loop {
        let next = strip_trailing_ellipsis(strip_leading_ellipsis(s)).trim_matches(' ');
        if next.len() == s.len() {
            break;
        }
        s = next;
    }
    s.to_string()
}

/// Keeps P, R and C (cleaned) and drops the metadata fields.
pub fn select_features(record: &ActivityRecord) -> FeatureText {
    FeatureText {
        p: preprocess_text(&record.problems),
        r: preprocess_text(&record.recommendations),
        c: preprocess_text(&record.conclusion),
        flags: empty_feature_flags(record),
    }
}
