//! Corpus-relative normalization and weighted Event Scores.
//!
//! Each feature column (P, R, C) is min-max normalized across the whole
//! corpus, so scores are only comparable within one run.

use std::cmp::Ordering;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::ScoringError;
use crate::sentiment::SignedScore;

/// Tolerance for the weight sum.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureRow {
    pub name: String,
    pub p_raw: SignedScore,
    pub r_raw: SignedScore,
    pub c_raw: SignedScore,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FeatureMatrix {
    pub rows: Vec<FeatureRow>,
}

impl FeatureMatrix {
    pub fn new(rows: Vec<FeatureRow>) -> Self {
        FeatureMatrix { rows }
    }

    /// Debug dump with header `activity_name,p_raw,r_raw,c_raw`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["activity_name", "p_raw", "r_raw", "c_raw"])?;
        for row in &self.rows {
            w.write_record([
                row.name.clone(),
                row.p_raw.value().to_string(),
                row.r_raw.value().to_string(),
                row.c_raw.value().to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Feature weights; non-negative and summing to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightConfig {
    pub w_p: f64,
    pub w_r: f64,
    pub w_c: f64,
}

impl Default for WeightConfig {
    fn default() -> Self {
        WeightConfig {
            w_p: 0.2,
            w_r: 0.4,
            w_c: 0.4,
        }
    }
}

impl WeightConfig {
    pub fn new(w_p: f64, w_r: f64, w_c: f64) -> Result<Self, ScoringError> {
        check_components(w_p, w_r, w_c)?;
        let sum = w_p + w_r + w_c;
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(ScoringError::InvalidWeights("weights_sum".into()));
        }
        Ok(WeightConfig { w_p, w_r, w_c })
    }

    /// Divides each weight by their sum.
    pub fn renormalized(w_p: f64, w_r: f64, w_c: f64) -> Result<Self, ScoringError> {
        check_components(w_p, w_r, w_c)?;
        let sum = w_p + w_r + w_c;
        if sum <= 0.0 {
            return Err(ScoringError::InvalidWeights("weights_sum".into()));
        }
        Ok(WeightConfig {
            w_p: w_p / sum,
            w_r: w_r / sum,
            w_c: w_c / sum,
        })
    }
}

fn check_components(w_p: f64, w_r: f64, w_c: f64) -> Result<(), ScoringError> {
    for w in [w_p, w_r, w_c] {
        if !w.is_finite() {
            return Err(ScoringError::InvalidWeights("non_finite_weight".into()));
        }
        if w < 0.0 {
            return Err(ScoringError::InvalidWeights("negative_weight".into()));
        }
    }
    Ok(())
}

/// Maps a column onto `[0, 1]` via `(x - min) / (max - min)`.
///
/// A constant column (including a single value) carries no information and
/// maps to 0.5 everywhere.
pub fn minmax_normalize(column: &[f64]) -> Result<Vec<f64>, ScoringError> {
    if column.is_empty() {
        return Err(ScoringError::EmptyColumn);
    }
    let min = column.iter().copied().fold(f64::INFINITY, f64::min);
    let max = column.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max > min {
        let span = max - min;
        Ok(column.iter().map(|x| (x - min) / span).collect())
    } else {
        Ok(vec![0.5; column.len()])
    }
}

pub fn aggregate_event_score(n_p: f64, n_r: f64, n_c: f64, weights: &WeightConfig) -> f64 {
    (weights.w_p * n_p + weights.w_r * n_r + weights.w_c * n_c).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventScoreRow {
    pub name: String,
    pub n_p: f64,
    pub n_c: f64,
    pub n_r: f64,
    pub event_score: f64,
}

/// Normalizes every column over the whole matrix, then aggregates per row.
/// Output order follows input order.
pub fn score_corpus(matrix: &FeatureMatrix, weights: &WeightConfig) -> Result<Vec<EventScoreRow>, ScoringError> {
    if matrix.rows.is_empty() {
        return Err(ScoringError::EmptyCorpus);
    }
    for row in &matrix.rows {
        for v in [row.p_raw, row.r_raw, row.c_raw] {
            if !(-1.0..=1.0).contains(&v.value()) {
                return Err(ScoringError::RawOutOfRange {
                    name: row.name.clone(),
                    value: v.value(),
                });
            }
        }
    }
    let column = |f: fn(&FeatureRow) -> SignedScore| -> Result<Vec<f64>, ScoringError> {
        minmax_normalize(&matrix.rows.iter().map(|r| f(r).value()).collect::<Vec<_>>())
    };
    let n_p = column(|r| r.p_raw)?;
    let n_r = column(|r| r.r_raw)?;
    let n_c = column(|r| r.c_raw)?;

    Ok(matrix
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| EventScoreRow {
            name: row.name.clone(),
            n_p: n_p[i],
            n_c: n_c[i],
            n_r: n_r[i],
            event_score: aggregate_event_score(n_p[i], n_r[i], n_c[i], weights),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedRow {
    pub rank: usize,
    #[serde(flatten)]
    pub row: EventScoreRow,
}

/// Event rows in rank order, ranks `1..=n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedTable {
    pub rows: Vec<RankedRow>,
}

impl RankedTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn first(&self) -> Option<&RankedRow> {
        self.rows.first()
    }

    pub fn last(&self) -> Option<&RankedRow> {
        self.rows.last()
    }
}

/// Descending score, then name ascending. Rows that tie on both are ordered
/// by their normalized features so the result never depends on input order.
fn rank_order(a: &EventScoreRow, b: &EventScoreRow) -> Ordering {
    b.event_score
        .total_cmp(&a.event_score)
        .then_with(|| a.name.cmp(&b.name))
        .then_with(|| b.n_p.total_cmp(&a.n_p))
        .then_with(|| b.n_c.total_cmp(&a.n_c))
        .then_with(|| b.n_r.total_cmp(&a.n_r))
}

pub fn rank_events(mut rows: Vec<EventScoreRow>) -> Result<RankedTable, ScoringError> {
    if rows.is_empty() {
        return Err(ScoringError::EmptyCorpus);
    }
    rows.sort_by(rank_order);
    Ok(RankedTable {
        rows: rows
            .into_iter()
            .enumerate()
            .map(|(i, row)| RankedRow { rank: i + 1, row })
            .collect(),
    })
}
