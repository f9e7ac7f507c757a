//! Event Scores for student-organization post-activity reports.
//!
//! Each report carries three narrative features: problems encountered (P),
//! recommendations (R) and a conclusion (C). The pipeline sentiment-scores
//! each feature, min-max normalizes every feature column across the corpus
//! and combines the normalized values into a weighted Event Score:
//!
//! ```text
//! event_score = 0.2 * P + 0.4 * R + 0.4 * C
//! ```
//!
//! Modules follow the pipeline order:
//!
//! - [`corpus`]: CSV/JSONL ingestion, record validation, text cleanup and
//!   feature selection.
//! - [`sentiment`]: backends that turn text into a polarity and intensity
//!   (a deterministic lexicon scorer and an out-of-process model adapter),
//!   chunk pooling and a content-addressed result cache.
//! - [`scoring`]: per-column normalization, weighted aggregation and ranking.
//! - [`report`]: CSV, JSON and markdown rendering of ranked tables.
//! - [`pipeline`]: glue that drives a corpus through a backend.
//! - [`cli`]: the `score`, `validate` and `rank` commands.
//!
//! ```
//! use eventscore::scoring::{aggregate_event_score, WeightConfig};
//!
//! let y = aggregate_event_score(0.0307, 0.8407, 0.8936, &WeightConfig::default());
//! assert!((y - 0.69986).abs() < 1e-9);
//! ```

pub mod cli;
pub mod corpus;
pub mod error;
pub mod pipeline;
pub mod report;
pub mod scoring;
pub mod sentiment;

pub use error::{CorpusError, ScoringError, SentimentError};
