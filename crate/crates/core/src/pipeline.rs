//! Corpus-to-ranking driver.
//!
//! Feature texts are scored with at most `parallelism` analyses in flight
//! (the backend's declared limit). Normalization waits for every raw score,
//! since column bounds depend on the whole corpus.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use thiserror::Error;

use crate::corpus::{select_features, validate_corpus, CorpusManifest, ValidationEntry};
use crate::error::{ScoringError, SentimentError};
use crate::scoring::{rank_events, score_corpus, EventScoreRow, FeatureMatrix, FeatureRow, RankedTable, WeightConfig};
use crate::sentiment::{chunk_and_pool, SentimentBackend, SignedScore};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{} invalid record(s)", .0.iter().filter(|e| e.status == "invalid").count())]
    Validation(Vec<ValidationEntry>),
    #[error(transparent)]
    Sentiment(#[from] SentimentError),
    #[error(transparent)]
    Scoring(#[from] ScoringError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoredCorpus {
    pub matrix: FeatureMatrix,
    /// Input order.
    pub scores: Vec<EventScoreRow>,
    pub table: RankedTable,
}

/// Signed P/R/C scores for every record, in record order.
pub fn raw_feature_matrix<B>(backend: &B, manifest: &CorpusManifest) -> Result<FeatureMatrix, SentimentError>
where
    B: SentimentBackend + ?Sized,
{
    let features: Vec<_> = manifest.records.iter().map(select_features).collect();
    let texts: Vec<&str> = features
        .iter()
        .flat_map(|f| [f.p.as_str(), f.r.as_str(), f.c.as_str()])
        .collect();
    let scores = score_texts(backend, &texts)?;

    let rows = manifest
        .records
        .iter()
        .zip(scores.chunks_exact(3))
        .map(|(record, s)| FeatureRow {
            name: record.name.clone(),
            p_raw: s[0],
            r_raw: s[1],
            c_raw: s[2],
        })
        .collect();
    Ok(FeatureMatrix::new(rows))
}

/// Runs [`chunk_and_pool`] over `texts` on up to `parallelism` workers.
/// The first failure stops the remaining work and is returned.
pub fn score_texts<B>(backend: &B, texts: &[&str]) -> Result<Vec<SignedScore>, SentimentError>
where
    B: SentimentBackend + ?Sized,
{
    let workers = backend.descriptor().parallelism.max(1).min(texts.len().max(1));
    if workers == 1 {
        return texts.iter().map(|t| chunk_and_pool(backend, t)).collect();
    }

    let next = AtomicUsize::new(0);
    let failed = AtomicBool::new(false);
    let first_error: Mutex<Option<(usize, SentimentError)>> = Mutex::new(None);
    let results: Mutex<Vec<Option<SignedScore>>> = Mutex::new(vec![None; texts.len()]);

    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                if failed.load(Ordering::SeqCst) {
                    return;
                }
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= texts.len() {
                    return;
                }
                match chunk_and_pool(backend, texts[i]) {
                    Ok(score) => results.lock().unwrap()[i] = Some(score),
                    Err(e) => {
                        failed.store(true, Ordering::SeqCst);
                        let mut slot = first_error.lock().unwrap();
                        // keep the lowest-index failure so reports are stable
                        if slot.as_ref().is_none_or(|(j, _)| i < *j) {
                            *slot = Some((i, e));
                        }
                        return;
                    }
                }
            });
        }
    });

    if let Some((_, e)) = first_error.into_inner().unwrap() {
        return Err(e);
    }
    Ok(results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|s| s.expect("every index scored"))
        .collect())
}

/// Validates, scores, normalizes and ranks a corpus.
pub fn score_manifest<B>(
    backend: &B,
    manifest: &CorpusManifest,
    weights: &WeightConfig,
) -> Result<ScoredCorpus, PipelineError>
where
    B: SentimentBackend + ?Sized,
{
    let report = validate_corpus(manifest);
    if report.iter().any(|e| e.status == "invalid") {
        return Err(PipelineError::Validation(report));
    }
    if manifest.records.is_empty() {
        return Err(ScoringError::EmptyCorpus.into());
    }
    let matrix = raw_feature_matrix(backend, manifest)?;
    let scores = score_corpus(&matrix, weights)?;
    let table = rank_events(scores.clone())?;
    Ok(ScoredCorpus { matrix, scores, table })
}
