//! Sentiment backends.
//!
//! A backend maps text to a [`SentimentResult`]: a polarity label plus an
//! intensity in `[0, 1]`. The pipeline works with [`SignedScore`]s, the
//! intensity signed by polarity, so positive text lands in `(0, 1]`,
//! negative text in `[-1, 0)` and neutral text at exactly `0`.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::SentimentError;

pub mod adapter;
pub mod cache;
pub mod lexicon;

pub use adapter::{AdapterBackend, AdapterConfig};
pub use cache::{CachedBackend, ResultCache};
pub use lexicon::{lexicon_analyze, Lexicon, LexiconBackend};

/// Default chunk size, in whitespace-delimited tokens.
pub const DEFAULT_MAX_CHUNK_TOKENS: usize = 120;

/// Hugging Face model the reference adapter serves.
pub const DEFAULT_ADAPTER_MODEL: &str = "finiteautomata/bertweet-base-sentiment-analysis";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SentimentLabel {
    #[serde(rename = "POS")]
    Positive,
    #[serde(rename = "NEG")]
    Negative,
    #[serde(rename = "NEU")]
    Neutral,
}

impl SentimentLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            SentimentLabel::Positive => "POS",
            SentimentLabel::Negative => "NEG",
            SentimentLabel::Neutral => "NEU",
        }
    }
}

impl fmt::Display for SentimentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SentimentLabel {
    type Err = SentimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "POS" => Ok(SentimentLabel::Positive),
            "NEG" => Ok(SentimentLabel::Negative),
            "NEU" => Ok(SentimentLabel::Neutral),
            other => Err(SentimentError::protocol(format!("unknown_label: {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SentimentResult {
    pub label: SentimentLabel,
    pub intensity: f64,
}

impl SentimentResult {
    /// Validating constructor; rejects intensities outside `[0, 1]` and NaN.
    pub fn new(label: SentimentLabel, intensity: f64) -> Option<Self> {
        (0.0..=1.0)
            .contains(&intensity)
            .then_some(SentimentResult { label, intensity })
    }

    /// What empty text scores as: confidently neutral.
    pub const fn empty_text() -> Self {
        SentimentResult {
            label: SentimentLabel::Neutral,
            intensity: 1.0,
        }
    }
}

/// Polarity-signed intensity in `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignedScore(f64);

impl SignedScore {
    pub const ZERO: SignedScore = SignedScore(0.0);

    pub fn new(value: f64) -> Option<Self> {
        (-1.0..=1.0).contains(&value).then_some(SignedScore(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

pub fn to_signed(result: SentimentResult) -> SignedScore {
    match result.label {
        SentimentLabel::Positive => SignedScore(result.intensity),
        SentimentLabel::Negative => SignedScore(-result.intensity),
        SentimentLabel::Neutral => SignedScore::ZERO,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BackendDescriptor {
    pub id: String,
    pub version: String,
    pub max_chunk_tokens: usize,
    /// Upper bound on analyses in flight at once.
    pub parallelism: usize,
}

impl BackendDescriptor {
    pub fn new(
        id: impl Into<String>,
        version: impl Into<String>,
        max_chunk_tokens: usize,
        parallelism: usize,
    ) -> Result<Self, SentimentError> {
        if max_chunk_tokens < 8 {
            return Err(SentimentError::Config(format!(
                "max_chunk_tokens must be at least 8, got {max_chunk_tokens}"
            )));
        }
        if parallelism == 0 {
            return Err(SentimentError::Config("parallelism must be positive".into()));
        }
        Ok(BackendDescriptor {
            id: id.into(),
            version: version.into(),
            max_chunk_tokens,
            parallelism,
        })
    }
}

/// Anything that maps non-empty text to a polarity and intensity.
///
/// Callers go through [`analyze`], which handles empty text without touching
/// the backend.
pub trait SentimentBackend: Send + Sync {
    fn descriptor(&self) -> &BackendDescriptor;

    fn analyze_text(&self, text: &str) -> Result<SentimentResult, SentimentError>;
}

impl<B: SentimentBackend + ?Sized> SentimentBackend for Box<B> {
    fn descriptor(&self) -> &BackendDescriptor {
        (**self).descriptor()
    }

    fn analyze_text(&self, text: &str) -> Result<SentimentResult, SentimentError> {
        (**self).analyze_text(text)
    }
}

impl<B: SentimentBackend + ?Sized> SentimentBackend for &B {
    fn descriptor(&self) -> &BackendDescriptor {
        (**self).descriptor()
    }

    fn analyze_text(&self, text: &str) -> Result<SentimentResult, SentimentError> {
        (**self).analyze_text(text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendKind {
    Lexicon,
    Adapter,
}

impl FromStr for BackendKind {
    type Err = SentimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lexicon" => Ok(BackendKind::Lexicon),
            "adapter" => Ok(BackendKind::Adapter),
            other => Err(SentimentError::Config(format!("unknown backend `{other}`"))),
        }
    }
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BackendKind::Lexicon => "lexicon",
            BackendKind::Adapter => "adapter",
        })
    }
}

pub fn analyze<B: SentimentBackend + ?Sized>(
    backend: &B,
    text: &str,
) -> Result<SentimentResult, SentimentError> {
    if text.is_empty() {
        return Ok(SentimentResult::empty_text());
    }
    let result = backend.analyze_text(text)?;
    if !(0.0..=1.0).contains(&result.intensity) {
        return Err(SentimentError::protocol("score_out_of_range"));
    }
    Ok(result)
}

/// Scores `text` in chunks of at most `max_chunk_tokens` whitespace tokens
/// and pools the signed chunk scores, weighting each by its token count.
pub fn chunk_and_pool<B: SentimentBackend + ?Sized>(
    backend: &B,
    text: &str,
) -> Result<SignedScore, SentimentError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() {
        return Ok(to_signed(analyze(backend, "")?));
    }
    let max = backend.descriptor().max_chunk_tokens.max(1);
    if tokens.len() <= max {
        return Ok(to_signed(analyze(backend, text)?));
    }

    let mut scored = Vec::with_capacity(tokens.len().div_ceil(max));
    for chunk in tokens.chunks(max) {
        let signed = to_signed(analyze(backend, &chunk.join(" "))?);
        scored.push((signed.value(), chunk.len()));
    }
    Ok(pool_weighted(&scored))
}

/// Token-count-weighted mean of `(signed, tokens)` pairs.
pub fn pool_weighted(chunks: &[(f64, usize)]) -> SignedScore {
    let total: usize = chunks.iter().map(|(_, n)| n).sum();
    if total == 0 {
        return SignedScore::ZERO;
    }
    let sum: f64 = chunks.iter().map(|(v, n)| v * *n as f64).sum();
    // A weighted mean never leaves the hull of its inputs; rounding could.
    let lo = chunks.iter().map(|(v, _)| *v).fold(f64::INFINITY, f64::min);
    let hi = chunks.iter().map(|(v, _)| *v).fold(f64::NEG_INFINITY, f64::max);
    SignedScore((sum / total as f64).clamp(lo, hi).clamp(-1.0, 1.0))
}

/// Wraps a backend and counts how often it is actually invoked.
pub struct CountingBackend<B> {
    inner: B,
    calls: AtomicUsize,
}

impl<B: SentimentBackend> CountingBackend<B> {
    pub fn new(inner: B) -> Self {
        CountingBackend {
            inner,
            calls: AtomicUsize::new(0),
        }
    }

    pub fn invocations(&self) -> usize {
        self.calls.load(Ordering::SeqCst)
    }

    pub fn into_inner(self) -> B {
        self.inner
    }
}

impl<B: SentimentBackend> SentimentBackend for CountingBackend<B> {
    fn descriptor(&self) -> &BackendDescriptor {
        self.inner.descriptor()
    }

    fn analyze_text(&self, text: &str) -> Result<SentimentResult, SentimentError> {
        self.calls.fetch_add(1, Ordering::SeqCst);
        self.inner.analyze_text(text)
    }
}
