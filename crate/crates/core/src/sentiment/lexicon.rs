//! Deterministic lexicon scorer.
//!
//! Text is lowercased and split on every run of non-alphanumeric characters.
//! Tokens found in the lexicon contribute their valence; a negator flips the
//! sign of the next `negation_window` matched tokens (a later negator restarts
//! the window). The mean valence `m` decides the result:
//!
//! | condition     | label | intensity         |
//! |---------------|-------|-------------------|
//! | no matches    | NEU   | 1.0               |
//! | `m > 0.05`    | POS   | `min(1, |m|)`     |
//! | `m < -0.05`   | NEG   | `min(1, |m|)`     |
//! | otherwise     | NEU   | `1 - min(1, |m|)` |

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use super::{BackendDescriptor, SentimentBackend, SentimentLabel, SentimentResult, DEFAULT_MAX_CHUNK_TOKENS};
use crate::error::SentimentError;

pub const DEFAULT_LEXICON_TSV: &str = include_str!("../../data/default_lexicon.tsv");
pub const DEFAULT_NEGATORS: [&str; 5] = ["not", "no", "never", "without", "cannot"];
pub const DEFAULT_NEGATION_WINDOW: usize = 3;

const NEUTRAL_BAND: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct Lexicon {
    entries: BTreeMap<String, f64>,
    negators: BTreeSet<String>,
    negation_window: usize,
}

fn check_token(token: &str) -> Result<(), String> {
    if token.is_empty() {
        return Err("empty token".into());
    }
    if token.chars().any(char::is_whitespace) {
        return Err(format!("token {token:?} contains whitespace"));
    }
    if token.to_lowercase() != token {
        return Err(format!("token {token:?} is not lowercase"));
    }
    Ok(())
}

impl Lexicon {
    pub fn new<I, N, S>(entries: I, negators: N, negation_window: usize) -> Result<Self, SentimentError>
    where
        I: IntoIterator<Item = (S, f64)>,
        N: IntoIterator<Item = S>,
        S: Into<String>,
    {
        if negation_window == 0 {
            return Err(SentimentError::Config("negation window must be positive".into()));
        }
        let mut map = BTreeMap::new();
        for (token, valence) in entries {
            let token = token.into();
            check_token(&token).map_err(SentimentError::Config)?;
            if !(-1.0..=1.0).contains(&valence) {
                return Err(SentimentError::Config(format!(
                    "valence {valence} for {token:?} is outside [-1, 1]"
                )));
            }
            map.insert(token, valence);
        }
        let mut negs = BTreeSet::new();
        for n in negators {
            let n = n.into();
            check_token(&n).map_err(SentimentError::Config)?;
            negs.insert(n);
        }
        Ok(Lexicon {
            entries: map,
            negators: negs,
            negation_window,
        })
    }

    /// Parses `token<TAB>valence` lines. Blank lines and `#` comments are skipped.
    pub fn from_tsv(
        tsv: &str,
        negators: &[&str],
        negation_window: usize,
    ) -> Result<Self, SentimentError> {
        let mut entries = Vec::new();
        for (i, line) in tsv.lines().enumerate() {
            let line_no = i + 1;
            let trimmed = line.trim_end_matches('\r');
            if trimmed.trim().is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (token, valence) = trimmed.split_once('\t').ok_or_else(|| SentimentError::Lexicon {
                line: line_no,
                message: "expected token<TAB>valence".into(),
            })?;
            let valence: f64 = valence.trim().parse().map_err(|_| SentimentError::Lexicon {
                line: line_no,
                message: format!("bad valence {valence:?}"),
            })?;
            if let Err(message) = check_token(token) {
                return Err(SentimentError::Lexicon { line: line_no, message });
            }
            entries.push((token.to_string(), valence));
        }
        Lexicon::new(
            entries,
            negators.iter().map(|n| n.to_string()),
            negation_window,
        )
        .map_err(|e| match e {
            SentimentError::Config(message) => SentimentError::Lexicon { line: 0, message },
            other => other,
        })
    }

    pub fn from_tsv_file(path: &Path) -> Result<Self, SentimentError> {
        let tsv = std::fs::read_to_string(path)
            .map_err(|e| SentimentError::Config(format!("{}: {e}", path.display())))?;
        Lexicon::from_tsv(&tsv, &DEFAULT_NEGATORS, DEFAULT_NEGATION_WINDOW)
    }

    pub fn entries(&self) -> &BTreeMap<String, f64> {
        &self.entries
    }

    pub fn negators(&self) -> &BTreeSet<String> {
        &self.negators
    }

    pub fn negation_window(&self) -> usize {
        self.negation_window
    }

    pub fn valence(&self, token: &str) -> Option<f64> {
        self.entries.get(token).copied()
    }

    pub fn is_negator(&self, token: &str) -> bool {
        self.negators.contains(token)
    }
}

impl Default for Lexicon {
    /// The shipped 13-entry lexicon with 5 negators and a window of 3.
    fn default() -> Self {
        Lexicon::from_tsv(DEFAULT_LEXICON_TSV, &DEFAULT_NEGATORS, DEFAULT_NEGATION_WINDOW)
            .expect("shipped lexicon parses")
    }
}

fn tokens(lowered: &str) -> impl Iterator<Item = &str> {
    lowered
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
}

pub fn lexicon_analyze(lexicon: &Lexicon, text: &str) -> SentimentResult {
    let lowered = text.to_lowercase();
    let mut flips_left = 0usize;
    let mut sum = 0.0f64;
    let mut matched = 0usize;

    for token in tokens(&lowered) {
        // negators win over lexicon entries with the same spelling
        if lexicon.is_negator(token) {
            flips_left = lexicon.negation_window;
            continue;
        }
        let Some(mut valence) = lexicon.valence(token) else {
            continue;
        };
        if flips_left > 0 {
            valence = -valence;
            flips_left -= 1;
        }
        sum += valence;
        matched += 1;
    }

    if matched == 0 {
        return SentimentResult::empty_text();
    }
    let mean = sum / matched as f64;
    let strength = mean.abs().min(1.0);
    if mean > NEUTRAL_BAND {
        SentimentResult {
            label: SentimentLabel::Positive,
            intensity: strength,
        }
    } else if mean < -NEUTRAL_BAND {
        SentimentResult {
            label: SentimentLabel::Negative,
            intensity: strength,
        }
    } else {
        SentimentResult {
            label: SentimentLabel::Neutral,
            intensity: 1.0 - strength,
        }
    }
}

pub struct LexiconBackend {
    lexicon: Lexicon,
    descriptor: BackendDescriptor,
}

impl LexiconBackend {
    pub fn new(lexicon: Lexicon) -> Self {
        LexiconBackend {
            lexicon,
            descriptor: BackendDescriptor {
                id: "lexicon".into(),
                version: env!("CARGO_PKG_VERSION").into(),
                max_chunk_tokens: DEFAULT_MAX_CHUNK_TOKENS,
                parallelism: 1,
            },
        }
    }

    pub fn with_descriptor(lexicon: Lexicon, descriptor: BackendDescriptor) -> Self {
        LexiconBackend { lexicon, descriptor }
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }
}

impl Default for LexiconBackend {
    fn default() -> Self {
        LexiconBackend::new(Lexicon::default())
    }
}

impl SentimentBackend for LexiconBackend {
    fn descriptor(&self) -> &BackendDescriptor {
        &self.descriptor
    }

    fn analyze_text(&self, text: &str) -> Result<SentimentResult, SentimentError> {
        Ok(lexicon_analyze(&self.lexicon, text))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn check(text: &str, label: SentimentLabel, intensity: f64) {
        let r = lexicon_analyze(&Lexicon::default(), text);
        assert_eq!(r.label, label, "{text:?}");
        assert_abs_diff_eq!(r.intensity, intensity, epsilon = 1e-12);
    }

    #[test]
    fn default_lexicon_shape() {
        let lex = Lexicon::default();
        assert_eq!(lex.entries().len(), 13);
        assert_eq!(lex.negators().len(), 5);
        assert_eq!(lex.negation_window(), 3);
        assert_eq!(lex.valence("cancelled"), Some(-0.8));
    }

    // Expected values come from a separate reference script run by hand.
    #[test]
    fn frozen_traces() {
        use SentimentLabel::*;
        check("the event was a great success", Positive, 0.85);
        check("not a success", Negative, 0.8);
        check("the venue the venue the venue", Neutral, 1.0);
        check("not great good excellent success", Negative, 0.425);
        check("Smooth, engaging; but a delay.", Positive, 0.8 / 3.0);
        check("no problem no issue", Positive, 0.55);
        check("good conflict", Neutral, 0.95);
        check("This event is still a success despite its delayed execution", Positive, 0.8);
        check("without delay, without conflict, never a failure", Positive, 0.6);
        check("", Neutral, 1.0);
    }

    #[test]
    fn backend_descriptor() {
        let b = LexiconBackend::default();
        assert_eq!(b.descriptor().id, "lexicon");
        assert_eq!(b.descriptor().max_chunk_tokens, 120);
    }

    #[test]
    fn rejects_bad_lexicons() {
        assert!(Lexicon::from_tsv("Great\t0.9\n", &[], 3).is_err());
        assert!(Lexicon::from_tsv("great 0.9\n", &[], 3).is_err());
        assert!(Lexicon::from_tsv("great\t1.5\n", &[], 3).is_err());
        assert!(Lexicon::from_tsv("great\tx\n", &[], 3).is_err());
        assert!(Lexicon::from_tsv("# comment\n\ngreat\t0.9\n", &[], 3).is_ok());
        assert!(Lexicon::new([("a", 0.1)], ["no"], 0).is_err());
    }

    fn arb_sentence() -> impl Strategy<Value = Vec<String>> {
        let vocab = [
            "success", "great", "good", "delay", "failure", "not", "no", "never", "the", "event", "was",
        ];
        proptest::collection::vec(proptest::sample::select(vocab.to_vec()), 0..20)
            .prop_map(|v| v.into_iter().map(String::from).collect())
    }

    proptest! {
        #[test]
        fn case_and_separator_invariance(
            words in arb_sentence(),
            seps in proptest::collection::vec(proptest::sample::select(vec![" ", ", ", "!", " -- ", "\t", ";;"]), 20),
            upper in proptest::collection::vec(any::<bool>(), 20),
        ) {
            let lex = Lexicon::default();
            let plain = words.join(" ");
            let mut mangled = String::new();
            for (i, w) in words.iter().enumerate() {
                if i > 0 {
                    mangled.push_str(seps[i % seps.len()]);
                }
                if upper[i % upper.len()] {
                    mangled.push_str(&w.to_uppercase());
                } else {
                    mangled.push_str(w);
                }
            }
            prop_assert_eq!(lexicon_analyze(&lex, &plain), lexicon_analyze(&lex, &mangled));
        }

        #[test]
        fn result_is_well_formed(words in arb_sentence()) {
            let r = lexicon_analyze(&Lexicon::default(), &words.join(" "));
            prop_assert!((0.0..=1.0).contains(&r.intensity));
        }
    }
}
