//! Brute-force reference for the lexicon scorer.
//!
//! Deliberately shares no code with `eventscore::sentiment::lexicon`. Negation
//! is resolved by looking back from every matched token to the most recent
//! negator and counting the matched tokens in between, instead of carrying a
//! running counter forward.

use std::collections::{HashMap, HashSet};

pub struct OracleLexicon {
    pub entries: HashMap<String, f64>,
    pub negators: HashSet<String>,
    pub window: usize,
}

impl OracleLexicon {
    pub fn shipped_defaults() -> Self {
        let entries = [
            ("success", 0.8),
            ("great", 0.9),
            ("good", 0.6),
            ("excellent", 1.0),
            ("smooth", 0.5),
            ("engaging", 0.7),
            ("delay", -0.4),
            ("conflict", -0.5),
            ("problem", -0.6),
            ("failure", -0.9),
            ("cancelled", -0.8),
            ("issue", -0.5),
            ("lack", -0.5),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
        let negators = ["not", "no", "never", "without", "cannot"]
            .into_iter()
            .map(String::from)
            .collect();
        OracleLexicon {
            entries,
            negators,
            window: 3,
        }
    }
}

/// Returns `(label, intensity)` with label one of "POS", "NEG", "NEU".
pub fn oracle_analyze(lex: &OracleLexicon, text: &str) -> (&'static str, f64) {
    let lowered = text.to_lowercase();
    let mut tokens: Vec<String> = Vec::new();
    let mut current = String::new();
    for ch in lowered.chars() {
        if ch.is_alphanumeric() {
            current.push(ch);
        } else if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }

    let is_negator = |t: &str| lex.negators.contains(t);
    let is_match = |t: &str| !is_negator(t) && lex.entries.contains_key(t);

    let mut values = Vec::new();
    for (i, tok) in tokens.iter().enumerate() {
        if !is_match(tok) {
            continue;
        }
        let mut flipped = false;
        for j in (0..i).rev() {
            if is_negator(&tokens[j]) {
                let between = tokens[j + 1..i].iter().filter(|t| is_match(t)).count();
                flipped = between < lex.window;
                break;
            }
        }
        let v = lex.entries[tok.as_str()];
        values.push(if flipped { -v } else { v });
    }

    if values.is_empty() {
        return ("NEU", 1.0);
    }
    let mut sum = 0.0;
    for v in &values {
        sum += v;
    }
    let mean = sum / values.len() as f64;
    if mean > 0.05 {
        ("POS", mean.abs().min(1.0))
    } else if mean < -0.05 {
        ("NEG", mean.abs().min(1.0))
    } else {
        ("NEU", 1.0 - mean.abs().min(1.0))
    }
}
