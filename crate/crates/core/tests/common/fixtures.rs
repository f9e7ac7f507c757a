use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

/// One published result row: normalized percentages and the displayed score.
#[derive(Debug, Clone)]
pub struct PublishedRow {
    pub row: usize,
    pub name: String,
    pub problems_pct: f64,
    pub conclusion_pct: f64,
    pub recommendations_pct: f64,
    pub event_score_pct: f64,
}

pub fn published_rows() -> Vec<PublishedRow> {
    let mut reader = csv::Reader::from_path(data_path("published_scores.csv")).unwrap();
    reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            let num = |i: usize| r[i].parse::<f64>().unwrap();
            PublishedRow {
                row: r[0].parse().unwrap(),
                name: r[1].to_string(),
                problems_pct: num(2),
                conclusion_pct: num(3),
                recommendations_pct: num(4),
                event_score_pct: num(5),
            }
        })
        .collect()
}

const POSITIVE: [&str; 6] = ["success", "great", "good", "excellent", "smooth", "engaging"];
const NEGATIVE: [&str; 7] = ["delay", "conflict", "problem", "failure", "cancelled", "issue", "lack"];
const NEGATORS: [&str; 5] = ["not", "no", "never", "without", "cannot"];
const FILLER: [&str; 12] = [
    "the", "event", "was", "participants", "venue", "speaker", "and", "a", "of", "schedule", "seminar", "officers",
];

fn sentence(rng: &mut ChaCha8Rng, len: usize) -> String {
    let mut words = Vec::with_capacity(len);
    for _ in 0..len {
        let pool: &[&str] = match rng.gen_range(0..10) {
            0..=1 => &POSITIVE,
            2..=3 => &NEGATIVE,
            4 => &NEGATORS,
            _ => &FILLER,
        };
        words.push(*pool.choose(rng).unwrap());
    }
    let mut s = words.join(" ");
    if let Some(first) = s.get_mut(0..1) {
        first.make_ascii_uppercase();
    }
    s.push('.');
    s
}

/// A deterministic synthetic corpus as CSV text.
pub fn synthetic_corpus_csv(records: usize, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(eventscore::corpus::COLUMNS).unwrap();
    for i in 0..records {
        let p_len = rng.gen_range(0..14);
        let r_len = rng.gen_range(3..14);
        let c_len = rng.gen_range(3..14);
        let p = sentence(&mut rng, p_len);
        let r = sentence(&mut rng, r_len);
        let c = sentence(&mut rng, c_len);
        let date = format!("{:02}/{:02}/2023", rng.gen_range(1..=12), rng.gen_range(1..=28));
        let duration = rng.gen_range(1..=3).to_string();
        w.write_record([
            format!("Synthetic Event {i:02}").as_str(),
            &date,
            &duration,
            "2022-2023",
            "2T",
            if p_len == 0 { "" } else { &p },
            &r,
            &c,
        ])
        .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

/// Random token stream drawn from lexicon words, negators and filler.
pub fn random_tokens(rng: &mut ChaCha8Rng, len: usize) -> Vec<&'static str> {
    (0..len)
        .map(|_| {
            let pool: &[&'static str] = match rng.gen_range(0..4) {
                0 => &POSITIVE,
                1 => &NEGATIVE,
                2 => &NEGATORS,
                _ => &FILLER,
            };
            *pool.choose(rng).unwrap()
        })
        .collect()
}
