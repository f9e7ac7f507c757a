// Loads a corpus (the bundled sample by default) and prints the per-row
// validation report.
//
// $ cargo run --example validate_corpus -- path/to/reports.jsonl

use std::fs::File;
use std::path::PathBuf;

use eventscore::corpus::{parse_corpus, validate_corpus, InputFormat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/sample_corpus.csv"));
    let format = InputFormat::from_path(&path);
    let manifest = parse_corpus(File::open(&path)?, format, &path.display().to_string())?;

    for warning in &manifest.warnings {
        println!("warning: {warning}");
    }
    for entry in validate_corpus(&manifest) {
        let mut notes = entry.reasons.clone();
        notes.extend(entry.flags.iter().cloned());
        let line = format!("row {:>3}  {:<16} {}", entry.row_index, entry.status, notes.join(", "));
        println!("{}", line.trim_end());
    }
    println!("{} record(s) from {}", manifest.record_count(), manifest.source_id);
    Ok(())
}
