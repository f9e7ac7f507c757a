// Scores the bundled sample corpus with the lexicon backend and prints the
// ranked table as markdown percentages.
//
// $ cargo run --example score_corpus

use std::fs::File;
use std::path::Path;

use eventscore::corpus::{parse_corpus, InputFormat};
use eventscore::pipeline::score_manifest;
use eventscore::report::{render_table, OutputFormat};
use eventscore::scoring::WeightConfig;
use eventscore::sentiment::LexiconBackend;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/sample_corpus.csv");
    let manifest = parse_corpus(File::open(&path)?, InputFormat::Csv, "sample_corpus.csv")?;
    let scored = score_manifest(&LexiconBackend::default(), &manifest, &WeightConfig::default())?;
    print!("{}", render_table(&scored.table, OutputFormat::Md, true));
    Ok(())
}
