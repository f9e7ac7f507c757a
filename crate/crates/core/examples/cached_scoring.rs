// Scores the sample corpus twice through an on-disk result cache and shows
// that the second pass never reaches the backend.
//
// $ cargo run --example cached_scoring

use std::fs::File;
use std::path::Path;

use eventscore::corpus::{parse_corpus, InputFormat};
use eventscore::pipeline::score_manifest;
use eventscore::scoring::WeightConfig;
use eventscore::sentiment::{CachedBackend, CountingBackend, LexiconBackend, ResultCache};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/sample_corpus.csv");
    let manifest = parse_corpus(File::open(&path)?, InputFormat::Csv, "sample_corpus.csv")?;
    let cache_dir = std::env::temp_dir().join(format!("eventscore-cache-{}", std::process::id()));

    let mut tables = Vec::new();
    for pass in 1..=2 {
        let counting = CountingBackend::new(LexiconBackend::default());
        let cache = ResultCache::open(&cache_dir)?;
        let backend = CachedBackend::new(&counting, cache.clone());
        let scored = score_manifest(&backend, &manifest, &WeightConfig::default())?;
        let stats = cache.stats();
        println!(
            "pass {pass}: {} backend calls, {} hits, {} misses",
            counting.invocations(),
            stats.hits,
            stats.misses
        );
        tables.push(scored.table);
    }
    println!("identical rankings: {}", tables[0] == tables[1]);
    std::fs::remove_dir_all(&cache_dir)?;
    Ok(())
}
