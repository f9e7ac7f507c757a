// Recomputes the published Event Scores from their normalized P, C and R
// columns and prints the ranked table with the drift against each row.
//
// $ cargo run --example reproduce_table

use std::path::Path;

use eventscore::scoring::{aggregate_event_score, WeightConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/published_scores.csv");
    let mut reader = csv::Reader::from_path(path)?;
    let weights = WeightConfig::default();

    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec?;
        let pct = |i: usize| -> Result<f64, std::num::ParseFloatError> { rec[i].parse::<f64>() };
        let (p, c, r, published) = (pct(2)?, pct(3)?, pct(4)?, pct(5)?);
        let computed = 100.0 * aggregate_event_score(p / 100.0, r / 100.0, c / 100.0, &weights);
        rows.push((rec[1].to_string(), computed, published));
    }
    rows.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));

    println!("| Rank | Activity | Computed | Published | Drift (pp) |");
    println!("|---:|---|---:|---:|---:|");
    for (i, (name, computed, published)) in rows.iter().enumerate() {
        println!("| {} | {name} | {computed:.3} | {published:.2} | {:+.4} |", i + 1, computed - published);
    }
    Ok(())
}
