// Min-max normalizes a few raw sentiment columns, including a constant one,
// and combines them into Event Scores.
//
// $ cargo run --example normalize_columns

use eventscore::scoring::{aggregate_event_score, minmax_normalize, WeightConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p_raw = [-0.6, -0.5, 0.0, -0.9];
    let r_raw = [0.7, 0.7, 0.7, 0.7];
    let c_raw = [0.85, 0.6, -0.8, 0.9];

    let n_p = minmax_normalize(&p_raw)?;
    let n_r = minmax_normalize(&r_raw)?;
    let n_c = minmax_normalize(&c_raw)?;
    let weights = WeightConfig::default();

    println!("{:>6} {:>6} {:>6} {:>6}", "N_P", "N_R", "N_C", "score");
    for i in 0..p_raw.len() {
        let y = aggregate_event_score(n_p[i], n_r[i], n_c[i], &weights);
        println!("{:>6.3} {:>6.3} {:>6.3} {:>6.3}", n_p[i], n_r[i], n_c[i], y);
    }
    Ok(())
}
