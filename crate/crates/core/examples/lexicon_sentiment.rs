// Classifies each argument (or a few built-in sentences) with the bundled
// lexicon and shows the label, intensity and signed score.
//
// $ cargo run --example lexicon_sentiment -- "not a success" "smooth and engaging"

use eventscore::sentiment::{lexicon_analyze, to_signed, Lexicon};

fn main() {
    let lexicon = Lexicon::default();
    let mut texts: Vec<String> = std::env::args().skip(1).collect();
    if texts.is_empty() {
        texts = [
            "The event was a great success",
            "not a success",
            "no problem, no issue",
            "Conflict of schedule because of the midterm examination",
            "good conflict",
        ]
        .map(String::from)
        .to_vec();
    }
    for text in &texts {
        let result = lexicon_analyze(&lexicon, text);
        println!(
            "{:<3} {:.4} {:+.4}  {text}",
            result.label,
            result.intensity,
            to_signed(result).value()
        );
    }
}
