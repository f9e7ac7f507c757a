// A minimal adapter process: speaks the NDJSON protocol on stdin/stdout and
// answers with the bundled lexicon. Point the CLI at the built binary:
//
// $ cargo build --example reference_adapter
// $ eventscore score --input data/sample_corpus.csv --backend adapter \
//       --adapter target/debug/examples/reference_adapter

use std::io;

use eventscore::sentiment::adapter::{serve_lines, Handshake};
use eventscore::sentiment::{lexicon_analyze, Lexicon};

fn main() -> io::Result<()> {
    let lexicon = Lexicon::default();
    let handshake = Handshake {
        ready: true,
        backend: "reference-lexicon".into(),
        version: env!("CARGO_PKG_VERSION").into(),
    };
    serve_lines(io::stdin().lock(), io::stdout().lock(), &handshake, |text| {
        lexicon_analyze(&lexicon, text)
    })
}
