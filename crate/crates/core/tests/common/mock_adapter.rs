//! Test-only adapter speaking the stdin/stdout wire protocol.
//!
//! Modes:
//! - `lexicon`: answers with the default lexicon scorer, replying to each
//!   burst of requests in reverse order so ids must be matched.
//! - `fixed`: always `POS 0.91`.
//! - `out-of-range`: always `POS 1.2`.
//! - `silent`: handshakes, then never answers.

use std::io::{self, BufRead, Write};
use std::sync::mpsc;
use std::thread;
use std::time::Duration;

use eventscore::sentiment::adapter::{AnalyzeRequest, Handshake};
use eventscore::sentiment::{lexicon_analyze, Lexicon};
use serde_json::json;

pub const FLAG: &str = "--mock-adapter";

pub fn run(mode: &str) -> ! {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let hs = Handshake {
        ready: true,
        backend: format!("mock-{mode}"),
        version: "1".into(),
    };
    writeln!(out, "{}", serde_json::to_string(&hs).unwrap()).unwrap();
    out.flush().unwrap();

    let (tx, rx) = mpsc::channel::<AnalyzeRequest>();
    thread::spawn(move || {
        for line in io::stdin().lock().lines() {
            let Ok(line) = line else { break };
            if let Ok(req) = serde_json::from_str::<AnalyzeRequest>(&line) {
                if tx.send(req).is_err() {
                    break;
                }
            }
        }
    });

    let lexicon = Lexicon::default();
    loop {
        let Ok(first) = rx.recv() else { std::process::exit(0) };
        if mode == "silent" {
            continue;
        }
        let mut burst = vec![first];
        while let Ok(more) = rx.recv_timeout(Duration::from_millis(5)) {
            burst.push(more);
        }
        for req in burst.into_iter().rev() {
            let reply = match mode {
                "lexicon" => {
                    let r = lexicon_analyze(&lexicon, &req.text);
                    json!({"id": req.id, "label": r.label.as_str(), "score": r.intensity})
                }
                "fixed" => json!({"id": req.id, "label": "POS", "score": 0.91}),
                "out-of-range" => json!({"id": req.id, "label": "POS", "score": 1.2}),
                other => panic!("unknown mock mode {other}"),
            };
            writeln!(out, "{reply}").unwrap();
        }
        out.flush().unwrap();
    }
}
