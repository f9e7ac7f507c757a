//! Client for out-of-process sentiment models.
//!
//! An adapter is any program that speaks this JSON protocol, either as
//! newline-delimited JSON over a child process's stdin/stdout or as HTTP:
//!
//! ```text
//! adapter -> {"ready": true, "backend": "<name>", "version": "<version>"}
//! client  -> {"id": "r0", "text": "..."}
//! adapter -> {"id": "r0", "label": "POS" | "NEG" | "NEU", "score": 0.91}
//! ```
//!
//! Over a pipe the handshake is the adapter's first output line, and
//! responses may come back in any order; they are matched by `id`. Over HTTP
//! the handshake is served by `GET <base>/ready` and each request is a
//! `POST <base>/analyze`.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::mpsc::{self, RecvTimeoutError, Sender};
use std::sync::{Arc, Mutex};
use std::thread;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{BackendDescriptor, SentimentBackend, SentimentLabel, SentimentResult, DEFAULT_MAX_CHUNK_TOKENS};
use crate::error::SentimentError;

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(30);
pub const DEFAULT_PARALLELISM: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Handshake {
    pub ready: bool,
    pub backend: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeRequest {
    pub id: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeResponse {
    pub id: String,
    pub label: String,
    pub score: f64,
}

impl AnalyzeResponse {
    pub fn from_result(id: impl Into<String>, result: &SentimentResult) -> Self {
        AnalyzeResponse {
            id: id.into(),
            label: result.label.as_str().to_string(),
            score: result.intensity,
        }
    }
}

/// Splits a decoded response line into its id and the mapped result.
///
/// The outer error means the message could not be attributed to a request
/// at all.
pub fn decode_response(
    value: &Value,
) -> Result<(String, Result<SentimentResult, SentimentError>), SentimentError> {
    let obj = value
        .as_object()
        .ok_or_else(|| SentimentError::protocol("response is not a JSON object"))?;
    let id = obj
        .get("id")
        .and_then(Value::as_str)
        .ok_or_else(|| SentimentError::protocol("response without string id"))?
        .to_string();

    let mapped = (|| {
        let label: SentimentLabel = obj
            .get("label")
            .and_then(Value::as_str)
            .ok_or_else(|| SentimentError::protocol("response without label"))?
            .parse()?;
        let score = obj
            .get("score")
            .and_then(Value::as_f64)
            .ok_or_else(|| SentimentError::protocol("response without numeric score"))?;
        SentimentResult::new(label, score).ok_or_else(|| SentimentError::protocol("score_out_of_range"))
    })();
    Ok((id, mapped))
}

fn parse_handshake(raw: &str) -> Result<Handshake, SentimentError> {
    let hs: Handshake = serde_json::from_str(raw.trim())
        .map_err(|e| SentimentError::protocol(format!("bad handshake {raw:?}: {e}")))?;
    if !hs.ready {
        return Err(SentimentError::protocol("adapter reported ready=false"));
    }
    Ok(hs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdapterEndpoint {
    /// Program and arguments to spawn.
    Command(Vec<String>),
    /// Base URL of an HTTP adapter.
    Http(String),
}

impl AdapterEndpoint {
    /// `http://` and `https://` values are URLs; anything else is a command
    /// line, split with shell quoting rules.
    pub fn parse(raw: &str) -> Result<Self, SentimentError> {
        let trimmed = raw.trim();
        if trimmed.starts_with("http://") || trimmed.starts_with("https://") {
            return Ok(AdapterEndpoint::Http(trimmed.to_string()));
        }
        let argv = shell_words::split(trimmed)
            .map_err(|e| SentimentError::Config(format!("bad adapter command {raw:?}: {e}")))?;
        if argv.is_empty() {
            return Err(SentimentError::Config("empty adapter command".into()));
        }
        Ok(AdapterEndpoint::Command(argv))
    }
}

#[derive(Debug, Clone)]
pub struct AdapterConfig {
    pub endpoint: AdapterEndpoint,
    pub timeout: Duration,
    pub parallelism: usize,
    pub max_chunk_tokens: usize,
}

impl AdapterConfig {
    pub fn new(endpoint: AdapterEndpoint) -> Self {
        AdapterConfig {
            endpoint,
            timeout: DEFAULT_TIMEOUT,
            parallelism: DEFAULT_PARALLELISM,
            max_chunk_tokens: DEFAULT_MAX_CHUNK_TOKENS,
        }
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    pub fn with_parallelism(mut self, parallelism: usize) -> Self {
        self.parallelism = parallelism;
        self
    }
}

type Reply = Result<SentimentResult, SentimentError>;

#[derive(Default)]
struct Inflight {
    pending: HashMap<String, Sender<Reply>>,
    /// Set once the adapter can no longer answer.
    closed: Option<SentimentError>,
}

impl Inflight {
    fn close(&mut self, err: SentimentError) {
        for (_, tx) in self.pending.drain() {
            let _ = tx.send(Err(clone_error(&err)));
        }
        self.closed = Some(err);
    }
}

fn clone_error(e: &SentimentError) -> SentimentError {
    match e {
        SentimentError::Protocol { reason } => SentimentError::protocol(reason.clone()),
        SentimentError::Backend(m) => SentimentError::Backend(m.clone()),
        SentimentError::Config(m) => SentimentError::Config(m.clone()),
        SentimentError::Lexicon { line, message } => SentimentError::Lexicon {
            line: *line,
            message: message.clone(),
        },
    }
}

struct ProcessTransport {
    child: Mutex<Child>,
    stdin: Mutex<ChildStdin>,
    inflight: Arc<Mutex<Inflight>>,
}

impl ProcessTransport {
    fn spawn(argv: &[String], timeout: Duration) -> Result<(Self, Handshake), SentimentError> {
        let mut child = Command::new(&argv[0])
            .args(&argv[1..])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .map_err(|e| SentimentError::Backend(format!("cannot start adapter `{}`: {e}", argv[0])))?;
        let stdin = child.stdin.take().expect("stdin piped");
        let stdout = child.stdout.take().expect("stdout piped");

        let inflight = Arc::new(Mutex::new(Inflight::default()));
        let (hs_tx, hs_rx) = mpsc::channel::<String>();
        let shared = Arc::clone(&inflight);
        thread::Builder::new()
            .name("adapter-reader".into())
            .spawn(move || read_responses(BufReader::new(stdout), hs_tx, shared))
            .map_err(|e| SentimentError::Backend(e.to_string()))?;

        let transport = ProcessTransport {
            child: Mutex::new(child),
            stdin: Mutex::new(stdin),
            inflight,
        };
        let line = match hs_rx.recv_timeout(timeout) {
            Ok(line) => line,
            Err(RecvTimeoutError::Timeout) => {
                return Err(SentimentError::Backend(format!(
                    "adapter sent no handshake within {:.1}s",
                    timeout.as_secs_f64()
                )))
            }
            Err(RecvTimeoutError::Disconnected) => {
                return Err(SentimentError::Backend("adapter exited before handshake".into()))
            }
        };
        let hs = parse_handshake(&line)?;
        Ok((transport, hs))
    }

    fn request(&self, id: String, text: &str, timeout: Duration) -> Reply {
        let (tx, rx) = mpsc::channel();
        {
            let mut inflight = self.inflight.lock().unwrap();
            if let Some(err) = &inflight.closed {
                return Err(clone_error(err));
            }
            inflight.pending.insert(id.clone(), tx);
        }

        let mut line = serde_json::to_string(&AnalyzeRequest {
            id: id.clone(),
            text: text.to_string(),
        })
        .expect("request serializes");
        line.push('\n');
        let written = {
            let mut stdin = self.stdin.lock().unwrap();
            stdin.write_all(line.as_bytes()).and_then(|_| stdin.flush())
        };
        if let Err(e) = written {
            self.inflight.lock().unwrap().pending.remove(&id);
            return Err(SentimentError::Backend(format!("adapter connection lost: {e}")));
        }

        match rx.recv_timeout(timeout) {
            Ok(reply) => reply,
            Err(RecvTimeoutError::Timeout) => {
                self.inflight.lock().unwrap().pending.remove(&id);
                Err(SentimentError::Backend(format!(
                    "no response for request {id} within {:.1}s",
                    timeout.as_secs_f64()
                )))
            }
            Err(RecvTimeoutError::Disconnected) => {
                Err(SentimentError::Backend("adapter exited".into()))
            }
        }
    }
}

impl Drop for ProcessTransport {
    fn drop(&mut self) {
        if let Ok(mut child) = self.child.lock() {
            let _ = child.kill();
            let _ = child.wait();
        }
    }
}

fn read_responses<R: BufRead>(reader: R, handshake: Sender<String>, inflight: Arc<Mutex<Inflight>>) {
    let mut handshake = Some(handshake);
    for line in reader.lines() {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                inflight
                    .lock()
                    .unwrap()
                    .close(SentimentError::Backend(format!("adapter read failed: {e}")));
                return;
            }
        };
        if line.trim().is_empty() {
            continue;
        }
        if let Some(tx) = handshake.take() {
            let _ = tx.send(line);
            continue;
        }

        let decoded = serde_json::from_str::<Value>(&line)
            .map_err(|e| SentimentError::protocol(format!("malformed response {line:?}: {e}")))
            .and_then(|v| decode_response(&v));
        let mut guard = inflight.lock().unwrap();
        match decoded {
            Ok((id, reply)) => match guard.pending.remove(&id) {
                Some(tx) => {
                    let _ = tx.send(reply);
                }
                None => log::warn!("adapter answered unknown or expired request {id:?}"),
            },
            Err(err) => {
                guard.close(err);
                return;
            }
        }
    }
    inflight
        .lock()
        .unwrap()
        .close(SentimentError::Backend("adapter exited".into()));
}

struct HttpTransport {
    agent: ureq::Agent,
    analyze_url: String,
}

impl HttpTransport {
    fn connect(base: &str, timeout: Duration) -> Result<(Self, Handshake), SentimentError> {
        let base = base.trim_end_matches('/');
        let base = base.strip_suffix("/analyze").unwrap_or(base);
        let agent = ureq::AgentBuilder::new().timeout(timeout).build();

        let body = agent
            .get(&format!("{base}/ready"))
            .call()
            .map_err(http_error)?
            .into_string()
            .map_err(|e| SentimentError::Backend(e.to_string()))?;
        let hs = parse_handshake(&body)?;
        Ok((
            HttpTransport {
                agent,
                analyze_url: format!("{base}/analyze"),
            },
            hs,
        ))
    }

    fn request(&self, id: String, text: &str) -> Reply {
        let body = AnalyzeRequest {
            id: id.clone(),
            text: text.to_string(),
        };
        let value: Value = self
            .agent
            .post(&self.analyze_url)
            .send_json(&body)
            .map_err(http_error)?
            .into_json()
            .map_err(|e| SentimentError::protocol(format!("malformed response: {e}")))?;
        let (got, reply) = decode_response(&value)?;
        if got != id {
            return Err(SentimentError::protocol(format!(
                "id_mismatch: sent {id:?}, got {got:?}"
            )));
        }
        reply
    }
}

fn http_error(e: ureq::Error) -> SentimentError {
    match e {
        ureq::Error::Status(code, _) => SentimentError::Backend(format!("adapter returned HTTP {code}")),
        ureq::Error::Transport(t) => SentimentError::Backend(format!("adapter unreachable: {t}")),
    }
}

enum Transport {
    Process(ProcessTransport),
    Http(HttpTransport),
}

/// A sentiment backend served by an external adapter.
pub struct AdapterBackend {
    descriptor: BackendDescriptor,
    handshake: Handshake,
    transport: Transport,
    timeout: Duration,
    next_id: AtomicU64,
}

impl AdapterBackend {
    /// Starts (or connects to) the adapter and completes the handshake.
    pub fn connect(config: &AdapterConfig) -> Result<Self, SentimentError> {
        let (transport, handshake) = match &config.endpoint {
            AdapterEndpoint::Command(argv) => {
                let (t, hs) = ProcessTransport::spawn(argv, config.timeout)?;
                (Transport::Process(t), hs)
            }
            AdapterEndpoint::Http(url) => {
                let (t, hs) = HttpTransport::connect(url, config.timeout)?;
                (Transport::Http(t), hs)
            }
        };
        let descriptor = BackendDescriptor::new(
            format!("adapter:{}", handshake.backend),
            handshake.version.clone(),
            config.max_chunk_tokens,
            config.parallelism,
        )?;
        Ok(AdapterBackend {
            descriptor,
            handshake,
            transport,
            timeout: config.timeout,
            next_id: AtomicU64::new(0),
        })
    }

    pub fn handshake(&self) -> &Handshake {
        &self.handshake
    }
}

impl SentimentBackend for AdapterBackend {
    fn descriptor(&self) -> &BackendDescriptor {
        &self.descriptor
    }

    fn analyze_text(&self, text: &str) -> Result<SentimentResult, SentimentError> {
        let id = format!("r{}", self.next_id.fetch_add(1, Ordering::Relaxed));
        match &self.transport {
            Transport::Process(p) => p.request(id, text, self.timeout),
            Transport::Http(h) => h.request(id, text),
        }
    }
}

/// Serves the protocol on a reader/writer pair, e.g. stdin/stdout.
///
/// Used by adapter programs written in Rust; `answer` maps each request text
/// to a result.
pub fn serve_lines<R, W, F>(input: R, mut output: W, handshake: &Handshake, mut answer: F) -> std::io::Result<()>
where
    R: BufRead,
    W: Write,
    F: FnMut(&str) -> SentimentResult,
{
    writeln!(output, "{}", serde_json::to_string(handshake)?)?;
    output.flush()?;
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let req: AnalyzeRequest = match serde_json::from_str(&line) {
            Ok(r) => r,
            Err(e) => {
                log::warn!("ignoring malformed request: {e}");
                continue;
            }
        };
        let resp = AnalyzeResponse::from_result(req.id, &answer(&req.text));
        writeln!(output, "{}", serde_json::to_string(&resp)?)?;
        output.flush()?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Read;
    use std::net::TcpListener;
    use std::time::Instant;

    const HANDSHAKE: &str = r#"echo '{"ready":true,"backend":"mock","version":"7"}'"#;

    fn sh(script: &str) -> AdapterConfig {
        AdapterConfig::new(AdapterEndpoint::Command(vec![
            "sh".into(),
            "-c".into(),
            script.into(),
        ]))
    }

    fn replying(body: &str) -> String {
        format!(
            r#"{HANDSHAKE}; while read -r line; do id=$(printf '%s' "$line" | sed 's/.*"id":"\([^"]*\)".*/\1/'); echo "{{\"id\":\"$id\",{body}}}"; done"#
        )
    }

    #[test]
    fn endpoint_parsing() {
        assert_eq!(
            AdapterEndpoint::parse("http://127.0.0.1:9/").unwrap(),
            AdapterEndpoint::Http("http://127.0.0.1:9/".into())
        );
        assert_eq!(
            AdapterEndpoint::parse("python3 'my adapter.py' --fast").unwrap(),
            AdapterEndpoint::Command(vec!["python3".into(), "my adapter.py".into(), "--fast".into()])
        );
        assert!(AdapterEndpoint::parse("  ").is_err());
    }

    #[test]
    fn decode_examples() {
        let v: Value = serde_json::from_str(r#"{"id":"a1","label":"POS","score":0.91}"#).unwrap();
        let (id, r) = decode_response(&v).unwrap();
        assert_eq!(id, "a1");
        assert_eq!(r.unwrap(), SentimentResult::new(SentimentLabel::Positive, 0.91).unwrap());

        let v: Value = serde_json::from_str(r#"{"id":"a1","label":"POS","score":1.2}"#).unwrap();
        match decode_response(&v).unwrap().1 {
            Err(SentimentError::Protocol { reason }) => assert_eq!(reason, "score_out_of_range"),
            other => panic!("unexpected {other:?}"),
        }

        let v: Value = serde_json::from_str(r#"{"id":"a1","label":"MIXED","score":0.5}"#).unwrap();
        assert!(matches!(decode_response(&v).unwrap().1, Err(SentimentError::Protocol { .. })));

        let v: Value = serde_json::from_str(r#"{"label":"POS","score":0.5}"#).unwrap();
        assert!(decode_response(&v).is_err());
    }

    #[test]
    fn subprocess_pass_through() {
        let b = AdapterBackend::connect(&sh(&replying(r#"\"label\":\"POS\",\"score\":0.91"#))).unwrap();
        assert_eq!(b.descriptor().id, "adapter:mock");
        assert_eq!(b.descriptor().version, "7");
        let r = b.analyze_text("any text").unwrap();
        assert_eq!(r, SentimentResult::new(SentimentLabel::Positive, 0.91).unwrap());
        assert_eq!(b.analyze_text("again").unwrap().intensity, 0.91);
    }

    #[test]
    fn subprocess_out_of_range() {
        let b = AdapterBackend::connect(&sh(&replying(r#"\"label\":\"NEG\",\"score\":1.2"#))).unwrap();
        match b.analyze_text("x") {
            Err(SentimentError::Protocol { reason }) => assert_eq!(reason, "score_out_of_range"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn subprocess_silent_times_out() {
        let cfg = sh(&format!("{HANDSHAKE}; exec sleep 30")).with_timeout(Duration::from_millis(300));
        let b = AdapterBackend::connect(&cfg).unwrap();
        let start = Instant::now();
        let err = b.analyze_text("x").unwrap_err();
        assert!(matches!(err, SentimentError::Backend(_)), "{err:?}");
        assert!(start.elapsed() >= Duration::from_millis(300));
        assert!(start.elapsed() < Duration::from_secs(5));
    }

    #[test]
    fn subprocess_death_is_backend_failure() {
        let b = AdapterBackend::connect(&sh(&format!("{HANDSHAKE}; read -r line; exit 1"))).unwrap();
        assert!(matches!(b.analyze_text("x"), Err(SentimentError::Backend(_))));
        assert!(matches!(b.analyze_text("y"), Err(SentimentError::Backend(_))));
    }

    #[test]
    fn missing_handshake() {
        let cfg = sh("exec sleep 30").with_timeout(Duration::from_millis(200));
        assert!(matches!(AdapterBackend::connect(&cfg), Err(SentimentError::Backend(_))));
        let cfg = sh(r#"echo '{"ready":false,"backend":"x","version":"1"}'"#);
        assert!(matches!(AdapterBackend::connect(&cfg), Err(SentimentError::Protocol { .. })));
        let cfg = AdapterConfig::new(AdapterEndpoint::Command(vec!["/nonexistent/adapter".into()]));
        assert!(matches!(AdapterBackend::connect(&cfg), Err(SentimentError::Backend(_))));
    }

    #[test]
    fn out_of_order_responses_match_by_id() {
        // Reads two requests, answers the second first. Scores encode the text.
        let script = format!(
            r#"{HANDSHAKE}; while read -r a && read -r b; do
                for line in "$b" "$a"; do
                  id=$(printf '%s' "$line" | sed 's/.*"id":"\([^"]*\)".*/\1/')
                  t=$(printf '%s' "$line" | sed 's/.*"text":"\([^"]*\)".*/\1/')
                  echo "{{\"id\":\"$id\",\"label\":\"POS\",\"score\":0.$t}}"
                done
              done"#
        );
        let b = AdapterBackend::connect(&sh(&script)).unwrap();
        thread::scope(|s| {
            let h1 = s.spawn(|| b.analyze_text("25").unwrap());
            let h2 = s.spawn(|| b.analyze_text("75").unwrap());
            assert_eq!(h1.join().unwrap().intensity, 0.25);
            assert_eq!(h2.join().unwrap().intensity, 0.75);
        });
    }

    #[test]
    fn serve_lines_round_trip() {
        let hs = Handshake {
            ready: true,
            backend: "lexicon".into(),
            version: "1".into(),
        };
        let input = b"{\"id\":\"x\",\"text\":\"great\"}\n\n";
        let mut out = Vec::new();
        serve_lines(&input[..], &mut out, &hs, |_| {
            SentimentResult::new(SentimentLabel::Positive, 0.9).unwrap()
        })
        .unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(parse_handshake(lines[0]).unwrap(), hs);
        let (id, r) = decode_response(&serde_json::from_str(lines[1]).unwrap()).unwrap();
        assert_eq!(id, "x");
        assert_eq!(r.unwrap().intensity, 0.9);
    }

    /// Minimal HTTP/1.1 server: `/ready` returns the handshake, `/analyze`
    /// echoes the id with the given label and score.
    fn http_mock(label: &'static str, score: f64, mangle_id: bool) -> String {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let addr = listener.local_addr().unwrap();
        thread::spawn(move || {
            for stream in listener.incoming() {
                let Ok(mut stream) = stream else { return };
                let mut reader = BufReader::new(stream.try_clone().unwrap());
                let mut request_line = String::new();
                reader.read_line(&mut request_line).unwrap();
                let mut content_length = 0usize;
                loop {
                    let mut h = String::new();
                    reader.read_line(&mut h).unwrap();
                    if h.trim().is_empty() {
                        break;
                    }
                    if let Some((k, v)) = h.split_once(':') {
                        if k.eq_ignore_ascii_case("content-length") {
                            content_length = v.trim().parse().unwrap();
                        }
                    }
                }
                let mut body = vec![0; content_length];
                reader.read_exact(&mut body).unwrap();
                let reply = if request_line.contains("/ready") {
                    r#"{"ready":true,"backend":"http-mock","version":"2"}"#.to_string()
                } else {
                    let req: AnalyzeRequest = serde_json::from_slice(&body).unwrap();
                    let id = if mangle_id { format!("{}-x", req.id) } else { req.id };
                    serde_json::json!({"id": id, "label": label, "score": score}).to_string()
                };
                write!(
                    stream,
                    "HTTP/1.1 200 OK\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{}",
                    reply.len(),
                    reply
                )
                .unwrap();
            }
        });
        format!("http://{addr}")
    }

    #[test]
    fn http_transport_behaves_like_subprocess() {
        let url = http_mock("POS", 0.91, false);
        let b = AdapterBackend::connect(&AdapterConfig::new(AdapterEndpoint::parse(&url).unwrap())).unwrap();
        assert_eq!(b.descriptor().id, "adapter:http-mock");
        assert_eq!(
            b.analyze_text("hello").unwrap(),
            SentimentResult::new(SentimentLabel::Positive, 0.91).unwrap()
        );

        let url = http_mock("POS", 1.2, false);
        let b = AdapterBackend::connect(&AdapterConfig::new(AdapterEndpoint::Http(format!("{url}/analyze")))).unwrap();
        assert!(matches!(
            b.analyze_text("x"),
            Err(SentimentError::Protocol { reason }) if reason == "score_out_of_range"
        ));

        let url = http_mock("NEU", 0.5, true);
        let b = AdapterBackend::connect(&AdapterConfig::new(AdapterEndpoint::Http(url))).unwrap();
        assert!(matches!(b.analyze_text("x"), Err(SentimentError::Protocol { .. })));
    }

    #[test]
    fn http_unreachable_is_backend_failure() {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let addr = listener.local_addr().unwrap();
        drop(listener);
        let cfg = AdapterConfig::new(AdapterEndpoint::Http(format!("http://{addr}")))
            .with_timeout(Duration::from_millis(500));
        assert!(matches!(AdapterBackend::connect(&cfg), Err(SentimentError::Backend(_))));
    }
}
