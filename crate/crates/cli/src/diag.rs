//! Errors and the JSON-lines diagnostics written to standard error.

use std::path::Path;

use serde_json::{json, Map, Value};

use pdlsl::parse::{LexiconError, ParseError, SourceSpan};

/// A failed command, as the JSON object reported on standard error.
/// Usage errors never get here: clap reports them and exits with 2.
#[derive(Debug)]
pub struct CliError(Value);

impl CliError {
    pub const EXIT_CODE: u8 = 1;

    pub fn to_line(&self) -> String {
        self.0.to_string()
    }

    pub fn data(code: &str, message: impl ToString, extra: Value) -> Self {
        let fields = match extra {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        CliError(error_line(code, &message.to_string(), fields))
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        let code = if err.kind() == std::io::ErrorKind::NotFound { "FileNotFound" } else { "Io" };
        CliError::data(code, err, json!({ "file": path.display().to_string() }))
    }

    pub fn parse(path: &Path, err: &ParseError) -> Self {
        CliError::data(
            "ParseError",
            &err.kind,
            json!({ "file": path.display().to_string(), "spans": spans(&[err.span]) }),
        )
    }

    pub fn lexicon(path: &Path, err: &LexiconError) -> Self {
        let code = match err {
            LexiconError::DuplicateSign { .. } => "DuplicateSign",
            LexiconError::Entry { .. } => "ParseError",
        };
        CliError::data(code, err, json!({ "file": path.display().to_string(), "spans": spans(&err.spans()) }))
    }
}

fn spans(s: &[SourceSpan]) -> Value {
    serde_json::to_value(s).expect("spans serialize")
}

fn error_line(code: &str, message: &str, fields: Map<String, Value>) -> Value {
    let mut obj = Map::new();
    obj.insert("level".into(), "error".into());
    obj.insert("code".into(), code.into());
    obj.insert("message".into(), message.into());
    obj.extend(fields);
    Value::Object(obj)
}

/// A non-fatal note, printed as `{"level":"warning",...}`.
pub fn warning_line(payload: &impl serde::Serialize, message: Option<String>) -> String {
    let mut obj = Map::new();
    obj.insert("level".into(), "warning".into());
    if let Value::Object(fields) = serde_json::to_value(payload).expect("diagnostic serializes") {
        obj.extend(fields);
    }
    if let Some(m) = message {
        obj.insert("message".into(), m.into());
    }
    Value::Object(obj).to_string()
}
