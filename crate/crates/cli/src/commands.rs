use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::json;

use pdlsl::check::{apply_overrides, lint_lexicon, parse_overrides, verify};
use pdlsl::extract::{
    extract, ExtractOptions, Extraction, SegmentKind, TrackingError, TrackingSequence, TransitionLabel,
};
use pdlsl::model::{ModelDocument, ModelDumpError};
use pdlsl::{parse_formula, parse_lexicon, HandConfig, LexiconFile, UtteranceModel};

use crate::config::{OutputFormat, Settings};
use crate::diag::{warning_line, CliError};

/// What a command produced: the main output and warnings for standard error.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub warnings: Vec<String>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn file_field(path: &Path) -> serde_json::Value {
    json!({ "file": path.display().to_string() })
}

fn load_tracking(path: &Path) -> Result<TrackingSequence, CliError> {
    TrackingSequence::from_json(&read(path)?).map_err(|e| {
        let pointer = match &e {
            TrackingError::Schema { pointer, .. } | TrackingError::NonFinite { pointer } => pointer.clone(),
            TrackingError::BadFps(_) => "/fps".into(),
            TrackingError::Format(_) => "/format".into(),
            TrackingError::Empty => "/frames".into(),
        };
        CliError::data("SchemaError", e, json!({ "file": path.display().to_string(), "pointer": pointer }))
    })
}

fn load_lexicon(path: &Path) -> Result<LexiconFile, CliError> {
    parse_lexicon(&read(path)?).map_err(|e| CliError::lexicon(path, &e))
}

fn load_model(path: &Path) -> Result<ModelDocument, CliError> {
    ModelDocument::from_json(&read(path)?).map_err(|e| match &e {
        ModelDumpError::Schema { path: pointer, .. } => {
            CliError::data("SchemaError", &e, json!({ "file": path.display().to_string(), "pointer": pointer }))
        }
        _ => CliError::data("ModelError", &e, file_field(path)),
    })
}

fn model_with_overrides(doc: &ModelDocument, path: &Path, s: &Settings) -> Result<UtteranceModel, CliError> {
    let mut model = doc.to_model().map_err(|e| CliError::data("ModelError", e, file_field(path)))?;
    if let Some(op) = &s.overrides {
        let parsed = parse_overrides(&read(op)?).map_err(|e| CliError::data("OverrideError", e, file_field(op)))?;
        apply_overrides(&mut model, &parsed, s.handedness)
            .map_err(|e| CliError::data("OverrideError", e, file_field(op)))?;
    }
    Ok(model)
}

pub fn extract_cmd(tracking: &Path, lexicon: Option<&PathBuf>, s: &Settings) -> Result<Output, CliError> {
    let seq = load_tracking(tracking)?;
    let labels: BTreeSet<HandConfig> = match lexicon {
        Some(p) => load_lexicon(p)?.config_labels(),
        None => seq.frames.iter().flat_map(|f| [f.right.config.clone(), f.left.config.clone()]).flatten().collect(),
    };
    let opts = ExtractOptions { params: s.params, frame: s.frame, mirrored: s.mirrored };
    let ex =
        extract(&seq, &opts, &s.placemap, &labels).map_err(|e| CliError::data(e.code(), &e, file_field(tracking)))?;
    let stdout = match s.output.unwrap_or_default() {
        OutputFormat::Json => ModelDocument::from_model(&ex.model, Some(s.params)).to_json(),
        OutputFormat::Table => segment_table(&ex),
    };
    let warnings = ex.diagnostics.iter().map(|d| warning_line(d, None)).collect();
    Ok(Output { stdout, warnings })
}

fn segment_table(ex: &Extraction) -> String {
    let mut out = String::from("segment     frames  state/action\n");
    let mut postures = ex.posture_states.iter();
    let mut transitions = ex.transitions.iter();
    for seg in &ex.segments {
        let (kind, what) = match seg.kind {
            SegmentKind::KeyPosture => ("posture", format!("s{}", postures.next().expect("one state per posture"))),
            SegmentKind::Transition => (
                "transition",
                match transitions.next().expect("one label per transition") {
                    TransitionLabel::Epsilon => "-".to_string(),
                    TransitionLabel::Action(a) => a.to_string(),
                },
            ),
        };
        writeln!(out, "{kind:<10}  {:>6}  {what}", format!("{}-{}", seg.first, seg.last)).unwrap();
    }
    out
}

pub fn check_cmd(model: &Path, lexicon: &Path, s: &Settings) -> Result<Output, CliError> {
    let doc = load_model(model)?;
    let m = model_with_overrides(&doc, model, s)?;
    let lex = load_lexicon(lexicon)?;
    let report = verify(&m, &lex, s.handedness)
        .map_err(|e| CliError::data("ModelError", e, file_field(model)))?
        .with_params(doc.params);
    let stdout = match s.output.unwrap_or_default() {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Table => report.to_table(),
    };
    Ok(Output { stdout, warnings: Vec::new() })
}

pub fn eval_cmd(
    model: &Path,
    formula: &str,
    state: usize,
    closed_world: bool,
    s: &Settings,
) -> Result<Output, CliError> {
    let doc = load_model(model)?;
    let m = model_with_overrides(&doc, model, s)?;
    let phi = parse_formula(formula).map_err(|e| CliError::parse(Path::new("<formula>"), &e))?;
    let grounded = phi.ground(s.handedness);
    if state >= m.state_count() {
        return Err(CliError::data(
            "UnknownState",
            format!("state {state} does not exist; the model has {} states", m.state_count()),
            json!({ "state": state }),
        ));
    }
    let value = if closed_world {
        m.eval_two_valued(state, &grounded, true).map(pdlsl::ThreeVal::from)
    } else {
        m.eval_formula(state, &grounded)
    }
    .map_err(|e| CliError::data("ModelError", e, file_field(model)))?;
    // Plain text unless JSON is asked for.
    let stdout = match s.output.unwrap_or(OutputFormat::Table) {
        OutputFormat::Table => format!("{value}\n"),
        OutputFormat::Json => {
            format!("{}\n", json!({ "state": state, "formula": grounded.to_string(), "value": value }))
        }
    };
    Ok(Output { stdout, warnings: Vec::new() })
}

pub fn lint_cmd(lexicon: &Path) -> Result<Output, CliError> {
    let lex = load_lexicon(lexicon)?;
    let warnings = lint_lexicon(&lex).iter().map(|w| warning_line(w, Some(w.to_string()))).collect();
    Ok(Output { stdout: String::new(), warnings })
}
