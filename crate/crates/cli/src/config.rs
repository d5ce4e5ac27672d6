//! Run configuration: a TOML file, overridden by command-line flags.
//!
//! ```toml
//! format = 1
//! dominant = "left"
//! mirrored = true
//! placemap = "placemap.toml"   # relative to this file
//! output = "table"
//!
//! [params]
//! tau_still = 0.03
//!
//! [frame]
//! head_height = 1.1
//! ```

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Deserialize;
use serde_json::json;

use pdlsl::extract::{FrameConfig, SegmentationParams};
use pdlsl::geometry::PlaceMapError;
use pdlsl::{Handedness, PlaceMap};

use crate::diag::CliError;

pub const CONFIG_FORMAT: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Dominant {
    Right,
    Left,
}

impl From<Dominant> for Handedness {
    fn from(d: Dominant) -> Self {
        match d {
            Dominant::Right => Handedness::RightDominant,
            Dominant::Left => Handedness::LeftDominant,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Table,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub format: Option<u32>,
    pub dominant: Option<Dominant>,
    pub mirrored: Option<bool>,
    pub placemap: Option<PathBuf>,
    pub output: Option<OutputFormat>,
    #[serde(default)]
    pub params: SegmentationParams,
    #[serde(default)]
    pub frame: FrameConfig,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut cfg: RunConfig = toml::from_str(&text).map_err(|e| {
            let mut extra = json!({ "file": path.display().to_string() });
            if let Some(span) = e.span() {
                let (line, column) = line_col(&text, span.start);
                extra["spans"] = json!([{ "line": line, "column": column, "length": span.len() }]);
            }
            CliError::data("ConfigError", e.message(), extra)
        })?;
        if let Some(v) = cfg.format.filter(|v| *v != CONFIG_FORMAT) {
            return Err(CliError::data(
                "ConfigError",
                format!("unsupported config format {v}"),
                json!({ "file": path.display().to_string() }),
            ));
        }
        cfg.params
            .check()
            .map_err(|e| CliError::data("ConfigError", e, json!({ "file": path.display().to_string() })))?;
        if let Some(p) = &cfg.placemap {
            if p.is_relative() {
                cfg.placemap = Some(path.parent().unwrap_or(Path::new("")).join(p));
            }
        }
        Ok(cfg)
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Flags shared by every command; a flag wins over the config file.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct CommonArgs {
    /// Run configuration (TOML).
    #[arg(long, value_name = "PATH", global = true)]
    pub config: Option<PathBuf>,
    /// Dominant hand of the signer.
    #[arg(long, value_enum, global = true)]
    pub dominant: Option<Dominant>,
    /// Treat the footage as mirrored (camera-facing).
    #[arg(long, global = true)]
    pub mirrored: bool,
    /// Places of articulation (TOML); defaults to the built-in map.
    #[arg(long, value_name = "PATH", global = true)]
    pub placemap: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, global = true)]
    pub format: Option<OutputFormat>,
    /// Valuation corrections applied before evaluation.
    #[arg(long, value_name = "PATH", global = true)]
    pub overrides: Option<PathBuf>,
}

/// Effective settings after merging defaults, the config file and flags.
#[derive(Debug, Clone)]
pub struct Settings {
    pub handedness: Handedness,
    /// `None` keeps the tracking file's own flag.
    pub mirrored: Option<bool>,
    pub placemap: PlaceMap,
    /// `None` leaves the choice to the command.
    pub output: Option<OutputFormat>,
    pub params: SegmentationParams,
    pub frame: FrameConfig,
    pub overrides: Option<PathBuf>,
}

impl Settings {
    pub fn resolve(args: &CommonArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        let placemap = match args.placemap.as_ref().or(file.placemap.as_ref()) {
            Some(p) => PlaceMap::load(p).map_err(|e| match e {
                PlaceMapError::Io { source, .. } => CliError::io(p, source),
                other => CliError::data("PlaceMapError", other, json!({ "file": p.display().to_string() })),
            })?,
            None => PlaceMap::default(),
        };
        Ok(Settings {
            handedness: args.dominant.or(file.dominant).map_or(Handedness::RightDominant, Into::into),
            mirrored: if args.mirrored { Some(true) } else { file.mirrored },
            placemap,
            output: args.format.or(file.output),
            params: file.params,
            frame: file.frame,
            overrides: args.overrides.clone(),
        })
    }
}
