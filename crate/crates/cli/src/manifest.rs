use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::commands;
use crate::config::ExperimentConfig;
use crate::error::CliError;
use crate::formats;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct OutputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
}

/// Printed to stdout after every run, successful or not.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RunManifest {
    pub status: &'static str,
    pub version: &'static str,
    pub config: Value,
    pub duration_secs: f64,
    pub outputs: Vec<OutputDigest>,
    pub result: Value,
    pub error: Option<ErrorReport>,
    #[serde(skip)]
    pub exit_code: i32,
}

impl RunManifest {
    pub fn failure(config: Value, err: &CliError, started: Instant) -> Self {
        RunManifest {
            status: "error",
            version: crate::VERSION,
            config,
            duration_secs: started.elapsed().as_secs_f64(),
            outputs: Vec::new(),
            result: Value::Null,
            error: Some(ErrorReport {
                kind: err.name().to_string(),
                message: err.to_string(),
            }),
            exit_code: err.exit_code(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest always serializes")
    }
}

/// Executes a validated config, writes the primary output (if any) and
/// returns the manifest.
pub fn run(cfg: &ExperimentConfig) -> RunManifest {
    let started = Instant::now();
    let echo = cfg.to_json();
    let outcome = match commands::execute(cfg) {
        Ok(o) => o,
        Err(e) => return RunManifest::failure(echo, &e, started),
    };
    let mut outputs = Vec::new();
    if let Some(path) = &cfg.output {
        if let Err(e) = formats::write_atomic(Path::new(path), &outcome.bytes) {
            return RunManifest::failure(echo, &e, started);
        }
        outputs.push(OutputDigest {
            path: path.clone(),
            sha256: formats::sha256_hex(&outcome.bytes),
        });
    }
    RunManifest {
        status: "ok",
        version: crate::VERSION,
        config: echo,
        duration_secs: started.elapsed().as_secs_f64(),
        outputs,
        result: outcome.result,
        error: None,
        exit_code: 0,
    }
}
