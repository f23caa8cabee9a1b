//! Experiment configuration: `{"command", "seed", "params", "output"}`.
//!
//! Each command has a fixed parameter schema. Unknown keys are rejected by
//! name, documented defaults are filled in, and the resulting normalized
//! config is what the manifest echoes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    Construct,
    Erasure,
    Sweep,
    Ner,
    Rudelson,
    Khintchine,
    Probe,
    Stirling,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Construct,
        Command::Erasure,
        Command::Sweep,
        Command::Ner,
        Command::Rudelson,
        Command::Khintchine,
        Command::Probe,
        Command::Stirling,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::Construct => "construct",
            Command::Erasure => "erasure",
            Command::Sweep => "sweep",
            Command::Ner => "ner",
            Command::Rudelson => "rudelson",
            Command::Khintchine => "khintchine",
            Command::Probe => "probe",
            Command::Stirling => "stirling",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| CliError::config("command", format!("unknown command '{s}'")))
    }
}

#[derive(Debug, Clone, Copy)]
enum Kind {
    UInt,
    Float,
    Str,
    Bool,
    UIntList,
}

#[derive(Debug, Clone, Copy)]
enum Fill {
    Required,
    Optional,
    Int(u64),
    Real(f64),
    Text(&'static str),
    Flag(bool),
}

struct Param {
    key: &'static str,
    kind: Kind,
    fill: Fill,
}

const fn p(key: &'static str, kind: Kind, fill: Fill) -> Param {
    Param { key, kind, fill }
}

const THREADS: Param = p("threads", Kind::UInt, Fill::Int(0));

fn schema(command: Command) -> &'static [Param] {
    use Fill::*;
    use Kind::*;
    match command {
        Command::Construct => {
            const S: &[Param] = &[
                p("kind", Str, Required),
                p("n", UInt, Optional),
                p("M", UInt, Optional),
                p("N", UInt, Optional),
                p("copies", UInt, Optional),
                p("rows", UIntList, Optional),
                p("normalization", Str, Optional),
            ];
            S
        }
        Command::Erasure => {
            const S: &[Param] = &[
                p("frame", Str, Required),
                p("trials", UInt, Required),
                p("keep_prob", Float, Real(0.5)),
                THREADS,
            ];
            S
        }
        Command::Sweep => {
            const S: &[Param] = &[
                p("n", UInt, Required),
                p("M", UIntList, Required),
                p("trials", UInt, Required),
                p("keep_prob", Float, Real(0.5)),
                THREADS,
            ];
            S
        }
        Command::Ner => {
            const S: &[Param] = &[
                p("frame", Str, Required),
                p("K", UInt, Required),
                p("mode", Str, Text("exhaustive")),
                p("samples", UInt, Optional),
                p("C", Float, Optional),
            ];
            S
        }
        Command::Rudelson => {
            const S: &[Param] = &[
                p("frame", Str, Required),
                p("trials", UInt, Optional),
                p("exact", Bool, Flag(false)),
                THREADS,
            ];
            S
        }
        Command::Khintchine => {
            const S: &[Param] = &[
                p("m", UInt, Int(2)),
                p("count", UInt, Required),
                p("dim", UInt, Required),
                p("field", Str, Text("real")),
                p("trials", UInt, Optional),
                p("exact", Bool, Flag(false)),
                THREADS,
            ];
            S
        }
        Command::Probe => {
            const S: &[Param] = &[
                p("n", UInt, Optional),
                p("family", Str, Text("circulant")),
                p("dist", Str, Text("rademacher")),
                p("trials", UInt, Required),
                p("lambda_file", Str, Optional),
                p("cond_limit", Float, Real(1e8)),
                THREADS,
            ];
            S
        }
        Command::Stirling => {
            const S: &[Param] = &[p("m_max", UInt, Int(150))];
            S
        }
    }
}

/// A validated configuration with defaults applied.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub command: Command,
    pub seed: Option<u64>,
    pub params: BTreeMap<String, Value>,
    pub output: Option<String>,
}

impl ExperimentConfig {
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("command".into(), Value::from(self.command.as_str()));
        map.insert("seed".into(), self.seed.map_or(Value::Null, Value::from));
        map.insert(
            "params".into(),
            Value::Object(self.params.clone().into_iter().collect()),
        );
        map.insert(
            "output".into(),
            self.output.clone().map_or(Value::Null, Value::from),
        );
        Value::Object(map)
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.params.get(key)
    }

    pub fn usize(&self, key: &str) -> Option<usize> {
        self.get(key).and_then(Value::as_u64).map(|v| v as usize)
    }

    pub fn f64(&self, key: &str) -> Option<f64> {
        self.get(key).and_then(Value::as_f64)
    }

    pub fn str(&self, key: &str) -> Option<&str> {
        self.get(key).and_then(Value::as_str)
    }

    pub fn flag(&self, key: &str) -> bool {
        self.get(key).and_then(Value::as_bool).unwrap_or(false)
    }

    pub fn usize_list(&self, key: &str) -> Option<Vec<usize>> {
        self.get(key).and_then(Value::as_array).map(|a| {
            a.iter()
                .filter_map(Value::as_u64)
                .map(|v| v as usize)
                .collect()
        })
    }

    pub fn threads(&self) -> usize {
        self.usize("threads").unwrap_or(0)
    }

    /// The seed; validation guarantees it for stochastic commands.
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    fn is_stochastic(&self) -> bool {
        match self.command {
            Command::Construct | Command::Stirling => false,
            Command::Erasure | Command::Sweep | Command::Khintchine | Command::Probe => true,
            Command::Ner => self.str("mode") == Some("sampled"),
            Command::Rudelson => !self.flag("exact"),
        }
    }
}

/// Parses and validates config text.
pub fn validate(raw: &str) -> Result<ExperimentConfig, CliError> {
    let value: Value = serde_json::from_str(raw)
        .map_err(|e| CliError::config("config", format!("invalid JSON: {e}")))?;
    validate_value(&value)
}

/// Validates an already parsed config document.
pub fn validate_value(raw: &Value) -> Result<ExperimentConfig, CliError> {
    let obj = raw
        .as_object()
        .ok_or_else(|| CliError::config("config", "expected a JSON object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "command" | "seed" | "params" | "output") {
            return Err(CliError::config(key, "unknown key"));
        }
    }
    let command: Command = obj
        .get("command")
        .ok_or_else(|| CliError::config("command", "required"))?
        .as_str()
        .ok_or_else(|| CliError::config("command", "expected a string"))?
        .parse()?;
    let seed = match obj.get("seed") {
        None | Some(Value::Null) => None,
        Some(v) => Some(
            v.as_u64()
                .ok_or_else(|| CliError::config("seed", "expected an unsigned 64-bit integer"))?,
        ),
    };
    let output = match obj.get("output") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) if !s.is_empty() => Some(s.clone()),
        Some(_) => {
            return Err(CliError::config(
                "output",
                "expected a non-empty path string",
            ))
        }
    };
    let empty = Map::new();
    let given = match obj.get("params") {
        None | Some(Value::Null) => &empty,
        Some(Value::Object(m)) => m,
        Some(_) => return Err(CliError::config("params", "expected an object")),
    };

    let spec = schema(command);
    for key in given.keys() {
        if !spec.iter().any(|p| p.key == key) {
            return Err(CliError::config(format!("params.{key}"), "unknown key"));
        }
    }
    let mut params = BTreeMap::new();
    for param in spec {
        let path = format!("params.{}", param.key);
        let value = match (given.get(param.key), param.fill) {
            (Some(v), _) => normalize(v, param.kind, &path)?,
            (None, Fill::Required) => return Err(CliError::config(path, "required")),
            (None, Fill::Optional) => continue,
            (None, Fill::Int(v)) => Value::from(v),
            (None, Fill::Real(v)) => Value::from(v),
            (None, Fill::Text(v)) => Value::from(v),
            (None, Fill::Flag(v)) => Value::from(v),
        };
        params.insert(param.key.to_string(), value);
    }

    let cfg = ExperimentConfig {
        command,
        seed,
        params,
        output,
    };
    check_semantics(&cfg)?;
    if cfg.is_stochastic() && cfg.seed.is_none() {
        return Err(CliError::config(
            "seed",
            format!("required for command {command}"),
        ));
    }
    Ok(cfg)
}

fn normalize(v: &Value, kind: Kind, path: &str) -> Result<Value, CliError> {
    let bad = |what: &str| CliError::config(path, format!("expected {what}"));
    match kind {
        Kind::UInt => v
            .as_u64()
            .map(Value::from)
            .ok_or_else(|| bad("a non-negative integer")),
        Kind::Float => v
            .as_f64()
            .filter(|x| x.is_finite())
            .map(Value::from)
            .ok_or_else(|| bad("a finite number")),
        Kind::Str => v.as_str().map(Value::from).ok_or_else(|| bad("a string")),
        Kind::Bool => v.as_bool().map(Value::from).ok_or_else(|| bad("a boolean")),
        Kind::UIntList => {
            let items = v
                .as_array()
                .ok_or_else(|| bad("a list of non-negative integers"))?;
            items
                .iter()
                .map(|x| x.as_u64().map(Value::from))
                .collect::<Option<Vec<_>>>()
                .map(Value::Array)
                .ok_or_else(|| bad("a list of non-negative integers"))
        }
    }
}

fn require(cfg: &ExperimentConfig, key: &str, why: &str) -> Result<(), CliError> {
    if cfg.get(key).is_none() {
        return Err(CliError::config(
            format!("params.{key}"),
            format!("required {why}"),
        ));
    }
    Ok(())
}

fn one_of(cfg: &ExperimentConfig, key: &str, allowed: &[&str]) -> Result<(), CliError> {
    match cfg.str(key) {
        Some(v) if !allowed.contains(&v) => Err(CliError::config(
            format!("params.{key}"),
            format!("'{v}' is not one of {}", allowed.join(", ")),
        )),
        _ => Ok(()),
    }
}

fn check_semantics(cfg: &ExperimentConfig) -> Result<(), CliError> {
    if let Some(q) = cfg.f64("keep_prob") {
        if !(q > 0.0 && q <= 1.0) {
            return Err(CliError::config("params.keep_prob", "must lie in (0, 1]"));
        }
    }
    if cfg.usize("trials") == Some(0) {
        return Err(CliError::config("params.trials", "must be positive"));
    }
    if let Some(c) = cfg.f64("cond_limit") {
        if c <= 0.0 {
            return Err(CliError::config("params.cond_limit", "must be positive"));
        }
    }
    match cfg.command {
        Command::Construct => {
            one_of(
                cfg,
                "kind",
                &["scaled-onb", "harmonic", "harmonic-real", "etf"],
            )?;
            one_of(cfg, "normalization", &["recon", "unit"])?;
            match cfg.str("kind") {
                Some("scaled-onb") => require(cfg, "n", "for kind scaled-onb")?,
                Some("harmonic") | Some("harmonic-real") => {
                    require(cfg, "n", "for harmonic frames")?;
                    require(cfg, "M", "for harmonic frames")?;
                }
                _ => {
                    require(cfg, "N", "for kind etf")?;
                    require(cfg, "M", "for kind etf")?;
                }
            }
        }
        Command::Sweep => {
            if cfg.usize_list("M").is_some_and(|l| l.is_empty()) {
                return Err(CliError::config(
                    "params.M",
                    "must list at least one frame size",
                ));
            }
        }
        Command::Ner => {
            one_of(cfg, "mode", &["exhaustive", "sampled"])?;
            if cfg.str("mode") == Some("sampled") {
                require(cfg, "samples", "in sampled mode")?;
            }
        }
        Command::Rudelson => {
            if !cfg.flag("exact") {
                require(cfg, "trials", "unless exact is set")?;
            }
        }
        Command::Khintchine => {
            one_of(cfg, "field", &["real", "complex"])?;
            if !(1..=30).contains(&cfg.usize("m").unwrap_or(0)) {
                return Err(CliError::config("params.m", "must lie in 1..=30"));
            }
            if !cfg.flag("exact") {
                require(cfg, "trials", "unless exact is set")?;
            }
        }
        Command::Probe => {
            let dist = cfg.str("dist").unwrap_or("rademacher");
            if dist
                .parse::<framekit::probing::ProbeDistribution>()
                .is_err()
            {
                return Err(CliError::config(
                    "params.dist",
                    format!("unsupported distribution '{dist}'"),
                ));
            }
            if cfg.str("family") == Some("circulant") {
                require(cfg, "n", "for the circulant family")?;
            }
        }
        Command::Stirling => {
            if !(1..=150).contains(&cfg.usize("m_max").unwrap_or(0)) {
                return Err(CliError::config("params.m_max", "must lie in 1..=150"));
            }
        }
        Command::Erasure => {}
    }
    Ok(())
}

/// Overlays flag-provided values onto a config document: flags win over the
/// file, the file wins over defaults. `command` must agree if the file names one.
pub fn layer(file: Option<Value>, command: Command, flags: Overrides) -> Result<Value, CliError> {
    let mut doc = match file {
        Some(Value::Object(m)) => m,
        Some(_) => return Err(CliError::config("config", "expected a JSON object")),
        None => Map::new(),
    };
    match doc.get("command").and_then(Value::as_str) {
        Some(c) if c != command.as_str() => {
            return Err(CliError::config(
                "command",
                format!("config file is for '{c}', not '{command}'"),
            ))
        }
        _ => {
            doc.insert("command".into(), Value::from(command.as_str()));
        }
    }
    if let Some(seed) = flags.seed {
        doc.insert("seed".into(), Value::from(seed));
    }
    if let Some(out) = flags.output {
        doc.insert("output".into(), Value::from(out));
    }
    if !flags.params.is_empty() {
        let params = doc
            .entry("params")
            .or_insert_with(|| Value::Object(Map::new()));
        let params = params
            .as_object_mut()
            .ok_or_else(|| CliError::config("params", "expected an object"))?;
        for (k, v) in flags.params {
            params.insert(k, v);
        }
    }
    Ok(Value::Object(doc))
}

/// Values given on the command line.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub output: Option<String>,
    pub params: Map<String, Value>,
}

impl Overrides {
    pub fn set(&mut self, key: &str, value: Option<impl Into<Value>>) {
        if let Some(v) = value {
            self.params.insert(key.to_string(), v.into());
        }
    }

    /// Boolean switches only ever turn a setting on.
    pub fn switch(&mut self, key: &str, on: bool) {
        if on {
            self.params.insert(key.to_string(), Value::Bool(true));
        }
    }
}
