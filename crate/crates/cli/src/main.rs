use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use framekit_cli::config::{layer, Command, Overrides};
use framekit_cli::{run, validate_value, CliError, RunManifest};
use serde_json::Value;

/// Frame construction, erasure simulation and matrix-inequality experiments.
///
/// Every command prints a JSON run manifest on stdout. Exit codes: 0 success,
/// 2 invalid configuration, 3 numerical failure.
#[derive(Parser, Debug)]
#[command(name = "framekit", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    /// JSON config file; flags given here override its values.
    #[arg(long)]
    config: Option<String>,
    /// Worker threads for trial loops (0 = all cores). Does not affect output.
    #[arg(long)]
    threads: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Build a frame and write it as JSON.
    Construct {
        /// scaled-onb, harmonic, harmonic-real or etf
        #[arg(long)]
        kind: Option<String>,
        #[arg(long = "n")]
        n: Option<u64>,
        /// Number of vectors (harmonic) or difference-set size (etf).
        #[arg(long = "M")]
        big_m: Option<u64>,
        /// Modulus of the difference set (etf).
        #[arg(long = "N")]
        big_n: Option<u64>,
        #[arg(long)]
        copies: Option<u64>,
        /// Harmonic row set, comma separated.
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<u64>>,
        /// recon or unit
        #[arg(long)]
        normalization: Option<String>,
        #[arg(long)]
        out: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Monte Carlo reconstruction error under random erasures.
    Erasure {
        #[arg(long)]
        frame: Option<String>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long = "keep-prob")]
        keep_prob: Option<f64>,
        #[arg(long)]
        csv: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Erasure error across harmonic frames of increasing size.
    Sweep {
        #[arg(long = "n")]
        n: Option<u64>,
        /// Frame sizes, comma separated.
        #[arg(long = "M", value_delimiter = ',')]
        big_m: Option<Vec<u64>>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long = "keep-prob")]
        keep_prob: Option<f64>,
        #[arg(long)]
        csv: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Worst condition number over kept column subsets.
    Ner {
        #[arg(long)]
        frame: Option<String>,
        #[arg(long = "K")]
        big_k: Option<u64>,
        /// exhaustive or sampled
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Certify against this condition bound.
        #[arg(long = "C")]
        big_c: Option<f64>,
        #[arg(long)]
        json: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Rademacher sums of rank-one frame projections.
    Rudelson {
        #[arg(long)]
        frame: Option<String>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Enumerate all sign patterns instead of sampling.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        json: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Operator Khintchine ratio for a seeded random matrix family.
    Khintchine {
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        count: Option<u64>,
        #[arg(long)]
        dim: Option<u64>,
        /// real or complex entries
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        json: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Matrix probing roundtrip and dictionary concentration.
    Probe {
        #[arg(long = "n")]
        n: Option<u64>,
        /// "circulant" or a JSON file holding a list of matrices.
        #[arg(long)]
        family: Option<String>,
        /// rademacher or uniform
        #[arg(long)]
        dist: Option<String>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long = "lambda-file")]
        lambda_file: Option<String>,
        #[arg(long = "cond-limit")]
        cond_limit: Option<f64>,
        #[arg(long)]
        json: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Log-domain check of the double-factorial bound for m = 1..m_max.
    Stirling {
        #[arg(long = "m-max")]
        m_max: Option<u64>,
        #[arg(long)]
        json: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run a JSON config file as-is.
    Run {
        #[arg(long)]
        config: String,
    },
}

fn read_config(path: &str) -> Result<Value, CliError> {
    framekit_cli::formats::read_json(path, "config")
}

fn to_document(cmd: Cmd) -> Result<Value, CliError> {
    let mut o = Overrides::default();
    let (command, common) = match cmd {
        Cmd::Run { config } => return read_config(&config),
        Cmd::Construct {
            kind,
            n,
            big_m,
            big_n,
            copies,
            rows,
            normalization,
            out,
            common,
        } => {
            o.set("kind", kind);
            o.set("n", n);
            o.set("M", big_m);
            o.set("N", big_n);
            o.set("copies", copies);
            o.set("rows", rows);
            o.set("normalization", normalization);
            o.output = out;
            (Command::Construct, common)
        }
        Cmd::Erasure {
            frame,
            trials,
            seed,
            keep_prob,
            csv,
            common,
        } => {
            o.set("frame", frame);
            o.set("trials", trials);
            o.set("keep_prob", keep_prob);
            o.seed = seed;
            o.output = csv;
            (Command::Erasure, common)
        }
        Cmd::Sweep {
            n,
            big_m,
            trials,
            seed,
            keep_prob,
            csv,
            common,
        } => {
            o.set("n", n);
            o.set("M", big_m);
            o.set("trials", trials);
            o.set("keep_prob", keep_prob);
            o.seed = seed;
            o.output = csv;
            (Command::Sweep, common)
        }
        Cmd::Ner {
            frame,
            big_k,
            mode,
            samples,
            seed,
            big_c,
            json,
            common,
        } => {
            o.set("frame", frame);
            o.set("K", big_k);
            o.set("mode", mode);
            o.set("samples", samples);
            o.set("C", big_c);
            o.seed = seed;
            o.output = json;
            (Command::Ner, common)
        }
        Cmd::Rudelson {
            frame,
            trials,
            seed,
            exact,
            json,
            common,
        } => {
            o.set("frame", frame);
            o.set("trials", trials);
            o.switch("exact", exact);
            o.seed = seed;
            o.output = json;
            (Command::Rudelson, common)
        }
        Cmd::Khintchine {
            m,
            count,
            dim,
            field,
            trials,
            seed,
            exact,
            json,
            common,
        } => {
            o.set("m", m);
            o.set("count", count);
            o.set("dim", dim);
            o.set("field", field);
            o.set("trials", trials);
            o.switch("exact", exact);
            o.seed = seed;
            o.output = json;
            (Command::Khintchine, common)
        }
        Cmd::Probe {
            n,
            family,
            dist,
            trials,
            seed,
            lambda_file,
            cond_limit,
            json,
            common,
        } => {
            o.set("n", n);
            o.set("family", family);
            o.set("dist", dist);
            o.set("trials", trials);
            o.set("lambda_file", lambda_file);
            o.set("cond_limit", cond_limit);
            o.seed = seed;
            o.output = json;
            (Command::Probe, common)
        }
        Cmd::Stirling {
            m_max,
            json,
            common,
        } => {
            o.set("m_max", m_max);
            o.output = json;
            (Command::Stirling, common)
        }
    };
    o.set("threads", common.threads);
    let file = common.config.as_deref().map(read_config).transpose()?;
    layer(file, command, o)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let manifest = match to_document(cli.command).and_then(|doc| validate_value(&doc)) {
        Ok(cfg) => run(&cfg),
        Err(e) => RunManifest::failure(Value::Null, &e, started),
    };
    println!("{}", manifest.to_json_string());
    if let Some(err) = &manifest.error {
        eprintln!("framekit: {}: {}", err.kind, err.message);
    }
    ExitCode::from(manifest.exit_code as u8)
}
