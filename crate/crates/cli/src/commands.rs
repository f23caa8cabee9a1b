//! One function per command. Each returns the result document (echoed in the
//! manifest) and the primary output bytes.

use framekit::diffset::find_difference_set;
use framekit::erasure::{default_input, ErasureExperiment, ErasureTrialReport};
use framekit::frame::{
    check_tight, difference_set_etf, harmonic_frame, real_harmonic_frame, scaled_onb_frame, Frame,
    Normalization,
};
use framekit::ner::{certify_kept, SearchMode};
use framekit::probing::{
    check_scaled_isometry, circulant_dictionary, khintchine_order, khintchine_route_bound,
    probe_roundtrip, random_probe, regroup, ConcentrationExperiment, ProbeDistribution,
};
use framekit::rng;
use framekit::signs::{
    seeded_family, stirling_bound_check, KhintchineInstance, RudelsonInstance, SignEnsemble,
};
use framekit::Complex64;
use serde_json::{json, Value};

use crate::config::{Command, ExperimentConfig};
use crate::error::CliError;
use crate::formats::{self, json_bytes};
use crate::parallel::{map_trials, with_threads};

/// What a command produced.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub result: Value,
    /// Bytes for the configured output path.
    pub bytes: Vec<u8>,
}

impl Outcome {
    fn json(result: Value) -> Self {
        let bytes = json_bytes(&result);
        Outcome { result, bytes }
    }
}

pub fn execute(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    with_threads(cfg.threads(), || match cfg.command {
        Command::Construct => construct(cfg),
        Command::Erasure => erasure(cfg),
        Command::Sweep => sweep(cfg),
        Command::Ner => ner(cfg),
        Command::Rudelson => rudelson(cfg),
        Command::Khintchine => khintchine(cfg),
        Command::Probe => probe(cfg),
        Command::Stirling => stirling(cfg),
    })?
}

fn need(cfg: &ExperimentConfig, key: &str) -> usize {
    cfg.usize(key)
        .unwrap_or_else(|| panic!("validation guarantees params.{key}"))
}

fn load_frame(cfg: &ExperimentConfig) -> Result<Frame, CliError> {
    let file = cfg.str("frame").expect("validated");
    formats::frame_from_json(&formats::read_json(file, "params.frame")?, "params.frame")
}

fn construct(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let requested: Option<Normalization> = cfg
        .str("normalization")
        .map(|s| s.parse().expect("validated"));
    let frame = match cfg.str("kind").expect("validated") {
        "scaled-onb" => scaled_onb_frame(need(cfg, "n"), cfg.usize("copies").unwrap_or(1))?,
        "harmonic" => harmonic_frame(
            need(cfg, "n"),
            need(cfg, "M"),
            cfg.usize_list("rows").as_deref(),
        )?,
        "harmonic-real" => real_harmonic_frame(need(cfg, "n"), need(cfg, "M"))?,
        _ => {
            let ds = find_difference_set(need(cfg, "N"), need(cfg, "M"))?;
            difference_set_etf(&ds, Normalization::Unit)
        }
    };
    let frame = match requested {
        Some(norm) => frame.renormalized(norm),
        None => frame,
    };
    let tight = check_tight(&frame, 1e-10)?;
    let doc = formats::frame_to_json(&frame);
    Ok(Outcome {
        result: json!({
            "n": frame.dim(),
            "M": frame.len(),
            "kind": frame.kind(),
            "normalization": frame.normalization().as_str(),
            "tightness_residual": tight.residual,
        }),
        bytes: json_bytes(&doc),
    })
}

fn erasure_report(
    frame: &Frame,
    x: &[Complex64],
    trials: usize,
    keep_prob: f64,
    seed: u64,
) -> Result<ErasureTrialReport, CliError> {
    let exp = ErasureExperiment::new(frame, x, keep_prob, seed)?;
    let errors = map_trials(trials as u64, |i| exp.trial(i))?;
    Ok(exp.report(&errors))
}

fn erasure(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let frame = load_frame(cfg)?;
    let x = default_input(frame.dim(), cfg.seed());
    let report = erasure_report(
        &frame,
        &x,
        need(cfg, "trials"),
        cfg.f64("keep_prob").expect("defaulted"),
        cfg.seed(),
    )?;
    Ok(Outcome {
        result: formats::erasure_report_json(&report),
        bytes: formats::erasure_csv(&[report]).into_bytes(),
    })
}

fn sweep(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let n = need(cfg, "n");
    let x = default_input(n, cfg.seed());
    let reports = cfg
        .usize_list("M")
        .expect("validated")
        .into_iter()
        .map(|len| {
            let frame = harmonic_frame(n, len, None)?;
            erasure_report(
                &frame,
                &x,
                need(cfg, "trials"),
                cfg.f64("keep_prob").expect("defaulted"),
                cfg.seed(),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Outcome {
        result: Value::Array(reports.iter().map(formats::erasure_report_json).collect()),
        bytes: formats::erasure_csv(&reports).into_bytes(),
    })
}

fn ner(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let frame = load_frame(cfg)?;
    let mode = match cfg.str("mode") {
        Some("sampled") => SearchMode::Sampled {
            samples: need(cfg, "samples"),
            seed: cfg.seed(),
        },
        _ => SearchMode::Exhaustive,
    };
    let bound = cfg.f64("C");
    let cert = certify_kept(&frame, need(cfg, "K"), bound.unwrap_or(f64::INFINITY), mode)?;
    Ok(Outcome::json(formats::certificate_json(
        &cert,
        bound.is_some(),
    )))
}

fn ensemble(cfg: &ExperimentConfig, count: usize) -> Result<SignEnsemble, CliError> {
    Ok(if cfg.flag("exact") {
        SignEnsemble::exact(count)?
    } else {
        SignEnsemble::monte_carlo(count, need(cfg, "trials"), cfg.seed())?
    })
}

fn rudelson(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let frame = load_frame(cfg)?;
    let ensemble = ensemble(cfg, frame.len())?;
    let instance = RudelsonInstance::new(frame.vectors())?;
    let samples = map_trials(ensemble.evaluations(), |i| {
        instance.sample(&ensemble.signs(i))
    })?;
    Ok(Outcome::json(formats::inequality_json(
        &instance.estimate(&ensemble, &samples),
    )))
}

fn khintchine(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let family = seeded_family(
        need(cfg, "count"),
        need(cfg, "dim"),
        cfg.str("field") == Some("complex"),
        cfg.seed(),
    )?;
    let ensemble = ensemble(cfg, family.len())?;
    let instance = KhintchineInstance::new(&family, need(cfg, "m") as u32)?;
    let samples = map_trials(ensemble.evaluations(), |i| {
        instance.sample(&ensemble.signs(i))
    })?;
    Ok(Outcome::json(formats::inequality_json(
        &instance.estimate(&ensemble, &samples),
    )))
}

fn probe(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let seed = cfg.seed();
    let family_name = cfg.str("family").expect("defaulted");
    let family = if family_name == "circulant" {
        circulant_dictionary(need(cfg, "n"))?
    } else {
        formats::family_from_json(
            &formats::read_json(family_name, "params.family")?,
            "params.family",
        )?
    };
    let n = family.len();
    if cfg.usize("n").is_some_and(|given| given != n) {
        return Err(CliError::config(
            "params.n",
            format!("family file holds {n} matrices"),
        ));
    }
    let dist: ProbeDistribution = cfg.str("dist").expect("defaulted").parse()?;
    let lambda = match cfg.str("lambda_file") {
        Some(file) => formats::vector_from_json(
            &formats::read_json(file, "params.lambda_file")?,
            "params.lambda_file",
        )?,
        None => random_probe(n, ProbeDistribution::Uniform, seed, rng::INSTANCE_STREAM),
    };
    let x = random_probe(n, dist, seed, rng::PROBE_STREAM);
    let roundtrip = probe_roundtrip(
        &family,
        &lambda,
        &x,
        cfg.f64("cond_limit").expect("defaulted"),
    )?;

    let regrouped = regroup(&family)?;
    let isometry = check_scaled_isometry(&regrouped)?;
    let exp = ConcentrationExperiment::new(&regrouped, dist, seed)?;
    let devs = map_trials(need(cfg, "trials") as u64, |i| exp.trial(i))?;
    let concentration = exp.report(&devs);

    Ok(Outcome::json(json!({
        "n": n,
        "family": family_name,
        "lambda": formats::vector_to_json(&lambda),
        "probe": formats::vector_to_json(&x),
        "roundtrip": formats::roundtrip_json(&roundtrip),
        "isometry": formats::isometry_json(&isometry),
        "concentration": formats::concentration_json(&concentration),
        "khintchine_order": khintchine_order(n),
        "khintchine_route_bound": khintchine_route_bound(&regrouped)?,
    })))
}

fn stirling(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let checks = (1..=need(cfg, "m_max") as u32)
        .map(stirling_bound_check)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Outcome::json(json!({
        "all_hold": checks.iter().all(|c| c.holds),
        "checks": checks.iter().map(formats::stirling_json).collect::<Vec<_>>(),
    })))
}
