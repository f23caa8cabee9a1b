//! JSON encodings of matrices, frames and result types, the erasure CSV
//! schema, and atomic file output.

use std::io::Write;
use std::path::Path;

use framekit::erasure::ErasureTrialReport;
use framekit::frame::{Frame, Normalization};
use framekit::ner::Certification;
use framekit::probing::{ConcentrationEstimate, IsometryCheck, ProbeRoundtrip};
use framekit::signs::{InequalityEstimate, StirlingCheck};
use framekit::{Complex64, DenseMatrix, Mode};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const ERASURE_CSV_HEADER: &str =
    "n,M,keep_prob,trials,mean_error,stderr,epsilon,input_norm,ratio,seed";

pub fn matrix_to_json(m: &DenseMatrix) -> Value {
    let entries: Vec<Value> = m.entries().iter().map(|z| json!([z.re, z.im])).collect();
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "mode": if m.is_real() { "real" } else { "complex" },
        "entries": entries,
    })
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value, CliError> {
    v.get(key)
        .ok_or_else(|| CliError::config(format!("{path}.{key}"), "missing"))
}

fn uint(v: &Value, key: &str, path: &str) -> Result<usize, CliError> {
    field(v, key, path)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| CliError::config(format!("{path}.{key}"), "expected a non-negative integer"))
}

fn scalar(v: &Value, path: &str) -> Result<Complex64, CliError> {
    if let Some(re) = v.as_f64() {
        return Ok(Complex64::new(re, 0.0));
    }
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => match (re.as_f64(), im.as_f64()) {
            (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
            _ => Err(CliError::config(path, "expected [re, im] numbers")),
        },
        _ => Err(CliError::config(path, "expected a number or [re, im]")),
    }
}

pub fn matrix_from_json(v: &Value, path: &str) -> Result<DenseMatrix, CliError> {
    let rows = uint(v, "rows", path)?;
    let cols = uint(v, "cols", path)?;
    let mode = match field(v, "mode", path)?.as_str() {
        Some("real") => Mode::Real,
        Some("complex") => Mode::Complex,
        _ => {
            return Err(CliError::config(
                format!("{path}.mode"),
                "expected \"real\" or \"complex\"",
            ))
        }
    };
    let entries_path = format!("{path}.entries");
    let entries = field(v, "entries", path)?
        .as_array()
        .ok_or_else(|| CliError::config(&entries_path, "expected a list"))?
        .iter()
        .enumerate()
        .map(|(i, e)| scalar(e, &format!("{entries_path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    DenseMatrix::new(rows, cols, entries, mode).map_err(|e| CliError::config(path, e.to_string()))
}

pub fn frame_to_json(f: &Frame) -> Value {
    json!({
        "n": f.dim(),
        "M": f.len(),
        "normalization": f.normalization().as_str(),
        "kind": f.kind(),
        "matrix": matrix_to_json(f.vectors()),
    })
}

pub fn frame_from_json(v: &Value, path: &str) -> Result<Frame, CliError> {
    let n = uint(v, "n", path)?;
    let len = uint(v, "M", path)?;
    let normalization: Normalization = field(v, "normalization", path)?
        .as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| {
            CliError::config(
                format!("{path}.normalization"),
                "expected \"recon\" or \"unit\"",
            )
        })?;
    let kind = field(v, "kind", path)?
        .as_str()
        .ok_or_else(|| CliError::config(format!("{path}.kind"), "expected a string"))?;
    let matrix = matrix_from_json(field(v, "matrix", path)?, &format!("{path}.matrix"))?;
    if matrix.shape() != (n, len) {
        return Err(CliError::config(
            format!("{path}.matrix"),
            format!(
                "shape {:?} does not match n = {n}, M = {len}",
                matrix.shape()
            ),
        ));
    }
    Ok(Frame::new(matrix, normalization, kind))
}

pub fn vector_to_json(v: &[Complex64]) -> Value {
    Value::Array(v.iter().map(|z| json!([z.re, z.im])).collect())
}

pub fn vector_from_json(v: &Value, path: &str) -> Result<Vec<Complex64>, CliError> {
    v.as_array()
        .ok_or_else(|| CliError::config(path, "expected a list"))?
        .iter()
        .enumerate()
        .map(|(i, e)| scalar(e, &format!("{path}[{i}]")))
        .collect()
}

/// A list of square matrices, as used for probing families.
pub fn family_from_json(v: &Value, path: &str) -> Result<Vec<DenseMatrix>, CliError> {
    v.as_array()
        .ok_or_else(|| CliError::config(path, "expected a list of matrices"))?
        .iter()
        .enumerate()
        .map(|(i, m)| matrix_from_json(m, &format!("{path}[{i}]")))
        .collect()
}

/// Reads and parses a JSON input file named by config field `key`.
pub fn read_json(file: &str, key: &str) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::config(key, format!("cannot read '{file}': {e}")))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::config(key, format!("'{file}' is not valid JSON: {e}")))
}

fn float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn erasure_csv_row(r: &ErasureTrialReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        r.n,
        r.frame_len,
        float(r.keep_prob),
        r.trials,
        float(r.mean_error),
        float(r.stderr),
        float(r.epsilon),
        float(r.input_norm),
        float(r.ratio),
        r.seed
    )
}

pub fn erasure_csv(reports: &[ErasureTrialReport]) -> String {
    let mut out = String::from(ERASURE_CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&erasure_csv_row(r));
        out.push('\n');
    }
    out
}

pub fn erasure_report_json(r: &ErasureTrialReport) -> Value {
    json!({
        "n": r.n,
        "M": r.frame_len,
        "keep_prob": r.keep_prob,
        "trials": r.trials,
        "mean_error": r.mean_error,
        "stderr": r.stderr,
        "epsilon": r.epsilon,
        "input_norm": r.input_norm,
        "ratio": r.ratio,
        "seed": r.seed,
    })
}

/// Certificate document; an infinite condition number is written as `null`
/// with `rank_deficient: true`. `C` and `pass` appear only when a bound was set.
pub fn certificate_json(c: &Certification, with_bound: bool) -> Value {
    let cert = &c.cert;
    let mut doc = json!({
        "N": cert.frame_len,
        "K": cert.kept,
        "p": cert.p,
        "worst_cond": if cert.rank_deficient() { Value::Null } else { Value::from(cert.worst_cond) },
        "rank_deficient": cert.rank_deficient(),
        "worst_subset": cert.worst_subset,
        "mode": cert.mode.name(),
        "subsets_examined": u64::try_from(cert.subsets_examined).unwrap_or(u64::MAX),
    });
    if let framekit::ner::SearchMode::Sampled { samples, seed } = cert.mode {
        doc["samples"] = json!(samples);
        doc["seed"] = json!(seed);
    }
    if with_bound {
        doc["C"] = json!(c.bound);
        doc["pass"] = json!(c.pass);
    }
    doc
}

pub fn inequality_json(e: &InequalityEstimate) -> Value {
    json!({
        "lhs": e.lhs,
        "lhs_stderr": e.lhs_stderr,
        "rhs": e.rhs,
        "ratio": e.ratio,
        "trials": e.trials,
        "exact": e.exact,
    })
}

pub fn stirling_json(c: &StirlingCheck) -> Value {
    json!({
        "m": c.m,
        "lhs": c.lhs,
        "rhs": c.rhs,
        "log_lhs": c.log_lhs,
        "log_rhs": c.log_rhs,
        "holds": c.holds,
    })
}

pub fn isometry_json(c: &IsometryCheck) -> Value {
    json!({
        "max_residual": c.max_residual,
        "pass": c.pass,
        "schatten_p2": c.schatten_p2,
        "schatten_p4": c.schatten_p4,
    })
}

pub fn roundtrip_json(r: &ProbeRoundtrip) -> Value {
    json!({
        "lambda_hat": vector_to_json(&r.lambda_hat),
        "rel_error": r.rel_error,
        "cond": r.cond,
    })
}

pub fn concentration_json(c: &ConcentrationEstimate) -> Value {
    json!({
        "n": c.n,
        "trials": c.trials,
        "mean_dev": c.mean_dev,
        "stderr": c.stderr,
        "scale": c.scale,
        "ratio": c.ratio,
        "distribution": c.distribution.as_str(),
        "seed": c.seed,
    })
}

/// Pretty JSON with a trailing newline.
pub fn json_bytes(v: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s.into_bytes()
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes via a temporary file in the target directory, then renames, so the
/// target never holds a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("cannot write '{}': {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use framekit::frame::harmonic_frame;

    #[test]
    fn matrix_roundtrip() {
        let m = DenseMatrix::from_fn(2, 3, |i, j| Complex64::new(i as f64 - 0.5, j as f64 / 3.0));
        assert_eq!(matrix_from_json(&matrix_to_json(&m), "m").unwrap(), m);
        let r = DenseMatrix::from_real(1, 2, vec![0.1, -2.0]).unwrap();
        let v = matrix_to_json(&r);
        assert_eq!(v["mode"], "real");
        assert_eq!(matrix_from_json(&v, "m").unwrap(), r);
    }

    #[test]
    fn matrix_errors_have_paths() {
        let bad = json!({"rows": 1, "cols": 2, "mode": "real", "entries": [[1, 0], [0, 1]]});
        assert!(matrix_from_json(&bad, "frame.matrix")
            .unwrap_err()
            .to_string()
            .starts_with("frame.matrix"));
        let bad = json!({"rows": 1, "cols": 2, "mode": "real", "entries": [[1, 0], "x"]});
        assert!(matrix_from_json(&bad, "m")
            .unwrap_err()
            .to_string()
            .starts_with("m.entries[1]"));
    }

    #[test]
    fn frame_roundtrip() {
        let f = harmonic_frame(3, 5, None).unwrap();
        let v = frame_to_json(&f);
        assert_eq!(v["n"], 3);
        assert_eq!(v["M"], 5);
        assert_eq!(frame_from_json(&v, "frame").unwrap(), f);
    }

    #[test]
    fn csv_layout() {
        let r = ErasureTrialReport {
            n: 2,
            frame_len: 4,
            keep_prob: 0.5,
            trials: 10,
            mean_error: 0.1,
            stderr: 0.01,
            epsilon: 1.0 / 3.0,
            input_norm: 1.0,
            ratio: 0.3,
            seed: 42,
        };
        let csv = erasure_csv(&[r]);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(ERASURE_CSV_HEADER));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row[0], "2");
        assert_eq!(row[2], "5.0000000000000000e-1");
        assert_eq!(row[6], "3.3333333333333331e-1");
        assert_eq!(row[9], "42");
        assert!(!csv.contains('\r') && csv.ends_with('\n'));
        // 17 significant digits recover the double exactly
        assert_eq!(row[6].parse::<f64>().unwrap(), 1.0 / 3.0);
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.json");
        write_atomic(&path, b"first").unwrap();
        write_atomic(&path, b"second").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"second");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
        assert!(write_atomic(&dir.path().join("missing/out.json"), b"x").is_err());
    }
}
