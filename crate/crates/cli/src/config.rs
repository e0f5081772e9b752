//! Run configuration echo and tangent-vector parsing.

use crate::CommonArgs;
use flagjacobi_core::qsqrt2::QSqrt2;
use serde::Serialize;
use std::path::PathBuf;

/// Configuration snapshot embedded in every output file, so artifacts are
/// diffable and reruns are attributable.
#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: Vec<(String, String)>,
    pub seed: u64,
}

impl Provenance {
    pub fn new(command: &str, common: &CommonArgs, extra: &[(&str, String)]) -> Provenance {
        let mut config: Vec<(String, String)> = vec![
            (
                "variant".into(),
                format!("{:?}", common.variant).to_lowercase(),
            ),
            ("tol".into(), format!("{:e}", common.tol)),
            ("samples".into(), common.samples.to_string()),
            ("seed".into(), common.seed.to_string()),
            (
                "format".into(),
                format!("{:?}", common.format).to_lowercase(),
            ),
        ];
        for (k, v) in extra {
            config.push(((*k).into(), v.clone()));
        }
        Provenance {
            tool: "flagjacobi".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config,
            seed: common.seed,
        }
    }

    /// Comment-style header lines for csv/text outputs.
    pub fn header_lines(&self) -> String {
        let mut s = format!("# flagjacobi {} {}\n", self.version, self.command);
        for (k, v) in &self.config {
            s.push_str(&format!("# {k} = {v}\n"));
        }
        s
    }
}

/// Default output directory: $FLAGJACOBI_OUT_DIR or the working directory.
pub fn out_dir(common: &CommonArgs) -> PathBuf {
    if let Some(d) = &common.out_dir {
        return d.clone();
    }
    if let Ok(d) = std::env::var("FLAGJACOBI_OUT_DIR") {
        if !d.is_empty() {
            return PathBuf::from(d);
        }
    }
    PathBuf::from(".")
}

pub fn calibration_path(common: &CommonArgs) -> PathBuf {
    common
        .calibration
        .clone()
        .unwrap_or_else(|| out_dir(common).join("calibration.json"))
}

/// A parsed tangent vector: always available as floats, exactly when every
/// component is an exact literal (integer, p/q, or a ℚ(√2) form).
pub struct ParsedVector {
    pub f: [f64; 6],
    pub exact: Option<[QSqrt2; 6]>,
}

pub fn parse_vector(src: &str) -> Result<ParsedVector, String> {
    let parts: Vec<&str> = src.split(',').map(|s| s.trim()).collect();
    if parts.len() != 6 {
        return Err(format!(
            "expected 6 comma-separated components, got {}",
            parts.len()
        ));
    }
    let mut f = [0.0f64; 6];
    let mut exact: Option<[QSqrt2; 6]> = Some(std::array::from_fn(|_| QSqrt2::zero()));
    for (i, p) in parts.iter().enumerate() {
        if let Ok(q) = p.parse::<QSqrt2>() {
            f[i] = q.to_f64();
            if let Some(e) = exact.as_mut() {
                e[i] = q;
            }
        } else if let Ok(v) = p.parse::<f64>() {
            f[i] = v;
            exact = None;
        } else {
            return Err(format!("component {} is not a number: {p:?}", i + 1));
        }
    }
    Ok(ParsedVector { f, exact })
}
