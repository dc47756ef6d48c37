use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use weber_spectra::condition::ProblemParams;
use weber_spectra::solver::SolverConfig;

/// Provenance embedded in every output file.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub params: Option<ProblemParams<f64>>,
    pub config: SolverConfig,
    pub tool_version: String,
    /// Set when results are restricted to the finite search window; roots
    /// outside it are not reported.
    pub window_caveat: bool,
}

impl RunManifest {
    pub fn new(command: &str, params: Option<ProblemParams<f64>>, config: &SolverConfig, window_caveat: bool) -> Self {
        Self {
            command: command.to_string(),
            params,
            config: *config,
            tool_version: weber_spectra::VERSION.to_string(),
            window_caveat,
        }
    }
}

/// Full-precision decimal: 17 significant digits round-trip any `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV with a leading `# {manifest}` line and a header row.
pub fn csv_bytes(manifest: &RunManifest, header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    writeln!(out, "# {}", serde_json::to_string(manifest)?)?;
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(header)?;
        for row in rows {
            w.write_record(row)?;
        }
        w.flush()?;
    }
    Ok(out)
}

/// Pretty JSON object with the manifest under `"manifest"`.
pub fn json_bytes<T: Serialize>(manifest: &RunManifest, body: &T) -> Result<Vec<u8>> {
    let mut value = serde_json::to_value(body)?;
    if let serde_json::Value::Object(map) = &mut value {
        map.insert("manifest".into(), serde_json::to_value(manifest)?);
    }
    let mut out = serde_json::to_vec_pretty(&value)?;
    out.push(b'\n');
    Ok(out)
}

pub fn emit(bytes: &[u8], out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}
