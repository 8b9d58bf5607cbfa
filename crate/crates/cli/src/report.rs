use std::fmt;
use std::path::Path;
use std::time::Duration;

use probmem::circuit::CircuitStats;
use probmem::probword::Probability;
use sha2::{Digest, Sha256};

/// What a command prints: everything except the timing line is a pure
/// function of the inputs and flags.
#[derive(Debug, Default)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub result: Option<Probability>,
    pub stats: Option<CircuitStats>,
    pub notes: Vec<(String, String)>,
    pub timings: Vec<(String, Duration)>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport { command: command.to_string(), ..Default::default() }
    }

    /// Records an input file with the SHA-256 of its bytes.
    pub fn input(&mut self, path: &Path, bytes: &[u8]) {
        self.inputs.push((path.display().to_string(), hex::encode(Sha256::digest(bytes))));
    }

    pub fn note(&mut self, key: &str, value: impl fmt::Display) {
        self.notes.push((key.to_string(), value.to_string()));
    }

    pub fn time(&mut self, phase: &str, d: Duration) {
        self.timings.push((phase.to_string(), d));
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command: {}", self.command)?;
        for (path, digest) in &self.inputs {
            writeln!(f, "input: {path} sha256:{digest}")?;
        }
        if let Some(p) = &self.result {
            writeln!(f, "result: {p}")?;
            writeln!(f, "decimal: {} (approximate)", p.to_decimal(12))?;
        }
        if let Some(s) = &self.stats {
            writeln!(
                f,
                "gates: input={} union={} product={} not={} wires={} size={}",
                s.inputs,
                s.unions,
                s.products,
                s.complements,
                s.wires,
                s.size()
            )?;
        }
        for (k, v) in &self.notes {
            writeln!(f, "{k}: {v}")?;
        }
        if !self.timings.is_empty() {
            let parts: Vec<String> =
                self.timings.iter().map(|(k, d)| format!("{k}={:.3}ms", d.as_secs_f64() * 1e3)).collect();
            writeln!(f, "time: {}", parts.join(" "))?;
        }
        Ok(())
    }
}
