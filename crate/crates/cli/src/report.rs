//! The versioned report every command produces. The text output is a
//! rendering of the same structure as the JSON output.

use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "tripoint-report/1";

/// Where a number comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Exact computation over the rationals.
    Exact,
    /// Strict-majority agreement of censuses over several primes.
    CensusConsensus,
    /// A census over a single finite field.
    Census,
    /// Integer or rational arithmetic on given inputs.
    Arithmetic,
}

impl Provenance {
    fn label(self) -> &'static str {
        match self {
            Provenance::Exact => "exact",
            Provenance::CensusConsensus => "census-consensus",
            Provenance::Census => "census",
            Provenance::Arithmetic => "arithmetic",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub name: String,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    pub provenance: Provenance,
    /// `None` when nothing was expected.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub met: Option<bool>,
}

impl Claim {
    pub fn info(name: impl Into<String>, value: impl ToString, provenance: Provenance) -> Self {
        Self { name: name.into(), value: value.to_string(), expected: None, provenance, met: None }
    }

    /// A claim compared with an expected value by equality.
    pub fn expect<T: ToString + PartialEq>(name: impl Into<String>, value: T, expected: T, provenance: Provenance) -> Self {
        let met = value == expected;
        Self { name: name.into(), value: value.to_string(), expected: Some(expected.to_string()), provenance, met: Some(met) }
    }

    /// A claim with an expectation that is checked by the caller.
    pub fn check(
        name: impl Into<String>,
        value: impl ToString,
        expected: impl ToString,
        met: bool,
        provenance: Provenance,
    ) -> Self {
        Self { name: name.into(), value: value.to_string(), expected: Some(expected.to_string()), provenance, met: Some(met) }
    }

    pub fn optional<T: ToString + PartialEq>(
        name: impl Into<String>,
        value: T,
        expected: Option<T>,
        provenance: Provenance,
    ) -> Self {
        match expected {
            Some(e) => Self::expect(name, value, e, provenance),
            None => Self::info(name, value, provenance),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Mismatch,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    /// SHA-256 of the input files, or of the command line when there are
    /// none.
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub primes: Vec<u64>,
    pub summary: Vec<String>,
    pub claims: Vec<Claim>,
    pub details: serde_json::Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: Vec<String>, inputs: &[Vec<u8>]) -> Self {
        let mut hasher = Sha256::new();
        if inputs.is_empty() {
            hasher.update(command.join("\n").as_bytes());
        }
        for input in inputs {
            hasher.update(input);
        }
        Self {
            schema: SCHEMA,
            version: env!("CARGO_PKG_VERSION"),
            command,
            input_digest: format!("sha256:{:x}", hasher.finalize()),
            seed: None,
            primes: Vec::new(),
            summary: Vec::new(),
            claims: Vec::new(),
            details: serde_json::Value::Null,
            status: Status::Verified,
            timing_ms: None,
        }
    }

    pub fn push(&mut self, claim: Claim) {
        self.claims.push(claim);
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.summary.push(text.into());
    }

    /// Sets the status from the claims: a single unmet expectation is a
    /// mismatch.
    pub fn finish(&mut self) {
        let failed = self.claims.iter().any(|c| c.met == Some(false));
        self.status = if failed { Status::Mismatch } else { Status::Verified };
    }

    pub fn exit_status(&self) -> i32 {
        match self.status {
            Status::Verified => 0,
            Status::Mismatch => 1,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "tripoint {} ({})", self.version, self.schema);
        let _ = writeln!(out, "command: {}", self.command.join(" "));
        let _ = writeln!(out, "input: {}", self.input_digest);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        if !self.primes.is_empty() {
            let primes: Vec<String> = self.primes.iter().map(u64::to_string).collect();
            let _ = writeln!(out, "primes: {}", primes.join(","));
        }
        for line in &self.summary {
            let _ = writeln!(out, "{line}");
        }
        let width = self.claims.iter().map(|c| c.provenance.label().len()).max().unwrap_or(0) + 2;
        for c in &self.claims {
            let tag = format!("[{}]", c.provenance.label());
            let _ = write!(out, "  {tag:<width$} {}: {}", c.name, c.value);
            if let Some(e) = &c.expected {
                let _ = write!(out, " (expected {e})");
            }
            match c.met {
                Some(true) => out.push_str(" ok"),
                Some(false) => out.push_str(" MISMATCH"),
                None => {}
            }
            out.push('\n');
        }
        let _ = writeln!(out, "status: {}", match self.status {
            Status::Verified => "verified",
            Status::Mismatch => "mismatch",
        });
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "time: {ms} ms");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report() -> Report {
        let mut r = Report::new(vec!["spectrum".into(), "--exponents".into(), "2,2".into()], &[]);
        r.line("length 1");
        r.push(Claim::info("size", 1, Provenance::Arithmetic));
        r
    }

    #[test]
    fn status_follows_the_evaluated_claims() {
        let mut r = report();
        r.finish();
        assert_eq!((r.status, r.exit_status()), (Status::Verified, 0));
        r.push(Claim::expect("length", 1, 1, Provenance::Arithmetic));
        r.finish();
        assert_eq!(r.exit_status(), 0);
        r.push(Claim::optional("length", 2, Some(1), Provenance::Arithmetic));
        r.finish();
        assert_eq!((r.status, r.exit_status()), (Status::Mismatch, 1));
    }

    #[test]
    fn digest_covers_inputs_or_the_command() {
        let a = Report::new(vec!["x".into()], &[b"ambient".to_vec()]);
        let b = Report::new(vec!["y".into()], &[b"ambient".to_vec()]);
        assert_eq!(a.input_digest, b.input_digest);
        let c = Report::new(vec!["x".into()], &[]);
        let d = Report::new(vec!["y".into()], &[]);
        assert_ne!(c.input_digest, d.input_digest);
        // sha256 of the empty string
        let empty = Report::new(Vec::new(), &[]);
        assert_eq!(empty.input_digest, "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn text_and_json_render_the_same_claims() {
        let mut r = report();
        r.push(Claim::check("points", 3, "at least 4", false, Provenance::Census));
        r.finish();
        let text = r.to_text();
        assert!(text.contains("[arithmetic] size: 1\n"), "{text}");
        assert!(text.contains("[census]     points: 3 (expected at least 4) MISMATCH"), "{text}");
        assert!(text.ends_with("status: mismatch\n"));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["claims"][1]["provenance"], "census");
        assert_eq!(v["claims"][1]["met"], false);
        assert!(v["claims"][0].get("met").is_none());
        assert_eq!(v["status"], "mismatch");
        assert!(v.get("timing_ms").is_none());
    }
}
