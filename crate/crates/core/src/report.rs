//! Shot reports and their wire formats.
//!
//! The JSON document is byte-stable: map keys are sorted, reals carry 12
//! significant digits, and nothing depends on platform formatting.

use std::collections::BTreeMap;

/// Outcome histogram of a run plus provenance: the seed that produced it,
/// the exact distribution when one was computed (noiseless runs only),
/// and the digest of the circuit's canonical text.
#[derive(Clone, Debug, PartialEq)]
pub struct CountsReport {
    pub shots: u64,
    pub seed: u64,
    pub counts: BTreeMap<String, u64>,
    pub exact_probabilities: Option<BTreeMap<String, f64>>,
    pub circuit_digest: String,
}

impl CountsReport {
    pub fn total_counts(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Observed frequency of an outcome.
    pub fn frequency(&self, outcome: &str) -> f64 {
        *self.counts.get(outcome).unwrap_or(&0) as f64 / self.shots as f64
    }

    pub fn exact_probability(&self, outcome: &str) -> Option<f64> {
        self.exact_probabilities
            .as_ref()
            .map(|m| *m.get(outcome).unwrap_or(&0.0))
    }

    /// `{"shots":..,"seed":..,"counts":{..},"exact_probabilities":{..}|null,"circuit_digest":".."}`
    pub fn to_json(&self) -> String {
        let mut out = String::with_capacity(128);
        out.push_str("{\"shots\":");
        out.push_str(&self.shots.to_string());
        out.push_str(",\"seed\":");
        out.push_str(&self.seed.to_string());
        out.push_str(",\"counts\":{");
        let mut first = true;
        for (key, count) in &self.counts {
            if !first {
                out.push(',');
            }
            first = false;
            out.push('"');
            out.push_str(key);
            out.push_str("\":");
            out.push_str(&count.to_string());
        }
        out.push_str("},\"exact_probabilities\":");
        match &self.exact_probabilities {
            None => out.push_str("null"),
            Some(map) => {
                out.push('{');
                let mut first = true;
                for (key, p) in map {
                    if !first {
                        out.push(',');
                    }
                    first = false;
                    out.push('"');
                    out.push_str(key);
                    out.push_str("\":");
                    out.push_str(&format_significant(*p));
                }
                out.push('}');
            }
        }
        out.push_str(",\"circuit_digest\":\"");
        out.push_str(&self.circuit_digest);
        out.push_str("\"}");
        out
    }

    /// `bitstring,count,probability` rows (observed frequency), sorted by
    /// bitstring, with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bitstring,count,probability\n");
        for (key, count) in &self.counts {
            out.push_str(key);
            out.push(',');
            out.push_str(&count.to_string());
            out.push(',');
            out.push_str(&format_significant(*count as f64 / self.shots as f64));
            out.push('\n');
        }
        out
    }
}

/// Formats a real with 12 significant digits. Fixed-point notation inside
/// a sane exponent range, scientific outside it.
pub fn format_significant(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:e}");
    let exp: i32 = sci[sci.find('e').expect("exponent marker") + 1..]
        .parse()
        .expect("exponent digits");
    if (-4..12).contains(&exp) {
        format!("{x:.*}", (11 - exp).max(0) as usize)
    } else {
        format!("{x:.11e}")
    }
}
