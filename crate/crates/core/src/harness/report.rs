use serde::{Deserialize, Serialize};

use crate::pcp::OracleSize;

use super::runner::Tally;
use super::stats::RateEstimate;
use super::HarnessError;

/// Wrong-value statistics for local correction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureStats {
    pub count: u64,
    pub rate: f64,
    pub ci99: [f64; 2],
    /// `2√δ + d/(q−1)`.
    pub bound: f64,
}

/// One experiment's outcome. `rate` is the rejection rate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub experiment: String,
    pub config: serde_json::Value,
    pub trials: u64,
    pub accepts: u64,
    pub rejects: u64,
    pub rate: f64,
    pub ci95: [f64; 2],
    pub ci99: [f64; 2],
    pub queries_per_trial: u64,
    pub randomness_bits_per_trial: u64,
    pub seed: u64,
    pub elapsed_ms: u64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failures: Option<FailureStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proof_size: Option<Vec<OracleSize>>,
}

impl Report {
    /// Fails if trials disagreed on their query count.
    pub fn from_tally(experiment: &str, t: &Tally, bits: u64, seed: u64) -> Result<Self, HarnessError> {
        if t.min_queries != t.max_queries {
            return Err(HarnessError::Internal(format!(
                "query count varied between {} and {}",
                t.min_queries, t.max_queries
            )));
        }
        let est = RateEstimate::new(t.rejects, t.trials);
        Ok(Report {
            experiment: experiment.to_string(),
            config: serde_json::Value::Null,
            trials: t.trials,
            accepts: t.trials - t.rejects,
            rejects: t.rejects,
            rate: est.rate,
            ci95: est.ci95,
            ci99: est.ci99,
            queries_per_trial: t.min_queries,
            randomness_bits_per_trial: bits,
            seed,
            elapsed_ms: 0,
            pass: false,
            failures: None,
            proof_size: None,
        })
    }
}

pub const CSV_HEADER: &str = "experiment,label,trials,accepts,rejects,rate,ci95_lo,ci95_hi,ci99_lo,ci99_hi,queries,bits,pass";

/// One CSV row per report, labelled by the caller (e.g. the swept value).
pub fn csv_row(label: &str, r: &Report) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.experiment,
        label,
        r.trials,
        r.accepts,
        r.rejects,
        r.rate,
        r.ci95[0],
        r.ci95[1],
        r.ci99[0],
        r.ci99[1],
        r.queries_per_trial,
        r.randomness_bits_per_trial,
        r.pass
    )
}

pub fn write_csv<W: std::io::Write>(mut w: W, rows: &[(String, Report)]) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for (label, r) in rows {
        writeln!(w, "{}", csv_row(label, r))?;
    }
    Ok(())
}
