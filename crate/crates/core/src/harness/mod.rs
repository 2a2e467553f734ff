//! Experiment orchestration: configs, parallel trials, rate estimates and
//! reports.

pub mod budget;
pub mod experiment;
pub mod preset;
pub mod report;
pub mod runner;
pub mod stats;

pub use budget::{ldt_bits, pcp_bits, zerotest_bits};
pub use experiment::{
    build_variety, load_graph, pcp_setup, run_experiment, zerotest_polynomial, ExperimentConfig, LdtConfig, LdtKind, Mode, PcpConfig, ZeroConfig,
    DEFAULT_BUDGET,
};
pub use preset::{preset, preset_description, PRESETS};
pub use report::{csv_row, write_csv, FailureStats, Report, CSV_HEADER};
pub use runner::{run_trials, Draw, Tally, TrialOutcome};
pub use stats::{wilson, RateEstimate, Z95, Z99};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{what} has {size} elements, over the enumeration budget {budget}; use sampled mode")]
    Infeasible { size: String, budget: u64, what: String },
    #[error(transparent)]
    Variety(#[from] crate::variety::VarietyError),
    #[error(transparent)]
    ZeroTest(#[from] crate::zerotest::ZeroTestError),
    #[error(transparent)]
    Pcp(#[from] crate::pcp::PcpError),
    #[error(transparent)]
    Oracle(#[from] crate::oracle::OracleError),
    #[error(transparent)]
    Ldt(#[from] crate::ldt::LdtError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("assertion failed: {0}")]
    Assertion(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl HarnessError {
    /// Process exit status: 1 for a failed assertion, 2 for anything the
    /// caller could fix in the configuration.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Assertion(_) | HarnessError::Internal(_) => 1,
            _ => 2,
        }
    }
}
