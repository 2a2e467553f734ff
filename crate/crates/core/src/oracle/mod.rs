//! Query interfaces for point tables and lines tables.
//!
//! Every oracle answers through [`PointOracle::answer`] / [`LinesOracle::answer`]
//! (uncounted) and [`PointOracle::query`] / [`LinesOracle::query`] (counted).
//! Verifiers only ever call `query`. Wrappers such as corruption delegate to
//! the uncounted path of their base, so a query is charged exactly once, to
//! the oracle the verifier was handed.

mod corrupt;
mod dump;
mod honest;
mod metered;
mod table;

use std::sync::atomic::{AtomicU64, Ordering};

pub use corrupt::{corrupt_exact, corrupt_lines, corrupt_pair, corrupt_point, CorruptedLines, CorruptedPoint, CorruptionMode, CorruptionSpec};
pub use dump::{read_point_table, write_lines_table, write_point_table};
pub use honest::{honest_oracles, HonestLines, HonestPoint};
pub use metered::{MeteredLines, MeteredPoint};
pub use table::{materialize_lines, materialize_point, TableLines, TablePoint};

use crate::gf::{Fe, Field};
use crate::mpoly::{Line, UniPoly};

#[derive(Debug, Default)]
pub struct QueryCounter(AtomicU64);

impl QueryCounter {
    pub fn new() -> Self {
        Self(AtomicU64::new(0))
    }

    #[inline]
    pub fn tick(&self) {
        self.0.fetch_add(1, Ordering::Relaxed);
    }

    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.0.store(0, Ordering::Relaxed);
    }
}

/// Oracle access to a function `F_q^s → F_q`.
pub trait PointOracle: Send + Sync {
    fn field(&self) -> Field;
    /// Domain dimension `s`.
    fn dim(&self) -> usize;
    /// Degree the table claims to have.
    fn degree(&self) -> usize;
    /// The table entry at `x`, without touching the counter.
    fn answer(&self, x: &[Fe]) -> Fe;
    fn counter(&self) -> &QueryCounter;

    fn query(&self, x: &[Fe]) -> Fe {
        self.counter().tick();
        self.answer(x)
    }

    fn queries(&self) -> u64 {
        self.counter().get()
    }
}

/// Oracle access to a `d`-th lines table `F_q^{2s} → F_q^{d+1}`.
pub trait LinesOracle: Send + Sync {
    fn field(&self) -> Field;
    /// Dimension `s` of the underlying point domain.
    fn dim(&self) -> usize;
    /// Degree parameter `d`; every answer has `d + 1` coefficients.
    fn degree(&self) -> usize;
    fn answer(&self, line: &Line) -> UniPoly;
    fn counter(&self) -> &QueryCounter;

    fn query(&self, line: &Line) -> UniPoly {
        self.counter().tick();
        self.answer(line)
    }

    fn queries(&self) -> u64 {
        self.counter().get()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("polynomial degree {degree} exceeds the oracle degree {d}")]
    DegreeTooHigh { degree: usize, d: usize },
    #[error("table of {entries} entries exceeds the budget {budget}; keep the oracle lazy")]
    DomainTooLarge { entries: String, budget: u64 },
    #[error("corruption fraction {0} is outside [0, 1]")]
    BadFraction(f64),
    #[error("modulus {0} does not fit the 16-bit dump format")]
    ModulusTooLarge(u32),
    #[error("malformed table dump: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
