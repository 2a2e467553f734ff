use std::sync::Arc;

use crate::gf::{Fe, Field};
use crate::mpoly::{Line, UniPoly};

use super::{LinesOracle, PointOracle, QueryCounter};

/// A view of a shared point oracle with its own counter, so concurrent trials
/// can each count their queries.
pub struct MeteredPoint {
    inner: Arc<dyn PointOracle>,
    counter: QueryCounter,
}

pub struct MeteredLines {
    inner: Arc<dyn LinesOracle>,
    counter: QueryCounter,
}

impl MeteredPoint {
    pub fn new(inner: Arc<dyn PointOracle>) -> Self {
        Self { inner, counter: QueryCounter::new() }
    }
}

impl MeteredLines {
    pub fn new(inner: Arc<dyn LinesOracle>) -> Self {
        Self { inner, counter: QueryCounter::new() }
    }
}

impl PointOracle for MeteredPoint {
    fn field(&self) -> Field {
        self.inner.field()
    }
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn degree(&self) -> usize {
        self.inner.degree()
    }
    fn answer(&self, x: &[Fe]) -> Fe {
        self.inner.answer(x)
    }
    fn counter(&self) -> &QueryCounter {
        &self.counter
    }
}

impl LinesOracle for MeteredLines {
    fn field(&self) -> Field {
        self.inner.field()
    }
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn degree(&self) -> usize {
        self.inner.degree()
    }
    fn answer(&self, line: &Line) -> UniPoly {
        self.inner.answer(line)
    }
    fn counter(&self) -> &QueryCounter {
        &self.counter
    }
}
