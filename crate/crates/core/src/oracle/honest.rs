use std::sync::Arc;

use crate::gf::{Fe, Field};
use crate::mpoly::{HornerPlan, Line, MultiPoly, UniPoly};

use super::{LinesOracle, OracleError, PointOracle, QueryCounter};

/// Evaluation table of a polynomial, computed on demand.
#[derive(Debug)]
pub struct HonestPoint {
    poly: Arc<MultiPoly>,
    plan: HornerPlan,
    degree: usize,
    counter: QueryCounter,
}

/// The `d`-th lines table of a polynomial, computed on demand by formal
/// composition along each queried line.
#[derive(Debug)]
pub struct HonestLines {
    poly: Arc<MultiPoly>,
    plan: HornerPlan,
    degree: usize,
    counter: QueryCounter,
}

impl HonestPoint {
    pub fn new(poly: Arc<MultiPoly>, degree: usize) -> Result<Self, OracleError> {
        check_degree(&poly, degree)?;
        Ok(Self { plan: poly.plan(), poly, degree, counter: QueryCounter::new() })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }
}

impl HonestLines {
    pub fn new(poly: Arc<MultiPoly>, degree: usize) -> Result<Self, OracleError> {
        check_degree(&poly, degree)?;
        Ok(Self { plan: poly.plan(), poly, degree, counter: QueryCounter::new() })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }
}

fn check_degree(poly: &MultiPoly, d: usize) -> Result<(), OracleError> {
    if poly.degree() > d {
        return Err(OracleError::DegreeTooHigh { degree: poly.degree(), d });
    }
    Ok(())
}

/// Point oracle and `d`-th lines table for `poly`; both are lazy.
pub fn honest_oracles(poly: &MultiPoly, d: usize) -> Result<(HonestPoint, HonestLines), OracleError> {
    let poly = Arc::new(poly.clone());
    Ok((HonestPoint::new(poly.clone(), d)?, HonestLines::new(poly, d)?))
}

impl PointOracle for HonestPoint {
    fn field(&self) -> Field {
        self.poly.field()
    }

    fn dim(&self) -> usize {
        self.poly.nvars()
    }

    fn degree(&self) -> usize {
        self.degree
    }

    fn answer(&self, x: &[Fe]) -> Fe {
        debug_assert_eq!(x.len(), self.poly.nvars());
        self.plan.eval(x)
    }

    fn counter(&self) -> &QueryCounter {
        &self.counter
    }
}

impl LinesOracle for HonestLines {
    fn field(&self) -> Field {
        self.poly.field()
    }

    fn dim(&self) -> usize {
        self.poly.nvars()
    }

    fn degree(&self) -> usize {
        self.degree
    }

    fn answer(&self, line: &Line) -> UniPoly {
        debug_assert_eq!(line.dim(), self.poly.nvars());
        self.plan.restrict(line, self.degree)
    }

    fn counter(&self) -> &QueryCounter {
        &self.counter
    }
}
