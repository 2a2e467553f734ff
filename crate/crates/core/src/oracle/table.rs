use crate::gf::{AffineSpace, Fe, Field};
use crate::mpoly::{Line, UniPoly};

use super::{LinesOracle, OracleError, PointOracle, QueryCounter};

/// Fully materialized point table, indexed in [`AffineSpace`] order.
#[derive(Debug)]
pub struct TablePoint {
    space: AffineSpace,
    degree: usize,
    values: Vec<Fe>,
    counter: QueryCounter,
}

/// Fully materialized lines table; entry `(a, b)` sits at the index of the
/// concatenated point `(a, b)` in `F_q^{2s}`.
#[derive(Debug)]
pub struct TableLines {
    dim: usize,
    field: Field,
    degree: usize,
    coeffs: Vec<Fe>,
    counter: QueryCounter,
}

impl TablePoint {
    pub fn from_values(field: Field, dim: usize, degree: usize, values: Vec<Fe>) -> Result<Self, OracleError> {
        let space = AffineSpace::new(field, dim);
        if space.size() != Some(values.len() as u64) {
            return Err(OracleError::Format(format!("expected {}^{dim} values, got {}", field.modulus(), values.len())));
        }
        Ok(Self { space, degree, values, counter: QueryCounter::new() })
    }

    pub fn values(&self) -> &[Fe] {
        &self.values
    }

    pub fn space(&self) -> AffineSpace {
        self.space
    }
}

impl TableLines {
    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }
}

fn check_budget(field: Field, dim: usize, budget: u64) -> Result<u64, OracleError> {
    AffineSpace::new(field, dim)
        .size()
        .filter(|&n| n <= budget)
        .ok_or_else(|| OracleError::DomainTooLarge { entries: format!("{}^{dim}", field.modulus()), budget })
}

/// Copies every answer of `base` into a table, if the domain fits `budget`.
pub fn materialize_point(base: &dyn PointOracle, budget: u64) -> Result<TablePoint, OracleError> {
    check_budget(base.field(), base.dim(), budget)?;
    let space = AffineSpace::new(base.field(), base.dim());
    let values = space.points().map(|x| base.answer(&x)).collect();
    Ok(TablePoint { space, degree: base.degree(), values, counter: QueryCounter::new() })
}

pub fn materialize_lines(base: &dyn LinesOracle, budget: u64) -> Result<TableLines, OracleError> {
    let s = base.dim();
    check_budget(base.field(), 2 * s, budget)?;
    let space = AffineSpace::new(base.field(), 2 * s);
    let mut coeffs = Vec::new();
    for key in space.points() {
        let ans = base.answer(&Line::from_key(&key));
        debug_assert_eq!(ans.coeffs().len(), base.degree() + 1);
        coeffs.extend_from_slice(ans.coeffs());
    }
    Ok(TableLines { dim: s, field: base.field(), degree: base.degree(), coeffs, counter: QueryCounter::new() })
}

impl PointOracle for TablePoint {
    fn field(&self) -> Field {
        self.space.field
    }
    fn dim(&self) -> usize {
        self.space.dim
    }
    fn degree(&self) -> usize {
        self.degree
    }
    fn answer(&self, x: &[Fe]) -> Fe {
        self.values[self.space.index(x) as usize]
    }
    fn counter(&self) -> &QueryCounter {
        &self.counter
    }
}

impl LinesOracle for TableLines {
    fn field(&self) -> Field {
        self.field
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn degree(&self) -> usize {
        self.degree
    }
    fn answer(&self, line: &Line) -> UniPoly {
        let idx = AffineSpace::new(self.field, 2 * self.dim).index(&line.key()) as usize;
        let w = self.degree + 1;
        UniPoly::new(self.coeffs[idx * w..(idx + 1) * w].to_vec())
    }
    fn counter(&self) -> &QueryCounter {
        &self.counter
    }
}
