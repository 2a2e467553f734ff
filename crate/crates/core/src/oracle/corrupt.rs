use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::gf::{Fe, Field};
use crate::keyed::{keyed_hash, unit_interval};
use crate::mpoly::{Line, UniPoly};

use super::{LinesOracle, OracleError, PointOracle, QueryCounter, TablePoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorruptionMode {
    Point,
    Lines,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorruptionSpec {
    pub fraction: f64,
    pub key: u64,
    pub mode: CorruptionMode,
}

impl CorruptionSpec {
    pub fn new(fraction: f64, key: u64, mode: CorruptionMode) -> Result<Self, OracleError> {
        if !(0.0..=1.0).contains(&fraction) {
            return Err(OracleError::BadFraction(fraction));
        }
        Ok(Self { fraction, key, mode })
    }
}

const POINT_TAG: u64 = 0x0070_6f69_6e74;
const LINES_TAG: u64 = 0x006c_696e_6573;

fn coord_words(x: &[Fe]) -> impl Iterator<Item = u64> + '_ {
    x.iter().map(|v| v.value() as u64)
}

fn nonzero_offset(field: Field, h: u64) -> Fe {
    field.elem(1 + h % (field.order() - 1))
}

/// Point oracle that adds a nonzero keyed offset on a keyed Bernoulli(δ)
/// subset of its inputs.
pub struct CorruptedPoint {
    base: Arc<dyn PointOracle>,
    fraction: f64,
    key: u64,
    counter: QueryCounter,
}

pub struct CorruptedLines {
    base: Arc<dyn LinesOracle>,
    fraction: f64,
    key: u64,
    counter: QueryCounter,
}

impl CorruptedPoint {
    /// Whether `x` is in the corrupted set.
    pub fn is_corrupted(&self, x: &[Fe]) -> bool {
        let h = keyed_hash(self.key ^ POINT_TAG, coord_words(x));
        unit_interval(h) < self.fraction
    }
}

impl CorruptedLines {
    pub fn is_corrupted(&self, line: &Line) -> bool {
        let h = keyed_hash(self.key ^ LINES_TAG, coord_words(&line.key()));
        unit_interval(h) < self.fraction
    }
}

pub fn corrupt_point(base: Arc<dyn PointOracle>, fraction: f64, key: u64) -> Result<CorruptedPoint, OracleError> {
    CorruptionSpec::new(fraction, key, CorruptionMode::Point)?;
    Ok(CorruptedPoint { base, fraction, key, counter: QueryCounter::new() })
}

pub fn corrupt_lines(base: Arc<dyn LinesOracle>, fraction: f64, key: u64) -> Result<CorruptedLines, OracleError> {
    CorruptionSpec::new(fraction, key, CorruptionMode::Lines)?;
    Ok(CorruptedLines { base, fraction, key, counter: QueryCounter::new() })
}

/// Applies `spec` to a point/lines pair, leaving the untargeted half as is.
pub fn corrupt_pair(
    point: Arc<dyn PointOracle>,
    lines: Arc<dyn LinesOracle>,
    spec: &CorruptionSpec,
) -> Result<(Arc<dyn PointOracle>, Arc<dyn LinesOracle>), OracleError> {
    let spec = CorruptionSpec::new(spec.fraction, spec.key, spec.mode)?;
    let point: Arc<dyn PointOracle> = match spec.mode {
        CorruptionMode::Point | CorruptionMode::Both => Arc::new(corrupt_point(point, spec.fraction, spec.key)?),
        CorruptionMode::Lines => point,
    };
    let lines: Arc<dyn LinesOracle> = match spec.mode {
        CorruptionMode::Lines | CorruptionMode::Both => Arc::new(corrupt_lines(lines, spec.fraction, spec.key)?),
        CorruptionMode::Point => lines,
    };
    Ok((point, lines))
}

/// Corrupts exactly `round(δ·N)` entries of a materialized table, chosen by
/// keyed hash rank.
pub fn corrupt_exact(table: &TablePoint, fraction: f64, key: u64) -> Result<TablePoint, OracleError> {
    CorruptionSpec::new(fraction, key, CorruptionMode::Point)?;
    let field = table.field();
    let n = table.values().len();
    let count = (fraction * n as f64).round() as usize;
    let mut order: Vec<(u64, usize)> = (0..n).map(|i| (keyed_hash(key ^ POINT_TAG, [i as u64]), i)).collect();
    order.sort_unstable();
    let mut values = table.values().to_vec();
    for &(h, i) in &order[..count] {
        values[i] += nonzero_offset(field, mix(h));
    }
    TablePoint::from_values(field, table.dim(), table.degree(), values)
}

fn mix(h: u64) -> u64 {
    keyed_hash(h, [0])
}

impl PointOracle for CorruptedPoint {
    fn field(&self) -> Field {
        self.base.field()
    }
    fn dim(&self) -> usize {
        self.base.dim()
    }
    fn degree(&self) -> usize {
        self.base.degree()
    }
    fn answer(&self, x: &[Fe]) -> Fe {
        let h = keyed_hash(self.key ^ POINT_TAG, coord_words(x));
        let v = self.base.answer(x);
        if unit_interval(h) < self.fraction {
            v + nonzero_offset(self.field(), mix(h))
        } else {
            v
        }
    }
    fn counter(&self) -> &QueryCounter {
        &self.counter
    }
}

impl LinesOracle for CorruptedLines {
    fn field(&self) -> Field {
        self.base.field()
    }
    fn dim(&self) -> usize {
        self.base.dim()
    }
    fn degree(&self) -> usize {
        self.base.degree()
    }
    fn answer(&self, line: &Line) -> UniPoly {
        let h = keyed_hash(self.key ^ LINES_TAG, coord_words(&line.key()));
        let ans = self.base.answer(line);
        if unit_interval(h) >= self.fraction {
            return ans;
        }
        let field = self.field();
        let mut coeffs = ans.into_coeffs();
        let mut changed = false;
        for (j, c) in coeffs.iter_mut().enumerate() {
            let off = field.elem(keyed_hash(h, [j as u64]) % field.order());
            changed |= !off.is_zero();
            *c += off;
        }
        if !changed {
            coeffs[0] += field.one();
        }
        UniPoly::new(coeffs)
    }
    fn counter(&self) -> &QueryCounter {
        &self.counter
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::AffineSpace;
    use crate::mpoly::MultiPoly;
    use crate::oracle::{honest_oracles, materialize_point};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn base(q: u32, m: usize) -> (Arc<dyn PointOracle>, Arc<dyn LinesOracle>) {
        let f = Field::new(q).unwrap();
        let p = MultiPoly::random(f, m, 2, &mut ChaCha8Rng::seed_from_u64(3));
        let (pt, l) = honest_oracles(&p, 2).unwrap();
        (Arc::new(pt), Arc::new(l))
    }

    #[test]
    fn extremes() {
        let (pt, l) = base(7, 2);
        let space = AffineSpace::new(pt.field(), 2);
        let c0 = corrupt_point(pt.clone(), 0.0, 9).unwrap();
        let c1 = corrupt_point(pt.clone(), 1.0, 9).unwrap();
        for x in space.points() {
            assert_eq!(c0.answer(&x), pt.answer(&x));
            assert_ne!(c1.answer(&x), pt.answer(&x));
        }
        let l1 = corrupt_lines(l.clone(), 1.0, 9).unwrap();
        for key in AffineSpace::new(pt.field(), 4).points().take(500) {
            let line = Line::from_key(&key);
            assert_ne!(l1.answer(&line), l.answer(&line));
        }
        assert!(corrupt_point(pt, 1.5, 0).is_err());
    }

    #[test]
    fn lazy_fraction_is_binomial() {
        let (pt, _) = base(101, 2);
        let c = corrupt_point(pt.clone(), 0.05, 77).unwrap();
        let n = 101.0 * 101.0;
        let bad = AffineSpace::new(pt.field(), 2).points().filter(|x| c.answer(x) != pt.answer(x)).count() as f64;
        let sigma = (n * 0.05 * 0.95_f64).sqrt();
        assert!((bad - 0.05 * n).abs() < 4.0 * sigma, "{bad}");
    }

    #[test]
    fn deterministic_under_key() {
        let (pt, _) = base(11, 2);
        let a = corrupt_point(pt.clone(), 0.3, 5).unwrap();
        let b = corrupt_point(pt.clone(), 0.3, 5).unwrap();
        let c = corrupt_point(pt.clone(), 0.3, 6).unwrap();
        let space = AffineSpace::new(pt.field(), 2);
        assert!(space.points().all(|x| a.answer(&x) == b.answer(&x)));
        assert!(space.points().any(|x| a.answer(&x) != c.answer(&x)));
        assert!(space.points().all(|x| a.is_corrupted(&x) == (a.answer(&x) != pt.answer(&x))));
    }

    #[test]
    fn exact_fraction() {
        let (pt, _) = base(7, 2);
        let t = materialize_point(pt.as_ref(), 1000).unwrap();
        let c = corrupt_exact(&t, 0.2, 1).unwrap();
        let diff = t.values().iter().zip(c.values()).filter(|(a, b)| a != b).count();
        assert_eq!(diff, 10);
    }

    #[test]
    fn pair_modes() {
        let (pt, l) = base(7, 1);
        let spec = CorruptionSpec::new(1.0, 2, CorruptionMode::Lines).unwrap();
        let (p2, l2) = corrupt_pair(pt.clone(), l.clone(), &spec).unwrap();
        let x = vec![pt.field().elem(3)];
        assert_eq!(p2.answer(&x), pt.answer(&x));
        let line = Line::new(x.clone(), x).unwrap();
        assert_ne!(l2.answer(&line), l.answer(&line));
    }
}
