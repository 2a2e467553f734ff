use std::fmt;

use crate::gf::{Fe, Field};

use super::PolyError;

/// Univariate polynomial `c0 + c1 t + … + cd t^d` with a fixed coefficient
/// count `d + 1`; trailing zeros are kept.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Fe>,
}

impl UniPoly {
    /// Panics if `coeffs` is empty.
    pub fn new(coeffs: Vec<Fe>) -> Self {
        assert!(!coeffs.is_empty(), "a univariate polynomial needs at least one coefficient");
        Self { coeffs }
    }

    pub fn zero(field: Field, d: usize) -> Self {
        Self { coeffs: field.zeros(d + 1) }
    }

    pub fn from_u64(field: Field, coeffs: &[u64]) -> Self {
        Self::new(coeffs.iter().map(|&c| field.elem(c)).collect())
    }

    pub fn field(&self) -> Field {
        self.coeffs[0].field()
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Fe> {
        self.coeffs
    }

    /// Declared degree bound `d` (coefficient count minus one).
    pub fn len_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Actual degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(&self, t: Fe) -> Fe {
        let mut acc = t.field().zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn constant_term(&self) -> Fe {
        self.coeffs[0]
    }

    /// Pads with zeros or truncates to exactly `d + 1` coefficients.
    pub fn resized(mut self, d: usize) -> Self {
        let zero = self.field().zero();
        self.coeffs.resize(d + 1, zero);
        self
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = self.field().zero();
        let coeffs = (0..n)
            .map(|i| *self.coeffs.get(i).unwrap_or(&zero) + *other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        UniPoly { coeffs }
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ => {
                    if c.value() != 1 {
                        write!(f, "{c}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Lagrange interpolation through `points` at degree `d`.
///
/// Uses the first `d + 1` points and checks that any further points lie on
/// the result.
pub fn interpolate(points: &[(Fe, Fe)], d: usize) -> Result<UniPoly, PolyError> {
    let Some(&(x0, _)) = points.first() else {
        return Err(PolyError::InsufficientPoints { needed: d + 1, found: 0 });
    };
    let field = x0.field();
    if d as u64 >= field.order() {
        return Err(PolyError::DegreeExceedsField { degree: d, q: field.modulus() });
    }
    let mut seen = std::collections::HashSet::new();
    for (x, _) in points {
        if !seen.insert(*x) {
            return Err(PolyError::DuplicateAbscissa(x.value()));
        }
    }
    if points.len() < d + 1 {
        return Err(PolyError::InsufficientPoints { needed: d + 1, found: points.len() });
    }
    let used = &points[..d + 1];
    let mut result = field.zeros(d + 1);
    for (i, &(xi, yi)) in used.iter().enumerate() {
        // basis polynomial prod_{j != i} (t - xj) / (xi - xj)
        let mut basis = vec![field.one()];
        let mut denom = field.one();
        for (j, &(xj, _)) in used.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = field.zeros(basis.len() + 1);
            for (k, &b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        let scale = yi * denom.inv().expect("distinct abscissae");
        for (r, b) in result.iter_mut().zip(&basis) {
            *r += scale * *b;
        }
    }
    let poly = UniPoly::new(result);
    for &(x, y) in &points[d + 1..] {
        if poly.eval(x) != y {
            return Err(PolyError::InconsistentPoints);
        }
    }
    Ok(poly)
}
