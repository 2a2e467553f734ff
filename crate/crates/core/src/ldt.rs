//! Point-vs-line low-degree test and local correction.
//!
//! Both are pure functions of the oracles and explicitly supplied randomness,
//! and each makes exactly two queries.

use crate::gf::Fe;
use crate::mpoly::Line;
use crate::oracle::{LinesOracle, PointOracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Verdict {
    Accept,
    Reject,
}

impl Verdict {
    pub fn is_accept(self) -> bool {
        self == Verdict::Accept
    }

    pub fn from_bool(accept: bool) -> Self {
        if accept {
            Verdict::Accept
        } else {
            Verdict::Reject
        }
    }
}

/// Outcome of local correction: the recovered value, or a rejection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Correction {
    Value(Fe),
    Reject,
}

impl Correction {
    pub fn value(self) -> Option<Fe> {
        match self {
            Correction::Value(v) => Some(v),
            Correction::Reject => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LdtError {
    #[error("the line parameter t must be nonzero")]
    ZeroT,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("lines table has degree {found}, the test expects {expected}")]
    DegreeMismatch { expected: usize, found: usize },
}

fn check(d: usize, f: &dyn PointOracle, flines: &dyn LinesOracle, a: &[Fe], b: &[Fe], t: Fe) -> Result<(), LdtError> {
    if t.is_zero() {
        return Err(LdtError::ZeroT);
    }
    let s = f.dim();
    for found in [flines.dim(), a.len(), b.len()] {
        if found != s {
            return Err(LdtError::DimensionMismatch { expected: s, found });
        }
    }
    if flines.degree() != d {
        return Err(LdtError::DegreeMismatch { expected: d, found: flines.degree() });
    }
    Ok(())
}

/// Accepts iff `f′[(a, b)](t) = f[a + t·b]`.
pub fn ldt_check(
    d: usize,
    f: &dyn PointOracle,
    flines: &dyn LinesOracle,
    a: &[Fe],
    b: &[Fe],
    t: Fe,
) -> Result<Verdict, LdtError> {
    check(d, f, flines, a, b, t)?;
    let line = Line::new(a.to_vec(), b.to_vec()).expect("dimensions checked");
    let entry = flines.query(&line);
    let value = f.query(&line.at(t));
    Ok(Verdict::from_bool(entry.eval(t) == value))
}

/// Reads `f(α)` off the line through `α` with slope `b`, after checking that
/// line against `f` at `α + t·b`.
pub fn local_correct(
    d: usize,
    f: &dyn PointOracle,
    flines: &dyn LinesOracle,
    alpha: &[Fe],
    b: &[Fe],
    t: Fe,
) -> Result<Correction, LdtError> {
    check(d, f, flines, alpha, b, t)?;
    let line = Line::new(alpha.to_vec(), b.to_vec()).expect("dimensions checked");
    let entry = flines.query(&line);
    if entry.eval(t) != f.query(&line.at(t)) {
        return Ok(Correction::Reject);
    }
    Ok(Correction::Value(entry.constant_term()))
}
