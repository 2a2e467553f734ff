use crate::gf::Fe;

use super::PolyError;

/// The line `t ↦ a + t·b` through `a` with slope `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    base: Vec<Fe>,
    slope: Vec<Fe>,
}

impl Line {
    pub fn new(base: Vec<Fe>, slope: Vec<Fe>) -> Result<Self, PolyError> {
        if base.len() != slope.len() {
            return Err(PolyError::DimensionMismatch { expected: base.len(), found: slope.len() });
        }
        Ok(Self { base, slope })
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &[Fe] {
        &self.base
    }

    pub fn slope(&self) -> &[Fe] {
        &self.slope
    }

    pub fn at(&self, t: Fe) -> Vec<Fe> {
        self.base.iter().zip(&self.slope).map(|(&a, &b)| a + t * b).collect()
    }

    /// Concatenation `(a, b)`, the index of this line in a lines table.
    pub fn key(&self) -> Vec<Fe> {
        let mut k = self.base.clone();
        k.extend_from_slice(&self.slope);
        k
    }

    pub fn from_key(key: &[Fe]) -> Self {
        let s = key.len() / 2;
        Self { base: key[..s].to_vec(), slope: key[s..].to_vec() }
    }
}
