use super::{Fe, Field};

/// The affine space `F_q^dim`, enumerated lexicographically with the first
/// coordinate most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineSpace {
    pub field: Field,
    pub dim: usize,
}

impl AffineSpace {
    pub fn new(field: Field, dim: usize) -> Self {
        Self { field, dim }
    }

    /// `q^dim`, or `None` on overflow.
    pub fn size(&self) -> Option<u64> {
        self.field.order().checked_pow(u32::try_from(self.dim).ok()?)
    }

    pub fn point(&self, mut index: u64) -> Vec<Fe> {
        let q = self.field.order();
        let mut p = self.field.zeros(self.dim);
        for slot in p.iter_mut().rev() {
            *slot = self.field.elem(index % q);
            index /= q;
        }
        p
    }

    pub fn index(&self, point: &[Fe]) -> u64 {
        let q = self.field.order();
        point.iter().fold(0u64, |acc, x| acc * q + x.value() as u64)
    }

    /// Every point of the space. Panics if the size overflows `u64`.
    pub fn points(&self) -> impl Iterator<Item = Vec<Fe>> + '_ {
        let n = self.size().expect("affine space too large to enumerate");
        (0..n).map(move |i| self.point(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        let s = AffineSpace::new(Field::new(5).unwrap(), 3);
        assert_eq!(s.size(), Some(125));
        for (i, p) in s.points().enumerate() {
            assert_eq!(s.index(&p), i as u64);
        }
        let f = Field::new(5).unwrap();
        assert_eq!(s.point(7), vec![f.zero(), f.elem(1), f.elem(2)]);
    }

    #[test]
    fn size_overflow_is_none() {
        assert_eq!(AffineSpace::new(Field::new(257).unwrap(), 9).size(), None);
    }
}
