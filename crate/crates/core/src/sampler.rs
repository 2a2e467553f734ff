//! Field-element sampling with optional bit accounting.

use rand::Rng;

use crate::gf::{Fe, Field};

/// Source of uniform field elements for verifier randomness.
pub trait Sampler {
    fn uniform(&mut self, field: Field) -> Fe;
    fn nonzero(&mut self, field: Field) -> Fe;

    fn uniform_vec(&mut self, field: Field, len: usize) -> Vec<Fe> {
        (0..len).map(|_| self.uniform(field)).collect()
    }
}

impl<R: Rng> Sampler for R {
    fn uniform(&mut self, field: Field) -> Fe {
        field.sample(self, false)
    }

    fn nonzero(&mut self, field: Field) -> Fe {
        field.sample(self, true)
    }
}

/// Wraps a generator and charges `⌈log₂ q⌉` bits per uniform element and
/// `⌈log₂(q−1)⌉` per nonzero element.
#[derive(Debug)]
pub struct CountingSampler<R> {
    inner: R,
    bits: u64,
}

impl<R: Rng> CountingSampler<R> {
    pub fn new(inner: R) -> Self {
        Self { inner, bits: 0 }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }
}

impl<R: Rng> Sampler for CountingSampler<R> {
    fn uniform(&mut self, field: Field) -> Fe {
        self.bits += field.element_bits() as u64;
        field.sample(&mut self.inner, false)
    }

    fn nonzero(&mut self, field: Field) -> Fe {
        self.bits += field.nonzero_bits() as u64;
        field.sample(&mut self.inner, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn counting_matches_plain_draws() {
        let fq = Field::new(5).unwrap();
        let mut plain = ChaCha8Rng::seed_from_u64(4);
        let mut counted = CountingSampler::new(ChaCha8Rng::seed_from_u64(4));
        assert_eq!(plain.uniform_vec(fq, 3), counted.uniform_vec(fq, 3));
        assert_eq!(plain.nonzero(fq), counted.nonzero(fq));
        assert_eq!(counted.bits(), 3 * 3 + 2);
    }
}
