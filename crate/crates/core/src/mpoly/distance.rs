use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gf::AffineSpace;
use crate::oracle::PointOracle;

use super::PolyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMode {
    /// Enumerate the whole domain, refusing domains larger than `budget`.
    Exact { budget: u64 },
    /// Uniform sample of `trials` points drawn from `seed`.
    Sampled { trials: u64, seed: u64 },
}

/// Disagreement count between two functions on `F_q^s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Distance {
    pub disagreements: u64,
    /// Domain size for exact mode, sample count for sampled mode.
    pub out_of: u64,
    pub exact: bool,
}

impl Distance {
    pub fn value(&self) -> f64 {
        self.disagreements as f64 / self.out_of as f64
    }
}

/// Relative Hamming distance `Pr_x[f(x) ≠ g(x)]`. Uses the oracles'
/// uncounted answer path, so query counters are left untouched.
pub fn distance(f: &dyn PointOracle, g: &dyn PointOracle, mode: DistanceMode) -> Result<Distance, PolyError> {
    if f.dim() != g.dim() {
        return Err(PolyError::DimensionMismatch { expected: f.dim(), found: g.dim() });
    }
    let space = AffineSpace::new(f.field(), f.dim());
    match mode {
        DistanceMode::Exact { budget } => {
            let size = space.size().filter(|&n| n <= budget).ok_or_else(|| PolyError::DomainTooLarge {
                size: format!("{}^{}", f.field().modulus(), f.dim()),
                budget,
            })?;
            let disagreements = space.points().filter(|x| f.answer(x) != g.answer(x)).count() as u64;
            Ok(Distance { disagreements, out_of: size, exact: true })
        }
        DistanceMode::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let field = f.field();
            let mut disagreements = 0;
            for _ in 0..trials {
                let x = field.sample_vec(&mut rng, f.dim());
                if f.answer(&x) != g.answer(&x) {
                    disagreements += 1;
                }
            }
            Ok(Distance { disagreements, out_of: trials, exact: false })
        }
    }
}
