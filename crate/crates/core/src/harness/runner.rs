use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::keyed::trial_seed;

use super::HarnessError;

/// Where a trial takes its randomness from.
pub enum Draw {
    /// Position in an enumerated randomness space.
    Index(u64),
    /// A generator seeded from `(master seed, trial index)`.
    Seeded(ChaCha8Rng),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TrialOutcome {
    pub reject: bool,
    /// Experiment-specific bad event, e.g. a wrong corrected value.
    pub failure: bool,
    pub queries: u64,
    /// Bits drawn, when the trial used a counting sampler.
    pub bits: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tally {
    pub trials: u64,
    pub rejects: u64,
    pub failures: u64,
    pub min_queries: u64,
    pub max_queries: u64,
    pub min_bits: Option<u64>,
    pub max_bits: Option<u64>,
}

impl Tally {
    fn empty() -> Self {
        Self { trials: 0, rejects: 0, failures: 0, min_queries: u64::MAX, max_queries: 0, min_bits: None, max_bits: None }
    }

    fn from_outcome(o: TrialOutcome) -> Self {
        Self {
            trials: 1,
            rejects: o.reject as u64,
            failures: o.failure as u64,
            min_queries: o.queries,
            max_queries: o.queries,
            min_bits: o.bits,
            max_bits: o.bits,
        }
    }

    fn merge(self, o: Tally) -> Tally {
        let pick = |a: Option<u64>, b: Option<u64>, f: fn(u64, u64) -> u64| match (a, b) {
            (Some(x), Some(y)) => Some(f(x, y)),
            (x, None) => x,
            (None, y) => y,
        };
        Tally {
            trials: self.trials + o.trials,
            rejects: self.rejects + o.rejects,
            failures: self.failures + o.failures,
            min_queries: self.min_queries.min(o.min_queries),
            max_queries: self.max_queries.max(o.max_queries),
            min_bits: pick(self.min_bits, o.min_bits, u64::min),
            max_bits: pick(self.max_bits, o.max_bits, u64::max),
        }
    }
}

/// Runs `trials` independent trials in parallel. Results depend only on the
/// master seed and the trial indices, never on scheduling.
pub fn run_trials<F>(trials: u64, master: u64, exhaustive: bool, trial: F) -> Result<Tally, HarnessError>
where
    F: Fn(Draw) -> Result<TrialOutcome, HarnessError> + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let draw = if exhaustive {
                Draw::Index(i)
            } else {
                Draw::Seeded(ChaCha8Rng::seed_from_u64(trial_seed(master, i)))
            };
            trial(draw).map(Tally::from_outcome)
        })
        .try_reduce(Tally::empty, |a, b| Ok(a.merge(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn seeded_runs_are_reproducible() {
        let run = || {
            run_trials(5000, 42, false, |d| match d {
                Draw::Seeded(mut rng) => Ok(TrialOutcome { reject: rng.gen_bool(0.3), queries: 3, ..Default::default() }),
                Draw::Index(_) => unreachable!(),
            })
            .unwrap()
        };
        let a = run();
        assert_eq!(a, run());
        assert_eq!((a.trials, a.min_queries, a.max_queries), (5000, 3, 3));
        assert!((a.rejects as f64 / 5000.0 - 0.3).abs() < 0.03);
    }

    #[test]
    fn exhaustive_visits_every_index() {
        let t = run_trials(100, 0, true, |d| match d {
            Draw::Index(i) => Ok(TrialOutcome { reject: i % 4 == 0, queries: i, ..Default::default() }),
            Draw::Seeded(_) => unreachable!(),
        })
        .unwrap();
        assert_eq!((t.rejects, t.min_queries, t.max_queries), (25, 0, 99));
    }

    #[test]
    fn errors_propagate() {
        let r = run_trials(10, 0, true, |d| match d {
            Draw::Index(3) => Err(HarnessError::Internal("boom".into())),
            _ => Ok(TrialOutcome::default()),
        });
        assert!(r.is_err());
    }
}
