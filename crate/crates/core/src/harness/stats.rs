use serde::Serialize;

pub const Z95: f64 = 1.959_963_984_540_054;
pub const Z99: f64 = 2.575_829_303_548_900_4;

/// Wilson score interval for `successes` out of `n` at normal quantile `z`.
pub fn wilson(successes: u64, n: u64, z: f64) -> [f64; 2] {
    if n == 0 {
        return [0.0, 1.0];
    }
    let n = n as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // Rounding can push an endpoint past p when p is 0 or 1.
    [(centre - half).clamp(0.0, p), (centre + half).clamp(p, 1.0)]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateEstimate {
    pub trials: u64,
    pub hits: u64,
    pub rate: f64,
    pub ci95: [f64; 2],
    pub ci99: [f64; 2],
}

impl RateEstimate {
    pub fn new(hits: u64, trials: u64) -> Self {
        assert!(hits <= trials);
        let rate = if trials == 0 { 0.0 } else { hits as f64 / trials as f64 };
        Self { trials, hits, rate, ci95: wilson(hits, trials, Z95), ci99: wilson(hits, trials, Z99) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom_pmf(n: u64, k: u64, p: f64) -> f64 {
        let mut ln = 0.0;
        for i in 0..k {
            ln += ((n - i) as f64).ln() - ((i + 1) as f64).ln();
        }
        (ln + k as f64 * p.ln() + (n - k) as f64 * (1.0 - p).ln()).exp()
    }

    /// Exact coverage of the interval at true rate `p`.
    fn coverage(n: u64, p: f64, z: f64) -> f64 {
        (0..=n)
            .filter(|&k| {
                let [lo, hi] = wilson(k, n, z);
                lo <= p && p <= hi
            })
            .map(|k| binom_pmf(n, k, p))
            .sum()
    }

    #[test]
    fn intervals_contain_rate() {
        for n in [1u64, 7, 30, 1000] {
            for k in 0..=n.min(40) {
                let e = RateEstimate::new(k, n);
                assert!(e.ci95[0] <= e.rate && e.rate <= e.ci95[1]);
                assert!(e.ci99[0] <= e.ci95[0] && e.ci95[1] <= e.ci99[1]);
            }
        }
        assert_eq!(wilson(0, 10, Z95)[0], 0.0);
    }

    #[test]
    fn coverage_against_exact_binomial() {
        for n in [10u64, 25, 60] {
            let grid: Vec<f64> = (1..50).map(|i| i as f64 / 50.0).collect();
            let mean95 = grid.iter().map(|&p| coverage(n, p, Z95)).sum::<f64>() / grid.len() as f64;
            let mean99 = grid.iter().map(|&p| coverage(n, p, Z99)).sum::<f64>() / grid.len() as f64;
            assert!((mean95 - 0.95).abs() < 0.02, "n={n}: {mean95}");
            assert!((mean99 - 0.99).abs() < 0.01, "n={n}: {mean99}");
        }
    }

    #[test]
    fn known_value() {
        // 5 of 20 at 95%: (0.1119, 0.4687) to four places.
        let [lo, hi] = wilson(5, 20, Z95);
        assert!((lo - 0.1119).abs() < 1e-4 && (hi - 0.4687).abs() < 1e-4, "{lo} {hi}");
    }
}
