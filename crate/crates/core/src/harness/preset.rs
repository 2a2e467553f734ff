//! Desk-scale instances of the three variety families used for PCP
//! constructions: a cube `H^m`, the Hamming ball `ball1(n)`, and a power of
//! a ball.

use super::experiment::{ExperimentConfig, Mode, ZeroConfig, DEFAULT_BUDGET};
use super::HarnessError;

pub const PRESETS: [&str; 3] = ["polylog", "hadamard-like", "n-eps"];

pub fn preset_description(name: &str) -> Option<&'static str> {
    match name {
        "polylog" => Some("cube H^2 with H = {0,1}: Grobner complexity m, extension degree m(|H|-1)"),
        "hadamard-like" => Some("ball1(3): extension degree 1, Grobner complexity n(n+1)/2"),
        "n-eps" => Some("ball1(2)^2: extension degree at most c = 2"),
        _ => None,
    }
}

/// Zero-test completeness configs for each family at `q = 97`.
pub fn preset(name: &str) -> Result<ExperimentConfig, HarnessError> {
    let variety = match name {
        "polylog" => "cube:H=0,1;m=2",
        "hadamard-like" => "ball1:n=3",
        "n-eps" => "pow:(ball1:n=2)^2",
        _ => return Err(HarnessError::Config(format!("unknown preset {name:?}; expected one of {}", PRESETS.join(", ")))),
    };
    Ok(ExperimentConfig::Zerotest(ZeroConfig {
        q: 97,
        variety: variety.into(),
        degree: None,
        poly: "random".into(),
        mode: Mode::Completeness,
        adversary: "honest".into(),
        trials: 2000,
        seed: 1,
        exhaustive: false,
        budget: DEFAULT_BUDGET,
        min_reject: 0.0,
    }))
}
