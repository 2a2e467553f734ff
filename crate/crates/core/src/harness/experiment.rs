use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::gf::{AffineSpace, Field};
use crate::keyed::keyed_hash;
use crate::ldt::{ldt_check, local_correct, Correction};
use crate::mpoly::MultiPoly;
use crate::oracle::{corrupt_pair, honest_oracles, CorruptionMode, CorruptionSpec, LinesOracle, MeteredLines, MeteredPoint, PointOracle};
use crate::pcp::{pcp_verify_amplified, Graph, PcpAdversary, PcpInstance};
use crate::sampler::{CountingSampler, Sampler};
use crate::variety::{make_variety, random_vanishing, vanishes_on, GrobnerSet, Variety, VarietySpec};
use crate::zerotest::{zero_verify, ZeroAdversary, ZeroRandomness};

use super::budget::{ldt_bits, pcp_bits, zerotest_bits};
use super::report::{FailureStats, Report};
use super::runner::{run_trials, Draw, TrialOutcome};
use super::stats::RateEstimate;
use super::HarnessError;

const POLY_TAG: u64 = 0x706f_6c79;
const KEY_TAG: u64 = 0x006b_6579;

pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Completeness,
    Soundness,
}

impl std::str::FromStr for Mode {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "completeness" => Ok(Mode::Completeness),
            "soundness" => Ok(Mode::Soundness),
            _ => Err(HarnessError::Config(format!("mode must be completeness or soundness, got {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LdtKind {
    Ldt,
    Lc,
}

/// Zero-on-variety test runs. `poly` is `random`, `zero` or polynomial text
/// in `x1..xm`; a random polynomial vanishes on `V` in completeness mode and
/// does not in soundness mode.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroConfig {
    pub q: u32,
    pub variety: String,
    /// Proof degree; defaults to one more than the extension degree.
    pub degree: Option<usize>,
    pub poly: String,
    pub mode: Mode,
    pub adversary: String,
    pub trials: u64,
    pub seed: u64,
    pub exhaustive: bool,
    pub budget: u64,
    /// Soundness passes when the 99% lower bound on the rejection rate exceeds this.
    pub min_reject: f64,
}

/// 3-COLOR runs; `graph` is a file path or `complete:<n>`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PcpConfig {
    pub q: u32,
    pub variety: String,
    pub graph: String,
    pub mode: Mode,
    pub adversary: String,
    pub trials: u64,
    pub seed: u64,
    pub reps: usize,
    pub min_reject: f64,
}

/// Low-degree test or local correction against a random degree-`d`
/// polynomial whose oracles are corrupted on a `corrupt` fraction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LdtConfig {
    pub q: u32,
    pub m: usize,
    pub d: usize,
    pub test: LdtKind,
    pub corrupt: f64,
    pub target: CorruptionMode,
    pub trials: u64,
    pub seed: u64,
    pub exhaustive: bool,
    pub budget: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "experiment", rename_all = "kebab-case")]
pub enum ExperimentConfig {
    Zerotest(ZeroConfig),
    Pcp(PcpConfig),
    Ldt(LdtConfig),
}

impl ExperimentConfig {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentConfig::Zerotest(_) => "zerotest",
            ExperimentConfig::Pcp(_) => "pcp",
            ExperimentConfig::Ldt(_) => "ldt",
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            ExperimentConfig::Zerotest(c) => c.seed,
            ExperimentConfig::Pcp(c) => c.seed,
            ExperimentConfig::Ldt(c) => c.seed,
        }
    }
}

pub(crate) fn field(q: u32) -> Result<Field, HarnessError> {
    Field::new(q).map_err(|e| HarnessError::Config(e.to_string()))
}

pub fn build_variety(q: u32, spec: &str) -> Result<(Variety, GrobnerSet), HarnessError> {
    let spec: VarietySpec = spec.parse().map_err(|e: crate::variety::VarietyError| HarnessError::Config(e.to_string()))?;
    make_variety(field(q)?, &spec).map_err(|e| HarnessError::Config(e.to_string()))
}

pub fn load_graph(spec: &str) -> Result<Graph, HarnessError> {
    if let Some(n) = spec.strip_prefix("complete:") {
        let n = n.parse().map_err(|_| HarnessError::Config(format!("bad vertex count in {spec:?}")))?;
        return Ok(Graph::complete(n));
    }
    let text = std::fs::read_to_string(PathBuf::from(spec)).map_err(|e| HarnessError::Config(format!("{spec}: {e}")))?;
    Graph::parse(&text).map_err(|e| HarnessError::Config(e.to_string()))
}

fn check_trials(trials: u64) -> Result<(), HarnessError> {
    if trials == 0 {
        return Err(HarnessError::Config("trials must be at least 1".into()));
    }
    Ok(())
}

/// Size `q^e · (q − 1)` of a randomness space with `e` uniform elements and
/// one nonzero one, if it fits the budget.
fn exhaustive_size(q: u64, e: usize, budget: u64, what: &str) -> Result<u64, HarnessError> {
    let size = (q as u128).checked_pow(e as u32).and_then(|n| n.checked_mul(q as u128 - 1));
    match size {
        Some(n) if n <= budget as u128 => Ok(n as u64),
        Some(n) => Err(HarnessError::Infeasible { size: n.to_string(), budget, what: what.to_string() }),
        None => Err(HarnessError::Infeasible { size: format!("{q}^{e}*{}", q - 1), budget, what: what.to_string() }),
    }
}

fn sampled_bits(draws: &[Option<u64>], formula: u64) -> Result<(), HarnessError> {
    for &b in draws.iter().flatten() {
        if b != formula {
            return Err(HarnessError::Internal(format!("trial drew {b} bits, formula gives {formula}")));
        }
    }
    Ok(())
}

/// Runs one experiment. With `timing = false` the report carries
/// `elapsed_ms = 0`, so identical configs give byte-identical reports.
pub fn run_experiment(cfg: &ExperimentConfig, timing: bool) -> Result<Report, HarnessError> {
    let start = Instant::now();
    let mut report = match cfg {
        ExperimentConfig::Zerotest(c) => run_zerotest(c)?,
        ExperimentConfig::Pcp(c) => run_pcp(c)?,
        ExperimentConfig::Ldt(c) => run_ldt(c)?,
    };
    report.config = serde_json::to_value(cfg)?;
    report.elapsed_ms = if timing { start.elapsed().as_millis() as u64 } else { 0 };
    Ok(report)
}

/// The polynomial `f` is honest for: vanishing in completeness mode,
/// non-vanishing in soundness mode.
pub fn zerotest_polynomial(c: &ZeroConfig, v: &Variety, degree: usize) -> Result<MultiPoly, HarnessError> {
    let fq = v.field();
    let mut rng = ChaCha8Rng::seed_from_u64(keyed_hash(c.seed, [POLY_TAG]));
    let p = match (c.poly.as_str(), c.mode) {
        ("zero", _) => MultiPoly::zero(fq, v.dim(), 0),
        ("random", Mode::Completeness) => random_vanishing(v, degree, &mut rng),
        ("random", Mode::Soundness) => loop {
            let p = MultiPoly::random(fq, v.dim(), degree, &mut rng);
            if !vanishes_on(&p, v)? {
                break p;
            }
        },
        (text, _) => MultiPoly::parse(fq, v.dim(), text).map_err(|e| HarnessError::Config(e.to_string()))?,
    };
    if p.degree() > degree {
        return Err(HarnessError::Config(format!("polynomial degree {} exceeds the proof degree {degree}", p.degree())));
    }
    Ok(p)
}

fn run_zerotest(c: &ZeroConfig) -> Result<Report, HarnessError> {
    check_trials(c.trials)?;
    let (v, g) = build_variety(c.q, &c.variety)?;
    let fq = v.field();
    let (m, k) = (v.dim(), g.len());
    let degree = c.degree.unwrap_or(v.extension_degree() + 1);
    let p = zerotest_polynomial(c, &v, degree)?;
    let adversary: ZeroAdversary = c.adversary.parse().map_err(HarnessError::Config)?;
    let proof = adversary
        .build(&p, &v, &g, degree, keyed_hash(c.seed, [KEY_TAG]))
        .map_err(|e| HarnessError::Config(format!("cannot build {adversary} proof: {e}")))?;
    let (fp, _) = honest_oracles(&p, degree)?;
    let fp: Arc<dyn PointOracle> = Arc::new(fp);
    let formula = zerotest_bits(fq, m, k);
    let trials = if c.exhaustive {
        exhaustive_size(fq.order(), 2 * (m + k) + m, c.budget, "zero-test randomness space")?
    } else {
        c.trials
    };
    let tally = run_trials(trials, c.seed, c.exhaustive, |draw| {
        let (r, bits) = match draw {
            Draw::Index(i) => (ZeroRandomness::from_index(fq, m, k, i), None),
            Draw::Seeded(rng) => {
                let mut s = CountingSampler::new(rng);
                let r = ZeroRandomness::sample(fq, m, k, &mut s);
                (r, Some(s.bits()))
            }
        };
        let f = MeteredPoint::new(fp.clone());
        let (pm, lm) = proof.metered();
        let verdict = zero_verify(degree, &g, &f, &pm, &lm, &r)?;
        Ok(TrialOutcome {
            reject: !verdict.is_accept(),
            failure: false,
            queries: f.queries() + pm.queries() + lm.queries(),
            bits,
        })
    })?;
    sampled_bits(&[tally.min_bits, tally.max_bits], formula)?;
    let mut report = Report::from_tally("zerotest", &tally, formula, c.seed)?;
    report.pass = match c.mode {
        Mode::Completeness => tally.rejects == 0,
        Mode::Soundness => report.ci99[0] > c.min_reject,
    };
    Ok(report)
}

/// The instance and proof a PCP config describes.
pub fn pcp_setup(c: &PcpConfig) -> Result<(PcpInstance, crate::pcp::PcpProof), HarnessError> {
    let (v, g) = build_variety(c.q, &c.variety)?;
    let graph = load_graph(&c.graph)?;
    let inst = PcpInstance::new(v, g, graph).map_err(|e| HarnessError::Config(e.to_string()))?;
    let adversary: PcpAdversary = c.adversary.parse().map_err(|e: crate::pcp::PcpError| HarnessError::Config(e.to_string()))?;
    let proof = adversary
        .build(&inst, keyed_hash(c.seed, [KEY_TAG]))
        .map_err(|e| HarnessError::Config(format!("cannot build {adversary} proof: {e}")))?;
    Ok((inst, proof))
}

fn run_pcp(c: &PcpConfig) -> Result<Report, HarnessError> {
    check_trials(c.trials)?;
    if c.reps == 0 {
        return Err(HarnessError::Config("reps must be at least 1".into()));
    }
    let (inst, proof) = pcp_setup(c)?;
    let formula = pcp_bits(inst.field(), inst.m(), inst.k(), inst.k2(), c.reps);
    let tally = run_trials(c.trials, c.seed, false, |draw| {
        let Draw::Seeded(rng) = draw else { unreachable!("pcp runs are sampled") };
        let mut s = CountingSampler::new(rng);
        let view = proof.metered();
        let verdict = pcp_verify_amplified(&inst, &view, c.reps, &mut s)?;
        Ok(TrialOutcome { reject: !verdict.is_accept(), failure: false, queries: view.queries(), bits: Some(s.bits()) })
    })?;
    sampled_bits(&[tally.min_bits, tally.max_bits], formula)?;
    let mut report = Report::from_tally("pcp", &tally, formula, c.seed)?;
    report.pass = match c.mode {
        Mode::Completeness => tally.rejects == 0,
        Mode::Soundness => report.ci99[0] > c.min_reject,
    };
    report.proof_size = Some(proof.implied_size());
    Ok(report)
}

fn run_ldt(c: &LdtConfig) -> Result<Report, HarnessError> {
    check_trials(c.trials)?;
    let fq = field(c.q)?;
    let (m, d) = (c.m, c.d);
    let mut rng = ChaCha8Rng::seed_from_u64(keyed_hash(c.seed, [POLY_TAG]));
    let p = MultiPoly::random(fq, m, d, &mut rng);
    let (pt, lines) = honest_oracles(&p, d)?;
    let spec = CorruptionSpec::new(c.corrupt, keyed_hash(c.seed, [KEY_TAG]), c.target)?;
    let (pt, lines) = corrupt_pair(Arc::new(pt), Arc::new(lines), &spec)?;
    let plan = p.plan();
    let formula = ldt_bits(fq, m);
    let space = AffineSpace::new(fq, 2 * m);
    let trials = if c.exhaustive {
        exhaustive_size(fq.order(), 2 * m, c.budget, "line-test randomness space")?
    } else {
        c.trials
    };
    let tally = run_trials(trials, c.seed, c.exhaustive, |draw| {
        let (a, b, t, bits) = match draw {
            Draw::Index(i) => {
                let size = space.size().expect("enumerable");
                let flat = space.point(i % size);
                (flat[..m].to_vec(), flat[m..].to_vec(), fq.elem(1 + i / size), None)
            }
            Draw::Seeded(rng) => {
                let mut s = CountingSampler::new(rng);
                let a = s.uniform_vec(fq, m);
                let b = s.uniform_vec(fq, m);
                let t = s.nonzero(fq);
                (a, b, t, Some(s.bits()))
            }
        };
        let f = MeteredPoint::new(pt.clone());
        let fl = MeteredLines::new(lines.clone());
        let (reject, failure) = match c.test {
            LdtKind::Ldt => (!ldt_check(d, &f, &fl, &a, &b, t)?.is_accept(), false),
            LdtKind::Lc => match local_correct(d, &f, &fl, &a, &b, t)? {
                Correction::Reject => (true, false),
                Correction::Value(v) => (false, v != plan.eval(&a)),
            },
        };
        Ok(TrialOutcome { reject, failure, queries: f.queries() + fl.queries(), bits })
    })?;
    sampled_bits(&[tally.min_bits, tally.max_bits], formula)?;
    let mut report = Report::from_tally("ldt", &tally, formula, c.seed)?;
    if c.test == LdtKind::Lc {
        let est = RateEstimate::new(tally.failures, tally.trials);
        let bound = 2.0 * c.corrupt.sqrt() + d as f64 / (c.q as f64 - 1.0);
        report.pass = if c.corrupt == 0.0 { tally.failures + tally.rejects == 0 } else { est.ci99[1] <= bound };
        report.failures = Some(FailureStats { count: tally.failures, rate: est.rate, ci99: est.ci99, bound });
    } else {
        report.pass = c.corrupt > 0.0 || tally.rejects == 0;
    }
    Ok(report)
}
