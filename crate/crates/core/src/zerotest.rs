//! The zero-on-variety proof: prover and seven-query verifier.
//!
//! An honest proof for `P` with `P|_V ≡ 0` is the certificate polynomial
//! `M(x, y) = Σ h_g(x)·y_g` together with its lines table. The verifier
//! low-degree tests `M`, checks `M(α, 0) = 0` and `M(α, φ(α)) = f(α)` by local
//! correction along the direction `a`.

use std::sync::Arc;

use crate::gf::{AffineSpace, Fe, Field};
use crate::ldt::{ldt_check, local_correct, Correction, LdtError, Verdict};
use crate::mpoly::MultiPoly;
use crate::oracle::{corrupt_point, honest_oracles, LinesOracle, MeteredLines, MeteredPoint, OracleError, PointOracle};
use crate::sampler::Sampler;
use crate::variety::{
    certificate_poly, low_degree_extension, random_vanishing, vanishing_certificate, GrobnerSet, Variety, VarietyError,
};

pub const ZERO_TEST_QUERIES: u64 = 7;

#[derive(Debug, thiserror::Error)]
pub enum ZeroTestError {
    #[error("polynomial degree {degree} exceeds the proof degree {d}")]
    DegreeTooHigh { degree: usize, d: usize },
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch { what: &'static str, expected: usize, found: usize },
    #[error("honest certificate failed its structural check: {0}")]
    Structure(&'static str),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Ldt(#[from] LdtError),
}

/// The pair `(M, M′)`: a point oracle over `F_q^{m+k}` and its lines table.
#[derive(Clone)]
pub struct ZeroProof {
    pub point: Arc<dyn PointOracle>,
    pub lines: Arc<dyn LinesOracle>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroRandomness {
    pub a: Vec<Fe>,
    pub b: Vec<Fe>,
    pub alpha: Vec<Fe>,
    pub t: Fe,
}

impl ZeroRandomness {
    /// Draws `a, b, α, t` in that order.
    pub fn sample<S: Sampler + ?Sized>(field: Field, m: usize, k: usize, s: &mut S) -> Self {
        let a = s.uniform_vec(field, m + k);
        let b = s.uniform_vec(field, m + k);
        let alpha = s.uniform_vec(field, m);
        let t = s.nonzero(field);
        Self { a, b, alpha, t }
    }

    /// `q^{2(m+k)+m}·(q−1)`, or `None` on overflow.
    pub fn space_size(field: Field, m: usize, k: usize) -> Option<u64> {
        AffineSpace::new(field, 2 * (m + k) + m).size()?.checked_mul(field.order() - 1)
    }

    /// The `index`-th tuple of the randomness space; `t` varies slowest.
    pub fn from_index(field: Field, m: usize, k: usize, index: u64) -> Self {
        let space = AffineSpace::new(field, 2 * (m + k) + m);
        let size = space.size().expect("enumerable space");
        let t = field.elem(1 + index / size);
        let flat = space.point(index % size);
        Self { a: flat[..m + k].to_vec(), b: flat[m + k..2 * (m + k)].to_vec(), alpha: flat[2 * (m + k)..].to_vec(), t }
    }
}

/// `M_V(P)` with degree tag `d`, checked symbolically: `M(x, 0) ≡ 0`,
/// `M(x, φ(x)) = P`, `deg M ≤ d`.
pub fn zero_certificate(p: &MultiPoly, v: &Variety, g: &GrobnerSet, d: usize) -> Result<MultiPoly, ZeroTestError> {
    if p.degree() > d {
        return Err(ZeroTestError::DegreeTooHigh { degree: p.degree(), d });
    }
    let cert = vanishing_certificate(p, v, g)?;
    let cp = certificate_poly(&cert, g);
    if !cp.at_zero(g).is_zero() {
        return Err(ZeroTestError::Structure("M(x, 0) is not zero"));
    }
    if cp.at_phi(g) != *p {
        return Err(ZeroTestError::Structure("M(x, phi(x)) differs from P"));
    }
    let m = cp.into_poly();
    if m.degree() > d {
        return Err(ZeroTestError::Structure("deg M exceeds d"));
    }
    Ok(m.with_degree_cap(d).expect("degree checked"))
}

pub fn zero_prove(p: &MultiPoly, v: &Variety, g: &GrobnerSet, d: usize) -> Result<ZeroProof, ZeroTestError> {
    let m = zero_certificate(p, v, g, d)?;
    let (point, lines) = honest_oracles(&m, d)?;
    Ok(ZeroProof { point: Arc::new(point), lines: Arc::new(lines) })
}

/// Runs the test on explicit randomness. All seven queries are made on every
/// call; the decision is taken afterwards.
pub fn zero_verify(
    d: usize,
    g: &GrobnerSet,
    f: &dyn PointOracle,
    proof_point: &dyn PointOracle,
    proof_lines: &dyn LinesOracle,
    r: &ZeroRandomness,
) -> Result<Verdict, ZeroTestError> {
    let (m, k) = (g.nvars(), g.len());
    let dims = [
        ("f", m, f.dim()),
        ("M", m + k, proof_point.dim()),
        ("a", m + k, r.a.len()),
        ("b", m + k, r.b.len()),
        ("alpha", m, r.alpha.len()),
    ];
    for (what, expected, found) in dims {
        if expected != found {
            return Err(ZeroTestError::DimensionMismatch { what, expected, found });
        }
    }
    let field = g.field();
    let ldt = ldt_check(d, proof_point, proof_lines, &r.a, &r.b, r.t)?;

    let mut at_zero = r.alpha.clone();
    at_zero.extend(field.zeros(k));
    let lc_zero = local_correct(d, proof_point, proof_lines, &at_zero, &r.a, r.t)?;

    let mut at_phi = r.alpha.clone();
    at_phi.extend(g.phi(&r.alpha)?);
    let lc_phi = local_correct(d, proof_point, proof_lines, &at_phi, &r.a, r.t)?;
    let f_alpha = f.query(&r.alpha);

    let accept = ldt.is_accept()
        && lc_zero == Correction::Value(field.zero())
        && lc_phi == Correction::Value(f_alpha);
    Ok(Verdict::from_bool(accept))
}

impl ZeroProof {
    /// A view with fresh query counters.
    pub fn metered(&self) -> (MeteredPoint, MeteredLines) {
        (MeteredPoint::new(self.point.clone()), MeteredLines::new(self.lines.clone()))
    }
}

/// Proof strategies against an `f` whose polynomial does not vanish on `V`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ZeroAdversary {
    /// Honest proof of `P` itself (only valid when `P` vanishes).
    Honest,
    /// Honest proof of `P′ = P − (extension of P|_V)`, a vanishing polynomial
    /// agreeing with `P` up to a degree-`≤ d_V` correction.
    WrongPoly,
    /// `M ≡ 0` with its (zero) lines table.
    ZeroM,
    /// Uniformly random `M` of degree `d` with its honest lines table.
    RandomM,
    /// `WrongPoly` with the `M` point table corrupted on a `δ` fraction.
    CorruptM { fraction: f64 },
    /// `M` from `P′`, lines table from the certificate of a different
    /// vanishing `P″`.
    Inconsistent,
}

impl ZeroAdversary {
    pub const NAMES: [&'static str; 6] = ["honest", "wrong-poly", "zero-m", "random-m", "corrupt-m:<delta>", "inconsistent"];

    pub fn build(&self, p: &MultiPoly, v: &Variety, g: &GrobnerSet, d: usize, key: u64) -> Result<ZeroProof, ZeroTestError> {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(key);
        let field = v.field();
        let nvars = v.dim() + g.len();
        let pair = |poly: &MultiPoly| -> Result<ZeroProof, ZeroTestError> {
            let (pt, lines) = honest_oracles(poly, d)?;
            Ok(ZeroProof { point: Arc::new(pt), lines: Arc::new(lines) })
        };
        let wrong = || -> Result<MultiPoly, ZeroTestError> {
            let values: Vec<Fe> = v.points().iter().map(|x| p.eval(x).expect("dimension")).collect();
            Ok(p.sub(&low_degree_extension(v, &values)?))
        };
        match self {
            ZeroAdversary::Honest => zero_prove(p, v, g, d),
            ZeroAdversary::WrongPoly => zero_prove(&wrong()?, v, g, d),
            ZeroAdversary::ZeroM => pair(&MultiPoly::zero(field, nvars, 0)),
            ZeroAdversary::RandomM => pair(&MultiPoly::random(field, nvars, d, &mut rng)),
            ZeroAdversary::CorruptM { fraction } => {
                let honest = zero_prove(&wrong()?, v, g, d)?;
                let point = corrupt_point(honest.point, *fraction, key)?;
                Ok(ZeroProof { point: Arc::new(point), lines: honest.lines })
            }
            ZeroAdversary::Inconsistent => {
                let p1 = wrong()?;
                let mut p2 = p1.add(&random_vanishing(v, d, &mut rng));
                while p2 == p1 {
                    p2 = p1.add(&random_vanishing(v, d, &mut rng));
                }
                let first = zero_prove(&p1, v, g, d)?;
                let second = zero_prove(&p2, v, g, d)?;
                Ok(ZeroProof { point: first.point, lines: second.lines })
            }
        }
    }
}

impl std::str::FromStr for ZeroAdversary {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "honest" => Ok(Self::Honest),
            "wrong-poly" => Ok(Self::WrongPoly),
            "zero-m" => Ok(Self::ZeroM),
            "random-m" => Ok(Self::RandomM),
            "inconsistent" => Ok(Self::Inconsistent),
            other => other
                .strip_prefix("corrupt-m:")
                .and_then(|x| x.parse::<f64>().ok())
                .filter(|x| (0.0..=1.0).contains(x))
                .map(|fraction| Self::CorruptM { fraction })
                .ok_or_else(|| format!("unknown zero-test adversary {other:?}")),
        }
    }
}

impl std::fmt::Display for ZeroAdversary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Honest => f.write_str("honest"),
            Self::WrongPoly => f.write_str("wrong-poly"),
            Self::ZeroM => f.write_str("zero-m"),
            Self::RandomM => f.write_str("random-m"),
            Self::CorruptM { fraction } => write!(f, "corrupt-m:{fraction}"),
            Self::Inconsistent => f.write_str("inconsistent"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::CountingSampler;
    use crate::variety::{grobner_generating_set, make_variety};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    fn two_points(q: u32) -> (Variety, GrobnerSet) {
        let v = Variety::from_u64_points(f(q), &[&[1], &[2]]).unwrap();
        let g = grobner_generating_set(&v);
        (v, g)
    }

    #[test]
    fn zero_polynomial_gives_zero_proof() {
        let (v, g) = two_points(5);
        let p = MultiPoly::zero(f(5), 1, 0);
        assert!(zero_certificate(&p, &v, &g, 2).unwrap().is_zero());
        let proof = zero_prove(&p, &v, &g, 2).unwrap();
        let (fp, _) = honest_oracles(&p, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let r = ZeroRandomness::sample(f(5), 1, 1, &mut rng);
            assert!(zero_verify(2, &g, &fp, proof.point.as_ref(), proof.lines.as_ref(), &r).unwrap().is_accept());
        }
    }

    #[test]
    fn ball_certificate_is_the_x1x2_coordinate() {
        let fq = f(5);
        let (v, g) = make_variety(fq, &"ball1:n=2".parse().unwrap()).unwrap();
        let p = MultiPoly::parse(fq, 2, "x1*x2").unwrap();
        let m = zero_certificate(&p, &v, &g, 2).unwrap();
        let idx = g.generators().iter().position(|gen| *gen == p).unwrap();
        assert_eq!(m, MultiPoly::var(fq, 2 + g.len(), 2 + idx));
    }

    #[test]
    fn prover_errors() {
        let fq = f(5);
        let (v, g) = two_points(5);
        let p = MultiPoly::parse(fq, 1, "x1").unwrap();
        assert!(matches!(zero_prove(&p, &v, &g, 2), Err(ZeroTestError::Variety(VarietyError::NoCertificate))));
        let p = MultiPoly::parse(fq, 1, "x1^2 + 2*x1 + 2").unwrap().mul(&MultiPoly::var(fq, 1, 0));
        assert!(matches!(zero_prove(&p, &v, &g, 2), Err(ZeroTestError::DegreeTooHigh { .. })));
        assert!(zero_prove(&p, &v, &g, 3).is_ok());
    }

    #[test]
    fn seven_queries_even_on_reject() {
        let fq = f(11);
        let (v, g) = two_points(11);
        let p = MultiPoly::parse(fq, 1, "x1^2 + 8*x1 + 2").unwrap();
        assert!(crate::variety::vanishes_on(&p, &v).unwrap());
        let proof = zero_prove(&p, &v, &g, 2).unwrap();
        let wrong = MultiPoly::parse(fq, 1, "x1").unwrap();
        let (fp, _) = honest_oracles(&wrong, 2).unwrap();
        let fp: Arc<dyn PointOracle> = Arc::new(fp);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut rejects = 0;
        for _ in 0..200 {
            let fm = MeteredPoint::new(fp.clone());
            let pm = MeteredPoint::new(proof.point.clone());
            let lm = MeteredLines::new(proof.lines.clone());
            let r = ZeroRandomness::sample(fq, 1, 1, &mut rng);
            rejects += !zero_verify(2, &g, &fm, &pm, &lm, &r).unwrap().is_accept() as u32;
            assert_eq!(fm.queries() + pm.queries() + lm.queries(), ZERO_TEST_QUERIES);
            assert_eq!(fm.queries(), 1);
        }
        assert!(rejects > 0);
    }

    #[test]
    fn adversary_menu_on_ball() {
        let fq = f(31);
        let (v, g) = make_variety(fq, &"ball1:n=2".parse().unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let p = MultiPoly::random(fq, 2, 4, &mut rng);
        assert!(!crate::variety::vanishes_on(&p, &v).unwrap());
        let (fp, _) = honest_oracles(&p, 4).unwrap();
        assert!(ZeroAdversary::Honest.build(&p, &v, &g, 4, 0).is_err());
        for s in ["wrong-poly", "zero-m", "random-m", "corrupt-m:0.05", "inconsistent"] {
            let adv: ZeroAdversary = s.parse().unwrap();
            assert_eq!(adv.to_string(), s);
            let proof = adv.build(&p, &v, &g, 4, 3).unwrap();
            let rejects = (0..300)
                .filter(|_| {
                    let r = ZeroRandomness::sample(fq, 2, g.len(), &mut rng);
                    !zero_verify(4, &g, &fp, proof.point.as_ref(), proof.lines.as_ref(), &r).unwrap().is_accept()
                })
                .count();
            assert!(rejects > 30, "{s}: {rejects}");
        }
    }

    #[test]
    fn randomness_indexing_and_bits() {
        let fq = f(5);
        assert_eq!(ZeroRandomness::space_size(fq, 1, 1), Some(12500));
        let first = ZeroRandomness::from_index(fq, 1, 1, 0);
        assert_eq!(first.t, fq.one());
        let last = ZeroRandomness::from_index(fq, 1, 1, 12499);
        assert_eq!(last.t, fq.elem(4));
        assert!(last.a.iter().chain(&last.b).chain(&last.alpha).all(|x| x.value() == 4));
        let mut s = CountingSampler::new(ChaCha8Rng::seed_from_u64(0));
        ZeroRandomness::sample(fq, 1, 1, &mut s);
        assert_eq!(s.bits(), 17);
    }
}
