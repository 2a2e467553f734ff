use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::mpoly::MultiPoly;
use crate::oracle::corrupt_point;

use super::{coloring_polys, honest_pair, pcp_prove, Coloring, PcpError, PcpInstance, PcpProof};
use crate::zerotest::zero_certificate;

/// Proof strategies for soundness runs. Apart from `Honest`, each starts from
/// the honest pipeline on the fewest-conflict improper coloring and differs
/// in what it does about the certificate that cannot exist.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PcpAdversary {
    /// Honest proof of the best proper coloring.
    Honest,
    /// Honest `χ̂, A, M_A, B`; `M_B` is the zero polynomial. Caught by the
    /// zero test on `B`.
    Improper,
    /// As `Improper`, but `B` is replaced by zero so its zero test passes.
    /// Caught by the polynomial identity check on `B`.
    FakeB,
    /// `Improper` with the `χ̂` point table corrupted on a `δ` fraction.
    CorruptChi { fraction: f64 },
    /// As `Improper`, with both certificates zero.
    ZeroCerts,
}

impl PcpAdversary {
    pub const NAMES: [&'static str; 5] = ["honest", "improper", "fake-b", "corrupt-chi:<delta>", "zero-certs"];

    /// Builds the proof; `key` seeds any corruption.
    pub fn build(&self, inst: &PcpInstance, key: u64) -> Result<PcpProof, PcpError> {
        let d = inst.d();
        if let PcpAdversary::Honest = self {
            let (c, conflicts) = Coloring::best(inst.graph())?;
            if conflicts > 0 {
                return Err(PcpError::Coloring("graph is not 3-colorable; no honest proof exists".into()));
            }
            return pcp_prove(inst, &c);
        }
        let (coloring, _) = Coloring::best_improper(inst.graph())?;
        let polys = coloring_polys(inst, &coloring)?;
        let field = inst.field();
        let zero_a = MultiPoly::zero(field, inst.m() + inst.k(), 0);
        let zero_b = MultiPoly::zero(field, 2 * inst.m() + inst.k2(), 0);
        let ma = match self {
            PcpAdversary::ZeroCerts => zero_a,
            _ => zero_certificate(&polys.a, inst.variety(), inst.grobner(), 3 * d)?,
        };
        let b = match self {
            PcpAdversary::FakeB => MultiPoly::zero(field, 2 * inst.m(), 0),
            _ => polys.b.clone(),
        };
        let mut chi = honest_pair(&polys.chi, d)?;
        if let PcpAdversary::CorruptChi { fraction } = self {
            chi.0 = Arc::new(corrupt_point(chi.0, *fraction, key)?);
        }
        Ok(PcpProof::from_pairs(
            chi,
            honest_pair(&polys.a, 3 * d)?,
            honest_pair(&ma, 3 * d)?,
            honest_pair(&b, 6 * d)?,
            honest_pair(&zero_b, 6 * d)?,
        ))
    }
}

impl FromStr for PcpAdversary {
    type Err = PcpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "honest" => Ok(Self::Honest),
            "improper" => Ok(Self::Improper),
            "fake-b" => Ok(Self::FakeB),
            "zero-certs" => Ok(Self::ZeroCerts),
            other => {
                let delta = other
                    .strip_prefix("corrupt-chi:")
                    .and_then(|x| x.parse::<f64>().ok())
                    .filter(|x| (0.0..=1.0).contains(x))
                    .ok_or_else(|| PcpError::UnknownAdversary(other.to_string()))?;
                Ok(Self::CorruptChi { fraction: delta })
            }
        }
    }
}

impl fmt::Display for PcpAdversary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Honest => f.write_str("honest"),
            Self::Improper => f.write_str("improper"),
            Self::FakeB => f.write_str("fake-b"),
            Self::CorruptChi { fraction } => write!(f, "corrupt-chi:{fraction}"),
            Self::ZeroCerts => f.write_str("zero-certs"),
        }
    }
}
