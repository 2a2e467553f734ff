//! The 3-COLOR proof: ten-oracle honest prover, the 24-query verifier and
//! its repetition wrapper.
//!
//! Graph vertices are the points of `V` in enumeration order. The proof
//! carries the colouring extension `χ̂`, `A = χ̂(χ̂−1)(χ̂+1)`,
//! `B(x, y) = Ê(x, y)·∏_{i ∈ ±1, ±2} (χ̂(x) − χ̂(y) − i)`, the zero-test
//! certificates for `A` on `V` and `B` on `V × V`, and a lines table for each.

mod adversary;
mod graph;

use std::sync::Arc;

pub use adversary::PcpAdversary;
pub use graph::{Coloring, Graph};

use crate::gf::{Fe, Field};
use crate::ldt::{ldt_check, LdtError, Verdict};
use crate::mpoly::{HornerPlan, MultiPoly};
use crate::oracle::{honest_oracles, LinesOracle, MeteredLines, MeteredPoint, OracleError, PointOracle};
use crate::sampler::Sampler;
use crate::variety::{low_degree_extension, product, GrobnerSet, Variety, VarietyError};
use crate::zerotest::{zero_certificate, zero_verify, ZeroRandomness, ZeroTestError};

pub const PCP_QUERIES: u64 = 24;

#[derive(Debug, thiserror::Error)]
pub enum PcpError {
    #[error("bad graph: {0}")]
    Graph(String),
    #[error("bad coloring: {0}")]
    Coloring(String),
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch { what: &'static str, expected: usize, found: usize },
    #[error("unknown adversary {0:?}")]
    UnknownAdversary(String),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    ZeroTest(#[from] ZeroTestError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Ldt(#[from] LdtError),
}

/// Everything the verifier knows: `V`, `𝔊(V)`, `V × V` with the product
/// generating set, the graph and its edge extension `Ê`.
#[derive(Debug, Clone)]
pub struct PcpInstance {
    v: Variety,
    g: GrobnerSet,
    vv: Variety,
    gg: GrobnerSet,
    graph: Graph,
    edge_ext: MultiPoly,
    edge_plan: HornerPlan,
}

impl PcpInstance {
    pub fn new(v: Variety, g: GrobnerSet, graph: Graph) -> Result<Self, PcpError> {
        if graph.n() > v.len() {
            return Err(PcpError::Graph(format!("{} vertices but the variety has {} points", graph.n(), v.len())));
        }
        if g.nvars() != v.dim() {
            return Err(PcpError::DimensionMismatch { what: "generating set", expected: v.dim(), found: g.nvars() });
        }
        let prod = product(&v, &v, &g, &g)?;
        let edge_ext = edge_extension_on(&prod.variety, v.len(), &graph)?;
        let edge_plan = edge_ext.plan();
        Ok(Self { v, g, vv: prod.variety, gg: prod.grobner, graph, edge_ext, edge_plan })
    }

    pub fn field(&self) -> Field {
        self.v.field()
    }
    pub fn variety(&self) -> &Variety {
        &self.v
    }
    pub fn grobner(&self) -> &GrobnerSet {
        &self.g
    }
    pub fn square(&self) -> &Variety {
        &self.vv
    }
    pub fn square_grobner(&self) -> &GrobnerSet {
        &self.gg
    }
    pub fn graph(&self) -> &Graph {
        &self.graph
    }
    pub fn edge_extension(&self) -> &MultiPoly {
        &self.edge_ext
    }
    /// `m`.
    pub fn m(&self) -> usize {
        self.v.dim()
    }
    /// `k = |𝔊(V)|`.
    pub fn k(&self) -> usize {
        self.g.len()
    }
    /// `k′ = |𝔊(V × V)| = 2k`.
    pub fn k2(&self) -> usize {
        self.gg.len()
    }
    /// Extension degree `d` of `V`.
    pub fn d(&self) -> usize {
        self.v.extension_degree()
    }
}

fn edge_extension_on(vv: &Variety, n: usize, graph: &Graph) -> Result<MultiPoly, PcpError> {
    let field = vv.field();
    let values: Vec<Fe> = (0..n * n).map(|i| field.elem(graph.has_edge(i / n, i % n) as u64)).collect();
    Ok(low_degree_extension(vv, &values)?)
}

/// `Ê`: the extension over `V × V` of the symmetric 0/1 edge indicator.
pub fn edge_extension(v: &Variety, graph: &Graph) -> Result<MultiPoly, PcpError> {
    if graph.n() > v.len() {
        return Err(PcpError::Graph(format!("{} vertices but the variety has {} points", graph.n(), v.len())));
    }
    edge_extension_on(&v.cartesian(v)?, v.len(), graph)
}

/// The four differences `{1, −1, 2, −2}` excluded between adjacent colors.
fn color_gaps(field: Field) -> [Fe; 4] {
    [field.from_i64(1), field.from_i64(-1), field.from_i64(2), field.from_i64(-2)]
}

/// The three polynomials an honest prover commits to.
#[derive(Clone, Debug)]
pub struct ColoringPolys {
    pub chi: MultiPoly,
    pub a: MultiPoly,
    pub b: MultiPoly,
}

pub fn coloring_polys(inst: &PcpInstance, coloring: &Coloring) -> Result<ColoringPolys, PcpError> {
    let field = inst.field();
    let m = inst.m();
    let chi = low_degree_extension(&inst.v, &coloring.values(field, inst.v.len()))?;
    let one = MultiPoly::constant(field, m, field.one());
    let a = chi.mul(&chi.sub(&one)).mul(&chi.add(&one));
    let cx = chi.embed(2 * m, 0);
    let cy = chi.embed(2 * m, m);
    let diff = cx.sub(&cy);
    let mut b = inst.edge_ext.clone();
    for gap in color_gaps(field) {
        b = b.mul(&diff.add_constant(-gap));
    }
    Ok(ColoringPolys { chi, a, b })
}

/// The ten oracles. Point/lines pairs carry degree tags `d`, `3d`, `3d`,
/// `6d`, `6d`.
#[derive(Clone)]
pub struct PcpProof {
    pub chi: Arc<dyn PointOracle>,
    pub chi_lines: Arc<dyn LinesOracle>,
    pub a: Arc<dyn PointOracle>,
    pub a_lines: Arc<dyn LinesOracle>,
    pub ma: Arc<dyn PointOracle>,
    pub ma_lines: Arc<dyn LinesOracle>,
    pub b: Arc<dyn PointOracle>,
    pub b_lines: Arc<dyn LinesOracle>,
    pub mb: Arc<dyn PointOracle>,
    pub mb_lines: Arc<dyn LinesOracle>,
}

type Pair = (Arc<dyn PointOracle>, Arc<dyn LinesOracle>);

pub(crate) fn honest_pair(p: &MultiPoly, d: usize) -> Result<Pair, OracleError> {
    let (pt, lines) = honest_oracles(p, d)?;
    Ok((Arc::new(pt), Arc::new(lines)))
}

impl PcpProof {
    pub(crate) fn from_pairs(chi: Pair, a: Pair, ma: Pair, b: Pair, mb: Pair) -> Self {
        Self {
            chi: chi.0,
            chi_lines: chi.1,
            a: a.0,
            a_lines: a.1,
            ma: ma.0,
            ma_lines: ma.1,
            b: b.0,
            b_lines: b.1,
            mb: mb.0,
            mb_lines: mb.1,
        }
    }

    /// A view with a fresh query counter on every oracle.
    pub fn metered(&self) -> PcpProof {
        fn p(o: &Arc<dyn PointOracle>) -> Arc<dyn PointOracle> {
            Arc::new(MeteredPoint::new(o.clone()))
        }
        fn l(o: &Arc<dyn LinesOracle>) -> Arc<dyn LinesOracle> {
            Arc::new(MeteredLines::new(o.clone()))
        }
        PcpProof {
            chi: p(&self.chi),
            chi_lines: l(&self.chi_lines),
            a: p(&self.a),
            a_lines: l(&self.a_lines),
            ma: p(&self.ma),
            ma_lines: l(&self.ma_lines),
            b: p(&self.b),
            b_lines: l(&self.b_lines),
            mb: p(&self.mb),
            mb_lines: l(&self.mb_lines),
        }
    }

    pub fn queries(&self) -> u64 {
        [&self.chi, &self.a, &self.ma, &self.b, &self.mb].iter().map(|o| o.queries()).sum::<u64>()
            + [&self.chi_lines, &self.a_lines, &self.ma_lines, &self.b_lines, &self.mb_lines]
                .iter()
                .map(|o| o.queries())
                .sum::<u64>()
    }

    /// Size of the string this proof stands for, oracle by oracle.
    pub fn implied_size(&self) -> Vec<OracleSize> {
        let q = self.chi.field().order() as f64;
        let bits = self.chi.field().element_bits() as u64;
        let mut out = Vec::new();
        let named: [(&'static str, &Arc<dyn PointOracle>, &Arc<dyn LinesOracle>); 5] = [
            ("chi", &self.chi, &self.chi_lines),
            ("A", &self.a, &self.a_lines),
            ("M_A", &self.ma, &self.ma_lines),
            ("B", &self.b, &self.b_lines),
            ("M_B", &self.mb, &self.mb_lines),
        ];
        for (name, pt, lines) in named {
            out.push(OracleSize { name: name.to_string(), entries_log2: pt.dim() as f64 * q.log2(), entry_bits: bits });
            out.push(OracleSize {
                name: format!("{name}_lines"),
                entries_log2: 2.0 * lines.dim() as f64 * q.log2(),
                entry_bits: (lines.degree() as u64 + 1) * bits,
            });
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct OracleSize {
    pub name: String,
    /// `log₂` of the number of table entries.
    pub entries_log2: f64,
    pub entry_bits: u64,
}

/// Honest proof of a proper coloring. Fails with "no certificate" when the
/// coloring is not proper.
pub fn pcp_prove(inst: &PcpInstance, coloring: &Coloring) -> Result<PcpProof, PcpError> {
    let d = inst.d();
    let polys = coloring_polys(inst, coloring)?;
    let ma = zero_certificate(&polys.a, &inst.v, &inst.g, 3 * d)?;
    let mb = zero_certificate(&polys.b, &inst.vv, &inst.gg, 6 * d)?;
    Ok(PcpProof::from_pairs(
        honest_pair(&polys.chi, d)?,
        honest_pair(&polys.a, 3 * d)?,
        honest_pair(&ma, 3 * d)?,
        honest_pair(&polys.b, 6 * d)?,
        honest_pair(&mb, 6 * d)?,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcpRandomness {
    pub a: Vec<Fe>,
    pub b: Vec<Fe>,
    pub alpha: Vec<Fe>,
    pub beta: Vec<Fe>,
    pub gamma1: Vec<Fe>,
    pub gamma2: Vec<Fe>,
    pub mu1: Vec<Fe>,
    pub mu2: Vec<Fe>,
    pub t: Fe,
}

impl PcpRandomness {
    /// Draws the components in declaration order.
    pub fn sample<S: Sampler + ?Sized>(inst: &PcpInstance, s: &mut S) -> Self {
        let field = inst.field();
        let (m, k, k2) = (inst.m(), inst.k(), inst.k2());
        Self {
            a: s.uniform_vec(field, m),
            b: s.uniform_vec(field, m),
            alpha: s.uniform_vec(field, 2 * m),
            beta: s.uniform_vec(field, 2 * m),
            gamma1: s.uniform_vec(field, m + k),
            gamma2: s.uniform_vec(field, m + k),
            mu1: s.uniform_vec(field, 2 * m + k2),
            mu2: s.uniform_vec(field, 2 * m + k2),
            t: s.nonzero(field),
        }
    }
}

fn concat(x: &[Fe], y: &[Fe]) -> Vec<Fe> {
    let mut v = x.to_vec();
    v.extend_from_slice(y);
    v
}

/// One run of the verifier on explicit randomness; always makes its 24
/// queries and decides afterwards.
pub fn pcp_verify(inst: &PcpInstance, proof: &PcpProof, r: &PcpRandomness) -> Result<Verdict, PcpError> {
    let field = inst.field();
    let d = inst.d();
    let m = inst.m();
    for (what, expected, found) in [
        ("a", m, r.a.len()),
        ("b", m, r.b.len()),
        ("alpha", 2 * m, r.alpha.len()),
        ("beta", 2 * m, r.beta.len()),
        ("chi", m, proof.chi.dim()),
        ("B", 2 * m, proof.b.dim()),
    ] {
        if expected != found {
            return Err(PcpError::DimensionMismatch { what, expected, found });
        }
    }
    let ab = concat(&r.a, &r.b);
    let chi_a = proof.chi.query(&r.a);
    let chi_b = proof.chi.query(&r.b);
    let a_a = proof.a.query(&r.a);
    let b_ab = proof.b.query(&ab);

    let ldt_chi = ldt_check(d, proof.chi.as_ref(), proof.chi_lines.as_ref(), &r.a, &r.b, r.t)?;
    let ldt_a = ldt_check(3 * d, proof.a.as_ref(), proof.a_lines.as_ref(), &r.a, &r.b, r.t)?;
    let ldt_b = ldt_check(6 * d, proof.b.as_ref(), proof.b_lines.as_ref(), &r.alpha, &r.beta, r.t)?;

    let one = field.one();
    let a_ok = a_a == chi_a * (chi_a - one) * (chi_a + one);
    let e_ab = inst.edge_plan.eval(&ab);
    let b_ok = b_ab == color_gaps(field).iter().fold(e_ab, |acc, &i| acc * (chi_a - chi_b - i));

    let za = ZeroRandomness { a: r.gamma1.clone(), b: r.gamma2.clone(), alpha: r.a.clone(), t: r.t };
    let zero_a = zero_verify(3 * d, &inst.g, proof.a.as_ref(), proof.ma.as_ref(), proof.ma_lines.as_ref(), &za)?;
    let zb = ZeroRandomness { a: r.mu1.clone(), b: r.mu2.clone(), alpha: r.alpha.clone(), t: r.t };
    let zero_b = zero_verify(6 * d, &inst.gg, proof.b.as_ref(), proof.mb.as_ref(), proof.mb_lines.as_ref(), &zb)?;

    let accept = ldt_chi.is_accept() && ldt_a.is_accept() && ldt_b.is_accept() && a_ok && b_ok;
    Ok(Verdict::from_bool(accept && zero_a.is_accept() && zero_b.is_accept()))
}

/// `reps` independent runs; rejects iff any run rejects.
pub fn pcp_verify_amplified<S: Sampler + ?Sized>(
    inst: &PcpInstance,
    proof: &PcpProof,
    reps: usize,
    s: &mut S,
) -> Result<Verdict, PcpError> {
    assert!(reps >= 1, "at least one repetition");
    let mut accept = true;
    for _ in 0..reps {
        let r = PcpRandomness::sample(inst, s);
        accept &= pcp_verify(inst, proof, &r)?.is_accept();
    }
    Ok(Verdict::from_bool(accept))
}
