use crate::gf::{Fe, Field, Matrix, SpanBasis};
use crate::mpoly::{MonomialBasis, MultiPoly};

use super::{monomial_column, Variety, VarietyError};

/// An ordered generating set; position `j` is the coordinate `y_j` of the
/// map `φ(z) = (g(z) : g ∈ 𝔊)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrobnerSet {
    field: Field,
    nvars: usize,
    generators: Vec<MultiPoly>,
}

impl GrobnerSet {
    pub fn new(field: Field, nvars: usize, generators: Vec<MultiPoly>) -> Result<Self, VarietyError> {
        if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(VarietyError::DimensionMismatch { expected: nvars, found: g.nvars() });
        }
        Ok(Self { field, nvars, generators })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Gröbner complexity `k`.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn max_degree(&self) -> usize {
        self.generators.iter().map(MultiPoly::degree).max().unwrap_or(0)
    }

    pub fn phi(&self, z: &[Fe]) -> Result<Vec<Fe>, VarietyError> {
        if z.len() != self.nvars {
            return Err(VarietyError::DimensionMismatch { expected: self.nvars, found: z.len() });
        }
        Ok(self.generators.iter().map(|g| g.eval(z).expect("dimension checked")).collect())
    }

    /// `self` on the first variables, `other` shifted past them.
    pub fn union_shifted(&self, other: &GrobnerSet) -> GrobnerSet {
        let nvars = self.nvars + other.nvars;
        let mut generators: Vec<MultiPoly> = self.generators.iter().map(|g| g.embed(nvars, 0)).collect();
        generators.extend(other.generators.iter().map(|g| g.embed(nvars, self.nvars)));
        GrobnerSet { field: self.field, nvars, generators }
    }
}

pub fn grobner_generating_set(v: &Variety) -> GrobnerSet {
    grobner_generating_set_ordered(v.field(), v.dim(), v.points())
}

/// Degree-by-degree construction on the points in the order given. Each round
/// keeps the kernel vectors of `E_i` not spanned by the degree-`< i` part of
/// the ideal and its single-variable multiples.
pub fn grobner_generating_set_ordered(field: Field, m: usize, points: &[Vec<Fe>]) -> GrobnerSet {
    let n = points.len();
    let mut generators = Vec::new();
    let mut prev_basis = MonomialBasis::new(m, 0);
    let mut prev_kernel: Vec<Vec<Fe>> = Vec::new();
    let mut prev_rank = 1.min(n);
    for i in 1.. {
        let basis = MonomialBasis::new(m, i);
        let cols: Vec<Vec<Fe>> = basis.monomials().iter().map(|mono| monomial_column(field, mono, points)).collect();
        let e = Matrix::from_columns(field, n, &cols).expect("one entry per point");
        let kernel = e.kernel_basis();

        let mut span = SpanBasis::new(field, basis.len());
        for a in &prev_kernel {
            let mut lifted = field.zeros(basis.len());
            lifted[..a.len()].copy_from_slice(a);
            span.insert(&lifted);
            for j in 0..m {
                let mut shifted = field.zeros(basis.len());
                for (mono, &c) in prev_basis.monomials().iter().zip(a) {
                    if !c.is_zero() {
                        shifted[basis.index_of(&mono.times_var(j)).expect("degree fits")] = c;
                    }
                }
                span.insert(&shifted);
            }
        }
        for a in &kernel {
            if span.insert(a) {
                let g = MultiPoly::from_coeffs(field, &basis, a);
                let d = g.degree();
                generators.push(g.with_degree_cap(d).expect("cap is the degree"));
            }
        }

        if prev_rank == n {
            break;
        }
        prev_rank = basis.len() - kernel.len();
        prev_basis = basis;
        prev_kernel = kernel;
    }
    GrobnerSet { field, nvars: m, generators }
}

/// `V₁ × V₂` with the union generating set and the degree bound `d₁ + d₂`.
#[derive(Clone, Debug)]
pub struct Product {
    pub variety: Variety,
    pub grobner: GrobnerSet,
    pub degree_bound: usize,
}

pub fn product(v1: &Variety, v2: &Variety, g1: &GrobnerSet, g2: &GrobnerSet) -> Result<Product, VarietyError> {
    if g1.nvars != v1.dim() {
        return Err(VarietyError::DimensionMismatch { expected: v1.dim(), found: g1.nvars });
    }
    if g2.nvars != v2.dim() {
        return Err(VarietyError::DimensionMismatch { expected: v2.dim(), found: g2.nvars });
    }
    Ok(Product {
        variety: v1.cartesian(v2)?,
        grobner: g1.union_shifted(g2),
        degree_bound: v1.extension_degree() + v2.extension_degree(),
    })
}
