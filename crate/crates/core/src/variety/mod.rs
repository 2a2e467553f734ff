//! Finite point sets in `F_q^m`: extension degree, low-degree extension,
//! Gröbner generating sets, products and vanishing certificates.

mod certificate;
mod grobner;
mod spec;

use std::sync::OnceLock;

pub use certificate::{certificate_poly, solve_certificate, vanishing_certificate, Certificate, CertificatePoly};
pub use grobner::{grobner_generating_set, grobner_generating_set_ordered, product, GrobnerSet, Product};
pub use spec::{make_variety, parse_points, VarietySpec};

use crate::gf::{Fe, Field, GfError, Matrix, SpanBasis};
use crate::mpoly::{monomials_of_degree, Monomial, MonomialBasis, MultiPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VarietyError {
    #[error("a variety needs at least one point")]
    Empty,
    #[error("point {index} has dimension {found}, expected {expected}")]
    PointDimension { index: usize, expected: usize, found: usize },
    #[error("point {0:?} appears twice")]
    DuplicatePoint(Vec<u32>),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polynomial does not vanish on the variety")]
    NotVanishing,
    #[error("no certificate: polynomial is not in the ideal with the degree bound")]
    NoCertificate,
    #[error("bad variety spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// A nonempty finite set of distinct points in `F_q^m`.
///
/// Points keep the order they were given in; [`Variety::new`] sorts them
/// lexicographically, which is the order graph vertices are indexed by.
#[derive(Debug)]
pub struct Variety {
    field: Field,
    m: usize,
    points: Vec<Vec<Fe>>,
    extension_degree: usize,
    extender: OnceLock<Matrix>,
}

impl Clone for Variety {
    fn clone(&self) -> Self {
        Self {
            field: self.field,
            m: self.m,
            points: self.points.clone(),
            extension_degree: self.extension_degree,
            extender: self.extender.clone(),
        }
    }
}

impl PartialEq for Variety {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.m == other.m && self.points == other.points
    }
}

impl Variety {
    pub fn new(field: Field, m: usize, mut points: Vec<Vec<Fe>>) -> Result<Self, VarietyError> {
        points.sort_by(|a, b| cmp_points(a, b));
        Self::new_ordered(field, m, points)
    }

    /// Like [`Variety::new`] but keeps the given point order.
    pub fn new_ordered(field: Field, m: usize, points: Vec<Vec<Fe>>) -> Result<Self, VarietyError> {
        if points.is_empty() {
            return Err(VarietyError::Empty);
        }
        for (index, p) in points.iter().enumerate() {
            if p.len() != m {
                return Err(VarietyError::PointDimension { index, expected: m, found: p.len() });
            }
        }
        let mut seen = std::collections::HashSet::new();
        for p in &points {
            if !seen.insert(p.clone()) {
                return Err(VarietyError::DuplicatePoint(p.iter().map(|x| x.value()).collect()));
            }
        }
        let extension_degree = compute_extension_degree(field, m, &points);
        Ok(Self { field, m, points, extension_degree, extender: OnceLock::new() })
    }

    pub fn from_u64_points(field: Field, points: &[&[u64]]) -> Result<Self, VarietyError> {
        let m = points.first().map_or(0, |p| p.len());
        Self::new(field, m, points.iter().map(|p| p.iter().map(|&v| field.elem(v)).collect()).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Ambient dimension `m`.
    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> &[Vec<Fe>] {
        &self.points
    }

    pub fn point_index(&self, p: &[Fe]) -> Option<usize> {
        self.points.iter().position(|q| q.as_slice() == p)
    }

    /// Least `d` such that every function on the points extends to degree `d`.
    pub fn extension_degree(&self) -> usize {
        self.extension_degree
    }

    /// Cartesian product `self × other`, in lexicographic pair order.
    pub fn cartesian(&self, other: &Variety) -> Result<Variety, VarietyError> {
        if self.field != other.field {
            return Err(VarietyError::Spec("product of varieties over different fields".into()));
        }
        let mut points = Vec::with_capacity(self.len() * other.len());
        for u in &self.points {
            for v in &other.points {
                let mut p = u.clone();
                p.extend_from_slice(v);
                points.push(p);
            }
        }
        Variety::new_ordered(self.field, self.m + other.m, points)
    }

    fn extender(&self) -> &Matrix {
        self.extender.get_or_init(|| {
            evaluation_matrix(self, self.extension_degree)
                .right_inverse()
                .expect("E_d has full row rank by definition of the extension degree")
        })
    }
}

fn cmp_points(a: &[Fe], b: &[Fe]) -> std::cmp::Ordering {
    a.iter().map(|x| x.value()).cmp(b.iter().map(|x| x.value()))
}

fn eval_monomial(field: Field, mono: &Monomial, p: &[Fe]) -> Fe {
    mono.exps().iter().zip(p).fold(field.one(), |acc, (&e, &x)| acc * x.pow(e as u64))
}

fn monomial_column(field: Field, mono: &Monomial, points: &[Vec<Fe>]) -> Vec<Fe> {
    points.iter().map(|p| eval_monomial(field, mono, p)).collect()
}

fn compute_extension_degree(field: Field, m: usize, points: &[Vec<Fe>]) -> usize {
    let n = points.len();
    let mut span = SpanBasis::new(field, n);
    let mut i = 0;
    loop {
        for mono in monomials_of_degree(m, i as u32) {
            span.insert(&monomial_column(field, &mono, points));
            if span.dim() == n {
                return i;
            }
        }
        i += 1;
    }
}

/// `E_i`: rows are points, columns the monomials of degree `≤ i` in
/// [`MonomialBasis`] order.
pub fn evaluation_matrix(v: &Variety, i: usize) -> Matrix {
    let basis = MonomialBasis::new(v.m, i);
    let cols: Vec<Vec<Fe>> = basis.monomials().iter().map(|mono| monomial_column(v.field, mono, &v.points)).collect();
    Matrix::from_columns(v.field, v.len(), &cols).expect("columns have one entry per point")
}

/// The extension of `values` (one per point of `v`, in point order) obtained
/// from a fixed right inverse of `E_d`; its degree is at most `d`.
pub fn low_degree_extension(v: &Variety, values: &[Fe]) -> Result<MultiPoly, VarietyError> {
    if values.len() != v.len() {
        return Err(VarietyError::DimensionMismatch { expected: v.len(), found: values.len() });
    }
    let coeffs = v.extender().mul_vec(values)?;
    let basis = MonomialBasis::new(v.m, v.extension_degree);
    Ok(MultiPoly::from_coeffs(v.field, &basis, &coeffs))
}

/// Uniform element of `𝕀(V)_{≤ degree}`: a random combination of a kernel
/// basis of `E_degree`.
pub fn random_vanishing<R: rand::Rng + ?Sized>(v: &Variety, degree: usize, rng: &mut R) -> MultiPoly {
    let basis = MonomialBasis::new(v.m, degree);
    let mut coeffs = v.field.zeros(basis.len());
    for k in evaluation_matrix(v, degree).kernel_basis() {
        let c = v.field.sample(rng, false);
        for (x, y) in coeffs.iter_mut().zip(k) {
            *x += c * y;
        }
    }
    MultiPoly::from_coeffs(v.field, &basis, &coeffs)
}

pub fn vanishes_on(p: &MultiPoly, v: &Variety) -> Result<bool, VarietyError> {
    if p.nvars() != v.m {
        return Err(VarietyError::DimensionMismatch { expected: v.m, found: p.nvars() });
    }
    let plan = p.plan();
    Ok(v.points.iter().all(|x| plan.eval(x).is_zero()))
}
