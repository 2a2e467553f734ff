use std::collections::HashMap;

use crate::gf::{Fe, GfError, Matrix};
use crate::mpoly::{monomials_of_degree, Monomial, MonomialBasis, MultiPoly};

use super::{vanishes_on, GrobnerSet, Variety, VarietyError};

/// Cofactors `h_g`, aligned with the generator order, such that
/// `Σ h_g·g = P` and `deg(h_g·g) ≤ deg P`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub degree: usize,
    pub cofactors: Vec<MultiPoly>,
}

/// `M(x, y) = Σ_g h_g(x)·y_g` over `m + k` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificatePoly {
    poly: MultiPoly,
    cofactors: Vec<MultiPoly>,
}

pub fn vanishing_certificate(p: &MultiPoly, v: &Variety, g: &GrobnerSet) -> Result<Certificate, VarietyError> {
    if g.nvars() != v.dim() {
        return Err(VarietyError::DimensionMismatch { expected: v.dim(), found: g.nvars() });
    }
    if !vanishes_on(p, v)? {
        return Err(VarietyError::NoCertificate);
    }
    solve_certificate(p, g)
}

/// Ideal membership with the degree bound, as linear solves over cofactor
/// coefficients with free coefficients set to zero.
///
/// The solve runs one homogeneous degree at a time, highest first: the top
/// component of `P` is matched by top components of `h_g·g`, the matched part
/// is subtracted, and the remainder (again in the ideal, of lower degree) is
/// handled the same way. When `g` has the generating property this always
/// succeeds on members; otherwise the single system over all cofactor
/// coefficients decides.
pub fn solve_certificate(p: &MultiPoly, g: &GrobnerSet) -> Result<Certificate, VarietyError> {
    if p.nvars() != g.nvars() {
        return Err(VarietyError::DimensionMismatch { expected: g.nvars(), found: p.nvars() });
    }
    let degree = p.degree();
    let cofactors = match solve_graded(p, g) {
        Some(c) => c,
        None => solve_full(p, g)?,
    };
    let cert = Certificate { degree, cofactors };
    if cert.combine(g) != *p {
        return Err(VarietyError::NoCertificate);
    }
    Ok(cert)
}

fn homogeneous_part(p: &MultiPoly, e: usize) -> MultiPoly {
    let field = p.field();
    let terms = p.terms().filter(|(mono, _)| mono.degree() as usize == e).map(|(mono, c)| (mono.exps().to_vec(), c));
    MultiPoly::from_terms(field, p.nvars(), e, terms).expect("terms of degree e")
}

fn solve_graded(p: &MultiPoly, g: &GrobnerSet) -> Option<Vec<MultiPoly>> {
    let field = g.field();
    let m = g.nvars();
    let tops: Vec<MultiPoly> = g.generators().iter().map(|gen| homogeneous_part(gen, gen.degree())).collect();
    let mut cofactors = vec![MultiPoly::zero(field, m, 0); g.len()];
    let mut rest = p.clone();
    while !rest.is_zero() {
        let e = rest.degree();
        let rows: Vec<Monomial> = monomials_of_degree(m, e as u32);
        let row_index: HashMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, mono)| (mono, i)).collect();
        let mut columns = Vec::new();
        let mut owners = Vec::new();
        for (gi, (gen, top)) in g.generators().iter().zip(&tops).enumerate() {
            if gen.degree() > e || gen.is_zero() {
                continue;
            }
            for mono in monomials_of_degree(m, (e - gen.degree()) as u32) {
                let mut col = field.zeros(rows.len());
                for (tm, c) in top.terms() {
                    col[row_index[&tm.mul(&mono)]] = c;
                }
                columns.push(col);
                owners.push((gi, mono));
            }
        }
        if columns.is_empty() {
            return None;
        }
        let mut rhs = field.zeros(rows.len());
        for (mono, c) in rest.terms().filter(|(mono, _)| mono.degree() as usize == e) {
            rhs[row_index[mono]] = c;
        }
        let x = Matrix::from_columns(field, rows.len(), &columns).ok()?.solve(&rhs).ok()?;
        let mut step = vec![MultiPoly::zero(field, m, 0); g.len()];
        for ((gi, mono), c) in owners.into_iter().zip(x) {
            if !c.is_zero() {
                step[gi] = step[gi].add(&MultiPoly::constant(field, m, c).mul_monomial(&mono, field.one()));
            }
        }
        for (gi, h) in step.iter().enumerate() {
            if !h.is_zero() {
                rest = rest.sub(&h.mul(&g.generators()[gi]));
                cofactors[gi] = cofactors[gi].add(h);
            }
        }
        if !rest.is_zero() && rest.degree() >= e {
            return None;
        }
    }
    Some(cofactors)
}

fn solve_full(p: &MultiPoly, g: &GrobnerSet) -> Result<Vec<MultiPoly>, VarietyError> {
    let field = g.field();
    let m = g.nvars();
    let degree = p.degree();
    let zero_cofactor = || MultiPoly::zero(field, m, 0);
    if p.is_zero() {
        return Ok(vec![zero_cofactor(); g.len()]);
    }
    let target = MonomialBasis::new(m, degree);
    let mut columns = Vec::new();
    let mut owners = Vec::new();
    let mut cofactor_bases = Vec::new();
    for (gi, gen) in g.generators().iter().enumerate() {
        if gen.degree() > degree {
            cofactor_bases.push(None);
            continue;
        }
        let hb = MonomialBasis::new(m, degree - gen.degree());
        for mono in hb.monomials() {
            let prod = gen.mul_monomial(mono, field.one());
            columns.push(prod.coeffs_in(&target).expect("product degree within bound"));
            owners.push(gi);
        }
        cofactor_bases.push(Some(hb));
    }
    if columns.is_empty() {
        return Err(VarietyError::NoCertificate);
    }
    let rhs = p.coeffs_in(&target).expect("target basis has degree deg P");
    let a = Matrix::from_columns(field, target.len(), &columns)?;
    let x = match a.solve(&rhs) {
        Ok(x) => x,
        Err(GfError::NoSolution) => return Err(VarietyError::NoCertificate),
        Err(e) => return Err(e.into()),
    };
    let mut coeffs: Vec<Vec<Fe>> = vec![Vec::new(); g.len()];
    for (&gi, &c) in owners.iter().zip(&x) {
        coeffs[gi].push(c);
    }
    Ok(cofactor_bases
        .iter()
        .zip(&coeffs)
        .map(|(hb, c)| match hb {
            Some(hb) => MultiPoly::from_coeffs(field, hb, c),
            None => zero_cofactor(),
        })
        .collect())
}

impl Certificate {
    /// `Σ h_g·g`.
    pub fn combine(&self, g: &GrobnerSet) -> MultiPoly {
        let field = g.field();
        let mut sum = MultiPoly::zero(field, g.nvars(), 0);
        for (h, gen) in self.cofactors.iter().zip(g.generators()) {
            sum = sum.add(&h.mul(gen));
        }
        sum
    }
}

pub fn certificate_poly(cert: &Certificate, g: &GrobnerSet) -> CertificatePoly {
    let field = g.field();
    let (m, k) = (g.nvars(), g.len());
    let mut poly = MultiPoly::zero(field, m + k, 0);
    for (j, h) in cert.cofactors.iter().enumerate() {
        poly = poly.add(&h.embed(m + k, 0).mul(&MultiPoly::var(field, m + k, m + j)));
    }
    let cap = cert.degree.max(poly.degree());
    CertificatePoly { poly: poly.with_degree_cap(cap).expect("cap covers degree"), cofactors: cert.cofactors.clone() }
}

impl CertificatePoly {
    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly {
        self.poly
    }

    pub fn cofactors(&self) -> &[MultiPoly] {
        &self.cofactors
    }

    /// `M(x, 0)` as a polynomial in `x`.
    pub fn at_zero(&self, g: &GrobnerSet) -> MultiPoly {
        let field = g.field();
        let m = g.nvars();
        let mut subs: Vec<MultiPoly> = (0..m).map(|i| MultiPoly::var(field, m, i)).collect();
        subs.extend((0..g.len()).map(|_| MultiPoly::zero(field, m, 0)));
        self.poly.compose(&subs).expect("substitution count matches")
    }

    /// `M(x, φ(x))` as a polynomial in `x`.
    pub fn at_phi(&self, g: &GrobnerSet) -> MultiPoly {
        let field = g.field();
        let m = g.nvars();
        let mut subs: Vec<MultiPoly> = (0..m).map(|i| MultiPoly::var(field, m, i)).collect();
        subs.extend(g.generators().iter().cloned());
        self.poly.compose(&subs).expect("substitution count matches")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::mpoly::Monomial;
    use crate::variety::grobner_generating_set;

    fn f(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    fn parse(fq: Field, m: usize, s: &str) -> MultiPoly {
        MultiPoly::parse(fq, m, s).unwrap()
    }

    fn ball2(fq: Field) -> (Variety, GrobnerSet) {
        let v = Variety::from_u64_points(fq, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let g = grobner_generating_set(&v);
        (v, g)
    }

    #[test]
    fn cubic_in_two_generators() {
        let fq = f(7);
        let g = GrobnerSet::new(fq, 2, vec![parse(fq, 2, "x1^2"), parse(fq, 2, "x1*x2 - x2^2")]).unwrap();
        let p = parse(fq, 2, "x2^3");
        let cert = solve_certificate(&p, &g).unwrap();
        assert_eq!(cert.cofactors[0], parse(fq, 2, "x2"));
        assert_eq!(cert.cofactors[1], parse(fq, 2, "x1 + x2").neg());
        assert_eq!(cert.combine(&g), p);
        for (h, gen) in cert.cofactors.iter().zip(g.generators()) {
            assert!(h.mul(gen).degree() <= 3);
        }
        // y has degree one, so M = x2*y1 - (x1 + x2)*y2 has degree 2 under the cap 3.
        let cp = certificate_poly(&cert, &g);
        assert_eq!(cp.poly().degree_cap(), 3);
        assert_eq!(cp.poly().degree(), 2);
        assert_eq!(cp.at_phi(&g), p);
    }

    #[test]
    fn generator_itself() {
        let fq = f(5);
        let (v, g) = ball2(fq);
        let p = parse(fq, 2, "x1^2 - x1");
        let cert = vanishing_certificate(&p, &v, &g).unwrap();
        assert_eq!(cert.cofactors.iter().filter(|h| !h.is_zero()).count(), 1);
        assert_eq!(cert.cofactors[0], MultiPoly::constant(fq, 2, fq.one()));
    }

    #[test]
    fn zero_and_non_members() {
        let fq = f(5);
        let (v, g) = ball2(fq);
        let cert = vanishing_certificate(&MultiPoly::zero(fq, 2, 0), &v, &g).unwrap();
        assert!(cert.cofactors.iter().all(MultiPoly::is_zero));
        assert!(certificate_poly(&cert, &g).poly().is_zero());
        assert_eq!(vanishing_certificate(&parse(fq, 2, "x1 + x2"), &v, &g), Err(VarietyError::NoCertificate));
        // In the ideal generated, but not with the degree bound.
        let g2 = GrobnerSet::new(fq, 2, vec![parse(fq, 2, "x1^2")]).unwrap();
        assert_eq!(solve_certificate(&parse(fq, 2, "x1"), &g2), Err(VarietyError::NoCertificate));
    }

    #[test]
    fn certificate_poly_of_x1x2() {
        let fq = f(5);
        let (v, g) = ball2(fq);
        let p = parse(fq, 2, "x1*x2");
        let cp = certificate_poly(&vanishing_certificate(&p, &v, &g).unwrap(), &g);
        let idx = g.generators().iter().position(|gen| *gen == p).unwrap();
        assert_eq!(cp.poly(), &MultiPoly::var(fq, 5, 2 + idx));
        assert_eq!(cp.at_phi(&g), p);
        assert!(cp.at_zero(&g).is_zero());
    }

    #[test]
    fn graded_and_full_solves_agree_on_membership() {
        use rand::SeedableRng;
        let fq = f(7);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        let v = Variety::from_u64_points(fq, &[&[0, 1], &[2, 3], &[4, 4], &[6, 0]]).unwrap();
        let g = grobner_generating_set(&v);
        for _ in 0..30 {
            let mut p = MultiPoly::zero(fq, 2, 0);
            for gen in g.generators() {
                p = p.add(&MultiPoly::random(fq, 2, 2, &mut rng).mul(gen));
            }
            let graded = solve_graded(&p, &g).expect("members reduce degree by degree");
            let full = solve_full(&p, &g).unwrap();
            for c in [graded, full] {
                let cert = Certificate { degree: p.degree(), cofactors: c };
                assert_eq!(cert.combine(&g), p);
                for (h, gen) in cert.cofactors.iter().zip(g.generators()) {
                    assert!(h.is_zero() || h.degree() + gen.degree() <= p.degree());
                }
            }
        }
    }

    #[test]
    fn cubic_on_two_points() {
        let fq = f(11);
        let v = Variety::from_u64_points(fq, &[&[1], &[2]]).unwrap();
        let g = grobner_generating_set(&v);
        let p = parse(fq, 1, "x1 - 1").mul(&parse(fq, 1, "x1 - 2")).mul(&parse(fq, 1, "x1"));
        let cert = vanishing_certificate(&p, &v, &g).unwrap();
        let h = &cert.cofactors[0];
        assert_eq!(h.degree(), 1);
        assert!(h.coeff(&Monomial::one(1)).is_zero());
        assert_eq!(h.mul(&g.generators()[0]), p);
    }
}
