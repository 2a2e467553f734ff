use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::Rng;

use crate::gf::{Fe, Field};

use super::horner::HornerPlan;
use super::{Line, Monomial, MonomialBasis, PolyError, UniPoly};

/// Multivariate polynomial over `F_q` with a declared degree bound.
///
/// Only nonzero coefficients are stored, keyed by exponent vector in
/// graded-lex order. Equality compares the polynomials, not the caps.
#[derive(Clone)]
pub struct MultiPoly {
    field: Field,
    nvars: usize,
    degree_cap: usize,
    terms: BTreeMap<Monomial, Fe>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.nvars == other.nvars && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(field: Field, nvars: usize, degree_cap: usize) -> Self {
        Self { field, nvars, degree_cap, terms: BTreeMap::new() }
    }

    pub fn constant(field: Field, nvars: usize, c: Fe) -> Self {
        let mut p = Self::zero(field, nvars, 0);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The polynomial `x_i` (0-indexed).
    pub fn var(field: Field, nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(field, nvars, 1);
        p.add_term(Monomial::var(nvars, i), field.one());
        p
    }

    /// Builds from `(exponents, coefficient)` pairs; like terms are summed.
    pub fn from_terms<I>(field: Field, nvars: usize, degree_cap: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, Fe)>,
    {
        let mut p = Self::zero(field, nvars, degree_cap);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(PolyError::DimensionMismatch { expected: nvars, found: e.len() });
            }
            let m = Monomial::new(e);
            if m.degree() as usize > degree_cap {
                return Err(PolyError::DegreeExceedsCap { degree: m.degree() as usize, cap: degree_cap });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Convenience constructor; the cap is the actual degree.
    pub fn from_u64_terms(field: Field, nvars: usize, terms: &[(&[u32], u64)]) -> Self {
        let cap = terms.iter().map(|(e, _)| e.iter().sum::<u32>() as usize).max().unwrap_or(0);
        Self::from_terms(field, nvars, cap, terms.iter().map(|(e, c)| (e.to_vec(), field.elem(*c))))
            .expect("well-formed literal polynomial")
    }

    /// Interprets `coeffs` as coordinates in `basis`.
    pub fn from_coeffs(field: Field, basis: &MonomialBasis, coeffs: &[Fe]) -> Self {
        assert!(coeffs.len() <= basis.len());
        let mut p = Self::zero(field, basis.nvars(), basis.degree());
        for (m, &c) in basis.monomials().iter().zip(coeffs) {
            p.add_term(m.clone(), c);
        }
        p
    }

    /// Coordinates in `basis`, or `None` if some term lies outside it.
    pub fn coeffs_in(&self, basis: &MonomialBasis) -> Option<Vec<Fe>> {
        let mut v = self.field.zeros(basis.len());
        for (m, &c) in &self.terms {
            v[basis.index_of(m)?] = c;
        }
        Some(v)
    }

    pub fn random<R: Rng + ?Sized>(field: Field, nvars: usize, d: usize, rng: &mut R) -> Self {
        let basis = MonomialBasis::new(nvars, d);
        let coeffs: Vec<Fe> = (0..basis.len()).map(|_| field.sample(rng, false)).collect();
        Self::from_coeffs(field, &basis, &coeffs)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, |m| m.degree() as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, Fe)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> Fe {
        self.terms.get(m).copied().unwrap_or(self.field.zero())
    }

    pub fn with_degree_cap(mut self, cap: usize) -> Result<Self, PolyError> {
        let d = self.degree();
        if d > cap {
            return Err(PolyError::DegreeExceedsCap { degree: d, cap });
        }
        self.degree_cap = cap;
        Ok(self)
    }

    fn add_term(&mut self, m: Monomial, c: Fe) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.nvars);
        self.degree_cap = self.degree_cap.max(m.degree() as usize);
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &MultiPoly) {
        assert_eq!(self.nvars, other.nvars, "polynomials have different variable counts");
        assert_eq!(self.field, other.field, "polynomials live over different fields");
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check_compatible(other);
        let mut out = self.clone();
        out.degree_cap = self.degree_cap.max(other.degree_cap);
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -*c;
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: Fe) -> MultiPoly {
        if s.is_zero() {
            return MultiPoly::zero(self.field, self.nvars, self.degree_cap);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= s;
        }
        out
    }

    pub fn add_constant(&self, c: Fe) -> MultiPoly {
        let mut out = self.clone();
        out.add_term(Monomial::one(self.nvars), c);
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_compatible(other);
        let mut acc: HashMap<Monomial, Fe> = HashMap::new();
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(self.field.zero());
                *e += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MultiPoly { field: self.field, nvars: self.nvars, degree_cap: self.degree_cap + other.degree_cap, terms }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.field, self.nvars, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by the monomial `m`.
    pub fn mul_monomial(&self, m: &Monomial, c: Fe) -> MultiPoly {
        let mut out = MultiPoly::zero(self.field, self.nvars, self.degree_cap + m.degree() as usize);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(k, &v)| (k.mul(m), v * c)).collect();
        out
    }

    pub fn eval(&self, point: &[Fe]) -> Result<Fe, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::DimensionMismatch { expected: self.nvars, found: point.len() });
        }
        // Precomputed powers keep this linear in the number of terms.
        let max_e = self.terms.keys().flat_map(|m| m.exps().iter().copied()).max().unwrap_or(0) as usize;
        let powers: Vec<Vec<Fe>> = point
            .iter()
            .map(|&x| {
                let mut p = Vec::with_capacity(max_e + 1);
                let mut acc = self.field.one();
                for _ in 0..=max_e {
                    p.push(acc);
                    acc *= x;
                }
                p
            })
            .collect();
        let mut sum = self.field.zero();
        for (m, &c) in &self.terms {
            let mut t = c;
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t *= powers[i][e as usize];
                }
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Compiled form for repeated evaluation and line restriction.
    pub fn plan(&self) -> HornerPlan {
        HornerPlan::new(self)
    }

    /// Formal composition `P(a + t·b)` expanded in `t`, with exactly
    /// `degree_cap + 1` coefficients. Valid for any cap, including `cap ≥ q`.
    pub fn line_restrict(&self, line: &Line) -> Result<UniPoly, PolyError> {
        if line.dim() != self.nvars {
            return Err(PolyError::DimensionMismatch { expected: self.nvars, found: line.dim() });
        }
        Ok(self.plan().restrict(line, self.degree_cap))
    }

    /// Substitutes `subs[i]` for `x_i`. All substitutes must share a variable count.
    pub fn compose(&self, subs: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
        if subs.len() != self.nvars {
            return Err(PolyError::DimensionMismatch { expected: self.nvars, found: subs.len() });
        }
        let target = subs.first().map_or(0, MultiPoly::nvars);
        if let Some(bad) = subs.iter().find(|s| s.nvars != target) {
            return Err(PolyError::DimensionMismatch { expected: target, found: bad.nvars });
        }
        let cap = self
            .terms
            .keys()
            .map(|m| m.exps().iter().zip(subs).map(|(&e, s)| e as usize * s.degree()).sum::<usize>())
            .max()
            .unwrap_or(0);
        let mut powers: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero(self.field, target, cap);
        for (m, &c) in &self.terms {
            let mut t = MultiPoly::constant(self.field, target, c);
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers.entry((i, e)).or_insert_with(|| subs[i].pow(e));
                t = t.mul(p);
            }
            out = out.add(&t);
        }
        out.degree_cap = cap.max(out.degree());
        Ok(out)
    }

    /// Moves into `nvars` variables, occupying positions `offset..offset + self.nvars()`.
    pub fn embed(&self, nvars: usize, offset: usize) -> MultiPoly {
        assert!(offset + self.nvars <= nvars);
        MultiPoly {
            field: self.field,
            nvars,
            degree_cap: self.degree_cap,
            terms: self.terms.iter().map(|(m, &c)| (m.embed(nvars, offset), c)).collect(),
        }
    }

    /// Parses the canonical text form, e.g. `3*x1^2 + x1*x2 + 4`. A leading
    /// `-` on a term negates it.
    pub fn parse(field: Field, nvars: usize, text: &str) -> Result<MultiPoly, PolyError> {
        let bad = |msg: &str| PolyError::Parse(format!("{msg} in {text:?}"));
        let mut p = MultiPoly::zero(field, nvars, 0);
        let normalized = text.replace(" - ", " + -");
        for raw in normalized.split('+') {
            let mut term = raw.trim();
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let mut coeff = field.one();
            if let Some(rest) = term.strip_prefix('-') {
                coeff = -coeff;
                term = rest.trim();
            }
            let mut exps = vec![0u32; nvars];
            for factor in term.split('*') {
                let factor = factor.trim();
                if let Some(var) = factor.strip_prefix('x') {
                    let (idx, e) = match var.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                        None => (var, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad("bad variable index"))?;
                    if idx == 0 || idx > nvars {
                        return Err(bad("variable index out of range"));
                    }
                    exps[idx - 1] += e;
                } else {
                    let v: u64 = factor.parse().map_err(|_| bad("bad coefficient"))?;
                    coeff *= field.elem(v);
                }
            }
            p.add_term(Monomial::new(exps), coeff);
        }
        Ok(p)
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical form: terms in descending graded-lex order joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
                .collect();
            match (vars.is_empty(), c.value() == 1) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{c}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}; m={}, cap={}]({self})", self.field, self.nvars, self.degree_cap)
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::mul(self, rhs)
    }
}
