use std::cmp::Ordering;
use std::collections::HashMap;

/// Exponent vector of a monomial `x1^e1 ⋯ xm^em`.
///
/// Ordered graded-lexicographically: total degree first, then exponents
/// compared left to right, so `1 < x2 < x1 < x2² < x1x2 < x1²`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// This monomial times `x_i`.
    pub fn times_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// Re-embeds into `nvars` variables starting at `offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[offset..offset + self.0.len()].copy_from_slice(&self.0);
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `C(m + d, d)`, the number of monomials of degree at most `d` in `m` variables.
pub fn monomial_count(m: usize, d: usize) -> usize {
    let mut c: u128 = 1;
    for i in 1..=d as u128 {
        c = c * (m as u128 + i) / i;
    }
    usize::try_from(c).expect("monomial count overflows usize")
}

/// All exponent vectors of total degree exactly `d` in `m` variables, with the
/// first variable's exponent descending (`x1², x1x2, x2²` for `m = d = 2`).
pub fn monomials_of_degree(m: usize, d: u32) -> Vec<Monomial> {
    fn fill(prefix: &mut Vec<u32>, m: usize, left: u32, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == m {
            prefix.push(left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            fill(prefix, m, left - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    fill(&mut Vec::with_capacity(m), m, d, &mut out);
    out
}

/// The ordered monomial basis of degree-`≤ d` polynomials in `m` variables.
///
/// Order: by degree ascending, then with the first variable's exponent
/// descending. This is the column order of every evaluation matrix, so
/// `(1, x1, x2)` for `m = 2, d = 1`. A basis of degree `d` is a prefix of the
/// basis of degree `d + 1`.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    nvars: usize,
    degree: usize,
    list: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: usize) -> Self {
        let mut list = Vec::with_capacity(monomial_count(nvars, degree));
        for d in 0..=degree as u32 {
            list.extend(monomials_of_degree(nvars, d));
        }
        let index = list.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Self { nvars, degree, list, index }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.list
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Number of basis elements of degree `≤ d` (a prefix length).
    pub fn prefix_len(&self, d: usize) -> usize {
        monomial_count(self.nvars, d.min(self.degree))
    }
}
