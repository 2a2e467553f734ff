//! Recursive Horner form of a multivariate polynomial.
//!
//! Terms are arranged in a trie keyed by the exponent of `x1`, then `x2`, and
//! so on. Evaluating at a point or along a line walks the trie once, so the
//! cost is linear in the number of terms (times the output degree for lines),
//! instead of re-expanding `(a_i + t·b_i)^e` per term.

use crate::gf::{Fe, Field};

use super::{Line, MultiPoly, UniPoly};

#[derive(Clone, Debug)]
enum Node {
    Leaf(Fe),
    Branch {
        var: usize,
        /// Highest total degree in this subtree.
        degree: usize,
        /// `(exponent of var, child)` with exponents strictly descending.
        children: Vec<(u32, Node)>,
    },
}

#[derive(Clone, Debug)]
pub struct HornerPlan {
    field: Field,
    nvars: usize,
    root: Option<Node>,
}

impl HornerPlan {
    pub fn new(p: &MultiPoly) -> Self {
        let mut terms: Vec<(&[u32], Fe)> = p.terms().map(|(m, c)| (m.exps(), c)).collect();
        terms.sort_by(|a, b| b.0.cmp(a.0));
        let root = (!terms.is_empty()).then(|| build(&terms, 0, p.nvars()));
        Self { field: p.field(), nvars: p.nvars(), root }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Evaluates at `point`; the caller guarantees `point.len() == nvars`.
    pub fn eval(&self, point: &[Fe]) -> Fe {
        debug_assert_eq!(point.len(), self.nvars);
        match &self.root {
            None => self.field.zero(),
            Some(n) => eval_node(n, point, self.field),
        }
    }

    /// Coefficients of `P(a + t·b)`, padded to `d + 1` entries. Terms of
    /// degree above `d` are truncated away; callers pass `d ≥ deg P`.
    pub fn restrict(&self, line: &Line, d: usize) -> UniPoly {
        debug_assert_eq!(line.dim(), self.nvars);
        let mut out = match &self.root {
            None => vec![self.field.zero()],
            Some(n) => restrict_node(n, line, self.field),
        };
        out.resize(d + 1, self.field.zero());
        UniPoly::new(out)
    }
}

fn build(terms: &[(&[u32], Fe)], var: usize, nvars: usize) -> Node {
    if var == nvars {
        debug_assert_eq!(terms.len(), 1);
        return Node::Leaf(terms[0].1);
    }
    let mut children = Vec::new();
    let mut degree = 0;
    let mut start = 0;
    while start < terms.len() {
        let e = terms[start].0[var];
        let end = start + terms[start..].iter().take_while(|t| t.0[var] == e).count();
        let child = build(&terms[start..end], var + 1, nvars);
        degree = degree.max(e as usize + node_degree(&child));
        children.push((e, child));
        start = end;
    }
    Node::Branch { var, degree, children }
}

fn node_degree(n: &Node) -> usize {
    match n {
        Node::Leaf(_) => 0,
        Node::Branch { degree, .. } => *degree,
    }
}

fn eval_node(n: &Node, point: &[Fe], field: Field) -> Fe {
    match n {
        Node::Leaf(c) => *c,
        Node::Branch { var, children, .. } => {
            let x = point[*var];
            let mut acc = field.zero();
            let mut prev = children[0].0;
            for (e, child) in children {
                acc = acc * x.pow((prev - e) as u64) + eval_node(child, point, field);
                prev = *e;
            }
            acc * x.pow(prev as u64)
        }
    }
}

// Multiplies `acc` (live length `len`) in place by `a + b t`.
fn mul_linear(acc: &mut [Fe], len: &mut usize, a: Fe, b: Fe) {
    let n = *len;
    if n < acc.len() {
        acc[n] = acc[n - 1] * b;
        *len += 1;
    }
    for k in (1..n).rev() {
        acc[k] = acc[k] * a + acc[k - 1] * b;
    }
    acc[0] *= a;
}

fn restrict_node(n: &Node, line: &Line, field: Field) -> Vec<Fe> {
    match n {
        Node::Leaf(c) => vec![*c],
        Node::Branch { var, degree, children } => {
            let (a, b) = (line.base()[*var], line.slope()[*var]);
            let mut acc = field.zeros(degree + 1);
            let mut len = 1;
            let mut prev = children[0].0;
            for (e, child) in children {
                for _ in 0..(prev - e) {
                    mul_linear(&mut acc, &mut len, a, b);
                }
                let c = restrict_node(child, line, field);
                for (x, y) in acc.iter_mut().zip(&c) {
                    *x += *y;
                }
                len = len.max(c.len());
                prev = *e;
            }
            for _ in 0..prev {
                mul_linear(&mut acc, &mut len, a, b);
            }
            acc
        }
    }
}
