//! Brute-force oracles shared by the integration tests. They work on plain
//! `u64` residues and do not reuse the library's linear algebra.
#![allow(dead_code)]

use vpcp::gf::{Fe, Field};
use vpcp::mpoly::{MonomialBasis, MultiPoly};

pub fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1 % q;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    r
}

/// Rank of a matrix over `F_q` by plain Gaussian elimination.
pub fn rank_mod(mut rows: Vec<Vec<u64>>, q: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] % q != 0) else { continue };
        rows.swap(rank, p);
        let inv = pow_mod(rows[rank][c], q - 2, q);
        let pivot: Vec<u64> = rows[rank].iter().map(|&x| x * inv % q).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] % q != 0 {
                let f = row[c] % q;
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + q * q - f * y % q) % q;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

pub fn residues(p: &[Fe]) -> Vec<u64> {
    p.iter().map(|x| x.value() as u64).collect()
}

/// Exponent vectors of all monomials of degree ≤ `d` in `m` variables.
pub fn monomials(m: usize, d: usize) -> Vec<Vec<u32>> {
    fn rec(m: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(m, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, d as u32, &mut Vec::new(), &mut out);
    out
}

pub fn eval_monomial(exps: &[u32], point: &[u64], q: u64) -> u64 {
    exps.iter().zip(point).fold(1, |acc, (&e, &x)| acc * pow_mod(x, e as u64, q) % q)
}

/// Term-by-term evaluation.
pub fn eval_poly(p: &MultiPoly, point: &[u64]) -> u64 {
    let q = p.field().modulus() as u64;
    p.terms().fold(0, |acc, (m, c)| (acc + c.value() as u64 * eval_monomial(m.exps(), point, q)) % q)
}

/// Rows = points, columns = monomials of degree ≤ `d`.
pub fn eval_rows(points: &[Vec<u64>], m: usize, d: usize, q: u64) -> Vec<Vec<u64>> {
    let mons = monomials(m, d);
    points.iter().map(|p| mons.iter().map(|e| eval_monomial(e, p, q)).collect()).collect()
}

/// `dim I(V)_{≤d}` as the kernel dimension of the evaluation map.
pub fn ideal_dim(points: &[Vec<u64>], m: usize, d: usize, q: u64) -> usize {
    let rows = eval_rows(points, m, d, q);
    let ncols = monomials(m, d).len();
    let transposed: Vec<Vec<u64>> = (0..ncols).map(|c| rows.iter().map(|r| r[c]).collect()).collect();
    ncols - rank_mod(transposed, q)
}

/// Dimension of `{Σ h_g g : deg(h_g g) ≤ d}`.
pub fn generated_dim(field: Field, m: usize, gens: &[MultiPoly], d: usize) -> usize {
    let q = field.modulus() as u64;
    let basis = MonomialBasis::new(m, d);
    let mut rows = Vec::new();
    for g in gens {
        if g.degree() > d {
            continue;
        }
        for mon in basis.monomials() {
            if mon.degree() as usize + g.degree() <= d {
                let prod = g.mul_monomial(mon, field.one());
                let coeffs = prod.with_degree_cap(d).unwrap().coeffs_in(&basis).unwrap();
                rows.push(residues(&coeffs));
            }
        }
    }
    if rows.is_empty() {
        0
    } else {
        rank_mod(rows, q)
    }
}

/// Least `D` such that every function `V → F_q` is the restriction of a
/// polynomial of degree ≤ `D`, found by trying all `q^{|V|}` functions.
pub fn brute_extension_degree(points: &[Vec<u64>], m: usize, q: u64) -> usize {
    let n = points.len();
    let total = q.pow(n as u32);
    let mut worst = 0;
    let max_d = (q as usize - 1) * m;
    let tables: Vec<Vec<Vec<u64>>> = (0..=max_d).map(|d| eval_rows(points, m, d, q)).collect();
    let ranks: Vec<usize> = tables.iter().map(|t| rank_mod(t.clone(), q)).collect();
    for code in 0..total {
        let f: Vec<u64> = (0..n).map(|i| code / q.pow(i as u32) % q).collect();
        let least = (worst..=max_d)
            .find(|&d| {
                let aug: Vec<Vec<u64>> = tables[d].iter().zip(&f).map(|(r, &v)| r.iter().copied().chain([v]).collect()).collect();
                rank_mod(aug, q) == ranks[d]
            })
            .expect("every function has an extension of degree (q-1)m");
        worst = worst.max(least);
    }
    worst
}
