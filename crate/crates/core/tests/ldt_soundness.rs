//! Point-vs-line soundness against the strongest lines table: every line
//! answers with the degree-d univariate that best fits f on that line.

mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vpcp::gf::{AffineSpace, Field};
use vpcp::ldt::ldt_check;
use vpcp::mpoly::{Line, MultiPoly, UniPoly};
use vpcp::oracle::{corrupt_exact, honest_oracles, materialize_point, LinesOracle, PointOracle, QueryCounter, TablePoint};

use common::{monomials, eval_monomial, residues};

struct BestFitLines {
    field: Field,
    dim: usize,
    degree: usize,
    space: AffineSpace,
    entries: Vec<UniPoly>,
    counter: QueryCounter,
}

impl BestFitLines {
    fn new(f: &TablePoint, degree: usize) -> Self {
        let field = f.field();
        let dim = f.dim();
        let q = field.order();
        let space = AffineSpace::new(field, 2 * dim);
        let candidates: Vec<UniPoly> = (0..q.pow(degree as u32 + 1))
            .map(|code| UniPoly::new((0..=degree as u32).map(|i| field.elem(code / q.pow(i) % q)).collect()))
            .collect();
        let entries = space
            .points()
            .map(|key| {
                let line = Line::from_key(&key);
                let on_line: Vec<_> = field.nonzero_elements().map(|t| (t, f.answer(&line.at(t)))).collect();
                candidates
                    .iter()
                    .max_by_key(|c| (on_line.iter().filter(|(t, v)| c.eval(*t) == *v).count(), std::cmp::Reverse(c.coeffs().to_vec())))
                    .unwrap()
                    .clone()
            })
            .collect();
        Self { field, dim, degree, space, entries, counter: QueryCounter::new() }
    }
}

impl LinesOracle for BestFitLines {
    fn field(&self) -> Field {
        self.field
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn degree(&self) -> usize {
        self.degree
    }
    fn answer(&self, line: &Line) -> UniPoly {
        self.entries[self.space.index(&line.key()) as usize].clone()
    }
    fn counter(&self) -> &QueryCounter {
        &self.counter
    }
}

/// Distance from `f` to the nearest polynomial of degree ≤ `d`, by
/// enumerating every such polynomial.
fn min_distance(f: &TablePoint, d: usize) -> (usize, usize) {
    let q = f.field().order();
    let space = AffineSpace::new(f.field(), f.dim());
    let mons = monomials(f.dim(), d);
    let evals: Vec<Vec<u64>> = space.points().map(|p| mons.iter().map(|e| eval_monomial(e, &residues(&p), q)).collect()).collect();
    let values = residues(f.values());
    let mut best = usize::MAX;
    let mut at_best = 0;
    for code in 0..q.pow(mons.len() as u32) {
        let coeffs: Vec<u64> = (0..mons.len() as u32).map(|i| code / q.pow(i) % q).collect();
        let mut dist = 0;
        for (row, &v) in evals.iter().zip(&values) {
            let g = row.iter().zip(&coeffs).map(|(a, b)| a * b).sum::<u64>() % q;
            dist += (g != v) as usize;
            if dist > best {
                break;
            }
        }
        if dist < best {
            best = dist;
            at_best = 1;
        } else if dist == best {
            at_best += 1;
        }
    }
    (best, at_best)
}

#[test]
fn rejection_rate_bounds_distance() {
    let field = Field::new(7).unwrap();
    let (m, d) = (2usize, 2usize);
    let n = 49usize;
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let p = MultiPoly::random(field, m, d, &mut rng);
    let (hp, _) = honest_oracles(&p, d).unwrap();
    let table = materialize_point(&hp, 1 << 20).unwrap();
    let cube = AffineSpace::new(field, 2 * m);
    for (target, key) in [(0.1f64, 5u64), (0.2, 6)] {
        let f = corrupt_exact(&table, target, key).unwrap();
        let corrupted = (target * n as f64).round() as usize;
        let (dist, count) = min_distance(&f, d);
        assert_eq!((dist, count), (corrupted, 1), "P is the unique nearest polynomial");
        let delta = dist as f64 / n as f64;
        let lines = BestFitLines::new(&f, d);
        let mut rejects = 0u64;
        let mut total = 0u64;
        for key in cube.points() {
            let (a, b) = key.split_at(m);
            for t in field.nonzero_elements() {
                rejects += !ldt_check(d, &f, &lines, a, b, t).unwrap().is_accept() as u64;
                total += 1;
            }
        }
        let rho = rejects as f64 / total as f64;
        assert!(delta <= 4.0 * rho, "delta {delta} vs 4 * rho = {}", 4.0 * rho);
        eprintln!("delta* {target}: exact distance {delta:.4}, rejection rate {rho:.4}");
    }
}
