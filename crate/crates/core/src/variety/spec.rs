use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::gf::{Fe, Field};

use super::{grobner_generating_set, product, GrobnerSet, Variety, VarietyError};

/// Text form: `cube:H=<csv>;m=<int>`, `ball1:n=<int>`, `pow:(<spec>)^<c>`,
/// `points:<file>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarietySpec {
    /// `H^m` for `H ⊆ F_q`.
    Cube { h: Vec<u64>, m: usize },
    /// Boolean points of Hamming weight at most one in `F_q^n`.
    Ball1 { n: usize },
    Pow { base: Box<VarietySpec>, c: usize },
    /// One point per line, space-separated residues.
    Points(PathBuf),
}

fn bad(msg: impl Into<String>) -> VarietyError {
    VarietyError::Spec(msg.into())
}

fn parse_usize(s: &str, what: &str) -> Result<usize, VarietyError> {
    s.trim().parse().map_err(|_| bad(format!("{what} must be a nonnegative integer, got {s:?}")))
}

impl FromStr for VarietySpec {
    type Err = VarietyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (kind, rest) = s.split_once(':').ok_or_else(|| bad(format!("missing ':' in {s:?}")))?;
        match kind {
            "cube" => {
                let (h, m) = rest.split_once(';').ok_or_else(|| bad("cube needs H=<csv>;m=<int>"))?;
                let h = h.trim().strip_prefix("H=").ok_or_else(|| bad("cube needs H=<csv>"))?;
                let m = m.trim().strip_prefix("m=").ok_or_else(|| bad("cube needs m=<int>"))?;
                let h = if h.trim().is_empty() {
                    Vec::new()
                } else {
                    h.split(',')
                        .map(|x| x.trim().parse::<u64>().map_err(|_| bad(format!("bad element {x:?} in H"))))
                        .collect::<Result<_, _>>()?
                };
                Ok(VarietySpec::Cube { h, m: parse_usize(m, "m")? })
            }
            "ball1" => {
                let n = rest.trim().strip_prefix("n=").ok_or_else(|| bad("ball1 needs n=<int>"))?;
                Ok(VarietySpec::Ball1 { n: parse_usize(n, "n")? })
            }
            "pow" => {
                let inner = rest.trim().strip_prefix('(').ok_or_else(|| bad("pow needs (<spec>)^<c>"))?;
                let (base, c) = inner.rsplit_once(")^").ok_or_else(|| bad("pow needs (<spec>)^<c>"))?;
                Ok(VarietySpec::Pow { base: Box::new(base.parse()?), c: parse_usize(c, "c")? })
            }
            "points" => Ok(VarietySpec::Points(PathBuf::from(rest.trim()))),
            _ => Err(bad(format!("unknown variety kind {kind:?}"))),
        }
    }
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietySpec::Cube { h, m } => {
                let h: Vec<String> = h.iter().map(u64::to_string).collect();
                write!(f, "cube:H={};m={m}", h.join(","))
            }
            VarietySpec::Ball1 { n } => write!(f, "ball1:n={n}"),
            VarietySpec::Pow { base, c } => write!(f, "pow:({base})^{c}"),
            VarietySpec::Points(p) => write!(f, "points:{}", p.display()),
        }
    }
}

fn power(v: &Variety, g: &GrobnerSet, c: usize) -> Result<(Variety, GrobnerSet), VarietyError> {
    let (mut acc_v, mut acc_g) = (v.clone(), g.clone());
    for _ in 1..c {
        let p = product(&acc_v, v, &acc_g, g)?;
        acc_v = p.variety;
        acc_g = p.grobner;
    }
    Ok((acc_v, acc_g))
}

pub fn parse_points(field: Field, text: &str) -> Result<Variety, VarietyError> {
    let mut points: Vec<Vec<Fe>> = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let p = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|x| !x.is_empty())
            .map(|x| {
                x.parse::<u64>()
                    .ok()
                    .filter(|&v| v < field.order())
                    .map(|v| field.elem(v))
                    .ok_or_else(|| bad(format!("line {}: {x:?} is not a residue mod {}", no + 1, field.modulus())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        points.push(p);
    }
    let m = points.first().map_or(0, Vec::len);
    Variety::new(field, m, points)
}

/// Builds the variety and its generating set; cubes and powers go through
/// the product construction.
pub fn make_variety(field: Field, spec: &VarietySpec) -> Result<(Variety, GrobnerSet), VarietyError> {
    match spec {
        VarietySpec::Cube { h, m } => {
            if h.is_empty() {
                return Err(bad("H must be nonempty"));
            }
            if *m == 0 {
                return Err(bad("m must be positive"));
            }
            let line = Variety::new(field, 1, h.iter().map(|&x| vec![field.elem(x)]).collect())?;
            let g = grobner_generating_set(&line);
            power(&line, &g, *m)
        }
        VarietySpec::Ball1 { n } => {
            if *n == 0 {
                return Err(bad("n must be positive"));
            }
            let mut points = vec![field.zeros(*n)];
            for i in 0..*n {
                let mut e = field.zeros(*n);
                e[i] = field.one();
                points.push(e);
            }
            let v = Variety::new(field, *n, points)?;
            let g = grobner_generating_set(&v);
            Ok((v, g))
        }
        VarietySpec::Pow { base, c } => {
            if *c == 0 {
                return Err(bad("power exponent must be positive"));
            }
            let (v, g) = make_variety(field, base)?;
            power(&v, &g, *c)
        }
        VarietySpec::Points(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
            let v = parse_points(field, &text)?;
            let g = grobner_generating_set(&v);
            Ok((v, g))
        }
    }
}
