use std::collections::BTreeSet;

use crate::gf::{Fe, Field};

use super::PcpError;

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, PcpError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(PcpError::Graph(format!("self-loop at {u}")));
            }
            if u >= n || v >= n {
                return Err(PcpError::Graph(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self { n, edges: set })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("complete graph is valid")
    }

    /// Line 1 holds `n`; every further nonblank line is an edge `u v`.
    pub fn parse(text: &str) -> Result<Self, PcpError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| PcpError::Graph("empty graph file".into()))?
            .parse()
            .map_err(|_| PcpError::Graph("first line must be the vertex count".into()))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
                _ => return Err(PcpError::Graph(format!("bad edge line {line:?}"))),
            }
        }
        Self::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Number of edges whose endpoints share a color.
    pub fn conflicts(&self, c: &Coloring) -> usize {
        self.edges.iter().filter(|&&(u, v)| c.get(u) == c.get(v)).count()
    }
}

/// Colors in `{−1, 0, 1}`; vertices beyond the stored list are colored 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring(Vec<i8>);

impl Coloring {
    pub fn new(colors: Vec<i8>) -> Result<Self, PcpError> {
        if let Some(c) = colors.iter().find(|c| !(-1..=1).contains(*c)) {
            return Err(PcpError::Coloring(format!("color {c} is not in {{-1, 0, 1}}")));
        }
        Ok(Self(colors))
    }

    pub fn get(&self, v: usize) -> i8 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn colors(&self) -> &[i8] {
        &self.0
    }

    /// Residues for the first `len` vertices, `−1 ↦ q − 1`.
    pub fn values(&self, field: Field, len: usize) -> Vec<Fe> {
        (0..len).map(|v| field.from_i64(self.get(v) as i64)).collect()
    }

    /// A coloring with the fewest conflicts, and that count. Exhaustive over
    /// `3^n` colorings.
    pub fn best(graph: &Graph) -> Result<(Coloring, usize), PcpError> {
        Self::search(graph, false)
    }

    /// The fewest-conflict coloring among those with at least one conflict.
    pub fn best_improper(graph: &Graph) -> Result<(Coloring, usize), PcpError> {
        Self::search(graph, true)
    }

    fn search(graph: &Graph, improper: bool) -> Result<(Coloring, usize), PcpError> {
        const MAX_SEARCH: usize = 16;
        let n = graph.n();
        if n > MAX_SEARCH {
            return Err(PcpError::Graph(format!("coloring search limited to {MAX_SEARCH} vertices, graph has {n}")));
        }
        let mut best: Option<(Coloring, usize)> = None;
        for code in 0..3u64.pow(n as u32) {
            let colors: Vec<i8> = (0..n).map(|i| (code / 3u64.pow(i as u32) % 3) as i8 - 1).collect();
            let c = Coloring(colors);
            let k = graph.conflicts(&c);
            if improper && k == 0 {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| k < *b) {
                best = Some((c, k));
            }
        }
        best.ok_or_else(|| PcpError::Coloring("graph has no improper coloring (no edges)".into()))
    }
}
