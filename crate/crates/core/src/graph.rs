//! Simple undirected graphs, DIMACS `.col` I/O, seeded G(n,p) generation and
//! greedy clique growth.
//!
//! Vertices are `0..n` internally; the DIMACS boundary converts to and from
//! 1-based indices.

use std::fmt::Write as _;
use std::path::Path;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: duplicate problem line")]
    DuplicateProblemLine { line: usize },
    #[error("missing `p edge <n> <m>` line")]
    MissingProblemLine,
    #[error("line {line}: vertex {vertex} outside [1, {n}]")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Immutable simple undirected graph.
#[derive(Clone, Debug)]
pub struct Graph {
    neighbors: Vec<Vec<usize>>,
    rows: Vec<FixedBitSet>,
    edge_count: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.neighbors == other.neighbors
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an edge list. Duplicates and both orientations of
    /// the same pair collapse into one edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        let neighbors: Vec<Vec<usize>> = rows.iter().map(|r| r.ones().collect()).collect();
        let edge_count = neighbors.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Self {
            neighbors,
            rows,
            edge_count,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self::from_edges(n, std::iter::empty()).expect("edgeless graph is valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.neighbors.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbor list of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    #[inline]
    pub fn neighbor_set(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// `2m / (n(n-1))`, zero for graphs with fewer than two vertices.
    pub fn density(&self) -> f64 {
        let n = self.n();
        if n < 2 {
            return 0.0;
        }
        2.0 * self.edge_count as f64 / (n as f64 * (n as f64 - 1.0))
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_stable(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }
}

/// Parses DIMACS `.col` text (`c` comments, one `p edge n m` line, `e u v`
/// lines with 1-based vertices).
///
/// A declared edge count that disagrees with the distinct edges read is
/// accepted with a logged warning.
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut edge_lines = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        let Some(tag) = tokens.next() else { continue };
        let syntax = |msg: &str| ParseError::Syntax {
            line,
            msg: msg.to_string(),
        };
        match tag {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(ParseError::DuplicateProblemLine { line });
                }
                let format = tokens
                    .next()
                    .ok_or_else(|| syntax("missing format in problem line"))?;
                if format != "edge" && format != "col" {
                    return Err(syntax(&format!("unsupported problem format `{format}`")));
                }
                let n = parse_count(tokens.next(), line, "vertex count")?;
                let m = parse_count(tokens.next(), line, "edge count")?;
                if tokens.next().is_some() {
                    return Err(syntax("trailing tokens in problem line"));
                }
                header = Some((n, m));
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(syntax("edge line before problem line"));
                };
                let u = parse_count(tokens.next(), line, "edge endpoint")?;
                let v = parse_count(tokens.next(), line, "edge endpoint")?;
                if tokens.next().is_some() {
                    return Err(syntax("trailing tokens in edge line"));
                }
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(ParseError::VertexOutOfRange { line, vertex: w, n });
                    }
                }
                if u == v {
                    return Err(ParseError::SelfLoop { line, vertex: u });
                }
                edges.push((u - 1, v - 1));
                edge_lines += 1;
            }
            // Node descriptors and similar extensions carry nothing we need.
            "n" | "x" | "d" | "v" => {}
            other => return Err(syntax(&format!("unknown line tag `{other}`"))),
        }
    }

    let (n, m) = header.ok_or(ParseError::MissingProblemLine)?;
    let graph = Graph::from_edges(n, edges).expect("endpoints validated above");
    // Some files list each edge once, others in both orientations.
    if m != graph.edge_count() && m != edge_lines {
        log::warn!(
            "problem line declares {m} edges but {} distinct edges were read",
            graph.edge_count()
        );
    }
    Ok(graph)
}

fn parse_count(token: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    let token = token.ok_or_else(|| ParseError::Syntax {
        line,
        msg: format!("missing {what}"),
    })?;
    token.parse().map_err(|_| ParseError::Syntax {
        line,
        msg: format!("invalid {what} `{token}`"),
    })
}

pub fn read_dimacs(path: impl AsRef<Path>) -> Result<Graph, ParseError> {
    let text = std::fs::read_to_string(path)?;
    parse_dimacs(&text)
}

/// Canonical DIMACS text: optional comment, header, each edge once with
/// `u < v`, ascending.
pub fn write_dimacs(g: &Graph, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(comment) = comment {
        for line in comment.lines() {
            let _ = writeln!(out, "c {line}");
        }
    }
    let _ = writeln!(out, "p edge {} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// Erdős–Rényi G(n, p): every pair `(u, v)`, `u < v`, visited in
/// lexicographic order and kept with probability `p`. The stream comes from
/// ChaCha8 seeded with `seed`, so results are identical across platforms.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Graph {
    assert!(
        (0.0..=1.0).contains(&p),
        "edge probability {p} outside [0, 1]"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("generated edges are in range")
}

/// Grows an inclusion-maximal clique from `start`, always adding the
/// common neighbor of highest degree (lowest index on ties).
pub fn greedy_maximal_clique(g: &Graph, start: usize) -> Vec<usize> {
    assert!(start < g.n(), "start vertex {start} out of range");
    let mut clique = vec![start];
    let mut candidates = g.neighbor_set(start).clone();
    while let Some(next) = argmax_degree(g, candidates.ones()) {
        clique.push(next);
        candidates.intersect_with(g.neighbor_set(next));
    }
    clique
}

/// Highest-degree vertex of `vertices`, lowest index on ties.
pub(crate) fn argmax_degree(g: &Graph, vertices: impl Iterator<Item = usize>) -> Option<usize> {
    let mut best: Option<usize> = None;
    for v in vertices {
        best = match best {
            Some(b) if g.degree(b) > g.degree(v) || (g.degree(b) == g.degree(v) && b < v) => {
                Some(b)
            }
            _ => Some(v),
        };
    }
    best
}
