//! The six graph operations, built directly from their combinatorial
//! definitions.
//!
//! Every result uses a block-major vertex layout: vertex `v` of block `b`
//! is `b * p + v`. Block 0 is the distinguished copy (the original graph
//! for splitting, H2 and H3; the first copy for shadow and H1). Under this
//! layout `A(op(G)) = pattern ⊗ A(G)` where `pattern` is
//! [`OperationKind::block_pattern`].

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperationKind {
    /// m-splitting graph: m extra copies of every vertex, each joined to
    /// the neighbours of the original.
    Splitting { m: usize },
    /// m-shadow graph: adjacency `J_m ⊗ A(G)`.
    Shadow { m: usize },
    /// m-fold iterated duplicate graph, `G × K_2 × ... × K_2`.
    DuplicateIter { m: usize },
    /// Shadow graph with the internal edges of copies `i` and `j` removed.
    H1 { m: usize, i: usize, j: usize },
    /// Hub copy plus `m - 1` satellite copies, all keeping their edges.
    H2 { m: usize },
    /// As H2 with the hub's own edges removed.
    H3 { m: usize },
}

impl OperationKind {
    pub fn splitting(m: usize) -> Result<Self> {
        OperationKind::Splitting { m }.validated()
    }

    pub fn shadow(m: usize) -> Result<Self> {
        OperationKind::Shadow { m }.validated()
    }

    pub fn duplicate_iter(m: usize) -> Result<Self> {
        OperationKind::DuplicateIter { m }.validated()
    }

    pub fn h1(m: usize, i: usize, j: usize) -> Result<Self> {
        OperationKind::H1 { m, i, j }.validated()
    }

    /// H1 with the default stripped pair `(0, m - 1)`.
    pub fn h1_default(m: usize) -> Result<Self> {
        OperationKind::h1(m, 0, m.saturating_sub(1))
    }

    pub fn h2(m: usize) -> Result<Self> {
        OperationKind::H2 { m }.validated()
    }

    pub fn h3(m: usize) -> Result<Self> {
        OperationKind::H3 { m }.validated()
    }

    pub fn m(&self) -> usize {
        match *self {
            OperationKind::Splitting { m }
            | OperationKind::Shadow { m }
            | OperationKind::DuplicateIter { m }
            | OperationKind::H1 { m, .. }
            | OperationKind::H2 { m }
            | OperationKind::H3 { m } => m,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            OperationKind::Splitting { .. } => "splitting",
            OperationKind::Shadow { .. } => "shadow",
            OperationKind::DuplicateIter { .. } => "dup",
            OperationKind::H1 { .. } => "h1",
            OperationKind::H2 { .. } => "h2",
            OperationKind::H3 { .. } => "h3",
        }
    }

    /// Smallest `m` for which the construction is defined.
    pub fn min_m(&self) -> usize {
        match self {
            OperationKind::Splitting { .. }
            | OperationKind::Shadow { .. }
            | OperationKind::DuplicateIter { .. } => 1,
            OperationKind::H1 { .. } => 4,
            OperationKind::H2 { .. } | OperationKind::H3 { .. } => 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.m();
        if m < self.min_m() {
            return Err(Error::MTooSmall {
                op: self.name(),
                m,
                min: self.min_m(),
            });
        }
        if let OperationKind::H1 { m, i, j } = *self {
            if i == j || i >= m || j >= m {
                return Err(Error::InvalidCopyPair { i, j, m });
            }
        }
        Ok(())
    }

    fn validated(self) -> Result<Self> {
        self.validate().map(|_| self)
    }

    /// Vertex count of `op(G)` for a base graph of order `p`.
    pub fn expected_order(&self, p: usize) -> usize {
        match *self {
            OperationKind::Splitting { m } => (m + 1) * p,
            OperationKind::DuplicateIter { m } => (1usize << m) * p,
            OperationKind::Shadow { m }
            | OperationKind::H1 { m, .. }
            | OperationKind::H2 { m }
            | OperationKind::H3 { m } => m * p,
        }
    }

    /// Edge count of `op(G)` for a base graph of size `q`.
    pub fn expected_size(&self, q: usize) -> usize {
        match *self {
            OperationKind::Splitting { m } => (2 * m + 1) * q,
            OperationKind::Shadow { m } => m * m * q,
            OperationKind::DuplicateIter { m } => (1usize << m) * q,
            OperationKind::H1 { m, .. } => (m * m - 2) * q,
            OperationKind::H2 { m } => (3 * m - 2) * q,
            OperationKind::H3 { m } => 3 * (m - 1) * q,
        }
    }

    /// The 0/1 block matrix `P` with `A(op(G)) = P ⊗ A(G)`.
    pub fn block_pattern(&self) -> Matrix {
        match *self {
            OperationKind::Splitting { m } => {
                Matrix::from_fn(m + 1, m + 1, |a, b| f64::from(u8::from(a == 0 || b == 0)))
            }
            OperationKind::Shadow { m } => Matrix::from_fn(m, m, |_, _| 1.0),
            OperationKind::DuplicateIter { m } => {
                let n = 1usize << m;
                Matrix::from_fn(n, n, |a, b| f64::from(u8::from(a + b == n - 1)))
            }
            OperationKind::H1 { m, i, j } => Matrix::from_fn(m, m, |a, b| {
                f64::from(u8::from(!(a == b && (a == i || a == j))))
            }),
            OperationKind::H2 { m } => {
                Matrix::from_fn(m, m, |a, b| f64::from(u8::from(a == 0 || b == 0 || a == b)))
            }
            OperationKind::H3 { m } => Matrix::from_fn(m, m, |a, b| {
                f64::from(u8::from((a == 0) != (b == 0) || (a == b && a != 0)))
            }),
        }
    }

    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        self.validate()?;
        match *self {
            OperationKind::Splitting { m } => splitting(g, m),
            OperationKind::Shadow { m } => shadow(g, m),
            OperationKind::DuplicateIter { m } => duplicate_iter(g, m),
            OperationKind::H1 { m, i, j } => h1(g, m, i, j),
            OperationKind::H2 { m } => h2(g, m),
            OperationKind::H3 { m } => h3(g, m),
        }
    }
}

impl fmt::Display for OperationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            OperationKind::H1 { m, i, j } => write!(f, "h1:{m}:{i}:{j}"),
            other => write!(f, "{}:{}", other.name(), other.m()),
        }
    }
}

impl Serialize for OperationKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses `splitting:m`, `shadow:m`, `dup:m`, `h1:m[:i:j]`, `h2:m`, `h3:m`.
impl FromStr for OperationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').map(str::trim).collect();
        let num = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad integer `{t}` in operation `{s}`")))
        };
        match parts.as_slice() {
            ["h1", m] => OperationKind::h1_default(num(m)?),
            ["h1", m, i, j] => OperationKind::h1(num(m)?, num(i)?, num(j)?),
            [name, m] => {
                let m = num(m)?;
                match name.to_ascii_lowercase().as_str() {
                    "splitting" | "spl" => OperationKind::splitting(m),
                    "shadow" => OperationKind::shadow(m),
                    "dup" | "duplicate" => OperationKind::duplicate_iter(m),
                    "h2" => OperationKind::h2(m),
                    "h3" => OperationKind::h3(m),
                    other => Err(Error::Parse(format!("unknown operation `{other}`"))),
                }
            }
            _ => Err(Error::Parse(format!("cannot parse operation `{s}`"))),
        }
    }
}

/// Parses a comma-separated list of operation specs.
pub fn parse_op_list(s: &str) -> Result<Vec<OperationKind>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

fn check_m(op: &'static str, m: usize, min: usize) -> Result<()> {
    if m < min {
        Err(Error::MTooSmall { op, m, min })
    } else {
        Ok(())
    }
}

/// `Spl_m(G)`: copy `k` (block `k`, 1 ≤ k ≤ m) of vertex `v` is adjacent
/// to every neighbour of `v` in the original block.
pub fn splitting(g: &Graph, m: usize) -> Result<Graph> {
    check_m("splitting", m, 1)?;
    let p = g.order();
    let mut pairs = g.edges().to_vec();
    for k in 1..=m {
        for &(u, v) in g.edges() {
            pairs.push((k * p + u, v));
            pairs.push((k * p + v, u));
        }
    }
    Graph::from_edge_list((m + 1) * p, pairs)
}

/// Shadow-style join: for every edge `uv` and every ordered pair of blocks
/// `(a, b)` accepted by `keep`, connect `u` in `a` with `v` in `b`.
fn block_join(g: &Graph, blocks: usize, keep: impl Fn(usize, usize) -> bool) -> Result<Graph> {
    let p = g.order();
    let mut pairs = Vec::new();
    for a in 0..blocks {
        for b in 0..blocks {
            if !keep(a, b) {
                continue;
            }
            pairs.extend(g.edges().iter().map(|&(u, v)| (a * p + u, b * p + v)));
        }
    }
    Graph::from_edge_list(blocks * p, pairs)
}

/// `D_m(G)`.
pub fn shadow(g: &Graph, m: usize) -> Result<Graph> {
    check_m("shadow", m, 1)?;
    block_join(g, m, |_, _| true)
}

/// `D(G)`: for each edge `ab`, the edges `ab'` and `a'b`.
pub fn duplicate(g: &Graph) -> Result<Graph> {
    let p = g.order();
    let pairs = g
        .edges()
        .iter()
        .flat_map(|&(a, b)| [(a, p + b), (p + a, b)]);
    Graph::from_edge_list(2 * p, pairs)
}

/// `D^m(G) = D^{m-1}(D(G))`.
pub fn duplicate_iter(g: &Graph, m: usize) -> Result<Graph> {
    check_m("dup", m, 1)?;
    (0..m).try_fold(g.clone(), |acc, _| duplicate(&acc))
}

/// `H_1^m(G)`: the m-shadow graph minus the internal edges of copies `i`, `j`.
pub fn h1(g: &Graph, m: usize, i: usize, j: usize) -> Result<Graph> {
    OperationKind::h1(m, i, j)?;
    block_join(g, m, |a, b| !(a == b && (a == i || a == j)))
}

/// `H_2^m(G)`: hub block 0 and satellites 1..m keep their own edges; vertex
/// `v` of each satellite is joined to the hub neighbours of `v`.
pub fn h2(g: &Graph, m: usize) -> Result<Graph> {
    check_m("h2", m, 2)?;
    block_join(g, m, |a, b| a == 0 || b == 0 || a == b)
}

/// `H_3^m(G)`: as `H_2^m(G)` without the hub's own edges.
pub fn h3(g: &Graph, m: usize) -> Result<Graph> {
    check_m("h3", m, 2)?;
    block_join(g, m, |a, b| (a == 0) != (b == 0) || (a == b && a != 0))
}
