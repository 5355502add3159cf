//! Simple undirected graphs on `0..p` with a canonical sorted edge set.

mod io;

pub use io::{parse_edge_list, read_graph, to_edge_list};

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple undirected graph. Edges are stored as `(u, v)` with `u < v`,
/// sorted and free of duplicates. Values are immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct Graph {
    p: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawGraph {
    p: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        Graph::from_edge_list(raw.p, raw.edges)
    }
}

impl Graph {
    /// Builds a graph from arbitrary vertex pairs. Pairs are oriented, sorted
    /// and deduplicated; self-loops and out-of-range indices are rejected.
    pub fn from_edge_list<I>(p: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in pairs {
            for index in [u, v] {
                if index >= p {
                    return Err(Error::IndexOutOfRange { index, order: p });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph {
            p,
            edges: set.into_iter().collect(),
        })
    }

    /// Graph with `p` vertices and no edges.
    pub fn empty(p: usize) -> Self {
        Graph {
            p,
            edges: Vec::new(),
        }
    }

    pub fn complete(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGenerator);
        }
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edge_list(n, pairs)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::CycleTooSmall(n));
        }
        Graph::from_edge_list(n, (0..n).map(|u| (u, (u + 1) % n)))
    }

    /// The star `K_{1,n-1}` with centre 0.
    pub fn star(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGenerator);
        }
        Graph::from_edge_list(n, (1..n).map(|v| (0, v)))
    }

    pub fn path(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGenerator);
        }
        Graph::from_edge_list(n, (1..n).map(|v| (v - 1, v)))
    }

    /// Outer 5-cycle on 0..5, inner pentagram on 5..10, spokes i -- i+5.
    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edge_list(10, outer.chain(spokes).chain(inner))
            .expect("petersen edges are valid")
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.p
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.p];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.p];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.first_isolated_vertex().is_some()
    }

    pub fn first_isolated_vertex(&self) -> Option<usize> {
        self.degrees().iter().position(|&d| d == 0)
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.p == 0 {
            return true;
        }
        let adj = self.neighbors();
        let mut seen = vec![false; self.p];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == self.p
    }

    pub fn is_bipartite(&self) -> bool {
        let adj = self.neighbors();
        let mut color: Vec<Option<bool>> = vec![None; self.p];
        for start in 0..self.p {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &v in &adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }
}

/// Named base graphs accepted on the command line: `k:n`, `cycle:n`,
/// `star:n`, `path:n`, `petersen`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSpec {
    Complete(usize),
    Cycle(usize),
    Star(usize),
    Path(usize),
    Petersen,
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            GeneratorSpec::Complete(n) => Graph::complete(n),
            GeneratorSpec::Cycle(n) => Graph::cycle(n),
            GeneratorSpec::Star(n) => Graph::star(n),
            GeneratorSpec::Path(n) => Graph::path(n),
            GeneratorSpec::Petersen => Ok(Graph::petersen()),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("petersen") {
            return Ok(GeneratorSpec::Petersen);
        }
        let (name, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("generator `{s}` needs the form name:n")))?;
        let n: usize = arg
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad generator size `{arg}`")))?;
        match name.trim().to_ascii_lowercase().as_str() {
            "k" | "complete" => Ok(GeneratorSpec::Complete(n)),
            "cycle" | "c" => Ok(GeneratorSpec::Cycle(n)),
            "star" => Ok(GeneratorSpec::Star(n)),
            "path" | "p" => Ok(GeneratorSpec::Path(n)),
            other => Err(Error::Parse(format!("unknown generator `{other}`"))),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Complete(n) => write!(f, "k:{n}"),
            GeneratorSpec::Cycle(n) => write!(f, "cycle:{n}"),
            GeneratorSpec::Star(n) => write!(f, "star:{n}"),
            GeneratorSpec::Path(n) => write!(f, "path:{n}"),
            GeneratorSpec::Petersen => write!(f, "petersen"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = Graph::from_edge_list(2, [(0, 1)]).unwrap();
        assert_eq!((g.order(), g.size()), (2, 1));
        assert_eq!(g, Graph::complete(2).unwrap());
    }

    #[test]
    fn duplicate_pairs_collapse() {
        let g = Graph::from_edge_list(3, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.size(), 1);
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn four_cycle_from_pairs() {
        let g = Graph::from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(g.size(), 4);
        assert_eq!(g, Graph::cycle(4).unwrap());
    }

    #[test]
    fn rejects_bad_pairs() {
        assert_eq!(
            Graph::from_edge_list(2, [(0, 2)]),
            Err(Error::IndexOutOfRange { index: 2, order: 2 })
        );
        assert_eq!(Graph::from_edge_list(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(Graph::cycle(2), Err(Error::CycleTooSmall(2)));
        assert_eq!(Graph::complete(0), Err(Error::EmptyGenerator));
    }

    #[test]
    fn generator_sizes() {
        assert_eq!(Graph::complete(4).unwrap().size(), 6);
        assert_eq!(Graph::star(5).unwrap().degrees(), vec![4, 1, 1, 1, 1]);
        assert!(Graph::cycle(4).unwrap().degrees().iter().all(|&d| d == 2));
        assert_eq!(Graph::path(5).unwrap().size(), 4);
        let pet = Graph::petersen();
        assert_eq!((pet.order(), pet.size()), (10, 15));
        assert!(pet.degrees().iter().all(|&d| d == 3));
        assert!(!pet.is_bipartite());
    }

    #[test]
    fn degrees_of_small_graphs() {
        assert_eq!(Graph::complete(2).unwrap().degrees(), vec![1, 1]);
        assert_eq!(Graph::cycle(4).unwrap().degrees(), vec![2, 2, 2, 2]);
    }

    #[test]
    fn predicates() {
        let c4 = Graph::cycle(4).unwrap();
        assert!(c4.is_connected() && c4.is_bipartite() && !c4.has_isolated_vertex());
        let c5 = Graph::cycle(5).unwrap();
        assert!(!c5.is_bipartite());
        let two_k2 = Graph::from_edge_list(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!two_k2.is_connected());
        let iso = Graph::from_edge_list(3, [(0, 1)]).unwrap();
        assert_eq!(iso.first_isolated_vertex(), Some(2));
        assert!(Graph::empty(0).is_connected());
    }

    #[test]
    fn generator_spec_round_trip() {
        for s in ["k:4", "cycle:5", "star:3", "path:2", "petersen"] {
            let spec: GeneratorSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("wheel:4".parse::<GeneratorSpec>().is_err());
        assert!("k".parse::<GeneratorSpec>().is_err());
    }

    #[test]
    fn json_is_canonical() {
        let g = Graph::from_edge_list(3, [(2, 1), (0, 1)]).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"p":3,"edges":[[0,1],[1,2]]}"#);
        let back: Graph = serde_json::from_str(r#"{"p":3,"edges":[[1,2],[1,0]]}"#).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"p":2,"edges":[[0,0]]}"#).is_err());
    }
}
