//! Simple undirected graphs on vertices labelled `1..=n`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Errors raised while building a [`SimpleGraph`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0},{1})")]
    DuplicateEdge(usize, usize),
    #[error("endpoint out of range in edge ({0},{1}); vertices are 1..={2}")]
    OutOfRange(usize, usize, usize),
    #[error("graph is not 2-connected")]
    NotBiconnected,
}

/// Undirected edge with `0 < u < v`.
pub type Edge = (usize, usize);

pub fn normalize(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    edges: BTreeSet<Edge>,
    adj: Vec<BTreeSet<usize>>,
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl SimpleGraph {
    /// Validates the edge list. Order of the input is irrelevant.
    pub fn new<I>(n: usize, edge_list: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edge_list {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        SimpleGraph {
            n,
            edges: BTreeSet::new(),
            adj: vec![BTreeSet::new(); n + 1],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 1..=n {
            for v in u + 1..=n {
                g.try_add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        Self::new(n, (1..=n).map(|i| (i, i % n + 1))).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i, i + 1))).unwrap()
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if u == 0 || v == 0 || u > self.n || v > self.n {
            return Err(GraphError::OutOfRange(u, v, self.n));
        }
        let e = normalize(u, v);
        if !self.edges.insert(e) {
            return Err(GraphError::DuplicateEdge(e.0, e.1));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    /// Returns a copy with one more edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        let mut g = self.clone();
        g.try_add_edge(u, v)?;
        Ok(g)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Self {
        let mut g = self.clone();
        let e = normalize(u, v);
        if g.edges.remove(&e) {
            g.adj[u].remove(&v);
            g.adj[v].remove(&u);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&normalize(u, v))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Non-edges `(u, v)`, `u < v`, in lexicographic order.
    pub fn non_edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in 1..=self.n {
            for v in u + 1..=self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Subgraph induced by `keep`, relabelled `1..` in increasing order of the
    /// original labels. Returns the subgraph and the map new label -> old label.
    pub fn induced(&self, keep: &BTreeSet<usize>) -> (SimpleGraph, Vec<usize>) {
        let labels: Vec<usize> = keep.iter().copied().collect();
        let mut index = vec![0; self.n + 1];
        for (i, &v) in labels.iter().enumerate() {
            index[v] = i + 1;
        }
        let mut g = SimpleGraph::empty(labels.len());
        for (u, v) in self.edges() {
            if index[u] != 0 && index[v] != 0 {
                g.try_add_edge(index[u], index[v]).unwrap();
            }
        }
        let mut back = vec![0];
        back.extend(labels);
        (g, back)
    }

    /// Connected components of `G - removed`, each sorted, ordered by least vertex.
    pub fn components_without(&self, removed: &[usize]) -> Vec<BTreeSet<usize>> {
        let mut seen = vec![false; self.n + 1];
        for &r in removed {
            seen[r] = true;
        }
        let mut comps = Vec::new();
        for s in 1..=self.n {
            if seen[s] {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components_without(&[]).len() == 1
    }

    /// 0 if disconnected, otherwise the largest `c <= 3` such that `G` is
    /// `c`-connected. Complete graphs `K_k` count as `min(k - 1, 3)`.
    pub fn connectivity_level(&self) -> u8 {
        if !self.is_connected() {
            return 0;
        }
        let n = self.n;
        let k_complete = (n.saturating_sub(1)).min(3) as u8;
        if self.m() == n * (n - 1) / 2 {
            return k_complete;
        }
        // Non-complete: the level is min(3, vertex connectivity).
        for v in 1..=n {
            if self.components_without(&[v]).len() > 1 {
                return 1;
            }
        }
        for u in 1..=n {
            for v in u + 1..=n {
                if self.components_without(&[u, v]).len() > 1 {
                    return 2;
                }
            }
        }
        3
    }

    pub fn is_biconnected(&self) -> bool {
        self.n >= 3 && self.connectivity_level() >= 2
    }

    /// All separation pairs, brute force over every vertex pair.
    pub fn separation_pairs(&self) -> Result<Vec<SeparationPair>, GraphError> {
        if !self.is_biconnected() {
            return Err(GraphError::NotBiconnected);
        }
        let mut out = Vec::new();
        for u in 1..=self.n {
            for v in u + 1..=self.n {
                let components = self.components_without(&[u, v]);
                if components.len() >= 2 {
                    out.push(SeparationPair { u, v, components });
                }
            }
        }
        Ok(out)
    }

    /// Canonical label string used for golden outputs.
    pub fn edge_list_string(&self) -> String {
        self.edges
            .iter()
            .map(|(u, v)| format!("{u}-{v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Two vertices whose removal disconnects a 2-connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationPair {
    pub u: usize,
    pub v: usize,
    pub components: Vec<BTreeSet<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_k4() {
        let g = SimpleGraph::new(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(g.m(), 6);
        assert_eq!(g, SimpleGraph::complete(4));
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            SimpleGraph::new(3, [(1, 2), (1, 2), (2, 3)]),
            Err(GraphError::DuplicateEdge(1, 2))
        );
        assert_eq!(
            SimpleGraph::new(3, [(2, 1), (1, 2)]),
            Err(GraphError::DuplicateEdge(1, 2))
        );
        assert_eq!(SimpleGraph::new(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            SimpleGraph::new(3, [(1, 4)]),
            Err(GraphError::OutOfRange(1, 4, 3))
        );
    }

    #[test]
    fn connectivity_levels() {
        assert_eq!(SimpleGraph::complete(4).connectivity_level(), 3);
        assert_eq!(SimpleGraph::path(3).connectivity_level(), 1);
        assert_eq!(SimpleGraph::cycle(4).connectivity_level(), 2);
        assert_eq!(SimpleGraph::empty(2).connectivity_level(), 0);
        assert_eq!(SimpleGraph::complete(6).connectivity_level(), 3);
    }

    #[test]
    fn separation_pairs_small() {
        assert!(SimpleGraph::complete(4)
            .separation_pairs()
            .unwrap()
            .is_empty());
        let k4e = SimpleGraph::complete(4).without_edge(1, 2);
        let pairs = k4e.separation_pairs().unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!((pairs[0].u, pairs[0].v), (3, 4));
        assert_eq!(pairs[0].components.len(), 2);
        assert!(SimpleGraph::path(3).separation_pairs().is_err());
    }

    #[test]
    fn two_k4_glued_on_edge() {
        // {1,2} shared; {3,4} and {5,6} on either side.
        let mut edges = vec![(1, 2)];
        for side in [[3, 4], [5, 6]] {
            edges.extend([(1, side[0]), (1, side[1]), (2, side[0]), (2, side[1])]);
            edges.push((side[0], side[1]));
        }
        let g = SimpleGraph::new(6, edges).unwrap();
        let pairs = g.separation_pairs().unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!((pairs[0].u, pairs[0].v), (1, 2));
        assert_eq!(pairs[0].components.len(), 2);
    }
}
