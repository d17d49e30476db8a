//! Undirected simple graphs stored as sorted adjacency lists.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    m: usize,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Parse(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::Parse(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        Ok(Self::from_unsorted(adj))
    }

    /// Takes adjacency lists that are symmetric and loop-free but possibly
    /// unsorted or with repeats.
    pub(crate) fn from_unsorted(mut adj: Vec<Vec<u32>>) -> Self {
        let mut twice_m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            twice_m += list.len();
        }
        Self { adj, m: twice_m / 2 }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| (0..n as u32).filter(|&u| u as usize != v).collect())
            .collect();
        Self { adj, m: n * n.saturating_sub(1) / 2 }
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("valid cycle")
    }

    /// Star with center 0 and `n - 1` leaves.
    pub fn star(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (0, v))).expect("valid star")
    }

    /// Disjoint union of `self` and `other`, with `other` relabelled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let offset = self.n() as u32;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|l| l.iter().map(|&u| u + offset).collect()));
        Self { adj, m: self.m + other.m }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter().filter(move |&&v| (v as usize) > u).map(move |&v| (u, v as usize))
        })
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.m == n * n.saturating_sub(1) / 2
    }

    /// True when both graphs share a vertex set and every edge of `self` is in `other`.
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.n() == other.n()
            && self.adj.iter().zip(&other.adj).all(|(mine, theirs)| {
                mine.iter().all(|v| theirs.binary_search(v).is_ok())
            })
    }

    /// Graph induced on the vertices not flagged in `removed`, relabelled densely.
    pub fn without_vertices(&self, removed: &[bool]) -> Graph {
        let mut label = vec![u32::MAX; self.n()];
        let mut next = 0u32;
        for (v, &gone) in removed.iter().enumerate() {
            if !gone {
                label[v] = next;
                next += 1;
            }
        }
        let adj = (0..self.n())
            .filter(|&v| !removed[v])
            .map(|v| {
                self.adj[v]
                    .iter()
                    .filter(|&&u| !removed[u as usize])
                    .map(|&u| label[u as usize])
                    .collect()
            })
            .collect();
        Graph::from_unsorted(adj)
    }
}
