//! Minimum degree, edge connectivity and vertex connectivity.
//!
//! Conventions: a single vertex has all three quantities 0; the complete
//! graph on `n` vertices has vertex connectivity `n - 1`; a disconnected
//! graph has edge and vertex connectivity 0.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::PropertyTarget;

/// Largest graph accepted by [`brute_force_connectivity`].
pub const BRUTE_FORCE_MAX_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub kappa_v: usize,
    pub kappa_e: usize,
    pub delta: usize,
}

/// Which of the three level-`k` properties a graph has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KConnectivity {
    pub vconn: bool,
    pub econn: bool,
    pub mindeg: bool,
}

pub fn min_degree(g: &Graph) -> usize {
    (0..g.n()).map(|v| g.degree(v)).min().unwrap_or(0)
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.n();
    if n <= 1 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            let u = u as usize;
            if !seen[u] {
                seen[u] = true;
                reached += 1;
                stack.push(u);
            }
        }
    }
    reached == n
}

/// Global minimum edge cut by Stoer-Wagner on unit weights.
pub fn edge_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 || !is_connected(g) {
        return 0;
    }
    let mut weights: Vec<HashMap<usize, usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|&u| (u as usize, 1)).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = min_degree(g);
    let mut key = vec![0usize; n];
    let mut added = vec![false; n];

    while active.len() > 1 && best > 0 {
        // maximum adjacency ordering over the active super-vertices
        for &v in &active {
            key[v] = 0;
            added[v] = false;
        }
        let mut heap: BinaryHeap<(usize, Reverse<usize>)> =
            active.iter().map(|&v| (0, Reverse(v))).collect();
        let (mut prev, mut last) = (usize::MAX, usize::MAX);
        let mut taken = 0;
        while taken < active.len() {
            let (k, Reverse(v)) = heap.pop().expect("heap holds every active vertex");
            if added[v] || k != key[v] {
                continue;
            }
            added[v] = true;
            taken += 1;
            prev = last;
            last = v;
            for (&u, &w) in &weights[v] {
                if !added[u] {
                    key[u] += w;
                    heap.push((key[u], Reverse(u)));
                }
            }
        }
        best = best.min(key[last]);

        // merge `last` into `prev`
        let moved = std::mem::take(&mut weights[last]);
        for (u, w) in moved {
            weights[u].remove(&last);
            if u != prev {
                *weights[prev].entry(u).or_insert(0) += w;
                *weights[u].entry(prev).or_insert(0) += w;
            }
        }
        active.retain(|&v| v != last);
    }
    best
}

/// Unit-capacity flow network in CSR form; `twin[e]` is the reverse arc of `e`.
#[derive(Debug, Clone)]
struct FlowNetwork {
    start: Vec<usize>,
    head: Vec<u32>,
    twin: Vec<usize>,
    base_cap: Vec<u8>,
    cap: Vec<u8>,
    level: Vec<i32>,
    cursor: Vec<usize>,
    queue: Vec<usize>,
}

impl FlowNetwork {
    /// Each `(a, b, c, rc)` adds arc `a -> b` with capacity `c` and its
    /// reverse `b -> a` with capacity `rc`.
    fn new(nodes: usize, arcs: &[(usize, usize, u8, u8)]) -> Self {
        let mut start = vec![0usize; nodes + 1];
        for &(a, b, _, _) in arcs {
            start[a + 1] += 1;
            start[b + 1] += 1;
        }
        for v in 0..nodes {
            start[v + 1] += start[v];
        }
        let total = start[nodes];
        let mut fill = start.clone();
        let mut head = vec![0u32; total];
        let mut base_cap = vec![0u8; total];
        let mut twin = vec![0usize; total];
        for &(a, b, c, rc) in arcs {
            let (ea, eb) = (fill[a], fill[b]);
            fill[a] += 1;
            fill[b] += 1;
            head[ea] = b as u32;
            head[eb] = a as u32;
            base_cap[ea] = c;
            base_cap[eb] = rc;
            twin[ea] = eb;
            twin[eb] = ea;
        }
        Self {
            start,
            head,
            twin,
            cap: base_cap.clone(),
            base_cap,
            level: vec![-1; nodes],
            cursor: vec![0; nodes],
            queue: Vec::with_capacity(nodes),
        }
    }

    /// Vertex-split network: `in(v) = 2v`, `out(v) = 2v + 1`, one unit through
    /// every vertex. Paths from `out(x)` to `in(y)` are internally vertex-disjoint.
    fn vertex_split(g: &Graph) -> Self {
        let n = g.n();
        let mut arcs = Vec::with_capacity(n + 2 * g.m());
        for v in 0..n {
            arcs.push((2 * v, 2 * v + 1, 1, 0));
        }
        for (u, v) in g.edges() {
            arcs.push((2 * u + 1, 2 * v, 1, 0));
            arcs.push((2 * v + 1, 2 * u, 1, 0));
        }
        Self::new(2 * n, &arcs)
    }

    /// Undirected unit edges: each edge is an arc pair with capacity 1 both ways.
    fn edge_network(g: &Graph) -> Self {
        let arcs: Vec<_> = g.edges().map(|(u, v)| (u, v, 1, 1)).collect();
        Self::new(g.n(), &arcs)
    }

    fn bfs(&mut self, source: usize, sink: usize) -> bool {
        self.level.fill(-1);
        self.level[source] = 0;
        self.queue.clear();
        self.queue.push(source);
        let mut i = 0;
        while i < self.queue.len() {
            let v = self.queue[i];
            i += 1;
            for e in self.start[v]..self.start[v + 1] {
                let w = self.head[e] as usize;
                if self.cap[e] > 0 && self.level[w] < 0 {
                    self.level[w] = self.level[v] + 1;
                    if w == sink {
                        return true;
                    }
                    self.queue.push(w);
                }
            }
        }
        false
    }

    /// Max flow from `source` to `sink`, stopping once it reaches `limit`.
    /// Dinic phases with an iterative blocking-flow search.
    fn max_flow(&mut self, source: usize, sink: usize, limit: usize) -> usize {
        self.cap.copy_from_slice(&self.base_cap);
        let mut flow = 0;
        let mut path: Vec<usize> = Vec::new();
        while flow < limit && self.bfs(source, sink) {
            for v in 0..self.cursor.len() {
                self.cursor[v] = self.start[v];
            }
            path.clear();
            let mut v = source;
            while flow < limit {
                if v == sink {
                    for &e in &path {
                        self.cap[e] -= 1;
                        self.cap[self.twin[e]] += 1;
                    }
                    flow += 1;
                    path.clear();
                    v = source;
                    continue;
                }
                let mut advanced = false;
                while self.cursor[v] < self.start[v + 1] {
                    let e = self.cursor[v];
                    let w = self.head[e] as usize;
                    if self.cap[e] > 0 && self.level[w] == self.level[v] + 1 {
                        path.push(e);
                        v = w;
                        advanced = true;
                        break;
                    }
                    self.cursor[v] += 1;
                }
                if !advanced {
                    if v == source {
                        break;
                    }
                    self.level[v] = -1;
                    let e = path.pop().expect("non-source vertex has an entry arc");
                    v = self.head[self.twin[e]] as usize;
                    self.cursor[v] += 1;
                }
            }
        }
        flow
    }
}

/// Vertex connectivity. Candidate pairs follow the min-degree-vertex schedule:
/// a vertex `v` of minimum degree against each non-neighbor, plus every
/// non-adjacent pair of neighbors of `v`. Every minimum separator either
/// misses `v` (and splits it from a non-neighbor) or contains it (and splits
/// two of its neighbors).
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 || !is_connected(g) {
        return 0;
    }
    if g.is_complete() {
        return n - 1;
    }
    let mut net = FlowNetwork::vertex_split(g);
    let v = (0..n).min_by_key(|&v| g.degree(v)).unwrap();
    let mut best = g.degree(v);
    for (x, y) in separation_candidates(g, v) {
        if best == 0 {
            break;
        }
        best = best.min(net.max_flow(2 * x + 1, 2 * y, best));
    }
    best
}

fn separation_candidates(g: &Graph, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
    let non_neighbors = (0..g.n()).filter(move |&w| w != v && !g.has_edge(v, w)).map(move |w| (v, w));
    let nbrs = g.neighbors(v);
    let neighbor_pairs = nbrs.iter().enumerate().flat_map(move |(i, &x)| {
        nbrs[i + 1..]
            .iter()
            .filter(move |&&y| !g.has_edge(x as usize, y as usize))
            .map(move |&y| (x as usize, y as usize))
    });
    non_neighbors.chain(neighbor_pairs)
}

fn vertex_connectivity_at_least(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if k == 0 {
        return true;
    }
    if n < k + 1 || !is_connected(g) {
        return false;
    }
    match k {
        1 => true,
        2 => articulation_and_bridges(g).0 == 0,
        _ => {
            if g.is_complete() {
                return true;
            }
            let v = (0..n).min_by_key(|&v| g.degree(v)).unwrap();
            if g.degree(v) < k {
                return false;
            }
            let mut net = FlowNetwork::vertex_split(g);
            separation_candidates(g, v).all(|(x, y)| net.max_flow(2 * x + 1, 2 * y, k) >= k)
        }
    }
}

fn edge_connectivity_at_least(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if k == 0 {
        return true;
    }
    if n <= 1 || !is_connected(g) {
        return false;
    }
    match k {
        1 => true,
        2 => articulation_and_bridges(g).1 == 0,
        _ => {
            if min_degree(g) < k {
                return false;
            }
            let mut net = FlowNetwork::edge_network(g);
            (1..n).all(|w| net.max_flow(0, w, k) >= k)
        }
    }
}

/// Counts of articulation points and bridges, by an iterative lowpoint DFS.
fn articulation_and_bridges(g: &Graph) -> (usize, usize) {
    let n = g.n();
    let mut order = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut bridges = 0;
    let mut clock = 0;
    // (vertex, parent, next neighbor index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if order[root] != usize::MAX {
            continue;
        }
        order[root] = clock;
        low[root] = clock;
        clock += 1;
        let mut root_children = 0;
        stack.push((root, usize::MAX, 0));
        while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
            if let Some(&u) = g.neighbors(v).get(*next) {
                *next += 1;
                let u = u as usize;
                if u == parent {
                    continue;
                }
                if order[u] == usize::MAX {
                    order[u] = clock;
                    low[u] = clock;
                    clock += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((u, v, 0));
                } else {
                    low[v] = low[v].min(order[u]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > order[parent] {
                        bridges += 1;
                    }
                    if parent != root && low[v] >= order[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (is_cut.iter().filter(|&&c| c).count(), bridges)
}

/// All three quantities, with the `kappa_v <= kappa_e <= delta` chain checked.
pub fn report(g: &Graph) -> Result<ConnectivityReport> {
    let r = ConnectivityReport {
        kappa_v: vertex_connectivity(g),
        kappa_e: edge_connectivity(g),
        delta: min_degree(g),
    };
    check_chain(r)
}

fn check_chain(r: ConnectivityReport) -> Result<ConnectivityReport> {
    if r.kappa_v <= r.kappa_e && r.kappa_e <= r.delta {
        Ok(r)
    } else {
        Err(Error::InternalOrderViolation { kappa_v: r.kappa_v, kappa_e: r.kappa_e, delta: r.delta })
    }
}

/// `(kappa_v >= k, kappa_e >= k, delta >= k)`. Degree is checked first and
/// settles the common sub-threshold case without any flow computation;
/// `k = 1` and `k = 2` use linear-time DFS tests.
pub fn is_k_connected(g: &Graph, k: PropertyTarget) -> KConnectivity {
    let k = k.get() as usize;
    let mindeg = min_degree(g) >= k;
    if !mindeg {
        return KConnectivity { vconn: false, econn: false, mindeg };
    }
    let econn = edge_connectivity_at_least(g, k);
    let vconn = econn && vertex_connectivity_at_least(g, k);
    KConnectivity { vconn, econn, mindeg }
}

/// Exhaustive oracle for small graphs: vertex connectivity by trying every
/// vertex subset, edge connectivity by trying every bipartition.
pub fn brute_force_connectivity(g: &Graph) -> Result<ConnectivityReport> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::TooLarge { n, max: BRUTE_FORCE_MAX_N });
    }
    let delta = min_degree(g);
    if n <= 1 {
        return Ok(ConnectivityReport { kappa_v: 0, kappa_e: 0, delta });
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let all: u32 = (1 << n) - 1;

    let connected_within = |alive: u32| -> bool {
        if alive == 0 {
            return true;
        }
        let mut seen = 1u32 << alive.trailing_zeros();
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & alive & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == alive
    };

    let kappa_v = if g.is_complete() {
        n - 1
    } else {
        (0..=all)
            .filter(|&removed| (n - removed.count_ones() as usize) >= 2)
            .filter(|&removed| !connected_within(all & !removed))
            .map(|removed| removed.count_ones() as usize)
            .min()
            .expect("a non-complete graph has a separating set")
    };

    let kappa_e = (1..all)
        .filter(|side| side & 1 == 1)
        .map(|side: u32| {
            (0..n)
                .filter(|&v| side >> v & 1 == 1)
                .map(|v| (adj[v] & !side & all).count_ones() as usize)
                .sum::<usize>()
        })
        .min()
        .unwrap_or(0);

    Ok(ConnectivityReport { kappa_v, kappa_e, delta })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> Graph {
        Graph::complete(3).disjoint_union(&Graph::complete(3))
    }

    fn k(level: u32) -> PropertyTarget {
        PropertyTarget::new(level).unwrap()
    }

    #[test]
    fn min_degree_examples() {
        assert_eq!(min_degree(&Graph::complete(4)), 3);
        assert_eq!(min_degree(&Graph::path(3)), 1);
        assert_eq!(min_degree(&two_triangles()), 2);
        assert_eq!(min_degree(&Graph::empty(1)), 0);
    }

    #[test]
    fn edge_connectivity_examples() {
        assert_eq!(edge_connectivity(&Graph::cycle(5)), 2);
        assert_eq!(edge_connectivity(&two_triangles()), 0);
        assert_eq!(edge_connectivity(&Graph::complete(4)), 3);
        assert_eq!(edge_connectivity(&Graph::empty(1)), 0);
    }

    #[test]
    fn vertex_connectivity_examples() {
        assert_eq!(vertex_connectivity(&Graph::path(3)), 1);
        assert_eq!(vertex_connectivity(&Graph::complete(4)), 3);
        assert_eq!(vertex_connectivity(&Graph::cycle(5)), 2);
        assert_eq!(vertex_connectivity(&Graph::empty(1)), 0);
        assert_eq!(vertex_connectivity(&Graph::complete(2)), 1);
    }

    #[test]
    fn bowtie_separates_vertex_and_edge_connectivity() {
        // two triangles sharing vertex 2
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        let r = report(&g).unwrap();
        assert_eq!((r.kappa_v, r.kappa_e, r.delta), (1, 2, 2));
        assert_eq!(brute_force_connectivity(&g).unwrap(), r);
    }

    #[test]
    fn report_examples() {
        let triple = |g: &Graph| {
            let r = report(g).unwrap();
            (r.kappa_v, r.kappa_e, r.delta)
        };
        assert_eq!(triple(&Graph::complete(4)), (3, 3, 3));
        assert_eq!(triple(&Graph::star(5)), (1, 1, 1));
        assert_eq!(triple(&two_triangles()), (0, 0, 2));
    }

    #[test]
    fn chain_violation_is_reported() {
        let bad = ConnectivityReport { kappa_v: 2, kappa_e: 1, delta: 3 };
        assert!(matches!(check_chain(bad), Err(Error::InternalOrderViolation { .. })));
    }

    #[test]
    fn is_k_connected_examples() {
        let as_tuple = |r: KConnectivity| (r.vconn, r.econn, r.mindeg);
        assert_eq!(as_tuple(is_k_connected(&Graph::cycle(5), k(2))), (true, true, true));
        assert_eq!(as_tuple(is_k_connected(&Graph::path(3), k(2))), (false, false, false));
        assert_eq!(as_tuple(is_k_connected(&two_triangles(), k(1))), (false, false, true));
    }

    #[test]
    fn brute_force_examples() {
        let zero = ConnectivityReport { kappa_v: 0, kappa_e: 0, delta: 0 };
        assert_eq!(brute_force_connectivity(&Graph::empty(1)).unwrap(), zero);
        let one = ConnectivityReport { kappa_v: 1, kappa_e: 1, delta: 1 };
        assert_eq!(brute_force_connectivity(&Graph::complete(2)).unwrap(), one);
        assert!(matches!(brute_force_connectivity(&Graph::empty(13)), Err(Error::TooLarge { .. })));
    }

    /// Every graph on up to 6 vertices.
    #[test]
    fn flow_path_matches_brute_force_exhaustively() {
        for n in 1..=6usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
                let g = Graph::from_edges(n, edges).unwrap();
                let fast = report(&g).unwrap();
                assert_eq!(fast, brute_force_connectivity(&g).unwrap(), "n={n} mask={mask:b}");
                for level in 1..=4 {
                    let got = is_k_connected(&g, k(level));
                    let l = level as usize;
                    assert_eq!(
                        (got.vconn, got.econn, got.mindeg),
                        (fast.kappa_v >= l, fast.kappa_e >= l, fast.delta >= l),
                        "n={n} mask={mask:b} k={level}"
                    );
                }
            }
        }
    }

    #[test]
    fn articulation_points_and_bridges() {
        assert_eq!(articulation_and_bridges(&Graph::path(4)), (2, 3));
        assert_eq!(articulation_and_bridges(&Graph::cycle(6)), (0, 0));
        assert_eq!(articulation_and_bridges(&Graph::star(5)), (1, 4));
    }
}
