//! Seeded sampling of item graphs from both models, including the monotone
//! couplings.
//!
//! Uniform vertices draw a permutation prefix of the pool by partial
//! Fisher-Yates; a graph with `K` items per vertex keeps the first `K` entries.
//! Binomial vertices draw one uniform mark per `(vertex, item)` and hold the
//! item at level `t` iff its mark is below `t`. Marks are realized lazily:
//! geometric skips pick the items whose mark falls below the largest level
//! needed, and only those get an explicit mark. Either way, one draw serves
//! every level at once, which is what makes the coupled graphs nested.

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{BinomialParams, ModelKind, UniformParams};
use crate::seed::Seed;

/// Default cap on pair-counting work (counter increments) per graph.
pub const DEFAULT_PAIR_WORK_CAP: u64 = 2_000_000_000;

/// A graph together with the item set behind every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct ItemGraph {
    graph: Graph,
    items: Vec<Vec<u64>>,
    pool: u64,
    s: u32,
    model: ModelKind,
}

impl ItemGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Sorted item ids held by vertex `v`.
    pub fn items(&self, v: usize) -> &[u64] {
        &self.items[v]
    }

    pub fn item_sets(&self) -> &[Vec<u64>] {
        &self.items
    }

    pub fn pool(&self) -> u64 {
        self.pool
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn model(&self) -> ModelKind {
        self.model
    }
}

/// Sampling entry points with a configurable pair-work cap.
#[derive(Debug, Clone, Copy)]
pub struct Sampler {
    pub pair_work_cap: u64,
}

impl Default for Sampler {
    fn default() -> Self {
        Self { pair_work_cap: DEFAULT_PAIR_WORK_CAP }
    }
}

impl Sampler {
    pub fn uniform(&self, params: &UniformParams, seed: Seed) -> Result<ItemGraph> {
        let source = UniformSource::draw(params.n(), params.pool(), params.items(), seed);
        source.graph(params, self.pair_work_cap)
    }

    pub fn binomial(&self, params: &BinomialParams, seed: Seed) -> Result<ItemGraph> {
        let source = BinomialSource::draw(params.n(), params.pool(), params.t(), seed);
        source.graph(params, self.pair_work_cap)
    }

    pub fn uniform_coupled(
        &self,
        lo: &UniformParams,
        hi: &UniformParams,
        seed: Seed,
    ) -> Result<(ItemGraph, ItemGraph)> {
        if lo.n() != hi.n() || lo.pool() != hi.pool() || lo.s() != hi.s() {
            return Err(Error::CouplingMismatch("n, P and s must agree".into()));
        }
        if lo.items() > hi.items() {
            return Err(Error::CouplingMismatch(format!(
                "K_lo = {} exceeds K_hi = {}",
                lo.items(),
                hi.items()
            )));
        }
        let source = UniformSource::draw(hi.n(), hi.pool(), hi.items(), seed);
        Ok((source.graph(lo, self.pair_work_cap)?, source.graph(hi, self.pair_work_cap)?))
    }

    pub fn binomial_coupled(
        &self,
        lo: &BinomialParams,
        hi: &BinomialParams,
        seed: Seed,
    ) -> Result<(ItemGraph, ItemGraph)> {
        if lo.n() != hi.n() || lo.pool() != hi.pool() || lo.s() != hi.s() {
            return Err(Error::CouplingMismatch("n, P and s must agree".into()));
        }
        if lo.t() > hi.t() {
            return Err(Error::CouplingMismatch(format!("t_lo = {} exceeds t_hi = {}", lo.t(), hi.t())));
        }
        let source = BinomialSource::draw(hi.n(), hi.pool(), hi.t(), seed);
        Ok((source.graph(lo, self.pair_work_cap)?, source.graph(hi, self.pair_work_cap)?))
    }
}

pub fn sample_uniform(params: &UniformParams, seed: Seed) -> Result<ItemGraph> {
    Sampler::default().uniform(params, seed)
}

pub fn sample_binomial(params: &BinomialParams, seed: Seed) -> Result<ItemGraph> {
    Sampler::default().binomial(params, seed)
}

pub fn sample_uniform_coupled(
    lo: &UniformParams,
    hi: &UniformParams,
    seed: Seed,
) -> Result<(ItemGraph, ItemGraph)> {
    Sampler::default().uniform_coupled(lo, hi, seed)
}

pub fn sample_binomial_coupled(
    lo: &BinomialParams,
    hi: &BinomialParams,
    seed: Seed,
) -> Result<(ItemGraph, ItemGraph)> {
    Sampler::default().binomial_coupled(lo, hi, seed)
}

/// Per-vertex permutation prefixes of the pool, shared by every `K` up to
/// the drawn length.
#[derive(Debug, Clone)]
pub struct UniformSource {
    pool: u64,
    prefixes: Vec<Vec<u64>>,
}

impl UniformSource {
    pub fn draw(n: u64, pool: u64, len: u64, seed: Seed) -> Self {
        assert!(len <= pool, "prefix length exceeds the pool");
        let prefixes = (0..n).map(|v| permutation_prefix(pool, len, &mut seed.vertex_rng(v))).collect();
        Self { pool, prefixes }
    }

    pub fn max_items(&self) -> u64 {
        self.prefixes.first().map_or(0, |p| p.len() as u64)
    }

    /// The graph whose vertices hold the first `params.items()` entries of
    /// their prefixes.
    pub fn graph(&self, params: &UniformParams, cap: u64) -> Result<ItemGraph> {
        assert_eq!(params.pool(), self.pool, "source drawn for a different pool");
        assert_eq!(params.n() as usize, self.prefixes.len(), "source drawn for a different n");
        assert!(params.items() <= self.max_items(), "source prefixes too short");
        let k = params.items() as usize;
        let items: Vec<Vec<u64>> = self
            .prefixes
            .iter()
            .map(|p| {
                let mut set = p[..k].to_vec();
                set.sort_unstable();
                set
            })
            .collect();
        let graph = build_edges(&items, params.s(), cap)?;
        Ok(ItemGraph { graph, items, pool: self.pool, s: params.s(), model: ModelKind::Uniform })
    }
}

/// First `len` entries of a uniformly random permutation of `0..pool`,
/// by partial Fisher-Yates over an implicit identity array.
fn permutation_prefix(pool: u64, len: u64, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let mut out = Vec::with_capacity(len as usize);
    if pool <= 8 * len {
        let mut slots: Vec<u64> = (0..pool).collect();
        for i in 0..len {
            let j = rng.random_range(i..pool);
            slots.swap(i as usize, j as usize);
            out.push(slots[i as usize]);
        }
    } else {
        let mut moved: HashMap<u64, u64> = HashMap::with_capacity(len as usize);
        for i in 0..len {
            let j = rng.random_range(i..pool);
            let at_j = moved.get(&j).copied().unwrap_or(j);
            let at_i = moved.get(&i).copied().unwrap_or(i);
            moved.insert(j, at_i);
            out.push(at_j);
        }
    }
    out
}

/// Per-vertex lazily realized uniform marks, valid for every level `t <= t_max`.
#[derive(Debug, Clone)]
pub struct BinomialSource {
    pool: u64,
    t_max: f64,
    marked: Vec<Vec<(u64, f64)>>,
}

impl BinomialSource {
    pub fn draw(n: u64, pool: u64, t_max: f64, seed: Seed) -> Self {
        assert!((0.0..=1.0).contains(&t_max), "t_max must lie in [0, 1]");
        let marked = (0..n).map(|v| marked_items(pool, t_max, &mut seed.vertex_rng(v))).collect();
        Self { pool, t_max, marked }
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    /// The graph at level `params.t()`: vertex `v` holds item `x` iff its mark is below `t`.
    pub fn graph(&self, params: &BinomialParams, cap: u64) -> Result<ItemGraph> {
        assert_eq!(params.pool(), self.pool, "source drawn for a different pool");
        assert_eq!(params.n() as usize, self.marked.len(), "source drawn for a different n");
        assert!(params.t() <= self.t_max, "level above the drawn maximum");
        let t = params.t();
        let items: Vec<Vec<u64>> = self
            .marked
            .iter()
            .map(|list| list.iter().filter(|&&(_, u)| u < t).map(|&(x, _)| x).collect())
            .collect();
        let graph = build_edges(&items, params.s(), cap)?;
        Ok(ItemGraph { graph, items, pool: self.pool, s: params.s(), model: ModelKind::Binomial })
    }
}

/// Items whose `U(0,1)` mark falls below `t_max`, each with its mark.
/// Conditional on being selected a mark is `U(0, t_max)`.
fn marked_items(pool: u64, t_max: f64, rng: &mut ChaCha8Rng) -> Vec<(u64, f64)> {
    let mut out = Vec::new();
    if t_max <= 0.0 {
        return out;
    }
    if t_max >= 1.0 {
        for x in 0..pool {
            out.push((x, rng.random::<f64>()));
        }
        return out;
    }
    let log_miss = (-t_max).ln_1p();
    let mut next = 0u64;
    while next < pool {
        // geometric number of misses before the next hit
        let u: f64 = rng.random();
        let skip = ((1.0 - u).ln() / log_miss).floor();
        if skip >= (pool - next) as f64 {
            break;
        }
        next += skip as u64;
        out.push((next, t_max * rng.random::<f64>()));
        next += 1;
    }
    out
}

/// Edges of the s-intersection graph over `item_sets`: `(i, j)` is an edge
/// iff the two sets share at least `s` ids.
///
/// Works from an inverted index item -> holders. Each vertex `i` walks its
/// items, bumps a counter for every later holder `j`, and emits `(i, j)`
/// when that counter reaches `s`. Total work is `sum_x C(|holders(x)|, 2)`,
/// checked against `cap` before any counting.
pub fn build_edges(item_sets: &[Vec<u64>], s: u32, cap: u64) -> Result<Graph> {
    assert!(s >= 1, "threshold must be positive");
    let n = item_sets.len();
    let mut incidences: Vec<(u64, u32)> = item_sets
        .iter()
        .enumerate()
        .flat_map(|(v, set)| set.iter().map(move |&x| (x, v as u32)))
        .collect();
    incidences.sort_unstable();

    // CSR inverted index over dense item ids
    let mut holder_start: Vec<usize> = Vec::new();
    let mut holders: Vec<u32> = Vec::with_capacity(incidences.len());
    let mut vertex_items: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut work: u128 = 0;
    let mut i = 0;
    while i < incidences.len() {
        let item = incidences[i].0;
        let dense = holder_start.len() as u32;
        holder_start.push(holders.len());
        let mut run = 0u128;
        while i < incidences.len() && incidences[i].0 == item {
            let v = incidences[i].1;
            // repeated ids within one set count once
            if run == 0 || *holders.last().unwrap() != v {
                holders.push(v);
                vertex_items[v as usize].push(dense);
                run += 1;
            }
            i += 1;
        }
        work += run * run.saturating_sub(1) / 2;
    }
    holder_start.push(holders.len());
    if work > u128::from(cap) {
        return Err(Error::ResourceExceeded { work, cap });
    }

    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut count = vec![0u32; n];
    let mut touched: Vec<u32> = Vec::new();
    for v in 0..n {
        for &x in &vertex_items[v] {
            let list = &holders[holder_start[x as usize]..holder_start[x as usize + 1]];
            let after = list.partition_point(|&u| u as usize <= v);
            for &u in &list[after..] {
                let c = &mut count[u as usize];
                if *c == 0 {
                    touched.push(u);
                }
                *c += 1;
                if *c == s {
                    adj[v].push(u);
                    adj[u as usize].push(v as u32);
                }
            }
        }
        for u in touched.drain(..) {
            count[u as usize] = 0;
        }
    }
    Ok(Graph::from_unsorted(adj))
}

/// Shared-item count of two sorted id lists.
pub fn shared_count(a: &[u64], b: &[u64]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Text dump: a header `n m s model`, `m` lines `u v`, then a line `items`
/// followed by one line of space-separated ids per vertex.
pub fn write_edge_list(g: &ItemGraph) -> String {
    let mut out = format!("{} {} {} {}\n", g.n(), g.graph.m(), g.s, g.model);
    for (u, v) in g.graph.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out.push_str("items\n");
    for set in &g.items {
        let line: Vec<String> = set.iter().map(u64::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parsed form of the text dump. The item section is optional.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeListFile {
    pub s: u32,
    pub model: String,
    pub graph: Graph,
    pub items: Option<Vec<Vec<u64>>>,
}

/// Reads the format written by [`write_edge_list`]. Lines starting with `#`
/// and blank lines before the item section are ignored.
pub fn read_edge_list(text: &str) -> Result<EdgeListFile> {
    let mut lines = text.lines();
    let mut content = lines
        .by_ref()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = content.next().ok_or_else(|| Error::Parse("missing header line".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(Error::Parse(format!("header must be 'n m s model', got '{header}'")));
    }
    let num = |s: &str, what: &str| -> Result<u64> {
        s.parse().map_err(|_| Error::Parse(format!("bad {what} '{s}'")))
    };
    let n = num(fields[0], "n")? as usize;
    let m = num(fields[1], "m")? as usize;
    let s = num(fields[2], "s")? as u32;
    let model = fields[3].to_string();

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let line = content.next().ok_or_else(|| Error::Parse(format!("expected {m} edge lines")))?;
        let mut it = line.split_whitespace();
        match (it.next(), it.next(), it.next()) {
            (Some(u), Some(v), None) => edges.push((num(u, "vertex")? as usize, num(v, "vertex")? as usize)),
            _ => return Err(Error::Parse(format!("bad edge line '{line}'"))),
        }
    }
    let graph = Graph::from_edges(n, edges)?;
    if graph.m() != m {
        return Err(Error::Parse(format!("header declares {m} edges, found {} distinct", graph.m())));
    }

    let items = match content.next() {
        None => None,
        Some("items") => {
            // item lines may be empty, so stop filtering blanks here
            let mut sets = Vec::with_capacity(n);
            for _ in 0..n {
                let line = lines.next().unwrap_or("");
                let set = line
                    .split_whitespace()
                    .map(|x| num(x, "item id"))
                    .collect::<Result<Vec<u64>>>()?;
                sets.push(set);
            }
            Some(sets)
        }
        Some(other) => return Err(Error::Parse(format!("unexpected line '{other}'"))),
    };
    Ok(EdgeListFile { s, model, graph, items })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn brute_force_edges(sets: &[Vec<u64>], s: u32) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if shared_count(&sets[i], &sets[j]) >= s as usize {
                    out.push((i, j));
                }
            }
        }
        out
    }

    #[test]
    fn single_vertex_has_no_edges() {
        let p = UniformParams::new(1, 3, 10, 2).unwrap();
        let g = sample_uniform(&p, Seed::new(3, 0)).unwrap();
        assert_eq!((g.n(), g.graph().m()), (1, 0));
    }

    #[test]
    fn full_rings_always_connect() {
        let p = UniformParams::new(2, 4, 4, 1).unwrap();
        for stream in 0..20 {
            assert_eq!(sample_uniform(&p, Seed::new(1, stream)).unwrap().graph().m(), 1);
        }
    }

    #[test]
    fn uniform_rings_have_k_distinct_items() {
        let p = UniformParams::new(40, 7, 50, 1).unwrap();
        let g = sample_uniform(&p, Seed::new(9, 9)).unwrap();
        for v in 0..g.n() {
            let set = g.items(v);
            assert_eq!(set.len(), 7);
            assert!(set.windows(2).all(|w| w[0] < w[1]));
            assert!(set.iter().all(|&x| x < 50));
        }
    }

    #[test]
    fn binomial_extremes() {
        let empty = sample_binomial(&BinomialParams::new(5, 0.0, 10, 1).unwrap(), Seed::new(0, 0)).unwrap();
        assert_eq!(empty.graph().m(), 0);
        assert!(empty.item_sets().iter().all(Vec::is_empty));
        let full = sample_binomial(&BinomialParams::new(3, 1.0, 4, 2).unwrap(), Seed::new(0, 0)).unwrap();
        assert!(full.graph().is_complete());
    }

    #[test]
    fn sampling_is_deterministic() {
        let p = UniformParams::new(30, 5, 60, 2).unwrap();
        assert_eq!(sample_uniform(&p, Seed::new(4, 2)).unwrap(), sample_uniform(&p, Seed::new(4, 2)).unwrap());
        let b = BinomialParams::new(30, 0.2, 60, 2).unwrap();
        assert_eq!(sample_binomial(&b, Seed::new(4, 2)).unwrap(), sample_binomial(&b, Seed::new(4, 2)).unwrap());
        assert_ne!(sample_uniform(&p, Seed::new(4, 2)).unwrap(), sample_uniform(&p, Seed::new(4, 3)).unwrap());
    }

    #[test]
    fn dense_and_hashed_prefixes_agree() {
        // the two storage strategies must consume draws identically
        let mut a = ChaCha8Rng::seed_from_u64(5);
        let mut b = ChaCha8Rng::seed_from_u64(5);
        let dense = permutation_prefix(40, 10, &mut a);
        let mut moved: HashMap<u64, u64> = HashMap::new();
        let mut hashed = Vec::new();
        for i in 0..10u64 {
            let j = rand::Rng::random_range(&mut b, i..40);
            let at_j = moved.get(&j).copied().unwrap_or(j);
            let at_i = moved.get(&i).copied().unwrap_or(i);
            moved.insert(j, at_i);
            hashed.push(at_j);
        }
        assert_eq!(dense, hashed);
    }

    #[test]
    fn coupled_uniform_examples() {
        let lo = UniformParams::new(50, 2, 200, 1).unwrap();
        let hi = UniformParams::new(50, 4, 200, 1).unwrap();
        for stream in 0..10 {
            let (a, b) = sample_uniform_coupled(&lo, &hi, Seed::new(11, stream)).unwrap();
            assert!(a.graph().is_spanning_subgraph_of(b.graph()));
        }
        let (a, b) = sample_uniform_coupled(&hi, &hi, Seed::new(1, 1)).unwrap();
        assert_eq!(a, b);
        let lo = UniformParams::new(10, 1, 6, 1).unwrap();
        let hi = UniformParams::new(10, 6, 6, 1).unwrap();
        let (a, b) = sample_uniform_coupled(&lo, &hi, Seed::new(1, 1)).unwrap();
        assert!(b.graph().is_complete() && a.graph().is_spanning_subgraph_of(b.graph()));
    }

    #[test]
    fn coupled_binomial_examples() {
        let lo = BinomialParams::new(50, 0.3, 100, 2).unwrap();
        let hi = BinomialParams::new(50, 0.6, 100, 2).unwrap();
        for stream in 0..10 {
            let (a, b) = sample_binomial_coupled(&lo, &hi, Seed::new(12, stream)).unwrap();
            assert!(a.graph().is_spanning_subgraph_of(b.graph()));
            for v in 0..50 {
                assert!(a.items(v).iter().all(|x| b.items(v).binary_search(x).is_ok()));
            }
        }
        let (a, b) = sample_binomial_coupled(&hi, &hi, Seed::new(2, 2)).unwrap();
        assert_eq!(a, b);
        let zero = hi.with_t(0.0).unwrap();
        let (a, _) = sample_binomial_coupled(&zero, &hi, Seed::new(2, 2)).unwrap();
        assert_eq!(a.graph().m(), 0);
    }

    #[test]
    fn coupling_mismatch_errors() {
        let a = UniformParams::new(10, 3, 20, 1).unwrap();
        let b = UniformParams::new(10, 2, 20, 1).unwrap();
        let c = UniformParams::new(11, 3, 20, 1).unwrap();
        assert!(matches!(sample_uniform_coupled(&a, &b, Seed::new(0, 0)), Err(Error::CouplingMismatch(_))));
        assert!(matches!(sample_uniform_coupled(&b, &c, Seed::new(0, 0)), Err(Error::CouplingMismatch(_))));
        let x = BinomialParams::new(10, 0.5, 20, 1).unwrap();
        let y = BinomialParams::new(10, 0.4, 20, 1).unwrap();
        let z = BinomialParams::new(10, 0.6, 20, 2).unwrap();
        assert!(matches!(sample_binomial_coupled(&x, &y, Seed::new(0, 0)), Err(Error::CouplingMismatch(_))));
        assert!(matches!(sample_binomial_coupled(&y, &z, Seed::new(0, 0)), Err(Error::CouplingMismatch(_))));
    }

    #[test]
    fn build_edges_examples() {
        assert_eq!(build_edges(&[vec![], vec![], vec![]], 1, u64::MAX).unwrap().m(), 0);
        let g = build_edges(&[vec![0, 1], vec![1, 2], vec![3]], 1, u64::MAX).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn pair_work_cap_is_enforced() {
        let sets = vec![vec![0u64]; 100];
        // C(100, 2) = 4950 increments
        assert!(build_edges(&sets, 1, 4950).is_ok());
        assert!(matches!(build_edges(&sets, 1, 4949), Err(Error::ResourceExceeded { work: 4950, cap: 4949 })));
        let sampler = Sampler { pair_work_cap: 10 };
        let p = UniformParams::new(100, 10, 10, 1).unwrap();
        assert!(matches!(sampler.uniform(&p, Seed::new(0, 0)), Err(Error::ResourceExceeded { .. })));
    }

    #[test]
    fn edge_list_round_trip() {
        let p = UniformParams::new(12, 3, 20, 1).unwrap();
        let g = sample_uniform(&p, Seed::new(5, 5)).unwrap();
        let text = write_edge_list(&g);
        assert!(text.starts_with(&format!("12 {} 1 uniform\n", g.graph().m())));
        let back = read_edge_list(&text).unwrap();
        assert_eq!(&back.graph, g.graph());
        assert_eq!(back.items.as_deref(), Some(g.item_sets()));
        assert_eq!((back.s, back.model.as_str()), (1, "uniform"));
    }

    #[test]
    fn edge_list_handles_empty_item_lines() {
        let b = BinomialParams::new(6, 0.0, 5, 1).unwrap();
        let g = sample_binomial(&b, Seed::new(0, 0)).unwrap();
        let back = read_edge_list(&write_edge_list(&g)).unwrap();
        assert_eq!(back.items.unwrap(), vec![Vec::<u64>::new(); 6]);
    }

    #[test]
    fn edge_list_rejects_malformed() {
        assert!(read_edge_list("").is_err());
        assert!(read_edge_list("3 1 1\n0 1\n").is_err());
        assert!(read_edge_list("3 2 1 x\n0 1\n").is_err());
        assert!(read_edge_list("3 1 1 x\n0 3\n").is_err());
        assert!(read_edge_list("3 2 1 x\n0 1\n1 0\n").is_err());
        let ok = read_edge_list("# hand written\n3 1 1 none\n\n0 1\n").unwrap();
        assert_eq!(ok.graph.m(), 1);
        assert!(ok.items.is_none());
    }

    proptest! {
        #[test]
        fn inverted_index_matches_pairwise_scan(
            sets in prop::collection::vec(prop::collection::btree_set(0u64..24, 0..10), 0..64),
            s in 1u32..4,
        ) {
            let sets: Vec<Vec<u64>> = sets.into_iter().map(|b| b.into_iter().collect()).collect();
            let g = build_edges(&sets, s, u64::MAX).unwrap();
            prop_assert_eq!(g.edges().collect::<Vec<_>>(), brute_force_edges(&sets, s));
        }

        #[test]
        fn sampled_edges_follow_the_threshold_rule(seed in any::<u64>(), k in 1u64..6, s in 1u32..3) {
            prop_assume!(u64::from(s) <= k);
            let p = UniformParams::new(25, k, 30, s).unwrap();
            let g = sample_uniform(&p, Seed::new(seed, 0)).unwrap();
            prop_assert_eq!(g.graph().edges().collect::<Vec<_>>(), brute_force_edges(g.item_sets(), s));
            let b = BinomialParams::new(25, 0.15, 30, s).unwrap();
            let h = sample_binomial(&b, Seed::new(seed, 1)).unwrap();
            prop_assert_eq!(h.graph().edges().collect::<Vec<_>>(), brute_force_edges(h.item_sets(), s));
        }
    }
}
