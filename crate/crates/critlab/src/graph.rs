//! Dense undirected simple graphs over vertex labels `0..n`.
//!
//! Adjacency is stored as one bitset row per vertex, so neighborhood
//! intersections and clique extension run on machine words. Graphs are
//! immutable values: every "mutation" returns a new graph.

use serde::Serialize;
use thiserror::Error;

use crate::graph6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range for graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0} not allowed")]
    SelfLoop(usize),
    #[error("edge {0}-{1} not present")]
    NoSuchEdge(usize, usize),
    #[error("operation needs at least one {0}, graph has none")]
    Empty(&'static str),
}

/// Undirected simple graph. Vertices are `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    m: usize,
    adj: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, g6={})", self.n, self.m, self.to_graph6())
    }
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        let words = words_for(n);
        Graph { n, words, m: 0, adj: vec![0; n * words] }
    }

    /// Build from an edge list. Duplicate edges are ignored; self-loops and
    /// out-of-range endpoints are errors.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Parse a graph6 string (strict: bad bytes, bad padding and trailing
    /// garbage are all rejected).
    pub fn from_graph6(s: &str) -> Result<Graph, graph6::Graph6Error> {
        graph6::decode(s)
    }

    /// Canonical graph6 encoding of this labelled graph.
    pub fn to_graph6(&self) -> String {
        graph6::encode(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange(v, self.n))
        }
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        if !self.has_edge(u, v) {
            self.adj[u * self.words + v / 64] |= 1 << (v % 64);
            self.adj[v * self.words + u / 64] |= 1 << (u % 64);
            self.m += 1;
        }
    }

    fn clear_edge(&mut self, u: usize, v: usize) {
        if self.has_edge(u, v) {
            self.adj[u * self.words + v / 64] &= !(1 << (v % 64));
            self.adj[v * self.words + u / 64] &= !(1 << (u % 64));
            self.m -= 1;
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(self.row(v))
    }

    /// Number of common neighbors of `u` and `v`.
    pub fn codegree(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> Vec<usize> {
        let and: Vec<u64> = self.row(u).iter().zip(self.row(v)).map(|(a, b)| a & b).collect();
        BitIter::new(&and).collect()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// New graph with edge `u-v` removed. The edge must exist.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::NoSuchEdge(u, v));
        }
        let mut g = self.clone();
        g.clear_edge(u, v);
        Ok(g)
    }

    /// New graph with edge `u-v` added (no-op if present).
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let mut g = self.clone();
        g.set_edge(u, v);
        Ok(g)
    }

    /// New graph on `n+1` vertices where the fresh vertex `n` is joined to
    /// `neighbors`.
    pub fn with_vertex_added(&self, neighbors: &[usize]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(self.n + 1);
        for (u, v) in self.edges() {
            g.set_edge(u, v);
        }
        for &v in neighbors {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange(v, self.n));
            }
            g.set_edge(self.n, v);
        }
        Ok(g)
    }

    /// Induced subgraph on `verts` (need not be sorted; duplicates rejected
    /// by the out-of-range check on relabel). Vertex `i` of the result is
    /// `verts[i]`.
    pub fn induced(&self, verts: &[usize]) -> Result<Graph, GraphError> {
        for &v in verts {
            self.check_vertex(v)?;
        }
        let mut g = Graph::empty(verts.len());
        for i in 0..verts.len() {
            for j in i + 1..verts.len() {
                if self.has_edge(verts[i], verts[j]) {
                    g.set_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Relabel by `perm`: vertex `i` of the result is vertex `perm[i]` of
    /// `self`. `perm` must be a permutation of `0..n`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::VertexOutOfRange(perm.len(), self.n));
        }
        let mut seen = vec![false; self.n];
        for &v in perm {
            self.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(GraphError::VertexOutOfRange(v, self.n));
            }
        }
        let mut g = Graph::empty(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(perm[i], perm[j]) {
                    g.set_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    /// Number of edges with both endpoints in `s`.
    pub fn edges_within(&self, s: &[usize]) -> Result<usize, GraphError> {
        let mut count = 0;
        for (i, &u) in s.iter().enumerate() {
            self.check_vertex(u)?;
            for &v in &s[i + 1..] {
                if self.has_edge(u, v) {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// Number of edges with one endpoint in `a` and the other in `b`.
    /// The sets must be disjoint.
    pub fn edges_between(&self, a: &[usize], b: &[usize]) -> Result<usize, GraphError> {
        let mut count = 0;
        for &u in a {
            self.check_vertex(u)?;
            debug_assert!(!b.contains(&u), "edges_between needs disjoint sets");
            for &v in b {
                self.check_vertex(v)?;
                if self.has_edge(u, v) {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut found = 1;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    found += 1;
                    stack.push(u);
                }
            }
        }
        found == self.n
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for u in self.neighbors(v) {
                    if side[u] == u8::MAX {
                        side[u] = 1 - side[v];
                        queue.push_back(u);
                    } else if side[u] == side[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Count complete subgraphs on `t` vertices. `t = 0` counts the empty
    /// clique (1), `t = 1` counts vertices, `t = 2` edges, `t = 3` triangles.
    pub fn count_cliques(&self, t: usize) -> u64 {
        if t == 0 {
            return 1;
        }
        let full: Vec<u64> = {
            let mut f = vec![u64::MAX; self.words];
            if self.n % 64 != 0 && self.words > 0 {
                f[self.words - 1] = (1u64 << (self.n % 64)) - 1;
            }
            f
        };
        let mut count = 0;
        let mut cand = full;
        self.clique_count_rec(t, 0, &mut cand, &mut count);
        count
    }

    fn clique_count_rec(&self, left: usize, min_vertex: usize, cand: &mut [u64], count: &mut u64) {
        // Extend the current clique by each candidate >= min_vertex; candidates
        // are the common neighbors of everything chosen so far.
        if left == 0 {
            *count += 1;
            return;
        }
        let verts: Vec<usize> = BitIter::new(cand).skip_while(|&v| v < min_vertex).collect();
        if verts.len() < left {
            return;
        }
        for v in verts {
            let saved: Vec<u64> = cand.to_vec();
            for (c, r) in cand.iter_mut().zip(self.row(v)) {
                *c &= r;
            }
            self.clique_count_rec(left - 1, v + 1, cand, count);
            cand.copy_from_slice(&saved);
        }
    }

    /// Per-vertex and total triangle counts. `per_vertex[v]` is the number of
    /// triangles through `v`; `total` counts each triangle once.
    pub fn triangle_profile(&self) -> TriangleProfile {
        let mut per_vertex = vec![0u64; self.n];
        for v in 0..self.n {
            let mut t = 0u64;
            for u in self.neighbors(v) {
                t += self.codegree(u, v) as u64;
            }
            per_vertex[v] = t / 2;
        }
        let total = per_vertex.iter().sum::<u64>() / 3;
        TriangleProfile { per_vertex, total }
    }

    /// Edge maximizing the endpoint degree sum. Ties break to the
    /// lexicographically smallest `(u, v)` with `u < v`.
    pub fn heaviest_edge(&self) -> Result<HeavyEdge, GraphError> {
        let deg = self.degrees();
        let mut best: Option<HeavyEdge> = None;
        for (u, v) in self.edges() {
            let s = deg[u] + deg[v];
            if best.as_ref().is_none_or(|b| s > b.degree_sum) {
                best = Some(HeavyEdge { u, v, degree_sum: s });
            }
        }
        let best = best.ok_or(GraphError::Empty("edge"))?;
        // d(x)+d(y) >= 2 d(G) holds for some edge in any graph: the average
        // endpoint degree sum over edges is sum(d^2)/e >= (2e)^2/(n e).
        assert!(best.degree_sum * self.n >= 4 * self.m);
        Ok(best)
    }

    /// 2-path `x - y - z` (`x != z`, `x`/`z` may be adjacent) maximizing
    /// `d(x) + d(y) + d(z) - 3 t(x) - 3 t(z)` where `t(v)` counts triangles
    /// through `v`. Ties break to the lexicographically smallest `(x, y, z)`.
    pub fn heaviest_2path(&self) -> Result<HeavyTwoPath, GraphError> {
        let deg = self.degrees();
        let tri = self.triangle_profile().per_vertex;
        let mut best: Option<HeavyTwoPath> = None;
        for y in 0..self.n {
            let nbrs: Vec<usize> = self.neighbors(y).collect();
            for &x in &nbrs {
                for &z in &nbrs {
                    if x == z {
                        continue;
                    }
                    let value = (deg[x] + deg[y] + deg[z]) as i64
                        - 3 * (tri[x] + tri[z]) as i64;
                    let key = (x, y, z);
                    let better = match &best {
                        None => true,
                        Some(b) => value > b.value || (value == b.value && key < (b.x, b.y, b.z)),
                    };
                    if better {
                        best = Some(HeavyTwoPath { x, y, z, value });
                    }
                }
            }
        }
        best.ok_or(GraphError::Empty("2-path"))
    }

    /// 4-cycle `v1 v2 v3 v4` maximizing the degree sum of its vertices.
    /// The reported tuple is normalized: `v1` is the smallest vertex on the
    /// cycle, `v2` the smaller of its two cycle-neighbors; ties between
    /// cycles of equal weight break to the lexicographically smallest
    /// normalized tuple.
    pub fn heaviest_4cycle(&self) -> Result<HeavyFourCycle, GraphError> {
        let deg = self.degrees();
        let mut best: Option<HeavyFourCycle> = None;
        // Enumerate by the opposite pair (p, q), p < q: any two distinct
        // common neighbors x, y of p and q close a 4-cycle p-x-q-y.
        for p in 0..self.n {
            for q in p + 1..self.n {
                let common = self.common_neighbors(p, q);
                for (i, &x) in common.iter().enumerate() {
                    for &y in &common[i + 1..] {
                        let sum = deg[p] + deg[q] + deg[x] + deg[y];
                        // x < y and p < q; p is opposite q, x opposite y.
                        let tuple = if p < x {
                            [p, x, q, y]
                        } else {
                            [x, p, y, q]
                        };
                        let better = match &best {
                            None => true,
                            Some(b) => {
                                sum > b.degree_sum
                                    || (sum == b.degree_sum && tuple < b.vertices)
                            }
                        };
                        if better {
                            best = Some(HeavyFourCycle { vertices: tuple, degree_sum: sum });
                        }
                    }
                }
            }
        }
        best.ok_or(GraphError::Empty("4-cycle"))
    }

    /// Graphviz DOT rendering (undirected, plain).
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            out.push_str(&format!("  {v};\n"));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleProfile {
    pub per_vertex: Vec<u64>,
    pub total: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HeavyEdge {
    pub u: usize,
    pub v: usize,
    pub degree_sum: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HeavyTwoPath {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub value: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HeavyFourCycle {
    /// Cycle order: `vertices[0]-vertices[1]-vertices[2]-vertices[3]-vertices[0]`;
    /// opposite pairs are `(0, 2)` and `(1, 3)`.
    pub vertices: [usize; 4],
    pub degree_sum: usize,
}

/// Iterator over set bit positions of a word slice.
pub(crate) struct BitIter {
    words: Vec<u64>,
    idx: usize,
}

impl BitIter {
    pub(crate) fn new(words: &[u64]) -> BitIter {
        BitIter { words: words.to_vec(), idx: 0 }
    }
}

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.idx < self.words.len() {
            let w = self.words[self.idx];
            if w == 0 {
                self.idx += 1;
                continue;
            }
            let bit = w.trailing_zeros() as usize;
            self.words[self.idx] &= w - 1;
            return Some(self.idx * 64 + bit);
        }
        None
    }
}
