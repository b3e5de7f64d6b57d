//! Constructors for the graph families used throughout: the dense 4-critical
//! Toft graphs, the Dirac join construction, Turán graphs, and small helpers.

use rand::Rng;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("toft graph needs an odd section size m >= 3, got {0}")]
    ToftSize(usize),
    #[error("dirac join needs an odd cycle length m >= 3, got {0}")]
    DiracSize(usize),
    #[error("turan graph needs 1 <= parts <= n, got {parts} parts on {n} vertices")]
    TuranParts { n: usize, parts: usize },
    #[error("odd cycle needs an odd length >= 3, got {0}")]
    OddCycleSize(usize),
    #[error("cycle needs length >= 3, got {0}")]
    CycleSize(usize),
    #[error("wheel needs a rim of length >= 3, got {0}")]
    WheelSize(usize),
}

/// Toft's dense 4-critical graph on `n = 4m` vertices, `m` odd.
///
/// Four sections of size `m`: `A = 0..m` and `D = 3m..4m` induce m-cycles,
/// `B = m..2m` and `C = 2m..3m` are independent and completely joined to each
/// other, and `a_i ~ b_i`, `c_i ~ d_i` are perfect matchings. The result has
/// `m^2 + 4m = n^2/16 + n` edges, and is triangle-free for `m >= 5`.
pub fn toft(m: usize) -> Result<Graph, ConstructionError> {
    if m < 3 || m % 2 == 0 {
        return Err(ConstructionError::ToftSize(m));
    }
    let mut edges = Vec::new();
    for i in 0..m {
        edges.push((i, (i + 1) % m)); // A cycle
        edges.push((3 * m + i, 3 * m + (i + 1) % m)); // D cycle
        edges.push((i, m + i)); // A-B matching
        edges.push((2 * m + i, 3 * m + i)); // C-D matching
        for j in 0..m {
            edges.push((m + i, 2 * m + j)); // B-C complete bipartite
        }
    }
    Ok(Graph::from_edges(4 * m, edges).unwrap())
}

/// Join of two disjoint m-cycles (`m` odd): every vertex of one cycle is
/// adjacent to every vertex of the other. On `n = 2m` vertices it has
/// `m^2 + 2m = n^2/4 + n` edges and is 6-critical.
pub fn dirac(m: usize) -> Result<Graph, ConstructionError> {
    if m < 3 || m % 2 == 0 {
        return Err(ConstructionError::DiracSize(m));
    }
    let mut edges = Vec::new();
    for i in 0..m {
        edges.push((i, (i + 1) % m));
        edges.push((m + i, m + (i + 1) % m));
        for j in 0..m {
            edges.push((i, m + j));
        }
    }
    Ok(Graph::from_edges(2 * m, edges).unwrap())
}

/// Part sizes of the Turán graph: as equal as possible, larger parts first.
pub fn turan_part_sizes(n: usize, parts: usize) -> Vec<usize> {
    let q = n / parts;
    let r = n % parts;
    (0..parts).map(|i| if i < r { q + 1 } else { q }).collect()
}

/// Complete multipartite Turán graph on `n` vertices with the given number of
/// parts. Labels are assigned part by part, larger parts first.
pub fn turan(n: usize, parts: usize) -> Result<Graph, ConstructionError> {
    if parts < 1 || parts > n {
        return Err(ConstructionError::TuranParts { n, parts });
    }
    let sizes = turan_part_sizes(n, parts);
    let mut bounds = vec![0];
    for s in &sizes {
        bounds.push(bounds.last().unwrap() + s);
    }
    let part_of = |v: usize| bounds.iter().position(|&b| b > v).unwrap() - 1;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if part_of(u) != part_of(v) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, edges).unwrap())
}

/// Edge count of the Turán graph without building it.
pub fn turan_edges(n: usize, parts: usize) -> Result<usize, ConstructionError> {
    if parts < 1 || parts > n {
        return Err(ConstructionError::TuranParts { n, parts });
    }
    let inner: usize = turan_part_sizes(n, parts).iter().map(|s| s * (s - 1) / 2).sum();
    Ok(n * (n - 1) / 2 - inner)
}

/// Cycle of any length >= 3 (test helper; the 3-critical family is
/// [`odd_cycle`]).
pub fn cycle(n: usize) -> Result<Graph, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::CycleSize(n));
    }
    Ok(Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap())
}

/// Odd cycle: the 3-critical graphs, exactly.
pub fn odd_cycle(m: usize) -> Result<Graph, ConstructionError> {
    if m < 3 || m % 2 == 0 {
        return Err(ConstructionError::OddCycleSize(m));
    }
    cycle(m)
}

/// Wheel: an m-cycle `0..m` plus a hub (vertex `m`) adjacent to every rim
/// vertex.
pub fn wheel(m: usize) -> Result<Graph, ConstructionError> {
    if m < 3 {
        return Err(ConstructionError::WheelSize(m));
    }
    let mut edges: Vec<(usize, usize)> = (0..m).map(|i| (i, (i + 1) % m)).collect();
    edges.extend((0..m).map(|i| (i, m)));
    Ok(Graph::from_edges(m + 1, edges).unwrap())
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.set_edge(u, v);
        }
    }
    g
}

/// Complete bipartite graph with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::empty(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.set_edge(u, v);
        }
    }
    g
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// Star with hub 0 and the given number of leaves.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
}

/// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`, spokes
/// `i ~ i+5`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).unwrap()
}

/// Erdős–Rényi graph: each pair is an edge independently with probability `p`.
pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                g.set_edge(u, v);
            }
        }
    }
    g
}
