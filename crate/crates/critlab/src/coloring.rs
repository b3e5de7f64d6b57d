//! Exact vertex coloring: k-colorability decision and chromatic number, both
//! with certificate colorings.
//!
//! The solver is branch-and-bound DSATUR: a greedy clique is pre-colored to
//! break color symmetry, vertices are branched in saturation order, and a new
//! color may only be introduced as the next unused index. "No" answers come
//! from exhausted search (or an oversized clique), never from heuristics. An
//! optional node budget turns long searches into a distinct error instead of
//! a wrong answer.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{BitIter, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("search budget exhausted after {explored} explored nodes")]
    BudgetExceeded { explored: u64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("color {color} at vertex {vertex} exceeds palette of size {k}")]
    ColorOutOfRange { vertex: usize, color: u32, k: usize },
}

/// Shared node budget for the exact solvers. Charged once per branch node;
/// an exhausted budget surfaces as [`SolveError::BudgetExceeded`].
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget { limit: u64::MAX, used: AtomicU64::new(0) }
    }

    pub fn limited(nodes: u64) -> Budget {
        Budget { limit: nodes, used: AtomicU64::new(0) }
    }

    pub fn charge(&self, nodes: u64) -> Result<(), SolveError> {
        let total = self.used.fetch_add(nodes, Ordering::Relaxed) + nodes;
        if total > self.limit {
            Err(SolveError::BudgetExceeded { explored: total })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::unlimited()
    }
}

/// A proper coloring candidate: a palette size `k` and one color `< k` per
/// vertex. Properness is checked against a graph, not assumed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    k: usize,
    colors: Vec<u32>,
}

impl Coloring {
    pub fn new(k: usize, colors: Vec<u32>) -> Result<Coloring, ColoringError> {
        for (vertex, &color) in colors.iter().enumerate() {
            if color as usize >= k {
                return Err(ColoringError::ColorOutOfRange { vertex, color, k });
            }
        }
        Ok(Coloring { k, colors })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn colors_used(&self) -> usize {
        let seen: std::collections::BTreeSet<u32> = self.colors.iter().copied().collect();
        seen.len()
    }

    /// True when this assignment covers every vertex of `g` and no edge is
    /// monochromatic.
    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.n() && g.edges().iter().all(|&(u, v)| self.colors[u] != self.colors[v])
    }

    /// Vertices of color class `c`, ascending.
    pub fn class(&self, c: u32) -> Vec<usize> {
        (0..self.colors.len()).filter(|&v| self.colors[v] == c).collect()
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        (0..self.k as u32).map(|c| self.class(c)).collect()
    }

    /// DOT rendering with one fill color per class (cycling over a 12-color
    /// scheme for large palettes).
    pub fn to_dot(&self, g: &Graph) -> String {
        let mut out = String::from("graph G {\n  node [style=filled, colorscheme=set312];\n");
        for v in 0..g.n() {
            let c = self.colors.get(v).copied().unwrap_or(0);
            out.push_str(&format!(
                "  {v} [label=\"{v}\\nc{c}\", fillcolor={}];\n",
                c % 12 + 1
            ));
        }
        for (u, v) in g.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Greedy clique: seed with a maximum-degree vertex, extend by the
/// highest-degree common neighbor (ties to the smallest label). Returns the
/// clique sorted ascending.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    if g.n() == 0 {
        return Vec::new();
    }
    let deg = g.degrees();
    let pick = |vs: &mut dyn Iterator<Item = usize>| {
        vs.max_by_key(|&v| (deg[v], std::cmp::Reverse(v)))
    };
    let first = pick(&mut (0..g.n())).unwrap();
    let mut clique = vec![first];
    let mut cand: Vec<u64> = g.row(first).to_vec();
    loop {
        let Some(next) = pick(&mut BitIter::new(&cand)) else { break };
        clique.push(next);
        for (c, r) in cand.iter_mut().zip(g.row(next)) {
            *c &= r;
        }
    }
    clique.sort_unstable();
    clique
}

/// Greedy DSATUR coloring with an unbounded palette; the number of distinct
/// colors used is an upper bound on the chromatic number.
fn greedy_dsatur(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let deg = g.degrees();
    let mut colors: Vec<Option<u32>> = vec![None; n];
    // seen[v] holds the set of colors on v's colored neighbors
    let mut seen: Vec<std::collections::BTreeSet<u32>> = vec![Default::default(); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v].is_none())
            .max_by_key(|&v| (seen[v].len(), deg[v], std::cmp::Reverse(v)))
            .unwrap();
        let c = (0..).find(|c| !seen[v].contains(c)).unwrap();
        colors[v] = Some(c);
        for u in g.neighbors(v) {
            seen[u].insert(c);
        }
    }
    colors.into_iter().map(Option::unwrap).collect()
}

struct Solver<'a> {
    g: &'a Graph,
    k: usize,
    deg: Vec<usize>,
    colors: Vec<Option<u32>>,
    // neighbor-color counts, n rows of k entries; sat[v] = #distinct colors
    // among v's neighbors
    ncount: Vec<u32>,
    sat: Vec<u32>,
    uncolored: usize,
    used_colors: u32,
}

impl<'a> Solver<'a> {
    fn new(g: &'a Graph, k: usize) -> Solver<'a> {
        Solver {
            g,
            k,
            deg: g.degrees(),
            colors: vec![None; g.n()],
            ncount: vec![0; g.n() * k],
            sat: vec![0; g.n()],
            uncolored: g.n(),
            used_colors: 0,
        }
    }

    fn assign(&mut self, v: usize, c: u32) {
        self.colors[v] = Some(c);
        self.uncolored -= 1;
        for u in self.g.neighbors(v) {
            let slot = u * self.k + c as usize;
            if self.ncount[slot] == 0 {
                self.sat[u] += 1;
            }
            self.ncount[slot] += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: u32) {
        self.colors[v] = None;
        self.uncolored += 1;
        for u in self.g.neighbors(v) {
            let slot = u * self.k + c as usize;
            self.ncount[slot] -= 1;
            if self.ncount[slot] == 0 {
                self.sat[u] -= 1;
            }
        }
    }

    fn solve(&mut self, budget: &Budget) -> Result<bool, SolveError> {
        if self.uncolored == 0 {
            return Ok(true);
        }
        budget.charge(1)?;
        let v = (0..self.g.n())
            .filter(|&v| self.colors[v].is_none())
            .max_by_key(|&v| (self.sat[v], self.deg[v], std::cmp::Reverse(v)))
            .unwrap();
        // a fresh color may only enter as the next unused index
        let cmax = (self.used_colors + 1).min(self.k as u32);
        for c in 0..cmax {
            if self.ncount[v * self.k + c as usize] != 0 {
                continue;
            }
            let prev_used = self.used_colors;
            self.used_colors = self.used_colors.max(c + 1);
            self.assign(v, c);
            if self.solve(budget)? {
                return Ok(true);
            }
            self.unassign(v, c);
            self.used_colors = prev_used;
        }
        Ok(false)
    }
}

/// Decide whether `g` has a proper coloring with at most `k` colors. `Some`
/// carries a certificate coloring; `None` is exact (oversized clique or
/// exhausted search).
pub fn is_k_colorable(g: &Graph, k: usize, budget: &Budget) -> Result<Option<Coloring>, SolveError> {
    if g.n() == 0 {
        return Ok(Some(Coloring { k, colors: Vec::new() }));
    }
    if k == 0 {
        return Ok(None);
    }
    let clique = greedy_clique(g);
    if clique.len() > k {
        return Ok(None);
    }
    let greedy = greedy_dsatur(g);
    if greedy.iter().max().map_or(0, |&c| c as usize + 1) <= k {
        return Ok(Some(Coloring { k, colors: greedy }));
    }
    let mut solver = Solver::new(g, k);
    for (c, &v) in clique.iter().enumerate() {
        solver.assign(v, c as u32);
    }
    solver.used_colors = clique.len() as u32;
    if solver.solve(budget)? {
        let colors = solver.colors.into_iter().map(Option::unwrap).collect();
        Ok(Some(Coloring { k, colors }))
    } else {
        Ok(None)
    }
}

/// Exact chromatic number with a witness coloring using exactly that many
/// colors.
pub fn chromatic_number(g: &Graph, budget: &Budget) -> Result<(usize, Coloring), SolveError> {
    if g.n() == 0 {
        return Ok((0, Coloring { k: 0, colors: Vec::new() }));
    }
    let lower = greedy_clique(g).len();
    let greedy = greedy_dsatur(g);
    let upper = greedy.iter().max().map_or(0, |&c| c as usize + 1);
    for k in lower..upper {
        if let Some(c) = is_k_colorable(g, k, budget)? {
            debug_assert!(c.is_proper(g));
            return Ok((c.colors_used(), c));
        }
    }
    Ok((upper, Coloring { k: upper, colors: greedy }))
}
