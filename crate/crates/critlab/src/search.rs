//! Isomorph-free exhaustive enumeration of k-critical graphs at small n, and
//! exact f_k(n) values with extremal witnesses.
//!
//! Canonical forms are exact: the lexicographically minimal graph6 string
//! over all vertex relabelings, found by branch-and-bound over label
//! prefixes with twin elimination. Enumeration grows graphs one vertex at a
//! time; every intermediate must remain (k−1)-colorable, K_k-free and
//! degree-feasible (all hereditary for induced subgraphs of a k-critical
//! graph), so the survivor set at full size provably contains every critical
//! graph, which exact coloring and per-edge deletion checks then certify.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{is_k_colorable, Budget, SolveError};
use crate::constructions::turan_edges;
use crate::criticality::is_k_critical;
use crate::graph::Graph;

/// Largest n with guaranteed-exact canonical forms.
pub const CANONICAL_MAX_N: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("canonical form is exact only up to {CANONICAL_MAX_N} vertices, got n = {0}")]
    CanonicalTooLarge(usize),
    #[error("enumeration refused: n = {n} exceeds the desk-scale limit {max} for k = {k}")]
    TooLarge { n: usize, k: usize, max: usize },
    #[error("criticality enumeration is defined for k >= 2, got {0}")]
    SmallK(usize),
    #[error("exhaustive isomorphism-class listing is limited to n <= 6, got {0}")]
    LatticeTooLarge(usize),
    #[error("work unit parent is not a valid canonical graph: {0}")]
    BadWorkUnit(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// The lexicographically minimal graph6 string of `g` over all vertex
/// relabelings. Isomorphic graphs (n ≤ 10) map to identical strings.
pub fn canonical_form(g: &Graph) -> Result<String, SearchError> {
    let n = g.n();
    if n > CANONICAL_MAX_N {
        return Err(SearchError::CanonicalTooLarge(n));
    }
    if n <= 1 {
        return Ok(g.to_graph6());
    }
    let rows: Vec<u16> = (0..n)
        .map(|v| g.neighbors(v).fold(0u16, |m, u| m | (1 << u)))
        .collect();
    let total_bits = n * (n - 1) / 2;
    let mut best_bits = u64::MAX;
    let mut best_perm: Vec<usize> = Vec::new();
    let mut placed: Vec<usize> = Vec::with_capacity(n);
    search_min(&rows, n, total_bits, &mut placed, 0, 0, &mut best_bits, &mut best_perm);
    Ok(g.relabeled(&best_perm).unwrap().to_graph6())
}

/// Depth-first minimization of the column-major adjacency bit string.
/// `prefix` holds the bits fixed by `placed`, first bit most significant; a
/// branch survives only while its prefix is no larger than the incumbent's.
#[allow(clippy::too_many_arguments)]
fn search_min(
    rows: &[u16],
    n: usize,
    total_bits: usize,
    placed: &mut Vec<usize>,
    used: u16,
    prefix: u64,
    best_bits: &mut u64,
    best_perm: &mut Vec<usize>,
) {
    let t = placed.len();
    if t == n {
        if prefix < *best_bits {
            *best_bits = prefix;
            *best_perm = placed.clone();
        }
        return;
    }
    // candidate columns, smallest bit pattern first; twins (vertices whose
    // swap is an automorphism) are explored only once
    let mut cands: Vec<(u64, usize)> = Vec::with_capacity(n - t);
    'cand: for c in 0..n {
        if used & (1 << c) != 0 {
            continue;
        }
        for &(_, prev) in &cands {
            let pair = !((1u16 << c) | (1 << prev));
            if rows[c] & pair == rows[prev] & pair {
                continue 'cand;
            }
        }
        let mut chunk = 0u64;
        for &p in placed.iter() {
            chunk = (chunk << 1) | ((rows[c] >> p) & 1) as u64;
        }
        cands.push((chunk, c));
    }
    cands.sort_unstable();
    let done_bits = t * (t + 1) / 2; // bits fixed once one more vertex lands
    for (chunk, c) in cands {
        let new_prefix = (prefix << t) | chunk;
        if *best_bits != u64::MAX && new_prefix > (*best_bits >> (total_bits - done_bits)) {
            continue; // every completion is larger than the incumbent
        }
        placed.push(c);
        search_min(rows, n, total_bits, placed, used | (1 << c), new_prefix, best_bits, best_perm);
        placed.pop();
    }
}

/// All graphs on `n ≤ 6` vertices up to isomorphism, as sorted canonical
/// forms, obtained by canonicalizing the full edge-subset lattice.
pub fn isomorphism_classes(n: usize) -> Result<Vec<String>, SearchError> {
    if n > 6 {
        return Err(SearchError::LatticeTooLarge(n));
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut seen = std::collections::BTreeSet::new();
    for mask in 0u32..1 << pairs.len() {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e);
        let g = Graph::from_edges(n, edges).unwrap();
        seen.insert(canonical_form(&g)?);
    }
    Ok(seen.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationResult {
    pub n: usize,
    pub k: usize,
    /// canonical graph6 strings, edge count descending then lexicographic
    pub graphs: Vec<String>,
    /// max edges over all k-critical graphs on n vertices; absent if none
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_value: Option<usize>,
    /// the graphs attaining `f_value`
    pub witnesses: Vec<String>,
}

/// One independent expansion job: all critical graphs reachable from one
/// canonical parent on n−1 vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkUnit {
    pub parent: String,
}

fn max_enumeration_n(k: usize) -> usize {
    match k {
        2 | 3 => CANONICAL_MAX_N,
        4 => 9,
        _ => 8,
    }
}

fn check_enumeration_domain(n: usize, k: usize) -> Result<(), SearchError> {
    if k < 2 {
        return Err(SearchError::SmallK(k));
    }
    let max = max_enumeration_n(k);
    if n > max {
        return Err(SearchError::TooLarge { n, k, max });
    }
    Ok(())
}

/// Hereditary pruning for an s-vertex graph that must extend to a k-critical
/// graph on `n` vertices: proper induced subgraphs are (k−1)-colorable and
/// K_k-free, and each vertex can gain at most one neighbor per future vertex.
fn feasible_intermediate(
    g: &Graph,
    n: usize,
    k: usize,
    budget: &Budget,
) -> Result<bool, SolveError> {
    let slack = n - g.n();
    if (0..g.n()).any(|v| g.degree(v) + slack + 1 < k) {
        return Ok(false);
    }
    if g.n() >= k && g.count_cliques(k) > 0 {
        return Ok(false);
    }
    Ok(is_k_colorable(g, k - 1, budget)?.is_some())
}

/// The iso-reduced level set on `s` vertices (all graphs that could be the
/// first-s induced subgraph of some k-critical graph on n vertices).
fn level_set(s: usize, n: usize, k: usize, budget: &Budget) -> Result<Vec<Graph>, SearchError> {
    let mut level = vec![Graph::empty(1)];
    for _ in 2..=s {
        let expanded: Vec<Result<Vec<Graph>, SearchError>> = level
            .par_iter()
            .map(|parent| {
                let mut out = Vec::new();
                let pn = parent.n();
                for mask in 0u32..1 << pn {
                    let nbrs: Vec<usize> = (0..pn).filter(|&v| mask & (1 << v) != 0).collect();
                    let cand = parent.with_vertex_added(&nbrs).unwrap();
                    if feasible_intermediate(&cand, n, k, budget)? {
                        out.push(cand);
                    }
                }
                Ok(out)
            })
            .collect();
        let mut dedup: BTreeMap<String, Graph> = BTreeMap::new();
        for batch in expanded {
            for g in batch? {
                let canon = canonical_form(&g)?;
                dedup
                    .entry(canon.clone())
                    .or_insert_with(|| Graph::from_graph6(&canon).unwrap());
            }
        }
        level = dedup.into_values().collect();
    }
    Ok(level)
}

/// Expand one parent to full size and return the k-critical completions
/// (canonical forms, possibly duplicated across parents).
fn expand_final(
    parent: &Graph,
    n: usize,
    k: usize,
    budget: &Budget,
) -> Result<Vec<String>, SearchError> {
    let pn = parent.n();
    debug_assert_eq!(pn + 1, n);
    // the new vertex must cover every degree-deficient parent vertex
    let required: u32 = (0..pn)
        .filter(|&v| parent.degree(v) + 1 < k)
        .fold(0, |m, v| m | (1 << v));
    let mut found = Vec::new();
    for mask in 0u32..1 << pn {
        if mask & required != required || (mask.count_ones() as usize) < k - 1 {
            continue;
        }
        let nbrs: Vec<usize> = (0..pn).filter(|&v| mask & (1 << v) != 0).collect();
        let cand = parent.with_vertex_added(&nbrs).unwrap();
        debug_assert!(cand.min_degree().unwrap() >= k - 1);
        if !cand.is_connected() {
            continue;
        }
        // a k-critical graph on n > k vertices has no K_k at all; on n = k
        // vertices only K_k itself survives
        if n > k && cand.count_cliques(k) > 0 {
            continue;
        }
        // χ ≤ k is automatic (the parent is (k−1)-colorable); χ ≥ 3 graphs
        // cannot be bipartite, which is much cheaper to test than coloring
        if k >= 3 && cand.is_bipartite() {
            continue;
        }
        if is_k_colorable(&cand, k - 1, budget)?.is_some() {
            continue;
        }
        let report = is_k_critical(&cand, k, budget).map_err(|e| match e {
            crate::criticality::CriticalityError::Solve(s) => SearchError::Solve(s),
            other => unreachable!("domain pre-checked: {other}"),
        })?;
        if report.verdict {
            found.push(canonical_form(&cand)?);
        }
    }
    Ok(found)
}

fn assemble(n: usize, k: usize, canon: Vec<String>) -> EnumerationResult {
    let mut with_edges: Vec<(String, usize)> = canon
        .into_iter()
        .map(|c| {
            let e = Graph::from_graph6(&c).unwrap().edge_count();
            (c, e)
        })
        .collect();
    with_edges.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let f_value = with_edges.first().map(|&(_, e)| e);
    let witnesses = with_edges
        .iter()
        .filter(|&&(_, e)| Some(e) == f_value)
        .map(|(c, _)| c.clone())
        .collect();
    EnumerationResult {
        n,
        k,
        graphs: with_edges.into_iter().map(|(c, _)| c).collect(),
        f_value,
        witnesses,
    }
}

/// Combine work-unit outputs into the final result. Duplicates across units
/// (one completion reachable from several parents) are removed here, so
/// running all planned units and merging reproduces `enumerate_k_critical`.
pub fn merge_unit_results(n: usize, k: usize, mut canon: Vec<String>) -> EnumerationResult {
    canon.sort_unstable();
    canon.dedup();
    assemble(n, k, canon)
}

/// The independent expansion jobs covering `enumerate_k_critical(n, k)`.
/// Running every unit with [`run_work_unit`] and merging (deduplicating)
/// the outputs reproduces the full enumeration.
pub fn plan_work_units(n: usize, k: usize, budget: &Budget) -> Result<Vec<WorkUnit>, SearchError> {
    check_enumeration_domain(n, k)?;
    if n < 2 {
        return Ok(Vec::new());
    }
    let parents = level_set(n - 1, n, k, budget)?;
    let mut units = Vec::with_capacity(parents.len());
    for p in &parents {
        units.push(WorkUnit { parent: canonical_form(p)? });
    }
    Ok(units)
}

pub fn run_work_unit(
    n: usize,
    k: usize,
    unit: &WorkUnit,
    budget: &Budget,
) -> Result<Vec<String>, SearchError> {
    check_enumeration_domain(n, k)?;
    let parent = Graph::from_graph6(&unit.parent)
        .map_err(|_| SearchError::BadWorkUnit(unit.parent.clone()))?;
    if parent.n() + 1 != n {
        return Err(SearchError::BadWorkUnit(unit.parent.clone()));
    }
    expand_final(&parent, n, k, budget)
}

/// Every k-critical graph on exactly `n` vertices, up to isomorphism, with
/// the exact f_k(n) value and its extremal witnesses.
pub fn enumerate_k_critical(
    n: usize,
    k: usize,
    budget: &Budget,
) -> Result<EnumerationResult, SearchError> {
    check_enumeration_domain(n, k)?;
    if n == 0 {
        return Ok(assemble(n, k, Vec::new()));
    }
    if n == 1 {
        // the single 1-vertex graph is 1-chromatic, never k-critical here
        return Ok(assemble(n, k, Vec::new()));
    }
    let parents = level_set(n - 1, n, k, budget)?;
    let results: Vec<Result<Vec<String>, SearchError>> = parents
        .par_iter()
        .map(|p| expand_final(p, n, k, budget))
        .collect();
    let mut canon: Vec<String> = Vec::new();
    for r in results {
        canon.extend(r?);
    }
    Ok(merge_unit_results(n, k, canon))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FTableRow {
    pub n: usize,
    pub k: usize,
    /// number of k-critical graphs on n vertices up to isomorphism
    pub count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_value: Option<usize>,
    pub witnesses: Vec<String>,
    /// e(T_{k−2}(n)) + n − k + 3, valid for every n > k
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gao_ma_cap: Option<u64>,
}

/// f_k(n) for n = k..=n_max with witnesses. Every value is cross-checked
/// against the always-valid upper bound (n > k) and, for k = 3, against the
/// odd-cycle characterization.
pub fn f_table(k: usize, n_max: usize, budget: &Budget) -> Result<Vec<FTableRow>, SearchError> {
    check_enumeration_domain(n_max.max(k), k)?;
    let mut rows = Vec::new();
    for n in k..=n_max {
        let result = enumerate_k_critical(n, k, budget)?;
        let gao_ma_cap = (n > k)
            .then(|| (turan_edges(n, k - 2).unwrap() + n - k + 3) as u64);
        if let (Some(f), Some(cap)) = (result.f_value, gao_ma_cap) {
            assert!(
                (f as u64) <= cap,
                "enumerated f_{k}({n}) = {f} exceeds the proven cap {cap}"
            );
        }
        if k == 3 {
            // 3-critical graphs are exactly the odd cycles
            let expect = (n % 2 == 1).then_some(n);
            assert_eq!(result.f_value, expect, "3-critical graphs on {n} vertices");
        }
        rows.push(FTableRow {
            n,
            k,
            count: result.graphs.len(),
            f_value: result.f_value,
            witnesses: result.witnesses,
            gao_ma_cap,
        });
    }
    Ok(rows)
}
