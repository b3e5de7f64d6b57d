//! The recoloring key lemma as an executable witness extractor.
//!
//! For a k-critical graph G, a clique x_1..x_{k−3}, a vertex u outside it,
//! and a nonempty W inside the common neighborhood of the clique and u, there
//! is a partner set W' and a bijection φ: W → W' such that the edges between
//! W and W' through φ form an induced matching: N(φ(w)) ∩ W = {w} and
//! N(w) ∩ W' = {φ(w)}. The extractor replays the proof: delete uw, color
//! exactly with k−1 colors, observe that u and w are forced into one class,
//! identify the residual class, and pick φ(w) there. Every event the proof
//! rules out for critical inputs is reported as a "not critical" error
//! carrying disproof evidence.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::coloring::{is_k_colorable, Budget, Coloring, SolveError};
use crate::criticality;
use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("the lemma needs k >= 3 (clique of k-3 vertices), got k = {0}")]
    SmallK(usize),
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("duplicate vertex {0} in an input set")]
    Duplicate(usize),
    #[error("hypothesis failed: clique must have k-3 = {expected} vertices, got {got}")]
    CliqueSize { expected: usize, got: usize },
    #[error("hypothesis failed: clique vertices {0} and {1} are not adjacent")]
    CliqueNotComplete(usize, usize),
    #[error("hypothesis failed: u = {0} lies in the clique")]
    UInClique(usize),
    #[error("hypothesis failed: W is empty")]
    EmptyW,
    #[error("hypothesis failed: {w} ∈ W is not adjacent to {missing} (W must lie in N(x_1) ∩ … ∩ N(x_(k-3)) ∩ N(u))")]
    WNotCommonNeighbor { w: usize, missing: usize },
    #[error("hypothesis failed: cycle vertices {0:?} are not distinct")]
    CycleNotDistinct([usize; 4]),
    #[error("hypothesis failed: cycle edge {0}-{1} is missing")]
    CycleEdgeMissing(usize, usize),
    #[error("hypothesis failed: V{i} must contain {missing}")]
    VSetMissingCycleVertex { i: usize, missing: usize },
    #[error("hypothesis failed: V{i} contains {v}, which is not a neighbor of its center {center}")]
    VSetNotInNeighborhood { i: usize, v: usize, center: usize },
    #[error("input is not {k}-critical: G - {u}·{w} has no proper coloring with {} colors", k - 1)]
    NotCriticalUncolorableDeletion { k: usize, u: usize, w: usize },
    #[error("input is not {k}-critical: coloring G - {u}·{w} split the endpoints, so the disproof colors the whole graph with {} colors", k - 1)]
    NotCriticalSplitEndpoints { k: usize, u: usize, w: usize, disproof: Coloring },
    #[error("input is not {k}-critical: w = {w} has no neighbor in the residual class, so recoloring w yields the disproof, a proper coloring of the whole graph with {} colors", k - 1)]
    NotCriticalRecolorable { k: usize, w: usize, disproof: Coloring },
    #[error("embedded criticality check failed: the graph is not {k}-critical (chi = {chi})")]
    NotCriticalVerified { k: usize, chi: usize },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct WitnessOptions {
    /// Re-run the full criticality verifier before extracting. Off by
    /// default: extraction itself surfaces disproof evidence on demand.
    pub verify_critical: bool,
}

/// Evidence for one w ∈ W: the exact coloring of G − uw that forced φ(w).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerWCertificate {
    pub w: usize,
    pub phi_w: usize,
    pub residual_class: u32,
    pub coloring: Coloring,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaWitness {
    pub k: usize,
    pub clique: Vec<usize>,
    pub u: usize,
    pub w_set: Vec<usize>,
    pub w_prime: Vec<usize>,
    /// pairs (w, φ(w)), ascending in w
    pub phi: Vec<(usize, usize)>,
    pub per_w: Vec<PerWCertificate>,
    /// W ∩ W′ — may be nonempty when |W| ≤ 2, always empty for |W| ≥ 3
    pub overlap: Vec<usize>,
}

fn check_vertices(g: &Graph, vs: impl IntoIterator<Item = usize>) -> Result<(), WitnessError> {
    for v in vs {
        if v >= g.n() {
            return Err(WitnessError::OutOfRange(v));
        }
    }
    Ok(())
}

fn sorted_dedup(vs: &[usize]) -> Result<Vec<usize>, WitnessError> {
    let mut out = vs.to_vec();
    out.sort_unstable();
    for pair in out.windows(2) {
        if pair[0] == pair[1] {
            return Err(WitnessError::Duplicate(pair[0]));
        }
    }
    Ok(out)
}

/// Run the key lemma's constructive proof and return the verified witness.
///
/// Preconditions checked structurally: `clique` induces a complete graph on
/// k−3 vertices, `u` is outside it, and W is a nonempty subset of the common
/// neighborhood of the clique vertices and u. That `g` is k-critical is the
/// caller's claim; extraction either succeeds or returns a `NotCritical*`
/// error with disproof evidence ([`WitnessOptions::verify_critical`] runs
/// the full verifier up front instead).
pub fn extract_matching_witness(
    g: &Graph,
    k: usize,
    clique: &[usize],
    u: usize,
    w_set: &[usize],
    opts: WitnessOptions,
    budget: &Budget,
) -> Result<LemmaWitness, WitnessError> {
    if k < 3 {
        return Err(WitnessError::SmallK(k));
    }
    check_vertices(g, clique.iter().copied())?;
    check_vertices(g, [u])?;
    check_vertices(g, w_set.iter().copied())?;
    let clique = sorted_dedup(clique)?;
    if clique.len() != k - 3 {
        return Err(WitnessError::CliqueSize { expected: k - 3, got: clique.len() });
    }
    for (i, &x) in clique.iter().enumerate() {
        for &y in &clique[i + 1..] {
            if !g.has_edge(x, y) {
                return Err(WitnessError::CliqueNotComplete(x, y));
            }
        }
    }
    if clique.contains(&u) {
        return Err(WitnessError::UInClique(u));
    }
    let w_sorted = sorted_dedup(w_set)?;
    if w_sorted.is_empty() {
        return Err(WitnessError::EmptyW);
    }
    for &w in &w_sorted {
        for &x in clique.iter().chain([&u]) {
            if !g.has_edge(w, x) {
                return Err(WitnessError::WNotCommonNeighbor { w, missing: x });
            }
        }
    }
    if opts.verify_critical {
        let report = criticality::is_k_critical(g, k, budget).map_err(|e| match e {
            criticality::CriticalityError::Solve(s) => WitnessError::Solve(s),
            other => unreachable!("k >= 3 already checked: {other}"),
        })?;
        if !report.verdict {
            return Err(WitnessError::NotCriticalVerified { k, chi: report.chi });
        }
    }

    // One independent subproblem per w; errors resolve to the smallest w for
    // determinism under parallel execution.
    let results: Vec<Result<PerWCertificate, WitnessError>> = w_sorted
        .par_iter()
        .map(|&w| derive_partner(g, k, &clique, u, &w_sorted, w, budget))
        .collect();
    let per_w: Vec<PerWCertificate> = results.into_iter().collect::<Result<_, _>>()?;

    let phi: Vec<(usize, usize)> = per_w.iter().map(|c| (c.w, c.phi_w)).collect();
    let mut w_prime: Vec<usize> = per_w.iter().map(|c| c.phi_w).collect();
    w_prime.sort_unstable();
    let overlap: Vec<usize> =
        w_sorted.iter().copied().filter(|w| w_prime.binary_search(w).is_ok()).collect();
    let witness = LemmaWitness {
        k,
        clique,
        u,
        w_set: w_sorted,
        w_prime,
        phi,
        per_w,
        overlap,
    };
    verify_lemma_invariants(g, &witness);
    Ok(witness)
}

fn derive_partner(
    g: &Graph,
    k: usize,
    clique: &[usize],
    u: usize,
    w_all: &[usize],
    w: usize,
    budget: &Budget,
) -> Result<PerWCertificate, WitnessError> {
    let reduced = g.delete_edge(u, w).unwrap();
    let Some(coloring) = is_k_colorable(&reduced, k - 1, budget)? else {
        return Err(WitnessError::NotCriticalUncolorableDeletion { k, u, w });
    };
    if coloring.color(u) != coloring.color(w) {
        // the endpoints split, so the same assignment properly colors g itself
        debug_assert!(coloring.is_proper(g));
        return Err(WitnessError::NotCriticalSplitEndpoints { k, u, w, disproof: coloring });
    }
    // k−1 classes; the clique pins k−3 of them and {u, w} a further one,
    // leaving exactly one residual class.
    let mut pinned = vec![false; k - 1];
    for &x in clique {
        let c = coloring.color(x) as usize;
        assert!(!pinned[c], "clique vertices share a class in a proper coloring");
        pinned[c] = true;
    }
    assert!(
        !pinned[coloring.color(w) as usize],
        "w shares a class with a clique vertex it is adjacent to"
    );
    pinned[coloring.color(w) as usize] = true;
    let residual_class = (0..k - 1).find(|&c| !pinned[c]).unwrap() as u32;
    // properness already forces every other element of W into the residual class
    for &w2 in w_all {
        if w2 != w {
            assert_eq!(coloring.color(w2), residual_class);
        }
    }
    let partners: Vec<usize> =
        g.neighbors(w).filter(|&v| coloring.color(v) == residual_class).collect();
    let Some(&phi_w) = partners.first() else {
        // w has no residual neighbor: moving w there colors all of g properly
        let mut moved = coloring.colors().to_vec();
        moved[w] = residual_class;
        let disproof = Coloring::new(k - 1, moved).unwrap();
        debug_assert!(disproof.is_proper(g));
        return Err(WitnessError::NotCriticalRecolorable { k, w, disproof });
    };
    Ok(PerWCertificate { w, phi_w, residual_class, coloring })
}

/// Re-check every lemma invariant with raw adjacency queries (nothing from
/// the solver is trusted). These are theorems given proper certificates, so
/// violations are internal errors.
fn verify_lemma_invariants(g: &Graph, wit: &LemmaWitness) {
    let w_set = &wit.w_set;
    assert_eq!(wit.w_prime.len(), w_set.len(), "phi is not a bijection");
    for &(w, pw) in &wit.phi {
        for &w2 in w_set {
            assert_eq!(
                g.has_edge(pw, w2),
                w2 == w,
                "N(phi({w})) ∩ W must be exactly {{{w}}}"
            );
        }
        for &p2 in &wit.w_prime {
            assert_eq!(
                g.has_edge(w, p2),
                p2 == pw,
                "N({w}) ∩ W' must be exactly {{phi({w})}}"
            );
        }
    }
    if w_set.len() >= 3 {
        for (i, &a) in w_set.iter().enumerate() {
            for &b in &w_set[i + 1..] {
                assert!(!g.has_edge(a, b), "W must be independent when |W| >= 3");
            }
        }
        assert!(wit.overlap.is_empty(), "W' must avoid W when |W| >= 3");
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XYChecks {
    pub disjoint_from_v_sets: bool,
    pub x_edges: usize,
    pub x_edge_cap: usize,
    pub y_edges: usize,
    pub y_edge_cap: usize,
    /// |X| − 2t(v1) − 2t(v3) − 2, possibly negative
    pub x_size_floor: i64,
    pub y_size_floor: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XYWitness {
    pub cycle: [usize; 4],
    pub v_sets: [Vec<usize>; 4],
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub x_dprime: Vec<usize>,
    pub y_dprime: Vec<usize>,
    pub x_inner: LemmaWitness,
    pub y_inner: LemmaWitness,
    pub checks: XYChecks,
}

/// The 4-critical corollary: around a 4-cycle v1v2v3v4 with V_i ⊆ N(v_i),
/// apply the key lemma to W = X = V1 ∩ V3 (clique {v1}, u = v3) and to
/// W = Y = V2 ∩ V4 (clique {v2}, u = v4), then discard partners inside
/// V1 ∪ V2 ∪ V3 ∪ V4. The returned X'' and Y'' satisfy:
/// disjointness from the V_i, e(G[X'', X]) ≤ |X| (each X''-vertex has
/// exactly one X-neighbor), and |X''| ≥ |X| − 2t(v1) − 2t(v3) − 2.
pub fn extract_xy_witness(
    g: &Graph,
    cycle: [usize; 4],
    v_sets: [&[usize]; 4],
    opts: WitnessOptions,
    budget: &Budget,
) -> Result<XYWitness, WitnessError> {
    check_vertices(g, cycle)?;
    let [v1, v2, v3, v4] = cycle;
    if cycle.iter().collect::<std::collections::BTreeSet<_>>().len() != 4 {
        return Err(WitnessError::CycleNotDistinct(cycle));
    }
    for (a, b) in [(v1, v2), (v2, v3), (v3, v4), (v4, v1)] {
        if !g.has_edge(a, b) {
            return Err(WitnessError::CycleEdgeMissing(a, b));
        }
    }
    let mut sets = Vec::new();
    for (i, vs) in v_sets.iter().enumerate() {
        check_vertices(g, vs.iter().copied())?;
        let s = sorted_dedup(vs)?;
        let center = cycle[i];
        // V1 and V3 must contain v2 and v4; V2 and V4 must contain v1 and v3
        let required = if i % 2 == 0 { [v2, v4] } else { [v1, v3] };
        for r in required {
            if s.binary_search(&r).is_err() {
                return Err(WitnessError::VSetMissingCycleVertex { i: i + 1, missing: r });
            }
        }
        for &v in &s {
            if !g.has_edge(center, v) {
                return Err(WitnessError::VSetNotInNeighborhood { i: i + 1, v, center });
            }
        }
        sets.push(s);
    }
    let x: Vec<usize> = sets[0].iter().copied().filter(|v| sets[2].binary_search(v).is_ok()).collect();
    let y: Vec<usize> = sets[1].iter().copied().filter(|v| sets[3].binary_search(v).is_ok()).collect();

    let x_inner = extract_matching_witness(g, 4, &[v1], v3, &x, opts, budget)?;
    // one embedded verification is enough
    let inner_opts = WitnessOptions { verify_critical: false };
    let y_inner = extract_matching_witness(g, 4, &[v2], v4, &y, inner_opts, budget)?;

    let mut excluded: Vec<usize> = sets.concat();
    excluded.sort_unstable();
    excluded.dedup();
    let keep = |p: &Vec<usize>| -> Vec<usize> {
        p.iter().copied().filter(|v| excluded.binary_search(v).is_err()).collect()
    };
    let x_dprime = keep(&x_inner.w_prime);
    let y_dprime = keep(&y_inner.w_prime);

    let tri = g.triangle_profile().per_vertex;
    let checks = XYChecks {
        disjoint_from_v_sets: x_dprime.iter().chain(&y_dprime).all(|v| excluded.binary_search(v).is_err()),
        x_edges: g.edges_between(&x_dprime, &x).unwrap(),
        x_edge_cap: x.len(),
        y_edges: g.edges_between(&y_dprime, &y).unwrap(),
        y_edge_cap: y.len(),
        x_size_floor: x.len() as i64 - 2 * tri[v1] as i64 - 2 * tri[v3] as i64 - 2,
        y_size_floor: y.len() as i64 - 2 * tri[v2] as i64 - 2 * tri[v4] as i64 - 2,
    };
    assert!(checks.disjoint_from_v_sets);
    assert!(checks.x_edges <= checks.x_edge_cap, "e(G[X'', X]) must be at most |X|");
    assert!(checks.y_edges <= checks.y_edge_cap, "e(G[Y'', Y]) must be at most |Y|");
    assert!(x_dprime.len() as i64 >= checks.x_size_floor, "|X''| below its floor");
    assert!(y_dprime.len() as i64 >= checks.y_size_floor, "|Y''| below its floor");

    Ok(XYWitness {
        cycle,
        v_sets: [sets[0].clone(), sets[1].clone(), sets[2].clone(), sets[3].clone()],
        x,
        y,
        x_dprime,
        y_dprime,
        x_inner,
        y_inner,
        checks,
    })
}
