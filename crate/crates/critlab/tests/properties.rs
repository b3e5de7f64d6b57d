//! Randomized invariants backed by exact statements: codec round-trips,
//! counting helpers against brute force, solver self-consistency, canonical
//! form isomorphism invariance, and core extraction.

use critlab::coloring::{self, Budget};
use critlab::criticality;
use critlab::extremal;
use critlab::search;
use critlab::Graph;
use proptest::prelude::*;

/// Random graph on 1..=max_n vertices; each of the up-to-55 vertex pairs
/// takes its edge bit from one word, so all densities appear.
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    assert!(max_n <= 11);
    (1..=max_n, any::<u64>()).prop_map(|(n, bits)| {
        let mut edges = Vec::new();
        let mut idx = 0;
        for v in 1..n {
            for u in 0..v {
                if bits >> idx & 1 == 1 {
                    edges.push((u, v));
                }
                idx += 1;
            }
        }
        Graph::from_edges(n, edges).unwrap()
    })
}

fn triangles_through(g: &Graph, v: usize) -> u64 {
    let nbrs: Vec<usize> = g.neighbors(v).collect();
    let mut t = 0;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if g.has_edge(a, b) {
                t += 1;
            }
        }
    }
    t
}

fn brute_cliques(g: &Graph, t: usize) -> u64 {
    let n = g.n();
    if t > n {
        return 0;
    }
    let mut count = 0;
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize != t {
            continue;
        }
        let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let complete = verts
            .iter()
            .enumerate()
            .all(|(i, &a)| verts[i + 1..].iter().all(|&b| g.has_edge(a, b)));
        if complete {
            count += 1;
        }
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph6_round_trips_both_directions(g in arb_graph(11)) {
        let s = g.to_graph6();
        let back = Graph::from_graph6(&s).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_graph6(), s);
    }

    #[test]
    fn degree_sum_is_twice_the_edge_count(g in arb_graph(11)) {
        let degs = g.degrees();
        prop_assert_eq!(degs.iter().sum::<usize>(), 2 * g.edge_count());
        for v in 0..g.n() {
            prop_assert_eq!(g.neighbors(v).count(), degs[v]);
        }
    }

    #[test]
    fn heaviest_edge_reaches_twice_the_average_degree(g in arb_graph(9)) {
        if g.edge_count() == 0 {
            prop_assert!(g.heaviest_edge().is_err());
            return Ok(());
        }
        let heavy = g.heaviest_edge().unwrap();
        let degs = g.degrees();
        prop_assert!(g.has_edge(heavy.u, heavy.v));
        prop_assert_eq!(heavy.degree_sum, degs[heavy.u] + degs[heavy.v]);
        // exact form of max >= average, no floating point
        prop_assert!(heavy.degree_sum * g.n() >= 4 * g.edge_count());
        let brute = g.edges().iter().map(|&(u, v)| degs[u] + degs[v]).max().unwrap();
        prop_assert_eq!(heavy.degree_sum, brute);
    }

    #[test]
    fn heaviest_2path_matches_brute_force(g in arb_graph(8)) {
        let degs = g.degrees();
        let mut brute: Option<i64> = None;
        for y in 0..g.n() {
            for x in 0..g.n() {
                for z in 0..g.n() {
                    if x == z || !g.has_edge(x, y) || !g.has_edge(y, z) {
                        continue;
                    }
                    let value = (degs[x] + degs[y] + degs[z]) as i64
                        - 3 * (triangles_through(&g, x) + triangles_through(&g, z)) as i64;
                    brute = Some(brute.map_or(value, |b: i64| b.max(value)));
                }
            }
        }
        match brute {
            None => prop_assert!(g.heaviest_2path().is_err()),
            Some(bv) => {
                let p = g.heaviest_2path().unwrap();
                prop_assert_eq!(p.value, bv);
                prop_assert!(g.has_edge(p.x, p.y) && g.has_edge(p.y, p.z) && p.x != p.z);
            }
        }
    }

    #[test]
    fn heaviest_4cycle_matches_brute_force(g in arb_graph(8)) {
        let degs = g.degrees();
        let n = g.n();
        let mut brute: Option<usize> = None;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let distinct = a < b.min(c).min(d) && b != c && b != d && c != d && b < d;
                        if !distinct {
                            continue;
                        }
                        if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d) && g.has_edge(d, a) {
                            let s = degs[a] + degs[b] + degs[c] + degs[d];
                            brute = Some(brute.map_or(s, |x: usize| x.max(s)));
                        }
                    }
                }
            }
        }
        match brute {
            None => prop_assert!(g.heaviest_4cycle().is_err()),
            Some(bv) => {
                let c4 = g.heaviest_4cycle().unwrap();
                prop_assert_eq!(c4.degree_sum, bv);
                let [p, x, q, y] = c4.vertices;
                prop_assert!(g.has_edge(p, x) && g.has_edge(x, q) && g.has_edge(q, y) && g.has_edge(y, p));
            }
        }
    }

    #[test]
    fn clique_and_triangle_counts_match_brute_force(g in arb_graph(8)) {
        for t in 2..=5 {
            prop_assert_eq!(g.count_cliques(t), brute_cliques(&g, t));
        }
        let profile = g.triangle_profile();
        for v in 0..g.n() {
            prop_assert_eq!(profile.per_vertex[v], triangles_through(&g, v));
        }
        prop_assert_eq!(profile.total, brute_cliques(&g, 3));
    }

    #[test]
    fn chromatic_certificate_is_tight(g in arb_graph(8)) {
        let budget = Budget::unlimited();
        let (chi, cert) = coloring::chromatic_number(&g, &budget).unwrap();
        prop_assert!(cert.is_proper(&g));
        prop_assert_eq!(cert.k(), chi);
        prop_assert_eq!(cert.colors_used(), chi);
        prop_assert!(chi >= coloring::greedy_clique(&g).len());
        let max_deg = g.degrees().into_iter().max().unwrap_or(0);
        prop_assert!(chi <= max_deg + 1);
        prop_assert!(coloring::is_k_colorable(&g, chi.saturating_sub(1), &budget).unwrap().is_none());
        // color classes partition the vertex set
        let mut seen: Vec<usize> = cert.classes().into_iter().flatten().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..g.n()).collect::<Vec<_>>());
    }

    #[test]
    fn deleting_one_edge_drops_chi_by_at_most_one(g in arb_graph(7)) {
        let budget = Budget::unlimited();
        let (chi, _) = coloring::chromatic_number(&g, &budget).unwrap();
        for (u, v) in g.edges() {
            let (chi_del, _) =
                coloring::chromatic_number(&g.delete_edge(u, v).unwrap(), &budget).unwrap();
            prop_assert!(chi_del == chi || chi_del + 1 == chi);
        }
    }

    #[test]
    fn canonical_form_is_relabeling_invariant(g in arb_graph(7), salt in any::<u64>()) {
        let n = g.n();
        // a deterministic permutation derived from the salt
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = salt | 1;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let canon = search::canonical_form(&g).unwrap();
        let shuffled = g.relabeled(&perm).unwrap();
        prop_assert_eq!(search::canonical_form(&shuffled).unwrap(), canon.clone());
        // the canonical string is a fixed point
        let rep = Graph::from_graph6(&canon).unwrap();
        prop_assert_eq!(search::canonical_form(&rep).unwrap(), canon);
    }

    #[test]
    fn partition_quantities_satisfy_the_exact_identities(
        g in arb_graph(9),
        assign in proptest::collection::vec(0..3usize, 9),
    ) {
        let n = g.n();
        let mut parts: Vec<Vec<usize>> = vec![Vec::new(); 3];
        for v in 0..n {
            parts[assign[v]].push(v);
        }
        let eval = extremal::evaluate_partition(&g, &parts).unwrap();
        let sq_sum: usize = parts.iter().map(|p| p.len() * p.len()).sum();
        let cross_pairs = (n * n - sq_sum) / 2;
        let cross_edges = g.edge_count() - eval.internal_edge_sum;
        prop_assert_eq!(eval.missing_edges, cross_pairs - cross_edges);
        // deviation = sum (|V_i| - n/3)^2, exact rational arithmetic
        let num: i64 = parts
            .iter()
            .map(|p| {
                let d = 3 * p.len() as i64 - n as i64;
                d * d
            })
            .sum();
        prop_assert_eq!(eval.deviation, extremal::Rational::new(num, 9));
    }

    #[test]
    fn stability_partition_is_a_partition_with_no_more_internal_edges_than_natural(
        g in arb_graph(9),
        r in 2..=4usize,
    ) {
        let parts = extremal::stability_partition(&g, r).unwrap();
        prop_assert_eq!(parts.len(), r);
        let mut all: Vec<usize> = parts.iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
        let eval = extremal::evaluate_partition(&g, &parts).unwrap();
        prop_assert!(eval.internal_edge_sum <= g.edge_count());
    }

    #[test]
    fn critical_core_is_always_critical_at_the_chromatic_number(g in arb_graph(7)) {
        let budget = Budget::unlimited();
        let (chi, _) = coloring::chromatic_number(&g, &budget).unwrap();
        if chi < 2 {
            return Ok(());
        }
        let core = criticality::critical_core(&g, chi, &budget).unwrap();
        let report = criticality::is_k_critical(&core.graph, chi, &budget).unwrap();
        prop_assert!(report.verdict);
        // the core embeds into the host: every core edge is a host edge
        for (i, j) in core.graph.edges() {
            prop_assert!(g.has_edge(core.vertices[i], core.vertices[j]));
        }
        for &(u, v) in &core.deleted_edges {
            prop_assert!(g.has_edge(u, v));
        }
    }
}
