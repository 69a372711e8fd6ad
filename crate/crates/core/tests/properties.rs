// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::collections::BTreeSet;

use konig_core::factor::{complement, Engine};
use konig_core::instances::{
    random_bounded_degree_bipartite, random_equal_line_sum_matrix, random_line_regular_support,
    random_regular_bipartite,
};
use konig_core::{
    color_edges, color_via_regularization, components, count_nonzero_members_bruteforce,
    decompose_into_permutations, factor::factorize, factor_of_degree, graph_from_matrix,
    merge_factor, nonzero_member, one_factorization, perfect_matching, power_of_two_factorization,
    regularize, split_degree, support_decomposition, two_coloring, verify_coloring,
    BipartiteMultigraph, EdgeId, GeneralGraph, PartialColoring, Side, TwoColoring, VertexId,
};
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn bounded() -> impl Strategy<Value = BipartiteMultigraph> {
    (1usize..12, 1usize..12, 1usize..6, any::<u64>()).prop_flat_map(|(nl, nr, d, seed)| {
        (0..=nl.min(nr) * d)
            .prop_map(move |m| random_bounded_degree_bipartite(nl, nr, d, m, seed).unwrap())
    })
}

fn regular() -> impl Strategy<Value = BipartiteMultigraph> {
    (1usize..16, 0usize..7, any::<u64>()).prop_map(|(n, k, s)| random_regular_bipartite(n, k, s))
}

fn general_graph() -> impl Strategy<Value = GeneralGraph> {
    (1usize..=10).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..16).prop_map(move |pairs| {
            GeneralGraph::new(n, pairs.into_iter().filter(|(u, v)| u != v)).unwrap()
        })
    })
}

fn bipartite_by_enumeration(g: &GeneralGraph) -> bool {
    let n = g.vertex_count();
    (0u32..1 << n).any(|mask| {
        g.edges()
            .iter()
            .all(|&(u, v)| (mask >> u & 1) != (mask >> v & 1))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn degree_sums_match_edge_count(g in bounded()) {
        let left: usize = (0..g.n_left()).map(|i| g.degree(VertexId::left(i))).sum();
        let right: usize = (0..g.n_right()).map(|i| g.degree(VertexId::right(i))).sum();
        prop_assert_eq!(left, g.edge_count());
        prop_assert_eq!(right, g.edge_count());
    }

    #[test]
    fn two_coloring_matches_enumeration(g in general_graph()) {
        match two_coloring(&g) {
            TwoColoring::Classes(classes) => {
                prop_assert!(bipartite_by_enumeration(&g));
                for &(u, v) in g.edges() {
                    prop_assert_ne!(classes[u], classes[v]);
                }
            }
            TwoColoring::OddWalk(w) => {
                prop_assert!(!bipartite_by_enumeration(&g));
                prop_assert!(w.is_valid_in(&g));
                prop_assert_eq!(w.len() % 2, 1);
            }
        }
    }

    #[test]
    fn components_partition_and_ignore_edge_order(g in bounded(), seed in any::<u64>()) {
        let cs = components(&g);
        let mut vertices = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for c in &cs {
            for &v in &c.vertices { prop_assert!(vertices.insert(v)); }
            for &e in &c.edges { prop_assert!(edges.insert(e)); }
        }
        prop_assert_eq!(vertices.len(), g.vertex_count());
        prop_assert_eq!(edges.len(), g.edge_count());

        // reversed and rotated insertion order
        let m = g.edge_count();
        let shift = if m == 0 { 0 } else { (seed as usize) % m };
        let order: Vec<usize> = (0..m).rev().map(|i| (i + shift) % m).collect();
        let h = BipartiteMultigraph::new(g.n_left(), g.n_right(), order.iter().map(|&i| g.edge_list()[i])).unwrap();
        let as_sets = |cs: &[konig_core::Component], map: &dyn Fn(EdgeId) -> EdgeId| -> BTreeSet<(Vec<VertexId>, BTreeSet<EdgeId>)> {
            cs.iter().map(|c| (c.vertices.clone(), c.edges.iter().map(|&e| map(e)).collect())).collect()
        };
        prop_assert_eq!(
            as_sets(&cs, &|e| e),
            as_sets(&components(&h), &|e: EdgeId| EdgeId(order[e.0]))
        );
    }

    #[test]
    fn coloring_is_proper_for_all_slack(g in bounded(), extra in prop::sample::select(vec![0usize, 1, 3])) {
        let delta = g.max_degree();
        let k = delta + extra;
        let c = color_edges(&g, k).unwrap();
        prop_assert!(verify_coloring(&g, &c).is_ok());
        prop_assert!(c.distinct_colors() <= k);
        prop_assert!(c.distinct_colors() >= delta);
        prop_assert_eq!(&c, &color_edges(&g, k).unwrap());
    }

    #[test]
    fn insertion_only_touches_its_path(g in bounded()) {
        let k = g.max_degree();
        let mut pc = PartialColoring::new(&g, k);
        for e in g.edge_ids() {
            let before = pc.assignment().to_vec();
            let path = pc.insert_and_recolor(e).unwrap();
            let after = pc.assignment();
            let (a, b) = g.ends(e);
            let touched: BTreeSet<EdgeId> = path.iter().flat_map(|p| p.edges.iter().copied()).collect();
            for f in g.edge_ids() {
                if f != e && before[f.0] != after[f.0] {
                    prop_assert!(touched.contains(&f));
                }
            }
            if let Some(p) = path {
                prop_assert_eq!(p.start, a);
                prop_assert_eq!(p.vertices.len(), p.edges.len() + 1);
                let distinct: BTreeSet<_> = p.vertices.iter().collect();
                prop_assert_eq!(distinct.len(), p.vertices.len());
                prop_assert!(!p.vertices.contains(&b));
                let (c1, c2) = p.colors;
                for (i, &f) in p.edges.iter().enumerate() {
                    let was = before[f.0].unwrap();
                    prop_assert_eq!(was, if i % 2 == 0 { c1 } else { c2 });
                    let (x, y) = (p.vertices[i], p.vertices[i + 1]);
                    let (fa, fb) = g.ends(f);
                    prop_assert!((fa, fb) == (x, y) || (fa, fb) == (y, x));
                }
                // maximal: the last vertex had no edge of the next color
                let last = *p.vertices.last().unwrap();
                let next = if p.edges.len() % 2 == 0 { c1 } else { c2 };
                prop_assert!(g.incident(last).iter().all(|&f| before[f.0] != Some(next)));
                prop_assert_eq!(after[e.0], Some(c1));
            }
        }
        let c = pc.into_coloring().unwrap();
        prop_assert!(verify_coloring(&g, &c).is_ok());
    }

    #[test]
    fn perfect_matching_covers_once(g in regular()) {
        prop_assume!(g.regular_degree().unwrap() > 0);
        let f = perfect_matching(&g).unwrap();
        prop_assert!(f.check(&g).is_ok());
        prop_assert_eq!(f.edges.len(), g.n_left());
    }

    #[test]
    fn factorization_engines_agree_on_validity(n in 1usize..16, m in 0u32..4, seed in any::<u64>()) {
        let g = random_regular_bipartite(n, 1 << m, seed);
        let a = one_factorization(&g).unwrap();
        let b = power_of_two_factorization(&g).unwrap();
        prop_assert_eq!(a.len(), 1 << m);
        prop_assert_eq!(b.len(), 1 << m);
        prop_assert!(a.check(&g).is_ok());
        prop_assert!(b.check(&g).is_ok());
        prop_assert_eq!(factorize(&g, Engine::PowerOfTwo).unwrap(), b);
    }

    #[test]
    fn regularization_colors_properly(g in bounded(), extra in 0usize..3) {
        let k = g.max_degree() + extra;
        let emb = regularize(&g, k).unwrap();
        prop_assert_eq!(emb.host.regular_degree(), Some(k));
        prop_assert_eq!(emb.host.vertex_count(), 2 * g.vertex_count());
        for (i, &h) in emb.edge_map.iter().enumerate() {
            prop_assert_eq!(emb.host.ends(h), g.ends(EdgeId(i)));
        }
        for &p in &emb.padding_edges {
            let (a, b) = emb.host.ends(p);
            prop_assert!(b == emb.copy_of(a) || a == emb.copy_of(b));
        }
        let c = color_via_regularization(&g, k).unwrap();
        prop_assert!(verify_coloring(&g, &c).is_ok());
    }

    #[test]
    fn merged_factors_have_degree_mu(n in 1usize..10, k in 1usize..9, seed in any::<u64>()) {
        let g = random_regular_bipartite(n, k, seed);
        for mu in (1..=k).filter(|mu| k % mu == 0) {
            let se = split_degree(&g, mu).unwrap();
            prop_assert_eq!(se.split.regular_degree(), Some(k / mu));
            for v in g.vertices() {
                for s in se.fiber(v) {
                    prop_assert_eq!(se.vertex_map(s), v);
                }
            }
            let f = perfect_matching(&se.split).unwrap();
            let lifted = merge_factor(&se, &f).unwrap();
            prop_assert_eq!(lifted.degree, mu);
            prop_assert!(lifted.check(&g).is_ok());
        }
    }

    #[test]
    fn complement_law(n in 1usize..12, k in 0usize..7, seed in any::<u64>(), d in 0usize..7) {
        let g = random_regular_bipartite(n, k, seed);
        let d = d.min(k);
        let f = factor_of_degree(&g, d).unwrap();
        prop_assert!(f.check(&g).is_ok());
        let rest = complement(&g, &f).unwrap();
        prop_assert_eq!(rest.degree, k - d);
        prop_assert!(rest.check(&g).is_ok());
    }

    #[test]
    fn matrix_graph_degrees_are_line_sums(n in 1usize..=8, noise in prop::collection::vec(0i64..=5, 64)) {
        // arbitrary nonnegative matrix, entries <= 5
        let rows: Vec<Vec<i64>> = (0..n).map(|i| noise[i * 8..i * 8 + n].to_vec()).collect();
        let m = konig_core::ExactMatrix::from_i64_rows(&rows).unwrap();
        let g = graph_from_matrix(&m).unwrap();
        for (i, r) in m.row_sums().iter().enumerate() {
            prop_assert_eq!(g.degree(VertexId::left(i)), r.to_integer().to_usize().unwrap());
        }
        for (k, c) in m.col_sums().iter().enumerate() {
            prop_assert_eq!(g.degree(VertexId { side: Side::Right, index: k }), c.to_integer().to_usize().unwrap());
        }
    }

    #[test]
    fn decomposition_sums_back(n in 1usize..=8, s in 0usize..6, seed in any::<u64>()) {
        let m = random_equal_line_sum_matrix(n, s, seed);
        let d = decompose_into_permutations(&m).unwrap();
        prop_assert_eq!(d.len(), s);
        prop_assert!(d.check(&m).is_ok());
    }

    #[test]
    fn member_exists_and_is_positive(n in 1usize..=6, s in 1usize..6, seed in any::<u64>()) {
        let m = random_equal_line_sum_matrix(n, s, seed);
        let p = nonzero_member(&m).unwrap();
        prop_assert!((0..n).all(|i| m.get(i, p.apply(i)).is_positive()));
        prop_assert!(count_nonzero_members_bruteforce(&m).unwrap() > 0);
    }

    #[test]
    fn support_bound_and_cover(n in 1usize..=6, k in 1usize..=3, seed in any::<u64>()) {
        prop_assume!(k <= n);
        let m = random_line_regular_support(n, k, seed).unwrap();
        prop_assert!(count_nonzero_members_bruteforce(&m).unwrap() >= k as u64);
        let d = support_decomposition(&m).unwrap();
        prop_assert_eq!(d.len(), k);
        prop_assert!(d.check(&m).is_ok());
        for p in &d.parts {
            prop_assert!((0..n).all(|i| !m.get(i, p.apply(i)).is_zero()));
        }
    }

    #[test]
    fn generators_are_deterministic(n in 1usize..10, k in 0usize..5, seed in any::<u64>()) {
        prop_assert_eq!(random_regular_bipartite(n, k, seed), random_regular_bipartite(n, k, seed));
        prop_assert_eq!(random_equal_line_sum_matrix(n, k, seed), random_equal_line_sum_matrix(n, k, seed));
        prop_assert_eq!(
            random_bounded_degree_bipartite(n, n, k, n * k, seed),
            random_bounded_degree_bipartite(n, n, k, n * k, seed)
        );
    }
}
