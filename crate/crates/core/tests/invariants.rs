use proptest::prelude::*;

use propfact_core::decomposition::{dc, ind_parts};
use propfact_core::graph6;
use propfact_core::partition::{enumerate_partitions, find_partition};
use propfact_core::verify::{self, catalog_properties, first_separator};
use propfact_core::{Graph, Property, StarJoin};

const CAP: usize = 10;

fn graph_strategy(max: usize) -> impl Strategy<Value = Graph> {
    (0..=max).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        g.add_edge(u, v);
                    }
                    i += 1;
                }
            }
            g
        })
    })
}

fn colourable(g: &Graph, k: usize) -> bool {
    let n = g.order();
    let mut colour = vec![0usize; n];
    loop {
        if g.edges().iter().all(|&(u, v)| colour[u] != colour[v]) {
            return true;
        }
        let mut i = 0;
        while i < n && colour[i] == k - 1 {
            colour[i] = 0;
            i += 1;
        }
        if i == n {
            return false;
        }
        colour[i] += 1;
    }
}

fn complement_components(g: &Graph) -> usize {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for v in g.complement().neighbors(u).iter() {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trip(g in graph_strategy(12)) {
        prop_assert_eq!(graph6::decode(&graph6::encode(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labelling(g in graph_strategy(9), seed in any::<u64>()) {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut x = seed;
        for i in (1..n).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (x >> 33) as usize % (i + 1));
        }
        let h = g.permute(&perm);
        prop_assert_eq!(g.canonical_form(), h.canonical_form());
        prop_assert!(g.is_isomorphic(&h));
    }

    #[test]
    fn complement_is_an_involution(g in graph_strategy(10)) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn ind_parts_rejoin(g in graph_strategy(9)) {
        let d = ind_parts(&g);
        prop_assert_eq!(d.dc(), complement_components(&g));
        prop_assert_eq!(dc(&g), d.dc());
        prop_assert!(Graph::join(&d.parts).is_isomorphic(&g));
        for p in &d.parts {
            prop_assert_eq!(complement_components(p), 1);
        }
    }

    #[test]
    fn colouring_products_match_brute_force(g in graph_strategy(7)) {
        let e = Property::edgeless();
        prop_assert_eq!(Property::product(vec![e.clone(), e.clone()]).contains(&g), colourable(&g, 2));
        prop_assert_eq!(Property::product(vec![e.clone(), e.clone(), e]).contains(&g), colourable(&g, 3));
        prop_assert_eq!(Property::k_colorable(3).contains(&g), colourable(&g, 3));
    }

    #[test]
    fn found_partitions_are_valid(g in graph_strategy(7)) {
        let props = vec![Property::edgeless(), Property::max_degree(1)];
        let found = find_partition(&g, &props);
        prop_assert_eq!(found.is_some(), enumerate_partitions(&g, &props).next().is_some());
        for l in enumerate_partitions(&g, &props).take(20) {
            for (part, q) in l.induced_parts().iter().zip(&props) {
                prop_assert!(q.contains(part));
            }
        }
    }

    #[test]
    fn star_join_elements_keep_blocks(a in graph_strategy(3), b in graph_strategy(3)) {
        let sj = StarJoin::of_graphs(&[a.clone(), b.clone()]);
        let elements: Vec<_> = sj.elements().unwrap().collect();
        prop_assert_eq!(elements.len(), 1usize << (a.order() * b.order()));
        for el in &elements {
            prop_assert_eq!(el.graph.induced(el.blocks[0]), a.clone());
            prop_assert_eq!(el.graph.induced(el.blocks[1]), b.clone());
        }
    }
}

#[test]
fn bounded_equality_is_an_equivalence() {
    let cat = catalog_properties();
    let eq: Vec<Vec<bool>> = cat
        .iter()
        .map(|p| cat.iter().map(|q| first_separator(p, q, 4, CAP).unwrap().is_none()).collect())
        .collect();
    let n = cat.len();
    for i in 0..n {
        assert!(eq[i][i]);
        for j in 0..n {
            assert_eq!(eq[i][j], eq[j][i]);
            for k in 0..n {
                if eq[i][j] && eq[j][k] {
                    assert!(eq[i][k]);
                }
            }
        }
    }
}

#[test]
fn refutations_reverify() {
    let cat = catalog_properties();
    for p in &cat {
        for q in &cat {
            let cert = verify::properties_equal_at_bound(p, q, 5, CAP).unwrap();
            if cert.is_refuted() {
                let g = graph6::decode(&cert.witnesses[0].graph.graph6).unwrap();
                assert_ne!(p.contains(&g), q.contains(&g), "{p} vs {q} on {g}");
            }
        }
    }
}

#[test]
fn curated_factorizations_stable_across_bounds() {
    let e = Property::edgeless;
    let cases = [
        (Property::k_colorable(2), vec![e(), e()]),
        (Property::k_colorable(3), vec![e(), e(), e()]),
        (Property::k_colorable(3), vec![e(), Property::k_colorable(2)]),
    ];
    for (p, fs) in &cases {
        for bound in [4, 5, 6] {
            assert!(verify::factorization_check(p, fs, bound, CAP).unwrap().is_verified(), "{p} at {bound}");
        }
    }
}
