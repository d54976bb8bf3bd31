//! Exhaustive comparisons against slow, independent implementations.

use std::collections::HashSet;

use itertools::Itertools;
use propfact_core::decomposition::{enumerate_p_decompositions, is_maximal, maximal_graphs};
use propfact_core::enumerate::enumerate_graphs;
use propfact_core::{Graph, Property};

const CAP: usize = 10;

fn all_labelled(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    (0..1u64 << pairs.len()).map(move |m| {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &e)| e).collect();
        Graph::from_edges(n, &edges)
    })
}

/// Lexicographically least adjacency bit string over all relabellings.
fn brute_canonical(g: &Graph) -> Vec<bool> {
    let n = g.order();
    (0..n)
        .permutations(n)
        .map(|p| (0..n).tuple_combinations().map(|(u, v)| g.has_edge(p[u], p[v])).collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

#[test]
fn enumeration_counts_match_brute_force() {
    for n in 0..=5 {
        let classes: HashSet<Vec<bool>> = all_labelled(n).map(|g| brute_canonical(&g)).collect();
        let ours = enumerate_graphs(n, CAP).unwrap();
        assert_eq!(ours.len(), classes.len(), "order {n}");
        let mine: HashSet<Vec<bool>> = ours.iter().map(brute_canonical).collect();
        assert_eq!(mine, classes, "order {n}");
    }
}

#[test]
fn isomorphism_matches_brute_force() {
    let graphs: Vec<Graph> = all_labelled(4).collect();
    for (a, b) in graphs.iter().step_by(3).tuple_combinations() {
        assert_eq!(a.is_isomorphic(b), brute_canonical(a) == brute_canonical(b));
    }
}

#[test]
fn maximal_graphs_match_brute_force() {
    let props = [Property::k_colorable(2), Property::max_degree(1), Property::forest()];
    for p in &props {
        for n in 1..=5 {
            let expected: HashSet<Vec<bool>> = all_labelled(n)
                .filter(|g| {
                    p.contains(g)
                        && g.non_edges().iter().all(|&(u, v)| {
                            let mut h = g.clone();
                            h.add_edge(u, v);
                            !p.contains(&h)
                        })
                })
                .map(|g| brute_canonical(&g))
                .collect();
            let ours = maximal_graphs(n, p, CAP).unwrap();
            assert!(ours.iter().all(|g| is_maximal(g, p)));
            let got: HashSet<Vec<bool>> = ours.iter().map(brute_canonical).collect();
            assert_eq!(got, expected, "{p} at order {n}");
        }
    }
}

/// At k = 1 a 2-part labeling is a decomposition iff every graph between
/// the disjoint union and the join of its parts is a member. The oracle
/// enumerates the cross-edge sets directly.
#[test]
fn two_part_decompositions_match_brute_force() {
    let bip = Property::product(vec![Property::edgeless(), Property::edgeless()]);
    for n in 2..=4 {
        for g in enumerate_graphs(n, CAP).unwrap().iter() {
            if !bip.contains(g) {
                continue;
            }
            let mut expected = 0;
            for mask in 1..(1u64 << n) - 1 {
                if mask & 1 == 0 {
                    continue;
                }
                let a: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                let b: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 0).collect();
                let cross: Vec<(usize, usize)> = a.iter().cartesian_product(&b).map(|(&u, &v)| (u, v)).collect();
                let inner: Vec<(usize, usize)> =
                    g.edges().into_iter().filter(|&(u, v)| (mask >> u & 1) == (mask >> v & 1)).collect();
                let ok = (0..1u64 << cross.len()).all(|m| {
                    let mut edges = inner.clone();
                    edges.extend(cross.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &e)| e));
                    bip.contains(&Graph::from_edges(n, &edges))
                });
                if ok {
                    expected += 1;
                }
            }
            let ours = enumerate_p_decompositions(g, &bip, 2, 1).unwrap();
            assert_eq!(ours.len(), expected, "{g}");
        }
    }
}
