//! Finite samples of the generating sets built from a factorisation.
//!
//! Given factors `P₁, …, P_m` and pins `Hᵢ ∈ Pᵢ`, each factor contributes
//! indecomposable strict members containing its pin. In hereditary mode the
//! join of one such graph per factor is completed to `P`-maximal graphs in
//! every way, keeping those with `dc = dc(P)`. In induced mode the `*`-join
//! is expanded, keeping `P`-strict elements with `dec_P = dec(P)`. The
//! estimates of `dc(P)` and `dec(P)` are taken at the budget order.

use std::collections::HashSet;

use itertools::Itertools;
use serde::Serialize;

use crate::decomposition::{dc, dec_of_property, dc_of_property, is_maximal, is_strict, p_decomposability, StrictMode};
use crate::enumerate::enumerate_graphs;
use crate::error::{Error, Result};
use crate::graph::{block_ranges, Graph};
use crate::property::Property;
use crate::starjoin::{StarJoin, StarJoinElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratingMode {
    HereditaryJoin,
    InducedStarJoin,
}

/// A sampled graph with the blocks spanned by the factor graphs.
#[derive(Clone, Debug, Serialize)]
pub struct Sample {
    pub element: StarJoinElement,
    #[serde(serialize_with = "ser_graphs")]
    pub factor_graphs: Vec<Graph>,
}

fn ser_graphs<S: serde::Serializer>(gs: &[Graph], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(gs.iter().map(crate::graph6::encode))
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratingSample {
    pub mode: GeneratingMode,
    pub budget: usize,
    /// The `dc(P)` or `dec(P)` estimate used as the filter.
    pub target: usize,
    pub samples: Vec<Sample>,
}

/// Upper limit on completions explored per join in hereditary mode.
const COMPLETION_LIMIT: usize = 256;

pub fn generating_set_sample(
    factors: &[Property],
    pins: &[Graph],
    mode: GeneratingMode,
    budget: usize,
    k_max: usize,
    cap: usize,
) -> Result<GeneratingSample> {
    if factors.len() != pins.len() || factors.is_empty() {
        return Err(Error::Precondition("need one pin per factor".into()));
    }
    for (q, h) in factors.iter().zip(pins) {
        if !q.contains(h) {
            return Err(Error::Precondition(format!("pin {h} is not in {q}")));
        }
    }
    let p = Property::product(factors.to_vec());
    let target = match mode {
        GeneratingMode::HereditaryJoin => dc_of_property(&p, budget, cap)?,
        GeneratingMode::InducedStarJoin => dec_of_property(&p, budget, k_max, cap)?,
    }
    .estimate
    .expect("property estimates carry a value")
    .value;
    let min_total: usize = pins.iter().map(Graph::order).sum();
    if min_total > budget {
        return Ok(GeneratingSample { mode, budget, target, samples: Vec::new() });
    }
    let candidates: Vec<Vec<Graph>> = factors
        .iter()
        .zip(pins)
        .map(|(q, h)| {
            let room = budget - (min_total - h.order());
            factor_candidates(q, h, mode, room, k_max, cap)
        })
        .collect::<Result<_>>()?;
    let mut samples = Vec::new();
    let mut seen = HashSet::new();
    for choice in candidates.iter().map(|c| c.iter()).multi_cartesian_product() {
        let parts: Vec<Graph> = choice.into_iter().cloned().collect();
        if parts.iter().map(Graph::order).sum::<usize>() > budget {
            continue;
        }
        let blocks = block_ranges(&parts);
        let found = match mode {
            GeneratingMode::HereditaryJoin => maximal_completions(&Graph::join(&parts), &p)
                .into_iter()
                .filter(|g| dc(g) == target)
                .collect::<Vec<_>>(),
            GeneratingMode::InducedStarJoin => {
                let sj = StarJoin::of_graphs(&parts);
                let mut keep = Vec::new();
                for e in sj.elements()? {
                    if p.contains(&e.graph)
                        && is_strict(&e.graph, &p, StrictMode::Induced)?
                        && p_decomposability(&e.graph, &p, k_max)?.0 == target
                    {
                        keep.push(e.graph);
                    }
                }
                keep
            }
        };
        for g in found {
            if seen.insert((g.canonical_form(), parts.iter().map(Graph::canonical_form).collect::<Vec<_>>())) {
                samples.push(Sample {
                    element: StarJoinElement::new(g, blocks.clone())?,
                    factor_graphs: parts.clone(),
                });
            }
        }
    }
    Ok(GeneratingSample { mode, budget, target, samples })
}

/// Members of `q` up to `room` vertices that are strict, indecomposable and
/// contain the pin.
fn factor_candidates(q: &Property, pin: &Graph, mode: GeneratingMode, room: usize, k_max: usize, cap: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in pin.order().max(1)..=room {
        for g in enumerate_graphs(n, cap)?.iter() {
            let ok = match mode {
                GeneratingMode::HereditaryJoin => {
                    is_maximal(g, q) && dc(g) == 1 && g.contains_subgraph(pin) && q.completeness(cap)? <= n
                }
                GeneratingMode::InducedStarJoin => {
                    q.contains(g)
                        && g.contains_induced(pin)
                        && is_strict(g, q, StrictMode::Induced)?
                        && p_decomposability(g, q, k_max)?.0 == 1
                }
            };
            if ok {
                out.push(g.clone());
            }
        }
    }
    Ok(out)
}

/// All `P`-maximal graphs reachable by adding edges to `g`, up to
/// isomorphism and capped at [`COMPLETION_LIMIT`] explored graphs.
fn maximal_completions(g: &Graph, p: &Property) -> Vec<Graph> {
    if !p.contains(g) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut stack = vec![g.clone()];
    let mut explored = 0;
    while let Some(h) = stack.pop() {
        explored += 1;
        if explored > COMPLETION_LIMIT {
            break;
        }
        let mut extended = false;
        for (u, v) in h.non_edges() {
            let mut next = h.clone();
            next.add_edge(u, v);
            if p.contains(&next) {
                extended = true;
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
        if !extended && !out.iter().any(|o: &Graph| o == &h) {
            out.push(h);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::DEFAULT_ORDER_CAP as CAP;

    #[test]
    fn hereditary_bipartite_sample() {
        let e = Property::edgeless();
        let s = generating_set_sample(&[e.clone(), e.clone()], &[Graph::new(1), Graph::new(1)], GeneratingMode::HereditaryJoin, 4, 2, CAP)
            .unwrap();
        assert_eq!(s.target, 2);
        assert!(s.samples.iter().any(|x| x.element.graph.is_isomorphic(&Graph::complete_bipartite(2, 2))));
        let p = Property::product(vec![e.clone(), e]);
        for x in &s.samples {
            assert_eq!(dc(&x.element.graph), s.target);
            assert!(is_maximal(&x.element.graph, &p));
            for (i, b) in x.element.blocks.iter().enumerate() {
                let part = x.element.graph.induced(*b);
                assert!(part.contains_subgraph(&Graph::new(1)));
                assert_eq!(dc(&x.factor_graphs[i]), 1);
            }
        }
    }

    #[test]
    fn induced_sample_has_target_dec() {
        let e = Property::edgeless();
        let p = Property::product(vec![e.clone(), e.clone()]);
        let s = generating_set_sample(&[e.clone(), e], &[Graph::new(1), Graph::new(1)], GeneratingMode::InducedStarJoin, 3, 2, CAP)
            .unwrap();
        assert!(!s.samples.is_empty());
        for x in &s.samples {
            assert_eq!(p_decomposability(&x.element.graph, &p, 2).unwrap().0, s.target);
        }
    }

    #[test]
    fn pins_must_be_members() {
        let e = Property::edgeless();
        assert!(generating_set_sample(&[e], &[Graph::complete(2)], GeneratingMode::HereditaryJoin, 4, 2, CAP).is_err());
    }
}
