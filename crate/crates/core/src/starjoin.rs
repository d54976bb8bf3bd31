//! `*`-joins: all graphs between a disjoint union and the corresponding join.
//!
//! A [`StarJoin`] is a base graph with a partition of its vertices into
//! blocks. Edges inside a block are fixed by the base; each pair of vertices
//! in different blocks (a *cross pair*) may or may not be an edge. Elements
//! are indexed by a cross-edge bitmask whose bit `i` is the `i`-th cross pair
//! in lexicographic order, so mask `0` is the disjoint union and the last
//! mask is the join.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{block_ranges, Graph, VertexSet};
use crate::property::Property;

/// Cross-pair count up to which a star-join may be expanded exhaustively.
pub const EXHAUSTIVE_PAIR_LIMIT: usize = 24;

/// Cross-pair count up to which a failing check reports the
/// lexicographically first non-member rather than a shortcut witness.
pub const LEX_WITNESS_PAIR_LIMIT: usize = 20;

/// A member of a `*`-join with its block structure retained.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StarJoinElement {
    #[serde(serialize_with = "ser_graph")]
    pub graph: Graph,
    pub blocks: Vec<VertexSet>,
}

fn ser_graph<S: serde::Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::graph6::encode(g))
}

impl StarJoinElement {
    /// Checks that `blocks` partition the graph's vertices.
    pub fn new(graph: Graph, blocks: Vec<VertexSet>) -> Result<Self> {
        let mut seen = VertexSet::empty();
        for b in &blocks {
            if !b.is_disjoint(seen) {
                return Err(Error::StructureMismatch("blocks overlap".into()));
            }
            seen = seen.union(*b);
        }
        if seen != graph.vertices() {
            return Err(Error::StructureMismatch("blocks do not cover the graph".into()));
        }
        Ok(StarJoinElement { graph, blocks })
    }

    /// A single graph as a one-block element.
    pub fn single(graph: Graph) -> Self {
        let all = graph.vertices();
        StarJoinElement { graph, blocks: vec![all] }
    }

    pub fn block_graph(&self, i: usize) -> Graph {
        self.graph.induced(self.blocks[i])
    }

    /// Index of the block containing `v`.
    pub fn block_of(&self, v: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(v)).expect("blocks cover every vertex")
    }
}

/// Outcome of [`StarJoin::subset_of`].
#[derive(Clone, Debug)]
pub struct SubsetCheck {
    pub holds: bool,
    /// A non-member element when `holds` is false.
    pub witness: Option<StarJoinElement>,
    pub strategy: SubsetStrategy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsetStrategy {
    /// Subgraph-closed property: every element is a subgraph of the join.
    JoinOnly,
    /// Non-members have small induced non-members; only small vertex
    /// subsets are expanded.
    SmallSubsets,
    Exhaustive,
}

#[derive(Clone, Debug)]
pub struct StarJoin {
    base: Graph,
    blocks: Vec<VertexSet>,
    pairs: Vec<(usize, usize)>,
}

impl StarJoin {
    /// `parts[0] * parts[1] * ⋯` on consecutive vertex ranges.
    pub fn of_graphs(parts: &[Graph]) -> Self {
        let base = Graph::disjoint_union(parts);
        let blocks = block_ranges(parts);
        StarJoin::over_unchecked(base, blocks)
    }

    /// The `*`-join of `base[b]` over the given blocks.
    pub fn over(base: &Graph, blocks: Vec<VertexSet>) -> Result<Self> {
        let checked = StarJoinElement::new(base.clone(), blocks)?;
        Ok(StarJoin::over_unchecked(checked.graph, checked.blocks))
    }

    fn over_unchecked(base: Graph, blocks: Vec<VertexSet>) -> Self {
        let n = base.order();
        let block_of: Vec<usize> =
            (0..n).map(|v| blocks.iter().position(|b| b.contains(v)).unwrap()).collect();
        let mut within = Graph::new(n);
        for (u, v) in base.edges() {
            if block_of[u] == block_of[v] {
                within.add_edge(u, v);
            }
        }
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if block_of[u] != block_of[v] {
                    pairs.push((u, v));
                }
            }
        }
        StarJoin { base: within, blocks, pairs }
    }

    pub fn order(&self) -> usize {
        self.base.order()
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn cross_pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// `2^(cross pairs)`, saturating.
    pub fn element_count(&self) -> u128 {
        1u128.checked_shl(self.pairs.len() as u32).unwrap_or(u128::MAX)
    }

    /// The disjoint union of the blocks.
    pub fn union_graph(&self) -> &Graph {
        &self.base
    }

    pub fn join_graph(&self) -> Graph {
        let mut g = self.base.clone();
        for &(u, v) in &self.pairs {
            g.add_edge(u, v);
        }
        g
    }

    /// Element with the cross edges selected by `mask`.
    pub fn element(&self, mask: u64) -> StarJoinElement {
        let mut g = self.base.clone();
        for (i, &(u, v)) in self.pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v);
            }
        }
        StarJoinElement { graph: g, blocks: self.blocks.clone() }
    }

    /// Element whose cross edges are exactly those of `g` (same vertex set).
    pub fn element_from_edges(&self, g: &Graph) -> StarJoinElement {
        let mut h = self.base.clone();
        for &(u, v) in &self.pairs {
            if g.has_edge(u, v) {
                h.add_edge(u, v);
            }
        }
        StarJoinElement { graph: h, blocks: self.blocks.clone() }
    }

    /// Streams every element in mask order.
    pub fn elements(&self) -> Result<impl Iterator<Item = StarJoinElement> + '_> {
        if self.pairs.len() >= 64 {
            return Err(Error::ExpansionTooLarge { pairs: self.pairs.len(), limit: 63 });
        }
        Ok((0..1u64 << self.pairs.len()).map(move |m| self.element(m)))
    }

    /// The sub-`*`-join induced on `set` (renumbered, empty blocks dropped).
    pub fn restrict(&self, set: VertexSet) -> StarJoin {
        let index = set.to_vec();
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                index
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| b.contains(v))
                    .map(|(i, _)| i)
                    .collect::<VertexSet>()
            })
            .filter(|b| !b.is_empty())
            .collect();
        StarJoin::over_unchecked(self.base.induced(set), blocks)
    }

    /// The first element (in mask order) outside `p`, by exhaustive search.
    pub fn first_non_member(&self, p: &Property) -> Result<Option<StarJoinElement>> {
        if self.pairs.len() > EXHAUSTIVE_PAIR_LIMIT {
            return Err(Error::ExpansionTooLarge {
                pairs: self.pairs.len(),
                limit: EXHAUSTIVE_PAIR_LIMIT,
            });
        }
        Ok(self.elements()?.find(|e| !p.contains(&e.graph)))
    }

    /// Decides whether every element lies in `p`.
    ///
    /// Subgraph-closed properties only need the join. Otherwise, if every
    /// non-member of `p` has an induced non-member on at most `w` vertices,
    /// only the sub-`*`-joins on `w`-subsets are expanded; failing that the
    /// whole `*`-join is expanded. When the check fails and the expansion
    /// is small enough, the witness is the first non-member in mask order.
    pub fn subset_of(&self, p: &Property) -> Result<SubsetCheck> {
        if self.pairs.is_empty() {
            let holds = p.contains(&self.base);
            let witness = (!holds).then(|| self.element(0));
            return Ok(SubsetCheck { holds, witness, strategy: SubsetStrategy::Exhaustive });
        }
        if p.is_structurally_hereditary() {
            let join = self.join_graph();
            if p.contains(&join) {
                return Ok(SubsetCheck { holds: true, witness: None, strategy: SubsetStrategy::JoinOnly });
            }
            let witness = if self.pairs.len() <= LEX_WITNESS_PAIR_LIMIT {
                self.first_non_member(p)?
            } else {
                Some(self.element_from_edges(&join))
            };
            return Ok(SubsetCheck { holds: false, witness, strategy: SubsetStrategy::JoinOnly });
        }
        let n = self.order();
        if let Some(w) = p.witness_order_bound() {
            let w = w.min(n);
            let per_subset = (w * w.saturating_sub(1) / 2) as u32;
            let subset_cost = binomial(n, w).saturating_mul(1u128 << per_subset);
            if subset_cost < self.element_count() {
                return self.subset_of_small_subsets(p, w);
            }
        }
        if self.pairs.len() > EXHAUSTIVE_PAIR_LIMIT {
            return Err(Error::ExpansionTooLarge { pairs: self.pairs.len(), limit: EXHAUSTIVE_PAIR_LIMIT });
        }
        let witness = self.first_non_member(p)?;
        Ok(SubsetCheck { holds: witness.is_none(), witness, strategy: SubsetStrategy::Exhaustive })
    }

    fn subset_of_small_subsets(&self, p: &Property, w: usize) -> Result<SubsetCheck> {
        for set in subsets_of_size(self.order(), w) {
            let sub = self.restrict(set);
            if sub.pairs.len() >= 64 {
                return Err(Error::ExpansionTooLarge { pairs: sub.pairs.len(), limit: 63 });
            }
            let index = set.to_vec();
            for e in sub.elements()? {
                if !p.contains(&e.graph) {
                    let mut full = self.base.clone();
                    for (a, b) in e.graph.edges() {
                        full.add_edge(index[a], index[b]);
                    }
                    let element = StarJoinElement { graph: full, blocks: self.blocks.clone() };
                    debug_assert!(!p.contains(&element.graph));
                    let witness = if self.pairs.len() <= LEX_WITNESS_PAIR_LIMIT {
                        self.first_non_member(p)?
                    } else {
                        Some(element)
                    };
                    return Ok(SubsetCheck { holds: false, witness, strategy: SubsetStrategy::SmallSubsets });
                }
            }
        }
        Ok(SubsetCheck { holds: true, witness: None, strategy: SubsetStrategy::SmallSubsets })
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All `k`-subsets of `{0..n}` in increasing bitmask order.
fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = VertexSet> {
    let limit = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut next = if k == 0 { Some(0u64) } else if k > n { None } else { Some((1u64 << k) - 1) };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            let succ = (((r ^ cur) >> 2) / c) | r;
            (r != 0 && succ <= limit).then_some(succ)
        };
        Some(VertexSet::from_bits(cur))
    })
}

/// Streams `blocks[0] * blocks[1] * ⋯`, refusing totals above `order_cap`.
pub fn star_join_expand(blocks: &[Graph], order_cap: usize) -> Result<StarJoin> {
    let order: usize = blocks.iter().map(Graph::order).sum();
    if order > order_cap {
        return Err(Error::OrderCapExceeded { order, cap: order_cap });
    }
    Ok(StarJoin::of_graphs(blocks))
}

/// One element per isomorphism class, first occurrence in mask order.
pub fn star_join_expand_distinct(blocks: &[Graph], order_cap: usize) -> Result<Vec<StarJoinElement>> {
    let sj = star_join_expand(blocks, order_cap)?;
    let mut seen = std::collections::HashSet::new();
    let distinct = sj.elements()?.filter(|e| seen.insert(e.graph.canonical_form())).collect();
    Ok(distinct)
}

/// Whether `blocks[0] * ⋯ ⊆ p`, with a non-member witness when not.
pub fn star_join_subset_of(blocks: &[Graph], p: &Property, order_cap: usize) -> Result<SubsetCheck> {
    star_join_expand(blocks, order_cap)?.subset_of(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bipartite() -> Property {
        Property::product(vec![Property::edgeless(), Property::edgeless()])
    }

    #[test]
    fn expand_examples() {
        let k1 = Graph::new(1);
        let sj = star_join_expand(&[k1.clone(), k1.clone()], 10).unwrap();
        let graphs: Vec<Graph> = sj.elements().unwrap().map(|e| e.graph).collect();
        assert_eq!(graphs, vec![Graph::empty(2), Graph::complete(2)]);
        let sj = star_join_expand(&[Graph::complete(2), k1.clone()], 10).unwrap();
        assert_eq!(sj.elements().unwrap().count(), 4);
        let p4 = Graph::path(4);
        let only: Vec<_> = star_join_expand(std::slice::from_ref(&p4), 10).unwrap().elements().unwrap().collect();
        assert_eq!(only.len(), 1);
        assert_eq!(only[0].graph, p4);
        assert!(star_join_expand(&[Graph::new(6), Graph::new(6)], 10).is_err());
    }

    #[test]
    fn distinct_elements() {
        let k1 = Graph::new(1);
        let d = star_join_expand_distinct(&[Graph::complete(2), k1], 10).unwrap();
        // K2+K1, P3, K3
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn subset_examples() {
        let k1 = Graph::new(1);
        let r = star_join_subset_of(&[k1.clone(), k1.clone()], &Property::edgeless(), 10).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().graph, Graph::complete(2));
        assert!(star_join_subset_of(&[k1.clone(), k1], &bipartite(), 10).unwrap().holds);
        // every cross-edge choice between two disjoint edges keeps the graph bipartite?
        let k2 = Graph::complete(2);
        let r = star_join_subset_of(&[k2.clone(), k2.clone()], &bipartite(), 10).unwrap();
        let brute = StarJoin::of_graphs(&[k2.clone(), k2])
            .elements()
            .unwrap()
            .all(|e| bipartite().contains(&e.graph));
        assert_eq!(r.holds, brute);
        assert!(!r.holds);
    }

    #[test]
    fn strategies_agree_with_exhaustive() {
        let props = [
            Property::forbidden_induced(vec![Graph::path(4)]),
            Property::complete(),
            Property::generated(vec![Graph::cycle(5)], crate::property::Containment::Induced).unwrap(),
            bipartite(),
            Property::max_degree(2),
        ];
        let block_sets = [
            vec![Graph::complete(2), Graph::new(1), Graph::new(1)],
            vec![Graph::empty(2), Graph::new(1)],
            vec![Graph::path(3), Graph::new(1)],
            vec![Graph::complete(2), Graph::complete(2)],
        ];
        for p in &props {
            for blocks in &block_sets {
                let sj = StarJoin::of_graphs(blocks);
                let brute = sj.elements().unwrap().find(|e| !p.contains(&e.graph));
                let r = sj.subset_of(p).unwrap();
                assert_eq!(r.holds, brute.is_none(), "{p} on {blocks:?}");
                assert_eq!(r.witness, brute, "{p} on {blocks:?}");
            }
        }
    }

    #[test]
    fn small_subset_strategy_on_large_joins() {
        let p4_free = Property::forbidden_induced(vec![Graph::path(4)]);
        // 2K1 * 2K1 * 2K1 contains P4 (a path through three blocks)
        let sj = StarJoin::of_graphs(&[Graph::empty(2), Graph::empty(2), Graph::empty(2), Graph::empty(2)]);
        assert!(sj.cross_pairs().len() > LEX_WITNESS_PAIR_LIMIT);
        let r = sj.subset_of(&p4_free).unwrap();
        assert_eq!(r.strategy, SubsetStrategy::SmallSubsets);
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert!(!p4_free.contains(&w.graph));
        let only_k = StarJoin::of_graphs(&[Graph::complete(3), Graph::complete(3), Graph::complete(3), Graph::complete(3)]);
        // Cross edges among cliques can create P4 too.
        assert!(!only_k.subset_of(&p4_free).unwrap().holds);
        let k1s = StarJoin::of_graphs(&vec![Graph::new(1); 8]);
        assert!(k1s.subset_of(&Property::universal()).unwrap().holds);
    }

    #[test]
    fn restriction_and_subsets() {
        let sj = StarJoin::of_graphs(&[Graph::complete(2), Graph::new(1)]);
        let r = sj.restrict(VertexSet::from_bits(0b101));
        assert_eq!(r.cross_pairs(), &[(0, 1)]);
        assert_eq!(subsets_of_size(4, 2).count(), 6);
        assert_eq!(subsets_of_size(3, 0).count(), 1);
        assert_eq!(subsets_of_size(3, 4).count(), 0);
        assert_eq!(subsets_of_size(5, 5).count(), 1);
        assert_eq!(binomial(10, 4), 210);
    }
}
