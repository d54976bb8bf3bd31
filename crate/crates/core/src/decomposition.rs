//! Joins and decomposability.
//!
//! Two notions live here. For hereditary properties a graph splits as the
//! join of its *ind-parts* (complements of the components of its
//! complement), and `dc(G)` counts them. For induced-hereditary properties
//! a *P-decomposition* `(V₁, …, Vₙ)` of `G` is a partition into nonempty
//! parts with `kG[V₁] ∗ ⋯ ∗ kG[Vₙ] ⊆ P` for every `k`; only `k ≤ k_max` can
//! be checked, and every result records the `k` it was checked to.

use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{Certificate, Estimate, EstimateDirection, Witness};
use crate::enumerate::enumerate_graphs;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_ORDER};
use crate::partition::Labeling;
use crate::property::{check_closure, ClosureFlag, Property};
use crate::starjoin::{StarJoin, StarJoinElement, SubsetCheck};

pub const DEFAULT_K_MAX: usize = 2;

/// `G` as the join of its ind-parts.
#[derive(Clone, Debug, Serialize)]
pub struct IndPartsDecomposition {
    #[serde(serialize_with = "ser_graph")]
    pub host: Graph,
    #[serde(serialize_with = "ser_graphs")]
    pub parts: Vec<Graph>,
    pub part_sets: Vec<VertexSet>,
}

fn ser_graph<S: serde::Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::graph6::encode(g))
}

fn ser_graphs<S: serde::Serializer>(gs: &[Graph], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(gs.iter().map(crate::graph6::encode))
}

impl IndPartsDecomposition {
    /// `dc(G)`.
    pub fn dc(&self) -> usize {
        self.parts.len()
    }

    pub fn as_labeling(&self) -> Labeling {
        Labeling::new(self.host.clone(), self.part_sets.clone()).expect("complement components partition V(G)")
    }
}

/// Splits `G` into ind-parts, ordered by least vertex.
pub fn ind_parts(g: &Graph) -> IndPartsDecomposition {
    let part_sets = g.complement().components();
    let parts = part_sets.iter().map(|&s| g.induced(s)).collect();
    IndPartsDecomposition { host: g.clone(), parts, part_sets }
}

/// Number of ind-parts.
pub fn dc(g: &Graph) -> usize {
    g.complement().components().len()
}

/// `M(n, P)`: members of order `n` to which no edge can be added, one per
/// isomorphism class.
pub fn maximal_graphs(n: usize, p: &Property, cap: usize) -> Result<Vec<Graph>> {
    let graphs = enumerate_graphs(n, cap)?;
    Ok(graphs.par_iter().filter(|g| is_maximal(g, p)).cloned().collect())
}

pub fn is_maximal(g: &Graph, p: &Property) -> bool {
    p.contains(g)
        && g.non_edges().into_iter().all(|(u, v)| {
            let mut h = g.clone();
            h.add_edge(u, v);
            !p.contains(&h)
        })
}

/// `M*(P)` up to `bound`: the maximal graphs of order at least `c(P)`.
pub fn m_star(p: &Property, bound: usize, cap: usize) -> Result<Vec<Graph>> {
    let c = p.completeness(cap)?.max(1);
    let mut out = Vec::new();
    for n in c..=bound {
        out.extend(maximal_graphs(n, p, cap)?);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrictMode {
    /// `G + K₁ ∉ P`.
    Hereditary,
    /// `G ∗ K₁ ⊄ P`: some one-vertex extension leaves `P`.
    Induced,
}

pub fn is_strict(g: &Graph, p: &Property, mode: StrictMode) -> Result<bool> {
    Ok(strictness_witness(g, p, mode)?.is_some())
}

/// The extension of `G` by one vertex that leaves `P`, if any. In induced
/// mode this is the first non-member of `G ∗ K₁` in cross-edge order, so
/// the new vertex is always the last one.
pub fn strictness_witness(g: &Graph, p: &Property, mode: StrictMode) -> Result<Option<Graph>> {
    if !p.contains(g) {
        return Err(Error::Precondition(format!("{} is not a member of {p}", g)));
    }
    if g.order() + 1 > MAX_ORDER {
        return Err(Error::OrderCapExceeded { order: g.order() + 1, cap: MAX_ORDER });
    }
    match mode {
        StrictMode::Hereditary => {
            let cone = Graph::join(&[g.clone(), Graph::new(1)]);
            Ok((!p.contains(&cone)).then_some(cone))
        }
        StrictMode::Induced => {
            let sj = StarJoin::of_graphs(&[g.clone(), Graph::new(1)]);
            Ok(sj.subset_of(p)?.witness.map(|e| e.graph))
        }
    }
}

/// A `P`-strict (induced mode) induced supergraph of `G`, found by
/// breadth-first search over one-vertex member extensions. The smallest
/// order is found first; within it the first in generation order.
pub fn strict_extension(g: &Graph, p: &Property, cap: usize) -> Result<Graph> {
    if !p.contains(g) {
        return Err(Error::Precondition(format!("{} is not a member of {p}", g)));
    }
    let f = p.min_forbidden_order(cap).ok();
    let limit = match f {
        Some(f) => g.order() + f - 1,
        None => cap,
    };
    let mut level = vec![g.clone()];
    loop {
        let order = level[0].order();
        let strict: Vec<bool> = level
            .par_iter()
            .map(|h| is_strict(h, p, StrictMode::Induced))
            .collect::<Result<_>>()?;
        if let Some(i) = strict.iter().position(|&s| s) {
            return Ok(level.swap_remove(i));
        }
        if order + 1 > limit || order + 1 > MAX_ORDER {
            return Err(Error::SearchExhausted(format!(
                "no {p}-strict induced supergraph of {g} up to order {limit}; \
                 the property flags may be inconsistent"
            )));
        }
        let mut seen = std::collections::HashSet::new();
        let mut next = Vec::new();
        for h in &level {
            let sj = StarJoin::of_graphs(&[h.clone(), Graph::new(1)]);
            for e in sj.elements()? {
                if p.contains(&e.graph) && seen.insert(e.graph.canonical_form()) {
                    next.push(e.graph);
                }
            }
        }
        if next.is_empty() {
            return Err(Error::SearchExhausted(format!("{g} has no member extension in {p}")));
        }
        level = next;
    }
}

/// A labeling verified as a `P`-decomposition for every `k ≤ verified_k`.
#[derive(Clone, Debug, Serialize)]
pub struct PDecomposition {
    pub labeling: Labeling,
    #[serde(serialize_with = "ser_property")]
    pub property: Property,
    pub verified_k: usize,
}

fn ser_property<S: serde::Serializer>(p: &Property, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(p.key())
}

impl PDecomposition {
    pub fn part_count(&self) -> usize {
        self.labeling.part_count()
    }
}

/// `kG[V₁] ∗ ⋯ ∗ kG[Vₙ]` on the vertices of `kG`, copy `c` occupying
/// `c·|G| ..`.
pub fn blown_up_star_join(d: &Labeling, k: usize) -> Result<StarJoin> {
    let n = d.host().order();
    if k * n > MAX_ORDER {
        return Err(Error::OrderCapExceeded { order: k * n, cap: MAX_ORDER });
    }
    let host = d.host().copies(k);
    let blocks = d
        .parts()
        .iter()
        .filter(|p| !p.is_empty())
        .map(|p| (0..k).flat_map(|c| p.iter().map(move |v| c * n + v)).collect())
        .collect();
    StarJoin::over(&host, blocks)
}

/// The defining condition at a single `k`.
pub fn check_at_k(d: &Labeling, p: &Property, k: usize) -> Result<SubsetCheck> {
    blown_up_star_join(d, k)
        .and_then(|sj| sj.subset_of(p))
        .map_err(|e| Error::AtMultiplicity { k, source: Box::new(e) })
}

/// Whether `d` (all parts nonempty) is a `P`-decomposition for all
/// `k ≤ k_max`.
pub fn is_p_decomposition(d: &Labeling, p: &Property, k_max: usize) -> Result<bool> {
    if !d.all_parts_nonempty() {
        return Ok(false);
    }
    for k in 1..=k_max {
        if !check_at_k(d, p, k)?.holds {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Like [`is_p_decomposition`], returning the first failing `k` and the
/// non-member found there.
pub fn decomposition_failure(d: &Labeling, p: &Property, k_max: usize) -> Result<Option<(usize, StarJoinElement)>> {
    for k in 1..=k_max {
        let r = check_at_k(d, p, k)?;
        if !r.holds {
            return Ok(Some((k, r.witness.expect("failed check carries a witness"))));
        }
    }
    Ok(None)
}

/// Every unordered `P`-decomposition of `G` with exactly `n` parts, parts
/// ordered by least vertex, in lexicographic order of the part indices
/// assigned to vertices `0, 1, …`.
///
/// Partial assignments are pruned by the `k = 1` condition on the assigned
/// vertices; this is sound because every expressible property is
/// induced-hereditary. Leaves are then checked up to `k_max` in parallel.
pub fn enumerate_p_decompositions(g: &Graph, p: &Property, n: usize, k_max: usize) -> Result<Vec<Labeling>> {
    let candidates = k1_candidates(g, p, n, usize::MAX)?;
    let keep: Vec<bool> = candidates
        .par_iter()
        .map(|d| passes_from_k2(d, p, k_max))
        .collect::<Result<_>>()?;
    Ok(candidates.into_iter().zip(keep).filter(|(_, k)| *k).map(|(d, _)| d).collect())
}

/// The first `n`-part `P`-decomposition in enumeration order.
pub fn find_p_decomposition(g: &Graph, p: &Property, n: usize, k_max: usize) -> Result<Option<Labeling>> {
    let mut found = None;
    let mut err = None;
    walk_k1(g, p, n, &mut |d| match passes_from_k2(&d, p, k_max) {
        Ok(true) => {
            found = Some(d);
            false
        }
        Ok(false) => true,
        Err(e) => {
            err = Some(e);
            false
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

fn passes_from_k2(d: &Labeling, p: &Property, k_max: usize) -> Result<bool> {
    for k in 2..=k_max {
        if !check_at_k(d, p, k)?.holds {
            return Ok(false);
        }
    }
    Ok(true)
}

fn k1_candidates(g: &Graph, p: &Property, n: usize, limit: usize) -> Result<Vec<Labeling>> {
    let mut out = Vec::new();
    walk_k1(g, p, n, &mut |d| {
        out.push(d);
        out.len() < limit
    })?;
    Ok(out)
}

/// Restricted-growth walk over `n`-part partitions of `V(G)` that satisfy
/// the `k = 1` condition; `visit` returns false to stop.
fn walk_k1(g: &Graph, p: &Property, n: usize, visit: &mut dyn FnMut(Labeling) -> bool) -> Result<()> {
    let order = g.order();
    if n == 0 || n > order {
        return Ok(());
    }
    let mut parts = vec![VertexSet::empty(); n];
    walk_rec(g, p, n, 0, 0, &mut parts, visit).map(|_| ())
}

fn walk_rec(
    g: &Graph,
    p: &Property,
    n: usize,
    v: usize,
    used: usize,
    parts: &mut Vec<VertexSet>,
    visit: &mut dyn FnMut(Labeling) -> bool,
) -> Result<bool> {
    let order = g.order();
    if v == order {
        let d = Labeling::new(g.clone(), parts.clone())?;
        return Ok(visit(d));
    }
    // parts still to open must fit in the remaining vertices
    let remaining = order - v;
    if n - used > remaining {
        return Ok(true);
    }
    let choices = if n - used == remaining { used..used + 1 } else { 0..(used + 1).min(n) };
    for i in choices {
        parts[i].insert(v);
        let next_used = used.max(i + 1);
        if partial_ok(g, p, parts, v)? && !walk_rec(g, p, n, v + 1, next_used, parts, visit)? {
            parts[i].remove(v);
            return Ok(false);
        }
        parts[i].remove(v);
    }
    Ok(true)
}

fn partial_ok(g: &Graph, p: &Property, parts: &[VertexSet], v: usize) -> Result<bool> {
    let assigned = VertexSet::from_bits(if v + 1 >= 64 { u64::MAX } else { (1u64 << (v + 1)) - 1 });
    let host = g.induced(assigned);
    let blocks: Vec<VertexSet> = parts.iter().copied().filter(|b| !b.is_empty()).collect();
    let sj = StarJoin::over(&host, blocks)?;
    match sj.subset_of(p) {
        Ok(r) => Ok(r.holds),
        // too large to decide on a partial assignment; the leaf check decides
        Err(e) if e.is_resource_limit() && v + 1 < g.order() => Ok(true),
        Err(e) => Err(Error::AtMultiplicity { k: 1, source: Box::new(e) }),
    }
}

/// `dec_P(G)` with a witness decomposition, checked for `k ≤ k_max`.
///
/// Returns 0 for non-members. The part count ascends from 1 and stops at
/// the first count with no decomposition: merging two parts of a
/// decomposition gives one with a part fewer, so no larger count can
/// succeed. Counts are capped by `|V(G)|` and by `f(P) − 1` when `f(P)` is
/// found among graphs of order at most `|V(G)|`.
pub fn p_decomposability(g: &Graph, p: &Property, k_max: usize) -> Result<(usize, Option<PDecomposition>)> {
    if k_max == 0 {
        return Err(Error::Precondition("k_max must be at least 1".into()));
    }
    if !p.contains(g) {
        return Ok((0, None));
    }
    let order = g.order();
    if order == 0 {
        return Ok((0, None));
    }
    let whole = Labeling::whole(g.clone());
    if !is_p_decomposition(&whole, p, k_max)? {
        return Ok((0, None));
    }
    let f_cap = order.min(crate::enumerate::DEFAULT_ORDER_CAP - 3);
    let cap = match p.min_forbidden_order(f_cap) {
        Ok(f) => order.min(f.saturating_sub(1)),
        Err(_) => order,
    };
    let mut best = PDecomposition { labeling: whole, property: p.clone(), verified_k: k_max };
    for n in 2..=cap {
        match find_p_decomposition(g, p, n, k_max)? {
            Some(d) => best.labeling = d,
            None => break,
        }
    }
    Ok((best.part_count(), Some(best)))
}

/// Each part of `d` lies inside a single part of `d0`.
pub fn respects(d: &Labeling, d0: &Labeling) -> Result<bool> {
    if d.host() != d0.host() {
        return Err(Error::HostMismatch);
    }
    Ok(d.parts().iter().all(|v| d0.parts().iter().any(|u| v.is_subset(*u))))
}

/// Whether `G*` (blocks are copies of `d0`'s host) lies in
/// `sG[U₁] ∗ ⋯ ∗ sG[U_m]`: cross edges only join different `U`-classes.
pub fn element_respects(element: &StarJoinElement, d0: &Labeling) -> Result<bool> {
    let class = copy_classes(element, d0)?;
    for (u, v) in element.graph.edges() {
        let (bu, bv) = (element.block_of(u), element.block_of(v));
        if bu != bv && class[u] == class[v] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `d0`-class of each vertex of `element`, via the order-preserving map
/// from each block to `d0`'s host.
fn copy_classes(element: &StarJoinElement, d0: &Labeling) -> Result<Vec<usize>> {
    let mut class = vec![0; element.graph.order()];
    for (i, &b) in element.blocks.iter().enumerate() {
        if element.block_graph(i) != *d0.host() {
            return Err(Error::StructureMismatch(format!("block {i} is not a copy of the base graph")));
        }
        for (local, v) in b.iter().enumerate() {
            class[v] = d0.part_of(local);
        }
    }
    Ok(class)
}

/// Restriction of `d` to block `i`, renumbered onto the base graph.
pub fn restrict_to_copy(d: &Labeling, element: &StarJoinElement, i: usize) -> Labeling {
    d.restrict(element.blocks[i])
}

/// For each part `Vᵢ` of `d` a single `Uⱼ` contains `Vᵢ ∩ V(Gᵏ)` for every
/// copy `Gᵏ`.
pub fn respects_uniformly(d: &Labeling, element: &StarJoinElement, d0: &Labeling) -> Result<bool> {
    if d.host() != &element.graph {
        return Err(Error::HostMismatch);
    }
    let class = copy_classes(element, d0)?;
    Ok(d.parts().iter().all(|v| {
        let mut classes = v.iter().map(|x| class[x]);
        match classes.next() {
            None => true,
            Some(first) => classes.all(|c| c == first),
        }
    }))
}

/// `d0` repeated on every copy.
pub fn extension(d0: &Labeling, element: &StarJoinElement) -> Result<Labeling> {
    copy_classes(element, d0)?;
    let mut parts = vec![VertexSet::empty(); d0.part_count()];
    for &b in &element.blocks {
        for (local, v) in b.iter().enumerate() {
            parts[d0.part_of(local)].insert(v);
        }
    }
    Labeling::new(element.graph.clone(), parts)
}

/// A partition `(J₁, …, J_m)` of part indices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupingMap {
    pub groups: Vec<Vec<usize>>,
}

impl GroupingMap {
    pub fn new(n: usize, groups: Vec<Vec<usize>>) -> Result<GroupingMap> {
        let mut seen = vec![false; n];
        for g in &groups {
            if g.is_empty() {
                return Err(Error::StructureMismatch("empty group".into()));
            }
            for &i in g {
                if i >= n || std::mem::replace(&mut seen[i], true) {
                    return Err(Error::StructureMismatch(format!("part index {i} repeated or out of range")));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::StructureMismatch("groups do not cover every part".into()));
        }
        Ok(GroupingMap { groups })
    }

    /// Groups the parts of `fine` by the part of `coarse` containing them.
    /// `fine` must respect `coarse` and have no empty parts.
    pub fn from_refinement(fine: &Labeling, coarse: &Labeling) -> Result<GroupingMap> {
        if !respects(fine, coarse)? {
            return Err(Error::StructureMismatch("labeling does not refine the coarser one".into()));
        }
        let mut groups = vec![Vec::new(); coarse.part_count()];
        for (j, v) in fine.parts().iter().enumerate() {
            let i = VertexSet::min(*v).map(|x| coarse.part_of(x)).ok_or_else(|| {
                Error::StructureMismatch("refining labeling has an empty part".into())
            })?;
            groups[i].push(j);
        }
        groups.retain(|g| !g.is_empty());
        GroupingMap::new(fine.part_count(), groups)
    }
}

/// `dc(P)` estimated as the least `dc(G)` over `M*(P)` up to `bound`.
pub fn dc_of_property(p: &Property, bound: usize, cap: usize) -> Result<Certificate> {
    check_closure(p, bound, cap)?.require(&[ClosureFlag::Hereditary])?;
    let mut cert = Certificate::new(
        "dc",
        format!("decomposability number of {p} over its maximal graphs of order at most {bound}"),
        "least number of ind-parts of a maximal graph of order at least c(P)",
        bound,
    );
    let maximal = m_star(p, bound, cap)?;
    let best = maximal.iter().min_by_key(|g| (dc(g), g.order()));
    match best {
        None => {
            return Err(Error::SearchExhausted(format!("M*({p}) has no graph of order at most {bound}")));
        }
        Some(g) => {
            let value = dc(g);
            cert.estimate = Some(Estimate {
                quantity: "dc(P)".into(),
                value,
                direction: EstimateDirection::UpperBound,
            });
            cert.witness(Witness::labeling("maximal graph attaining the minimum, split into ind-parts", &ind_parts(g).as_labeling()));
            cert.note(format!("{} maximal graphs examined", maximal.len()));
            cert.verify();
        }
    }
    Ok(cert)
}

/// `dec(P)` estimated as the least `dec_P(G)` over `P`-strict graphs of
/// order at most `bound`.
pub fn dec_of_property(p: &Property, bound: usize, k_max: usize, cap: usize) -> Result<Certificate> {
    check_closure(p, bound, cap)?.require(&[ClosureFlag::InducedHereditary, ClosureFlag::Additive])?;
    let strict = strict_graphs(p, bound, cap)?;
    let decs: Vec<(usize, Option<PDecomposition>)> =
        strict.par_iter().map(|g| p_decomposability(g, p, k_max)).collect::<Result<_>>()?;
    let mut cert = Certificate::new(
        "dec",
        format!("decomposability number of {p} over its strict graphs of order at most {bound}"),
        "least P-decomposability number of a P-strict graph",
        bound,
    )
    .with_k_max(k_max);
    let best = decs.iter().enumerate().min_by_key(|(i, (d, _))| (*d, strict[*i].order()));
    let Some((_, (value, witness))) = best else {
        return Err(Error::SearchExhausted(format!("no {p}-strict graph of order at most {bound}")));
    };
    cert.estimate = Some(Estimate { quantity: "dec(P)".into(), value: *value, direction: EstimateDirection::UpperBound });
    if let Some(w) = witness {
        cert.witness(Witness::labeling("strict graph attaining the minimum, with a maximum decomposition", &w.labeling));
    }
    cert.note(format!("{} strict graphs examined", strict.len()));
    cert.verify();
    Ok(cert)
}

/// `S(P)` up to `bound`, one graph per isomorphism class.
pub fn strict_graphs(p: &Property, bound: usize, cap: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=bound {
        let graphs = enumerate_graphs(n, cap)?;
        let flags: Vec<bool> = graphs
            .par_iter()
            .map(|g| if p.contains(g) { is_strict(g, p, StrictMode::Induced) } else { Ok(false) })
            .collect::<Result<_>>()?;
        out.extend(graphs.iter().zip(flags).filter(|(_, s)| *s).map(|(g, _)| g.clone()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::DEFAULT_ORDER_CAP as CAP;

    fn bipartite() -> Property {
        Property::product(vec![Property::edgeless(), Property::edgeless()])
    }

    #[test]
    fn ind_parts_examples() {
        let c4 = ind_parts(&Graph::cycle(4));
        assert_eq!(c4.dc(), 2);
        assert!(c4.parts.iter().all(|p| *p == Graph::empty(2)));
        assert_eq!(ind_parts(&Graph::path(4)).dc(), 1);
        assert_eq!(dc(&Graph::complete(5)), 5);
    }

    #[test]
    fn maximal_graph_examples() {
        assert_eq!(maximal_graphs(3, &Property::edgeless(), CAP).unwrap(), vec![Graph::empty(3)]);
        let m3 = maximal_graphs(3, &bipartite(), CAP).unwrap();
        assert_eq!(m3.len(), 1);
        assert!(m3[0].is_isomorphic(&Graph::complete_bipartite(1, 2)));
        let m4 = maximal_graphs(4, &bipartite(), CAP).unwrap();
        assert_eq!(m4.len(), 2);
        assert!(m4.iter().any(|g| g.is_isomorphic(&Graph::complete_bipartite(2, 2))));
        assert!(m4.iter().any(|g| g.is_isomorphic(&Graph::complete_bipartite(1, 3))));
    }

    #[test]
    fn strictness_examples() {
        assert!(is_strict(&Graph::empty(3), &Property::edgeless(), StrictMode::Induced).unwrap());
        assert!(!is_strict(&Graph::new(1), &bipartite(), StrictMode::Hereditary).unwrap());
        // the cone over K₂ is a triangle
        assert!(is_strict(&Graph::complete(2), &bipartite(), StrictMode::Induced).unwrap());
        let k4_free = Property::forbidden_induced(vec![Graph::complete(4)]);
        assert!(is_strict(&Graph::complete(3), &k4_free, StrictMode::Induced).unwrap());
        assert!(matches!(
            is_strict(&Graph::complete(3), &bipartite(), StrictMode::Induced),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn strict_extension_examples() {
        assert_eq!(strict_extension(&Graph::new(1), &Property::edgeless(), CAP).unwrap(), Graph::new(1));
        let e = strict_extension(&Graph::new(1), &bipartite(), CAP).unwrap();
        assert!(e.order() < 4);
        assert!(is_strict(&e, &bipartite(), StrictMode::Induced).unwrap());
        let k2 = Graph::complete(2);
        assert_eq!(strict_extension(&k2, &bipartite(), CAP).unwrap(), k2);
    }

    #[test]
    fn decomposability_examples() {
        assert_eq!(p_decomposability(&Graph::complete(3), &bipartite(), 2).unwrap().0, 0);
        let (n, d) = p_decomposability(&Graph::complete(2), &bipartite(), 2).unwrap();
        assert_eq!(n, 2);
        let d = d.unwrap();
        assert_eq!(d.labeling.to_vecs(), vec![vec![0], vec![1]]);
        assert_eq!(d.verified_k, 2);
        let (n, _) = p_decomposability(&Graph::empty(3), &Property::edgeless(), 2).unwrap();
        assert_eq!(n, 1);
        // every member has a one-part decomposition
        let (n, _) = p_decomposability(&Graph::path(3), &bipartite(), 1).unwrap();
        assert!(n >= 1);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let p = Property::product(vec![Property::edgeless(), Property::max_degree(1)]);
        for g in crate::enumerate::graphs_up_to(5, CAP).unwrap() {
            // the brute force expands kG[V₁] ∗ ⋯ in full, so k = 2 only on tiny graphs
            let k_max = if g.order() <= 3 { 2 } else { 1 };
            for n in 1..=3 {
                let fast = enumerate_p_decompositions(&g, &p, n, k_max).unwrap();
                let brute = brute_decompositions(&g, &p, n, k_max);
                assert_eq!(fast, brute, "{g} n={n}");
            }
        }
    }

    fn brute_decompositions(g: &Graph, p: &Property, n: usize, k_max: usize) -> Vec<Labeling> {
        let order = g.order();
        let mut out = Vec::new();
        let total = n.pow(order as u32);
        for code in 0..total {
            let mut c = code;
            let mut assign = vec![0; order];
            for v in (0..order).rev() {
                assign[v] = c % n;
                c /= n;
            }
            // canonical: first occurrences in increasing order
            let mut next = 0;
            let mut ok = true;
            for &a in &assign {
                if a > next {
                    ok = false;
                    break;
                }
                if a == next {
                    next += 1;
                }
            }
            if !ok || next != n {
                continue;
            }
            let mut parts = vec![VertexSet::empty(); n];
            for (v, &a) in assign.iter().enumerate() {
                parts[a].insert(v);
            }
            let d = Labeling::new(g.clone(), parts).unwrap();
            let good = (1..=k_max).all(|k| {
                let sj = blown_up_star_join(&d, k).unwrap();
                let all = sj.elements().unwrap().all(|e| p.contains(&e.graph));
                all
            });
            if good {
                out.push(d);
            }
        }
        out
    }

    #[test]
    fn respect_examples() {
        let c4 = Graph::cycle(4);
        let singles = Labeling::from_vecs(c4.clone(), &[vec![0], vec![1], vec![2], vec![3]]).unwrap();
        let bip = Labeling::from_vecs(c4.clone(), &[vec![0, 2], vec![1, 3]]).unwrap();
        let whole = Labeling::whole(c4.clone());
        assert!(respects(&singles, &bip).unwrap());
        assert!(!respects(&whole, &bip).unwrap());
        assert!(respects(&bip, &bip).unwrap());
        let other = Labeling::whole(Graph::path(4));
        assert!(matches!(respects(&other, &bip), Err(Error::HostMismatch)));
    }

    #[test]
    fn uniform_respect() {
        let k2 = Graph::complete(2);
        let d0 = Labeling::from_vecs(k2.clone(), &[vec![0], vec![1]]).unwrap();
        let sj = StarJoin::of_graphs(&[k2.clone(), k2.clone()]);
        let el = sj.element(0);
        let ext = extension(&d0, &el).unwrap();
        assert_eq!(ext.to_vecs(), vec![vec![0, 2], vec![1, 3]]);
        assert!(respects_uniformly(&ext, &el, &d0).unwrap());
        // respects d0 on each copy, with the assignment swapped on the second
        let swapped = Labeling::from_vecs(el.graph.clone(), &[vec![0, 3], vec![1, 2]]).unwrap();
        assert!(respects(&restrict_to_copy(&swapped, &el, 0), &d0).unwrap());
        assert!(respects(&restrict_to_copy(&swapped, &el, 1), &d0).unwrap());
        assert!(!respects_uniformly(&swapped, &el, &d0).unwrap());
        let single = StarJoinElement::single(k2.clone());
        assert_eq!(respects_uniformly(&d0, &single, &d0).unwrap(), respects(&d0, &d0).unwrap());
        assert!(element_respects(&sj.element(0b0110), &d0).unwrap());
        assert!(!element_respects(&sj.element(0b0001), &d0).unwrap());
    }

    #[test]
    fn grouping() {
        let k2 = Graph::complete(2);
        let fine = Labeling::from_vecs(k2.clone(), &[vec![0], vec![1]]).unwrap();
        let g = GroupingMap::from_refinement(&fine, &Labeling::whole(k2)).unwrap();
        assert_eq!(g.groups, vec![vec![0, 1]]);
        assert!(GroupingMap::new(3, vec![vec![0], vec![0, 1, 2]]).is_err());
        assert!(GroupingMap::new(3, vec![vec![0], vec![2]]).is_err());
    }

    #[test]
    fn dc_of_property_examples() {
        let e = dc_of_property(&Property::edgeless(), 5, CAP).unwrap();
        assert_eq!(e.estimate.unwrap().value, 1);
        let b = dc_of_property(&bipartite(), 5, CAP).unwrap();
        assert_eq!(b.estimate.as_ref().unwrap().value, 2);
        assert_eq!(b.estimate.unwrap().direction, EstimateDirection::UpperBound);
        let t = Property::product(vec![Property::edgeless(), Property::edgeless(), Property::edgeless()]);
        assert_eq!(dc_of_property(&t, 6, CAP).unwrap().estimate.unwrap().value, 3);
    }

    #[test]
    fn dec_of_property_examples() {
        let e = dec_of_property(&Property::edgeless(), 4, 2, CAP).unwrap();
        assert_eq!(e.estimate.unwrap().value, 1);
        let b = dec_of_property(&bipartite(), 4, 2, CAP).unwrap();
        assert_eq!(b.estimate.unwrap().value, 2);
        assert_eq!(b.k_max, Some(2));
    }
}
