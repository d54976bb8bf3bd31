//! Building uniquely decomposable supergraphs.
//!
//! Given a `P`-strict graph `G` with `dec_P(G) = n` and a fixed
//! `P`-decomposition `d0 = (U₁, …, U_m)`, these constructions glue copies of
//! `G` together with edges only between different `U`-classes of different
//! copies, so that every `n`-part decomposition of the result has to respect
//! `d0` on every copy.
//!
//! Copies are laid out consecutively: copy `c` occupies vertices
//! `c·|G| .. (c+1)·|G|` in the same order as `G`.

use itertools::Itertools;
use serde::Serialize;

use crate::decomposition::{
    enumerate_p_decompositions, extension, find_p_decomposition, is_p_decomposition, p_decomposability,
    respects, respects_uniformly, strictness_witness, GroupingMap, StrictMode,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_ORDER};
use crate::graph6;
use crate::partition::{enumerate_partitions, Labeling};
use crate::property::Property;
use crate::starjoin::{StarJoin, StarJoinElement};

pub const DEFAULT_K_CAP: usize = 3;
pub const DEFAULT_ORDER_CAP: usize = 60;

fn ser_graph<S: serde::Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&graph6::encode(g))
}

fn check_base(g: &Graph, d0: &Labeling) -> Result<()> {
    if d0.host() != g {
        return Err(Error::HostMismatch);
    }
    if !d0.all_parts_nonempty() {
        return Err(Error::Precondition("decomposition has an empty part".into()));
    }
    Ok(())
}

fn classes(d: &Labeling) -> Vec<usize> {
    (0..d.host().order()).map(|v| d.part_of(v)).collect()
}

fn copy_blocks(n: usize, copies: usize) -> Vec<VertexSet> {
    (0..copies).map(|c| (c * n..(c + 1) * n).collect()).collect()
}

fn check_order(order: usize, cap: usize) -> Result<()> {
    if order > cap.min(MAX_ORDER) {
        return Err(Error::OrderCapExceeded { order, cap: cap.min(MAX_ORDER) });
    }
    Ok(())
}

/// `F ∈ (G ∗ K₁) ∖ P` and the neighbourhood of the new vertex in `G`.
pub fn cone_witness(g: &Graph, p: &Property) -> Result<(Graph, VertexSet)> {
    let f = strictness_witness(g, p, StrictMode::Induced)?
        .ok_or_else(|| Error::Precondition(format!("{g} is not {p}-strict")))?;
    let z = g.order();
    Ok((f.clone(), f.neighbors(z)))
}

/// Edges of `Gⁱ ⇒ Gʲ` as pairs (vertex of `Gⁱ`, vertex of `Gʲ`): each
/// vertex of `U_x` in `Gʲ` goes to every vertex of `Z_y`, `y ≠ x`, in `Gⁱ`.
fn arrow_pattern(d0: &Labeling, z_sets: &[VertexSet]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for b in 0..d0.host().order() {
        let x = d0.part_of(b);
        for (y, z) in z_sets.iter().enumerate() {
            if y != x {
                out.extend(z.iter().map(|a| (a, b)));
            }
        }
    }
    out.sort_unstable();
    out
}

fn add_arrow(host: &mut Graph, pattern: &[(usize, usize)], n: usize, from: usize, to: usize) {
    for &(a, b) in pattern {
        host.add_edge(from * n + a, to * n + b);
    }
}

/// `Gⁱ ⇒ Gʲ` with `Gⁱ` as block 0 and `Gʲ` as block 1.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionOneResult {
    pub graph: StarJoinElement,
    #[serde(serialize_with = "ser_graph")]
    pub witness_f: Graph,
    pub cone_neighborhood: VertexSet,
    pub zy_sets: Vec<VertexSet>,
}

pub fn construction_one(g: &Graph, d0: &Labeling, p: &Property) -> Result<ConstructionOneResult> {
    check_base(g, d0)?;
    let n = g.order();
    check_order(2 * n, MAX_ORDER)?;
    let (witness_f, cone_neighborhood) = cone_witness(g, p)?;
    let zy_sets: Vec<VertexSet> = d0.parts().iter().map(|u| u.intersection(cone_neighborhood)).collect();
    let mut host = g.copies(2);
    add_arrow(&mut host, &arrow_pattern(d0, &zy_sets), n, 0, 1);
    if !p.contains(&host) {
        return Err(Error::Precondition(format!(
            "arrow graph {host} is not in {p}; the given labeling is not a {p}-decomposition"
        )));
    }
    Ok(ConstructionOneResult {
        graph: StarJoinElement::new(host, copy_blocks(n, 2))?,
        witness_f,
        cone_neighborhood,
        zy_sets,
    })
}

/// `m • k_t G`: `m` copies `H¹, …, Hᵐ` of `k_t G`, copy `c` of `G` inside
/// `Hˣ` being block `x·k_t + c`.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionTwoResult {
    pub graph: StarJoinElement,
    pub bad_decomposition: Labeling,
    pub k_t: usize,
    /// On the vertices of `k_t G`, copy `c` at `c·|G| ..`.
    #[serde(serialize_with = "ser_graph")]
    pub witness_ft: Graph,
    /// `A_{i,j} = U_i ∩ V_{t,j}`.
    pub aij_sets: Vec<Vec<VertexSet>>,
}

impl ConstructionTwoResult {
    pub fn copies(&self) -> usize {
        self.graph.blocks.len()
    }
}

pub fn construction_two(g: &Graph, d0: &Labeling, dt: &Labeling, p: &Property, k_cap: usize) -> Result<ConstructionTwoResult> {
    check_base(g, d0)?;
    check_base(g, dt)?;
    if respects(dt, d0)? {
        return Err(Error::Precondition("the excluded decomposition respects d0".into()));
    }
    let n = g.order();
    let aij_sets: Vec<Vec<VertexSet>> =
        d0.parts().iter().map(|u| dt.parts().iter().map(|v| u.intersection(*v)).collect()).collect();
    let mut found = None;
    for k in 1..=k_cap {
        check_order(k * n, MAX_ORDER)?;
        let blocks = aij_sets
            .iter()
            .flatten()
            .filter(|a| !a.is_empty())
            .map(|a| (0..k).flat_map(|c| a.iter().map(move |v| c * n + v)).collect())
            .collect();
        let check = StarJoin::over(&g.copies(k), blocks)?.subset_of(p)?;
        if !check.holds {
            found = Some((k, check.witness.expect("failed check carries a witness").graph));
            break;
        }
    }
    let (k_t, witness_ft) = found.ok_or_else(|| {
        Error::SearchExhausted(format!("every blown-up star-join stays in {p} for k up to {k_cap}"))
    })?;
    let m = d0.part_count();
    let kn = k_t * n;
    check_order(m * kn, MAX_ORDER)?;
    let class = classes(d0);
    let mut host = g.copies(m * k_t);
    for (x, y) in (0..m).tuple_combinations() {
        for a in (0..kn).filter(|a| class[a % n] == x) {
            for b in (0..kn).filter(|b| class[b % n] == y) {
                if witness_ft.has_edge(a, b) {
                    host.add_edge(x * kn + a, y * kn + b);
                }
            }
        }
    }
    if !p.contains(&host) {
        return Err(Error::Precondition(format!("{host} is not in {p}; d0 is not a {p}-decomposition")));
    }
    Ok(ConstructionTwoResult {
        graph: StarJoinElement::new(host, copy_blocks(n, m * k_t))?,
        bad_decomposition: dt.clone(),
        k_t,
        witness_ft,
        aij_sets,
    })
}

/// Labelings of `element` whose restriction to every copy is `d` up to the
/// order of parts. The first copy fixes the numbering.
pub fn labelings_restricting_to(element: &StarJoinElement, d: &Labeling) -> Vec<Labeling> {
    let parts = d.part_count();
    let copies = element.blocks.len();
    let perms: Vec<Vec<usize>> = (0..parts).permutations(parts).collect();
    let identity = (0..parts).collect::<Vec<_>>();
    let mut out = Vec::new();
    let choices = std::iter::once(vec![identity])
        .chain(std::iter::repeat_n(perms, copies.saturating_sub(1)))
        .multi_cartesian_product();
    for choice in choices {
        let mut sets = vec![VertexSet::empty(); parts];
        for (block, sigma) in element.blocks.iter().zip(&choice) {
            for (local, v) in block.iter().enumerate() {
                sets[sigma[d.part_of(local)]].insert(v);
            }
        }
        out.push(Labeling::new(element.graph.clone(), sets).expect("copies partition the vertices"));
    }
    out
}

/// A decomposition of `m • k_t G` restricting to `d_t` on every copy, if
/// one exists. The construction is designed so that there is none.
pub fn exclusion_counterexample(c2: &ConstructionTwoResult, p: &Property, k_max: usize) -> Result<Option<Labeling>> {
    for d in labelings_restricting_to(&c2.graph, &c2.bad_decomposition) {
        if is_p_decomposition(&d, p, k_max)? {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct Stage {
    pub step: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excluded: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub copies: usize,
    pub order: usize,
    pub graph6: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum BuildOutcome {
    Completed,
    OrderCapExceeded { order: usize, cap: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct UPGCertificate {
    #[serde(serialize_with = "ser_graph")]
    pub base: Graph,
    pub d0: Labeling,
    pub property: String,
    pub parts_count: usize,
    /// Number of `n`-part decompositions of the base not respecting `d0`.
    pub r: usize,
    pub outcome: BuildOutcome,
    pub stage_log: Vec<Stage>,
    pub result: Option<StarJoinElement>,
    /// Whether the result is `P`-strict; `None` when not decided.
    pub strict: Option<bool>,
    /// The `k` to which decompositions of the result were checked.
    pub verified_k: usize,
    /// All `n`-part decompositions of the result, when enumerated.
    pub decompositions: Option<Vec<Labeling>>,
    pub all_respect_uniformly: Option<bool>,
    /// Exactly one `n`-part decomposition, equal to the extension of `d0`.
    pub uniqueness_verified: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl UPGCertificate {
    pub fn completed(&self) -> bool {
        self.outcome == BuildOutcome::Completed
    }

    /// "unique", "none" (no `n`-part decomposition at all), "several", or
    /// "unchecked".
    pub fn decomposition_summary(&self) -> &'static str {
        match &self.decompositions {
            None => "unchecked",
            Some(d) if d.is_empty() => "none",
            Some(d) if d.len() == 1 => "unique",
            Some(_) => "several",
        }
    }
}

fn stage(step: &str, g: &Graph, copies: usize) -> Stage {
    Stage {
        step: step.into(),
        excluded: None,
        k_t: None,
        witness: None,
        copies,
        order: g.order(),
        graph6: graph6::encode(g),
    }
}

/// Builds `G*`: every `n`-part `P`-decomposition of it respects `d0`
/// uniformly, and when `d0` has `n` parts the extension of `d0` is the only
/// one. Stops with [`BuildOutcome::OrderCapExceeded`] and the stages built
/// so far once a stage would exceed `order_cap`.
pub fn build_g_star(
    g: &Graph,
    d0: &Labeling,
    p: &Property,
    n: usize,
    k_max: usize,
    k_cap: usize,
    order_cap: usize,
) -> Result<UPGCertificate> {
    check_base(g, d0)?;
    if strictness_witness(g, p, StrictMode::Induced)?.is_none() {
        return Err(Error::Precondition(format!("{g} is not {p}-strict")));
    }
    if !is_p_decomposition(d0, p, k_max)? {
        return Err(Error::Precondition(format!("d0 is not a {p}-decomposition of {g}")));
    }
    let dec = p_decomposability(g, p, k_max)?.0;
    if dec != n {
        return Err(Error::Precondition(format!("dec_P({g}) = {dec}, not {n}")));
    }
    let bad: Vec<Labeling> = enumerate_p_decompositions(g, p, n, k_max)?
        .into_iter()
        .filter(|d| !respects(d, d0).unwrap_or(true))
        .collect();
    let mut cert = UPGCertificate {
        base: g.clone(),
        d0: d0.clone(),
        property: p.to_string(),
        parts_count: n,
        r: bad.len(),
        outcome: BuildOutcome::Completed,
        stage_log: Vec::new(),
        result: None,
        strict: None,
        verified_k: 0,
        decompositions: None,
        all_respect_uniformly: None,
        uniqueness_verified: false,
        notes: Vec::new(),
    };
    let base_n = g.order();
    let result = if bad.is_empty() {
        cert.stage_log.push(stage("r = 0: G* = G", g, 1));
        StarJoinElement::single(g.clone())
    } else {
        let mut current: Option<(Graph, usize)> = None;
        for (l, dt) in bad.iter().enumerate() {
            let c2 = construction_two(g, d0, dt, p, k_cap)?;
            let q = c2.copies();
            let mut st = stage("construction-two", &c2.graph.graph, q);
            st.excluded = Some(dt.to_vecs());
            st.k_t = Some(c2.k_t);
            st.witness = Some(graph6::encode(&c2.witness_ft));
            cert.stage_log.push(st);
            let next = match current.take() {
                None => (c2.graph.graph.clone(), q),
                Some((prev, s)) => {
                    let order = q * prev.order();
                    if order > order_cap.min(MAX_ORDER) {
                        cert.outcome = BuildOutcome::OrderCapExceeded { order, cap: order_cap.min(MAX_ORDER) };
                        cert.notes.push(format!("stopped before G({})", l + 1));
                        return Ok(cert);
                    }
                    (iterate(&prev, s, base_n, &c2), s * q)
                }
            };
            if next.0.order() > order_cap {
                cert.outcome = BuildOutcome::OrderCapExceeded { order: next.0.order(), cap: order_cap };
                return Ok(cert);
            }
            cert.stage_log.push(stage(&format!("G({})", l + 1), &next.0, next.1));
            current = Some(next);
        }
        let (gr, s) = current.expect("r ≥ 1");
        let order = (s + 2) * base_n;
        if order > order_cap.min(MAX_ORDER) {
            cert.outcome = BuildOutcome::OrderCapExceeded { order, cap: order_cap.min(MAX_ORDER) };
            cert.notes.push("stopped before adding the two outer copies".into());
            return Ok(cert);
        }
        let (_, cone) = cone_witness(g, p)?;
        let z: Vec<VertexSet> = d0.parts().iter().map(|u| u.intersection(cone)).collect();
        let pattern = arrow_pattern(d0, &z);
        let mut host = Graph::disjoint_union(&[g.clone(), gr, g.clone()]);
        for i in 1..=s {
            add_arrow(&mut host, &pattern, base_n, 0, i);
            add_arrow(&mut host, &pattern, base_n, i, s + 1);
        }
        add_arrow(&mut host, &pattern, base_n, s + 1, 0);
        cert.stage_log.push(stage("G*", &host, s + 2));
        StarJoinElement::new(host, copy_blocks(base_n, s + 2))?
    };
    if !p.contains(&result.graph) {
        return Err(Error::StructureMismatch(format!("construction output {} is not in {p}", result.graph)));
    }
    verify_result(&mut cert, &result, p, n, k_max);
    cert.result = Some(result);
    Ok(cert)
}

/// `G(ℓ)` from `mk_ℓ` copies of `G(ℓ−1)`: between the `i`-th and `j`-th
/// copies, every pair of `G`-copies gets the edges that join the `i`-th and
/// `j`-th copies of `G` in `m • k_ℓ G`.
fn iterate(prev: &Graph, s: usize, n: usize, c2: &ConstructionTwoResult) -> Graph {
    let q = c2.copies();
    let size = prev.order();
    let mut host = prev.copies(q);
    let h = &c2.graph.graph;
    for (i, j) in (0..q).tuple_combinations() {
        let pattern: Vec<(usize, usize)> = (0..n)
            .cartesian_product(0..n)
            .filter(|&(a, b)| h.has_edge(i * n + a, j * n + b))
            .collect();
        for (pc, qc) in (0..s).cartesian_product(0..s) {
            for &(a, b) in &pattern {
                host.add_edge(i * size + pc * n + a, j * size + qc * n + b);
            }
        }
    }
    host
}

fn verify_result(cert: &mut UPGCertificate, result: &StarJoinElement, p: &Property, n: usize, k_max: usize) {
    let order = result.graph.order();
    match strictness_witness(&result.graph, p, StrictMode::Induced) {
        Ok(w) => cert.strict = Some(w.is_some()),
        Err(e) => cert.notes.push(format!("strictness not decided: {e}")),
    }
    let k = k_max.min(MAX_ORDER / order.max(1));
    if k < k_max {
        cert.notes.push(format!("decompositions of the result checked for k ≤ {k} only"));
    }
    if k == 0 {
        return;
    }
    cert.verified_k = k;
    let decs = match enumerate_p_decompositions(&result.graph, p, n, k) {
        Ok(d) => d,
        Err(e) => {
            cert.notes.push(format!("decompositions not enumerated: {e}"));
            return;
        }
    };
    let uniform = decs.iter().all(|d| respects_uniformly(d, result, &cert.d0).unwrap_or(false));
    cert.all_respect_uniformly = Some(uniform);
    if cert.d0.part_count() == n {
        let ext = extension(&cert.d0, result).expect("blocks are copies of the base");
        cert.uniqueness_verified = decs.len() == 1 && decs[0].same_unordered(&ext);
    }
    cert.decompositions = Some(decs);
}

/// A `dec_P(G)`-part decomposition of `G` that respects `d0`, read off a
/// copy of `G` inside `G*`.
pub fn respecting_decomposition(
    g: &Graph,
    d0: &Labeling,
    p: &Property,
    k_max: usize,
    k_cap: usize,
    order_cap: usize,
) -> Result<Labeling> {
    check_base(g, d0)?;
    let n = p_decomposability(g, p, k_max)?.0;
    if d0.part_count() == n && is_p_decomposition(d0, p, k_max)? {
        return Ok(d0.clone());
    }
    if d0.part_count() == 1 {
        return find_p_decomposition(g, p, n, k_max)?
            .ok_or_else(|| Error::SearchExhausted(format!("no {n}-part decomposition of {g}")));
    }
    let cert = build_g_star(g, d0, p, n, k_max, k_cap, order_cap)?;
    if let BuildOutcome::OrderCapExceeded { order, cap } = cert.outcome {
        return Err(Error::OrderCapExceeded { order, cap });
    }
    let result = cert.result.as_ref().expect("completed build has a result");
    let d = cert
        .decompositions
        .as_ref()
        .and_then(|ds| ds.first())
        .ok_or_else(|| Error::SearchExhausted(format!("G* has no {n}-part decomposition")))?;
    let restricted = d.restrict(result.blocks[0]);
    if !respects(&restricted, d0)? {
        return Err(Error::StructureMismatch("restricted decomposition does not respect d0".into()));
    }
    Ok(restricted)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupingMode {
    /// Each part of `d0` lies in one factor part; groups list `d0` parts
    /// per factor.
    Coarsening,
    /// Each factor part lies in one part of `d0`; groups list factor parts
    /// per part of `d0`, so `Qᵢ` is the product of the grouped factors.
    Refining,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorGrouping {
    pub labeling: Labeling,
    pub grouping: GroupingMap,
    pub mode: GroupingMode,
}

/// A `(Q₁, …, Q_m)`-partition of `G` related to `d0` by grouping parts.
/// Coarsenings of `d0` are tried first, then factor partitions refining
/// `d0`.
pub fn group_to_factor_partition(g: &Graph, d0: &Labeling, factors: &[Property]) -> Result<FactorGrouping> {
    check_base(g, d0)?;
    let m = factors.len();
    let parts = d0.part_count();
    if m == 0 {
        return Err(Error::Precondition("no factors".into()));
    }
    for assign in std::iter::repeat_n(0..m, parts).multi_cartesian_product() {
        let mut groups = vec![Vec::new(); m];
        for (i, &f) in assign.iter().enumerate() {
            groups[f].push(i);
        }
        if groups.iter().any(Vec::is_empty) {
            continue;
        }
        let sets: Vec<VertexSet> = groups
            .iter()
            .map(|grp| grp.iter().fold(VertexSet::empty(), |acc, &i| acc.union(d0.parts()[i])))
            .collect();
        if sets.iter().zip(factors).all(|(s, q)| q.contains(&g.induced(*s))) {
            return Ok(FactorGrouping {
                labeling: Labeling::new(g.clone(), sets)?,
                grouping: GroupingMap::new(parts, groups)?,
                mode: GroupingMode::Coarsening,
            });
        }
    }
    for l in enumerate_partitions(g, factors) {
        if l.all_parts_nonempty() && respects(&l, d0)? {
            let grouping = GroupingMap::from_refinement(&l, d0)?;
            return Ok(FactorGrouping { labeling: l, grouping, mode: GroupingMode::Refining });
        }
    }
    Err(Error::SearchExhausted(format!("no factor partition of {g} is related to d0 by grouping")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{respects_uniformly, restrict_to_copy};

    fn bipartite() -> Property {
        Property::product(vec![Property::edgeless(), Property::edgeless()])
    }

    fn k2_d0() -> (Graph, Labeling) {
        let k2 = Graph::complete(2);
        let d0 = Labeling::from_vecs(k2.clone(), &[vec![0], vec![1]]).unwrap();
        (k2, d0)
    }

    #[test]
    fn construction_one_on_k2_is_c4() {
        let (k2, d0) = k2_d0();
        let r = construction_one(&k2, &d0, &bipartite()).unwrap();
        assert_eq!(r.witness_f, Graph::complete(3));
        assert_eq!(r.cone_neighborhood.to_vec(), vec![0, 1]);
        assert!(r.graph.graph.is_isomorphic(&Graph::cycle(4)));
        assert_eq!(r.graph.blocks.len(), 2);
        let p = bipartite();
        let decs = enumerate_p_decompositions(&r.graph.graph, &p, 2, 2).unwrap();
        assert!(!decs.is_empty());
        for d in &decs {
            if respects(&restrict_to_copy(d, &r.graph, 0), &d0).unwrap() {
                assert!(respects(&restrict_to_copy(d, &r.graph, 1), &d0).unwrap());
                assert!(respects_uniformly(d, &r.graph, &d0).unwrap());
            }
        }
    }

    #[test]
    fn construction_one_needs_strictness() {
        let g = Graph::new(1);
        let d0 = Labeling::whole(g.clone());
        let universal = Property::universal();
        assert!(matches!(construction_one(&g, &d0, &universal), Err(Error::Precondition(_))));
    }

    fn curated() -> (Graph, Labeling, Labeling) {
        // K₂ plus an isolated vertex
        let g = Graph::from_edges(3, &[(0, 1)]);
        let d0 = Labeling::from_vecs(g.clone(), &[vec![0, 2], vec![1]]).unwrap();
        let dt = Labeling::from_vecs(g.clone(), &[vec![0], vec![1, 2]]).unwrap();
        (g, d0, dt)
    }

    #[test]
    fn construction_two_curated_instance() {
        let (g, d0, dt) = curated();
        let p = bipartite();
        let c2 = construction_two(&g, &d0, &dt, &p, 3).unwrap();
        assert_eq!(c2.k_t, 1);
        assert_eq!(c2.witness_ft, Graph::complete(3));
        assert_eq!(c2.graph.graph.order(), 2 * 3);
        let mut expected = g.copies(2);
        expected.add_edge(0, 4);
        expected.add_edge(2, 4);
        assert_eq!(c2.graph.graph, expected);
        assert!(exclusion_counterexample(&c2, &p, 2).unwrap().is_none());
        // oracle: enumerate all decompositions and look for one restricting to dt everywhere
        let all = enumerate_p_decompositions(&c2.graph.graph, &p, 2, 2).unwrap();
        assert!(!all.is_empty());
        for d in &all {
            let everywhere = (0..c2.copies()).all(|i| restrict_to_copy(d, &c2.graph, i).same_unordered(&dt));
            assert!(!everywhere);
        }
        assert!(construction_two(&g, &d0, &d0, &p, 3).is_err());
    }

    #[test]
    fn g_star_fast_path() {
        let (k2, d0) = k2_d0();
        let cert = build_g_star(&k2, &d0, &bipartite(), 2, 2, 3, 60).unwrap();
        assert_eq!(cert.r, 0);
        assert_eq!(cert.result.as_ref().unwrap().graph, k2);
        assert!(cert.uniqueness_verified);
        assert_eq!(cert.parts_count, 2);
        assert_eq!(cert.decomposition_summary(), "unique");
    }

    #[test]
    fn g_star_curated() {
        let (g, d0, _) = curated();
        let p = bipartite();
        let cert = build_g_star(&g, &d0, &p, 2, 2, 3, 60).unwrap();
        assert!(cert.completed());
        assert_eq!(cert.r, 1);
        let result = cert.result.as_ref().unwrap();
        // s = 2 copies in G(1), plus the two outer copies
        assert_eq!(result.graph.order(), (2 + 2) * 3);
        assert!(cert.uniqueness_verified);
        assert_eq!(cert.all_respect_uniformly, Some(true));
        assert_eq!(cert.strict, Some(true));
    }

    #[test]
    fn g_star_aborts_at_cap() {
        let (g, d0, _) = curated();
        let cert = build_g_star(&g, &d0, &bipartite(), 2, 2, 3, 8).unwrap();
        assert!(matches!(cert.outcome, BuildOutcome::OrderCapExceeded { .. }));
        assert!(!cert.stage_log.is_empty());
        assert!(cert.result.is_none());
    }

    #[test]
    fn respecting_decomposition_examples() {
        let c4 = Graph::cycle(4);
        let bip = Labeling::from_vecs(c4.clone(), &[vec![0, 2], vec![1, 3]]).unwrap();
        let p = bipartite();
        assert_eq!(respecting_decomposition(&c4, &bip, &p, 2, 3, 60).unwrap(), bip);
        let whole = Labeling::whole(c4.clone());
        let d = respecting_decomposition(&c4, &whole, &p, 2, 3, 60).unwrap();
        assert_eq!(d.part_count(), 2);
        let (g, d0, _) = curated();
        let d = respecting_decomposition(&g, &d0, &p, 2, 3, 60).unwrap();
        assert!(respects(&d, &d0).unwrap());
    }

    #[test]
    fn grouping_examples() {
        let c4 = Graph::cycle(4);
        let bip = Labeling::from_vecs(c4.clone(), &[vec![0, 2], vec![1, 3]]).unwrap();
        let e = Property::edgeless();
        let r = group_to_factor_partition(&c4, &bip, &[e.clone(), e.clone()]).unwrap();
        assert_eq!(r.labeling, bip);
        assert_eq!(r.grouping.groups, vec![vec![0], vec![1]]);
        let r = group_to_factor_partition(&c4, &bip, &[bipartite()]).unwrap();
        assert_eq!(r.labeling.parts(), &[c4.vertices()]);
        let (k2, _) = k2_d0();
        let r = group_to_factor_partition(&k2, &Labeling::whole(k2.clone()), &[e.clone(), e]).unwrap();
        assert_eq!(r.mode, GroupingMode::Refining);
        assert_eq!(r.grouping.groups, vec![vec![0, 1]]);
    }

    #[test]
    fn restricting_labelings_count() {
        let (k2, d0) = k2_d0();
        let el = StarJoin::of_graphs(&[k2.clone(), k2.clone(), k2]).element(0);
        let ls = labelings_restricting_to(&el, &d0);
        assert_eq!(ls.len(), 4);
        assert!(ls.iter().all(|l| (0..3).all(|i| restrict_to_copy(l, &el, i).same_unordered(&d0))));
    }
}
