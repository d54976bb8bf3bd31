//! Finite simple graphs stored as bit rows.
//!
//! A [`Graph`] keeps its concrete vertex labelling: equality and hashing are
//! labelled, so a [`crate::partition::Labeling`] can refer to actual
//! vertices. Isomorphism-invariant equality goes through
//! [`Graph::canonical_form`].

use std::fmt;

use canonical_form::Canonize;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest supported order; one `u64` row per vertex.
pub const MAX_ORDER: usize = 64;

/// A set of vertices of a graph of order at most [`MAX_ORDER`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    /// `{0, ..., n-1}`.
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub const fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub const fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub const fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::empty();
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&v) = members.iter().find(|&&v| v >= MAX_ORDER) {
            return Err(serde::de::Error::custom(format!("vertex {v} out of range")));
        }
        Ok(members.into_iter().collect())
    }
}

/// Iterator over the members of a [`VertexSet`].
#[derive(Clone, Debug)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// A finite simple graph on vertices `0..order`.
///
/// `rows[v]` is the neighbourhood of `v`. Rows are symmetric with empty
/// diagonal; every constructor maintains this.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    ///
    /// Panics if `n` exceeds [`MAX_ORDER`].
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "graph order {n} exceeds {MAX_ORDER}");
        Graph { rows: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        let all = VertexSet::full(n).bits();
        for (v, row) in g.rows.iter_mut().enumerate() {
            *row = all & !(1u64 << v);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0);
        g
    }

    pub fn complete_multipartite(sizes: &[usize]) -> Self {
        let parts: Vec<Graph> = sizes.iter().map(|&s| Graph::empty(s)).collect();
        Graph::join(&parts)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Graph::complete_multipartite(&[a, b])
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at vertex {u}");
        assert!(u < self.order() && v < self.order(), "edge ({u}, {v}) out of range");
        self.rows[u] |= 1u64 << v;
        self.rows[v] |= 1u64 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1u64 << v);
        self.rows[v] &= !(1u64 << u);
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.rows[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            for v in self.neighbors(u).iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Vertex pairs `(u, v)`, `u < v`, that are not edges.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.edge_count() == n * n.saturating_sub(1) / 2
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertices().bits();
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(v, r)| !r & all & !(1u64 << v))
            .collect();
        Graph { rows }
    }

    /// Subgraph induced by `set`, renumbered in increasing vertex order.
    pub fn induced(&self, set: VertexSet) -> Graph {
        let members = set.to_vec();
        let mut g = Graph::new(members.len());
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabels vertex `u` as `perm[u]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.order());
        let mut rows = vec![0u64; self.order()];
        for (u, &row) in self.rows.iter().enumerate() {
            rows[perm[u]] = VertexSet(row).iter().fold(0u64, |acc, v| acc | 1u64 << perm[v]);
        }
        Graph { rows }
    }

    /// Disjoint union; the parts occupy consecutive vertex ranges.
    pub fn disjoint_union(parts: &[Graph]) -> Graph {
        let total: usize = parts.iter().map(Graph::order).sum();
        let mut g = Graph::new(total);
        let mut offset = 0;
        for part in parts {
            for (u, v) in part.edges() {
                g.add_edge(offset + u, offset + v);
            }
            offset += part.order();
        }
        g
    }

    /// Join: the disjoint union plus every edge between distinct parts.
    pub fn join(parts: &[Graph]) -> Graph {
        let mut g = Graph::disjoint_union(parts);
        let blocks = block_ranges(parts);
        for (i, a) in blocks.iter().enumerate() {
            for b in &blocks[i + 1..] {
                for u in a.iter() {
                    g.rows[u] |= b.bits();
                }
                for v in b.iter() {
                    g.rows[v] |= a.bits();
                }
            }
        }
        g
    }

    /// `k` disjoint copies of `self`.
    pub fn copies(&self, k: usize) -> Graph {
        Graph::disjoint_union(&vec![self.clone(); k])
    }

    /// Connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::empty();
        let mut out = Vec::new();
        for start in 0..self.order() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::empty();
                for v in frontier.iter() {
                    next = next.union(self.neighbors(v));
                }
                frontier = next.difference(comp);
                comp = comp.union(frontier);
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn canonical_form(&self) -> CanonicalLabel {
        CanonicalLabel(self.canonical())
    }

    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        self.order() == other.order()
            && self.edge_count() == other.edge_count()
            && self.canonical_form() == other.canonical_form()
    }

    /// True if `pattern` is isomorphic to a (not necessarily induced)
    /// subgraph of `self`.
    pub fn contains_subgraph(&self, pattern: &Graph) -> bool {
        embeds(self, pattern, false)
    }

    /// True if `pattern` is isomorphic to an induced subgraph of `self`.
    pub fn contains_induced(&self, pattern: &Graph) -> bool {
        embeds(self, pattern, true)
    }
}

/// Consecutive vertex ranges occupied by `parts` in their disjoint union.
pub fn block_ranges(parts: &[Graph]) -> Vec<VertexSet> {
    let mut offset = 0;
    parts
        .iter()
        .map(|p| {
            let set = VertexSet::from_bits(VertexSet::full(p.order()).bits() << offset);
            offset += p.order();
            set
        })
        .collect()
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; {:?})", self.order(), self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::graph6::encode(self))
    }
}

impl Canonize for Graph {
    fn size(&self) -> usize {
        self.order()
    }

    fn apply_morphism(&self, p: &[usize]) -> Self {
        self.permute(p)
    }

    fn invariant_color(&self, u: usize) -> u64 {
        self.degree(u) as u64
    }

    fn invariant_neighborhood(&self, u: usize) -> impl Iterator<Item = (usize, u64)> {
        self.neighbors(u).iter().map(|v| (v, 0))
    }
}

/// Isomorphism-class identifier: the canonical representative of a graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalLabel(Graph);

impl CanonicalLabel {
    pub fn graph(&self) -> &Graph {
        &self.0
    }

    pub fn into_graph(self) -> Graph {
        self.0
    }
}

impl fmt::Debug for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalLabel({})", crate::graph6::encode(&self.0))
    }
}

pub fn complement(g: &Graph) -> Graph {
    g.complement()
}

pub fn join(parts: &[Graph]) -> Graph {
    Graph::join(parts)
}

pub fn disjoint_union(parts: &[Graph]) -> Graph {
    Graph::disjoint_union(parts)
}

pub fn canonical_form(g: &Graph) -> CanonicalLabel {
    g.canonical_form()
}

/// `host ⊇ pattern` up to isomorphism.
pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> bool {
    host.contains_subgraph(pattern)
}

/// `pattern ≤ host` (induced) up to isomorphism.
pub fn contains_induced(host: &Graph, pattern: &Graph) -> bool {
    host.contains_induced(pattern)
}

struct EmbedPlan {
    order: Vec<usize>,
    /// For position `i`: earlier positions adjacent / non-adjacent to it.
    earlier_adjacent: Vec<Vec<usize>>,
    earlier_nonadjacent: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

fn plan_embedding(pattern: &Graph) -> EmbedPlan {
    let n = pattern.order();
    let mut order = Vec::with_capacity(n);
    let mut placed = VertexSet::empty();
    while order.len() < n {
        // Most neighbours already placed, then highest degree, then lowest index.
        let next = pattern
            .vertices()
            .difference(placed)
            .iter()
            .max_by_key(|&v| {
                (
                    pattern.neighbors(v).intersection(placed).len(),
                    pattern.degree(v),
                    std::cmp::Reverse(v),
                )
            })
            .expect("unplaced vertex");
        placed.insert(next);
        order.push(next);
    }
    let mut earlier_adjacent = Vec::with_capacity(n);
    let mut earlier_nonadjacent = Vec::with_capacity(n);
    for (i, &v) in order.iter().enumerate() {
        let (adj, non): (Vec<usize>, Vec<usize>) =
            (0..i).partition(|&j| pattern.has_edge(v, order[j]));
        earlier_adjacent.push(adj);
        earlier_nonadjacent.push(non);
    }
    let degree = order.iter().map(|&v| pattern.degree(v)).collect();
    EmbedPlan { order, earlier_adjacent, earlier_nonadjacent, degree }
}

fn embeds(host: &Graph, pattern: &Graph, induced: bool) -> bool {
    if pattern.order() > host.order() || pattern.edge_count() > host.edge_count() {
        return false;
    }
    if pattern.order() == 0 {
        return true;
    }
    let plan = plan_embedding(pattern);
    let mut image = vec![0usize; pattern.order()];
    extend_embedding(host, &plan, induced, 0, VertexSet::empty(), &mut image)
}

fn extend_embedding(
    host: &Graph,
    plan: &EmbedPlan,
    induced: bool,
    pos: usize,
    used: VertexSet,
    image: &mut [usize],
) -> bool {
    if pos == plan.order.len() {
        return true;
    }
    let mut candidates = host.vertices().difference(used);
    for &j in &plan.earlier_adjacent[pos] {
        candidates = candidates.intersection(host.neighbors(image[j]));
    }
    if induced {
        for &j in &plan.earlier_nonadjacent[pos] {
            candidates = candidates.difference(host.neighbors(image[j]));
        }
    }
    for c in candidates.iter() {
        if host.degree(c) < plan.degree[pos] {
            continue;
        }
        image[pos] = c;
        if extend_embedding(host, plan, induced, pos + 1, used.with(c), image) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(3).complement(), Graph::empty(3));
        assert_eq!(Graph::new(1).complement(), Graph::new(1));
        let c4 = Graph::cycle(4);
        let two_k2 = Graph::disjoint_union(&[Graph::complete(2), Graph::complete(2)]);
        assert!(c4.complement().is_isomorphic(&two_k2));
        // direct edge-set check: 0-1-2-3-0 complements to {02, 13}
        assert_eq!(c4.complement().edges(), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn join_examples() {
        let k1 = Graph::complete(1);
        assert_eq!(Graph::join(&[k1.clone(), k1.clone()]), Graph::complete(2));
        let e2 = Graph::empty(2);
        assert!(Graph::join(&[e2.clone(), e2]).is_isomorphic(&Graph::cycle(4)));
        assert_eq!(Graph::join(&[Graph::complete(2), k1.clone(), k1]), Graph::complete(4));
    }

    #[test]
    fn disjoint_union_examples() {
        let k2 = Graph::complete(2);
        let u = Graph::disjoint_union(&[k2.clone(), k2.clone()]);
        assert_eq!(u.edges(), vec![(0, 1), (2, 3)]);
        let p4 = Graph::path(4);
        assert_eq!(Graph::disjoint_union(std::slice::from_ref(&p4)), p4);
        assert_eq!(Graph::disjoint_union(&vec![Graph::complete(1); 5]), Graph::empty(5));
        assert_eq!(Graph::disjoint_union(&[]).order(), 0);
    }

    #[test]
    fn canonical_form_examples() {
        assert_eq!(Graph::cycle(4).canonical_form(), Graph::complete_bipartite(2, 2).canonical_form());
        let p4 = Graph::path(4);
        assert_eq!(p4.canonical_form(), p4.complement().canonical_form());
        assert_ne!(Graph::complete(3).canonical_form(), Graph::path(3).canonical_form());
    }

    #[test]
    fn containment_examples() {
        assert!(Graph::cycle(4).contains_subgraph(&Graph::path(3)));
        assert!(!Graph::complete(4).contains_induced(&Graph::cycle(4)));
        assert!(Graph::complete(4).contains_subgraph(&Graph::cycle(4)));
        assert!(Graph::cycle(5).contains_induced(&Graph::path(4)));
        assert!(!Graph::cycle(5).contains_induced(&Graph::complete(3)));
        assert!(Graph::cycle(5).contains_induced(&Graph::new(0)));
        assert!(!Graph::path(3).contains_induced(&Graph::empty(3)));
        assert!(Graph::path(3).contains_subgraph(&Graph::empty(3)));
    }

    #[test]
    fn components_and_induced() {
        let g = Graph::from_edges(5, &[(0, 3), (3, 4), (1, 2)]);
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].to_vec(), vec![0, 3, 4]);
        assert_eq!(g.induced(comps[0]), Graph::path(3));
    }

    #[test]
    fn vertex_set_ops() {
        let a: VertexSet = [0, 2, 5].into_iter().collect();
        assert_eq!(a.len(), 3);
        assert!(a.contains(5) && !a.contains(1));
        assert_eq!(a.min(), Some(0));
        assert_eq!(format!("{a:?}"), "{0, 2, 5}");
        assert!(VertexSet::singleton(2).is_subset(a));
        assert_eq!(VertexSet::full(64).len(), 64);
    }
}
