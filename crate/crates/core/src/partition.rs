//! Ordered vertex partitions and the generalised colouring search.
//!
//! [`find_partition`] decides membership in a product `P₁ ∘ ⋯ ∘ Pₙ`: it
//! backtracks over vertices in descending-degree order (ties by lowest
//! index), trying parts in the order given, and rejects a partial
//! assignment as soon as a part leaves its property. The rejection is sound
//! because every expressible property is induced-hereditary.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::property::Property;

/// An ordered partition `(V₁, …, Vₙ)` of a host graph's vertices. Parts may
/// be empty unless the consumer says otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labeling {
    host: Graph,
    parts: Vec<VertexSet>,
}

impl Labeling {
    pub fn new(host: Graph, parts: Vec<VertexSet>) -> Result<Labeling> {
        let mut seen = VertexSet::empty();
        for p in &parts {
            if !p.is_disjoint(seen) {
                return Err(Error::StructureMismatch("labeling parts overlap".into()));
            }
            seen = seen.union(*p);
        }
        if seen != host.vertices() {
            return Err(Error::StructureMismatch(format!(
                "labeling parts cover {:?}, host has {} vertices",
                seen,
                host.order()
            )));
        }
        Ok(Labeling { host, parts })
    }

    pub fn from_vecs(host: Graph, parts: &[Vec<usize>]) -> Result<Labeling> {
        if let Some(&v) = parts.iter().flatten().find(|&&v| v >= host.order()) {
            return Err(Error::StructureMismatch(format!("vertex {v} is not in the host")));
        }
        let sets = parts.iter().map(|p| p.iter().copied().collect()).collect();
        Labeling::new(host, sets)
    }

    /// The one-part labeling `(V(G))`.
    pub fn whole(host: Graph) -> Labeling {
        let all = host.vertices();
        Labeling { host, parts: vec![all] }
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn all_parts_nonempty(&self) -> bool {
        self.parts.iter().all(|p| !p.is_empty())
    }

    /// Index of the part containing `v`.
    pub fn part_of(&self, v: usize) -> usize {
        self.parts.iter().position(|p| p.contains(v)).expect("labeling covers every vertex")
    }

    pub fn induced_parts(&self) -> Vec<Graph> {
        self.parts.iter().map(|&p| self.host.induced(p)).collect()
    }

    /// The nonempty parts as an unordered partition, in canonical order.
    pub fn unordered(&self) -> Vec<VertexSet> {
        let mut parts: Vec<VertexSet> = self.parts.iter().copied().filter(|p| !p.is_empty()).collect();
        parts.sort_by_key(|&p| VertexSet::min(p));
        parts
    }

    pub fn same_unordered(&self, other: &Labeling) -> bool {
        self.host == other.host && self.unordered() == other.unordered()
    }

    /// Restriction to `set`, renumbered as in [`Graph::induced`]. Parts keep
    /// their positions and may become empty.
    pub fn restrict(&self, set: VertexSet) -> Labeling {
        let index: Vec<usize> = set.to_vec();
        let parts = self
            .parts
            .iter()
            .map(|p| {
                index
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| p.contains(v))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Labeling { host: self.host.induced(set), parts }
    }

    /// Relabels the host by `perm` (vertex `u` becomes `perm[u]`).
    pub fn permute(&self, perm: &[usize]) -> Labeling {
        let parts = self.parts.iter().map(|p| p.iter().map(|v| perm[v]).collect()).collect();
        Labeling { host: self.host.permute(perm), parts }
    }

    pub fn to_vecs(&self) -> Vec<Vec<usize>> {
        self.parts.iter().map(|p| p.to_vec()).collect()
    }
}

impl Serialize for Labeling {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

fn search_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

/// A `(P₁, …, Pₙ)`-partition of `g`, or `None`. Empty parts are allowed.
pub fn find_partition(g: &Graph, props: &[Property]) -> Option<Labeling> {
    if props.is_empty() {
        return (g.order() == 0).then(|| Labeling { host: g.clone(), parts: Vec::new() });
    }
    let order = search_order(g);
    let mut parts = vec![VertexSet::empty(); props.len()];
    let empty_ok: Vec<bool> = props.iter().map(|p| p.contains(&Graph::new(0))).collect();
    if find_from(g, props, &order, 0, &mut parts, &empty_ok) {
        Some(Labeling { host: g.clone(), parts })
    } else {
        None
    }
}

fn find_from(
    g: &Graph,
    props: &[Property],
    order: &[usize],
    pos: usize,
    parts: &mut [VertexSet],
    empty_ok: &[bool],
) -> bool {
    let Some(&v) = order.get(pos) else {
        return parts.iter().zip(empty_ok).all(|(p, &ok)| ok || !p.is_empty());
    };
    for i in 0..props.len() {
        // Two empty parts with the same property are interchangeable.
        if parts[i].is_empty() && (0..i).any(|j| parts[j].is_empty() && props[j] == props[i]) {
            continue;
        }
        let candidate = parts[i].with(v);
        if props[i].contains(&g.induced(candidate)) {
            parts[i] = candidate;
            if find_from(g, props, order, pos + 1, parts, empty_ok) {
                return true;
            }
            parts[i].remove(v);
        }
    }
    false
}

/// Streams every ordered `(P₁, …, Pₙ)`-partition of a graph exactly once.
pub struct PartitionIter<'a> {
    graph: &'a Graph,
    props: &'a [Property],
    order: Vec<usize>,
    empty_ok: Vec<bool>,
    parts: Vec<VertexSet>,
    /// `choice[pos]` is the next part to try for the vertex at `pos`.
    choice: Vec<usize>,
    pos: usize,
    done: bool,
}

impl<'a> PartitionIter<'a> {
    fn new(graph: &'a Graph, props: &'a [Property]) -> Self {
        let order = search_order(graph);
        let n = order.len();
        PartitionIter {
            graph,
            props,
            empty_ok: props.iter().map(|p| p.contains(&Graph::new(0))).collect(),
            order,
            parts: vec![VertexSet::empty(); props.len()],
            choice: vec![0; n + 1],
            pos: 0,
            done: props.is_empty() && graph.order() > 0,
        }
    }

    fn unassign(&mut self, pos: usize) {
        let v = self.order[pos];
        let part = self.choice[pos] - 1;
        self.parts[part].remove(v);
    }
}

impl Iterator for PartitionIter<'_> {
    type Item = Labeling;

    fn next(&mut self) -> Option<Labeling> {
        if self.done {
            return None;
        }
        loop {
            if self.pos == self.order.len() {
                let out = self
                    .parts
                    .iter()
                    .zip(&self.empty_ok)
                    .all(|(p, &ok)| ok || !p.is_empty())
                    .then(|| Labeling { host: self.graph.clone(), parts: self.parts.clone() });
                // Backtrack from the leaf.
                if self.pos == 0 {
                    self.done = true;
                    return out;
                }
                self.pos -= 1;
                self.unassign(self.pos);
                if out.is_some() {
                    return out;
                }
                continue;
            }
            let v = self.order[self.pos];
            let mut advanced = false;
            while self.choice[self.pos] < self.props.len() {
                let i = self.choice[self.pos];
                self.choice[self.pos] += 1;
                let candidate = self.parts[i].with(v);
                if self.props[i].contains(&self.graph.induced(candidate)) {
                    self.parts[i] = candidate;
                    advanced = true;
                    break;
                }
            }
            if advanced {
                self.pos += 1;
                self.choice[self.pos] = 0;
            } else {
                if self.pos == 0 {
                    self.done = true;
                    return None;
                }
                self.pos -= 1;
                self.unassign(self.pos);
            }
        }
    }
}

/// All ordered `(P₁, …, Pₙ)`-partitions of `g`, streamed.
pub fn enumerate_partitions<'a>(g: &'a Graph, props: &'a [Property]) -> PartitionIter<'a> {
    PartitionIter::new(g, props)
}

/// Outcome of a unique-partitionability test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Uniqueness {
    /// Every partition induces this unordered partition.
    Unique(Labeling),
    /// Two partitions with different unordered shapes.
    NotUnique(Labeling, Labeling),
    NoPartition,
}

impl Uniqueness {
    pub fn is_unique(&self) -> bool {
        matches!(self, Uniqueness::Unique(_))
    }
}

/// True (as [`Uniqueness::Unique`]) iff all `(P₁, …, Pₙ)`-partitions of `g`
/// induce the same unordered partition of its vertices.
pub fn is_uniquely_partitionable(g: &Graph, props: &[Property]) -> Uniqueness {
    let mut iter = enumerate_partitions(g, props);
    let Some(first) = iter.next() else {
        return Uniqueness::NoPartition;
    };
    let shape = first.unordered();
    for other in iter {
        if other.unordered() != shape {
            return Uniqueness::NotUnique(first, other);
        }
    }
    Uniqueness::Unique(first)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_edgeless() -> Vec<Property> {
        vec![Property::edgeless(), Property::edgeless()]
    }

    #[test]
    fn find_examples() {
        let c4 = Graph::cycle(4);
        let l = find_partition(&c4, &two_edgeless()).unwrap();
        assert_eq!(l.unordered(), vec![VertexSet::from_bits(0b0101), VertexSet::from_bits(0b1010)]);
        assert!(find_partition(&Graph::complete(3), &two_edgeless()).is_none());
        let g = Graph::path(5);
        let whole = find_partition(&g, &[Property::universal()]).unwrap();
        assert_eq!(whole.parts(), &[g.vertices()]);
    }

    #[test]
    fn enumerate_examples() {
        let props = two_edgeless();
        assert_eq!(enumerate_partitions(&Graph::cycle(4), &props).count(), 2);
        assert_eq!(enumerate_partitions(&Graph::empty(2), &props).count(), 4);
        assert_eq!(enumerate_partitions(&Graph::complete(3), &props).count(), 0);
        assert_eq!(enumerate_partitions(&Graph::new(0), &props).count(), 1);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let props = vec![Property::edgeless(), Property::max_degree(1), Property::edgeless()];
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]);
        let mut brute = 0;
        for code in 0..3usize.pow(5) {
            let mut parts = [VertexSet::empty(); 3];
            let mut c = code;
            for v in 0..5 {
                parts[c % 3].insert(v);
                c /= 3;
            }
            if parts.iter().zip(&props).all(|(p, prop)| prop.contains(&g.induced(*p))) {
                brute += 1;
            }
        }
        assert_eq!(enumerate_partitions(&g, &props).count(), brute);
    }

    #[test]
    fn uniqueness_examples() {
        let props = two_edgeless();
        assert!(is_uniquely_partitionable(&Graph::cycle(4), &props).is_unique());
        let two_k2 = Graph::disjoint_union(&[Graph::complete(2), Graph::complete(2)]);
        assert!(matches!(is_uniquely_partitionable(&two_k2, &props), Uniqueness::NotUnique(..)));
        assert!(is_uniquely_partitionable(&Graph::complete(2), &props).is_unique());
        assert_eq!(is_uniquely_partitionable(&Graph::complete(3), &props), Uniqueness::NoPartition);
    }

    #[test]
    fn labeling_validation_and_restriction() {
        let g = Graph::cycle(4);
        assert!(Labeling::from_vecs(g.clone(), &[vec![0, 1], vec![1, 2, 3]]).is_err());
        assert!(Labeling::from_vecs(g.clone(), &[vec![0, 1]]).is_err());
        assert!(Labeling::from_vecs(g.clone(), &[vec![0, 9], vec![1, 2, 3]]).is_err());
        let l = Labeling::from_vecs(g, &[vec![0, 2], vec![1, 3]]).unwrap();
        let r = l.restrict(VertexSet::from_bits(0b0111));
        assert_eq!(r.to_vecs(), vec![vec![0, 2], vec![1]]);
        assert_eq!(serde_json::to_string(&l).unwrap(), "[[0,2],[1,3]]");
    }
}
