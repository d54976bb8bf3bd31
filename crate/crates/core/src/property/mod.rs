//! Evaluable graph properties.
//!
//! A [`Property`] is an expression tree over builtin predicates, forbidden
//! and generating graph lists, and products (generalised colourings). All
//! expressible properties are closed under induced subgraphs; which of them
//! are also subgraph-closed, additive or compositive is tracked structurally
//! and can be checked at bounded order with [`check_closure`].

mod closure;
mod file;

use std::fmt;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::enumerate::enumerate_graphs;
use crate::error::{Error, Result};
use crate::graph::{CanonicalLabel, Graph, VertexSet};
use crate::graph6;
use crate::partition;

pub use closure::{check_closure, ClosureFlag, ClosureReport, FlagCheck};
pub use file::PropertySpec;

/// Containment relation used by generated properties and supergraph filters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Containment {
    /// `G ⊆ H`: closed under taking subgraphs.
    Subgraph,
    /// `G ≤ H`: closed under taking induced subgraphs.
    Induced,
}

impl Containment {
    pub fn contains(self, host: &Graph, pattern: &Graph) -> bool {
        match self {
            Containment::Subgraph => host.contains_subgraph(pattern),
            Containment::Induced => host.contains_induced(pattern),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Expr {
    Edgeless,
    KColorable(usize),
    MaxDegree(usize),
    Forest,
    Complete,
    SubgraphOf(Graph),
    ForbiddenSubgraphs(Vec<Graph>),
    ForbiddenInduced(Vec<Graph>),
    Generated { seeds: Vec<Graph>, mode: Containment },
    Product(Vec<Property>),
}

/// Closure flags a property is declared to have.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct DeclaredFlags {
    pub hereditary: bool,
    pub induced_hereditary: bool,
    pub additive: bool,
    pub compositive: bool,
}

struct Inner {
    expr: Expr,
    flags: DeclaredFlags,
    key: Arc<str>,
}

/// An isomorphism-closed set of graphs given by an expression.
///
/// Cloning is cheap. Two properties with the same structural key share
/// membership memo entries.
#[derive(Clone)]
pub struct Property(Arc<Inner>);

impl Property {
    fn build(expr: Expr) -> Property {
        let key: Arc<str> = render_key(&expr).into();
        let mut p = Property(Arc::new(Inner { expr, flags: DeclaredFlags::default(), key }));
        let flags = p.structural_flags();
        Arc::get_mut(&mut p.0).expect("fresh property").flags = flags;
        p
    }

    pub fn edgeless() -> Property {
        Property::build(Expr::Edgeless)
    }

    pub fn k_colorable(k: usize) -> Property {
        Property::build(Expr::KColorable(k))
    }

    pub fn max_degree(d: usize) -> Property {
        Property::build(Expr::MaxDegree(d))
    }

    pub fn forest() -> Property {
        Property::build(Expr::Forest)
    }

    pub fn complete() -> Property {
        Property::build(Expr::Complete)
    }

    pub fn subgraph_of(s: Graph) -> Property {
        Property::build(Expr::SubgraphOf(s))
    }

    pub fn forbidden_subgraphs(list: Vec<Graph>) -> Property {
        Property::build(Expr::ForbiddenSubgraphs(list))
    }

    pub fn forbidden_induced(list: Vec<Graph>) -> Property {
        Property::build(Expr::ForbiddenInduced(list))
    }

    /// The property of all graphs (nothing forbidden).
    pub fn universal() -> Property {
        Property::forbidden_induced(Vec::new())
    }

    /// `[seeds]` (subgraph mode) or `⟨seeds⟩` (induced mode).
    pub fn generated(seeds: Vec<Graph>, mode: Containment) -> Result<Property> {
        if seeds.is_empty() {
            return Err(Error::Precondition("a generated property needs at least one seed".into()));
        }
        Ok(Property::build(Expr::Generated { seeds, mode }))
    }

    pub fn product(factors: Vec<Property>) -> Property {
        Property::build(Expr::Product(factors))
    }

    /// Replaces the declared flags (which default to the structural ones).
    pub fn with_flags(self, flags: DeclaredFlags) -> Property {
        let inner = &self.0;
        Property(Arc::new(Inner { expr: inner.expr.clone(), flags, key: inner.key.clone() }))
    }

    pub fn expr(&self) -> &Expr {
        &self.0.expr
    }

    pub fn declared_flags(&self) -> DeclaredFlags {
        self.0.flags
    }

    /// Structural identity used for memoisation and display.
    pub fn key(&self) -> &str {
        &self.0.key
    }

    pub fn factors(&self) -> Option<&[Property]> {
        match &self.0.expr {
            Expr::Product(f) => Some(f),
            _ => None,
        }
    }

    /// Closed under subgraphs, as a fact about the expression.
    pub fn is_structurally_hereditary(&self) -> bool {
        match &self.0.expr {
            Expr::Edgeless
            | Expr::KColorable(_)
            | Expr::MaxDegree(_)
            | Expr::Forest
            | Expr::SubgraphOf(_)
            | Expr::ForbiddenSubgraphs(_) => true,
            Expr::Generated { mode, .. } => *mode == Containment::Subgraph,
            Expr::Complete | Expr::ForbiddenInduced(_) => false,
            Expr::Product(f) => f.iter().all(Property::is_structurally_hereditary),
        }
    }

    /// Closed under disjoint unions, as a fact about the expression.
    pub fn is_structurally_additive(&self) -> bool {
        match &self.0.expr {
            Expr::Edgeless | Expr::KColorable(_) | Expr::MaxDegree(_) | Expr::Forest => true,
            Expr::ForbiddenSubgraphs(list) | Expr::ForbiddenInduced(list) => {
                list.iter().all(Graph::is_connected)
            }
            Expr::Complete | Expr::SubgraphOf(_) | Expr::Generated { .. } => false,
            Expr::Product(f) => f.iter().all(Property::is_structurally_additive),
        }
    }

    fn structural_flags(&self) -> DeclaredFlags {
        let hereditary = self.is_structurally_hereditary();
        let additive = self.is_structurally_additive();
        let compositive = hereditary
            && (additive
                || match &self.0.expr {
                    Expr::SubgraphOf(_) => true,
                    Expr::Generated { seeds, .. } => seeds.len() == 1,
                    _ => false,
                });
        DeclaredFlags { hereditary, induced_hereditary: true, additive, compositive }
    }

    /// An order `w` such that every non-member has an induced non-member on
    /// at most `w` vertices, when one is known.
    pub fn witness_order_bound(&self) -> Option<usize> {
        match &self.0.expr {
            Expr::Edgeless | Expr::Complete => Some(2),
            Expr::MaxDegree(d) => Some(d + 2),
            Expr::SubgraphOf(s) => Some(s.order() + 1),
            Expr::ForbiddenSubgraphs(list) | Expr::ForbiddenInduced(list) => {
                Some(list.iter().map(Graph::order).max().unwrap_or(0))
            }
            Expr::Generated { seeds, .. } => {
                Some(seeds.iter().map(Graph::order).max().unwrap_or(0) + 1)
            }
            Expr::KColorable(_) | Expr::Forest | Expr::Product(_) => None,
        }
    }

    /// Membership test `G ∈ P`.
    pub fn contains(&self, g: &Graph) -> bool {
        match &self.0.expr {
            Expr::Edgeless => g.edge_count() == 0,
            Expr::KColorable(k) => is_k_colorable(g, *k),
            Expr::MaxDegree(d) => g.max_degree() <= *d,
            Expr::Forest => g.edge_count() + g.components().len() == g.order(),
            Expr::Complete => g.is_complete(),
            Expr::SubgraphOf(s) => s.contains_subgraph(g),
            Expr::ForbiddenSubgraphs(list) => !list.iter().any(|f| g.contains_subgraph(f)),
            Expr::ForbiddenInduced(list) => !list.iter().any(|f| g.contains_induced(f)),
            Expr::Generated { seeds, mode } => seeds.iter().any(|s| mode.contains(s, g)),
            Expr::Product(factors) => self.product_contains(factors, g),
        }
    }

    fn product_contains(&self, factors: &[Property], g: &Graph) -> bool {
        if g.order() <= 1 || g.order() > MEMO_ORDER_LIMIT {
            return partition::find_partition(g, factors).is_some();
        }
        let key = (self.0.key.clone(), g.canonical_form());
        if let Some(hit) = membership_memo().get(&key) {
            return *hit;
        }
        let found = partition::find_partition(g, factors).is_some();
        membership_memo().insert(key, found);
        found
    }

    /// True if `K₁ ∈ P` and some graph of order at most `bound` is not.
    pub fn is_nontrivial_at(&self, bound: usize, cap: usize) -> Result<bool> {
        if !self.contains(&Graph::new(1)) {
            return Ok(false);
        }
        for n in 0..=bound {
            if enumerate_graphs(n, cap)?.iter().any(|g| !self.contains(g)) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Errors with [`Error::TrivialFactor`] unless nontrivial at `bound`.
    pub fn require_nontrivial(&self, bound: usize, cap: usize) -> Result<()> {
        if self.is_nontrivial_at(bound, cap)? {
            Ok(())
        } else {
            Err(Error::TrivialFactor(format!("{self} at order bound {bound}")))
        }
    }

    /// `c(P) = max{k : K_k ∈ P}`.
    pub fn completeness(&self, cap: usize) -> Result<usize> {
        if let Some(c) = completeness_memo().get(self.key()) {
            return Ok(*c);
        }
        let mut k = 0;
        while self.contains(&Graph::complete(k + 1)) {
            k += 1;
            if k >= cap {
                return Err(Error::CompletenessExceedsCap { property: self.to_string(), cap });
            }
        }
        completeness_memo().insert(self.0.key.clone(), k);
        Ok(k)
    }

    /// `f(P)`: the smallest order of a non-member.
    pub fn min_forbidden_order(&self, cap: usize) -> Result<usize> {
        if let Some(f) = forbidden_order_memo().get(self.key()) {
            return Ok(*f);
        }
        for n in 0..=cap {
            if enumerate_graphs(n, cap)?.iter().any(|g| !self.contains(g)) {
                forbidden_order_memo().insert(self.0.key.clone(), n);
                return Ok(n);
            }
        }
        Err(Error::NoNonMember { property: self.to_string(), cap })
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.key)
    }
}

impl fmt::Debug for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Property({})", self.0.key)
    }
}

impl PartialEq for Property {
    /// Structural equality of expressions, not set equality.
    fn eq(&self, other: &Self) -> bool {
        self.0.key == other.0.key
    }
}

impl Eq for Property {}

fn render_key(expr: &Expr) -> String {
    let graphs = |list: &[Graph]| -> String {
        let mut codes: Vec<String> =
            list.iter().map(|g| graph6::encode(g.canonical_form().graph())).collect();
        codes.sort();
        codes.join(",")
    };
    match expr {
        Expr::Edgeless => "edgeless".into(),
        Expr::KColorable(k) => format!("kcolorable({k})"),
        Expr::MaxDegree(d) => format!("maxdegree({d})"),
        Expr::Forest => "forest".into(),
        Expr::Complete => "complete".into(),
        Expr::SubgraphOf(s) => format!("subgraphof({})", graphs(std::slice::from_ref(s))),
        Expr::ForbiddenSubgraphs(list) => format!("forbidden({})", graphs(list)),
        Expr::ForbiddenInduced(list) => format!("forbidden_induced({})", graphs(list)),
        Expr::Generated { seeds, mode } => {
            let m = match mode {
                Containment::Subgraph => "subgraph",
                Containment::Induced => "induced",
            };
            format!("generated[{m}]({})", graphs(seeds))
        }
        Expr::Product(f) => {
            let parts: Vec<&str> = f.iter().map(Property::key).collect();
            format!("product({})", parts.join(", "))
        }
    }
}

type MemoKey = (Arc<str>, CanonicalLabel);

fn membership_memo() -> &'static DashMap<MemoKey, bool> {
    static MEMO: OnceLock<DashMap<MemoKey, bool>> = OnceLock::new();
    MEMO.get_or_init(DashMap::new)
}

/// Larger graphs are rarely seen twice; canonical labelling would cost
/// more than the search it saves.
const MEMO_ORDER_LIMIT: usize = 16;

fn completeness_memo() -> &'static DashMap<Arc<str>, usize> {
    static MEMO: OnceLock<DashMap<Arc<str>, usize>> = OnceLock::new();
    MEMO.get_or_init(DashMap::new)
}

fn forbidden_order_memo() -> &'static DashMap<Arc<str>, usize> {
    static MEMO: OnceLock<DashMap<Arc<str>, usize>> = OnceLock::new();
    MEMO.get_or_init(DashMap::new)
}

fn is_k_colorable(g: &Graph, k: usize) -> bool {
    let n = g.order();
    if n == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    if k >= n {
        return true;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut classes = vec![VertexSet::empty(); k];
    color_from(g, &order, 0, &mut classes, 0)
}

fn color_from(g: &Graph, order: &[usize], pos: usize, classes: &mut [VertexSet], used: usize) -> bool {
    let Some(&v) = order.get(pos) else {
        return true;
    };
    // Colours beyond the first unused one are interchangeable.
    let limit = (used + 1).min(classes.len());
    for c in 0..limit {
        if g.neighbors(v).is_disjoint(classes[c]) {
            classes[c].insert(v);
            if color_from(g, order, pos + 1, classes, used.max(c + 1)) {
                return true;
            }
            classes[c].remove(v);
        }
    }
    false
}

/// `[seeds]` or `⟨seeds⟩` depending on `mode`.
pub fn generated_property(seeds: Vec<Graph>, mode: Containment) -> Result<Property> {
    Property::generated(seeds, mode)
}

/// Members of `set` containing every pin under `mode`.
pub fn filter_by_supergraph(set: &[Graph], pins: &[Graph], mode: Containment) -> Vec<Graph> {
    set.iter()
        .filter(|g| pins.iter().all(|h| mode.contains(g, h)))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::DEFAULT_ORDER_CAP as CAP;

    fn bipartite() -> Property {
        Property::product(vec![Property::edgeless(), Property::edgeless()])
    }

    #[test]
    fn member_examples() {
        assert!(Property::edgeless().contains(&Graph::empty(3)));
        assert!(!Property::k_colorable(2).contains(&Graph::cycle(5)));
        assert!(bipartite().contains(&Graph::cycle(4)));
        assert!(!bipartite().contains(&Graph::cycle(5)));
        assert!(Property::forest().contains(&Graph::path(5)));
        assert!(!Property::forest().contains(&Graph::cycle(3)));
        assert!(Property::complete().contains(&Graph::complete(4)));
        assert!(!Property::complete().contains(&Graph::empty(2)));
    }

    #[test]
    fn completeness_examples() {
        assert_eq!(Property::edgeless().completeness(CAP).unwrap(), 1);
        assert_eq!(bipartite().completeness(CAP).unwrap(), 2);
        assert_eq!(Property::max_degree(2).completeness(CAP).unwrap(), 3);
        assert!(matches!(
            Property::complete().completeness(CAP),
            Err(Error::CompletenessExceedsCap { .. })
        ));
    }

    #[test]
    fn min_forbidden_order_examples() {
        assert_eq!(Property::edgeless().min_forbidden_order(CAP).unwrap(), 2);
        assert_eq!(Property::k_colorable(2).min_forbidden_order(CAP).unwrap(), 3);
        let p4_free = Property::forbidden_induced(vec![Graph::path(4)]);
        assert_eq!(p4_free.min_forbidden_order(CAP).unwrap(), 4);
        assert!(matches!(
            Property::universal().min_forbidden_order(5),
            Err(Error::NoNonMember { .. })
        ));
    }

    #[test]
    fn generated_examples() {
        let k3 = Property::generated(vec![Graph::complete(3)], Containment::Subgraph).unwrap();
        assert!(k3.contains(&Graph::path(3)));
        assert!(k3.contains(&Graph::empty(2)));
        assert!(!k3.contains(&Graph::cycle(4)));
        let c5 = Property::generated(vec![Graph::cycle(5)], Containment::Induced).unwrap();
        assert!(c5.contains(&Graph::path(4)));
        assert!(!c5.contains(&Graph::complete(3)));
        for mode in [Containment::Subgraph, Containment::Induced] {
            let k1 = Property::generated(vec![Graph::new(1)], mode).unwrap();
            assert!(k1.contains(&Graph::new(1)));
            assert!(!k1.contains(&Graph::new(2)));
            assert!(!k1.contains(&Graph::complete(2)));
        }
        assert!(Property::generated(vec![], Containment::Induced).is_err());
    }

    #[test]
    fn filter_examples() {
        let set = vec![Graph::complete(2), Graph::complete(3), Graph::empty(2)];
        let kept = filter_by_supergraph(&set, &[Graph::complete(2)], Containment::Subgraph);
        assert_eq!(kept, vec![Graph::complete(2), Graph::complete(3)]);
        assert_eq!(filter_by_supergraph(&set, &[Graph::new(1)], Containment::Induced), set);
        assert!(filter_by_supergraph(&[Graph::cycle(4)], &[Graph::complete(3)], Containment::Subgraph)
            .is_empty());
        let pinned = filter_by_supergraph(
            &[Graph::cycle(4), Graph::path(4)],
            &[Graph::path(3), Graph::empty(2)],
            Containment::Induced,
        );
        assert_eq!(pinned.len(), 2);
    }

    #[test]
    fn keys_ignore_graph_labelling() {
        let a = Property::forbidden_induced(vec![Graph::from_edges(3, &[(0, 1), (1, 2)])]);
        let b = Property::forbidden_induced(vec![Graph::from_edges(3, &[(0, 2), (2, 1)])]);
        assert_eq!(a, b);
        assert_eq!(bipartite().key(), "product(edgeless, edgeless)");
    }

    #[test]
    fn structural_flags() {
        assert!(bipartite().is_structurally_hereditary());
        assert!(bipartite().is_structurally_additive());
        let s = Property::subgraph_of(Graph::complete(3));
        let f = s.declared_flags();
        assert!(f.hereditary && f.compositive && !f.additive);
        assert!(!Property::complete().is_structurally_hereditary());
        let disconnected = Property::forbidden_induced(vec![Graph::empty(2)]);
        assert!(!disconnected.is_structurally_additive());
    }

    #[test]
    fn nontriviality() {
        assert!(Property::edgeless().is_nontrivial_at(3, CAP).unwrap());
        assert!(!Property::universal().is_nontrivial_at(5, CAP).unwrap());
        assert!(Property::universal().require_nontrivial(5, CAP).is_err());
        assert!(!Property::k_colorable(0).is_nontrivial_at(3, CAP).unwrap());
    }
}
