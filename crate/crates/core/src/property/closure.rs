//! Bounded-order verification of closure flags.

use std::sync::OnceLock;

use dashmap::DashMap;
use serde::Serialize;

use super::Property;
use crate::certificate::{Certificate, Witness};
use crate::enumerate::enumerate_graphs;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosureFlag {
    Hereditary,
    InducedHereditary,
    Additive,
    Compositive,
}

impl ClosureFlag {
    pub const ALL: [ClosureFlag; 4] = [
        ClosureFlag::Hereditary,
        ClosureFlag::InducedHereditary,
        ClosureFlag::Additive,
        ClosureFlag::Compositive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosureFlag::Hereditary => "hereditary",
            ClosureFlag::InducedHereditary => "induced-hereditary",
            ClosureFlag::Additive => "additive",
            ClosureFlag::Compositive => "compositive",
        }
    }

    fn declared_in(self, p: &Property) -> bool {
        let f = p.declared_flags();
        match self {
            ClosureFlag::Hereditary => f.hereditary,
            ClosureFlag::InducedHereditary => f.induced_hereditary,
            ClosureFlag::Additive => f.additive,
            ClosureFlag::Compositive => f.compositive,
        }
    }
}

/// Outcome for one flag. `counterexample` holds the graphs that break the
/// closure condition: a member and a non-member obtained from it, or (for
/// compositivity) two members without a common member supergraph.
#[derive(Debug, Clone, Serialize)]
pub struct FlagCheck {
    pub flag: ClosureFlag,
    pub declared: bool,
    pub holds: bool,
    pub counterexample: Vec<Graph6Entry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Graph6Entry {
    pub role: &'static str,
    pub graph6: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureReport {
    pub property: String,
    pub bound: usize,
    pub checks: Vec<FlagCheck>,
}

impl ClosureReport {
    pub fn holds(&self, flag: ClosureFlag) -> bool {
        self.checks.iter().any(|c| c.flag == flag && c.holds)
    }

    /// Declared flags that the bounded check refuted.
    pub fn inconsistencies(&self) -> Vec<ClosureFlag> {
        self.checks.iter().filter(|c| c.declared && !c.holds).map(|c| c.flag).collect()
    }

    /// Errors unless every flag in `flags` was verified.
    pub fn require(&self, flags: &[ClosureFlag]) -> Result<()> {
        let missing: Vec<&str> =
            flags.iter().filter(|&&f| !self.holds(f)).map(|f| f.name()).collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "{} is not {} at order bound {}",
                self.property,
                missing.join(" and "),
                self.bound
            )))
        }
    }

    pub fn to_certificate(&self) -> Certificate {
        let mut cert = Certificate::new(
            "closure",
            format!("declared closure flags of {} hold on all graphs up to the bound", self.property),
            "closure under subgraphs, induced subgraphs, disjoint unions; compositivity",
            self.bound,
        );
        for check in &self.checks {
            cert.note(format!(
                "{}: declared={} observed={}",
                check.flag.name(),
                check.declared,
                if check.holds { "holds" } else { "fails" }
            ));
        }
        let bad: Vec<&FlagCheck> = self.checks.iter().filter(|c| c.declared && !c.holds).collect();
        if bad.is_empty() {
            cert.verify();
        } else {
            for check in bad {
                for entry in &check.counterexample {
                    let g = crate::graph6::decode(&entry.graph6).expect("self-encoded graph6");
                    cert.refute(Witness::graph(format!("{}: {}", check.flag.name(), entry.role), &g));
                }
            }
        }
        cert
    }
}

fn entry(role: &'static str, g: &Graph) -> Graph6Entry {
    Graph6Entry { role, graph6: crate::graph6::encode(g) }
}

/// Checks every closure flag on all members of order at most `bound`,
/// reporting declared versus observed status. Results are memoised per
/// property and bound.
pub fn check_closure(p: &Property, bound: usize, cap: usize) -> Result<ClosureReport> {
    static MEMO: OnceLock<DashMap<(String, usize), ClosureReport>> = OnceLock::new();
    let memo = MEMO.get_or_init(DashMap::new);
    if bound > cap {
        return Err(Error::OrderCapExceeded { order: bound, cap });
    }
    let key = (p.key().to_string(), bound);
    if let Some(hit) = memo.get(&key) {
        let mut report = hit.clone();
        for c in &mut report.checks {
            c.declared = c.flag.declared_in(p);
        }
        return Ok(report);
    }
    let mut members: Vec<Vec<Graph>> = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        members.push(enumerate_graphs(n, cap)?.iter().filter(|g| p.contains(g)).cloned().collect());
    }
    let checks = ClosureFlag::ALL
        .iter()
        .map(|&flag| {
            let counterexample = match flag {
                ClosureFlag::Hereditary => hereditary_counterexample(p, &members, false),
                ClosureFlag::InducedHereditary => hereditary_counterexample(p, &members, true),
                ClosureFlag::Additive => additive_counterexample(p, &members, bound),
                ClosureFlag::Compositive => compositive_counterexample(&members, bound),
            };
            FlagCheck {
                flag,
                declared: flag.declared_in(p),
                holds: counterexample.is_empty(),
                counterexample,
            }
        })
        .collect();
    let report = ClosureReport { property: p.to_string(), bound, checks };
    memo.insert(key, report.clone());
    Ok(report)
}

/// One-step deletions suffice because every order up to the bound is checked.
fn hereditary_counterexample(p: &Property, members: &[Vec<Graph>], induced_only: bool) -> Vec<Graph6Entry> {
    for level in members {
        for g in level {
            for v in 0..g.order() {
                let smaller = g.induced(g.vertices().difference(VertexSet::singleton(v)));
                if !p.contains(&smaller) {
                    return vec![entry("member", g), entry("non-member subgraph", &smaller)];
                }
            }
            if induced_only {
                continue;
            }
            for (u, v) in g.edges() {
                let mut smaller = g.clone();
                smaller.remove_edge(u, v);
                if !p.contains(&smaller) {
                    return vec![entry("member", g), entry("non-member subgraph", &smaller)];
                }
            }
        }
    }
    Vec::new()
}

fn additive_counterexample(p: &Property, members: &[Vec<Graph>], bound: usize) -> Vec<Graph6Entry> {
    for a in 1..=bound {
        for b in a..=bound - a {
            for g in &members[a] {
                for h in &members[b] {
                    let union = Graph::disjoint_union(&[g.clone(), h.clone()]);
                    if !p.contains(&union) {
                        return vec![entry("member", g), entry("member", h), entry("non-member union", &union)];
                    }
                }
            }
        }
    }
    Vec::new()
}

/// Pairs of members up to half the bound need a common member supergraph
/// of order at most the bound.
fn compositive_counterexample(members: &[Vec<Graph>], bound: usize) -> Vec<Graph6Entry> {
    let half = bound / 2;
    for a in 1..=half {
        for b in a..=half {
            for g in &members[a] {
                for h in &members[b] {
                    let found = (b..=bound).any(|n| {
                        members[n]
                            .iter()
                            .any(|s| s.contains_subgraph(g) && s.contains_subgraph(h))
                    });
                    if !found {
                        return vec![entry("member", g), entry("member", h)];
                    }
                }
            }
        }
    }
    Vec::new()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::DEFAULT_ORDER_CAP as CAP;
    use crate::property::Containment;

    #[test]
    fn edgeless_is_additive_hereditary() {
        let r = check_closure(&Property::edgeless(), 6, CAP).unwrap();
        assert!(r.holds(ClosureFlag::Hereditary));
        assert!(r.holds(ClosureFlag::Additive));
        assert!(r.holds(ClosureFlag::Compositive));
        assert!(r.to_certificate().is_verified());
    }

    #[test]
    fn subgraph_of_k3_is_compositive_not_additive() {
        let p = Property::subgraph_of(Graph::complete(3));
        let r = check_closure(&p, 6, CAP).unwrap();
        assert!(r.holds(ClosureFlag::Hereditary));
        assert!(!r.holds(ClosureFlag::Additive));
        assert!(r.holds(ClosureFlag::Compositive));
        assert!(r.inconsistencies().is_empty());
        assert!(r.require(&[ClosureFlag::Additive]).is_err());
    }

    #[test]
    fn generated_k2_induced_is_not_additive() {
        let p = Property::generated(vec![Graph::complete(2)], Containment::Induced).unwrap();
        let r = check_closure(&p, 4, CAP).unwrap();
        assert!(!r.holds(ClosureFlag::Additive));
        let add = r.checks.iter().find(|c| c.flag == ClosureFlag::Additive).unwrap();
        assert_eq!(add.counterexample.len(), 3);
    }

    #[test]
    fn false_declaration_is_refuted_with_witness() {
        let flags = crate::property::DeclaredFlags {
            hereditary: true,
            induced_hereditary: true,
            additive: true,
            compositive: false,
        };
        let p = Property::complete().with_flags(flags);
        let r = check_closure(&p, 4, CAP).unwrap();
        assert_eq!(r.inconsistencies(), vec![ClosureFlag::Hereditary, ClosureFlag::Additive]);
        let cert = r.to_certificate();
        assert!(cert.is_refuted());
        assert!(!cert.witnesses.is_empty());
    }
}
