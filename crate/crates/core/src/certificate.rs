//! Bounded-order verification records.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::graph::Graph;
use crate::graph6;
use crate::partition::Labeling;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    VerifiedAtBound,
    Refuted,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::VerifiedAtBound => "verified-at-bound",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphRecord {
    pub graph6: String,
    pub order: usize,
}

impl From<&Graph> for GraphRecord {
    fn from(g: &Graph) -> Self {
        GraphRecord { graph6: graph6::encode(g), order: g.order() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub role: String,
    pub graph: GraphRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<Vec<usize>>>,
}

impl Witness {
    pub fn graph(role: impl Into<String>, g: &Graph) -> Self {
        Witness { role: role.into(), graph: g.into(), parts: None }
    }

    pub fn labeling(role: impl Into<String>, l: &Labeling) -> Self {
        Witness {
            role: role.into(),
            graph: l.host().into(),
            parts: Some(l.parts().iter().map(|p| p.to_vec()).collect()),
        }
    }
}

/// Which side of the true value a bounded estimate can err on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateDirection {
    /// A minimum over the graphs seen so far; more graphs can only lower it.
    UpperBound,
    LowerBound,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Estimate {
    pub quantity: String,
    pub value: usize,
    pub direction: EstimateDirection,
}

/// A machine-checked verdict on a claim, restricted to graphs of order at
/// most `bound`.
///
/// A refuted certificate always carries at least one witness; the
/// constructors for refutation require one.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub claim: String,
    pub statement: String,
    pub anchor: String,
    pub bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<Estimate>,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Wall-clock time; kept out of serialized reports so they stay
    /// byte-identical across runs.
    #[serde(skip)]
    pub runtime: Duration,
}

impl Certificate {
    pub fn new(
        claim: impl Into<String>,
        statement: impl Into<String>,
        anchor: impl Into<String>,
        bound: usize,
    ) -> Self {
        Certificate {
            claim: claim.into(),
            statement: statement.into(),
            anchor: anchor.into(),
            bound,
            k_max: None,
            verdict: Verdict::Inconclusive,
            estimate: None,
            witnesses: Vec::new(),
            notes: Vec::new(),
            runtime: Duration::ZERO,
        }
    }

    pub fn with_k_max(mut self, k_max: usize) -> Self {
        self.k_max = Some(k_max);
        self
    }

    pub fn verify(&mut self) {
        self.verdict = Verdict::VerifiedAtBound;
    }

    pub fn refute(&mut self, witness: Witness) {
        self.witnesses.push(witness);
        self.verdict = Verdict::Refuted;
    }

    pub fn refute_with_graph(&mut self, role: impl Into<String>, g: &Graph) {
        self.refute(Witness::graph(role, g));
    }

    pub fn refute_with_labeling(&mut self, role: impl Into<String>, l: &Labeling) {
        self.refute(Witness::labeling(role, l));
    }

    pub fn mark_inconclusive(&mut self, note: impl Into<String>) {
        self.verdict = Verdict::Inconclusive;
        self.notes.push(note.into());
    }

    pub fn witness(&mut self, w: Witness) {
        self.witnesses.push(w);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::VerifiedAtBound
    }

    pub fn is_refuted(&self) -> bool {
        self.verdict == Verdict::Refuted
    }

    /// Runs `f` and records its wall-clock time on the returned certificate.
    pub fn timed<E>(f: impl FnOnce() -> Result<Certificate, E>) -> Result<Certificate, E> {
        let start = Instant::now();
        let mut cert = f()?;
        cert.runtime = start.elapsed();
        Ok(cert)
    }
}
