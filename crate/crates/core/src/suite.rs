//! The standard verification suite: a fixed list of claims checked at the
//! configured bounds, with a deterministic report.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{Certificate, Verdict};
use crate::config::RunConfig;
use crate::decomposition::ind_parts;
use crate::enumerate::graphs_up_to;
use crate::error::Result;
use crate::graph::Graph;
use crate::partition::Labeling;
use crate::property::Property;
use crate::verify::{self, catalog_properties};

/// Bound for the decomposability-number checks, which grow fastest.
const DEC_BOUND: usize = 5;
/// Bound for the supergraph-inheritance check.
const INHERIT_BOUND: usize = 4;
/// Combined completeness limit for the additivity check.
const COMPLETENESS_SUM: usize = 5;

#[derive(Debug, Clone, Serialize)]
pub struct ClaimError {
    pub message: String,
    pub resource_limit: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimResult {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ClaimError>,
}

impl ClaimResult {
    fn from_result(id: String, r: Result<Certificate>) -> Self {
        match r {
            Ok(c) => ClaimResult { id, certificate: Some(c), error: None },
            Err(e) => ClaimResult {
                id,
                certificate: None,
                error: Some(ClaimError { resource_limit: e.is_resource_limit(), message: e.to_string() }),
            },
        }
    }

    pub fn verdict(&self) -> Option<Verdict> {
        self.certificate.as_ref().map(|c| c.verdict)
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub verified: usize,
    pub refuted: usize,
    pub inconclusive: usize,
    pub errors: usize,
    pub resource_limits: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: String,
    pub config: RunConfig,
    pub claims: Vec<ClaimResult>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn claim(&self, id: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let width = self.claims.iter().map(|c| c.id.len()).max().unwrap_or(0).max(5);
        let mut out = String::new();
        let _ = writeln!(out, "{:<width$}  {:<18}  {:>5}  statement", "claim", "verdict", "bound");
        for c in &self.claims {
            let (verdict, bound, text) = match (&c.certificate, &c.error) {
                (Some(cert), _) => (cert.verdict.as_str().to_string(), cert.bound.to_string(), cert.statement.clone()),
                (None, Some(e)) => ("error".to_string(), "-".to_string(), e.message.clone()),
                (None, None) => unreachable!("claim without result"),
            };
            let _ = writeln!(out, "{:<width$}  {verdict:<18}  {bound:>5}  {text}", c.id);
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "\n{} verified, {} refuted, {} inconclusive, {} errors ({} resource limits)",
            s.verified, s.refuted, s.inconclusive, s.errors, s.resource_limits
        );
        out
    }
}

type Claim = (String, Box<dyn Fn() -> Result<Certificate> + Send + Sync>);

fn claim(id: impl Into<String>, f: impl Fn() -> Result<Certificate> + Send + Sync + 'static) -> Claim {
    (id.into(), Box::new(f))
}

fn e() -> Property {
    Property::edgeless()
}

fn bipartite() -> Property {
    Property::product(vec![e(), e()])
}

/// Triples `(A, B, C)` for the cancellation check.
pub fn cancellation_triples() -> Vec<(Property, Property, Property)> {
    let k = Property::k_colorable;
    let md = Property::max_degree;
    vec![
        (e(), e(), e()),
        (e(), k(2), bipartite()),
        (e(), e(), md(1)),
        (e(), md(1), md(1)),
        (e(), md(1), md(2)),
        (md(1), e(), e()),
        (md(1), e(), md(1)),
        (k(2), e(), e()),
        (k(2), e(), k(2)),
        (Property::forest(), e(), e()),
        (Property::forest(), e(), Property::forest()),
        (e(), Property::forest(), k(2)),
        (md(1), md(1), md(2)),
        (e(), Property::forbidden_induced(vec![Graph::path(3)]), md(1)),
    ]
}

/// Properties with catalog factorisations, each paired with its candidates.
pub fn uft_cases() -> Vec<(&'static str, Property, Vec<Vec<Property>>)> {
    let k = Property::k_colorable;
    let md1 = Property::max_degree(1);
    vec![
        ("2-colorable", k(2), vec![vec![e(), e()], vec![k(2)]]),
        ("3-colorable", k(3), vec![vec![e(), e(), e()], vec![e(), k(2)], vec![k(2), e()]]),
        (
            "edgeless-matching",
            Property::product(vec![e(), md1.clone()]),
            vec![vec![e(), md1.clone()], vec![md1, e()]],
        ),
    ]
}

/// `K₂ ∪ K₁` with two bipartitions, the second not respecting the first.
pub fn construction_two_instance() -> (Graph, Labeling, Labeling) {
    let g = Graph::from_edges(3, &[(0, 1)]);
    let d0 = Labeling::from_vecs(g.clone(), &[vec![0, 2], vec![1]]).expect("valid labeling");
    let dt = Labeling::from_vecs(g.clone(), &[vec![0], vec![1, 2]]).expect("valid labeling");
    (g, d0, dt)
}

fn ind_parts_join_check(bound: usize, cap: usize) -> Result<Certificate> {
    let mut cert = Certificate::new(
        "indparts",
        format!("every graph of order at most {bound} is the join of its ind-parts"),
        "unique decomposition into indecomposable join factors",
        bound,
    );
    let graphs = graphs_up_to(bound, cap)?;
    let bad = graphs.par_iter().find_first(|g| {
        let d = ind_parts(g);
        !Graph::join(&d.parts).is_isomorphic(g) || d.parts.iter().any(|p| p.order() > 1 && !p.complement().is_connected())
    });
    match bad {
        Some(g) => cert.refute_with_graph("graph not recovered from its ind-parts", g),
        None => {
            cert.note(format!("{} graphs", graphs.len()));
            cert.verify();
        }
    }
    Ok(cert)
}

fn claims(cfg: &RunConfig) -> Vec<Claim> {
    let (b, k, kc, cap, ccap) = (cfg.bound, cfg.k_max, cfg.k_cap, cfg.order_cap, cfg.construction_cap);
    let dec_b = b.min(DEC_BOUND);
    let mut out = vec![
        claim("indparts", move || ind_parts_join_check(b, cap)),
        claim("maximal-joins", move || verify::max_char_check(&[e(), e()], b, cap)),
        claim("supergraph-dc", move || verify::gen0_check(&bipartite(), dec_b, cap)),
        claim("completeness", move || verify::completeness_additivity_check(&catalog_properties(), COMPLETENESS_SUM, cap)),
    ];
    for (name, p) in verify::builtin_catalog() {
        out.push(claim(format!("strict-supergraphs/{name}"), move || verify::ind_her_2_check(&p, dec_b, k, cap)));
    }
    out.push(claim("inherited-decomposition/bipartite", move || verify::ind_her_6_check(&bipartite(), b.min(INHERIT_BOUND), k, cap)));
    let k2 = Graph::complete(2);
    let bip_d0 = Labeling::from_vecs(k2.clone(), &[vec![0], vec![1]]).expect("valid labeling");
    {
        let (g, d0) = (k2.clone(), bip_d0.clone());
        out.push(claim("construction1", move || verify::construction_one_check(&g, &d0, &bipartite(), k, b)));
    }
    {
        let (g, d0, dt) = construction_two_instance();
        out.push(claim("construction2", move || verify::construction_two_check(&g, &d0, &dt, &bipartite(), k, kc, b)));
    }
    out.push(claim("unique-super/k2", move || verify::unique_super_check(&k2, &bip_d0, &bipartite(), k, kc, ccap)));
    {
        let (g, d0, _) = construction_two_instance();
        out.push(claim("unique-super/k2-k1", move || verify::unique_super_check(&g, &d0, &bipartite(), k, kc, ccap)));
    }
    for (name, p, fs) in uft_cases() {
        out.push(claim(format!("uft/{name}"), move || {
            verify::unique_factorization_experiment(&p, &fs, &catalog_properties(), b, k, cap)
        }));
    }
    for (i, (a, bb, c)) in cancellation_triples().into_iter().enumerate() {
        out.push(claim(format!("cancellation/{i:02}"), move || verify::cancellation_check(&a, &bb, &c, b, cap)));
    }
    out.push(claim("monotone/identical", move || {
        let k2 = Property::k_colorable(2);
        verify::monotone_factor_check(&k2, &k2, &e(), &e(), b, cap)
    }));
    out.push(claim("monotone/strict-subset", move || {
        verify::monotone_factor_check(&e(), &Property::k_colorable(2), &e(), &e(), b.min(4), cap)
    }));
    out.push(claim("dec-additivity/edgeless-edgeless", move || verify::dec_additivity_check(&e(), &e(), dec_b, k, cap)));
    out
}

/// Runs every claim; claims execute in parallel but the report keeps the
/// fixed claim order.
pub fn run_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let results: Vec<ClaimResult> = claims(cfg)
        .into_par_iter()
        .map(|(id, f)| ClaimResult::from_result(id, Certificate::timed(&f)))
        .collect();
    let mut summary = Summary::default();
    for r in &results {
        match (r.verdict(), &r.error) {
            (Some(Verdict::VerifiedAtBound), _) => summary.verified += 1,
            (Some(Verdict::Refuted), _) => summary.refuted += 1,
            (Some(Verdict::Inconclusive), _) => summary.inconclusive += 1,
            (None, Some(e)) => {
                summary.errors += 1;
                if e.resource_limit {
                    summary.resource_limits += 1;
                }
            }
            (None, None) => {}
        }
    }
    Ok(SuiteReport { schema: 1, suite: "paper".into(), config: cfg.clone(), claims: results, summary })
}
