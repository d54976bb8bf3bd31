//! JSON property documents.
//!
//! ```json
//! {"kind": "product", "factors": [{"kind": "edgeless"}, {"kind": "maxdegree", "d": 1}]}
//! ```
//!
//! Node kinds: `edgeless`, `kcolorable` (`k`), `maxdegree` (`d`), `forest`,
//! `complete`, `subgraphof` (`graph`), `forbidden` and `forbidden_induced`
//! (`graphs`), `generated` (`graphs`, `mode`), `product` (`factors`). Graphs
//! are graph6 strings. Any node may carry `flags` to override the declared
//! closure flags.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Containment, DeclaredFlags, Expr, Property};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropertySpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graphs: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<ModeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<PropertySpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flags: Option<DeclaredFlags>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModeSpec {
    #[serde(rename = "subgraph", alias = "subgraph-closed")]
    Subgraph,
    #[serde(rename = "induced", alias = "induced-closed")]
    Induced,
}

impl PropertySpec {
    pub fn parse(text: &str) -> Result<Property> {
        let spec: PropertySpec =
            serde_json::from_str(text).map_err(|e| Error::PropertyFile(e.to_string()))?;
        spec.to_property()
    }

    pub fn load(path: &Path) -> Result<Property> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::PropertyFile(format!("{}: {e}", path.display())))?;
        PropertySpec::parse(&text)
    }

    pub fn to_property(&self) -> Result<Property> {
        let p = match self.kind.as_str() {
            "edgeless" => Property::edgeless(),
            "kcolorable" => Property::k_colorable(self.need(self.k, "k")?),
            "maxdegree" => Property::max_degree(self.need(self.d, "d")?),
            "forest" => Property::forest(),
            "complete" => Property::complete(),
            "subgraphof" => {
                let g = self.need(self.graph.as_deref(), "graph")?;
                Property::subgraph_of(decode(g)?)
            }
            "forbidden" => Property::forbidden_subgraphs(self.graph_list()?),
            "forbidden_induced" => Property::forbidden_induced(self.graph_list()?),
            "generated" => {
                let mode = match self.need(self.mode, "mode")? {
                    ModeSpec::Subgraph => Containment::Subgraph,
                    ModeSpec::Induced => Containment::Induced,
                };
                Property::generated(self.graph_list()?, mode)
                    .map_err(|e| Error::PropertyFile(e.to_string()))?
            }
            "product" => {
                let factors = self.need(self.factors.as_ref(), "factors")?;
                if factors.is_empty() {
                    return Err(Error::PropertyFile("product needs at least one factor".into()));
                }
                Property::product(factors.iter().map(PropertySpec::to_property).collect::<Result<_>>()?)
            }
            other => return Err(Error::PropertyFile(format!("unknown node kind {other:?}"))),
        };
        Ok(match self.flags {
            Some(flags) => p.with_flags(flags),
            None => p,
        })
    }

    pub fn from_property(p: &Property) -> PropertySpec {
        let mut spec = PropertySpec {
            kind: String::new(),
            k: None,
            d: None,
            graph: None,
            graphs: None,
            mode: None,
            factors: None,
            flags: None,
        };
        let codes = |list: &[Graph]| Some(list.iter().map(graph6::encode).collect());
        spec.kind = match p.expr() {
            Expr::Edgeless => "edgeless",
            Expr::KColorable(k) => {
                spec.k = Some(*k);
                "kcolorable"
            }
            Expr::MaxDegree(d) => {
                spec.d = Some(*d);
                "maxdegree"
            }
            Expr::Forest => "forest",
            Expr::Complete => "complete",
            Expr::SubgraphOf(s) => {
                spec.graph = Some(graph6::encode(s));
                "subgraphof"
            }
            Expr::ForbiddenSubgraphs(list) => {
                spec.graphs = codes(list);
                "forbidden"
            }
            Expr::ForbiddenInduced(list) => {
                spec.graphs = codes(list);
                "forbidden_induced"
            }
            Expr::Generated { seeds, mode } => {
                spec.graphs = codes(seeds);
                spec.mode = Some(match mode {
                    Containment::Subgraph => ModeSpec::Subgraph,
                    Containment::Induced => ModeSpec::Induced,
                });
                "generated"
            }
            Expr::Product(f) => {
                spec.factors = Some(f.iter().map(PropertySpec::from_property).collect());
                "product"
            }
        }
        .to_string();
        spec
    }

    fn need<T>(&self, value: Option<T>, field: &str) -> Result<T> {
        value.ok_or_else(|| {
            Error::PropertyFile(format!("node kind {:?} requires field {field:?}", self.kind))
        })
    }

    fn graph_list(&self) -> Result<Vec<Graph>> {
        self.need(self.graphs.as_ref(), "graphs")?.iter().map(|s| decode(s)).collect()
    }
}

fn decode(s: &str) -> Result<Graph> {
    graph6::decode(s).map_err(|e| Error::PropertyFile(format!("embedded graph {s:?}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        let docs = [
            r#"{"kind":"edgeless"}"#,
            r#"{"kind":"kcolorable","k":3}"#,
            r#"{"kind":"maxdegree","d":2}"#,
            r#"{"kind":"forest"}"#,
            r#"{"kind":"complete"}"#,
            r#"{"kind":"subgraphof","graph":"Bw"}"#,
            r#"{"kind":"forbidden","graphs":["Bw"]}"#,
            r#"{"kind":"forbidden_induced","graphs":["Ch"]}"#,
            r#"{"kind":"generated","graphs":["Dhc"],"mode":"induced-closed"}"#,
            r#"{"kind":"product","factors":[{"kind":"edgeless"},{"kind":"maxdegree","d":1}]}"#,
        ];
        for doc in docs {
            let p = PropertySpec::parse(doc).unwrap_or_else(|e| panic!("{doc}: {e}"));
            let again = PropertySpec::from_property(&p).to_property().unwrap();
            assert_eq!(p, again);
        }
    }

    #[test]
    fn product_membership_from_file() {
        let p = PropertySpec::parse(
            r#"{"kind":"product","factors":[{"kind":"edgeless"},{"kind":"edgeless"}]}"#,
        )
        .unwrap();
        assert!(p.contains(&Graph::cycle(4)));
        assert!(!p.contains(&Graph::complete(3)));
    }

    #[test]
    fn flags_override() {
        let p = PropertySpec::parse(r#"{"kind":"complete","flags":{"additive":true}}"#).unwrap();
        assert!(p.declared_flags().additive);
        assert!(!p.declared_flags().hereditary);
    }

    #[test]
    fn rejects_bad_documents() {
        for doc in [
            r#"{"kind":"rainbow"}"#,
            r#"{"kind":"kcolorable"}"#,
            r#"{"kind":"forbidden","graphs":["!!"]}"#,
            r#"{"kind":"product","factors":[]}"#,
            r#"{"kind":"edgeless","colour":1}"#,
            r#"{"kind":"generated","graphs":[],"mode":"induced"}"#,
            "not json",
        ] {
            assert!(matches!(PropertySpec::parse(doc), Err(Error::PropertyFile(_))), "{doc}");
        }
    }
}
