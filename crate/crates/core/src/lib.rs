//! Graph properties, generalized colourings and their factorizations.
//!
//! Graphs are simple, labeled, and have at most 64 vertices. A
//! [`Property`] is an isomorphism-closed class of graphs; products of
//! properties describe vertex partitions where each part induces a member
//! of the corresponding factor.

pub mod certificate;
pub mod config;
pub mod decomposition;
pub mod enumerate;
pub mod error;
pub mod generating;
pub mod graph;
pub mod graph6;
pub mod partition;
pub mod property;
pub mod starjoin;
pub mod suite;
pub mod upg;
pub mod verify;

pub use certificate::{Certificate, Verdict, Witness};
pub use error::{Error, Result};
pub use graph::{CanonicalLabel, Graph, VertexSet};
pub use partition::Labeling;
pub use property::{Containment, Property};
pub use starjoin::{StarJoin, StarJoinElement};
