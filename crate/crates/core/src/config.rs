use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Text,
}

/// Caps and bounds shared by every command. Runs are always deterministic;
/// there is no seed.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub order_cap: usize,
    pub bound: usize,
    pub k_max: usize,
    pub k_cap: usize,
    /// Order cap for the uniquely partitionable supergraph construction.
    pub construction_cap: usize,
    /// Worker threads; 0 means one per core. Not serialized since it never
    /// changes a verdict.
    #[serde(skip)]
    pub parallelism: usize,
    #[serde(skip)]
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            order_cap: crate::enumerate::DEFAULT_ORDER_CAP,
            bound: 6,
            k_max: crate::decomposition::DEFAULT_K_MAX,
            k_cap: crate::upg::DEFAULT_K_CAP,
            construction_cap: crate::upg::DEFAULT_ORDER_CAP,
            parallelism: 0,
            format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.bound > self.order_cap {
            return Err(Error::Precondition(format!(
                "bound {} exceeds the order cap {}",
                self.bound, self.order_cap
            )));
        }
        if self.k_max == 0 {
            return Err(Error::Precondition("k_max must be at least 1".into()));
        }
        Ok(())
    }
}
