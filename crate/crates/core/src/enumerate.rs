//! Isomorphism classes of small graphs.
//!
//! Order `n` is grown from order `n - 1` by adding a vertex with every
//! possible neighbourhood and deduplicating by canonical form. Levels are
//! cached process-wide; the representatives are canonical graphs sorted by
//! edge count, then by canonical form.

use std::collections::BTreeSet;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{CanonicalLabel, Graph, VertexSet};

/// Default cap on enumerated orders.
pub const DEFAULT_ORDER_CAP: usize = 10;

fn levels() -> &'static Mutex<Vec<Arc<Vec<Graph>>>> {
    static LEVELS: OnceLock<Mutex<Vec<Arc<Vec<Graph>>>>> = OnceLock::new();
    LEVELS.get_or_init(|| Mutex::new(vec![Arc::new(vec![Graph::new(0)])]))
}

/// One representative per isomorphism class on `n` vertices.
pub fn enumerate_graphs(n: usize, cap: usize) -> Result<Arc<Vec<Graph>>> {
    if n > cap {
        return Err(Error::OrderCapExceeded { order: n, cap });
    }
    let mut cache = levels().lock().expect("enumeration cache poisoned");
    while cache.len() <= n {
        let prev = cache.last().expect("level 0 present").clone();
        cache.push(Arc::new(extend_level(&prev)));
    }
    Ok(cache[n].clone())
}

/// All representatives of orders `0..=bound`, smallest order first.
pub fn graphs_up_to(bound: usize, cap: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 0..=bound {
        out.extend(enumerate_graphs(n, cap)?.iter().cloned());
    }
    Ok(out)
}

fn extend_level(prev: &[Graph]) -> Vec<Graph> {
    let n = prev.first().map_or(0, Graph::order);
    let labels: BTreeSet<(usize, CanonicalLabel)> = prev
        .par_iter()
        .flat_map_iter(|g| {
            (0..1u64 << n).map(move |mask| {
                let mut h = Graph::disjoint_union(&[g.clone(), Graph::new(1)]);
                for v in VertexSet::from_bits(mask).iter() {
                    h.add_edge(v, n);
                }
                (h.edge_count(), h.canonical_form())
            })
        })
        .collect();
    labels.into_iter().map(|(_, l)| l.into_graph()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_counts() {
        let counts: Vec<usize> = (0..=6)
            .map(|n| enumerate_graphs(n, DEFAULT_ORDER_CAP).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_graphs(5, 4),
            Err(Error::OrderCapExceeded { order: 5, cap: 4 })
        ));
    }

    #[test]
    fn ordered_by_edge_count() {
        let g4 = enumerate_graphs(4, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g4.first().unwrap().edge_count(), 0);
        assert_eq!(g4.last().unwrap().edge_count(), 6);
        assert!(g4.windows(2).all(|w| w[0].edge_count() <= w[1].edge_count()));
    }
}
