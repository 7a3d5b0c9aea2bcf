//! Connected cubic graphs, one per isomorphism class.
//!
//! A partial graph holds the vertices touched so far; untouched vertices are
//! interchangeable and tracked only by count. Each step saturates one touched
//! vertex, choosing its missing neighbours among the unsaturated touched
//! vertices and any number of fresh ones. Partial graphs are deduplicated by
//! canonical form, so each isomorphism class is expanded once.

use std::collections::HashSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::canon::{canonical_labelling, BitGraph, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;

pub const DEFAULT_STATE_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicFilters {
    pub triangle_free: bool,
    pub biconnected: bool,
}

impl CubicFilters {
    /// Triangle-free and 2-connected.
    pub fn census() -> Self {
        CubicFilters {
            triangle_free: true,
            biconnected: true,
        }
    }
}

fn canonical(g: &BitGraph) -> (CanonicalForm, BitGraph) {
    let (form, _) = canonical_labelling(g);
    let b = BitGraph {
        n: form.n,
        adj: form.rows.clone(),
    };
    (form, b)
}

/// Every connected cubic graph on `n` vertices passing `filters`, sorted by
/// canonical form. `state_budget` bounds the number of partial graphs.
pub fn generate_cubic(n: usize, filters: CubicFilters, state_budget: u64) -> Result<Vec<MultiGraph>> {
    if n % 2 == 1 {
        return Err(Error::InvalidArgument(format!("cubic graphs need an even order, got {n}")));
    }
    if n < 4 {
        return Ok(Vec::new());
    }
    if n > super::canon::MAX_VERTICES {
        return Err(Error::InvalidArgument(format!("order {n} is too large")));
    }

    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let mut complete: Vec<CanonicalForm> = Vec::new();
    let mut stack = vec![BitGraph::new(1)];
    let mut states = 0u64;

    while let Some(g) = stack.pop() {
        states += 1;
        if states > state_budget {
            return Err(Error::BudgetRefused {
                count: states as u128,
                budget: state_budget as u128,
            });
        }
        let t = g.n;
        let open = (0..t)
            .filter(|&v| g.degree(v) < 3)
            .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)));
        let Some(v) = open else {
            if t == n {
                complete.push(CanonicalForm { n, rows: g.adj });
            }
            continue;
        };
        let need = 3 - g.degree(v);
        let fresh = n - t;
        let candidates: Vec<usize> = (0..t)
            .filter(|&u| u != v && g.degree(u) < 3 && !g.has_edge(u, v))
            .collect();
        for j in 0..=need.min(fresh) {
            for chosen in candidates.iter().copied().combinations(need - j) {
                let mut h = BitGraph::new(t + j);
                h.adj[..t].copy_from_slice(&g.adj);
                for &u in &chosen {
                    h.add_edge(v, u);
                }
                for k in 0..j {
                    h.add_edge(v, t + k);
                }
                if filters.triangle_free && chosen.iter().any(|&u| h.adj[v] & h.adj[u] != 0) {
                    continue;
                }
                let (form, canon) = canonical(&h);
                if seen.insert(form) {
                    stack.push(canon);
                }
            }
        }
    }

    complete.sort();
    complete.dedup();
    Ok(complete
        .into_iter()
        .map(|f| f.to_graph())
        .filter(|g| !filters.biconnected || g.is_biconnected())
        .filter(|g| !filters.triangle_free || g.is_triangle_free())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use crate::survey::canon::are_isomorphic;

    fn all() -> CubicFilters {
        CubicFilters::default()
    }

    #[test]
    fn small_orders() {
        let four = generate_cubic(4, all(), DEFAULT_STATE_BUDGET).unwrap();
        assert_eq!(four.len(), 1);
        assert!(are_isomorphic(&four[0], &named::k4()).unwrap());
        assert!(generate_cubic(4, CubicFilters::census(), DEFAULT_STATE_BUDGET).unwrap().is_empty());

        let six = generate_cubic(6, CubicFilters::census(), DEFAULT_STATE_BUDGET).unwrap();
        assert_eq!(six.len(), 1);
        assert!(are_isomorphic(&six[0], &named::k33()).unwrap());
        assert_eq!(generate_cubic(6, all(), DEFAULT_STATE_BUDGET).unwrap().len(), 2);
    }

    #[test]
    fn odd_order_rejected() {
        assert!(generate_cubic(7, all(), DEFAULT_STATE_BUDGET).is_err());
    }

    #[test]
    fn budget_refusal() {
        assert!(matches!(
            generate_cubic(12, all(), 10),
            Err(Error::BudgetRefused { budget: 10, .. })
        ));
    }

    #[test]
    fn outputs_are_cubic() {
        for g in generate_cubic(10, all(), DEFAULT_STATE_BUDGET).unwrap() {
            assert!(g.degrees().iter().all(|&d| d == 3));
            assert!(g.is_connected() && g.is_simple());
        }
    }
}
