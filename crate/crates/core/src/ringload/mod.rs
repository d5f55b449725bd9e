//! Ring geometry and per-edge load accounting.
//!
//! Edges are numbered `1..=n`; edge `l` joins vertices `l` and `l + 1` and
//! edge `n` closes the cycle. [`EdgeLoads`] stores them 0-based.

mod fit;
mod lemma1;

use thiserror::Error;

use crate::model::{Arc, Pair, RoutedDemand};
use crate::Rational;

pub use fit::{ring_fit_feasible, ring_fit_feasible_with, FitBudget, FitError};
pub use lemma1::{lemma1_max_load, lemma1_ring_size, lemma1_route, Lemma1Params};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("expected 1 <= j < k <= n, got j = {j}, k = {k}, n = {n}")]
    BadPair { j: usize, k: usize, n: usize },
    #[error("edge {l} is outside 1..={n}")]
    BadEdge { l: usize, n: usize },
}

/// 1 when the arc between `j` and `k` through edge `l` also passes through
/// edge `n`, else 0. Equivalently: 1 iff edge `l` lies on the outer arc.
pub fn delta(j: usize, k: usize, l: usize, n: usize) -> Result<u8, GeometryError> {
    if !(1 <= j && j < k && k <= n) {
        return Err(GeometryError::BadPair { j, k, n });
    }
    if !(1..=n).contains(&l) {
        return Err(GeometryError::BadEdge { l, n });
    }
    Ok(u8::from(!(j <= l && l < k)))
}

/// Whether edge `l` (1-based) is used by `arc` of `pair`.
pub fn on_arc(pair: Pair, arc: Arc, l: usize) -> bool {
    let inner = pair.j() <= l && l < pair.k();
    match arc {
        Arc::Inner => inner,
        Arc::Outer => !inner,
    }
}

/// Number of edges on `arc` of `pair`.
pub fn arc_length(pair: Pair, arc: Arc, n: usize) -> usize {
    let inner = pair.k() - pair.j();
    match arc {
        Arc::Inner => inner,
        Arc::Outer => n - inner,
    }
}

/// Per-edge traffic on one ring; entry `l - 1` is the load of edge `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLoads(Vec<u64>);

impl EdgeLoads {
    pub fn zero(n: usize) -> Self {
        EdgeLoads(vec![0; n])
    }

    /// Load on edge `l` (1-based).
    pub fn get(&self, l: usize) -> u64 {
        self.0[l - 1]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn max(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Adds `units` to every edge of the chosen arc.
    pub fn add(&mut self, pair: Pair, arc: Arc, units: u64) {
        let (lo, hi) = (pair.j() - 1, pair.k() - 1);
        match arc {
            Arc::Inner => self.0[lo..hi].iter_mut().for_each(|e| *e += units),
            Arc::Outer => {
                self.0[..lo].iter_mut().for_each(|e| *e += units);
                self.0[hi..].iter_mut().for_each(|e| *e += units);
            }
        }
    }
}

/// Loads induced on a ring of size `n` by a routing.
pub fn edge_loads(n: usize, routed: &[RoutedDemand]) -> EdgeLoads {
    let mut loads = EdgeLoads::zero(n);
    for r in routed {
        loads.add(r.pair, r.arc, r.units as u64);
    }
    loads
}

/// Units times arc length, summed over the routing.
pub fn bandwidth(n: usize, routed: &[RoutedDemand]) -> u64 {
    routed
        .iter()
        .map(|r| r.units as u64 * arc_length(r.pair, r.arc, n) as u64)
        .sum()
}

/// `d n (n^2 - 1) / 8`: the bandwidth floor for uniform traffic used by the
/// uniform lower bound. Exact shortest-path total for odd `n`; for even `n`
/// it is a slight underestimate.
pub fn min_uniform_bandwidth(n: usize, d: u32) -> Rational {
    let n = n as i128;
    Rational::new(d as i128 * n * (n * n - 1), 8)
}
