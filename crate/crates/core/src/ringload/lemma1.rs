//! Naive half-and-half routing of uniform traffic on a single ring.
//!
//! Every pair of ADMs sends `floor(d/2)` units along its major arc and
//! `ceil(d/2)` along the minor arc. Arc lengths are counted in hops between
//! consecutive ADM positions (the sub-ring), so the worst link load depends
//! only on `nu` and `d`. Diametric ties always make the arc through the
//! wrap-around hop (last position back to the first) the major arc.

use crate::model::{Arc, Pair, RoutedDemand};
use crate::numeric::floor_sqrt_ratio;

/// Sub-ring size `nu` and uniform demand `d`, with their halves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lemma1Params {
    pub nu: u64,
    pub d: u64,
    /// `floor(nu / 2)`
    pub mu: u64,
    /// `floor(d / 2)`
    pub delta: u64,
}

impl Lemma1Params {
    pub fn new(nu: usize, d: u32) -> Option<Self> {
        (nu >= 2 && d >= 1).then(|| Lemma1Params {
            nu: nu as u64,
            d: d as u64,
            mu: nu as u64 / 2,
            delta: d as u64 / 2,
        })
    }

    pub fn nu_odd(&self) -> bool {
        self.nu % 2 == 1
    }

    pub fn d_odd(&self) -> bool {
        self.d % 2 == 1
    }

    /// Closed-form heaviest link load of the half-and-half routing.
    pub fn max_load(&self) -> u64 {
        let (mu, delta) = (self.mu, self.delta);
        match (self.nu_odd(), self.d_odd()) {
            (false, false) => mu * (2 * mu - 1) * delta,
            (true, false) => mu * (2 * mu + 1) * delta,
            (false, true) => mu * ((mu + 1) * (delta + 1) + (3 * mu - 3) * delta) / 2,
            (true, true) => mu * ((mu + 1) * (delta + 1) + (3 * mu + 1) * delta) / 2,
        }
    }
}

/// Table value for `(nu, d)`; `nu >= 2`, `d >= 1`.
pub fn lemma1_max_load(nu: usize, d: u32) -> u64 {
    Lemma1Params::new(nu, d)
        .expect("nu >= 2 and d >= 1")
        .max_load()
}

/// Largest ring size that carries uniform demand `d` within capacity `c`
/// under the half-and-half routing: `floor(sqrt(4c/d))`, at least 2.
pub fn lemma1_ring_size(c: u32, d: u32) -> usize {
    (floor_sqrt_ratio(4 * c as u128, d as u128) as usize).max(2)
}

/// Routes `d` units between every pair of `positions` (vertices of `C_n`).
/// Positions are sorted and deduplicated first.
pub fn lemma1_route(d: u32, positions: &[usize], n: usize) -> Vec<RoutedDemand> {
    let mut pos = positions.to_vec();
    pos.sort_unstable();
    pos.dedup();
    debug_assert!(pos.iter().all(|&v| (1..=n).contains(&v)));
    let nu = pos.len();
    let minor_units = d.div_ceil(2);
    let major_units = d / 2;
    let mut routed = Vec::with_capacity(nu * (nu.saturating_sub(1)));
    for a in 0..nu {
        for b in a + 1..nu {
            let pair = Pair::new(pos[a], pos[b]).expect("distinct positions");
            // the inner arc of C_n passes exactly the positions a..=b
            let inner_hops = b - a;
            let outer_hops = nu - inner_hops;
            let minor = if inner_hops <= outer_hops {
                Arc::Inner
            } else {
                Arc::Outer
            };
            let major = match minor {
                Arc::Inner => Arc::Outer,
                Arc::Outer => Arc::Inner,
            };
            if minor_units > 0 {
                routed.push(RoutedDemand::new(pair, minor, minor_units));
            }
            if major_units > 0 {
                routed.push(RoutedDemand::new(pair, major, major_units));
            }
        }
    }
    routed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringload::edge_loads;

    fn equally_spaced(nu: usize, gap: usize) -> (Vec<usize>, usize) {
        ((0..nu).map(|i| 1 + i * gap).collect(), nu * gap)
    }

    fn routed_max(nu: usize, d: u32, gap: usize) -> u64 {
        let (pos, n) = equally_spaced(nu, gap);
        edge_loads(n, &lemma1_route(d, &pos, n)).max()
    }

    #[test]
    fn table_values() {
        assert_eq!(lemma1_max_load(4, 2), 6);
        assert_eq!(lemma1_max_load(5, 2), 10);
        assert_eq!(lemma1_max_load(5, 3), 13);
        // 1/2 * 2 * [3*2 + 3*1]
        assert_eq!(lemma1_max_load(4, 3), 9);
    }

    #[test]
    fn routed_examples() {
        for d in 1..10 {
            assert_eq!(routed_max(2, d, 3), d.div_ceil(2) as u64);
        }
        assert_eq!(routed_max(4, 2, 1), 6);
        assert_eq!(routed_max(5, 3, 1), 13);
        assert_eq!(routed_max(5, 3, 2), 13);
    }

    #[test]
    fn every_pair_gets_d_units() {
        let routed = lemma1_route(5, &[2, 3, 7, 11], 12);
        let mut per_pair = std::collections::BTreeMap::new();
        for r in &routed {
            *per_pair.entry(r.pair).or_insert(0) += r.units;
        }
        assert_eq!(per_pair.len(), 6);
        assert!(per_pair.values().all(|&u| u == 5));
    }

    #[test]
    fn ring_size_formula() {
        // c = 1, d = 1: floor(sqrt(4)) = 2
        assert_eq!(lemma1_ring_size(1, 1), 2);
        // c = 4, d = 1: floor(sqrt(16)) = 4
        assert_eq!(lemma1_ring_size(4, 1), 4);
        // c = 2, d = 1: floor(sqrt(8)) = 2
        assert_eq!(lemma1_ring_size(2, 1), 2);
        // f = 1 clamps at 2
        assert_eq!(lemma1_ring_size(3, 6), 2);
    }

    #[test]
    fn uneven_spacing_respects_table() {
        let n = 20;
        let cases: [&[usize]; 3] = [&[1, 2, 3], &[1, 2, 3, 10, 19], &[4, 5, 6, 7, 15, 16]];
        for pos in cases {
            for d in 1..6 {
                let loads = edge_loads(n, &lemma1_route(d, pos, n));
                assert!(loads.max() <= lemma1_max_load(pos.len(), d), "{pos:?} d={d}");
            }
        }
    }
}
