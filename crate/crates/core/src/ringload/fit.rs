//! Exact single-ring feasibility with integer traffic splitting.
//!
//! Depth-first search over the number of inner-arc units per pair. The
//! admissible range for each pair is cut down by the remaining edge capacity
//! on both arcs, and every node checks the two-edge cut condition for the
//! still-unassigned pairs (which subsumes the per-vertex `2c` bound) plus the
//! total-bandwidth ceiling `c n`. Pruning only removes provably dead branches,
//! so the answer is exact.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{arc_length, EdgeLoads};
use crate::model::{Arc, Pair, RoutedDemand};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("instance too large for exact feasibility: search exceeded {limit} nodes")]
    TooLarge { limit: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FitBudget {
    pub max_nodes: u64,
}

impl Default for FitBudget {
    fn default() -> Self {
        FitBudget {
            max_nodes: 2_000_000,
        }
    }
}

/// Decides whether `demands` fit on one ring of size `n` and capacity `c`,
/// returning an arc split when they do.
pub fn ring_fit_feasible(
    n: usize,
    c: u32,
    demands: &BTreeMap<Pair, u32>,
) -> Result<Option<Vec<RoutedDemand>>, FitError> {
    ring_fit_feasible_with(n, c, demands, FitBudget::default())
}

pub fn ring_fit_feasible_with(
    n: usize,
    c: u32,
    demands: &BTreeMap<Pair, u32>,
    budget: FitBudget,
) -> Result<Option<Vec<RoutedDemand>>, FitError> {
    let mut pairs: Vec<(Pair, u32)> = demands
        .iter()
        .filter(|&(_, &u)| u > 0)
        .map(|(&p, &u)| (p, u))
        .collect();
    if pairs.is_empty() {
        return Ok(Some(Vec::new()));
    }
    // most demanding first, ties lexicographic
    pairs.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));

    let mut search = Search::new(n, c as u64, pairs, budget.max_nodes);
    if !search.node_ok(0) {
        return Ok(None);
    }
    if search.dfs(0)? {
        let mut routed = Vec::new();
        for (&(pair, d), &inner) in search.pairs.iter().zip(&search.inner) {
            if inner > 0 {
                routed.push(RoutedDemand::new(pair, Arc::Inner, inner));
            }
            if d - inner > 0 {
                routed.push(RoutedDemand::new(pair, Arc::Outer, d - inner));
            }
        }
        routed.sort();
        Ok(Some(routed))
    } else {
        Ok(None)
    }
}

struct Search {
    n: usize,
    c: u64,
    pairs: Vec<(Pair, u32)>,
    inner: Vec<u32>,
    loads: EdgeLoads,
    cuts: Vec<(usize, usize)>,
    // cut_rest[t][q]: demand of pairs t.. crossing cut q
    cut_rest: Vec<Vec<u64>>,
    // min_bw_rest[t]: shortest-arc bandwidth of pairs t..
    min_bw_rest: Vec<u64>,
    nodes: u64,
    max_nodes: u64,
}

impl Search {
    fn new(n: usize, c: u64, pairs: Vec<(Pair, u32)>, max_nodes: u64) -> Self {
        let cuts: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        let inner_has = |p: Pair, e: usize| p.j() - 1 <= e && e + 1 < p.k();
        let mut cut_rest = vec![vec![0u64; cuts.len()]; pairs.len() + 1];
        let mut min_bw_rest = vec![0u64; pairs.len() + 1];
        for t in (0..pairs.len()).rev() {
            let (p, d) = pairs[t];
            for (q, &(a, b)) in cuts.iter().enumerate() {
                let crosses = inner_has(p, a) != inner_has(p, b);
                cut_rest[t][q] = cut_rest[t + 1][q] + if crosses { d as u64 } else { 0 };
            }
            let short = arc_length(p, Arc::Inner, n).min(arc_length(p, Arc::Outer, n));
            min_bw_rest[t] = min_bw_rest[t + 1] + d as u64 * short as u64;
        }
        Search {
            n,
            c,
            inner: vec![0; pairs.len()],
            pairs,
            loads: EdgeLoads::zero(n),
            cuts,
            cut_rest,
            min_bw_rest,
            nodes: 0,
            max_nodes,
        }
    }

    /// Necessary conditions for the unassigned pairs `t..` to still fit.
    fn node_ok(&self, t: usize) -> bool {
        let l = self.loads.as_slice();
        if l.iter().sum::<u64>() + self.min_bw_rest[t] > self.c * self.n as u64 {
            return false;
        }
        self.cuts.iter().zip(&self.cut_rest[t]).all(|(&(a, b), &rest)| {
            rest <= (self.c - l[a]) + (self.c - l[b])
        })
    }

    fn spare(&self, pair: Pair, arc: Arc) -> u64 {
        let l = self.loads.as_slice();
        let (lo, hi) = (pair.j() - 1, pair.k() - 1);
        let used = match arc {
            Arc::Inner => l[lo..hi].iter().copied().max().unwrap_or(0),
            Arc::Outer => l[..lo].iter().chain(&l[hi..]).copied().max().unwrap_or(0),
        };
        self.c - used
    }

    fn dfs(&mut self, t: usize) -> Result<bool, FitError> {
        if t == self.pairs.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(FitError::TooLarge {
                limit: self.max_nodes,
            });
        }
        let (pair, d) = self.pairs[t];
        let d64 = d as u64;
        let max_inner = self.spare(pair, Arc::Inner).min(d64);
        let max_outer = self.spare(pair, Arc::Outer).min(d64);
        if max_inner + max_outer < d64 {
            return Ok(false);
        }
        let lo = d64 - max_outer;
        let hi = max_inner;
        let inner_short = arc_length(pair, Arc::Inner, self.n) <= arc_length(pair, Arc::Outer, self.n);
        let order: Box<dyn Iterator<Item = u64>> = if inner_short {
            Box::new((lo..=hi).rev())
        } else {
            Box::new(lo..=hi)
        };
        for x in order {
            self.loads.add(pair, Arc::Inner, x);
            self.loads.add(pair, Arc::Outer, d64 - x);
            self.inner[t] = x as u32;
            let found = self.node_ok(t + 1) && self.dfs(t + 1)?;
            if found {
                return Ok(true);
            }
            self.loads.sub(pair, Arc::Inner, x);
            self.loads.sub(pair, Arc::Outer, d64 - x);
        }
        Ok(false)
    }
}

impl EdgeLoads {
    fn sub(&mut self, pair: Pair, arc: Arc, units: u64) {
        let (lo, hi) = (pair.j() - 1, pair.k() - 1);
        match arc {
            Arc::Inner => self.0[lo..hi].iter_mut().for_each(|e| *e -= units),
            Arc::Outer => {
                self.0[..lo].iter_mut().for_each(|e| *e -= units);
                self.0[hi..].iter_mut().for_each(|e| *e -= units);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::all_pairs;
    use crate::ringload::edge_loads;
    use proptest::prelude::*;

    fn demands(list: &[(usize, usize, u32)]) -> BTreeMap<Pair, u32> {
        list.iter()
            .map(|&(j, k, u)| (Pair::new(j, k).unwrap(), u))
            .collect()
    }

    fn check_routing(n: usize, c: u32, want: &BTreeMap<Pair, u32>, routed: &[RoutedDemand]) {
        let mut got: BTreeMap<Pair, u32> = BTreeMap::new();
        for r in routed {
            *got.entry(r.pair).or_default() += r.units;
        }
        assert_eq!(&got, want);
        assert!(edge_loads(n, routed).max() <= c as u64);
    }

    #[test]
    fn small_cases() {
        let split = demands(&[(1, 3, 2)]);
        let r = ring_fit_feasible(4, 1, &split).unwrap().expect("feasible");
        check_routing(4, 1, &split, &r);
        assert_eq!(r.len(), 2, "one unit on each arc: {r:?}");

        assert_eq!(ring_fit_feasible(4, 1, &demands(&[(1, 2, 3)])).unwrap(), None);

        let tri = demands(&[(1, 2, 1), (2, 3, 1), (1, 3, 1)]);
        let r = ring_fit_feasible(9, 1, &tri).unwrap().expect("feasible");
        check_routing(9, 1, &tri, &r);
    }

    #[test]
    fn empty_demand_fits() {
        assert_eq!(ring_fit_feasible(5, 1, &BTreeMap::new()).unwrap(), Some(vec![]));
    }

    #[test]
    fn budget_abort_is_reported() {
        let many: BTreeMap<Pair, u32> = all_pairs(6).map(|p| (p, 1)).collect();
        assert!(ring_fit_feasible(6, 8, &many).unwrap().is_some());
        let res = ring_fit_feasible_with(6, 8, &many, FitBudget { max_nodes: 1 });
        assert_eq!(res, Err(FitError::TooLarge { limit: 1 }));
    }

    /// Enumerates every arc split directly.
    fn brute_force(n: usize, c: u32, list: &[(Pair, u32)]) -> bool {
        fn rec(n: usize, c: u32, list: &[(Pair, u32)], acc: &mut Vec<RoutedDemand>) -> bool {
            match list.split_first() {
                None => edge_loads(n, acc).max() <= c as u64,
                Some((&(p, d), rest)) => (0..=d).any(|x| {
                    let len = acc.len();
                    acc.push(RoutedDemand::new(p, Arc::Inner, x));
                    acc.push(RoutedDemand::new(p, Arc::Outer, d - x));
                    let ok = rec(n, c, rest, acc);
                    acc.truncate(len);
                    ok
                }),
            }
        }
        rec(n, c, list, &mut Vec::new())
    }

    proptest! {
        #[test]
        fn agrees_with_enumeration(
            n in 3usize..=7,
            c in 1u32..=3,
            raw in proptest::collection::vec((1usize..=7, 1usize..=7, 1u32..=3), 1..=4),
        ) {
            let mut map: BTreeMap<Pair, u32> = BTreeMap::new();
            for (a, b, u) in raw {
                let (a, b) = ((a - 1) % n + 1, (b - 1) % n + 1);
                if let Some(p) = Pair::new(a, b) {
                    map.insert(p, u);
                }
            }
            prop_assume!(!map.is_empty());
            let list: Vec<(Pair, u32)> = map.iter().map(|(&p, &u)| (p, u)).collect();
            let expected = brute_force(n, c, &list);
            let got = ring_fit_feasible(n, c, &map).unwrap();
            prop_assert_eq!(got.is_some(), expected);
            if let Some(r) = got {
                check_routing(n, c, &map, &r);
            }
        }
    }
}
