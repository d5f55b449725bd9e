//! Instances, solutions, file formats, generators and solution verification.
//!
//! Vertices are 1-based. Edge `l` joins vertices `l` and `l + 1`; edge `n`
//! joins `n` and `1`. For a pair `j < k` the *inner* arc is the one made of
//! edges `j..k` (it avoids edge `n`), the *outer* arc is the complement and
//! always contains edge `n`.

mod format;
mod generate;
mod verify;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use format::{
    parse_instance, parse_solution, serialize_instance, serialize_solution, ParseError,
};
pub use generate::{from_bin_packing, quasi_uniform_random, uniform_instance, GenerateError};
pub use verify::{verify_solution, Violation, VerificationReport, Warning};

/// An unordered pair of distinct vertices, stored with `j < k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pair {
    j: usize,
    k: usize,
}

impl Pair {
    /// Normalizes the order; returns `None` when `a == b`.
    pub fn new(a: usize, b: usize) -> Option<Pair> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Pair { j: a, k: b }),
            std::cmp::Ordering::Greater => Some(Pair { j: b, k: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn contains(&self, v: usize) -> bool {
        self.j == v || self.k == v
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.j, self.k)
    }
}

/// Every unordered pair of `1..=n` in lexicographic order.
pub fn all_pairs(n: usize) -> impl Iterator<Item = Pair> {
    (1..n).flat_map(move |j| (j + 1..=n).map(move |k| Pair { j, k }))
}

/// Which way around the ring a demand travels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arc {
    /// Avoids the edge between vertices `n` and `1`.
    Inner,
    /// Contains the edge between vertices `n` and `1`.
    Outer,
}

impl Arc {
    pub fn as_str(&self) -> &'static str {
        match self {
            Arc::Inner => "inner",
            Arc::Outer => "outer",
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `units` of the demand between `pair` carried on one arc of one ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RoutedDemand {
    pub pair: Pair,
    pub arc: Arc,
    pub units: u32,
}

impl RoutedDemand {
    pub fn new(pair: Pair, arc: Arc, units: u32) -> Self {
        RoutedDemand { pair, arc, units }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("ring size n = {0} is below the minimum of 2")]
    TooFewVertices(usize),
    #[error("capacity c must be at least 1")]
    ZeroCapacity,
    #[error("self-demand at vertex {0}")]
    SelfDemand(usize),
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("demand between {0} exceeds the representable range")]
    Overflow(Pair),
}

/// A ring grooming instance: ring size, per-edge capacity and a symmetric
/// traffic matrix with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    c: u32,
    // row-major n*n, 0-based internally
    d: Vec<u32>,
}

impl Instance {
    /// Builds an instance from demand triples. Repeated pairs accumulate.
    pub fn new<I>(n: usize, c: u32, demands: I) -> Result<Instance, InstanceError>
    where
        I: IntoIterator<Item = (usize, usize, u32)>,
    {
        let mut inst = Instance::empty(n, c)?;
        for (a, b, units) in demands {
            inst.add_demand(a, b, units)?;
        }
        Ok(inst)
    }

    /// An instance with no traffic.
    pub fn empty(n: usize, c: u32) -> Result<Instance, InstanceError> {
        if n < 2 {
            return Err(InstanceError::TooFewVertices(n));
        }
        if c == 0 {
            return Err(InstanceError::ZeroCapacity);
        }
        Ok(Instance {
            n,
            c,
            d: vec![0; n * n],
        })
    }

    pub(crate) fn add_demand(&mut self, a: usize, b: usize, units: u32) -> Result<(), InstanceError> {
        for v in [a, b] {
            if v == 0 || v > self.n {
                return Err(InstanceError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        let pair = Pair::new(a, b).ok_or(InstanceError::SelfDemand(a))?;
        let cur = self.demand(pair);
        let next = cur.checked_add(units).ok_or(InstanceError::Overflow(pair))?;
        self.set_demand(pair, next);
        Ok(())
    }

    pub(crate) fn set_demand(&mut self, pair: Pair, units: u32) {
        let (j, k) = (pair.j - 1, pair.k - 1);
        self.d[j * self.n + k] = units;
        self.d[k * self.n + j] = units;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn capacity(&self) -> u32 {
        self.c
    }

    pub fn demand(&self, pair: Pair) -> u32 {
        self.d[(pair.j - 1) * self.n + (pair.k - 1)]
    }

    /// Matrix entry `d[j][k]` with 1-based indices; the diagonal is zero.
    pub fn entry(&self, j: usize, k: usize) -> u32 {
        self.d[(j - 1) * self.n + (k - 1)]
    }

    /// Pairs with positive demand, lexicographically.
    pub fn demands(&self) -> impl Iterator<Item = (Pair, u32)> + '_ {
        all_pairs(self.n).filter_map(move |p| {
            let u = self.demand(p);
            (u > 0).then_some((p, u))
        })
    }

    /// Traffic terminating at vertex `v`, i.e. `sum_k d[v][k]`.
    pub fn terminating(&self, v: usize) -> u64 {
        let row = &self.d[(v - 1) * self.n..v * self.n];
        row.iter().map(|&u| u as u64).sum()
    }

    /// Largest off-diagonal demand.
    pub fn max_demand(&self) -> u32 {
        all_pairs(self.n).map(|p| self.demand(p)).max().unwrap_or(0)
    }

    /// The common value when every off-diagonal demand is equal and positive.
    pub fn uniform_demand(&self) -> Option<u32> {
        let mut values = all_pairs(self.n).map(|p| self.demand(p));
        let first = values.next()?;
        (first > 0 && values.all(|u| u == first)).then_some(first)
    }

    /// A copy with the vertex labels rotated by one position (`v -> v + 1`).
    pub fn rotated(&self) -> Instance {
        let mut out = Instance::empty(self.n, self.c).expect("valid parameters");
        for (p, u) in self.demands() {
            let shift = |v: usize| v % self.n + 1;
            out.set_demand(Pair::new(shift(p.j), shift(p.k)).expect("distinct"), u);
        }
        out
    }
}

/// Sum of `d_jk` over `j < k`; an upper bound on the number of rings needed.
pub fn total_demand(inst: &Instance) -> u64 {
    inst.demands().map(|(_, u)| u as u64).sum()
}

/// One stacked ring: where its ADMs sit and what it carries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingPlan {
    pub adms: BTreeSet<usize>,
    pub routed: Vec<RoutedDemand>,
}

impl RingPlan {
    /// A plan whose ADMs are exactly the endpoints of the routed traffic.
    pub fn from_routed(routed: Vec<RoutedDemand>) -> RingPlan {
        let adms = routed
            .iter()
            .filter(|r| r.units > 0)
            .flat_map(|r| [r.pair.j, r.pair.k])
            .collect();
        RingPlan { adms, routed }.normalized()
    }

    /// Merges duplicate `(pair, arc)` entries, drops zero-unit entries and
    /// sorts the routing.
    pub fn normalized(&self) -> RingPlan {
        let mut merged: BTreeMap<(Pair, Arc), u64> = BTreeMap::new();
        for r in &self.routed {
            *merged.entry((r.pair, r.arc)).or_default() += r.units as u64;
        }
        let routed = merged
            .into_iter()
            .filter(|&(_, u)| u > 0)
            .map(|((pair, arc), u)| RoutedDemand::new(pair, arc, u.min(u32::MAX as u64) as u32))
            .collect();
        RingPlan {
            adms: self.adms.clone(),
            routed,
        }
    }

    /// Vertices at which some routed unit begins or ends.
    pub fn terminals(&self) -> BTreeSet<usize> {
        self.routed
            .iter()
            .filter(|r| r.units > 0)
            .flat_map(|r| [r.pair.j, r.pair.k])
            .collect()
    }

    /// Removes ADMs with no terminating traffic.
    pub fn drop_idle_adms(&mut self) {
        let live = self.terminals();
        self.adms.retain(|v| live.contains(v));
    }

    pub fn is_empty(&self) -> bool {
        self.routed.iter().all(|r| r.units == 0)
    }
}

/// A full grooming: the list of stacked rings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Solution {
    pub rings: Vec<RingPlan>,
}

impl Solution {
    pub fn new(rings: Vec<RingPlan>) -> Self {
        Solution { rings }
    }

    pub fn normalized(&self) -> Solution {
        Solution {
            rings: self.rings.iter().map(RingPlan::normalized).collect(),
        }
    }

    /// Units routed per pair, summed over rings and arcs.
    pub fn routed_per_pair(&self) -> BTreeMap<Pair, u64> {
        let mut out = BTreeMap::new();
        for ring in &self.rings {
            for r in &ring.routed {
                *out.entry(r.pair).or_insert(0) += r.units as u64;
            }
        }
        out
    }
}

/// The objective: total number of ADMs over all rings.
pub fn adm_count(sol: &Solution) -> u64 {
    sol.rings.iter().map(|r| r.adms.len() as u64).sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BinPackingError {
    #[error("bin size must be at least 1")]
    ZeroBinSize,
    #[error("at least one item is required")]
    NoItems,
    #[error("item {index} has size {size}, outside 1..={bin_size}")]
    BadItem { index: usize, size: u32, bin_size: u32 },
}

/// A bin packing instance: bin size and item sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinPackingInstance {
    bin_size: u32,
    items: Vec<u32>,
}

impl BinPackingInstance {
    pub fn new(bin_size: u32, items: Vec<u32>) -> Result<Self, BinPackingError> {
        if bin_size == 0 {
            return Err(BinPackingError::ZeroBinSize);
        }
        if items.is_empty() {
            return Err(BinPackingError::NoItems);
        }
        if let Some((index, &size)) = items
            .iter()
            .enumerate()
            .find(|&(_, &a)| a == 0 || a > bin_size)
        {
            return Err(BinPackingError::BadItem {
                index,
                size,
                bin_size,
            });
        }
        Ok(BinPackingInstance { bin_size, items })
    }

    pub fn bin_size(&self) -> u32 {
        self.bin_size
    }

    pub fn items(&self) -> &[u32] {
        &self.items
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn nine_vertex() -> Instance {
        Instance::new(
            9,
            1,
            [
                (1, 2, 1),
                (1, 3, 1),
                (2, 3, 1),
                (4, 5, 1),
                (4, 6, 1),
                (5, 6, 1),
                (7, 8, 1),
                (7, 9, 1),
                (8, 9, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn demands_accumulate_and_symmetrize() {
        let inst = Instance::new(4, 2, [(3, 1, 2), (1, 3, 1)]).unwrap();
        assert_eq!(inst.entry(1, 3), 3);
        assert_eq!(inst.entry(3, 1), 3);
        assert_eq!(inst.entry(2, 2), 0);
        assert_eq!(total_demand(&inst), 3);
    }

    #[test]
    fn invalid_instances_are_rejected() {
        assert_eq!(Instance::empty(1, 1), Err(InstanceError::TooFewVertices(1)));
        assert_eq!(Instance::empty(3, 0), Err(InstanceError::ZeroCapacity));
        assert_eq!(
            Instance::new(3, 1, [(2, 2, 1)]),
            Err(InstanceError::SelfDemand(2))
        );
        assert_eq!(
            Instance::new(3, 1, [(1, 4, 1)]),
            Err(InstanceError::VertexOutOfRange { vertex: 4, n: 3 })
        );
    }

    #[test]
    fn total_demand_examples() {
        assert_eq!(total_demand(&nine_vertex()), 9);
        assert_eq!(total_demand(&uniform_instance(4, 1, 2).unwrap()), 12);
        assert_eq!(total_demand(&Instance::empty(5, 3).unwrap()), 0);
    }

    #[test]
    fn uniform_detection() {
        assert_eq!(uniform_instance(5, 2, 3).unwrap().uniform_demand(), Some(3));
        assert_eq!(nine_vertex().uniform_demand(), None);
        assert_eq!(Instance::empty(2, 1).unwrap().uniform_demand(), None);
    }

    #[test]
    fn rotation_preserves_totals() {
        let inst = nine_vertex();
        let rot = inst.rotated();
        assert_eq!(total_demand(&rot), 9);
        assert_eq!(rot.entry(2, 3), 1);
        assert_eq!(rot.entry(1, 9), 1); // {8,9} -> {9,1}
    }

    #[test]
    fn bin_packing_validation() {
        assert!(BinPackingInstance::new(4, vec![2, 3, 3]).is_ok());
        assert_eq!(
            BinPackingInstance::new(4, vec![5]),
            Err(BinPackingError::BadItem {
                index: 0,
                size: 5,
                bin_size: 4
            })
        );
        assert_eq!(
            BinPackingInstance::new(4, vec![]),
            Err(BinPackingError::NoItems)
        );
    }

    #[test]
    fn ring_plan_normalization_merges_entries() {
        let p = Pair::new(1, 2).unwrap();
        let plan = RingPlan::from_routed(vec![
            RoutedDemand::new(p, Arc::Inner, 1),
            RoutedDemand::new(p, Arc::Inner, 2),
            RoutedDemand::new(p, Arc::Outer, 0),
        ]);
        assert_eq!(plan.routed, vec![RoutedDemand::new(p, Arc::Inner, 3)]);
        assert_eq!(plan.adms.iter().copied().collect::<Vec<_>>(), vec![1, 2]);
    }
}
