//! Lower bounds on the minimum number of ADMs.
//!
//! All values are exact: rationals for the LP bound and `K`, integers for the
//! per-vertex and remainder bounds, and [`Surd`]s (`q * sqrt(r)`) for the
//! bandwidth-based uniform and quasi-uniform bounds.

use num_traits::Zero;

use crate::model::{all_pairs, Instance, Pair};
use crate::numeric::Surd;
use crate::Rational;

/// LP relaxation value `sum_{j,k} d_jk / 2c` over ordered pairs.
pub fn lp_bound(inst: &Instance) -> Rational {
    let n = inst.n();
    let ordered: u64 = (1..=n)
        .flat_map(|j| (1..=n).map(move |k| (j, k)))
        .map(|(j, k)| inst.entry(j, k) as u64)
        .sum();
    Rational::new(ordered as i128, 2 * inst.capacity() as i128)
}

/// `sum_j ceil(t_j / 2c)` where `t_j` is the traffic terminating at `j`.
pub fn add_drop_bound(inst: &Instance) -> u64 {
    let two_c = 2 * inst.capacity() as u64;
    (1..=inst.n()).map(|v| inst.terminating(v).div_ceil(two_c)).sum()
}

/// One row of the remainder ordering: a pair with `d = c q + r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RemainderTerm {
    pub pair: Pair,
    pub demand: u64,
    pub quotient: u64,
    pub remainder: u64,
}

/// Intermediate quantities of the remainder bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop3Trace {
    /// Pairs sorted by remainder (descending), ties by larger demand.
    pub terms: Vec<RemainderTerm>,
    /// Smallest number of leading remainder terms closing the gap.
    pub p: u64,
    pub quotient_sum: u64,
}

impl Prop3Trace {
    pub fn bound(&self) -> u64 {
        self.p + self.quotient_sum
    }
}

/// Runs the remainder-ordering procedure: split every `d_jk = c q + r`, sort by
/// `r` descending and find the smallest `P >= 0` with
/// `sum c q + sum_{p <= P} (r_p + c) / 2 >= sum d`.
pub fn prop3_trace(inst: &Instance) -> Prop3Trace {
    let c = inst.capacity() as u64;
    let mut terms: Vec<RemainderTerm> = all_pairs(inst.n())
        .map(|pair| {
            let demand = inst.demand(pair) as u64;
            RemainderTerm {
                pair,
                demand,
                quotient: demand / c,
                remainder: demand % c,
            }
        })
        .collect();
    terms.sort_by(|a, b| {
        b.remainder
            .cmp(&a.remainder)
            .then(b.demand.cmp(&a.demand))
            .then(a.pair.cmp(&b.pair))
    });
    let quotient_sum: u64 = terms.iter().map(|t| t.quotient).sum();
    let demand_sum: u64 = terms.iter().map(|t| t.demand).sum();
    // doubled to stay in integers: 2c*sumQ + sum_{p<=P}(R_p + c) >= 2*sumD
    let mut lhs = 2 * c * quotient_sum;
    let rhs = 2 * demand_sum;
    let mut p = 0u64;
    for t in &terms {
        if lhs >= rhs {
            break;
        }
        lhs += t.remainder + c;
        p += 1;
    }
    Prop3Trace {
        terms,
        p,
        quotient_sum,
    }
}

/// The remainder bound `P + sum_p Q_p`.
pub fn prop3_bound(inst: &Instance) -> u64 {
    prop3_trace(inst).bound()
}

/// `(n^2 - 1) sqrt(d / 2c) / 4` for uniform demand `d`.
pub fn thm1_bound(n: usize, c: u32, d: u32) -> Surd {
    let n = n as i128;
    Surd::new(
        Rational::new(n * n - 1, 4),
        Rational::new(d as i128, 2 * c as i128),
    )
}

/// `(n^2 - 1) sqrt(d_max / 2cK) / 4` for `K`-quasi-uniform traffic.
pub fn cor1_bound(n: usize, c: u32, d_max: u32, k: Rational) -> Surd {
    assert!(k >= Rational::from_integer(1), "K must be at least 1");
    let n = n as i128;
    Surd::new(
        Rational::new(n * n - 1, 4),
        Rational::new(d_max as i128, 2 * c as i128) / k,
    )
}

/// `max / min` of the off-diagonal demands, or `None` when some pair has no
/// traffic.
pub fn detect_k(inst: &Instance) -> Option<Rational> {
    let mut lo = u32::MAX;
    let mut hi = 0;
    for p in all_pairs(inst.n()) {
        let u = inst.demand(p);
        if u == 0 {
            return None;
        }
        lo = lo.min(u);
        hi = hi.max(u);
    }
    Some(Rational::new(hi as i128, lo as i128))
}

/// Every applicable bound for one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub lp: Rational,
    pub add_drop: u64,
    pub prop3: u64,
    /// Present for uniform traffic.
    pub thm1: Option<Surd>,
    /// Present for quasi-uniform traffic (uses the largest demand and `K`).
    pub cor1: Option<Surd>,
    pub k_detected: Option<Rational>,
    /// Largest integer implied by any of the above.
    pub best_integer: u64,
}

impl BoundReport {
    pub fn lp_ceil(&self) -> u64 {
        self.lp.ceil().to_integer() as u64
    }
}

pub fn best_lower_bound(inst: &Instance) -> BoundReport {
    let lp = lp_bound(inst);
    let add_drop = add_drop_bound(inst);
    let prop3 = prop3_bound(inst);
    let k_detected = detect_k(inst);
    let thm1 = inst
        .uniform_demand()
        .map(|d| thm1_bound(inst.n(), inst.capacity(), d));
    let cor1 = k_detected.map(|k| cor1_bound(inst.n(), inst.capacity(), inst.max_demand(), k));
    let best_integer = [
        if lp.is_zero() { 0 } else { lp.ceil().to_integer() as u64 },
        add_drop,
        prop3,
        thm1.map_or(0, |s| s.ceil()),
        cor1.map_or(0, |s| s.ceil()),
    ]
    .into_iter()
    .max()
    .unwrap_or(0);
    BoundReport {
        lp,
        add_drop,
        prop3,
        thm1,
        cor1,
        k_detected,
        best_integer,
    }
}
