//! Shortest path over the demand lattice.
//!
//! States are vectors `0 <= u <= d` (one coordinate per pair with traffic),
//! encoded in mixed radix. An edge `u -> u + w` exists when the increment `w`
//! fits on one ring; its weight is the number of vertices touched by `w`'s
//! support. The search is A* with the remaining add/drop bound as heuristic
//! (consistent, since one ring moves at most `2c` units through a vertex).
//! Every ring of an optimal grooming can be applied in any order, so only
//! increments that advance the first unfinished coordinate are generated.
//! Feasibility is monotone: once a partial increment fails, larger values of
//! the same coordinate are skipped.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet};

use super::{Clock, ExactBudget, ExactError, ExactOutcome, Resource, RingOracle};
use crate::model::{Instance, Pair, RingPlan, Solution};
use crate::ringload::ring_fit_feasible_with;
use crate::ringload::FitBudget;

/// `prod (d_jk + 1)` over pairs with traffic, or `None` on overflow.
pub fn lattice_size(inst: &Instance) -> Option<u64> {
    inst.demands()
        .try_fold(1u64, |acc, (_, u)| acc.checked_mul(u as u64 + 1))
}

pub fn prop2_solve(inst: &Instance) -> Result<ExactOutcome, ExactError> {
    prop2_solve_with(inst, &ExactBudget::default())
}

pub fn prop2_solve_with(inst: &Instance, budget: &ExactBudget) -> Result<ExactOutcome, ExactError> {
    let size = lattice_size(inst).unwrap_or(u64::MAX);
    if size > budget.max_lattice {
        return Err(ExactError::BudgetExceeded {
            resource: Resource::Lattice,
            limit: budget.max_lattice,
        });
    }
    Lattice::new(inst, budget).run()
}

struct Lattice<'a> {
    inst: &'a Instance,
    pairs: Vec<Pair>,
    demand: Vec<u32>,
    radix: Vec<u64>,
    two_c: u64,
    oracle: RingOracle,
    // feasibility by encoded increment
    fits: HashMap<u64, bool>,
    clock: Clock,
    fit_nodes: u64,
}

impl<'a> Lattice<'a> {
    fn new(inst: &'a Instance, budget: &ExactBudget) -> Self {
        let (pairs, demand): (Vec<Pair>, Vec<u32>) = inst.demands().unzip();
        let mut radix = Vec::with_capacity(demand.len());
        let mut acc = 1u64;
        for &d in &demand {
            radix.push(acc);
            acc *= d as u64 + 1;
        }
        Lattice {
            inst,
            pairs,
            demand,
            radix,
            two_c: 2 * inst.capacity() as u64,
            oracle: RingOracle::new(inst.n(), inst.capacity(), budget.fit_nodes),
            fits: HashMap::new(),
            clock: Clock::new(budget),
            fit_nodes: budget.fit_nodes,
        }
    }

    fn decode(&self, mut idx: u64) -> Vec<u32> {
        self.demand
            .iter()
            .map(|&d| {
                let base = d as u64 + 1;
                let x = (idx % base) as u32;
                idx /= base;
                x
            })
            .collect()
    }

    fn encode(&self, v: &[u32]) -> u64 {
        v.iter().zip(&self.radix).map(|(&x, &r)| x as u64 * r).sum()
    }

    /// Remaining add/drop bound at state `u`.
    fn heuristic(&self, u: &[u32]) -> u64 {
        let mut rem = vec![0u64; self.inst.n() + 1];
        for ((p, &d), &x) in self.pairs.iter().zip(&self.demand).zip(u) {
            let left = (d - x) as u64;
            rem[p.j()] += left;
            rem[p.k()] += left;
        }
        rem.iter().map(|&r| r.div_ceil(self.two_c)).sum()
    }

    fn weight(&self, inc: &[u32]) -> u64 {
        let mut mask = 0u128;
        for (p, &x) in self.pairs.iter().zip(inc) {
            if x > 0 {
                mask |= 1 << p.j() | 1 << p.k();
            }
        }
        mask.count_ones() as u64
    }

    fn ring_of(&self, inc: &[u32]) -> BTreeMap<Pair, u32> {
        self.pairs
            .iter()
            .zip(inc)
            .filter(|&(_, &x)| x > 0)
            .map(|(&p, &x)| (p, x))
            .collect()
    }

    fn fits_on_ring(&mut self, inc: &[u32]) -> Result<bool, ExactError> {
        let key = self.encode(inc);
        if let Some(&hit) = self.fits.get(&key) {
            return Ok(hit);
        }
        let ok = self.oracle.feasible(&self.ring_of(inc))?;
        self.fits.insert(key, ok);
        Ok(ok)
    }

    /// Feasible increments from `u` that advance coordinate `first`.
    fn increments(&mut self, u: &[u32], first: usize) -> Result<Vec<Vec<u32>>, ExactError> {
        let mut out = Vec::new();
        let mut inc = vec![0u32; u.len()];
        self.extend(u, first, first, &mut inc, &mut out)?;
        Ok(out)
    }

    fn extend(
        &mut self,
        u: &[u32],
        first: usize,
        coord: usize,
        inc: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) -> Result<(), ExactError> {
        if coord == u.len() {
            out.push(inc.clone());
            return Ok(());
        }
        let room = self.demand[coord] - u[coord];
        let start = u32::from(coord == first);
        for x in start..=room {
            inc[coord] = x;
            if x > 0 && !self.fits_on_ring(inc)? {
                break;
            }
            self.extend(u, first, coord + 1, inc, out)?;
        }
        inc[coord] = 0;
        Ok(())
    }

    fn run(mut self) -> Result<ExactOutcome, ExactError> {
        let start = 0u64;
        let goal = self.encode(&self.demand.clone());
        let mut dist: HashMap<u64, u64> = HashMap::from([(start, 0)]);
        let mut parent: HashMap<u64, u64> = HashMap::new();
        let mut closed: HashSet<u64> = HashSet::new();
        // ties on f go to the deeper state first
        let mut heap = BinaryHeap::from([Reverse((self.heuristic(&self.decode(start)), Reverse(0u64), start))]);

        while let Some(Reverse((_, Reverse(g), state))) = heap.pop() {
            if !closed.insert(state) {
                continue;
            }
            if state == goal {
                let solution = self.witness(&parent, goal);
                return Ok(ExactOutcome {
                    optimum: g,
                    solution,
                    nodes: self.clock.nodes(),
                });
            }
            self.clock.tick()?;
            let u = self.decode(state);
            let first = (0..u.len())
                .find(|&i| u[i] < self.demand[i])
                .expect("non-goal state has an unfinished coordinate");
            for inc in self.increments(&u, first)? {
                let next: Vec<u32> = u.iter().zip(&inc).map(|(a, b)| a + b).collect();
                let idx = self.encode(&next);
                let cost = g + self.weight(&inc);
                if dist.get(&idx).is_none_or(|&old| cost < old) {
                    dist.insert(idx, cost);
                    parent.insert(idx, state);
                    heap.push(Reverse((cost + self.heuristic(&next), Reverse(cost), idx)));
                }
            }
        }
        unreachable!("single-pair rings always reach the goal")
    }

    fn witness(&self, parent: &HashMap<u64, u64>, goal: u64) -> Solution {
        let mut rings = Vec::new();
        let mut cur = goal;
        while let Some(&prev) = parent.get(&cur) {
            let (a, b) = (self.decode(prev), self.decode(cur));
            let inc: Vec<u32> = b.iter().zip(&a).map(|(x, y)| x - y).collect();
            let routed = ring_fit_feasible_with(
                self.inst.n(),
                self.inst.capacity(),
                &self.ring_of(&inc),
                FitBudget { max_nodes: self.fit_nodes },
            )
            .ok()
            .flatten()
            .expect("increments on the path were checked feasible");
            rings.push(RingPlan::from_routed(routed));
            cur = prev;
        }
        rings.reverse();
        Solution::new(rings)
    }
}
