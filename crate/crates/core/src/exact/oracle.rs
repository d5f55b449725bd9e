//! Reference solver: branch and bound over assignments of single demand units
//! to rings.
//!
//! Rings are interchangeable, so a unit may only open the next unused ring
//! index, and the units of one pair go to nondecreasing ring indices. A
//! partial assignment is cut off when its ADM count plus, per vertex, the
//! ADMs still needed for traffic that the existing ADMs there cannot absorb
//! (each ADM terminates at most `2c` units) cannot beat the incumbent.

use std::collections::BTreeMap;

use super::{Clock, ExactBudget, ExactError, ExactOutcome, Resource, RingOracle};
use crate::bounds::best_lower_bound;
use crate::model::{total_demand, Instance, Pair, RingPlan, Solution};
use crate::ringload::{ring_fit_feasible_with, FitBudget};

pub fn oracle_optimum(inst: &Instance) -> Result<ExactOutcome, ExactError> {
    oracle_optimum_with(inst, &ExactBudget::default())
}

pub fn oracle_optimum_with(inst: &Instance, budget: &ExactBudget) -> Result<ExactOutcome, ExactError> {
    if inst.n() > budget.max_n {
        return Err(ExactError::BudgetExceeded {
            resource: Resource::Vertices,
            limit: budget.max_n as u64,
        });
    }
    if total_demand(inst) > budget.max_total_demand {
        return Err(ExactError::BudgetExceeded {
            resource: Resource::TotalDemand,
            limit: budget.max_total_demand,
        });
    }
    let mut search = Search::new(inst, budget);
    search.dfs(0)?;
    let rings = search
        .best_rings
        .iter()
        .map(|demands| {
            let routed = ring_fit_feasible_with(
                inst.n(),
                inst.capacity(),
                demands,
                FitBudget { max_nodes: budget.fit_nodes },
            )
            .ok()
            .flatten()
            .expect("rings of the incumbent were checked feasible");
            RingPlan::from_routed(routed)
        })
        .collect();
    Ok(ExactOutcome {
        optimum: search.best,
        solution: Solution::new(rings),
        nodes: search.clock.nodes(),
    })
}

struct Ring {
    demands: BTreeMap<Pair, u32>,
    // per-vertex terminating units, 1-based
    at: Vec<u64>,
}

impl Ring {
    fn adms(&self) -> u64 {
        self.at.iter().filter(|&&t| t > 0).count() as u64
    }
}

struct Search {
    n: usize,
    two_c: u64,
    units: Vec<Pair>,
    placed: Vec<usize>,
    rings: Vec<Ring>,
    rem: Vec<u64>,
    cost: u64,
    best: u64,
    best_ring_count: usize,
    best_rings: Vec<BTreeMap<Pair, u32>>,
    floor: u64,
    oracle: RingOracle,
    clock: Clock,
}

impl Search {
    fn new(inst: &Instance, budget: &ExactBudget) -> Self {
        let n = inst.n();
        let units: Vec<Pair> = inst
            .demands()
            .flat_map(|(p, u)| std::iter::repeat_n(p, u as usize))
            .collect();
        let rem = (0..=n)
            .map(|v| if v == 0 { 0 } else { inst.terminating(v) })
            .collect();
        Search {
            n,
            two_c: 2 * inst.capacity() as u64,
            placed: vec![0; units.len()],
            units,
            rings: Vec::new(),
            rem,
            cost: 0,
            best: u64::MAX,
            best_ring_count: usize::MAX,
            best_rings: Vec::new(),
            floor: best_lower_bound(inst).best_integer,
            oracle: RingOracle::new(n, inst.capacity(), budget.fit_nodes),
            clock: Clock::new(budget),
        }
    }

    fn lower_bound(&self) -> u64 {
        let mut lb = self.cost;
        for v in 1..=self.n {
            let spare: u64 = self
                .rings
                .iter()
                .filter(|r| r.at[v] > 0)
                .map(|r| self.two_c - r.at[v])
                .sum();
            lb += self.rem[v].saturating_sub(spare).div_ceil(self.two_c);
        }
        lb
    }

    fn done(&self) -> bool {
        self.best == self.floor
    }

    fn dfs(&mut self, t: usize) -> Result<(), ExactError> {
        self.clock.tick()?;
        if t == self.units.len() {
            if self.cost < self.best
                || (self.cost == self.best && self.rings.len() < self.best_ring_count)
            {
                self.best = self.cost;
                self.best_ring_count = self.rings.len();
                self.best_rings = self.rings.iter().map(|r| r.demands.clone()).collect();
            }
            return Ok(());
        }
        let lb = self.lower_bound();
        if lb > self.best || (lb == self.best && self.rings.len() >= self.best_ring_count) {
            return Ok(());
        }
        let pair = self.units[t];
        let min_ring = if t > 0 && self.units[t - 1] == pair {
            self.placed[t - 1]
        } else {
            0
        };
        let mut order: Vec<(u64, usize)> = (min_ring..=self.rings.len())
            .map(|r| {
                let added = match self.rings.get(r) {
                    Some(ring) => u64::from(ring.at[pair.j()] == 0) + u64::from(ring.at[pair.k()] == 0),
                    None => 2,
                };
                (added, r)
            })
            .collect();
        order.sort();
        for (added, r) in order {
            if r == self.rings.len() {
                self.rings.push(Ring {
                    demands: BTreeMap::new(),
                    at: vec![0; self.n + 1],
                });
            }
            let ring = &mut self.rings[r];
            *ring.demands.entry(pair).or_default() += 1;
            ring.at[pair.j()] += 1;
            ring.at[pair.k()] += 1;
            let fits = ring.at[pair.j()] <= self.two_c
                && ring.at[pair.k()] <= self.two_c
                && self.oracle.feasible(&self.rings[r].demands)?;
            if fits {
                self.placed[t] = r;
                self.rem[pair.j()] -= 1;
                self.rem[pair.k()] -= 1;
                self.cost += added;
                let res = self.dfs(t + 1);
                self.cost -= added;
                self.rem[pair.j()] += 1;
                self.rem[pair.k()] += 1;
                res?;
            }
            let ring = &mut self.rings[r];
            let units = ring.demands.get_mut(&pair).expect("just added");
            *units -= 1;
            if *units == 0 {
                ring.demands.remove(&pair);
            }
            ring.at[pair.j()] -= 1;
            ring.at[pair.k()] -= 1;
            if ring.demands.is_empty() && r + 1 == self.rings.len() {
                self.rings.pop();
            }
            if self.done() {
                break;
            }
        }
        debug_assert!(self.rings.iter().all(|r| r.adms() > 0));
        Ok(())
    }
}
