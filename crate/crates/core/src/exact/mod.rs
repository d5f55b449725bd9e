//! Exact optimum for small instances by two unrelated methods.
//!
//! [`prop2_solve`] runs a shortest-path search over the lattice of partially
//! served demand vectors; every edge is one ring, weighted by the number of
//! vertices its traffic touches. [`oracle_optimum`] assigns demand units to
//! rings one at a time with branch and bound. Both check each candidate ring
//! with the exact single-ring feasibility test.

mod lattice;
mod oracle;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

pub use lattice::{lattice_size, prop2_solve, prop2_solve_with};
pub use oracle::{oracle_optimum, oracle_optimum_with};

use crate::model::{Pair, Solution};
use crate::ringload::{ring_fit_feasible_with, FitBudget, FitError};

/// Resource caps. Exceeding any of them aborts with
/// [`ExactError::BudgetExceeded`]; no partial answer is returned.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactBudget {
    /// Largest lattice `prod (d_jk + 1)` the shortest-path solver accepts.
    pub max_lattice: u64,
    /// Search nodes (lattice expansions or oracle branches).
    pub max_nodes: u64,
    /// Oracle only: total demand units.
    pub max_total_demand: u64,
    /// Oracle only: number of vertices.
    pub max_n: usize,
    pub time_limit: Option<Duration>,
    /// Node cap for each single-ring feasibility check.
    pub fit_nodes: u64,
}

impl Default for ExactBudget {
    fn default() -> Self {
        ExactBudget {
            max_lattice: 1 << 22,
            max_nodes: 20_000_000,
            max_total_demand: 10,
            max_n: 9,
            time_limit: Some(Duration::from_secs(60)),
            fit_nodes: FitBudget::default().max_nodes,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resource {
    Lattice,
    Nodes,
    TotalDemand,
    Vertices,
    /// Milliseconds.
    Time,
    RingFit,
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Resource::Lattice => "lattice size",
            Resource::Nodes => "search nodes",
            Resource::TotalDemand => "total demand",
            Resource::Vertices => "vertex count",
            Resource::Time => "time limit (ms)",
            Resource::RingFit => "ring feasibility nodes",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("budget exceeded: {resource} over {limit}")]
    BudgetExceeded { resource: Resource, limit: u64 },
}

/// An optimum with a witness and the amount of search spent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactOutcome {
    pub optimum: u64,
    pub solution: Solution,
    pub nodes: u64,
}

pub(crate) struct Clock {
    start: Instant,
    limit: Option<Duration>,
    nodes: u64,
    max_nodes: u64,
}

impl Clock {
    pub(crate) fn new(budget: &ExactBudget) -> Self {
        Clock {
            start: Instant::now(),
            limit: budget.time_limit,
            nodes: 0,
            max_nodes: budget.max_nodes,
        }
    }

    pub(crate) fn tick(&mut self) -> Result<(), ExactError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(ExactError::BudgetExceeded {
                resource: Resource::Nodes,
                limit: self.max_nodes,
            });
        }
        if let Some(limit) = self.limit {
            if self.nodes % 256 == 0 && self.start.elapsed() > limit {
                return Err(ExactError::BudgetExceeded {
                    resource: Resource::Time,
                    limit: limit.as_millis() as u64,
                });
            }
        }
        Ok(())
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes
    }
}

/// Memoized single-ring feasibility.
pub(crate) struct RingOracle {
    n: usize,
    c: u32,
    budget: FitBudget,
    cache: HashMap<Vec<(Pair, u32)>, bool>,
}

impl RingOracle {
    pub(crate) fn new(n: usize, c: u32, fit_nodes: u64) -> Self {
        RingOracle {
            n,
            c,
            budget: FitBudget { max_nodes: fit_nodes },
            cache: HashMap::new(),
        }
    }

    pub(crate) fn feasible(&mut self, demands: &BTreeMap<Pair, u32>) -> Result<bool, ExactError> {
        let key: Vec<(Pair, u32)> = demands
            .iter()
            .filter(|&(_, &u)| u > 0)
            .map(|(&p, &u)| (p, u))
            .collect();
        if let Some(&hit) = self.cache.get(&key) {
            return Ok(hit);
        }
        let mut at = vec![0u64; self.n + 1];
        for &(p, u) in &key {
            at[p.j()] += u as u64;
            at[p.k()] += u as u64;
        }
        let ok = if at.iter().any(|&t| t > 2 * self.c as u64) {
            false
        } else {
            ring_fit_feasible_with(self.n, self.c, demands, self.budget)
                .map_err(|FitError::TooLarge { limit }| ExactError::BudgetExceeded {
                    resource: Resource::RingFit,
                    limit,
                })?
                .is_some()
        };
        self.cache.insert(key, ok);
        Ok(ok)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::best_lower_bound;
    use crate::fixtures;
    use crate::model::{
        adm_count, from_bin_packing, uniform_instance, verify_solution, BinPackingInstance,
        Instance,
    };

    fn both(inst: &Instance) -> u64 {
        let roomy = ExactBudget { max_total_demand: 40, ..ExactBudget::default() };
        let a = prop2_solve(inst).unwrap();
        let b = oracle_optimum_with(inst, &roomy).unwrap();
        assert_eq!(a.optimum, b.optimum, "{inst:?}");
        for out in [&a, &b] {
            assert!(verify_solution(inst, &out.solution).is_feasible());
            assert_eq!(adm_count(&out.solution), out.optimum);
            assert!(out.optimum >= best_lower_bound(inst).best_integer);
        }
        a.optimum
    }

    #[test]
    fn nine_vertex_instance() {
        assert_eq!(both(&fixtures::nine_vertex_instance()), 9);
    }

    #[test]
    fn small_uniform() {
        assert_eq!(both(&uniform_instance(2, 1, 2).unwrap()), 2);
        assert_eq!(both(&uniform_instance(3, 1, 1).unwrap()), 3);
        assert_eq!(both(&uniform_instance(4, 1, 1).unwrap()), 8);
    }

    #[test]
    fn bin_packing_reduction() {
        let bp = BinPackingInstance::new(4, vec![2, 3, 3]).unwrap();
        assert_eq!(both(&from_bin_packing(&bp)), 6);
    }

    #[test]
    fn empty_instance() {
        let inst = Instance::empty(4, 2).unwrap();
        assert_eq!(both(&inst), 0);
    }

    #[test]
    fn rotation_invariance() {
        let inst = Instance::new(5, 2, [(1, 2, 2), (1, 4, 1), (3, 5, 3), (2, 5, 1)]).unwrap();
        assert_eq!(both(&inst), both(&inst.rotated()));
    }

    #[test]
    fn adding_a_pair_costs_at_most_two_per_ring() {
        let base = Instance::new(5, 2, [(1, 2, 2), (2, 3, 1), (4, 5, 2)]).unwrap();
        let grown = Instance::new(5, 2, [(1, 2, 2), (2, 3, 1), (4, 5, 2), (1, 4, 5)]).unwrap();
        assert!(both(&grown) <= both(&base) + 2 * 5u64.div_ceil(4));
    }

    #[test]
    fn budgets_abort_cleanly() {
        let inst = uniform_instance(6, 3, 3).unwrap();
        let tight = ExactBudget { max_lattice: 1000, ..ExactBudget::default() };
        assert!(matches!(
            prop2_solve_with(&inst, &tight),
            Err(ExactError::BudgetExceeded { resource: Resource::Lattice, .. })
        ));
        assert!(matches!(
            oracle_optimum(&inst),
            Err(ExactError::BudgetExceeded { resource: Resource::TotalDemand, .. })
        ));
        let few_nodes = ExactBudget { max_nodes: 3, ..ExactBudget::default() };
        assert!(matches!(
            oracle_optimum_with(&fixtures::nine_vertex_instance(), &few_nodes),
            Err(ExactError::BudgetExceeded { resource: Resource::Nodes, .. })
        ));
    }
}
