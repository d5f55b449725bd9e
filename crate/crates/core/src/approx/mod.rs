//! Covering-design approximation for uniform and quasi-uniform traffic.
//!
//! With `f = d / 2c >= 1` every pair gets `ceil(f)` private two-ADM rings.
//! Otherwise the vertices are covered by blocks of size
//! `M = floor(sqrt(2/f))` (clamped to `2..=n`); each block becomes one ring
//! carrying, with the half-and-half routing, those pairs of the block that no
//! earlier block has taken.

mod design;
mod quasi;

use std::collections::BTreeSet;

use num_traits::Zero;
use thiserror::Error;

pub use design::{covering_design, CoveringDesign, DesignError};
pub use quasi::algorithm_a_quasi;

use crate::bounds::best_lower_bound;
use crate::model::{
    adm_count, all_pairs, uniform_instance, verify_solution, GenerateError, Instance, Pair,
    RingPlan, Solution, Violation,
};
use crate::numeric::{floor_sqrt_ratio, Surd};
use crate::ringload::lemma1_route;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApproxError {
    #[error(transparent)]
    Parameters(#[from] GenerateError),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error("design is on {design} points but the instance has {n}")]
    DesignSize { design: usize, n: usize },
    #[error("instance is not quasi-uniform: some pair has no demand")]
    NotQuasiUniform,
    #[error("constructed solution is infeasible: {0}")]
    Infeasible(Violation),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatioError {
    #[error("solution is infeasible: {0}")]
    Infeasible(Violation),
    #[error("lower bound is zero")]
    ZeroBound,
}

/// Block size `floor(sqrt(2/f))` clamped to `2..=n`.
pub fn compute_m(n: usize, f: Rational) -> usize {
    assert!(f > Rational::zero(), "f must be positive");
    // 2/f = 2 * den / num
    let m = floor_sqrt_ratio(2 * *f.denom() as u128, *f.numer() as u128) as usize;
    m.clamp(2, n.max(2))
}

/// `f = d / 2c`.
pub fn load_factor(c: u32, d: u32) -> Rational {
    Rational::new(d as i128, 2 * c as i128)
}

/// Runs the approximation on uniform traffic `d` with the built-in covering.
pub fn algorithm_a(n: usize, c: u32, d: u32) -> Result<Solution, ApproxError> {
    algorithm_a_with(n, c, d, None)
}

/// As [`algorithm_a`], optionally with a caller-supplied covering design for
/// the `f < 1` branch.
pub fn algorithm_a_with(
    n: usize,
    c: u32,
    d: u32,
    design: Option<&CoveringDesign>,
) -> Result<Solution, ApproxError> {
    let uniform = uniform_instance(n, c, d)?;
    let f = load_factor(c, d);
    let sol = if f >= Rational::from_integer(1) {
        dedicated_rings(n, c, d)
    } else {
        let built;
        let design = match design {
            Some(given) if given.n() != n => {
                return Err(ApproxError::DesignSize { design: given.n(), n })
            }
            Some(given) => given,
            None => {
                built = covering_design(n, compute_m(n, f))?;
                &built
            }
        };
        block_rings(n, d, design)
    };
    ensure_feasible(&uniform, &sol)?;
    Ok(sol)
}

/// `ceil(f)` two-ADM rings per pair, splitting `d` as evenly as possible.
fn dedicated_rings(n: usize, c: u32, d: u32) -> Solution {
    let copies = d.div_ceil(2 * c);
    let mut rings = Vec::new();
    for p in all_pairs(n) {
        for i in 0..copies {
            let units = d / copies + u32::from(i < d % copies);
            rings.push(RingPlan::from_routed(lemma1_route(units, &[p.j(), p.k()], n)));
        }
    }
    Solution::new(rings)
}

fn block_rings(n: usize, d: u32, design: &CoveringDesign) -> Solution {
    let mut blocks = design.blocks().to_vec();
    blocks.sort();
    let mut done: BTreeSet<Pair> = BTreeSet::new();
    let mut rings = Vec::new();
    for block in &blocks {
        let routed: Vec<_> = lemma1_route(d, block, n)
            .into_iter()
            .filter(|r| !done.contains(&r.pair))
            .collect();
        if routed.is_empty() {
            continue;
        }
        done.extend(routed.iter().map(|r| r.pair));
        rings.push(RingPlan::from_routed(routed));
    }
    Solution::new(rings)
}

fn ensure_feasible(inst: &Instance, sol: &Solution) -> Result<(), ApproxError> {
    match verify_solution(inst, sol).violations.into_iter().next() {
        Some(v) => Err(ApproxError::Infeasible(v)),
        None => Ok(()),
    }
}

/// `adm_count / ceil(best lower bound)` for a feasible solution.
pub fn ratio_report(inst: &Instance, sol: &Solution) -> Result<Rational, RatioError> {
    if let Some(v) = verify_solution(inst, sol).violations.into_iter().next() {
        return Err(RatioError::Infeasible(v));
    }
    let bound = best_lower_bound(inst).best_integer;
    if bound == 0 {
        return Err(RatioError::ZeroBound);
    }
    Ok(Rational::new(adm_count(sol) as i128, bound as i128))
}

/// `12 sqrt 2`, the guarantee for uniform traffic.
pub fn uniform_ratio_limit() -> Surd {
    Surd::new(Rational::from_integer(12), Rational::from_integer(2))
}

/// `max(2K, 12 sqrt(2K))`, the guarantee for `K`-quasi-uniform traffic.
pub fn quasi_ratio_limit(k: Rational) -> Surd {
    let linear = Surd::from_rational(k * Rational::from_integer(2));
    let root = Surd::new(Rational::from_integer(12), k * Rational::from_integer(2));
    linear.max(root)
}

/// `value <= limit`, decided exactly.
pub fn within(value: Rational, limit: Surd) -> bool {
    Surd::from_rational(value) <= limit
}
