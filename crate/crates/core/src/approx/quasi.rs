//! Quasi-uniform wrapper: solve the instance inflated to the largest demand,
//! then remove the surplus units.

use crate::bounds::detect_k;
use crate::model::{Arc, Instance, Solution};

use super::{algorithm_a_with, ensure_feasible, ApproxError, CoveringDesign};

/// Runs the uniform approximation at `d = max d_jk` and thins every pair back
/// to its true demand. Surplus is taken from the rings holding the fewest
/// units of that pair first, Outer units before Inner, so small holdings
/// vanish entirely. Idle ADMs and empty rings are then dropped.
pub fn algorithm_a_quasi(
    inst: &Instance,
    design: Option<&CoveringDesign>,
) -> Result<Solution, ApproxError> {
    detect_k(inst).ok_or(ApproxError::NotQuasiUniform)?;
    let d_max = inst.max_demand();
    let mut sol = algorithm_a_with(inst.n(), inst.capacity(), d_max, design)?;

    let per_pair = sol.routed_per_pair();
    for (pair, routed) in per_pair {
        let mut surplus = routed - inst.demand(pair) as u64;
        if surplus == 0 {
            continue;
        }
        let mut holders: Vec<(u64, usize)> = sol
            .rings
            .iter()
            .enumerate()
            .map(|(i, ring)| {
                let units = ring
                    .routed
                    .iter()
                    .filter(|r| r.pair == pair)
                    .map(|r| r.units as u64)
                    .sum::<u64>();
                (units, i)
            })
            .filter(|&(u, _)| u > 0)
            .collect();
        holders.sort();
        for (_, i) in holders {
            for arc in [Arc::Outer, Arc::Inner] {
                for r in sol.rings[i].routed.iter_mut() {
                    if r.pair == pair && r.arc == arc && surplus > 0 {
                        let take = surplus.min(r.units as u64);
                        r.units -= take as u32;
                        surplus -= take;
                    }
                }
            }
        }
    }

    for ring in &mut sol.rings {
        *ring = ring.normalized();
        ring.drop_idle_adms();
    }
    sol.rings.retain(|r| !r.is_empty());
    ensure_feasible(inst, &sol)?;
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{algorithm_a, quasi_ratio_limit, ratio_report, within};
    use crate::model::{adm_count, quasi_uniform_random, uniform_instance};
    use crate::Rational;

    #[test]
    fn uniform_input_is_unchanged() {
        for (n, c, d) in [(9, 4, 1), (6, 2, 5), (15, 1, 1)] {
            let inst = uniform_instance(n, c, d).unwrap();
            assert_eq!(algorithm_a_quasi(&inst, None).unwrap(), algorithm_a(n, c, d).unwrap());
        }
    }

    #[test]
    fn small_quasi_instance() {
        let inst = Instance::new(
            4,
            2,
            [(1, 2, 1), (1, 3, 2), (1, 4, 1), (2, 3, 2), (2, 4, 2), (3, 4, 1)],
        )
        .unwrap();
        let sol = algorithm_a_quasi(&inst, None).unwrap();
        let ratio = ratio_report(&inst, &sol).unwrap();
        assert!(within(ratio, quasi_ratio_limit(Rational::from_integer(2))));
        assert!(adm_count(&sol) <= adm_count(&algorithm_a(4, 2, 2).unwrap()));
    }

    #[test]
    fn thinning_can_empty_rings() {
        // f >= 1 branch: d_max = 4 with c = 1 gives two rings per pair; pairs
        // with demand 2 lose a whole ring
        let inst = Instance::new(3, 1, [(1, 2, 4), (1, 3, 2), (2, 3, 2)]).unwrap();
        let sol = algorithm_a_quasi(&inst, None).unwrap();
        assert_eq!(sol.rings.len(), 4);
        assert_eq!(adm_count(&sol), 8);
    }

    #[test]
    fn zero_demand_is_rejected() {
        let inst = Instance::new(3, 1, [(1, 2, 1), (1, 3, 1)]).unwrap();
        assert_eq!(algorithm_a_quasi(&inst, None), Err(ApproxError::NotQuasiUniform));
    }

    #[test]
    fn seeded_instances_stay_within_guarantee() {
        for seed in 0..20 {
            let k = Rational::from_integer(1 + (seed % 4) as i128);
            let kk = num_rational::Ratio::new(1 + seed % 4, 1);
            let inst = quasi_uniform_random(5 + (seed % 4) as usize, 3, 8, kk, seed).unwrap();
            let sol = algorithm_a_quasi(&inst, None).unwrap();
            let ratio = ratio_report(&inst, &sol).unwrap();
            assert!(within(ratio, quasi_ratio_limit(k)), "seed {seed}: {ratio}");
        }
    }
}
