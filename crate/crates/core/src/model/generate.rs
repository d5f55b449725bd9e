use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{all_pairs, BinPackingInstance, Instance, InstanceError, Pair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("uniform demand must be at least 1")]
    ZeroDemand,
    #[error("quasi-uniformity ratio K = {0} must be at least 1")]
    BadRatio(Ratio<u64>),
    #[error("smallest admissible demand ceil(d_max / K) is below 1")]
    EmptyRange,
}

/// Every off-diagonal demand equal to `d`.
pub fn uniform_instance(n: usize, c: u32, d: u32) -> Result<Instance, GenerateError> {
    if d == 0 {
        return Err(GenerateError::ZeroDemand);
    }
    let mut inst = Instance::empty(n, c)?;
    for p in all_pairs(n) {
        inst.set_demand(p, d);
    }
    Ok(inst)
}

/// Random `K`-quasi-uniform traffic: each pair draws uniformly from
/// `ceil(d_max / K)..=d_max`, and the maximum is forced to equal `d_max`.
/// Deterministic for a given seed.
pub fn quasi_uniform_random(
    n: usize,
    c: u32,
    d_max: u32,
    k: Ratio<u64>,
    seed: u64,
) -> Result<Instance, GenerateError> {
    if d_max == 0 {
        return Err(GenerateError::ZeroDemand);
    }
    if k < Ratio::from_integer(1) {
        return Err(GenerateError::BadRatio(k));
    }
    let lo = (Ratio::from_integer(d_max as u64) / k).ceil().to_integer();
    if lo < 1 {
        return Err(GenerateError::EmptyRange);
    }
    let lo = lo as u32;
    let mut inst = Instance::empty(n, c)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<Pair> = all_pairs(n).collect();
    for &p in &pairs {
        inst.set_demand(p, rng.random_range(lo..=d_max));
    }
    if inst.max_demand() < d_max {
        let p = pairs[rng.random_range(0..pairs.len())];
        inst.set_demand(p, d_max);
    }
    Ok(inst)
}

/// The bin packing reduction: items become spokes to a hub vertex `N + 1`
/// carrying twice the item size, with capacity equal to the bin size.
pub fn from_bin_packing(bp: &BinPackingInstance) -> Instance {
    let hub = bp.items().len() + 1;
    let mut inst =
        Instance::empty(hub, bp.bin_size()).expect("bin packing instances have N >= 1, B >= 1");
    for (idx, &a) in bp.items().iter().enumerate() {
        inst.set_demand(Pair::new(idx + 1, hub).expect("distinct"), 2 * a);
    }
    inst
}
