//! Ring grooming: placing add/drop multiplexers (ADMs) on stacked
//! bidirectional rings so that every demand is carried, each ring respects
//! its per-edge capacity, and the total ADM count is as small as possible.
//!
//! * [`model`]: instances, solutions, file formats, generators, verification.
//! * [`ringload`]: ring geometry, edge loads, exact single-ring feasibility
//!   and the half-and-half uniform router.
//! * [`bounds`]: lower bounds on the optimal ADM count.
//! * [`approx`]: covering-design approximation for (quasi-)uniform traffic.
//! * [`exact`]: two independent exact solvers for small instances.
//! * [`ilp`]: the integer program, LP-format export and assignment checking.

pub mod approx;
pub mod bounds;
pub mod exact;
pub mod fixtures;
pub mod ilp;
pub mod model;
pub mod numeric;
pub mod ringload;

/// Exact rational used for bounds and ratios.
pub type Rational = num_rational::Ratio<i128>;

pub use approx::{algorithm_a, algorithm_a_quasi, covering_design, CoveringDesign};
pub use bounds::{best_lower_bound, BoundReport};
pub use exact::{oracle_optimum, prop2_solve, ExactBudget, ExactError};
pub use model::{
    adm_count, total_demand, verify_solution, Arc, Instance, Pair, RingPlan, RoutedDemand,
    Solution,
};
pub use numeric::Surd;
