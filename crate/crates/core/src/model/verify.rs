use std::fmt;

use super::{all_pairs, Instance, Pair, Solution};
use crate::ringload::edge_loads;

/// A broken constraint. Ring numbers are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Routed units for a pair differ from its demand.
    Coverage { pair: Pair, required: u64, routed: u64 },
    /// An edge of a ring carries more than `c`.
    Capacity { ring: usize, edge: usize, load: u64, capacity: u32 },
    /// Traffic terminates at a vertex with no ADM on that ring.
    MissingAdm { ring: usize, vertex: usize },
    /// A vertex index outside `1..=n`.
    OutOfRange { ring: usize, vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Coverage { pair, required, routed } => {
                write!(f, "pair {pair}: demand {required} but {routed} routed")
            }
            Violation::Capacity { ring, edge, load, capacity } => {
                write!(f, "ring {ring}, edge {edge}: load {load} exceeds capacity {capacity}")
            }
            Violation::MissingAdm { ring, vertex } => {
                write!(f, "ring {ring}: traffic terminates at vertex {vertex} without an ADM")
            }
            Violation::OutOfRange { ring, vertex } => {
                write!(f, "ring {ring}: vertex {vertex} is not on the ring")
            }
        }
    }
}

/// Non-fatal findings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Warning {
    IdleAdm { ring: usize, vertex: usize },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::IdleAdm { ring, vertex } => {
                write!(f, "ring {ring}: ADM at vertex {vertex} carries no traffic")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl VerificationReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks demand coverage, per-ring edge capacity and ADM placement.
/// Idle ADMs are reported as warnings only.
pub fn verify_solution(inst: &Instance, sol: &Solution) -> VerificationReport {
    let n = inst.n();
    let mut report = VerificationReport::default();

    for (idx, ring) in sol.rings.iter().enumerate() {
        let ring_no = idx + 1;
        let mut in_range = true;
        for &v in &ring.adms {
            if !(1..=n).contains(&v) {
                report.violations.push(Violation::OutOfRange { ring: ring_no, vertex: v });
            }
        }
        for r in &ring.routed {
            if r.pair.k() > n {
                report.violations.push(Violation::OutOfRange {
                    ring: ring_no,
                    vertex: r.pair.k(),
                });
                in_range = false;
            }
        }
        if in_range {
            let loads = edge_loads(n, &ring.routed);
            for (e, &load) in loads.as_slice().iter().enumerate() {
                if load > inst.capacity() as u64 {
                    report.violations.push(Violation::Capacity {
                        ring: ring_no,
                        edge: e + 1,
                        load,
                        capacity: inst.capacity(),
                    });
                }
            }
        }
        let terminals = ring.terminals();
        for &v in terminals.difference(&ring.adms) {
            if v <= n {
                report.violations.push(Violation::MissingAdm { ring: ring_no, vertex: v });
            }
        }
        for &v in ring.adms.difference(&terminals) {
            if (1..=n).contains(&v) {
                report.warnings.push(Warning::IdleAdm { ring: ring_no, vertex: v });
            }
        }
    }

    let routed = sol.routed_per_pair();
    for p in all_pairs(n) {
        let required = inst.demand(p) as u64;
        let got = routed.get(&p).copied().unwrap_or(0);
        if required != got {
            report.violations.push(Violation::Coverage {
                pair: p,
                required,
                routed: got,
            });
        }
    }
    report
}
