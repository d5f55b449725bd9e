//! Bundled reference data: the nine-vertex comparison instance with its two
//! hand-built solutions, and a (15,3,2) covering design.

use crate::approx::CoveringDesign;
use crate::model::{parse_instance, parse_solution, Instance, Solution};

pub const NINE_VERTEX_INSTANCE: &str = include_str!("../fixtures/nine_vertex.instance");
pub const NINE_VERTEX_NINE_ADM_SOLUTION: &str = include_str!("../fixtures/nine_vertex_nine_adm.solution");
pub const NINE_VERTEX_RING_LOADING_SOLUTION: &str =
    include_str!("../fixtures/nine_vertex_ring_loading.solution");
pub const KIRKMAN15_BLOCKS: &str = include_str!("../fixtures/kirkman15.blocks");

/// `n = 9`, `c = 1`, unit demands inside each of the triangles
/// `{1,2,3}`, `{4,5,6}`, `{7,8,9}`.
pub fn nine_vertex_instance() -> Instance {
    parse_instance(NINE_VERTEX_INSTANCE).expect("bundled instance parses")
}

/// Three triangle rings, nine ADMs, 27 units of bandwidth.
pub fn nine_vertex_nine_adm_solution() -> Solution {
    parse_solution(NINE_VERTEX_NINE_ADM_SOLUTION).expect("bundled solution parses")
}

/// Two rings with shortest-path routing: fifteen ADMs, 12 units of bandwidth.
pub fn nine_vertex_ring_loading_solution() -> Solution {
    parse_solution(NINE_VERTEX_RING_LOADING_SOLUTION).expect("bundled solution parses")
}

/// The 35 triples of a Kirkman arrangement on 15 points.
pub fn kirkman15_design() -> CoveringDesign {
    CoveringDesign::parse(15, KIRKMAN15_BLOCKS).expect("bundled design is a covering")
}
