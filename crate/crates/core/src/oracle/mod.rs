//! Brute-force oracles: a radial finite-element solver for the layered
//! sphere, a grid scan of the bound objective and quadrature of moments.

mod radial;
mod scan;

pub use radial::{
    compare_fields, richardson, richardson_with, sampled_moment, solve_radial_bvp, solve_radial_bvp_with, trace_convergence,
    FieldSample, RadialGrid, RadialSolution, Richardson, TraceConvergence, MIN_GRID_NODES,
};
pub use scan::{interval_scan_min, scan_resolution};
