//! Optimal lower bounds on the hydrostatic stress moments of each phase and
//! on the maximum hydrostatic stress over the composite.
//!
//! Every bound is the minimum of `sqrt(3) |(sigma0 - D) t + D|` over the
//! interval of admissible compliance variables `t` (`X` for phase 2, `Y` for
//! phase 1) implied by the Hashin-Shtrikman bulk bounds. The minimum is
//! evaluated in closed form. None of the bounds depend on the exponent `p`.

mod constants;
mod minimize;
mod regime;

pub use constants::{
    characteristic_constants, compliance_interval, compliance_to_x, compliance_to_y, hs_bulk_moduli,
    thermal_stress_scale, BoundConstants, ComplianceInterval, HsBulkModuli, RatioKind,
};
pub use minimize::{
    affine_abs_min, affine_objective, max_field_lower_bound, phase_moment_lower_bound, AbsMin, BoundBranch,
    BoundResult, Endpoint, MicrostructureDescriptor, MicrostructureKind,
};
pub use regime::{bound_scale, regime_table, BoundTarget, RegimeRow, RegimeTable};

pub(crate) use constants::hs_bulk;
pub(crate) use minimize::SQRT_3;
