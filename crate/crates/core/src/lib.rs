//! Optimal lower bounds on the moments of the local hydrostatic stress in
//! two-phase thermoelastic composites under hydrostatic load and a uniform
//! temperature change, the coated-sphere fields that attain them, and
//! numerical oracles that check those fields independently.
//!
//! ```
//! use hydrobound::{validate_composite, phase_moment_lower_bound, CompositeSpec, Loading, Phase, PhaseProperties};
//!
//! let composite = validate_composite(&CompositeSpec::new(
//!     PhaseProperties::new(2.0, 1.0, 0.0),
//!     PhaseProperties::new(1.0, 0.5, 1.0),
//!     0.5,
//! ))
//! .unwrap();
//! let bound = phase_moment_lower_bound(&composite, &Loading::new(0.0, 1.0), Phase::Two);
//! assert!((bound.value - 2.0 * 3f64.sqrt() / 3.0).abs() < 1e-12);
//! ```

pub mod bounds;
pub mod coated_sphere;
pub mod error;
pub mod material;
pub mod oracle;
pub mod verify;

pub use bounds::{
    affine_abs_min, bound_scale, characteristic_constants, compliance_interval, compliance_to_x, compliance_to_y,
    hs_bulk_moduli, max_field_lower_bound, phase_moment_lower_bound, regime_table, BoundBranch, BoundConstants,
    BoundResult, BoundTarget, ComplianceInterval, Endpoint, HsBulkModuli, MicrostructureDescriptor,
    MicrostructureKind, RatioKind, RegimeRow, RegimeTable,
};
pub use coated_sphere::{CoatedSphere, LocalField, LocalFieldConstants, OuterCondition, Region};
pub use error::{Error, Result};
pub use material::{
    classify_ordering, normalize_phase_labels, validate_composite, Composite, CompositeSpec, Loading,
    MomentExponent, NormalizedSpec, OrderingClass, Phase, PhaseProperties,
};
pub use verify::{verify_composite, CheckOutcome, VerificationReport};
