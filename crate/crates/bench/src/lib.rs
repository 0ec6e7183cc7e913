//! Fixed inputs shared by the benchmarks.

use hydrobound::{validate_composite, Composite, CompositeSpec, PhaseProperties};

/// A well-ordered composite with distinct expansions.
pub fn reference_composite() -> Composite {
    validate_composite(&CompositeSpec::new(
        PhaseProperties::new(2.0, 1.0, 0.0),
        PhaseProperties::new(1.0, 0.5, 1.0),
        0.5,
    ))
    .expect("valid reference composite")
}

/// A non-well-ordered composite.
pub fn crossed_composite() -> Composite {
    validate_composite(&CompositeSpec::new(
        PhaseProperties::new(3.0, 2.5, 0.2),
        PhaseProperties::new(8.0, 0.9, -0.4),
        0.3,
    ))
    .expect("valid crossed composite")
}

/// `n` applied stresses evenly spread over `[-10, 10]`.
pub fn stress_grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| -10.0 + 20.0 * i as f64 / (n - 1) as f64).collect()
}
