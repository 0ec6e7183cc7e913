#![allow(dead_code)]

use hydrobound::{validate_composite, Composite, CompositeSpec, Loading, OrderingClass, PhaseProperties};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const K_RANGE: (f64, f64) = (0.5, 50.0);
pub const MU_RANGE: (f64, f64) = (0.2, 30.0);
pub const H_RANGE: (f64, f64) = (-1.0, 1.0);
pub const THETA_RANGE: (f64, f64) = (0.05, 0.95);

/// Minimum relative separation of the two bulk and the two shear moduli.
pub const SEPARATION: f64 = 0.01;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn separated(a: f64, b: f64) -> bool {
    (a - b).abs() >= SEPARATION * a.max(b)
}

/// Builds a composite from raw draws, forcing `mu1 > mu2` and the requested
/// bulk ordering. `None` when the draws are too close together.
pub fn build(k: (f64, f64), mu: (f64, f64), h: (f64, f64), theta1: f64, ordering: OrderingClass) -> Option<Composite> {
    if !separated(k.0, k.1) || !separated(mu.0, mu.1) {
        return None;
    }
    let (mu1, mu2) = (mu.0.max(mu.1), mu.0.min(mu.1));
    let (k1, k2) = match ordering {
        OrderingClass::WellOrdered => (k.0.max(k.1), k.0.min(k.1)),
        OrderingClass::NonWellOrdered => (k.0.min(k.1), k.0.max(k.1)),
    };
    validate_composite(&CompositeSpec::new(
        PhaseProperties::new(k1, mu1, h.0),
        PhaseProperties::new(k2, mu2, h.1),
        theta1,
    ))
    .ok()
}

pub fn random_composite_with(rng: &mut ChaCha8Rng, ordering: OrderingClass) -> Composite {
    loop {
        let mut draw = |r: (f64, f64)| rng.gen_range(r.0..r.1);
        let k = (draw(K_RANGE), draw(K_RANGE));
        let mu = (draw(MU_RANGE), draw(MU_RANGE));
        let h = (draw(H_RANGE), draw(H_RANGE));
        let theta = draw(THETA_RANGE);
        if let Some(c) = build(k, mu, h, theta, ordering) {
            return c;
        }
    }
}

pub fn random_composite(rng: &mut ChaCha8Rng) -> Composite {
    let ordering = if rng.gen_bool(0.5) {
        OrderingClass::WellOrdered
    } else {
        OrderingClass::NonWellOrdered
    };
    random_composite_with(rng, ordering)
}

pub fn random_loading(rng: &mut ChaCha8Rng) -> Loading {
    Loading::new(rng.gen_range(-20.0..20.0), rng.gen_range(-3.0..3.0))
}

pub fn ordering_strategy() -> impl Strategy<Value = OrderingClass> {
    prop_oneof![Just(OrderingClass::WellOrdered), Just(OrderingClass::NonWellOrdered)]
}

pub fn composite_strategy() -> impl Strategy<Value = Composite> {
    (
        (K_RANGE.0..K_RANGE.1, K_RANGE.0..K_RANGE.1),
        (MU_RANGE.0..MU_RANGE.1, MU_RANGE.0..MU_RANGE.1),
        (H_RANGE.0..H_RANGE.1, H_RANGE.0..H_RANGE.1),
        THETA_RANGE.0..THETA_RANGE.1,
        ordering_strategy(),
    )
        .prop_filter_map("moduli too close", |(k, mu, h, t, o)| build(k, mu, h, t, o))
}

pub fn loading_strategy() -> impl Strategy<Value = Loading> {
    (-20.0..20.0f64, -3.0..3.0f64).prop_map(|(s, t)| Loading::new(s, t))
}

pub fn rel(a: f64, b: f64, scale: f64) -> f64 {
    let s = scale.max(a.abs()).max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}
