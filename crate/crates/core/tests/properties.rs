mod common;

use common::{composite_strategy, loading_strategy, rel};
use hydrobound::bounds::affine_objective;
use hydrobound::oracle::{interval_scan_min, sampled_moment, scan_resolution, RadialGrid, RadialSolution};
use hydrobound::{
    affine_abs_min, bound_scale, characteristic_constants, compliance_interval, compliance_to_x, compliance_to_y,
    hs_bulk_moduli, max_field_lower_bound, normalize_phase_labels, phase_moment_lower_bound, regime_table,
    BoundTarget, CoatedSphere, Composite, CompositeSpec, Loading, MomentExponent, OrderingClass, Phase, Region,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ratio_ordering(c in composite_strategy()) {
        let k = characteristic_constants(&c, 1.0);
        match c.ordering() {
            OrderingClass::WellOrdered => {
                prop_assert!(k.l1 > 1.0 && 1.0 > k.l2, "{k:?}");
                prop_assert!(k.m1 > 1.0 && 1.0 > k.m2, "{k:?}");
            }
            OrderingClass::NonWellOrdered => {
                prop_assert!(k.l1 < 1.0 && 1.0 < k.l2, "{k:?}");
                prop_assert!(k.m1 < 1.0 && 1.0 < k.m2, "{k:?}");
            }
        }
        for phase in [Phase::One, Phase::Two] {
            let iv = compliance_interval(&c, phase);
            prop_assert!(iv.lo < iv.hi);
        }
    }

    #[test]
    fn endpoint_identities(c in composite_strategy()) {
        let k = characteristic_constants(&c, 1.0);
        let hs = hs_bulk_moduli(&c);
        prop_assert!(rel(compliance_to_x(&c, 1.0 / hs.lower), k.m2, 0.0) <= 1e-12);
        prop_assert!(rel(compliance_to_x(&c, 1.0 / hs.upper), k.l2, 0.0) <= 1e-12);
        prop_assert!(rel(compliance_to_y(&c, 1.0 / hs.lower), k.l1, 0.0) <= 1e-12);
        prop_assert!(rel(compliance_to_y(&c, 1.0 / hs.upper), k.m1, 0.0) <= 1e-12);
    }

    #[test]
    fn closed_form_min_matches_scan(
        lo in -3.0..3.0f64,
        width in 0.0..2.0f64,
        s0 in -20.0..20.0f64,
        d in -20.0..20.0f64,
    ) {
        let hi = lo + width;
        let exact = affine_abs_min(lo, hi, s0, d);
        let n = 10_001;
        let scan = interval_scan_min(lo, hi, s0, d, n);
        let slack = 1e-12 * (affine_objective(lo, s0, d).abs() + affine_objective(hi, s0, d).abs() + 1.0);
        prop_assert!(scan >= exact.value - slack, "scan {scan} below min {}", exact.value);
        prop_assert!(scan - exact.value <= scan_resolution(lo, hi, s0, d, n) + slack);
        prop_assert!(exact.value >= 0.0);
        let terms = 3f64.sqrt() * ((s0 - d).abs() * exact.argmin.abs() + d.abs());
        prop_assert!((affine_objective(exact.argmin, s0, d).abs() - exact.value).abs() <= 1e-12 * terms);
    }

    #[test]
    fn bounds_scale_with_moduli(c in composite_strategy(), l in loading_strategy(), s in 0.1..10.0f64) {
        let scaled = c.scaled_moduli(s).unwrap();
        let a = characteristic_constants(&c, l.delta_t);
        let b = characteristic_constants(&scaled, l.delta_t);
        prop_assert!(rel(a.l1, b.l1, 0.0) <= 1e-12 && rel(a.m2, b.m2, 0.0) <= 1e-12);
        prop_assert!(rel(s * a.d, b.d, 0.0) <= 1e-12);
        let scaled_load = Loading::new(s * l.sigma0, l.delta_t);
        for phase in [Phase::One, Phase::Two] {
            let x = phase_moment_lower_bound(&c, &l, phase);
            let y = phase_moment_lower_bound(&scaled, &scaled_load, phase);
            prop_assert!(rel(s * x.value, y.value, s * bound_scale(&a, l.sigma0)) <= 1e-11);
        }
    }

    #[test]
    fn labels_normalize_and_swap_back(c in composite_strategy()) {
        let raw = c.spec().relabeled();
        let norm = normalize_phase_labels(&raw).unwrap();
        // 1 - (1 - theta) is exact only up to rounding
        let same = |a: &CompositeSpec, b: &CompositeSpec| {
            a.phase1 == b.phase1 && a.phase2 == b.phase2 && (a.theta1 - b.theta1).abs() <= 4.0 * f64::EPSILON
        };
        prop_assert!(norm.swapped);
        prop_assert!(same(&norm.spec, c.spec()));
        prop_assert!(same(&raw.relabeled().relabeled(), &raw));
        let (again, info) = Composite::from_raw(&raw).unwrap();
        prop_assert!(same(again.spec(), c.spec()));
        prop_assert_eq!(again.ordering(), c.ordering());
        for p in [Phase::One, Phase::Two] {
            prop_assert_eq!(info.to_internal(info.to_caller(p)), p);
        }
        prop_assert!(!normalize_phase_labels(c.spec()).unwrap().swapped);
    }

    #[test]
    fn bounds_below_both_orientations(c in composite_strategy(), l in loading_strategy()) {
        let k = characteristic_constants(&c, l.delta_t);
        let scale = bound_scale(&k, l.sigma0);
        for core in [Phase::One, Phase::Two] {
            let sphere = CoatedSphere::new(&c, core);
            let f = sphere.local_field_constants(&l).unwrap();
            for phase in [Phase::One, Phase::Two] {
                let bound = phase_moment_lower_bound(&c, &l, phase).value;
                let actual = f.hydro_norm(sphere.region_of(phase));
                prop_assert!(bound <= actual + 1e-10 * scale, "{bound} > {actual}");
            }
        }
        let max = max_field_lower_bound(&c, &l).value;
        for phase in [Phase::One, Phase::Two] {
            prop_assert!(max >= phase_moment_lower_bound(&c, &l, phase).value);
        }
    }

    #[test]
    fn fields_superpose(c in composite_strategy(), a in loading_strategy(), b in loading_strategy(), core_is_one in any::<bool>()) {
        let core = if core_is_one { Phase::One } else { Phase::Two };
        let sphere = CoatedSphere::new(&c, core);
        let sum = Loading::new(a.sigma0 + b.sigma0, a.delta_t + b.delta_t);
        let (fa, fb, fs) = (
            sphere.local_field_constants(&a).unwrap(),
            sphere.local_field_constants(&b).unwrap(),
            sphere.local_field_constants(&sum).unwrap(),
        );
        for r in [Region::Core, Region::Coating] {
            let scale = fa.trace(r).abs() + fb.trace(r).abs();
            prop_assert!(rel(fa.trace(r) + fb.trace(r), fs.trace(r), scale) <= 1e-12);
        }
    }

    #[test]
    fn trace_is_constant_per_layer(c in composite_strategy(), l in loading_strategy(), u in 0.001..0.999f64, core_is_one in any::<bool>()) {
        let core = if core_is_one { Phase::One } else { Phase::Two };
        let sphere = CoatedSphere::new(&c, core);
        let field = sphere.local_field(&l).unwrap();
        let consts = field.constants();
        let a = sphere.core_radius();
        let scale = field.stress_scale();
        let r_core = u * a;
        let r_coat = a + u * (1.0 - a);
        prop_assert!(rel(field.trace_stress(r_core), consts.tr_sigma_core, scale) <= 1e-12);
        prop_assert!(rel(field.trace_stress(r_coat), consts.tr_sigma_coating, scale) <= 1e-12);
        // outer traction is the applied stress
        prop_assert!(rel(field.radial_stress(1.0), l.sigma0, scale) <= 1e-12);
    }

    #[test]
    fn regime_tables_agree_with_minimization(c in composite_strategy(), dt in -3.0..3.0f64, s0 in -40.0..40.0f64) {
        for target in [BoundTarget::Phase1Moment, BoundTarget::Phase2Moment, BoundTarget::MaxField] {
            let table = regime_table(&c, dt, target);
            let direct = target.evaluate(&c, &table.constants, s0);
            let row = table.row_at(s0);
            let scale = bound_scale(&table.constants, s0);
            prop_assert!(rel(row.value_at(s0, table.constants.d), direct.value, scale) <= 1e-12);
        }
    }

    #[test]
    fn sampled_moments_ignore_p(c in composite_strategy(), l in loading_strategy(), core_is_one in any::<bool>()) {
        let core = if core_is_one { Phase::One } else { Phase::Two };
        let sphere = CoatedSphere::new(&c, core);
        let field = sphere.local_field(&l).unwrap();
        let grid = RadialGrid::uniform(128, sphere.core_radius()).unwrap();
        let sol = RadialSolution::from_analytic(&field, &grid);
        for phase in [Phase::One, Phase::Two] {
            let exact = sphere.phase_moment(&l, phase, MomentExponent::Infinity).unwrap();
            let scale = field.stress_scale();
            for p in [2.0, 3.0, 4.0, 8.0] {
                let m = sampled_moment(&sol, phase, MomentExponent::Finite(p));
                prop_assert!(rel(m, exact, scale) <= 1e-8, "p = {p}: {m} vs {exact}");
            }
        }
    }
}

#[test]
fn normalize_rejects_equal_shear() {
    let p = hydrobound::PhaseProperties::new(1.0, 1.0, 0.0);
    let q = hydrobound::PhaseProperties::new(2.0, 1.0, 0.0);
    assert!(normalize_phase_labels(&CompositeSpec::new(p, q, 0.5)).is_err());
}
