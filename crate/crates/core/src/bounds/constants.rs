use serde::{Deserialize, Serialize};

use crate::material::{Composite, OrderingClass, Phase};

/// Dimensionless ratios `L1, L2, M1, M2` and the thermal stress scales `D, F`
/// that parameterize every bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundConstants {
    pub l1: f64,
    pub l2: f64,
    pub m1: f64,
    pub m2: f64,
    /// `D = dT * 3 k1 k2 (h2 - h1) / (k2 - k1)`, in stress units.
    pub d: f64,
    /// `F = D (1 - 2 / (L1 + M2))`: the load at which the phase-1 `L1` branch
    /// and the phase-2 `M2` branch have equal magnitude.
    pub f: f64,
}

impl BoundConstants {
    pub fn ratio(&self, phase: Phase, kind: RatioKind) -> f64 {
        match (phase, kind) {
            (Phase::One, RatioKind::L) => self.l1,
            (Phase::One, RatioKind::M) => self.m1,
            (Phase::Two, RatioKind::L) => self.l2,
            (Phase::Two, RatioKind::M) => self.m2,
        }
    }

    /// `D (1 - 1/t)`: the applied stress at which `(sigma0 - D) t + D` vanishes.
    pub fn zero_crossing_load(&self, t: f64) -> f64 {
        self.d * (1.0 - 1.0 / t)
    }
}

/// `k_i (k_j + 4 mu / 3) / (k1 k2 + (k1 theta1 + k2 theta2) 4 mu / 3)`
fn ratio(k_num: f64, k_other: f64, mu: f64, composite: &Composite) -> f64 {
    let (k1, k2) = (composite.k1(), composite.k2());
    let mix = k1 * composite.theta1() + k2 * composite.theta2();
    let c = 4.0 * mu / 3.0;
    k_num * (k_other + c) / (k1 * k2 + mix * c)
}

fn ratios(composite: &Composite) -> (f64, f64, f64, f64) {
    let (k1, k2) = (composite.k1(), composite.k2());
    let (mu1, mu2) = (composite.mu1(), composite.mu2());
    (
        ratio(k1, k2, mu2, composite),
        ratio(k2, k1, mu1, composite),
        ratio(k1, k2, mu1, composite),
        ratio(k2, k1, mu2, composite),
    )
}

/// Thermal stress scale `D` for a temperature change `delta_t`.
pub fn thermal_stress_scale(composite: &Composite, delta_t: f64) -> f64 {
    let (k1, k2) = (composite.k1(), composite.k2());
    delta_t * (3.0 * k1 * k2 * (composite.h2() - composite.h1()) / (k2 - k1))
}

pub fn characteristic_constants(composite: &Composite, delta_t: f64) -> BoundConstants {
    let (l1, l2, m1, m2) = ratios(composite);
    let d = thermal_stress_scale(composite, delta_t);
    let f = d * (1.0 - 1.0 / ((l1 + m2) / 2.0));
    BoundConstants {
        l1,
        l2,
        m1,
        m2,
        d,
        f,
    }
}

/// Hashin-Shtrikman bounds on the effective bulk modulus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HsBulkModuli {
    /// `K_HS^-`, built with the smaller shear modulus `mu2`.
    pub lower: f64,
    /// `K_HS^+`, built with `mu1`.
    pub upper: f64,
}

/// `k1 t1 + k2 t2 - t1 t2 (k2 - k1)^2 / (k1 t2 + k2 t1 + 4 mu / 3)`
pub(crate) fn hs_bulk(k1: f64, k2: f64, theta1: f64, theta2: f64, mu: f64) -> f64 {
    let dk = k2 - k1;
    k1 * theta1 + k2 * theta2 - theta1 * theta2 * dk * dk / (k1 * theta2 + k2 * theta1 + 4.0 * mu / 3.0)
}

pub fn hs_bulk_moduli(composite: &Composite) -> HsBulkModuli {
    let (k1, k2, t1, t2) = (
        composite.k1(),
        composite.k2(),
        composite.theta1(),
        composite.theta2(),
    );
    HsBulkModuli {
        lower: hs_bulk(k1, k2, t1, t2, composite.mu2()),
        upper: hs_bulk(k1, k2, t1, t2, composite.mu1()),
    }
}

/// Maps the compliance contraction `(C^e)^-1 I : I` to the phase-2 variable `X`.
pub fn compliance_to_x(composite: &Composite, compliance: f64) -> f64 {
    let (k1, k2) = (composite.k1(), composite.k2());
    (1.0 / composite.theta2()) / (1.0 / k1 - 1.0 / k2) * (1.0 / k1 - compliance)
}

/// Maps the compliance contraction to the phase-1 variable `Y`.
pub fn compliance_to_y(composite: &Composite, compliance: f64) -> f64 {
    let (k1, k2) = (composite.k1(), composite.k2());
    (1.0 / composite.theta1()) / (1.0 / k2 - 1.0 / k1) * (1.0 / k2 - compliance)
}

/// Which characteristic ratio sits at an interval endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RatioKind {
    L,
    M,
}

impl RatioKind {
    /// Core phase of the coated-sphere assemblage realizing this ratio in `phase`.
    ///
    /// `L_i` is realized inside the core when phase `i` is the core, `M_i`
    /// inside the coating when phase `i` is the coating.
    pub fn attaining_core(self, phase: Phase) -> Phase {
        match self {
            RatioKind::L => phase,
            RatioKind::M => phase.other(),
        }
    }
}

/// Admissible range of `X` (phase 2) or `Y` (phase 1) implied by the
/// Hashin-Shtrikman bulk bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplianceInterval {
    pub lo: f64,
    pub hi: f64,
    pub phase: Phase,
    pub ordering: OrderingClass,
}

impl ComplianceInterval {
    pub fn lower_kind(&self) -> RatioKind {
        match self.ordering {
            OrderingClass::WellOrdered => RatioKind::L,
            OrderingClass::NonWellOrdered => RatioKind::M,
        }
    }

    pub fn upper_kind(&self) -> RatioKind {
        match self.lower_kind() {
            RatioKind::L => RatioKind::M,
            RatioKind::M => RatioKind::L,
        }
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }
}

pub fn compliance_interval(composite: &Composite, phase: Phase) -> ComplianceInterval {
    let (l1, l2, m1, m2) = ratios(composite);
    let (l, m) = match phase {
        Phase::One => (l1, m1),
        Phase::Two => (l2, m2),
    };
    let (lo, hi) = match composite.ordering() {
        OrderingClass::WellOrdered => (l, m),
        OrderingClass::NonWellOrdered => (m, l),
    };
    ComplianceInterval {
        lo,
        hi,
        phase,
        ordering: composite.ordering(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material::{validate_composite, CompositeSpec, PhaseProperties};

    fn reference() -> Composite {
        validate_composite(&CompositeSpec::new(
            PhaseProperties::new(2.0, 1.0, 0.0),
            PhaseProperties::new(1.0, 0.5, 1.0),
            0.5,
        ))
        .unwrap()
    }

    #[test]
    fn zero_thermal_mismatch_gives_zero_scales() {
        let c = reference();
        let k = characteristic_constants(&c, 0.0);
        assert_eq!(k.d, 0.0);
        assert_eq!(k.f, 0.0);
        let same_h = validate_composite(&CompositeSpec::new(
            PhaseProperties::new(2.0, 1.0, 0.3),
            PhaseProperties::new(1.0, 0.5, 0.3),
            0.4,
        ))
        .unwrap();
        let k = characteristic_constants(&same_h, 5.0);
        assert_eq!(k.d, 0.0);
        assert_eq!(k.f, 0.0);
    }

    #[test]
    fn f_restates_d() {
        let c = reference();
        let k = characteristic_constants(&c, 1.7);
        assert_eq!(k.f, k.d * (1.0 - 2.0 / (k.l1 + k.m2)));
    }

    #[test]
    fn hs_near_equal_bulk_is_quadratic() {
        let k1 = 3.0;
        let eps = 1e-6;
        let k2 = k1 * (1.0 + eps);
        let c = validate_composite(&CompositeSpec::new(
            PhaseProperties::new(k1, 2.0, 0.0),
            PhaseProperties::new(k2, 1.0, 0.0),
            0.35,
        ))
        .unwrap();
        let hs = hs_bulk_moduli(&c);
        let voigt = k1 * c.theta1() + k2 * c.theta2();
        assert!((hs.upper - voigt).abs() < 10.0 * eps * eps * k1);
        assert!(hs.lower <= hs.upper);
    }

    #[test]
    fn hs_symmetric_under_relabeling() {
        // same formula with phases and fractions exchanged, shear modulus kept
        let (k1, k2, t1, mu) = (2.5, 0.7, 0.3, 1.1);
        let a = hs_bulk(k1, k2, t1, 1.0 - t1, mu);
        let b = hs_bulk(k2, k1, 1.0 - t1, t1, mu);
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn compliance_maps_vanish_at_pure_phase() {
        let c = reference();
        assert_eq!(compliance_to_x(&c, 1.0 / c.k1()), 0.0);
        assert_eq!(compliance_to_y(&c, 1.0 / c.k2()), 0.0);
    }

    #[test]
    fn non_well_ordered_intervals_are_reversed() {
        let c = validate_composite(&CompositeSpec::new(
            PhaseProperties::new(1.0, 1.0, 0.0),
            PhaseProperties::new(2.0, 0.5, 1.0),
            0.5,
        ))
        .unwrap();
        let k = characteristic_constants(&c, 1.0);
        let x = compliance_interval(&c, Phase::Two);
        let y = compliance_interval(&c, Phase::One);
        assert_eq!((x.lo, x.hi), (k.m2, k.l2));
        assert_eq!((y.lo, y.hi), (k.m1, k.l1));
        assert_eq!(x.lower_kind(), RatioKind::M);
        assert!(x.lo <= x.hi && y.lo <= y.hi);
    }
}
