use std::fmt;

use serde::{Deserialize, Serialize};

use super::constants::{characteristic_constants, compliance_interval, BoundConstants, RatioKind};
use crate::material::{Composite, Loading, Phase};

pub(crate) const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Where the minimizer of the affine absolute value sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Endpoint {
    Lower,
    Upper,
    /// The affine function changes sign strictly inside the interval.
    Interior,
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Endpoint::Lower => "lower",
            Endpoint::Upper => "upper",
            Endpoint::Interior => "interior",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsMin {
    pub value: f64,
    pub argmin: f64,
    pub at_endpoint: Endpoint,
}

/// `sqrt(3) * ((sigma0 - D) t + D)` without the absolute value.
pub fn affine_objective(t: f64, sigma0: f64, d: f64) -> f64 {
    SQRT_3 * ((sigma0 - d) * t + d)
}

/// Exact minimum of `sqrt(3) |(sigma0 - D) t + D|` over `lo <= t <= hi`.
///
/// A sign change strictly inside the interval gives zero at
/// `t* = D / (D - sigma0)`. A zero landing exactly on an endpoint is reported
/// at that endpoint. For `sigma0 == D` the objective is the constant
/// `sqrt(3) |D|` and the lower endpoint is reported.
pub fn affine_abs_min(lo: f64, hi: f64, sigma0: f64, d: f64) -> AbsMin {
    debug_assert!(lo <= hi, "empty interval [{lo}, {hi}]");
    let slope = sigma0 - d;
    if slope == 0.0 {
        return AbsMin {
            value: SQRT_3 * d.abs(),
            argmin: lo,
            at_endpoint: Endpoint::Lower,
        };
    }
    let at_lo = slope * lo + d;
    let at_hi = slope * hi + d;
    if (at_lo < 0.0 && at_hi > 0.0) || (at_lo > 0.0 && at_hi < 0.0) {
        return AbsMin {
            value: 0.0,
            argmin: d / (d - sigma0),
            at_endpoint: Endpoint::Interior,
        };
    }
    if at_hi.abs() < at_lo.abs() {
        AbsMin {
            value: SQRT_3 * at_hi.abs(),
            argmin: hi,
            at_endpoint: Endpoint::Upper,
        }
    } else {
        AbsMin {
            value: SQRT_3 * at_lo.abs(),
            argmin: lo,
            at_endpoint: Endpoint::Lower,
        }
    }
}

/// Closed-form branch of a bound. `Left` is `sqrt(3)[(D - sigma0) t - D]`
/// (the affine expression is negative), `Right` is `sqrt(3)[(sigma0 - D) t + D]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundBranch {
    #[serde(rename = "L-branch-left")]
    LLeft,
    #[serde(rename = "M-branch-left")]
    MLeft,
    #[serde(rename = "Zero")]
    Zero,
    #[serde(rename = "M-branch-right")]
    MRight,
    #[serde(rename = "L-branch-right")]
    LRight,
}

impl BoundBranch {
    pub fn new(kind: RatioKind, affine: f64) -> Self {
        match (kind, affine < 0.0) {
            (RatioKind::L, true) => BoundBranch::LLeft,
            (RatioKind::L, false) => BoundBranch::LRight,
            (RatioKind::M, true) => BoundBranch::MLeft,
            (RatioKind::M, false) => BoundBranch::MRight,
        }
    }

    pub fn kind(self) -> Option<RatioKind> {
        match self {
            BoundBranch::LLeft | BoundBranch::LRight => Some(RatioKind::L),
            BoundBranch::MLeft | BoundBranch::MRight => Some(RatioKind::M),
            BoundBranch::Zero => None,
        }
    }

    /// Closed-form value of this branch at ratio `t`.
    pub fn evaluate(self, t: f64, sigma0: f64, d: f64) -> f64 {
        match self {
            BoundBranch::Zero => 0.0,
            BoundBranch::LLeft | BoundBranch::MLeft => SQRT_3 * ((d - sigma0) * t - d),
            BoundBranch::LRight | BoundBranch::MRight => SQRT_3 * ((sigma0 - d) * t + d),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BoundBranch::LLeft => "L-branch-left",
            BoundBranch::MLeft => "M-branch-left",
            BoundBranch::Zero => "Zero",
            BoundBranch::MRight => "M-branch-right",
            BoundBranch::LRight => "L-branch-right",
        }
    }
}

impl fmt::Display for BoundBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MicrostructureKind {
    CoatedSpheres,
    Undetermined,
}

/// The microstructure attaining a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MicrostructureDescriptor {
    pub kind: MicrostructureKind,
    pub core_phase: Option<Phase>,
    /// For max-field bounds: the phase where the maximum is reached.
    pub max_attaining_phase: Option<Phase>,
}

impl MicrostructureDescriptor {
    pub fn coated_spheres(core: Phase) -> Self {
        Self {
            kind: MicrostructureKind::CoatedSpheres,
            core_phase: Some(core),
            max_attaining_phase: None,
        }
    }

    pub fn undetermined() -> Self {
        Self {
            kind: MicrostructureKind::Undetermined,
            core_phase: None,
            max_attaining_phase: None,
        }
    }

    pub fn coating_phase(&self) -> Option<Phase> {
        self.core_phase.map(Phase::other)
    }

    pub fn is_determined(&self) -> bool {
        self.kind == MicrostructureKind::CoatedSpheres
    }
}

impl fmt::Display for MicrostructureDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.core_phase, self.coating_phase()) {
            (Some(core), Some(coat)) => {
                let star = |p: Phase| if self.max_attaining_phase == Some(p) { "*" } else { "" };
                write!(f, "core {core}{} / coating {coat}{}", star(core), star(coat))
            }
            _ => f.write_str("undetermined"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    /// Lower bound on the moment, in stress units.
    pub value: f64,
    /// Minimizing `X` (phase 2) or `Y` (phase 1), or the interior zero.
    pub argmin: f64,
    pub at_endpoint: Endpoint,
    /// Phase whose moment is bounded; for max-field bounds the winning phase.
    pub phase: Phase,
    pub branch: BoundBranch,
    pub microstructure: MicrostructureDescriptor,
}

impl BoundResult {
    pub fn ratio_kind(&self) -> Option<RatioKind> {
        self.branch.kind()
    }
}

/// Optimal lower bound on `<|P^H sigma|^p>_i^(1/p)` for phase `i`, valid for
/// every `1 < p <= inf`.
pub fn phase_moment_lower_bound(composite: &Composite, loading: &Loading, phase: Phase) -> BoundResult {
    let constants = characteristic_constants(composite, loading.delta_t);
    bound_with_constants(composite, &constants, loading.sigma0, phase)
}

pub(crate) fn bound_with_constants(
    composite: &Composite,
    constants: &BoundConstants,
    sigma0: f64,
    phase: Phase,
) -> BoundResult {
    let interval = compliance_interval(composite, phase);
    let d = constants.d;
    let min = affine_abs_min(interval.lo, interval.hi, sigma0, d);
    let kind = match min.at_endpoint {
        Endpoint::Lower => Some(interval.lower_kind()),
        Endpoint::Upper => Some(interval.upper_kind()),
        Endpoint::Interior => None,
    };
    let (branch, microstructure) = match kind {
        Some(kind) => (
            BoundBranch::new(kind, (sigma0 - d) * min.argmin + d),
            MicrostructureDescriptor::coated_spheres(kind.attaining_core(phase)),
        ),
        None => (BoundBranch::Zero, MicrostructureDescriptor::undetermined()),
    };
    BoundResult {
        value: min.value,
        argmin: min.argmin,
        at_endpoint: min.at_endpoint,
        phase,
        branch,
        microstructure,
    }
}

/// Lower bound on `max_x |P^H sigma(x)|` over the whole composite: the larger
/// of the two per-phase bounds.
///
/// When both per-phase bounds coincide (to 1e-12 relative) the phase whose
/// minimizing ratio has the larger magnitude is reported as the attaining one.
pub fn max_field_lower_bound(composite: &Composite, loading: &Loading) -> BoundResult {
    let constants = characteristic_constants(composite, loading.delta_t);
    max_with_constants(composite, &constants, loading.sigma0)
}

pub(crate) fn max_with_constants(composite: &Composite, constants: &BoundConstants, sigma0: f64) -> BoundResult {
    // phase-1 and phase-2 minima; the letters C, D of the non-well-ordered
    // derivation are not used here to avoid clashing with the thermal scale D
    let maxbound_phase1 = bound_with_constants(composite, constants, sigma0, Phase::One);
    let maxbound_phase2 = bound_with_constants(composite, constants, sigma0, Phase::Two);
    let (a, b) = (maxbound_phase1.value, maxbound_phase2.value);
    let tie = (a - b).abs() <= 1e-12 * a.max(b);
    let winner = if tie {
        if maxbound_phase1.argmin.abs() >= maxbound_phase2.argmin.abs() {
            maxbound_phase1
        } else {
            maxbound_phase2
        }
    } else if a > b {
        maxbound_phase1
    } else {
        maxbound_phase2
    };
    let mut result = winner;
    if result.microstructure.is_determined() {
        result.microstructure.max_attaining_phase = Some(winner.phase);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt3_constant() {
        assert_eq!(SQRT_3, 3f64.sqrt());
    }

    #[test]
    fn decreasing_objective_hits_upper() {
        let r = affine_abs_min(5.0 / 6.0, 8.0 / 9.0, 0.0, -6.0);
        assert!((r.value - 2.0 * SQRT_3 / 3.0).abs() < 1e-14);
        assert_eq!(r.argmin, 8.0 / 9.0);
        assert_eq!(r.at_endpoint, Endpoint::Upper);
    }

    #[test]
    fn increasing_objective_hits_lower() {
        let r = affine_abs_min(10.0 / 9.0, 7.0 / 6.0, 0.0, -6.0);
        assert!((r.value - 2.0 * SQRT_3 / 3.0).abs() < 1e-14);
        assert_eq!(r.argmin, 10.0 / 9.0);
        assert_eq!(r.at_endpoint, Endpoint::Lower);
    }

    #[test]
    fn zero_objective() {
        let r = affine_abs_min(0.5, 2.0, 0.0, 0.0);
        assert_eq!(r.value, 0.0);
        assert_eq!(r.at_endpoint, Endpoint::Lower);
    }

    #[test]
    fn constant_objective_at_sigma_equal_d() {
        let r = affine_abs_min(0.5, 2.0, -4.0, -4.0);
        assert_eq!(r.value, SQRT_3 * 4.0);
        assert_eq!(r.argmin, 0.5);
        assert_eq!(r.at_endpoint, Endpoint::Lower);
    }

    #[test]
    fn interior_zero() {
        // t* = D / (D - sigma0) = -6 / -6.75 = 8/9 + ... pick sigma0 = 1 => t* = 6/7
        let r = affine_abs_min(5.0 / 6.0, 8.0 / 9.0, 1.0, -6.0);
        assert_eq!(r.value, 0.0);
        assert_eq!(r.at_endpoint, Endpoint::Interior);
        assert!((r.argmin - 6.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn zero_on_endpoint_reports_endpoint() {
        // slope 2, D = -1 => zero at t = 0.5 = lo
        let r = affine_abs_min(0.5, 1.0, 1.0, -1.0);
        assert_eq!(r.value, 0.0);
        assert_eq!(r.at_endpoint, Endpoint::Lower);
    }

    #[test]
    fn degenerate_interval() {
        let r = affine_abs_min(1.5, 1.5, 2.0, 1.0);
        assert_eq!(r.argmin, 1.5);
        assert!((r.value - SQRT_3 * 2.5).abs() < 1e-14);
    }

    #[test]
    fn branch_formulas_match_abs() {
        for &(t, s0, d) in &[(0.8, -3.0, 2.0), (1.2, 5.0, -1.0), (0.9, 0.0, -6.0)] {
            let affine = (s0 - d) * t + d;
            for kind in [RatioKind::L, RatioKind::M] {
                let b = BoundBranch::new(kind, affine);
                assert!((b.evaluate(t, s0, d) - SQRT_3 * affine.abs()).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn descriptor_display() {
        let mut m = MicrostructureDescriptor::coated_spheres(Phase::One);
        m.max_attaining_phase = Some(Phase::Two);
        assert_eq!(m.to_string(), "core 1 / coating 2*");
        assert_eq!(MicrostructureDescriptor::undetermined().to_string(), "undetermined");
    }

    #[test]
    fn reference_max_field_at_sigma_equal_d() {
        use crate::material::{validate_composite, CompositeSpec, PhaseProperties};
        let c = validate_composite(&CompositeSpec::new(
            PhaseProperties::new(2.0, 1.0, 0.0),
            PhaseProperties::new(1.0, 0.5, 1.0),
            0.5,
        ))
        .unwrap();
        // the objective is constant in t when sigma0 = D = -6
        let r = max_field_lower_bound(&c, &Loading::new(-6.0, 1.0));
        assert!((r.value - 6.0 * SQRT_3).abs() < 1e-13, "{r:?}");
    }
}
