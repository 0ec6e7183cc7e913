//! Phase properties, two-phase composites and loadings.
//!
//! All stress-dimensioned inputs (bulk and shear moduli, applied stress) must
//! share one unit system; nothing here converts units. Thermal expansion is per
//! unit temperature in whatever temperature unit `delta_t` uses.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance under which two bulk moduli are treated as equal.
pub const BULK_EQUALITY_TOL: f64 = 1e-12;

/// Label of one of the two phases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Phase {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

impl Phase {
    pub fn other(self) -> Phase {
        match self {
            Phase::One => Phase::Two,
            Phase::Two => Phase::One,
        }
    }

    /// 1 or 2.
    pub fn number(self) -> u8 {
        match self {
            Phase::One => 1,
            Phase::Two => 2,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// Isotropic thermoelastic constants of a single phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseProperties {
    #[serde(alias = "k")]
    pub bulk_modulus: f64,
    #[serde(alias = "mu")]
    pub shear_modulus: f64,
    /// Coefficient of thermal expansion; any finite value, including zero or negative.
    #[serde(alias = "h")]
    pub thermal_expansion: f64,
}

impl PhaseProperties {
    pub const fn new(bulk_modulus: f64, shear_modulus: f64, thermal_expansion: f64) -> Self {
        Self {
            bulk_modulus,
            shear_modulus,
            thermal_expansion,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.bulk_modulus.is_finite() && self.bulk_modulus > 0.0) {
            return Err(Error::NonPositiveModulus {
                name: "bulk modulus",
                value: self.bulk_modulus,
            });
        }
        if !(self.shear_modulus.is_finite() && self.shear_modulus > 0.0) {
            return Err(Error::NonPositiveModulus {
                name: "shear modulus",
                value: self.shear_modulus,
            });
        }
        if !self.thermal_expansion.is_finite() {
            return Err(Error::NonFiniteInput {
                name: "thermal expansion",
                value: self.thermal_expansion,
            });
        }
        Ok(())
    }
}

/// Unvalidated description of a two-phase composite. The volume fraction of
/// phase 2 is always `1 - theta1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompositeSpec {
    pub phase1: PhaseProperties,
    pub phase2: PhaseProperties,
    pub theta1: f64,
}

impl CompositeSpec {
    pub const fn new(phase1: PhaseProperties, phase2: PhaseProperties, theta1: f64) -> Self {
        Self {
            phase1,
            phase2,
            theta1,
        }
    }

    pub fn theta2(&self) -> f64 {
        1.0 - self.theta1
    }

    pub fn phase(&self, phase: Phase) -> &PhaseProperties {
        match phase {
            Phase::One => &self.phase1,
            Phase::Two => &self.phase2,
        }
    }

    pub fn fraction(&self, phase: Phase) -> f64 {
        match phase {
            Phase::One => self.theta1,
            Phase::Two => self.theta2(),
        }
    }

    /// The same composite with the labels 1 and 2 exchanged.
    pub fn relabeled(&self) -> CompositeSpec {
        CompositeSpec {
            phase1: self.phase2,
            phase2: self.phase1,
            theta1: self.theta2(),
        }
    }
}

/// A spec whose labels satisfy `mu1 > mu2`, plus whether the caller's labels
/// had to be exchanged to get there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedSpec {
    pub spec: CompositeSpec,
    pub swapped: bool,
}

impl NormalizedSpec {
    /// Maps an internal phase label back to the caller's labeling.
    pub fn to_caller(&self, phase: Phase) -> Phase {
        if self.swapped {
            phase.other()
        } else {
            phase
        }
    }

    /// Maps a phase in the caller's labeling to the internal one.
    pub fn to_internal(&self, phase: Phase) -> Phase {
        // the swap is an involution
        self.to_caller(phase)
    }
}

/// Exchanges phase labels when needed so that `mu1 > mu2`.
pub fn normalize_phase_labels(raw: &CompositeSpec) -> Result<NormalizedSpec> {
    raw.phase1.validate()?;
    raw.phase2.validate()?;
    let (mu1, mu2) = (raw.phase1.shear_modulus, raw.phase2.shear_modulus);
    if mu1 == mu2 {
        return Err(Error::EqualShearModuli(mu1));
    }
    if mu1 > mu2 {
        Ok(NormalizedSpec {
            spec: *raw,
            swapped: false,
        })
    } else {
        Ok(NormalizedSpec {
            spec: raw.relabeled(),
            swapped: true,
        })
    }
}

/// Elastic ordering of the two phases given `mu1 > mu2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderingClass {
    /// `k1 > k2`: phase 1 is stiffer in both moduli.
    WellOrdered,
    /// `k2 > k1`.
    NonWellOrdered,
}

impl fmt::Display for OrderingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderingClass::WellOrdered => f.write_str("well-ordered"),
            OrderingClass::NonWellOrdered => f.write_str("non-well-ordered"),
        }
    }
}

/// A validated two-phase composite: positive moduli, `0 < theta1 < 1`,
/// `mu1 > mu2` and `k1 != k2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Composite {
    spec: CompositeSpec,
    ordering: OrderingClass,
}

/// Checks every invariant of a composite and annotates it with its ordering.
pub fn validate_composite(spec: &CompositeSpec) -> Result<Composite> {
    spec.phase1.validate()?;
    spec.phase2.validate()?;
    let theta1 = spec.theta1;
    if !(theta1.is_finite() && theta1 > 0.0 && theta1 < 1.0) {
        return Err(Error::VolumeFractionOutOfRange(theta1));
    }
    let (k1, k2) = (spec.phase1.bulk_modulus, spec.phase2.bulk_modulus);
    if (k1 - k2).abs() <= BULK_EQUALITY_TOL * k1.max(k2) {
        return Err(Error::EqualBulkModuli { k1, k2 });
    }
    let (mu1, mu2) = (spec.phase1.shear_modulus, spec.phase2.shear_modulus);
    if mu1 == mu2 {
        return Err(Error::EqualShearModuli(mu1));
    }
    if mu1 < mu2 {
        return Err(Error::ShearModuliMisordered { mu1, mu2 });
    }
    let ordering = if k1 > k2 {
        OrderingClass::WellOrdered
    } else {
        OrderingClass::NonWellOrdered
    };
    Ok(Composite {
        spec: *spec,
        ordering,
    })
}

pub fn classify_ordering(composite: &Composite) -> OrderingClass {
    composite.ordering
}

impl Composite {
    /// Normalizes the labels of `raw` and validates the result.
    pub fn from_raw(raw: &CompositeSpec) -> Result<(Composite, NormalizedSpec)> {
        let normalized = normalize_phase_labels(raw)?;
        let composite = validate_composite(&normalized.spec)?;
        Ok((composite, normalized))
    }

    pub fn spec(&self) -> &CompositeSpec {
        &self.spec
    }

    pub fn ordering(&self) -> OrderingClass {
        self.ordering
    }

    pub fn phase(&self, phase: Phase) -> &PhaseProperties {
        self.spec.phase(phase)
    }

    pub fn fraction(&self, phase: Phase) -> f64 {
        self.spec.fraction(phase)
    }

    pub fn theta1(&self) -> f64 {
        self.spec.theta1
    }

    pub fn theta2(&self) -> f64 {
        self.spec.theta2()
    }

    pub fn k1(&self) -> f64 {
        self.spec.phase1.bulk_modulus
    }

    pub fn k2(&self) -> f64 {
        self.spec.phase2.bulk_modulus
    }

    pub fn mu1(&self) -> f64 {
        self.spec.phase1.shear_modulus
    }

    pub fn mu2(&self) -> f64 {
        self.spec.phase2.shear_modulus
    }

    pub fn h1(&self) -> f64 {
        self.spec.phase1.thermal_expansion
    }

    pub fn h2(&self) -> f64 {
        self.spec.phase2.thermal_expansion
    }

    /// Multiplies every stress-dimensioned constant by `s`.
    pub fn scaled_moduli(&self, s: f64) -> Result<Composite> {
        let scale = |p: &PhaseProperties| {
            PhaseProperties::new(p.bulk_modulus * s, p.shear_modulus * s, p.thermal_expansion)
        };
        validate_composite(&CompositeSpec::new(
            scale(&self.spec.phase1),
            scale(&self.spec.phase2),
            self.spec.theta1,
        ))
    }
}

/// Imposed hydrostatic stress `sigma0 * I` and uniform temperature change.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Loading {
    pub sigma0: f64,
    #[serde(alias = "deltaT", alias = "delta_T")]
    pub delta_t: f64,
}

impl Loading {
    pub const fn new(sigma0: f64, delta_t: f64) -> Self {
        Self { sigma0, delta_t }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.sigma0.is_finite() {
            return Err(Error::NonFiniteInput {
                name: "sigma0",
                value: self.sigma0,
            });
        }
        if !self.delta_t.is_finite() {
            return Err(Error::NonFiniteInput {
                name: "delta_t",
                value: self.delta_t,
            });
        }
        Ok(())
    }
}

/// Exponent `p` of an L^p moment, `1 < p <= inf`.
///
/// Bounds hold on the whole range `1 < p <= inf`; some literature states the
/// narrower range `2 <= p`. The wider range is accepted here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MomentExponent {
    Finite(f64),
    Infinity,
}

impl MomentExponent {
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(MomentExponent::Infinity)
        } else if p.is_finite() && p > 1.0 {
            Ok(MomentExponent::Finite(p))
        } else {
            Err(Error::InvalidExponent(p.to_string()))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            MomentExponent::Finite(p) => p,
            MomentExponent::Infinity => f64::INFINITY,
        }
    }
}

impl FromStr for MomentExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "+inf" => Ok(MomentExponent::Infinity),
            _ => t
                .parse::<f64>()
                .map_err(|_| Error::InvalidExponent(t.to_string()))
                .and_then(MomentExponent::new),
        }
    }
}

impl fmt::Display for MomentExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentExponent::Finite(p) => write!(f, "{p}"),
            MomentExponent::Infinity => f.write_str("inf"),
        }
    }
}
