//! Exact radially symmetric fields inside one coated sphere of the
//! Hashin assemblage, with outer radius normalized to `b = 1`.
//!
//! The displacement is `u = C r` in the core and `u = A r + B / r^2` in the
//! coating. Its trace strain is constant in each layer, so the hydrostatic
//! stress is constant in each phase. Because the assemblage fills space with
//! geometrically similar spheres, the per-phase constants of one sphere are the
//! per-phase constants of the whole composite.
//!
//! The thermal field is solved at unit temperature change with a clamped outer
//! surface `u(b) = 0`; its outer radial traction is the effective thermal
//! stress `H*`. The composite field under average stress `sigma0 I` is that
//! thermal field scaled by `dT` plus the mechanical field carrying the
//! remaining outer traction `sigma0 - dT H*`.

use serde::{Deserialize, Serialize};

use crate::bounds::hs_bulk;
use crate::error::{Error, Result};
use crate::material::{Composite, Loading, MomentExponent, Phase, PhaseProperties};

/// Relative tolerance for closed-form identities.
pub const IDENTITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    Core,
    Coating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientSource {
    Thermal,
    Mechanical,
    Combined,
}

/// Displacement coefficients of the radial ansatz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShellCoefficients {
    /// `C` in `u = C r`, core.
    pub core_linear: f64,
    /// `A` in `u = A r + B / r^2`, coating.
    pub coat_linear: f64,
    /// `B` in `u = A r + B / r^2`, coating.
    pub coat_inverse_square: f64,
    pub source: CoefficientSource,
}

impl ShellCoefficients {
    fn scaled(&self, s: f64) -> Self {
        Self {
            core_linear: self.core_linear * s,
            coat_linear: self.coat_linear * s,
            coat_inverse_square: self.coat_inverse_square * s,
            source: self.source,
        }
    }

    fn combined(&self, other: &Self) -> Self {
        Self {
            core_linear: self.core_linear + other.core_linear,
            coat_linear: self.coat_linear + other.coat_linear,
            coat_inverse_square: self.coat_inverse_square + other.coat_inverse_square,
            source: CoefficientSource::Combined,
        }
    }

    fn max_abs(&self) -> f64 {
        self.core_linear
            .abs()
            .max(self.coat_linear.abs())
            .max(self.coat_inverse_square.abs())
    }
}

/// Outer boundary condition at `r = b = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OuterCondition {
    /// `u(b) = 0`.
    Clamped,
    /// `sigma_rr(b) = value`.
    Traction(f64),
}

/// Effective constants of the assemblage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveProperties {
    pub bulk_modulus: f64,
    /// Scalar `H*` with `H^e = H* I`.
    pub thermal_stress: f64,
    /// `(C^e)^-1 I : I = 1 / K`.
    pub compliance_contraction: f64,
}

/// Hydrostatic stress constants of each layer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalFieldConstants {
    pub tr_sigma_core: f64,
    pub tr_sigma_coating: f64,
    /// `|tr sigma| / sqrt(3)` in the core.
    pub hydro_norm_core: f64,
    pub hydro_norm_coating: f64,
}

impl LocalFieldConstants {
    fn new(tr_core: f64, tr_coat: f64) -> Self {
        let s3 = 3f64.sqrt();
        Self {
            tr_sigma_core: tr_core,
            tr_sigma_coating: tr_coat,
            hydro_norm_core: tr_core.abs() / s3,
            hydro_norm_coating: tr_coat.abs() / s3,
        }
    }

    pub fn trace(&self, region: Region) -> f64 {
        match region {
            Region::Core => self.tr_sigma_core,
            Region::Coating => self.tr_sigma_coating,
        }
    }

    pub fn hydro_norm(&self, region: Region) -> f64 {
        match region {
            Region::Core => self.hydro_norm_core,
            Region::Coating => self.hydro_norm_coating,
        }
    }
}

/// One coated sphere: a core of one phase inside a concentric coating of the
/// other, with `(a/b)^3` equal to the core phase's volume fraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoatedSphere {
    core: PhaseProperties,
    coating: PhaseProperties,
    core_fraction: f64,
    core_phase: Phase,
}

impl CoatedSphere {
    /// Assemblage of `composite` with `core` as the core phase.
    pub fn new(composite: &Composite, core: Phase) -> Self {
        Self {
            core: *composite.phase(core),
            coating: *composite.phase(core.other()),
            core_fraction: composite.fraction(core),
            core_phase: core,
        }
    }

    /// Builds a sphere directly from layer properties, without the two-phase
    /// composite invariants (the layers may even be identical). The core is
    /// labeled phase 1 and the coating phase 2.
    pub fn from_layers(core: PhaseProperties, coating: PhaseProperties, core_fraction: f64) -> Result<Self> {
        core.validate()?;
        coating.validate()?;
        if !(core_fraction > 0.0 && core_fraction < 1.0) {
            return Err(Error::VolumeFractionOutOfRange(core_fraction));
        }
        Ok(Self {
            core,
            coating,
            core_fraction,
            core_phase: Phase::One,
        })
    }

    pub fn core_phase(&self) -> Phase {
        self.core_phase
    }

    pub fn coating_phase(&self) -> Phase {
        self.core_phase.other()
    }

    /// `(a/b)^3`.
    pub fn core_fraction(&self) -> f64 {
        self.core_fraction
    }

    /// Core radius `a` for `b = 1`.
    pub fn core_radius(&self) -> f64 {
        self.core_fraction.cbrt()
    }

    pub fn region_of(&self, phase: Phase) -> Region {
        if phase == self.core_phase {
            Region::Core
        } else {
            Region::Coating
        }
    }

    pub fn phase_of(&self, region: Region) -> Phase {
        match region {
            Region::Core => self.core_phase,
            Region::Coating => self.core_phase.other(),
        }
    }

    pub fn layer(&self, region: Region) -> &PhaseProperties {
        match region {
            Region::Core => &self.core,
            Region::Coating => &self.coating,
        }
    }

    pub fn fraction(&self, region: Region) -> f64 {
        match region {
            Region::Core => self.core_fraction,
            Region::Coating => 1.0 - self.core_fraction,
        }
    }

    pub fn phase_properties(&self, phase: Phase) -> &PhaseProperties {
        self.layer(self.region_of(phase))
    }

    pub fn phase_fraction(&self, phase: Phase) -> f64 {
        self.fraction(self.region_of(phase))
    }

    /// Solves interface continuity of `u` and `sigma_rr` at `r = a` together
    /// with `outer` at `r = 1`, with eigenstrain `h * delta_t * I` per layer.
    pub fn solve_shell(&self, delta_t: f64, outer: OuterCondition, source: CoefficientSource) -> Result<ShellCoefficients> {
        let a3 = self.core_fraction;
        let (kc, hc) = (self.core.bulk_modulus, self.core.thermal_expansion);
        let (ko, mo, ho) = (
            self.coating.bulk_modulus,
            self.coating.shear_modulus,
            self.coating.thermal_expansion,
        );
        // unknowns [C, A, B]
        let mut m = [
            [a3, -a3, -1.0],
            [3.0 * kc, -3.0 * ko, 4.0 * mo / a3],
            [0.0; 3],
        ];
        let mut rhs = [0.0, 3.0 * (kc * hc - ko * ho) * delta_t, 0.0];
        match outer {
            OuterCondition::Clamped => {
                m[2] = [0.0, 1.0, 1.0];
            }
            OuterCondition::Traction(s) => {
                m[2] = [0.0, 3.0 * ko, -4.0 * mo];
                rhs[2] = s + 3.0 * ko * ho * delta_t;
            }
        }
        let [c, a, b] = solve3(m, rhs).ok_or(Error::SingularInterfaceSystem)?;
        Ok(ShellCoefficients {
            core_linear: c,
            coat_linear: a,
            coat_inverse_square: b,
            source,
        })
    }

    /// Thermal coefficients at unit temperature change, clamped outer surface.
    pub fn thermal_coefficients(&self) -> Result<ShellCoefficients> {
        self.solve_shell(1.0, OuterCondition::Clamped, CoefficientSource::Thermal)
    }

    /// The closed forms for `A, B, C` of the clamped thermal problem, written
    /// for a general core/coating assignment.
    pub fn closed_form_thermal_coefficients(&self) -> ShellCoefficients {
        let tc = self.core_fraction;
        let (kc, hc) = (self.core.bulk_modulus, self.core.thermal_expansion);
        let (ko, mo, ho) = (
            self.coating.bulk_modulus,
            self.coating.shear_modulus,
            self.coating.thermal_expansion,
        );
        let mismatch = ko * ho - kc * hc;
        let den = 3.0 * ko * tc + 4.0 * mo + 3.0 * kc * (1.0 - tc);
        ShellCoefficients {
            core_linear: -3.0 * (1.0 - tc) * mismatch / den,
            coat_linear: 3.0 * tc * mismatch / den,
            // a^3 with b = 1
            coat_inverse_square: -3.0 * tc * mismatch / den,
            source: CoefficientSource::Thermal,
        }
    }

    /// Largest relative difference between the solved and closed-form thermal
    /// coefficients.
    pub fn closed_form_thermal_discrepancy(&self) -> Result<f64> {
        let solved = self.thermal_coefficients()?;
        let closed = self.closed_form_thermal_coefficients();
        let scale = solved.max_abs().max(closed.max_abs());
        if scale == 0.0 {
            return Ok(0.0);
        }
        let diff = (solved.core_linear - closed.core_linear)
            .abs()
            .max((solved.coat_linear - closed.coat_linear).abs())
            .max((solved.coat_inverse_square - closed.coat_inverse_square).abs());
        Ok(diff / scale)
    }

    /// Purely mechanical field with outer traction `sigma_rr(b) = sigma0`.
    pub fn mechanical_coefficients(&self, sigma0: f64) -> Result<ShellCoefficients> {
        self.solve_shell(0.0, OuterCondition::Traction(sigma0), CoefficientSource::Mechanical)
    }

    /// Largest relative residual of the three boundary conditions.
    pub fn boundary_residual(&self, coeffs: &ShellCoefficients, delta_t: f64, outer: OuterCondition) -> f64 {
        let field = LocalField {
            sphere: *self,
            coeffs: *coeffs,
            delta_t,
        };
        let a = self.core_radius();
        let u_in = coeffs.core_linear * a;
        let u_out = coeffs.coat_linear * a + coeffs.coat_inverse_square / (a * a);
        let s_in = field.radial_stress_in(Region::Core, a);
        let s_out = field.radial_stress_in(Region::Coating, a);
        let u_scale = u_in.abs().max(u_out.abs()).max(coeffs.max_abs() * a);
        let s_scale = s_in.abs().max(s_out.abs()).max(field.stress_scale());
        let mut res = rel(u_in - u_out, u_scale).max(rel(s_in - s_out, s_scale));
        match outer {
            OuterCondition::Clamped => {
                let ub = field.displacement(1.0);
                res = res.max(rel(ub, coeffs.max_abs()));
            }
            OuterCondition::Traction(s) => {
                let sb = field.radial_stress(1.0);
                res = res.max(rel(sb - s, s.abs().max(field.stress_scale())));
            }
        }
        res
    }

    /// `H*`: radial traction at `r = b` of the clamped thermal field at unit
    /// temperature change.
    pub fn thermal_traction(&self) -> Result<f64> {
        let th = self.thermal_coefficients()?;
        let field = LocalField {
            sphere: *self,
            coeffs: th,
            delta_t: 1.0,
        };
        Ok(field.radial_stress(1.0))
    }

    /// The closed form of `H*` for a general core/coating assignment.
    pub fn closed_form_effective_thermal_stress(&self) -> f64 {
        let tc = self.core_fraction;
        let (kc, hc) = (self.core.bulk_modulus, self.core.thermal_expansion);
        let (ko, mo, ho) = (
            self.coating.bulk_modulus,
            self.coating.shear_modulus,
            self.coating.thermal_expansion,
        );
        let den = 3.0 * ko * tc + 4.0 * mo + 3.0 * kc * (1.0 - tc);
        3.0 * tc * (3.0 * ko + 4.0 * mo) * (ko * ho - kc * hc) / den - 3.0 * ko * ho
    }

    /// Effective thermal stress `H*` (with `H^e = H* I`), computed both as the
    /// outer radial traction and as the volume average of the thermal stress.
    pub fn effective_thermal_stress(&self) -> Result<f64> {
        let th = self.thermal_coefficients()?;
        let field = LocalField {
            sphere: *self,
            coeffs: th,
            delta_t: 1.0,
        };
        let traction = field.radial_stress(1.0);
        // deviatoric part of the coating stress averages to zero over each shell
        let tr = field.constants();
        let average =
            (self.fraction(Region::Core) * tr.tr_sigma_core + self.fraction(Region::Coating) * tr.tr_sigma_coating) / 3.0;
        let scale = traction.abs().max(average.abs()).max(field.stress_scale());
        if rel(traction - average, scale) > IDENTITY_TOL {
            return Err(Error::ConsistencyFailure {
                what: "effective thermal stress",
                first: traction,
                second: average,
            });
        }
        Ok(traction)
    }

    /// Effective bulk modulus: the Hashin-Shtrikman expression built with the
    /// coating's shear modulus, checked against the average stress and strain
    /// of the mechanical solution.
    pub fn effective_bulk_modulus(&self) -> Result<f64> {
        let tc = self.core_fraction;
        let closed = hs_bulk(
            self.core.bulk_modulus,
            self.coating.bulk_modulus,
            tc,
            1.0 - tc,
            self.coating.shear_modulus,
        );
        let load = self.core.bulk_modulus.max(self.coating.bulk_modulus);
        let mech = self.mechanical_coefficients(load)?;
        let field = LocalField {
            sphere: *self,
            coeffs: mech,
            delta_t: 0.0,
        };
        let tr = field.constants();
        let tr_avg_stress = tc * tr.tr_sigma_core + (1.0 - tc) * tr.tr_sigma_coating;
        let tr_avg_strain = 3.0 * (tc * mech.core_linear + (1.0 - tc) * mech.coat_linear);
        let from_fields = tr_avg_stress / (3.0 * tr_avg_strain);
        if rel(closed - from_fields, closed.abs()) > IDENTITY_TOL {
            return Err(Error::ConsistencyFailure {
                what: "effective bulk modulus",
                first: closed,
                second: from_fields,
            });
        }
        Ok(closed)
    }

    pub fn effective_properties(&self) -> Result<EffectiveProperties> {
        let k = self.effective_bulk_modulus()?;
        Ok(EffectiveProperties {
            bulk_modulus: k,
            thermal_stress: self.effective_thermal_stress()?,
            compliance_contraction: 1.0 / k,
        })
    }

    /// The full field under `loading`, with `<sigma> = sigma0 I`.
    pub fn local_field(&self, loading: &Loading) -> Result<LocalField> {
        let thermal = self.thermal_coefficients()?;
        let h_star = LocalField {
            sphere: *self,
            coeffs: thermal,
            delta_t: 1.0,
        }
        .radial_stress(1.0);
        let dt = loading.delta_t;
        let mech = self.mechanical_coefficients(loading.sigma0 - dt * h_star)?;
        Ok(LocalField {
            sphere: *self,
            coeffs: mech.combined(&thermal.scaled(dt)),
            delta_t: dt,
        })
    }

    /// Clamped thermal field (`u(b) = 0`) for a temperature change `delta_t`.
    pub fn thermal_field(&self, delta_t: f64) -> Result<LocalField> {
        Ok(LocalField {
            sphere: *self,
            coeffs: self.thermal_coefficients()?.scaled(delta_t),
            delta_t,
        })
    }

    pub fn local_field_constants(&self, loading: &Loading) -> Result<LocalFieldConstants> {
        Ok(self.local_field(loading)?.constants())
    }

    /// `<|P^H sigma|^p>^(1/p)` over `phase`. The hydrostatic stress is constant
    /// in each phase, so this is the same for every `p`.
    pub fn phase_moment(&self, loading: &Loading, phase: Phase, p: MomentExponent) -> Result<f64> {
        let _ = p;
        Ok(self.local_field_constants(loading)?.hydro_norm(self.region_of(phase)))
    }

    /// Relative residual of the exact relation between `(C^e)^-1 H^e : I` and
    /// `(C^e)^-1 I : I`, evaluated with the phase labels of this sphere.
    pub fn verify_exact_relation(&self) -> Result<f64> {
        let p1 = self.phase_properties(Phase::One);
        let p2 = self.phase_properties(Phase::Two);
        let (k1, k2, h1, h2) = (p1.bulk_modulus, p2.bulk_modulus, p1.thermal_expansion, p2.thermal_expansion);
        if k1 == k2 {
            return Err(Error::EqualBulkModuli { k1, k2 });
        }
        let eff = self.effective_properties()?;
        let c = eff.compliance_contraction;
        // (C^e)^-1 (H* I) : I = H* / K for isotropic C^e
        let lhs = eff.thermal_stress * c;
        let den = 1.0 / k1 - 1.0 / k2;
        let rhs = (3.0 * (h2 - h1) * c + 3.0 * (h1 / k2 - h2 / k1)) / den;
        let scale = lhs
            .abs()
            .max((3.0 * (h2 - h1).abs() * c + 3.0 * (h1 / k2).abs() + 3.0 * (h2 / k1).abs()) / den.abs());
        Ok(rel(lhs - rhs, scale))
    }

    /// Relative residual of the average-stress identity for
    /// `tr <chi_2 sigma>` under `loading`.
    pub fn verify_average_identity(&self, loading: &Loading) -> Result<f64> {
        let p1 = self.phase_properties(Phase::One);
        let p2 = self.phase_properties(Phase::Two);
        let (k1, k2) = (p1.bulk_modulus, p2.bulk_modulus);
        if k1 == k2 {
            return Err(Error::EqualBulkModuli { k1, k2 });
        }
        let (t1, t2) = (self.phase_fraction(Phase::One), self.phase_fraction(Phase::Two));
        let consts = self.local_field_constants(loading)?;
        let lhs = t2 * consts.trace(self.region_of(Phase::Two));

        let eff = self.effective_properties()?;
        let c = eff.compliance_contraction;
        let (s0, dt) = (loading.sigma0, loading.delta_t);
        let lambda_trace = 3.0 * (t1 * p1.thermal_expansion + t2 * p2.thermal_expansion);
        let terms = [s0, -k1 * s0 * c, k1 * dt * eff.thermal_stress * c, k1 * dt * lambda_trace];
        let pre = 3.0 * k2 / (k2 - k1);
        let rhs = pre * terms.iter().sum::<f64>();
        let scale = lhs
            .abs()
            .max(pre.abs() * terms.iter().map(|t| t.abs()).sum::<f64>());
        Ok(rel(lhs - rhs, scale))
    }
}

fn rel(diff: f64, scale: f64) -> f64 {
    if scale == 0.0 {
        diff.abs()
    } else {
        diff.abs() / scale
    }
}

/// Gaussian elimination with partial pivoting.
fn solve3(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    let norm = m.iter().flatten().fold(0.0f64, |acc, x| acc.max(x.abs()));
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() <= f64::EPSILON * norm {
            return None;
        }
        m.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= f * m[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let s: f64 = (row + 1..3).map(|k| m[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / m[row][row];
    }
    Some(x)
}

/// Displacement and stress of a coated sphere at any radius `0 < r <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalField {
    sphere: CoatedSphere,
    coeffs: ShellCoefficients,
    delta_t: f64,
}

impl LocalField {
    pub fn sphere(&self) -> &CoatedSphere {
        &self.sphere
    }

    pub fn coefficients(&self) -> &ShellCoefficients {
        &self.coeffs
    }

    pub fn delta_t(&self) -> f64 {
        self.delta_t
    }

    pub fn region_at(&self, r: f64) -> Region {
        if r < self.sphere.core_radius() {
            Region::Core
        } else {
            Region::Coating
        }
    }

    fn displacement_in(&self, region: Region, r: f64) -> f64 {
        match region {
            Region::Core => self.coeffs.core_linear * r,
            Region::Coating => self.coeffs.coat_linear * r + self.coeffs.coat_inverse_square / (r * r),
        }
    }

    fn derivative_in(&self, region: Region, r: f64) -> f64 {
        match region {
            Region::Core => self.coeffs.core_linear,
            Region::Coating => self.coeffs.coat_linear - 2.0 * self.coeffs.coat_inverse_square / (r * r * r),
        }
    }

    /// `(sigma_rr, sigma_tt)` from the isotropic constitutive law.
    fn stresses_in(&self, region: Region, r: f64) -> (f64, f64) {
        let layer = self.sphere.layer(region);
        let e_rr = self.derivative_in(region, r);
        let e_tt = self.displacement_in(region, r) / r;
        let hydro = layer.bulk_modulus * (e_rr + 2.0 * e_tt - 3.0 * layer.thermal_expansion * self.delta_t);
        let shear = layer.shear_modulus * (e_rr - e_tt);
        (hydro + 4.0 / 3.0 * shear, hydro - 2.0 / 3.0 * shear)
    }

    fn radial_stress_in(&self, region: Region, r: f64) -> f64 {
        self.stresses_in(region, r).0
    }

    pub fn displacement(&self, r: f64) -> f64 {
        self.displacement_in(self.region_at(r), r)
    }

    pub fn radial_stress(&self, r: f64) -> f64 {
        self.stresses_in(self.region_at(r), r).0
    }

    pub fn hoop_stress(&self, r: f64) -> f64 {
        self.stresses_in(self.region_at(r), r).1
    }

    /// `tr sigma = sigma_rr + 2 sigma_tt` from the strain ansatz.
    pub fn trace_stress(&self, r: f64) -> f64 {
        let (rr, tt) = self.stresses_in(self.region_at(r), r);
        rr + 2.0 * tt
    }

    /// Per-layer traces `9 k (linear coefficient - h dT)`.
    pub fn constants(&self) -> LocalFieldConstants {
        let core = self.sphere.layer(Region::Core);
        let coat = self.sphere.layer(Region::Coating);
        LocalFieldConstants::new(
            9.0 * core.bulk_modulus * (self.coeffs.core_linear - core.thermal_expansion * self.delta_t),
            9.0 * coat.bulk_modulus * (self.coeffs.coat_linear - coat.thermal_expansion * self.delta_t),
        )
    }

    /// Magnitude of the stress terms; used to normalize residuals.
    pub fn stress_scale(&self) -> f64 {
        let a3 = self.sphere.core_fraction;
        let c = &self.coeffs;
        let core = self.sphere.layer(Region::Core);
        let coat = self.sphere.layer(Region::Coating);
        let dt = self.delta_t.abs();
        (3.0 * core.bulk_modulus * (c.core_linear.abs() + core.thermal_expansion.abs() * dt))
            .max(3.0 * coat.bulk_modulus * (c.coat_linear.abs() + coat.thermal_expansion.abs() * dt))
            .max(4.0 * coat.shear_modulus * c.coat_inverse_square.abs() / a3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material::{validate_composite, CompositeSpec};

    fn reference() -> Composite {
        validate_composite(&CompositeSpec::new(
            PhaseProperties::new(2.0, 1.0, 0.0),
            PhaseProperties::new(1.0, 0.5, 1.0),
            0.5,
        ))
        .unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn matched_eigenstrain_has_no_fluctuation() {
        // k h equal in both layers
        let core = PhaseProperties::new(1.0, 0.5, 1.0);
        let coat = PhaseProperties::new(2.0, 1.0, 0.5);
        let s = CoatedSphere::from_layers(core, coat, 0.4).unwrap();
        let th = s.thermal_coefficients().unwrap();
        assert!(th.max_abs() < 1e-15);
        let h = s.effective_thermal_stress().unwrap();
        assert!(close(h, -3.0 * 2.0 * 0.5, 1e-14));
    }

    #[test]
    fn zero_eigenstrain_gives_zero() {
        let c = CompositeSpec::new(
            PhaseProperties::new(2.0, 1.0, 0.0),
            PhaseProperties::new(1.0, 0.5, 0.0),
            0.3,
        );
        let s = CoatedSphere::new(&validate_composite(&c).unwrap(), Phase::Two);
        assert_eq!(s.thermal_coefficients().unwrap().max_abs(), 0.0);
        assert_eq!(s.effective_thermal_stress().unwrap(), 0.0);
        assert_eq!(s.mechanical_coefficients(0.0).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn solved_thermal_coefficients_match_closed_form() {
        for core in [Phase::One, Phase::Two] {
            let s = CoatedSphere::new(&reference(), core);
            assert!(s.closed_form_thermal_discrepancy().unwrap() < 1e-14);
            let h = s.effective_thermal_stress().unwrap();
            assert!(close(h, s.closed_form_effective_thermal_stress(), 1e-13));
            let th = s.thermal_coefficients().unwrap();
            assert!(s.boundary_residual(&th, 1.0, OuterCondition::Clamped) < 1e-14);
        }
    }

    #[test]
    fn homogeneous_sphere_is_uniform() {
        let p = PhaseProperties::new(1.7, 0.9, 0.0);
        let s = CoatedSphere::from_layers(p, p, 0.3).unwrap();
        let sigma0 = 2.5;
        let m = s.mechanical_coefficients(sigma0).unwrap();
        let expect = sigma0 / (3.0 * 1.7);
        assert!(close(m.core_linear, expect, 1e-14));
        assert!(close(m.coat_linear, expect, 1e-14));
        assert!(m.coat_inverse_square.abs() < 1e-15);
        let c = s.local_field_constants(&Loading::new(sigma0, 0.0)).unwrap();
        assert!(close(c.tr_sigma_core, 3.0 * sigma0, 1e-14));
        assert!(close(c.tr_sigma_coating, 3.0 * sigma0, 1e-14));
        assert!(close(s.effective_bulk_modulus().unwrap(), 1.7, 1e-14));
    }

    #[test]
    fn effective_bulk_is_hs_bound() {
        let c = reference();
        let s1 = CoatedSphere::new(&c, Phase::One);
        let s2 = CoatedSphere::new(&c, Phase::Two);
        assert!(close(s1.effective_bulk_modulus().unwrap(), 18.0 / 13.0, 1e-14));
        assert!(close(s2.effective_bulk_modulus().unwrap(), 24.0 / 17.0, 1e-14));
    }

    #[test]
    fn unloaded_is_zero() {
        let s = CoatedSphere::new(&reference(), Phase::One);
        let c = s.local_field_constants(&Loading::new(0.0, 0.0)).unwrap();
        assert_eq!(c.tr_sigma_core, 0.0);
        assert_eq!(c.tr_sigma_coating, 0.0);
    }

    #[test]
    fn outer_traction_equals_applied_stress() {
        let s = CoatedSphere::new(&reference(), Phase::Two);
        let f = s.local_field(&Loading::new(-3.0, 2.0)).unwrap();
        assert!(close(f.radial_stress(1.0), -3.0, 1e-13));
    }

    #[test]
    fn invalid_layers_rejected() {
        let p = PhaseProperties::new(1.0, 1.0, 0.0);
        assert!(CoatedSphere::from_layers(p, p, 1.0).is_err());
        assert!(CoatedSphere::from_layers(PhaseProperties::new(-1.0, 1.0, 0.0), p, 0.5).is_err());
    }

    #[test]
    fn singular_system_detected() {
        let m = [[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 1.0, 1.0]];
        assert!(solve3(m, [1.0, 2.0, 3.0]).is_none());
    }
}
