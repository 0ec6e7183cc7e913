//! Piecewise classification of a bound over the applied stress axis.
//!
//! Tables are generated from the minimization itself: candidate breakpoints
//! are the loads where an endpoint affine expression vanishes,
//! `sigma0 = D (1 - 1/t)`, the degenerate load `sigma0 = D`, and for the
//! max-field bound the loads where a phase-2 endpoint and a phase-1 endpoint
//! have equal magnitude, `sigma0 = D (1 - 2/(t2 + t1))`. Each gap between
//! candidates is classified by evaluating the minimization inside it, and
//! neighbours with the same branch and microstructure are merged.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::constants::{characteristic_constants, compliance_interval, BoundConstants};
use super::minimize::{bound_with_constants, max_with_constants, BoundBranch, BoundResult, MicrostructureDescriptor, SQRT_3};
use crate::material::{Composite, Phase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundTarget {
    Phase1Moment,
    Phase2Moment,
    MaxField,
}

impl BoundTarget {
    pub fn phase(self) -> Option<Phase> {
        match self {
            BoundTarget::Phase1Moment => Some(Phase::One),
            BoundTarget::Phase2Moment => Some(Phase::Two),
            BoundTarget::MaxField => None,
        }
    }

    pub fn for_phase(phase: Phase) -> Self {
        match phase {
            Phase::One => BoundTarget::Phase1Moment,
            Phase::Two => BoundTarget::Phase2Moment,
        }
    }

    /// Evaluates the bound for this target at one applied stress.
    pub fn evaluate(self, composite: &Composite, constants: &BoundConstants, sigma0: f64) -> BoundResult {
        match self.phase() {
            Some(phase) => bound_with_constants(composite, constants, sigma0, phase),
            None => max_with_constants(composite, constants, sigma0),
        }
    }
}

impl fmt::Display for BoundTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundTarget::Phase1Moment => "phase1",
            BoundTarget::Phase2Moment => "phase2",
            BoundTarget::MaxField => "max",
        })
    }
}

/// One closed interval `[sigma0_from, sigma0_to]` of the applied stress axis
/// (endpoints may be infinite) with a single closed-form bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeRow {
    pub sigma0_from: f64,
    pub sigma0_to: f64,
    pub branch: BoundBranch,
    /// Phase whose moment governs this row (the winning phase for max-field).
    pub phase: Phase,
    /// Value of the governing ratio (`L_i` or `M_i`); `None` on the zero branch.
    pub ratio: Option<f64>,
    pub microstructure: MicrostructureDescriptor,
}

impl RegimeRow {
    pub fn contains(&self, sigma0: f64) -> bool {
        self.sigma0_from <= sigma0 && sigma0 <= self.sigma0_to
    }

    /// Closed-form value of this row's formula.
    pub fn value_at(&self, sigma0: f64, d: f64) -> f64 {
        match self.ratio {
            Some(t) => self.branch.evaluate(t, sigma0, d),
            None => 0.0,
        }
    }

    /// Human-readable formula with numeric constants substituted.
    pub fn formula(&self, d: f64) -> String {
        match (self.branch, self.ratio) {
            (BoundBranch::Zero, _) | (_, None) => "0".to_string(),
            (BoundBranch::LLeft | BoundBranch::MLeft, Some(t)) => {
                format!("sqrt(3)*(({d:e} - sigma0)*{t:e} - ({d:e}))")
            }
            (_, Some(t)) => format!("sqrt(3)*((sigma0 - ({d:e}))*{t:e} + ({d:e}))"),
        }
    }

    /// Name of the governing ratio, e.g. `L2`.
    pub fn ratio_name(&self) -> Option<String> {
        self.branch
            .kind()
            .map(|k| format!("{:?}{}", k, self.phase.number()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeTable {
    pub target: BoundTarget,
    pub constants: BoundConstants,
    pub rows: Vec<RegimeRow>,
}

impl RegimeTable {
    /// Finite breakpoints between consecutive rows, increasing.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.rows.iter().skip(1).map(|r| r.sigma0_from).collect()
    }

    /// The first row whose closed interval contains `sigma0`. At a shared
    /// breakpoint this is the row on the left; both rows agree in value there.
    pub fn row_at(&self, sigma0: f64) -> &RegimeRow {
        self.rows
            .iter()
            .find(|r| r.contains(sigma0))
            .expect("regime rows cover the real line")
    }

    pub fn value_at(&self, sigma0: f64) -> f64 {
        self.row_at(sigma0).value_at(sigma0, self.constants.d)
    }
}

fn candidate_breakpoints(composite: &Composite, constants: &BoundConstants, target: BoundTarget) -> Vec<f64> {
    let d = constants.d;
    let mut out = vec![d];
    let phases: Vec<Phase> = match target.phase() {
        Some(p) => vec![p],
        None => vec![Phase::One, Phase::Two],
    };
    let endpoints = |p: Phase| {
        let iv = compliance_interval(composite, p);
        [iv.lo, iv.hi]
    };
    for &p in &phases {
        for t in endpoints(p) {
            out.push(constants.zero_crossing_load(t));
        }
    }
    if target == BoundTarget::MaxField {
        for t2 in endpoints(Phase::Two) {
            for t1 in endpoints(Phase::One) {
                out.push(d * (1.0 - 2.0 / (t1 + t2)));
            }
        }
    }
    out.retain(|x| x.is_finite());
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    out.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * a.abs().max(b.abs()));
    out
}

fn row_from(result: &BoundResult, from: f64, to: f64) -> RegimeRow {
    RegimeRow {
        sigma0_from: from,
        sigma0_to: to,
        branch: result.branch,
        phase: result.phase,
        ratio: result.branch.kind().map(|_| result.argmin),
        microstructure: result.microstructure,
    }
}

/// Generates the regime table of `target` for a fixed temperature change.
pub fn regime_table(composite: &Composite, delta_t: f64, target: BoundTarget) -> RegimeTable {
    let constants = characteristic_constants(composite, delta_t);
    let cuts = candidate_breakpoints(composite, &constants, target);

    let mut edges = Vec::with_capacity(cuts.len() + 2);
    edges.push(f64::NEG_INFINITY);
    edges.extend(cuts.iter().copied());
    edges.push(f64::INFINITY);

    let mut rows: Vec<RegimeRow> = Vec::with_capacity(edges.len());
    for w in edges.windows(2) {
        let (from, to) = (w[0], w[1]);
        let probe = match (from.is_finite(), to.is_finite()) {
            (true, true) => 0.5 * (from + to),
            (false, true) => to - to.abs().max(1.0),
            (true, false) => from + from.abs().max(1.0),
            (false, false) => 0.0,
        };
        let result = target.evaluate(composite, &constants, probe);
        let row = row_from(&result, from, to);
        match rows.last_mut() {
            Some(prev)
                if prev.branch == row.branch
                    && prev.phase == row.phase
                    && prev.microstructure == row.microstructure =>
            {
                prev.sigma0_to = to;
            }
            _ => rows.push(row),
        }
    }
    RegimeTable {
        target,
        constants,
        rows,
    }
}

/// Magnitude of the terms entering a bound at `sigma0`; used as the scale of
/// relative comparisons near zero crossings.
pub fn bound_scale(constants: &BoundConstants, sigma0: f64) -> f64 {
    let tmax = constants
        .l1
        .max(constants.l2)
        .max(constants.m1)
        .max(constants.m2);
    SQRT_3 * ((sigma0 - constants.d).abs() * tmax + constants.d.abs())
}
