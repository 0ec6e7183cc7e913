//! Linear finite elements for the spherically symmetric equilibrium problem
//! of a layered sphere.
//!
//! The weak form is
//! `int [k (tr e - 3 h dT) tr(de) + 4/3 mu (u' - u/r)(du' - du/r)] r^2 dr = b^2 sigma_b du(b)`
//! with `tr e = u' + 2u/r`. With linear shape functions every integrand is a
//! polynomial of degree two in `r`, so two-point Gauss quadrature is exact and
//! radial fluxes balance element by element. Material constants are piecewise
//! constant per element and the core/coating interface sits on a node.
//! Regularity at the centre is the condition `u(0) = 0` on an implicit node at
//! `r = 0`; the grid itself starts at `r_0 > 0`.

use serde::{Deserialize, Serialize};

use crate::coated_sphere::{CoatedSphere, LocalField, LocalFieldConstants, OuterCondition, Region};
use crate::error::{Error, Result};
use crate::material::{Loading, MomentExponent, Phase};

pub const MIN_GRID_NODES: usize = 16;

/// Nodes in `(0, 1]` with one node exactly on the core radius.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    nodes: Vec<f64>,
    interface: usize,
}

impl RadialGrid {
    /// `n` nodes, uniformly spaced within the core and within the coating,
    /// split between the layers in proportion to their radial thickness.
    pub fn uniform(n: usize, core_radius: f64) -> Result<Self> {
        if n < MIN_GRID_NODES {
            return Err(Error::InvalidGrid(format!(
                "node count {n} is below the minimum {MIN_GRID_NODES}"
            )));
        }
        if !(core_radius > 0.0 && core_radius < 1.0) {
            return Err(Error::InvalidGrid(format!("core radius {core_radius} not in (0, 1)")));
        }
        let n_core = ((n as f64 * core_radius).round() as usize).clamp(2, n - 2);
        let n_coat = n - n_core;
        let mut nodes = Vec::with_capacity(n);
        nodes.extend((1..=n_core).map(|i| core_radius * i as f64 / n_core as f64));
        nodes[n_core - 1] = core_radius;
        nodes.extend((1..=n_coat).map(|j| core_radius + (1.0 - core_radius) * j as f64 / n_coat as f64));
        nodes[n - 1] = 1.0;
        Ok(Self {
            nodes,
            interface: n_core - 1,
        })
    }

    /// `n` nodes with the coating refined towards the interface: the core
    /// gets `round(n a / 2)` evenly spaced nodes and the coating spacing grows
    /// like `r^(5/2)`. The midpoint strain error of the `B / r^2` coating term
    /// scales like `h^2 / r^5`, so this spreads it evenly over the coating.
    pub fn graded(n: usize, core_radius: f64) -> Result<Self> {
        if n < MIN_GRID_NODES {
            return Err(Error::InvalidGrid(format!(
                "node count {n} is below the minimum {MIN_GRID_NODES}"
            )));
        }
        if !(core_radius > 0.0 && core_radius < 1.0) {
            return Err(Error::InvalidGrid(format!("core radius {core_radius} not in (0, 1)")));
        }
        let a = core_radius;
        let n_core = ((n as f64 * a / 2.0).round() as usize).clamp(2, n - 2);
        let n_coat = n - n_core;
        let mut nodes = Vec::with_capacity(n);
        nodes.extend((1..=n_core).map(|i| a * i as f64 / n_core as f64));
        nodes[n_core - 1] = a;
        // r^(-3/2) is linear in the node index
        let (w0, w1) = (a.powf(-1.5), 1.0);
        nodes.extend((1..=n_coat).map(|j| {
            let s = j as f64 / n_coat as f64;
            (w0 + s * (w1 - w0)).powf(-2.0 / 3.0)
        }));
        nodes[n - 1] = 1.0;
        if nodes.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidGrid("graded nodes are not strictly increasing".into()));
        }
        Ok(Self {
            nodes,
            interface: n_core - 1,
        })
    }

    /// Validates an explicit node list.
    pub fn from_nodes(nodes: Vec<f64>, core_radius: f64) -> Result<Self> {
        if nodes.len() < MIN_GRID_NODES {
            return Err(Error::InvalidGrid(format!(
                "node count {} is below the minimum {MIN_GRID_NODES}",
                nodes.len()
            )));
        }
        if !(nodes[0] > 0.0) || nodes.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidGrid("nodes must be positive and strictly increasing".into()));
        }
        if *nodes.last().unwrap() != 1.0 {
            return Err(Error::InvalidGrid("last node must be the outer radius 1".into()));
        }
        let hits: Vec<usize> = nodes
            .iter()
            .enumerate()
            .filter(|(_, &r)| r == core_radius)
            .map(|(i, _)| i)
            .collect();
        match hits.as_slice() {
            [i] if *i + 1 < nodes.len() => Ok(Self { nodes, interface: *i }),
            _ => Err(Error::InvalidGrid("the core radius must appear exactly once as an inner node".into())),
        }
    }

    /// Bisects every element, including the one touching the centre.
    pub fn refined(&self) -> Self {
        let mut nodes = Vec::with_capacity(2 * self.nodes.len());
        let mut prev = 0.0;
        for &r in &self.nodes {
            nodes.push(0.5 * (prev + r));
            nodes.push(r);
            prev = r;
        }
        Self {
            nodes,
            interface: 2 * self.interface + 1,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn interface_index(&self) -> usize {
        self.interface
    }

    pub fn core_radius(&self) -> f64 {
        self.nodes[self.interface]
    }

    /// Largest element length.
    pub fn max_spacing(&self) -> f64 {
        let mut prev = 0.0;
        self.nodes
            .iter()
            .map(|&r| {
                let h = r - prev;
                prev = r;
                h
            })
            .fold(0.0, f64::max)
    }
}

/// Stress sampled at the midpoint of one element.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldSample {
    pub r: f64,
    /// `int r^2 dr` over the element (shell volume over `4 pi`).
    pub volume: f64,
    pub region: Region,
    pub sigma_rr: f64,
    pub sigma_tt: f64,
    pub trace: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    core_phase: Phase,
    core_radius: f64,
    pub nodes: Vec<f64>,
    pub displacement: Vec<f64>,
    pub samples: Vec<FieldSample>,
    interface_jump: f64,
}

impl RadialSolution {
    /// Samples an exact field on the same points a numerical solve would use.
    pub fn from_analytic(field: &LocalField, grid: &RadialGrid) -> Self {
        let sphere = field.sphere();
        let mut prev = 0.0;
        let mut samples = Vec::with_capacity(grid.len());
        for (i, &r) in grid.nodes().iter().enumerate() {
            let mid = 0.5 * (prev + r);
            let region = if i <= grid.interface_index() {
                Region::Core
            } else {
                Region::Coating
            };
            let (rr, tt) = (field.radial_stress(mid), field.hoop_stress(mid));
            samples.push(FieldSample {
                r: mid,
                volume: (r * r * r - prev * prev * prev) / 3.0,
                region,
                sigma_rr: rr,
                sigma_tt: tt,
                trace: field.trace_stress(mid),
            });
            prev = r;
        }
        Self {
            core_phase: sphere.core_phase(),
            core_radius: grid.core_radius(),
            nodes: grid.nodes().to_vec(),
            displacement: grid.nodes().iter().map(|&r| field.displacement(r)).collect(),
            samples,
            interface_jump: 0.0,
        }
    }

    pub fn region_of(&self, phase: Phase) -> Region {
        if phase == self.core_phase {
            Region::Core
        } else {
            Region::Coating
        }
    }

    pub fn core_radius(&self) -> f64 {
        self.core_radius
    }

    /// Volume-weighted mean of `tr sigma` over a layer.
    pub fn trace_estimate(&self, region: Region) -> f64 {
        let (num, den) = self
            .samples
            .iter()
            .filter(|s| s.region == region)
            .fold((0.0, 0.0), |(n, d), s| (n + s.trace * s.volume, d + s.volume));
        num / den
    }

    /// Largest deviation of the sampled `tr sigma` from a layer's constant.
    pub fn max_trace_deviation(&self, region: Region, value: f64) -> f64 {
        self.samples
            .iter()
            .filter(|s| s.region == region)
            .map(|s| (s.trace - value).abs())
            .fold(0.0, f64::max)
    }

    /// Largest sampled `tr sigma` deviation from the exact per-layer constants,
    /// relative to the larger of the two constants.
    pub fn trace_error(&self, exact: &LocalFieldConstants) -> f64 {
        let scale = exact.tr_sigma_core.abs().max(exact.tr_sigma_coating.abs());
        let dev = self
            .max_trace_deviation(Region::Core, exact.tr_sigma_core)
            .max(self.max_trace_deviation(Region::Coating, exact.tr_sigma_coating));
        if scale == 0.0 {
            dev
        } else {
            dev / scale
        }
    }

    /// `|sigma_rr(a-) - sigma_rr(a+)|` evaluated from the two elements touching
    /// the interface node.
    pub fn interface_traction_jump(&self) -> f64 {
        self.interface_jump
    }
}

fn thomas(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut beta = diag[0];
    if beta == 0.0 || !beta.is_finite() {
        return Err(Error::SingularSystem);
    }
    c[0] = if n > 1 { upper[0] / beta } else { 0.0 };
    d[0] = rhs[0] / beta;
    for i in 1..n {
        beta = diag[i] - lower[i - 1] * c[i - 1];
        if beta == 0.0 || !beta.is_finite() {
            return Err(Error::SingularSystem);
        }
        if i + 1 < n {
            c[i] = upper[i] / beta;
        }
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / beta;
    }
    for i in (0..n - 1).rev() {
        d[i] -= c[i] * d[i + 1];
    }
    Ok(d)
}

const GAUSS: f64 = 0.577_350_269_189_625_8; // 1/sqrt(3)

/// Solves the layered-sphere problem for `loading`: eigenstrain
/// `h * dT * I` per layer and outer traction `sigma_rr(1) = sigma0`.
pub fn solve_radial_bvp(sphere: &CoatedSphere, loading: &Loading, grid: &RadialGrid) -> Result<RadialSolution> {
    solve_radial_bvp_with(sphere, loading.delta_t, OuterCondition::Traction(loading.sigma0), grid)
}

pub fn solve_radial_bvp_with(
    sphere: &CoatedSphere,
    delta_t: f64,
    outer: OuterCondition,
    grid: &RadialGrid,
) -> Result<RadialSolution> {
    if (grid.core_radius() - sphere.core_radius()).abs() > 1e-14 {
        return Err(Error::InvalidGrid(format!(
            "grid interface {} does not match the core radius {}",
            grid.core_radius(),
            sphere.core_radius()
        )));
    }
    let n = grid.len();
    let nodes = grid.nodes();
    let region_of_element = |e: usize| {
        if e <= grid.interface_index() {
            Region::Core
        } else {
            Region::Coating
        }
    };

    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n - 1]; // symmetric: off[i] couples i and i+1
    let mut rhs = vec![0.0; n];

    // element e spans [nodes[e-1], nodes[e]] (nodes[-1] = 0 is fixed)
    for e in 0..n {
        let rl = if e == 0 { 0.0 } else { nodes[e - 1] };
        let rr = nodes[e];
        let h = rr - rl;
        let layer = sphere.layer(region_of_element(e));
        let (k, mu) = (layer.bulk_modulus, layer.shear_modulus);
        let eig = 3.0 * k * layer.thermal_expansion * delta_t;
        let mut ke = [[0.0; 2]; 2];
        let mut fe = [0.0; 2];
        let mid = 0.5 * (rl + rr);
        for xi in [-GAUSS, GAUSS] {
            let r = mid + 0.5 * h * xi;
            let w = 0.5 * h * r * r;
            let shape = [(rr - r) / h, (r - rl) / h];
            let slope = [-1.0 / h, 1.0 / h];
            let tr = [slope[0] + 2.0 * shape[0] / r, slope[1] + 2.0 * shape[1] / r];
            let dv = [slope[0] - shape[0] / r, slope[1] - shape[1] / r];
            for i in 0..2 {
                for j in 0..2 {
                    ke[i][j] += w * (k * tr[i] * tr[j] + 4.0 / 3.0 * mu * dv[i] * dv[j]);
                }
                fe[i] += w * eig * tr[i];
            }
        }
        if e > 0 {
            diag[e - 1] += ke[0][0];
            off[e - 1] += ke[0][1];
            rhs[e - 1] += fe[0];
        }
        diag[e] += ke[1][1];
        rhs[e] += fe[1];
    }

    match outer {
        OuterCondition::Clamped => {
            diag[n - 1] = 1.0;
            rhs[n - 1] = 0.0;
            off[n - 2] = 0.0;
        }
        OuterCondition::Traction(s) => rhs[n - 1] += s,
    }

    let u = thomas(&off, &diag, &off, &rhs)?;

    let stresses = |e: usize, r: f64| {
        let rl = if e == 0 { 0.0 } else { nodes[e - 1] };
        let ul = if e == 0 { 0.0 } else { u[e - 1] };
        let rr = nodes[e];
        let h = rr - rl;
        let du = (u[e] - ul) / h;
        let ur = ul + du * (r - rl);
        let layer = sphere.layer(region_of_element(e));
        let hydro = layer.bulk_modulus * (du + 2.0 * ur / r - 3.0 * layer.thermal_expansion * delta_t);
        let shear = layer.shear_modulus * (du - ur / r);
        (hydro + 4.0 / 3.0 * shear, hydro - 2.0 / 3.0 * shear)
    };

    let mut samples = Vec::with_capacity(n);
    let mut prev = 0.0;
    for e in 0..n {
        let r = nodes[e];
        let mid = 0.5 * (prev + r);
        let (srr, stt) = stresses(e, mid);
        samples.push(FieldSample {
            r: mid,
            volume: (r * r * r - prev * prev * prev) / 3.0,
            region: region_of_element(e),
            sigma_rr: srr,
            sigma_tt: stt,
            trace: srr + 2.0 * stt,
        });
        prev = r;
    }
    let i = grid.interface_index();
    let a = nodes[i];
    let jump = (stresses(i, a).0 - stresses(i + 1, a).0).abs();

    Ok(RadialSolution {
        core_phase: sphere.core_phase(),
        core_radius: a,
        nodes: nodes.to_vec(),
        displacement: u,
        samples,
        interface_jump: jump,
    })
}

/// Sampled `tr sigma` error on a grid and on its bisection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceConvergence {
    pub coarse_nodes: usize,
    pub coarse_error: f64,
    pub fine_error: f64,
    /// `log2(coarse_error / fine_error)`.
    pub order: f64,
}

/// Solves on `grid` and on `grid.refined()` and measures the observed order
/// of the `tr sigma` error against the exact layer constants.
pub fn trace_convergence(sphere: &CoatedSphere, loading: &Loading, grid: &RadialGrid) -> Result<TraceConvergence> {
    let exact = sphere.local_field_constants(loading)?;
    let coarse = solve_radial_bvp(sphere, loading, grid)?.trace_error(&exact);
    let fine = solve_radial_bvp(sphere, loading, &grid.refined())?.trace_error(&exact);
    Ok(TraceConvergence {
        coarse_nodes: grid.len(),
        coarse_error: coarse,
        fine_error: fine,
        order: (coarse / fine).log2(),
    })
}

/// Layer-mean `tr sigma` extrapolated from three nested grids.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Richardson {
    /// Observed order; infinite when the two finer grids already agree.
    pub order: f64,
    pub tr_sigma_core: f64,
    pub tr_sigma_coating: f64,
}

impl Richardson {
    /// Largest deviation from the exact constants, relative to the larger one.
    pub fn error(&self, exact: &LocalFieldConstants) -> f64 {
        let scale = exact.tr_sigma_core.abs().max(exact.tr_sigma_coating.abs());
        let dev = (self.tr_sigma_core - exact.tr_sigma_core)
            .abs()
            .max((self.tr_sigma_coating - exact.tr_sigma_coating).abs());
        if scale == 0.0 {
            dev
        } else {
            dev / scale
        }
    }
}

/// Extrapolates the layer means from `grid`, its bisection and its double
/// bisection: `p = log2(|T1 - T2| / |T2 - T4|)`, `T = T4 + (T4 - T2) / (2^p - 1)`.
pub fn richardson(sphere: &CoatedSphere, loading: &Loading, grid: &RadialGrid) -> Result<Richardson> {
    richardson_with(sphere, loading.delta_t, OuterCondition::Traction(loading.sigma0), grid)
}

/// [`richardson`] for an arbitrary outer condition.
pub fn richardson_with(
    sphere: &CoatedSphere,
    delta_t: f64,
    outer: OuterCondition,
    grid: &RadialGrid,
) -> Result<Richardson> {
    let g2 = grid.refined();
    let g4 = g2.refined();
    let sols = [
        solve_radial_bvp_with(sphere, delta_t, outer, grid)?,
        solve_radial_bvp_with(sphere, delta_t, outer, &g2)?,
        solve_radial_bvp_with(sphere, delta_t, outer, &g4)?,
    ];
    let means = |region| sols.iter().map(|s| s.trace_estimate(region)).collect::<Vec<f64>>();
    let (core, coat) = (means(Region::Core), means(Region::Coating));
    // order from the layer with the larger coarse change
    let pick = if (core[0] - core[1]).abs() >= (coat[0] - coat[1]).abs() {
        &core
    } else {
        &coat
    };
    let (d1, d2) = ((pick[0] - pick[1]).abs(), (pick[1] - pick[2]).abs());
    let order = if d2 == 0.0 {
        f64::INFINITY
    } else if d1 == 0.0 {
        return Err(Error::NonConvergent("layer means do not change under refinement of the coarse grid".into()));
    } else {
        (d1 / d2).log2()
    };
    if !(order > 0.0) {
        return Err(Error::NonConvergent(format!("observed order {order} is not positive")));
    }
    let extrapolate = |t: &[f64]| {
        if order.is_infinite() {
            t[2]
        } else {
            t[2] + (t[2] - t[1]) / (order.exp2() - 1.0)
        }
    };
    Ok(Richardson {
        order,
        tr_sigma_core: extrapolate(&core),
        tr_sigma_coating: extrapolate(&coat),
    })
}

/// `(<(|tr sigma| / sqrt 3)^p>_phase)^(1/p)` by midpoint quadrature over the
/// phase's shells.
pub fn sampled_moment(solution: &RadialSolution, phase: Phase, p: MomentExponent) -> f64 {
    let region = solution.region_of(phase);
    let s3 = 3f64.sqrt();
    let parts = solution.samples.iter().filter(|s| s.region == region);
    match p {
        MomentExponent::Infinity => parts.map(|s| s.trace.abs() / s3).fold(0.0, f64::max),
        MomentExponent::Finite(p) => {
            let (num, vol) = parts.fold((0.0, 0.0), |(n, v), s| {
                (n + (s.trace.abs() / s3).powf(p) * s.volume, v + s.volume)
            });
            (num / vol).powf(1.0 / p)
        }
    }
}

/// Largest relative discrepancy of `u` at the nodes and of `tr sigma` at the
/// sample points. Each field is normalized by its largest exact magnitude.
pub fn compare_fields(analytic: &LocalField, numeric: &RadialSolution) -> f64 {
    let u_exact: Vec<f64> = numeric.nodes.iter().map(|&r| analytic.displacement(r)).collect();
    let u_scale = u_exact.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let u_err = u_exact
        .iter()
        .zip(&numeric.displacement)
        .map(|(e, n)| (e - n).abs())
        .fold(0.0, f64::max);
    let tr_exact: Vec<f64> = numeric.samples.iter().map(|s| analytic.trace_stress(s.r)).collect();
    let tr_scale = tr_exact.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let tr_err = tr_exact
        .iter()
        .zip(&numeric.samples)
        .map(|(e, s)| (e - s.trace).abs())
        .fold(0.0, f64::max);
    let norm = |err: f64, scale: f64| if scale == 0.0 { err } else { err / scale };
    norm(u_err, u_scale).max(norm(tr_err, tr_scale))
}
