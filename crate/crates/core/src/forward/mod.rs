//! Exterior sound-soft scattering by a combined-field integral equation.
//!
//! The scattered field is sought as
//! `u^s(x) = ∫_{∂D} (∂Φ(x,y)/∂ν(y) − iηΦ(x,y)) φ(y) ds(y)`, which leads to
//! `(I/2 + K − iηS) φ = −u^i` on the boundary. The logarithmic singularities
//! of `S` and `K` are integrated with trigonometric product quadrature, so the
//! method converges spectrally on analytic curves. Several disjoint
//! components are coupled in one block system.

mod kernels;
mod mie;
mod trace;

use std::f64::consts::{PI, TAU};
use std::ops::Range;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::geometry::{BoundaryCurve, CurveSample};
use crate::incident::IncidentField;
use crate::linalg::{ComplexMatrix, LuFactor};
use crate::{Error, Result, Vec2, C64};

pub use kernels::{fundamental, fundamental_and_gradient_factor, log_weights};
pub use mie::{default_order as mie_default_order, mie_series_reference};
pub use trace::incident_trace;

use kernels::{
    combined_smooth, double_normal_derivative, log_sin2, spectral_derivative, split_diagonal,
    split_off_diagonal,
};

/// Largest accepted condition estimate of the Nyström matrix.
pub const MAX_CONDITION: f64 = 1e12;

/// Smallest node count per boundary component.
pub const MIN_NODES: usize = 32;

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Points closer than this (relative) to a boundary count as on it.
const ON_BOUNDARY_TOL: f64 = 1e-10;

/// Boundary nodes of all components at a fixed wavenumber.
#[derive(Debug)]
pub struct Discretization {
    curves: Vec<BoundaryCurve>,
    nodes: Vec<CurveSample>,
    ranges: Vec<Range<usize>>,
    n: usize,
    k: f64,
    eta: f64,
    log_weights: Vec<f64>,
}

impl Discretization {
    fn new(curves: &[BoundaryCurve], k: f64, n: usize, eta: f64) -> Result<Self> {
        if curves.is_empty() {
            return Err(Error::config("at least one obstacle is required"));
        }
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::config(format!("wavenumber must be positive, got {k}")));
        }
        if !n.is_multiple_of(2) || n < MIN_NODES {
            return Err(Error::config(format!(
                "node count must be even and at least {MIN_NODES}, got {n}"
            )));
        }
        let mut nodes = Vec::with_capacity(n * curves.len());
        let mut ranges = Vec::with_capacity(curves.len());
        for c in curves {
            c.validate()?;
            let start = nodes.len();
            nodes.extend(c.sample_nodes(n)?);
            ranges.push(start..nodes.len());
        }
        Ok(Discretization {
            curves: curves.to_vec(),
            nodes,
            ranges,
            n,
            k,
            eta,
            log_weights: log_weights(n),
        })
    }

    pub fn curves(&self) -> &[BoundaryCurve] {
        &self.curves
    }

    /// All nodes, component after component.
    pub fn nodes(&self) -> &[CurveSample] {
        &self.nodes
    }

    /// Index range of each component's nodes.
    pub fn ranges(&self) -> &[Range<usize>] {
        &self.ranges
    }

    /// Nodes per component.
    pub fn nodes_per_component(&self) -> usize {
        self.n
    }

    pub fn wavenumber(&self) -> f64 {
        self.k
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    fn weight(&self) -> f64 {
        TAU / self.n as f64
    }

    fn component_of(&self, i: usize) -> usize {
        i / self.n
    }

    fn log_weight(&self, a: usize, b: usize) -> f64 {
        self.log_weights[a.abs_diff(b)]
    }

    /// Checks that `x` lies strictly outside every component.
    pub fn check_exterior(&self, x: Vec2) -> Result<()> {
        if !x.is_finite() {
            return Err(Error::domain(format!("non-finite evaluation point {x:?}")));
        }
        for (c, curve) in self.curves.iter().enumerate() {
            let sd = curve.signed_distance(x);
            if sd <= ON_BOUNDARY_TOL * (1.0 + x.norm()) {
                return Err(Error::domain(format!(
                    "point {x:?} is inside or on obstacle {c} (signed distance {sd:e})"
                )));
            }
            let spacing = self.weight() * curve.max_speed();
            if sd < 5.0 * spacing {
                log::debug!("point {x:?} is {sd:e} from obstacle {c}; quadrature loses accuracy");
            }
        }
        Ok(())
    }

    fn system_row(&self, i: usize, row: &mut [C64]) {
        let (k, eta, w) = (self.k, self.eta, self.weight());
        let ci = self.component_of(i);
        let x = &self.nodes[i];
        let a = i - self.ranges[ci].start;
        for (c, range) in self.ranges.iter().enumerate() {
            for j in range.clone() {
                let y = &self.nodes[j];
                row[j] = if c != ci {
                    w * combined_smooth(k, eta, x.position, y)
                } else {
                    let b = j - range.start;
                    let p = if a == b {
                        split_diagonal(k, x)
                    } else {
                        split_off_diagonal(k, x, y)
                    };
                    let a1 = p.dl.0 - I * eta * p.phi.0 * y.jacobian;
                    let a2 = p.dl.1 - I * eta * p.phi.1 * y.jacobian;
                    let mut v = self.log_weight(a, b) * a1 + w * a2;
                    if a == b {
                        v += 0.5;
                    }
                    v
                };
            }
        }
    }

    fn system_matrix(&self) -> ComplexMatrix {
        let total = self.nodes.len();
        let mut m = ComplexMatrix::zeros(total, total);
        m.as_mut_slice()
            .par_chunks_mut(total)
            .enumerate()
            .for_each(|(i, row)| self.system_row(i, row));
        m
    }

    /// Combined-layer kernel row for a point `x` away from the boundary.
    fn field_row(&self, x: Vec2) -> Vec<C64> {
        let w = self.weight();
        self.nodes
            .iter()
            .map(|y| w * combined_smooth(self.k, self.eta, x, y))
            .collect()
    }
}

/// A factored Nyström system for one obstacle configuration, wavenumber and
/// node count; it solves for any number of incident fields.
#[derive(Debug)]
pub struct ForwardSolver {
    disc: Arc<Discretization>,
    lu: LuFactor,
    condition: f64,
}

impl ForwardSolver {
    /// Coupling parameter `η = k`.
    pub fn new(curves: &[BoundaryCurve], k: f64, n: usize) -> Result<Self> {
        Self::with_eta(curves, k, n, k)
    }

    /// Explicit coupling parameter, for diagnostics. With `η = 0` the system
    /// is singular at interior Neumann eigenvalues.
    pub fn with_eta(curves: &[BoundaryCurve], k: f64, n: usize, eta: f64) -> Result<Self> {
        let disc = Discretization::new(curves, k, n, eta)?;
        let lu = LuFactor::new(disc.system_matrix())?;
        let condition = lu.condition_estimate();
        if !(condition <= MAX_CONDITION) {
            return Err(Error::Numerical(format!(
                "Nyström matrix is ill-conditioned (estimate {condition:e} > {MAX_CONDITION:e})"
            )));
        }
        Ok(ForwardSolver {
            disc: Arc::new(disc),
            lu,
            condition,
        })
    }

    pub fn discretization(&self) -> &Discretization {
        &self.disc
    }

    /// 1-norm condition estimate of the factored system.
    pub fn condition(&self) -> f64 {
        self.condition
    }

    pub fn solve<F: IncidentField + ?Sized>(&self, field: &F) -> Result<DensitySolution> {
        let mut rhs = Vec::with_capacity(self.disc.nodes.len());
        for (curve, range) in self.disc.curves.iter().zip(&self.disc.ranges) {
            let trace = incident_trace(field, curve, &self.disc.nodes[range.clone()])?;
            rhs.extend(trace.into_iter().map(|v| -v));
        }
        if rhs.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numerical("incident trace is not finite".into()));
        }
        let density = self.lu.solve(&rhs);
        Ok(DensitySolution {
            disc: Arc::clone(&self.disc),
            density,
            boundary_values: rhs,
            normal_derivative: OnceLock::new(),
        })
    }
}

/// Solve the boundary integral equation for one obstacle.
pub fn solve_density<F: IncidentField + ?Sized>(
    curve: &BoundaryCurve,
    incident: &F,
    k: f64,
    n: usize,
) -> Result<DensitySolution> {
    ForwardSolver::new(std::slice::from_ref(curve), k, n)?.solve(incident)
}

/// Solve for a union of disjoint obstacles.
pub fn solve_density_multi<F: IncidentField + ?Sized>(
    curves: &[BoundaryCurve],
    incident: &F,
    k: f64,
    n: usize,
) -> Result<DensitySolution> {
    ForwardSolver::new(curves, k, n)?.solve(incident)
}

/// Layer density on the nodes plus the boundary traces it induces.
#[derive(Debug)]
pub struct DensitySolution {
    disc: Arc<Discretization>,
    density: Vec<C64>,
    /// `u^s` on the nodes (the right-hand side of the solved system).
    boundary_values: Vec<C64>,
    normal_derivative: OnceLock<Vec<C64>>,
}

impl Clone for DensitySolution {
    fn clone(&self) -> Self {
        DensitySolution {
            disc: Arc::clone(&self.disc),
            density: self.density.clone(),
            boundary_values: self.boundary_values.clone(),
            normal_derivative: self.normal_derivative.clone(),
        }
    }
}

impl DensitySolution {
    /// The first (for single-obstacle problems, the only) boundary.
    pub fn curve(&self) -> &BoundaryCurve {
        &self.disc.curves[0]
    }

    pub fn curves(&self) -> &[BoundaryCurve] {
        &self.disc.curves
    }

    pub fn k(&self) -> f64 {
        self.disc.k
    }

    pub fn eta(&self) -> f64 {
        self.disc.eta
    }

    pub fn nodes(&self) -> &[CurveSample] {
        &self.disc.nodes
    }

    pub fn density(&self) -> &[C64] {
        &self.density
    }

    pub fn discretization(&self) -> &Discretization {
        &self.disc
    }

    /// Same layer potential with the density multiplied by `c`.
    pub fn scaled(&self, c: C64) -> DensitySolution {
        DensitySolution {
            disc: Arc::clone(&self.disc),
            density: self.density.iter().map(|v| v * c).collect(),
            boundary_values: self.boundary_values.iter().map(|v| v * c).collect(),
            normal_derivative: OnceLock::new(),
        }
    }

    /// `u^s` on the nodes.
    pub fn boundary_values(&self) -> &[C64] {
        &self.boundary_values
    }

    /// Exterior normal derivative `∂u^s/∂ν` on the nodes, from the jump
    /// relations `∂_ν(DL φ) = Tφ` and `∂_ν(SL φ) = K'φ − φ/2`.
    pub fn normal_derivative(&self) -> &[C64] {
        self.normal_derivative
            .get_or_init(|| self.compute_normal_derivative())
    }

    fn compute_normal_derivative(&self) -> Vec<C64> {
        let d = &*self.disc;
        let (k, eta, w) = (d.k, d.eta, d.weight());
        let mut out = vec![C64::new(0.0, 0.0); d.nodes.len()];
        for (c, range) in d.ranges.iter().enumerate() {
            let nodes = &d.nodes[range.clone()];
            let psi = &self.density[range.clone()];
            let dpsi = spectral_derivative(psi);
            let per_node: Vec<(C64, C64, C64, C64)> = (0..nodes.len())
                .into_par_iter()
                .map(|a| {
                    let x = &nodes[a];
                    let (mut g, mut h, mut kp) = (C64::default(), C64::default(), C64::default());
                    for (b, y) in nodes.iter().enumerate() {
                        let p = if a == b {
                            split_diagonal(k, x)
                        } else {
                            split_off_diagonal(k, x, y)
                        };
                        let r = d.log_weight(a, b);
                        let phi = r * p.phi.0 + w * p.phi.1;
                        g += phi * dpsi[b];
                        h += phi * (x.normal.dot(y.normal) * y.jacobian) * psi[b];
                        kp += (r * p.adl.0 + w * p.adl.1) * psi[b];
                    }
                    let mut cross = C64::default();
                    for (c2, r2) in d.ranges.iter().enumerate() {
                        if c2 == c {
                            continue;
                        }
                        for j in r2.clone() {
                            let y = &d.nodes[j];
                            let dd = double_normal_derivative(k, x.position, x.normal, y.position, y.normal);
                            let diff = x.position - y.position;
                            let (_, grad) = fundamental_and_gradient_factor(k, diff.norm());
                            // ∂Φ/∂ν(x) = −grad·(x − y)·ν(x)
                            let dnx = -grad * diff.dot(x.normal);
                            cross += w * y.jacobian * (dd - I * eta * dnx) * self.density[j];
                        }
                    }
                    (g, h, kp, cross)
                })
                .collect();
            let g: Vec<C64> = per_node.iter().map(|v| v.0).collect();
            let dg = spectral_derivative(&g);
            for (a, x) in nodes.iter().enumerate() {
                let (_, h, kp, cross) = per_node[a];
                let t = dg[a] / x.jacobian + k * k * h;
                out[range.start + a] = t - I * eta * (kp - 0.5 * psi[a]) + cross;
            }
        }
        out
    }

    /// `u^s` at the boundary point with parameter `t` on component `c`, by
    /// Nyström interpolation of the layer potential's exterior limit.
    pub fn boundary_value_at(&self, c: usize, t: f64) -> Result<C64> {
        let d = &*self.disc;
        let range = d
            .ranges
            .get(c)
            .ok_or_else(|| Error::config(format!("no boundary component {c}")))?
            .clone();
        let (k, eta, w) = (d.k, d.eta, d.weight());
        let x = d.curves[c].evaluate(t);
        let psi = &self.density[range.clone()];
        let half = (d.n / 2) as f64;
        let mut sum = 0.5 * TrigSeries::new(psi).eval(t);
        for (b, y) in d.nodes[range.clone()].iter().enumerate() {
            let diff = t - y.t;
            let r_w = -(TAU / half)
                * (1..d.n / 2)
                    .map(|m| (m as f64 * diff).cos() / m as f64)
                    .sum::<f64>()
                - PI / (half * half) * (half * diff).cos();
            let p = if log_sin2(t, y.t).is_finite() {
                split_off_diagonal(k, &x, y)
            } else {
                split_diagonal(k, &x)
            };
            let a1 = p.dl.0 - I * eta * p.phi.0 * y.jacobian;
            let a2 = p.dl.1 - I * eta * p.phi.1 * y.jacobian;
            sum += (r_w * a1 + w * a2) * psi[b];
        }
        for (c2, r2) in d.ranges.iter().enumerate() {
            if c2 != c {
                for j in r2.clone() {
                    sum += w * combined_smooth(k, eta, x.position, &d.nodes[j]) * self.density[j];
                }
            }
        }
        Ok(sum)
    }
}

/// Scattered field at an exterior point.
pub fn eval_scattered(sol: &DensitySolution, x: Vec2) -> Result<C64> {
    sol.disc.check_exterior(x)?;
    Ok(eval_unchecked(sol, x))
}

fn eval_unchecked(sol: &DensitySolution, x: Vec2) -> C64 {
    let d = &*sol.disc;
    let w = d.weight();
    d.nodes
        .iter()
        .zip(&sol.density)
        .map(|(y, p)| w * combined_smooth(d.k, d.eta, x, y) * p)
        .sum()
}

/// Scattered field at `x` from Green's representation
/// `∫ (u^s ∂Φ/∂ν(y) − ∂u^s/∂ν Φ) ds` over the whole boundary.
pub fn greens_rep_eval(sol: &DensitySolution, x: Vec2) -> Result<C64> {
    sol.disc.check_exterior(x)?;
    let d = &*sol.disc;
    let w = d.weight();
    let dn = sol.normal_derivative();
    let mut sum = C64::default();
    for (j, y) in d.nodes.iter().enumerate() {
        let diff = x - y.position;
        let (phi, grad) = fundamental_and_gradient_factor(d.k, diff.norm());
        let dphi = grad * diff.dot(y.normal);
        sum += w * y.jacobian * (sol.boundary_values[j] * dphi - dn[j] * phi);
    }
    Ok(sum)
}

/// The part of the boundary where the incident field exceeds a fraction of
/// its maximum, resolved finely enough to integrate the boundary traces
/// against the fundamental solution.
#[derive(Debug, Clone)]
pub struct IlluminatedArc {
    k: f64,
    /// Position, outward normal, `u^s`, `∂u^s/∂ν` and arc-length weight.
    samples: Vec<(Vec2, Vec2, C64, C64, f64)>,
}

impl IlluminatedArc {
    /// Boundary points with `|u^i| ≥ relative · max |u^i|`; the traces of
    /// `sol` are evaluated there by trigonometric interpolation.
    pub fn new<F: IncidentField + ?Sized>(sol: &DensitySolution, field: &F, relative: f64) -> Self {
        let d = &*sol.disc;
        let dn = sol.normal_derivative();
        let mut candidates = Vec::new();
        let mut peak: f64 = 0.0;
        for (curve, range) in d.curves.iter().zip(&d.ranges) {
            let length = TAU * curve.max_speed();
            let cell = length / d.n as f64;
            let scale = field
                .strip()
                .map_or(cell, |s| s.resolution.min(s.half_width / 8.0));
            let m = ((length / (0.25 * scale.min(cell))).ceil() as usize).max(8 * d.n);
            let mut chosen = Vec::new();
            for q in 0..m {
                let t = TAU * (q as f64 + 0.5) / m as f64;
                let y = curve.evaluate(t);
                let v = field.value(y.position).norm();
                peak = peak.max(v);
                chosen.push((t, y, v));
            }
            candidates.push((range.clone(), m, chosen));
        }
        let mut samples = Vec::new();
        for (range, m, chosen) in candidates {
            let bv = TrigSeries::new(&sol.boundary_values[range.clone()]);
            let dv = TrigSeries::new(&dn[range]);
            for (t, y, v) in chosen {
                if peak > 0.0 && v >= relative * peak {
                    samples.push((
                        y.position,
                        y.normal,
                        bv.eval(t),
                        dv.eval(t),
                        TAU / m as f64 * y.jacobian,
                    ));
                }
            }
        }
        IlluminatedArc { k: d.k, samples }
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Total length of the arc.
    pub fn length(&self) -> f64 {
        self.samples.iter().map(|s| s.4).sum()
    }

    /// Green's representation integrated over the arc only.
    pub fn greens_rep_eval(&self, x: Vec2) -> C64 {
        self.samples
            .iter()
            .map(|&(y, ny, u, du, w)| {
                let diff = x - y;
                let (phi, grad) = fundamental_and_gradient_factor(self.k, diff.norm());
                w * (u * grad * diff.dot(ny) - du * phi)
            })
            .sum()
    }
}

/// Green's representation restricted to the illuminated arc.
pub fn greens_rep_eval_illuminated<F: IncidentField + ?Sized>(
    sol: &DensitySolution,
    field: &F,
    x: Vec2,
    relative: f64,
) -> Result<C64> {
    sol.disc.check_exterior(x)?;
    Ok(IlluminatedArc::new(sol, field, relative).greens_rep_eval(x))
}

/// Trigonometric interpolant of equispaced periodic samples; the Nyquist
/// mode enters as a cosine.
struct TrigSeries {
    coeffs: Vec<C64>,
}

impl TrigSeries {
    fn new(values: &[C64]) -> Self {
        let n = values.len();
        let nf = n as f64;
        let coeffs = (0..n)
            .map(|m| {
                values
                    .iter()
                    .enumerate()
                    .map(|(j, v)| v * C64::from_polar(1.0, -TAU * ((m * j) % n) as f64 / nf))
                    .sum::<C64>()
                    / nf
            })
            .collect();
        TrigSeries { coeffs }
    }

    fn eval(&self, t: f64) -> C64 {
        let n = self.coeffs.len();
        let nf = n as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| {
                if 2 * m < n {
                    c * C64::from_polar(1.0, m as f64 * t)
                } else if 2 * m == n {
                    c * (m as f64 * t).cos()
                } else {
                    c * C64::from_polar(1.0, (m as f64 - nf) * t)
                }
            })
            .sum()
    }
}

/// Receiver matrix mapping a density to the scattered field at fixed points.
#[derive(Debug, Clone)]
pub struct MeasurementOperator {
    receivers: Vec<Vec2>,
    matrix: ComplexMatrix,
}

impl MeasurementOperator {
    pub fn new(disc: &Discretization, receivers: &[Vec2]) -> Result<Self> {
        for &x in receivers {
            disc.check_exterior(x)?;
        }
        let rows: Vec<Vec<C64>> = receivers.par_iter().map(|&x| disc.field_row(x)).collect();
        let matrix = if rows.is_empty() {
            ComplexMatrix::zeros(0, disc.nodes.len())
        } else {
            ComplexMatrix::from_rows(rows)?
        };
        Ok(MeasurementOperator {
            receivers: receivers.to_vec(),
            matrix,
        })
    }

    pub fn receivers(&self) -> &[Vec2] {
        &self.receivers
    }

    /// Scattered field at the receivers; bit-identical to [`eval_scattered`]
    /// up to summation order.
    pub fn apply(&self, sol: &DensitySolution) -> Vec<C64> {
        self.matrix.mul_vec(&sol.density)
    }
}
