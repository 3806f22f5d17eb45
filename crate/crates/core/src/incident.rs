//! Incident fields: the tapered beam, plane waves and point sources.
//!
//! The beam is `u^i = e^{ik x·d} (1 + w) e^{-(x·d⊥)²/λ²}` with
//! `w = (2(x·d⊥)²/λ² − 1)/(k²λ²)`, `d = (sin θ_i, −cos θ_i)`,
//! `d⊥ = (−d₂, d₁)` and `λ = g |cos θ_i|`. Its axis passes through the origin.
//!
//! [`TaperForm::PhaseModulated`] places `w` inside the phase instead,
//! `e^{ik x·d (1 + w)} e^{-(x·d⊥)²/λ²}`; that variant solves
//! `Δu + k²u = k²F` exactly with the source `F` of [`TaperedWave::source`].
//! The multiplicative form does not, see [`pde_residual`].

use crate::specfun::hankel01;
use crate::{Error, Result, Vec2, C64};

/// Pointwise-evaluable incident field.
pub trait IncidentField: Sync {
    fn value(&self, x: Vec2) -> C64;

    /// Narrow support description, if the field vanishes (to double
    /// precision) outside a strip. The forward solver uses it to integrate
    /// the boundary trace at the strip's own length scale.
    fn strip(&self) -> Option<BeamStrip> {
        None
    }
}

/// The set `{x : |x·normal − offset| ≤ half_width}`, outside of which a field
/// is negligible, together with the length scale on which it varies there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamStrip {
    pub normal: Vec2,
    pub offset: f64,
    pub half_width: f64,
    pub resolution: f64,
}

/// Where `w` enters the beam expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TaperForm {
    /// Amplitude factor `(1 + w)`, as in the beam definition above.
    #[default]
    Printed,
    /// Phase factor `e^{ik x·d (1 + w)}`.
    PhaseModulated,
}

impl TaperForm {
    pub fn name(self) -> &'static str {
        match self {
            TaperForm::Printed => "printed",
            TaperForm::PhaseModulated => "phase",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(TaperForm::Printed),
            "phase" => Ok(TaperForm::PhaseModulated),
            other => Err(Error::config(format!(
                "unknown taper form {other:?}; expected \"printed\" or \"phase\""
            ))),
        }
    }
}

/// Half-width of the beam support in units of λ: `e^{-64}` is far below
/// double precision relative to the beam's peak, `1/(kλ)²` included.
pub const BEAM_SUPPORT_WIDTHS: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaperedWave {
    pub k: f64,
    pub g: f64,
    pub d: Vec2,
    pub theta_i: f64,
    pub lambda: f64,
    pub d_perp: Vec2,
    pub form: TaperForm,
}

impl TaperedWave {
    /// Beam of wavenumber `k` and taper `g` propagating along the unit vector `d`.
    pub fn new(k: f64, g: f64, d: Vec2) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::config(format!("wavenumber must be positive, got {k}")));
        }
        if !(g > 0.0 && g.is_finite()) {
            return Err(Error::config(format!(
                "taper parameter must be positive, got {g}"
            )));
        }
        if (d.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::config(format!("direction {d:?} is not a unit vector")));
        }
        if (d.x * d.y).abs() < 1e-6 {
            return Err(Error::config(format!(
                "direction {d:?} is (nearly) axis-aligned; the beam needs d1*d2 != 0"
            )));
        }
        // sin θ = d1, cos θ = −d2
        let theta_i = incidence_angle(d);
        Ok(TaperedWave {
            k,
            g,
            d,
            theta_i,
            lambda: g * d.y.abs(),
            d_perp: d.perp(),
            form: TaperForm::Printed,
        })
    }

    /// Beam with incidence angle `theta_i`, i.e. `d = (sin θ_i, −cos θ_i)`.
    pub fn from_angle(k: f64, g: f64, theta_i: f64) -> Result<Self> {
        let (s, c) = theta_i.sin_cos();
        Self::new(k, g, Vec2::new(s, -c))
    }

    pub fn with_form(mut self, form: TaperForm) -> Self {
        self.form = form;
        self
    }

    /// Transverse modulation `w(x)`.
    pub fn w(&self, x: Vec2) -> f64 {
        let s = x.dot(self.d_perp);
        let l2 = self.lambda * self.lambda;
        (2.0 * s * s / l2 - 1.0) / (self.k * self.k * l2)
    }

    /// Gaussian envelope `e^{-(x·d⊥)²/λ²}`.
    pub fn envelope(&self, x: Vec2) -> f64 {
        let s = x.dot(self.d_perp) / self.lambda;
        (-s * s).exp()
    }

    pub fn eval(&self, x: Vec2) -> C64 {
        let p = x.dot(self.d);
        let w = self.w(x);
        let env = self.envelope(x);
        match self.form {
            TaperForm::Printed => C64::from_polar(env * (1.0 + w), self.k * p),
            TaperForm::PhaseModulated => C64::from_polar(env, self.k * p * (1.0 + w)),
        }
    }

    /// The source `F` with `Δu^i + k²u^i = k²F`:
    /// `F = u^i {−w² − 16 (x·d)²(x·d⊥)²/(k⁴λ⁸) + 4ik x·d/(k⁴λ⁴) (1 − 4(x·d⊥)²/λ²)}`.
    pub fn source(&self, x: Vec2) -> C64 {
        let p = x.dot(self.d);
        let s = x.dot(self.d_perp);
        let w = self.w(x);
        let k4 = self.k.powi(4);
        let l2 = self.lambda * self.lambda;
        let l4 = l2 * l2;
        let real = -w * w - 16.0 * p * p * s * s / (k4 * l4 * l4);
        let imag = 4.0 * self.k * p / (k4 * l4) * (1.0 - 4.0 * s * s / l2);
        self.eval(x) * C64::new(real, imag)
    }
}

impl IncidentField for TaperedWave {
    fn value(&self, x: Vec2) -> C64 {
        self.eval(x)
    }

    fn strip(&self) -> Option<BeamStrip> {
        let half_width = BEAM_SUPPORT_WIDTHS * self.lambda;
        let mut resolution = (0.5 * self.lambda).min(std::f64::consts::PI / self.k);
        if self.form == TaperForm::PhaseModulated {
            // Bound the phase gradient k(1+w) along d and k (x·d) w' across it,
            // for |x·d| up to 10.
            let a = 1.0 / (self.k * self.k * self.lambda * self.lambda);
            let w_max = a * (2.0 * BEAM_SUPPORT_WIDTHS * BEAM_SUPPORT_WIDTHS + 1.0);
            let dw_max = 4.0 * a * BEAM_SUPPORT_WIDTHS / self.lambda;
            let grad = self.k * (1.0 + w_max) + self.k * 10.0 * dw_max;
            resolution = resolution.min(0.5 / grad);
        }
        Some(BeamStrip {
            normal: self.d_perp,
            offset: 0.0,
            half_width,
            resolution,
        })
    }
}

/// Plane wave `e^{ik x·d}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    pub k: f64,
    pub d: Vec2,
}

impl PlaneWave {
    pub fn new(k: f64, d: Vec2) -> Self {
        PlaneWave { k, d }
    }
}

impl IncidentField for PlaneWave {
    fn value(&self, x: Vec2) -> C64 {
        eval_plane(self.k, self.d, x)
    }
}

pub fn eval_plane(k: f64, d: Vec2, x: Vec2) -> C64 {
    C64::from_polar(1.0, k * x.dot(d))
}

/// Field of a point source at `y`: the fundamental solution `Φ(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointSource {
    pub k: f64,
    pub y: Vec2,
}

impl IncidentField for PointSource {
    fn value(&self, x: Vec2) -> C64 {
        eval_point_source(self.k, self.y, x).unwrap_or(C64::new(f64::NAN, f64::NAN))
    }
}

/// `Φ(x, y) = (i/4) H_0^(1)(k|x − y|)`.
pub fn eval_point_source(k: f64, y: Vec2, x: Vec2) -> Result<C64> {
    let r = x.dist(y);
    if r == 0.0 {
        return Err(Error::domain(format!(
            "fundamental solution is singular at x = y = {x:?}"
        )));
    }
    Ok(C64::new(0.0, 0.25) * hankel01(k * r).0)
}

/// Fields with a known Helmholtz source term, for residual checks.
pub trait HelmholtzSource {
    fn wavenumber(&self) -> f64;
    fn field(&self, x: Vec2) -> C64;
    /// `F` in `Δu + k²u = k²F`.
    fn source_term(&self, x: Vec2) -> C64;
    /// Size of the decaying envelope at `x` (1 for undamped waves).
    fn envelope_at(&self, x: Vec2) -> f64 {
        let _ = x;
        1.0
    }
}

impl HelmholtzSource for TaperedWave {
    fn wavenumber(&self) -> f64 {
        self.k
    }
    fn field(&self, x: Vec2) -> C64 {
        self.eval(x)
    }
    fn source_term(&self, x: Vec2) -> C64 {
        self.source(x)
    }
    fn envelope_at(&self, x: Vec2) -> f64 {
        self.envelope(x)
    }
}

impl HelmholtzSource for PlaneWave {
    fn wavenumber(&self) -> f64 {
        self.k
    }
    fn field(&self, x: Vec2) -> C64 {
        self.value(x)
    }
    fn source_term(&self, _x: Vec2) -> C64 {
        C64::new(0.0, 0.0)
    }
}

/// Smallest envelope accepted by [`pde_residual`].
pub const RESIDUAL_MIN_ENVELOPE: f64 = 1e-30;

/// Normalised residual of `Δu + k²u = k²F` with the five-point Laplacian:
/// `|Δ_h u + k²u − k²F| / (k²(|u| + |F|) + 1e-300)`.
pub fn pde_residual<F: HelmholtzSource + ?Sized>(field: &F, x: Vec2, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::config(format!("step must be positive, got {h}")));
    }
    let env = field.envelope_at(x);
    if env < RESIDUAL_MIN_ENVELOPE {
        return Err(Error::domain(format!(
            "envelope {env:e} at {x:?} is in the underflow region"
        )));
    }
    let k2 = field.wavenumber().powi(2);
    let u = field.field(x);
    let lap = (field.field(x + Vec2::new(h, 0.0))
        + field.field(x - Vec2::new(h, 0.0))
        + field.field(x + Vec2::new(0.0, h))
        + field.field(x - Vec2::new(0.0, h))
        - 4.0 * u)
        / (h * h);
    let f = field.source_term(x);
    Ok((lap + k2 * u - k2 * f).norm() / (k2 * (u.norm() + f.norm()) + 1e-300))
}

/// Incidence angle `θ` of the direction `d = (sin θ, −cos θ)`.
pub fn incidence_angle(d: Vec2) -> f64 {
    d.x.atan2(-d.y)
}
