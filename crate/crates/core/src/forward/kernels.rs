//! Kernels of the boundary operators with their logarithmic splitting, and
//! the quadrature rules used to integrate them.
//!
//! Every weakly singular kernel is written as
//! `A(t, τ) = A₁(t, τ) ln(4 sin²((t − τ)/2)) + A₂(t, τ)` with smooth `A₁, A₂`.

use std::f64::consts::{PI, TAU};

use crate::geometry::CurveSample;
use crate::specfun::{bessel_jy01, EULER_GAMMA};
use crate::{Vec2, C64};

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// `Φ(x, y) = (i/4) H₀(k|x − y|)`.
pub fn fundamental(k: f64, r: f64) -> C64 {
    let [j0, _, y0, _] = bessel_jy01(k * r);
    0.25 * I * C64::new(j0, y0)
}

/// `Φ` and the combination `(ik/4) H₁(kr)/r`, so that
/// `∇_y Φ(x, y) = that · (x − y)`.
#[inline]
pub fn fundamental_and_gradient_factor(k: f64, r: f64) -> (C64, C64) {
    let [j0, j1, y0, y1] = bessel_jy01(k * r);
    (0.25 * I * C64::new(j0, y0), 0.25 * k * I * C64::new(j1, y1) / r)
}

/// Weights `R_j`, `j = 0..n`, of trigonometric interpolatory quadrature for
/// `∫₀^{2π} ln(4 sin²((t_i − τ)/2)) f(τ) dτ ≈ Σ_j R_{|i−j|} f(t_j)` on `n`
/// equispaced nodes (`n` even).
pub fn log_weights(n: usize) -> Vec<f64> {
    let half = n / 2;
    let hf = half as f64;
    (0..n)
        .map(|j| {
            let s: f64 = (1..half)
                .map(|m| (m as f64 * j as f64 * PI / hf).cos() / m as f64)
                .sum();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            -TAU / hf * s - PI / (hf * hf) * sign
        })
        .collect()
}

/// `ln(4 sin²((t − τ)/2))` for `t ≠ τ`.
#[inline]
pub fn log_sin2(t: f64, tau: f64) -> f64 {
    let s = (0.5 * (t - tau)).sin();
    (4.0 * s * s).ln()
}

/// Split kernels of the unit operators at one node pair. `x` is the target
/// node, `y` the source node.
#[derive(Debug, Clone, Copy)]
pub struct SplitPair {
    /// Single layer `Φ |y'|` without the jacobian: (`A₁`, `A₂`).
    pub phi: (C64, C64),
    /// Double layer `∂Φ/∂ν(y) |y'|`.
    pub dl: (C64, C64),
    /// Adjoint double layer `∂Φ/∂ν(x) |y'|`.
    pub adl: (C64, C64),
}

/// Split kernels for `x ≠ y` on the same boundary.
pub fn split_off_diagonal(k: f64, x: &CurveSample, y: &CurveSample) -> SplitPair {
    let d = x.position - y.position;
    let r = d.norm();
    let [j0, j1, y0, y1] = bessel_jy01(k * r);
    let h0 = C64::new(j0, y0);
    let h1 = C64::new(j1, y1);
    let ln = log_sin2(x.t, y.t);

    let phi = 0.25 * I * h0;
    let phi1 = C64::new(-j0 / (4.0 * PI), 0.0);

    let ny = Vec2::new(y.tangent.y, -y.tangent.x);
    let dl = 0.25 * k * I * h1 * ny.dot(d) / r;
    let dl1 = C64::new(-k / (4.0 * PI) * ny.dot(d) * j1 / r, 0.0);

    let nx_d = x.normal.dot(d) * y.jacobian;
    let adl = -0.25 * k * I * h1 * nx_d / r;
    let adl1 = C64::new(k / (4.0 * PI) * nx_d * j1 / r, 0.0);

    SplitPair {
        phi: (phi1, phi - phi1 * ln),
        dl: (dl1, dl - dl1 * ln),
        adl: (adl1, adl - adl1 * ln),
    }
}

/// Limits of the split kernels at `τ = t`.
pub fn split_diagonal(k: f64, x: &CurveSample) -> SplitPair {
    let phi1 = C64::new(-1.0 / (4.0 * PI), 0.0);
    let phi2 = C64::new(-EULER_GAMMA / TAU - (0.5 * k * x.jacobian).ln() / TAU, 0.25);
    let n = Vec2::new(x.tangent.y, -x.tangent.x);
    let curv = n.dot(x.second) / (4.0 * PI * x.jacobian * x.jacobian);
    let zero = C64::new(0.0, 0.0);
    SplitPair {
        phi: (phi1, phi2),
        dl: (zero, C64::new(curv, 0.0)),
        adl: (zero, C64::new(curv, 0.0)),
    }
}

/// Combined kernel `(∂Φ/∂ν(y) − iηΦ)(x, y) |y'|` for well-separated points.
#[inline]
pub fn combined_smooth(k: f64, eta: f64, x: Vec2, y: &CurveSample) -> C64 {
    let d = x - y.position;
    let r = d.norm();
    let (phi, grad) = fundamental_and_gradient_factor(k, r);
    let ny = Vec2::new(y.tangent.y, -y.tangent.x);
    grad * ny.dot(d) - I * eta * phi * y.jacobian
}

/// `∂²Φ/∂ν(x)∂ν(y)` for well-separated points.
pub fn double_normal_derivative(k: f64, x: Vec2, nx: Vec2, y: Vec2, ny: Vec2) -> C64 {
    let d = x - y;
    let r = d.norm();
    let [j0, j1, y0, y1] = bessel_jy01(k * r);
    let h0 = C64::new(j0, y0);
    let h1 = C64::new(j1, y1);
    let f = 0.25 * k * I * h1 / r;
    let fp = 0.25 * k * I * (k * h0 / r - 2.0 * h1 / (r * r));
    fp * nx.dot(d) * ny.dot(d) / r + f * nx.dot(ny)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=m {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            dp = mf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    (nodes, weights)
}

/// Spectral derivative of a periodic sequence sampled at `t_j = 2πj/n`;
/// the Nyquist mode is dropped.
pub fn spectral_derivative(values: &[C64]) -> Vec<C64> {
    let n = values.len();
    let nf = n as f64;
    let tw: Vec<C64> = (0..n)
        .map(|j| C64::from_polar(1.0, -TAU * j as f64 / nf))
        .collect();
    let mut coeffs = vec![C64::new(0.0, 0.0); n];
    for (m, c) in coeffs.iter_mut().enumerate() {
        *c = values
            .iter()
            .enumerate()
            .map(|(j, v)| v * tw[(m * j) % n])
            .sum::<C64>()
            / nf;
    }
    let freq = |m: usize| -> f64 {
        if 2 * m < n {
            m as f64
        } else if 2 * m == n {
            0.0
        } else {
            m as f64 - nf
        }
    };
    (0..n)
        .map(|j| {
            (0..n)
                .map(|m| coeffs[m] * I * freq(m) * tw[(m * j) % n].conj())
                .sum()
        })
        .collect()
}
