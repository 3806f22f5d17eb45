//! Least-squares fit of one point source plus dipole to receiver data.

use crate::forward::fundamental_and_gradient_factor;
use crate::{Error, Result, Vec2, C64};

/// Best candidate of [`point_source_fit`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointSourceFit {
    pub location: Vec2,
    /// Monopole strength.
    pub strength: C64,
    /// Dipole moment (coefficients of `∂Φ/∂y₁`, `∂Φ/∂y₂`).
    pub dipole: [C64; 2],
    /// `‖data − model‖ / ‖data‖`, or the absolute residual for zero data.
    pub relative_residual: f64,
}

const RANK_TOL: f64 = 1e-12;

/// For each candidate `y`, fit `c Φ(·,y) + p · ∇_y Φ(·,y)` to `data` at the
/// receivers and keep the candidate with the smallest residual (the first
/// one on ties). Candidates on a receiver or with a rank-deficient design
/// are skipped.
pub fn point_source_fit(
    data: &[C64],
    receivers: &[Vec2],
    k: f64,
    candidates: &[Vec2],
) -> Result<PointSourceFit> {
    if data.len() != receivers.len() {
        return Err(Error::config(format!(
            "{} data values for {} receivers",
            data.len(),
            receivers.len()
        )));
    }
    if receivers.len() < 4 {
        return Err(Error::config("a point-source fit needs at least 4 receivers"));
    }
    if candidates.is_empty() {
        return Err(Error::config("no candidate locations"));
    }
    let data_norm = norm(data);
    let mut best: Option<PointSourceFit> = None;
    for &y in candidates {
        let Some((coef, res)) = fit_one(data, receivers, k, y) else {
            continue;
        };
        let rel = if data_norm > 0.0 { res / data_norm } else { res };
        if best.is_none_or(|b| rel < b.relative_residual) {
            best = Some(PointSourceFit {
                location: y,
                strength: coef[0],
                dipole: [coef[1], coef[2]],
                relative_residual: rel,
            });
        }
    }
    best.ok_or_else(|| Error::Numerical("every candidate gave a degenerate fit".into()))
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Coefficients and absolute residual via modified Gram–Schmidt.
fn fit_one(data: &[C64], receivers: &[Vec2], k: f64, y: Vec2) -> Option<([C64; 3], f64)> {
    let m = receivers.len();
    let mut cols = [
        vec![C64::default(); m],
        vec![C64::default(); m],
        vec![C64::default(); m],
    ];
    for (i, &x) in receivers.iter().enumerate() {
        let r = x.dist(y);
        if r <= 1e-12 * (1.0 + x.norm()) {
            return None;
        }
        let (phi, grad) = fundamental_and_gradient_factor(k, r);
        let diff = x - y;
        cols[0][i] = phi;
        cols[1][i] = grad * diff.x;
        cols[2][i] = grad * diff.y;
    }
    let scale = cols.iter().map(|c| norm(c)).fold(0.0, f64::max);
    let mut r = [[C64::default(); 3]; 3];
    for j in 0..3 {
        for i in 0..j {
            let (qi, rest) = cols.split_at_mut(j);
            let proj = dot(&qi[i], &rest[0]);
            r[i][j] = proj;
            for (v, q) in rest[0].iter_mut().zip(&qi[i]) {
                *v -= proj * q;
            }
        }
        let nj = norm(&cols[j]);
        if !(nj > RANK_TOL * scale) {
            return None;
        }
        r[j][j] = C64::new(nj, 0.0);
        cols[j].iter_mut().for_each(|v| *v /= nj);
    }
    let mut resid = data.to_vec();
    let mut rhs = [C64::default(); 3];
    for j in 0..3 {
        rhs[j] = dot(&cols[j], &resid);
        for (v, q) in resid.iter_mut().zip(&cols[j]) {
            *v -= rhs[j] * q;
        }
    }
    let mut coef = [C64::default(); 3];
    for j in (0..3).rev() {
        let s: C64 = (j + 1..3).map(|l| r[j][l] * coef[l]).sum();
        coef[j] = (rhs[j] - s) / r[j][j];
    }
    Some((coef, norm(&resid)))
}
