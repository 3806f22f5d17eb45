//! Separation-of-variables solution for a sound-soft disk under plane-wave
//! incidence.

use crate::specfun::{bessel_j_orders, hankel1_orders};
use crate::{Error, Result, Vec2, C64};

/// Scattered field at `x` of the disk of radius `a` centred at the origin,
/// hit by `e^{ik x·d}`, with the series truncated at order `order`:
/// `u^s = −Σ_{|m|≤N} i^m J_m(ka)/H_m(ka) H_m(k|x|) e^{im(θ_x − θ_d)}`.
pub fn mie_series_reference(a: f64, k: f64, d: Vec2, x: Vec2, order: usize) -> Result<C64> {
    let r = x.norm();
    if r <= a {
        return Err(Error::domain(format!(
            "point {x:?} is not outside the disk of radius {a}"
        )));
    }
    if (order as f64) < k * a + 12.0 {
        return Err(Error::config(format!(
            "truncation order {order} is below ka + 12 = {}",
            k * a + 12.0
        )));
    }
    let ja = bessel_j_orders(order, k * a);
    let ha = hankel1_orders(order, k * a)?;
    let hr = hankel1_orders(order, k * r)?;
    let psi = x.angle() - d.angle();
    let mut sum = ja[0] / ha[0] * hr[0];
    let mut im_pow = C64::new(1.0, 0.0);
    for m in 1..=order {
        im_pow *= C64::new(0.0, 1.0);
        let term = ja[m] / ha[m] * hr[m];
        if !term.is_finite() {
            break;
        }
        sum += 2.0 * im_pow * term * (m as f64 * psi).cos();
    }
    Ok(-sum)
}

/// Truncation order used when none is specified: `ka + 12` plus a margin
/// growing like `(ka)^{1/3}`.
pub fn default_order(k: f64, a: f64) -> usize {
    let ka = k * a;
    (ka + 12.0 + 4.0 * ka.cbrt()).ceil() as usize
}
