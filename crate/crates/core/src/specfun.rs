//! Bessel functions J_n, Y_n and Hankel functions H_n^(1) of integer order
//! and real positive argument.
//!
//! J_n comes from Miller's downward recurrence normalised by the sum rule
//! `J_0 + 2 Σ J_2m = 1`. The same sweep feeds the Neumann series for Y_0 and
//! Y_1, so below [`ASYMPTOTIC_MIN_X`] one recurrence pass yields all four
//! low-order functions. Above it, orders 0 and 1 use Hankel's asymptotic
//! expansion, whose smallest term there is below 1e-20. Y_n for n >= 2 follows
//! from upward recurrence, which is stable for the dominant solution.

use std::f64::consts::{FRAC_2_PI, PI};

use crate::{Error, Result, C64};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Crossover between the recurrence/Neumann route and the asymptotic
/// expansion for orders 0 and 1.
pub const ASYMPTOTIC_MIN_X: f64 = 25.0;

const RESCALE_AT: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;

/// Bessel function of the first kind J_n(x) for x >= 0.
///
/// Returns NaN outside the domain (negative or non-finite `x`).
pub fn bessel_j(n: u32, x: f64) -> f64 {
    if !(x >= 0.0) || !x.is_finite() {
        return f64::NAN;
    }
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if n <= 1 && x > ASYMPTOTIC_MIN_X {
        return hankel_asymptotic(n, x).0;
    }
    miller_sweep(n as usize, x).j[n as usize]
}

/// Bessel function of the second kind Y_n(x) for x > 0.
pub fn bessel_y(n: u32, x: f64) -> Result<f64> {
    check_positive(x)?;
    let (y0, y1) = if x > ASYMPTOTIC_MIN_X {
        (hankel_asymptotic(0, x).1, hankel_asymptotic(1, x).1)
    } else {
        let s = miller_sweep(1, x);
        (s.y0(), s.y1())
    };
    Ok(upward_y(n as usize, x, y0, y1)[n as usize])
}

/// Hankel function of the first kind H_n^(1)(x) = J_n(x) + i Y_n(x).
pub fn hankel1(n: u32, x: f64) -> Result<C64> {
    check_positive(x)?;
    Ok(C64::new(bessel_j(n, x), bessel_y(n, x)?))
}

/// `[J_0, J_1, Y_0, Y_1]` at `x > 0` from a single evaluation path.
///
/// This is the hot path for boundary-integral kernels; callers guarantee
/// `x > 0`.
pub fn bessel_jy01(x: f64) -> [f64; 4] {
    debug_assert!(x > 0.0);
    if x > ASYMPTOTIC_MIN_X {
        let (j0, y0) = hankel_asymptotic(0, x);
        let (j1, y1) = hankel_asymptotic(1, x);
        [j0, j1, y0, y1]
    } else {
        let s = miller_sweep(1, x);
        [s.j[0], s.j[1], s.y0(), s.y1()]
    }
}

/// `(H_0^(1)(x), H_1^(1)(x))` for `x > 0`.
pub fn hankel01(x: f64) -> (C64, C64) {
    let [j0, j1, y0, y1] = bessel_jy01(x);
    (C64::new(j0, y0), C64::new(j1, y1))
}

/// `J_0(x) ..= J_nmax(x)` from one downward recurrence.
pub fn bessel_j_orders(nmax: usize, x: f64) -> Vec<f64> {
    if x == 0.0 {
        let mut v = vec![0.0; nmax + 1];
        v[0] = 1.0;
        return v;
    }
    let mut j = miller_sweep(nmax, x).j;
    j.truncate(nmax + 1);
    j
}

/// `Y_0(x) ..= Y_nmax(x)` for `x > 0`.
pub fn bessel_y_orders(nmax: usize, x: f64) -> Result<Vec<f64>> {
    check_positive(x)?;
    let [_, _, y0, y1] = bessel_jy01(x);
    Ok(upward_y(nmax, x, y0, y1))
}

/// `H^(1)_0(x) ..= H^(1)_nmax(x)` for `x > 0`.
pub fn hankel1_orders(nmax: usize, x: f64) -> Result<Vec<C64>> {
    let y = bessel_y_orders(nmax, x)?;
    let j = bessel_j_orders(nmax, x);
    Ok(j.into_iter().zip(y).map(|(a, b)| C64::new(a, b)).collect())
}

fn check_positive(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "Y_n and H_n are singular or undefined at x = {x}; need x > 0"
        )))
    }
}

fn upward_y(nmax: usize, x: f64, y0: f64, y1: f64) -> Vec<f64> {
    let mut y = Vec::with_capacity(nmax + 1);
    y.push(y0);
    if nmax >= 1 {
        y.push(y1);
    }
    for k in 1..nmax {
        let next = (2.0 * k as f64 / x) * y[k] - y[k - 1];
        y.push(next);
    }
    y
}

/// Result of a Miller sweep: normalised `J_0..=J_{nmax+1}` plus the two
/// Neumann sums needed for Y_0 and Y_1.
struct Sweep {
    x: f64,
    j: Vec<f64>,
    /// Σ_{k>=1} (-1)^k J_{2k} / k
    neumann0: f64,
    /// Σ_{k>=1} (-1)^k (J_{2k-1} - J_{2k+1}) / k
    neumann1: f64,
}

impl Sweep {
    fn log_term(&self) -> f64 {
        (0.5 * self.x).ln() + EULER_GAMMA
    }

    fn y0(&self) -> f64 {
        FRAC_2_PI * (self.log_term() * self.j[0] - 2.0 * self.neumann0)
    }

    fn y1(&self) -> f64 {
        FRAC_2_PI * (self.log_term() * self.j[1] - self.j[0] / self.x + self.neumann1)
    }
}

fn miller_start(nmax: usize, x: f64) -> usize {
    let m = (nmax as f64).max(x);
    let s = (m + 20.0 + (40.0 * m).sqrt()).ceil() as usize;
    s + (s & 1)
}

/// Coefficient of f_m in the Y_1 Neumann sum (odd m only).
fn neumann1_coeff(m: usize) -> f64 {
    let sign = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let k_plus = m.div_ceil(2);
    let mut c = sign(k_plus) / k_plus as f64;
    if m >= 3 {
        let k_minus = (m - 1) / 2;
        c -= sign(k_minus) / k_minus as f64;
    }
    c
}

fn miller_sweep(nmax: usize, x: f64) -> Sweep {
    debug_assert!(x > 0.0);
    let start = miller_start(nmax, x);
    let keep = nmax + 1;
    let mut stored = vec![0.0; keep + 1];

    let mut f_above = 0.0;
    let mut f = 1.0;
    let mut sum = 0.0;
    let mut s0 = 0.0;
    let mut s1 = 0.0;

    let mut k = start;
    loop {
        if k <= keep {
            stored[k] = f;
        }
        if k.is_multiple_of(2) {
            if k == 0 {
                sum += f;
            } else {
                sum += 2.0 * f;
                let half = k / 2;
                let sign = if half.is_multiple_of(2) { 1.0 } else { -1.0 };
                s0 += sign * f / half as f64;
            }
        } else {
            s1 += neumann1_coeff(k) * f;
        }
        if k == 0 {
            break;
        }
        let below = (2.0 * k as f64 / x) * f - f_above;
        f_above = f;
        f = below;
        k -= 1;
        if f.abs() > RESCALE_AT {
            f *= RESCALE_BY;
            f_above *= RESCALE_BY;
            sum *= RESCALE_BY;
            s0 *= RESCALE_BY;
            s1 *= RESCALE_BY;
            for v in stored.iter_mut() {
                *v *= RESCALE_BY;
            }
        }
    }

    let inv = 1.0 / sum;
    for v in stored.iter_mut() {
        *v *= inv;
    }
    Sweep {
        x,
        j: stored,
        neumann0: s0 * inv,
        neumann1: s1 * inv,
    }
}

/// Hankel's expansion for large argument: `(J_n(x), Y_n(x))`.
fn hankel_asymptotic(n: u32, x: f64) -> (f64, f64) {
    let mu = 4.0 * (n as f64) * (n as f64);
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term: f64 = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200usize {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        let mag = term.abs();
        if mag > prev {
            break;
        }
        let signed = if k % 4 == 0 || k % 4 == 1 { term } else { -term };
        if k % 2 == 1 {
            q += signed;
        } else {
            p += signed;
        }
        if mag < 1e-18 {
            break;
        }
        prev = mag;
    }
    let chi = x - (0.5 * n as f64 + 0.25) * PI;
    let (s, c) = chi.sin_cos();
    let amp = (2.0 / (PI * x)).sqrt();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}
