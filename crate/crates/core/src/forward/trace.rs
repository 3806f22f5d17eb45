//! Boundary traces of incident fields on the Nyström nodes.
//!
//! A beam much narrower than the node spacing cannot be sampled pointwise.
//! For fields that report a [`BeamStrip`], the trace is replaced by its
//! projection onto the trigonometric polynomials of degree `< n/2`, which is
//! exactly the part of the boundary data the discrete system can represent:
//! `g(t_i) = (1/2π) ∫ f(x(τ)) D(t_i − τ) dτ`, `D(u) = sin((n−1)u/2)/sin(u/2)`.
//! The integral runs over the parameter intervals that meet the strip only,
//! found by Lipschitz-pruned bisection and integrated by Gauss–Legendre.

use std::f64::consts::{PI, TAU};

use crate::forward::kernels::gauss_legendre;
use crate::geometry::{BoundaryCurve, CurveSample};
use crate::incident::{BeamStrip, IncidentField};
use crate::{Error, Result, C64};

const INITIAL_INTERVALS: usize = 64;
const LEAF_POINTS: usize = 10;
const MAX_DEPTH: usize = 60;
/// Refuse traces that would need more quadrature points than this.
pub const MAX_TRACE_POINTS: usize = 4_000_000;

/// Trace of `field` at the nodes of `curve` (as used for the system's
/// right-hand side).
pub fn incident_trace<F: IncidentField + ?Sized>(
    field: &F,
    curve: &BoundaryCurve,
    nodes: &[CurveSample],
) -> Result<Vec<C64>> {
    match field.strip() {
        Some(strip) => projected_trace(field, curve, nodes.len(), &strip),
        None => Ok(nodes.iter().map(|s| field.value(s.position)).collect()),
    }
}

/// Quadrature points `(τ, weight)` covering the part of the curve inside the
/// strip, at the requested resolution.
fn strip_quadrature(curve: &BoundaryCurve, n: usize, strip: &BeamStrip) -> Result<Vec<(f64, f64)>> {
    let speed = curve.max_speed();
    let signed = |t: f64| curve.position(t).dot(strip.normal) - strip.offset;
    // Arc length per leaf within the field's resolution, parameter length
    // within a quarter node spacing so the kernel is resolved as well.
    let max_len = (strip.resolution / speed).min(0.25 * TAU / n as f64);
    if !(max_len > 0.0) {
        return Err(Error::Numerical(format!(
            "incident field resolution {:e} is not usable",
            strip.resolution
        )));
    }
    let (gx, gw) = gauss_legendre(LEAF_POINTS);

    let mut out = Vec::new();
    let mut stack: Vec<(f64, f64, f64, f64, usize)> = (0..INITIAL_INTERVALS)
        .rev()
        .map(|i| {
            let a = TAU * i as f64 / INITIAL_INTERVALS as f64;
            let b = TAU * (i + 1) as f64 / INITIAL_INTERVALS as f64;
            (a, b, signed(a), signed(b), 0)
        })
        .collect();
    while let Some((a, b, sa, sb, depth)) = stack.pop() {
        let lower = 0.5 * (sa.abs() + sb.abs() - speed * (b - a));
        if lower > strip.half_width {
            continue;
        }
        if b - a <= max_len || depth >= MAX_DEPTH {
            let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
            out.extend(gx.iter().zip(&gw).map(|(x, w)| (mid + half * x, half * w)));
            if out.len() > MAX_TRACE_POINTS {
                return Err(Error::Numerical(format!(
                    "incident field varies on a scale of {:e}; its boundary trace needs more \
                     than {MAX_TRACE_POINTS} quadrature points",
                    strip.resolution
                )));
            }
            continue;
        }
        let m = 0.5 * (a + b);
        let sm = signed(m);
        stack.push((m, b, sm, sb, depth + 1));
        stack.push((a, m, sa, sm, depth + 1));
    }
    Ok(out)
}

fn dirichlet_kernel(n: usize, u: f64) -> f64 {
    let s = (0.5 * u).sin();
    if s.abs() < 1e-8 {
        // Also covers u ≈ 2π; n − 1 is odd so the kernel is 2π-periodic.
        return (n - 1) as f64;
    }
    (0.5 * (n - 1) as f64 * u).sin() / s
}

fn projected_trace<F: IncidentField + ?Sized>(
    field: &F,
    curve: &BoundaryCurve,
    n: usize,
    strip: &BeamStrip,
) -> Result<Vec<C64>> {
    let quad: Vec<(f64, f64, C64)> = strip_quadrature(curve, n, strip)?
        .into_iter()
        .map(|(t, w)| (t, w, field.value(curve.position(t))))
        .filter(|(_, _, f)| *f != C64::new(0.0, 0.0))
        .collect();
    Ok((0..n)
        .map(|i| {
            let ti = TAU * i as f64 / n as f64;
            quad.iter()
                .map(|&(t, w, f)| f * (w * dirichlet_kernel(n, ti - t)))
                .sum::<C64>()
                / (2.0 * PI)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incident::{PlaneWave, TaperedWave};
    use crate::Vec2;

    /// Plane wave reporting a strip that covers the whole curve, so the
    /// projection can be compared with interpolation at the nodes.
    struct WideStrip(PlaneWave);

    impl IncidentField for WideStrip {
        fn value(&self, x: Vec2) -> C64 {
            self.0.value(x)
        }
        fn strip(&self) -> Option<BeamStrip> {
            Some(BeamStrip {
                normal: Vec2::new(0.0, 1.0),
                offset: 0.0,
                half_width: 10.0,
                resolution: 0.05,
            })
        }
    }

    #[test]
    fn projection_of_resolved_field_matches_sampling() {
        let curve = BoundaryCurve::circle(1.0);
        let nodes = curve.sample_nodes(64).unwrap();
        let pw = PlaneWave::new(3.0, Vec2::new(0.6, 0.8));
        let direct = incident_trace(&pw, &curve, &nodes).unwrap();
        let projected = incident_trace(&WideStrip(pw), &curve, &nodes).unwrap();
        for (a, b) in direct.iter().zip(&projected) {
            assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn narrow_beam_projection_preserves_low_modes() {
        // The projection's Fourier coefficients below n/2 equal those of the
        // trace itself; compare the zeroth one against a fine direct sum.
        let curve = BoundaryCurve::circle(1.0);
        let beam = TaperedWave::from_angle(25.0, 0.01, 0.3).unwrap();
        let n = 64;
        let nodes = curve.sample_nodes(n).unwrap();
        let g = incident_trace(&beam, &curve, &nodes).unwrap();
        let mean_proj: C64 = g.iter().sum::<C64>() / n as f64;
        let fine = 400_000;
        let mean_fine: C64 = (0..fine)
            .map(|i| beam.eval(curve.position(TAU * i as f64 / fine as f64)))
            .sum::<C64>()
            / fine as f64;
        assert!((mean_proj - mean_fine).norm() < 1e-9 * mean_fine.norm().max(1e-3));
    }

    #[test]
    fn strip_quadrature_only_covers_the_beam() {
        let curve = BoundaryCurve::circle(1.0);
        let beam = TaperedWave::from_angle(25.0, 0.001, 0.7).unwrap();
        let strip = beam.strip().unwrap();
        let quad = strip_quadrature(&curve, 512, &strip).unwrap();
        assert!(!quad.is_empty());
        let total: f64 = quad.iter().map(|q| q.1).sum();
        assert!(total < 0.1, "covered parameter length {total}");
        for (t, _) in quad {
            let s = curve.position(t).dot(strip.normal).abs();
            assert!(s <= strip.half_width + curve.max_speed() * 0.25 * TAU / 512.0);
        }
    }

    #[test]
    fn unresolvable_phase_modulated_beam_is_refused() {
        use crate::incident::TaperForm;
        let curve = BoundaryCurve::circle(1.0);
        let nodes = curve.sample_nodes(512).unwrap();
        let beam = TaperedWave::from_angle(25.0, 0.01, 0.7)
            .unwrap()
            .with_form(TaperForm::PhaseModulated);
        assert!(matches!(
            incident_trace(&beam, &curve, &nodes),
            Err(Error::Numerical(_))
        ));
    }
}
