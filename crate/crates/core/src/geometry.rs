//! Closed parametric obstacle boundaries with analytic derivatives.
//!
//! Every curve is parametrised counter-clockwise over `t ∈ [0, 2π)`, so the
//! outward normal is `(x2', -x1') / |x'|`.

use std::f64::consts::{FRAC_PI_4, TAU};
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result, Vec2};

/// Supported boundary families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    /// `r (cos t, sin t)`
    Circle { radius: f64 },
    /// `(cos t + 0.65 cos 2t − 0.65, 1.5 sin t)`
    Kite,
    /// `(1 + a cos Lt)(cos t, sin t)`
    LLeaf { lobes: u32, amplitude: f64 },
    /// `sqrt(3 cos² t + 1) (cos(t + π/4), sin(t + π/4))`
    Peanut,
    /// `(1 + 0.15 cos 3t)(cos t, sin t)`
    Pear,
}

/// A shape placed at `center`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCurve {
    pub shape: Shape,
    pub center: Vec2,
}

/// One point of a boundary with its first two derivatives in `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub t: f64,
    pub position: Vec2,
    /// `x'(t)`
    pub tangent: Vec2,
    /// `x''(t)`
    pub second: Vec2,
    /// Outward unit normal.
    pub normal: Vec2,
    /// `|x'(t)|`
    pub jacobian: f64,
}

const DISTANCE_GRID: usize = 4096;
const GOLDEN_ITERS: usize = 60;

impl BoundaryCurve {
    pub fn new(shape: Shape, center: Vec2) -> Result<Self> {
        let curve = BoundaryCurve { shape, center };
        curve.validate()?;
        Ok(curve)
    }

    pub fn circle(radius: f64) -> Self {
        BoundaryCurve {
            shape: Shape::Circle { radius },
            center: Vec2::ZERO,
        }
    }

    pub fn kite() -> Self {
        BoundaryCurve {
            shape: Shape::Kite,
            center: Vec2::ZERO,
        }
    }

    pub fn leaf(lobes: u32) -> Self {
        BoundaryCurve {
            shape: Shape::LLeaf {
                lobes,
                amplitude: 0.2,
            },
            center: Vec2::ZERO,
        }
    }

    pub fn peanut() -> Self {
        BoundaryCurve {
            shape: Shape::Peanut,
            center: Vec2::ZERO,
        }
    }

    pub fn pear() -> Self {
        BoundaryCurve {
            shape: Shape::Pear,
            center: Vec2::ZERO,
        }
    }

    pub fn translated(self, offset: Vec2) -> Self {
        BoundaryCurve {
            center: self.center + offset,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.center.is_finite() {
            return Err(Error::config("curve center must be finite"));
        }
        match self.shape {
            Shape::Circle { radius } if !(radius > 0.0 && radius.is_finite()) => Err(Error::config(format!(
                "circle radius must be positive, got {radius}"
            ))),
            // |a| < 1 keeps the polar radius positive.
            Shape::LLeaf { lobes, amplitude } if lobes == 0 || !(amplitude.abs() < 1.0) => {
                Err(Error::config(format!(
                    "leaf needs lobes >= 1 and |amplitude| < 1, got L={lobes}, a={amplitude}"
                )))
            }
            _ => Ok(()),
        }
    }

    /// Position and analytic derivatives at parameter `t`.
    pub fn evaluate(&self, t: f64) -> CurveSample {
        let t = t.rem_euclid(TAU);
        let (p, d1, d2) = match self.shape {
            Shape::Circle { radius } => polar(t, 0.0, (radius, 0.0, 0.0)),
            Shape::Kite => {
                let (s, c) = t.sin_cos();
                let (s2, c2) = (2.0 * t).sin_cos();
                (
                    Vec2::new(c + 0.65 * c2 - 0.65, 1.5 * s),
                    Vec2::new(-s - 1.3 * s2, 1.5 * c),
                    Vec2::new(-c - 2.6 * c2, -1.5 * s),
                )
            }
            Shape::LLeaf { lobes, amplitude } => polar(t, 0.0, cosine_radius(t, lobes, amplitude)),
            Shape::Pear => polar(t, 0.0, cosine_radius(t, 3, 0.15)),
            Shape::Peanut => {
                let (s, c) = t.sin_cos();
                let rho = (3.0 * c * c + 1.0).sqrt();
                let s2 = 2.0 * s * c;
                let c2 = c * c - s * s;
                let drho = -1.5 * s2 / rho;
                let ddrho = -3.0 * c2 / rho - drho * drho / rho;
                polar(t, FRAC_PI_4, (rho, drho, ddrho))
            }
        };
        let jacobian = d1.norm();
        CurveSample {
            t,
            position: p + self.center,
            tangent: d1,
            second: d2,
            normal: Vec2::new(d1.y / jacobian, -d1.x / jacobian),
            jacobian,
        }
    }

    pub fn position(&self, t: f64) -> Vec2 {
        self.evaluate(t).position
    }

    /// `n` equispaced nodes `t_j = 2πj/n`; `n` must be even and at least 4.
    pub fn sample_nodes(&self, n: usize) -> Result<Vec<CurveSample>> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::config(format!(
                "node count must be even and at least 4, got {n}"
            )));
        }
        Ok((0..n).map(|j| self.evaluate(TAU * j as f64 / n as f64)).collect())
    }

    /// Closest boundary parameter to `p` and its distance.
    pub fn closest_point(&self, p: Vec2) -> (f64, f64) {
        let h = TAU / DISTANCE_GRID as f64;
        let dist2 = |t: f64| (self.position(t) - p).norm_sq();
        let (best, _) =
            (0..DISTANCE_GRID)
                .map(|i| (i, dist2(i as f64 * h)))
                .fold(
                    (0, f64::INFINITY),
                    |acc, (i, d)| if d < acc.1 { (i, d) } else { acc },
                );

        // Golden-section search on the bracketing pair of grid cells.
        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        let mut a = (best as f64 - 1.0) * h;
        let mut b = (best as f64 + 1.0) * h;
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        let mut fc = dist2(c);
        let mut fd = dist2(d);
        for _ in 0..GOLDEN_ITERS {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = dist2(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = dist2(d);
            }
        }
        let t = 0.5 * (a + b);
        (t.rem_euclid(TAU), dist2(t).sqrt())
    }

    /// Euclidean distance from `p` to the boundary.
    pub fn distance_to(&self, p: Vec2) -> f64 {
        self.closest_point(p).1
    }

    /// Signed distance: positive outside the obstacle, negative inside.
    pub fn signed_distance(&self, p: Vec2) -> f64 {
        let (t, d) = self.closest_point(p);
        let s = self.evaluate(t);
        if (p - s.position).dot(s.normal) >= 0.0 {
            d
        } else {
            -d
        }
    }

    /// Largest `|x(t)|`, sampled densely.
    pub fn circumscribed_radius(&self) -> f64 {
        (0..DISTANCE_GRID)
            .map(|i| self.position(TAU * i as f64 / DISTANCE_GRID as f64).norm())
            .fold(0.0, f64::max)
    }

    /// Upper bound on `|x'(t)|` (dense maximum plus 5%).
    pub fn max_speed(&self) -> f64 {
        1.05 * (0..DISTANCE_GRID)
            .map(|i| self.evaluate(TAU * i as f64 / DISTANCE_GRID as f64).jacobian)
            .fold(0.0, f64::max)
    }

    /// Enclosed area by the shoelace formula on a dense polygon; positive for
    /// counter-clockwise curves.
    pub fn signed_area(&self) -> f64 {
        let n = DISTANCE_GRID;
        let pts: Vec<Vec2> = (0..n).map(|i| self.position(TAU * i as f64 / n as f64)).collect();
        0.5 * (0..n).map(|i| pts[i].cross(pts[(i + 1) % n])).sum::<f64>()
    }

    /// Registry name of the shape family.
    pub fn kind_name(&self) -> &'static str {
        match self.shape {
            Shape::Circle { .. } => "circle",
            Shape::Kite => "kite",
            Shape::LLeaf { .. } => "l_leaf",
            Shape::Peanut => "peanut",
            Shape::Pear => "pear",
        }
    }
}

/// Polar curve `ρ(t) (cos(t+φ0), sin(t+φ0))` with its derivatives.
fn polar(t: f64, phase: f64, (rho, drho, ddrho): (f64, f64, f64)) -> (Vec2, Vec2, Vec2) {
    let e = Vec2::from_angle(t + phase);
    let ep = e.perp();
    (rho * e, drho * e + rho * ep, (ddrho - rho) * e + 2.0 * drho * ep)
}

fn cosine_radius(t: f64, lobes: u32, a: f64) -> (f64, f64, f64) {
    let l = lobes as f64;
    let (s, c) = (l * t).sin_cos();
    (1.0 + a * c, -a * l * s, -a * l * l * c)
}

/// Minimum distance to any component.
pub fn distance_to_union(curves: &[BoundaryCurve], p: Vec2) -> f64 {
    curves
        .iter()
        .map(|c| c.distance_to(p))
        .fold(f64::INFINITY, f64::min)
}

/// Obstacles registered under a shape name.
///
/// `multi` is the three-component scene: a peanut at (−2, 2), a kite shifted
/// to (0, −3) and a pear at (3, 2).
pub fn obstacles_by_name(name: &str) -> Result<Vec<BoundaryCurve>> {
    let one = |c| Ok(vec![c]);
    match name {
        "circle" => one(BoundaryCurve::circle(1.0)),
        "kite" => one(BoundaryCurve::kite()),
        "leaf3" => one(BoundaryCurve::leaf(3)),
        "leaf4" => one(BoundaryCurve::leaf(4)),
        "leaf5" => one(BoundaryCurve::leaf(5)),
        "peanut" => one(BoundaryCurve::peanut()),
        "pear" => one(BoundaryCurve::pear()),
        "multi" => Ok(vec![
            BoundaryCurve::peanut().translated(Vec2::new(-2.0, 2.0)),
            BoundaryCurve::kite().translated(Vec2::new(0.0, -3.0)),
            BoundaryCurve::pear().translated(Vec2::new(3.0, 2.0)),
        ]),
        other => Err(Error::config(format!(
            "unknown shape {other:?}; expected one of circle, kite, leaf3, leaf4, leaf5, peanut, pear, multi"
        ))),
    }
}

/// Textual form used in dataset headers, e.g. `circle(1)@0,0` or
/// `leaf(3,0.2)@0,0`. Floats use the shortest round-trip representation.
impl fmt::Display for BoundaryCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape {
            Shape::Circle { radius } => write!(f, "circle({radius:?})")?,
            Shape::Kite => write!(f, "kite")?,
            Shape::LLeaf { lobes, amplitude } => write!(f, "leaf({lobes},{amplitude:?})")?,
            Shape::Peanut => write!(f, "peanut")?,
            Shape::Pear => write!(f, "pear")?,
        }
        write!(f, "@{:?},{:?}", self.center.x, self.center.y)
    }
}

impl FromStr for BoundaryCurve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Format(format!("cannot parse obstacle {s:?}"));
        let (head, center) = s.trim().split_once('@').ok_or_else(bad)?;
        let (cx, cy) = center.split_once(',').ok_or_else(bad)?;
        let center = Vec2::new(
            cx.trim().parse().map_err(|_| bad())?,
            cy.trim().parse().map_err(|_| bad())?,
        );
        let (name, args) = match head.split_once('(') {
            Some((name, rest)) => (name, Some(rest.strip_suffix(')').ok_or_else(bad)?)),
            None => (head, None),
        };
        let nums = |a: &str| -> Result<Vec<f64>> {
            a.split(',')
                .map(|v| v.trim().parse::<f64>().map_err(|_| bad()))
                .collect()
        };
        let shape = match (name, args) {
            ("circle", Some(a)) => match nums(a)?.as_slice() {
                [r] => Shape::Circle { radius: *r },
                _ => return Err(bad()),
            },
            ("kite", None) => Shape::Kite,
            ("leaf", Some(a)) => match nums(a)?.as_slice() {
                [l, amp] if *l >= 1.0 && l.fract() == 0.0 => Shape::LLeaf {
                    lobes: *l as u32,
                    amplitude: *amp,
                },
                _ => return Err(bad()),
            },
            ("peanut", None) => Shape::Peanut,
            ("pear", None) => Shape::Pear,
            _ => return Err(bad()),
        };
        BoundaryCurve::new(shape, center)
    }
}

/// Convenience for tests and diagnostics: the parameter grid used for dense
/// scans.
pub fn dense_parameters(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| TAU * i as f64 / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn all_single() -> Vec<BoundaryCurve> {
        ["circle", "kite", "leaf3", "leaf4", "leaf5", "peanut", "pear"]
            .iter()
            .flat_map(|n| obstacles_by_name(n).unwrap())
            .chain(obstacles_by_name("multi").unwrap())
            .collect()
    }

    fn close(a: Vec2, b: Vec2, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn substitution_examples() {
        let c = BoundaryCurve::circle(1.0).evaluate(0.0);
        assert!(close(c.position, Vec2::new(1.0, 0.0), 1e-15));
        assert!(close(c.normal, Vec2::new(1.0, 0.0), 1e-15));

        let k = BoundaryCurve::kite().evaluate(PI);
        assert!(close(k.position, Vec2::new(-1.0, 0.0), 1e-15));

        let l = BoundaryCurve::leaf(3).evaluate(0.0);
        assert!(close(l.position, Vec2::new(1.2, 0.0), 1e-15));
    }

    #[test]
    fn four_circle_nodes() {
        let nodes = BoundaryCurve::circle(1.0).sample_nodes(4).unwrap();
        let want = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
        for (s, (x, y)) in nodes.iter().zip(want) {
            assert!(close(s.position, Vec2::new(x, y), 1e-15));
        }
    }

    #[test]
    fn node_count_validation() {
        let c = BoundaryCurve::kite();
        assert!(matches!(c.sample_nodes(17), Err(Error::Config(_))));
        assert!(matches!(c.sample_nodes(2), Err(Error::Config(_))));
        let nodes = c.sample_nodes(16).unwrap();
        assert_eq!(nodes.len(), 16);
        assert!(nodes.windows(2).all(|w| w[0].t < w[1].t));
    }

    #[test]
    fn kite_polygon_length_converges() {
        let length = |n: usize| {
            let p = BoundaryCurve::kite().sample_nodes(n).unwrap();
            (0..n)
                .map(|i| p[i].position.dist(p[(i + 1) % n].position))
                .sum::<f64>()
        };
        let coarse = length(64);
        let fine = length(1024);
        assert!((coarse - fine).abs() / fine < 0.01);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-5;
        for curve in all_single() {
            for t in dense_parameters(37) {
                let s = curve.evaluate(t);
                let fd1 = (curve.position(t + h) - curve.position(t - h)) * (0.5 / h);
                let fd2 = (curve.evaluate(t + h).tangent - curve.evaluate(t - h).tangent) * (0.5 / h);
                assert!(close(s.tangent, fd1, 1e-8), "{curve} x' at {t}");
                assert!(close(s.second, fd2, 1e-7), "{curve} x'' at {t}");
            }
        }
    }

    #[test]
    fn normals_are_unit_orthogonal_outward() {
        for curve in all_single() {
            assert!(curve.signed_area() > 0.0, "{curve} must be counter-clockwise");
            let centroid = if let Shape::Kite = curve.shape {
                // the kite is star-shaped about a point left of its centre
                curve.center + Vec2::new(-0.2, 0.0)
            } else {
                curve.center
            };
            for t in dense_parameters(200) {
                let s = curve.evaluate(t);
                assert!((s.normal.norm() - 1.0).abs() < 1e-12);
                assert!(s.normal.dot(s.tangent).abs() < 1e-12);
                assert!((s.jacobian - s.tangent.norm()).abs() == 0.0);
                assert!(s.jacobian > 0.0);
                assert!((s.position - centroid).dot(s.normal) > 0.0, "{curve} at t={t}");
            }
        }
    }

    #[test]
    fn periodic_closure() {
        for curve in all_single() {
            let gap = curve.position(0.0).dist(curve.position(TAU - 1e-9));
            assert!(gap < 1e-8);
        }
    }

    #[test]
    fn circle_distances() {
        let c = BoundaryCurve::circle(1.0);
        assert!(c.distance_to(Vec2::new(1.0, 0.0)) < 1e-12);
        assert!((c.distance_to(Vec2::new(2.0, 0.0)) - 1.0).abs() < 1e-12);
        assert!((c.distance_to(Vec2::new(0.0, 0.0)) - 1.0).abs() < 1e-12);
        assert!(c.signed_distance(Vec2::new(0.3, 0.1)) < 0.0);
        assert!(c.signed_distance(Vec2::new(1.3, 0.1)) > 0.0);
    }

    #[test]
    fn text_form_round_trips() {
        for curve in all_single() {
            let s = curve.to_string();
            let back: BoundaryCurve = s.parse().unwrap();
            assert_eq!(back, curve, "{s}");
        }
        assert!("blob@0,0".parse::<BoundaryCurve>().is_err());
        assert!(obstacles_by_name("blob").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn points_on_curve_have_zero_distance(t in 0.0..TAU, which in 0usize..10) {
                let curves = all_single();
                let curve = curves[which % curves.len()];
                let p = curve.position(t);
                prop_assert!(curve.distance_to(p) <= 1e-8);
            }
        }
    }
}
