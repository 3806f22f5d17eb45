//! Measurement layouts, synthetic data generation and the dataset file.
//!
//! The dataset is a plain text document:
//!
//! ```text
//! format = taperscat-ds-1
//! radius = 5.0000000000000000e0
//! ...                              (remaining header keys)
//! [receivers]                      one `x y` line per receiver
//! [directions]                     one `d1 d2 lambda` line per direction
//! [clean]                          one line per direction: re im re im ...
//! [noisy]
//! ```
//!
//! Floats are written with 17 significant digits, which round-trips every
//! `f64` exactly.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::forward::{ForwardSolver, MeasurementOperator};
use crate::geometry::BoundaryCurve;
use crate::incident::{TaperForm, TaperedWave};
use crate::linalg::ComplexMatrix;
use crate::{Error, Result, Vec2, C64};

pub const FORMAT_VERSION: &str = "taperscat-ds-1";

/// Default Nyström nodes per obstacle component.
pub const DEFAULT_NYSTROM: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementConfig {
    /// Radius of the measurement circle.
    pub radius: f64,
    pub n_receivers: usize,
    pub aperture_start: f64,
    /// Angular extent of the receiver arc, in `(0, 2π]`.
    pub aperture_extent: f64,
    pub n_directions: usize,
    pub k: f64,
    pub g: f64,
    pub noise_delta: f64,
    pub seed: u64,
}

impl Default for MeasurementConfig {
    fn default() -> Self {
        MeasurementConfig {
            radius: 5.0,
            n_receivers: 256,
            aperture_start: 0.0,
            aperture_extent: TAU,
            n_directions: 128,
            k: 25.0,
            g: 0.01,
            noise_delta: 0.05,
            seed: 42,
        }
    }
}

impl MeasurementConfig {
    /// Checks everything that does not depend on the obstacles.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return bad(format!(
                "measurement radius must be positive, got {}",
                self.radius
            ));
        }
        if self.n_receivers < 2 {
            return bad(format!("need at least 2 receivers, got {}", self.n_receivers));
        }
        if self.n_directions < 1 {
            return bad("need at least one incident direction".into());
        }
        if !self.n_directions.is_multiple_of(4) {
            return bad(format!(
                "direction count must be a multiple of 4 (got {}); otherwise the offset \
                 direction grid contains axis-aligned directions, where the beam is undefined",
                self.n_directions
            ));
        }
        if !(self.aperture_extent > 0.0 && self.aperture_extent <= TAU) {
            return bad(format!(
                "aperture extent must lie in (0, 2π], got {}",
                self.aperture_extent
            ));
        }
        if !self.aperture_start.is_finite() {
            return bad("aperture start must be finite".into());
        }
        if !(self.k > 0.0 && self.k.is_finite()) {
            return bad(format!("wavenumber must be positive, got {}", self.k));
        }
        if !(self.g > 0.0 && self.g.is_finite()) {
            return bad(format!("taper parameter must be positive, got {}", self.g));
        }
        if !(0.0..1.0).contains(&self.noise_delta) {
            return bad(format!(
                "noise level must lie in [0, 1), got {}",
                self.noise_delta
            ));
        }
        Ok(())
    }

    /// Also requires the measurement circle to enclose every obstacle.
    pub fn validate_for(&self, obstacles: &[BoundaryCurve]) -> Result<()> {
        self.validate()?;
        for (i, c) in obstacles.iter().enumerate() {
            let r = c.circumscribed_radius();
            if r >= self.radius {
                return Err(Error::config(format!(
                    "obstacle {i} reaches radius {r:.4}, not inside the measurement circle of radius {}",
                    self.radius
                )));
            }
        }
        Ok(())
    }

    /// Receiver spacing along the arc, `R · extent / N_R`.
    pub fn arc_weight(&self) -> f64 {
        self.radius * self.aperture_extent / self.n_receivers as f64
    }

    pub fn is_full_aperture(&self) -> bool {
        self.aperture_extent >= TAU
    }
}

/// `N_R` points equispaced in angle over `[start, start + extent)` at radius `R`.
pub fn build_receivers(config: &MeasurementConfig) -> Vec<Vec2> {
    let n = config.n_receivers as f64;
    (0..config.n_receivers)
        .map(|i| {
            let theta = config.aperture_start + config.aperture_extent * i as f64 / n;
            Vec2::new(config.radius * theta.cos(), config.radius * theta.sin())
        })
        .collect()
}

/// Unit directions at angles `2πj/N_d + π/N_d`. For `N_d` divisible by 4 the
/// half-step offset keeps every direction off the coordinate axes.
pub fn build_directions(n_directions: usize) -> Vec<Vec2> {
    let n = n_directions as f64;
    (0..n_directions)
        .map(|j| Vec2::from_angle(TAU * j as f64 / n + std::f64::consts::PI / n))
        .collect()
}

/// Multiplicative noise `u + δ r₁ |u| e^{iπ r₂}`, with `r₁, r₂` uniform on
/// `[−1, 1)` drawn from a ChaCha stream keyed by `(seed, row)` at a position
/// fixed by the column, so every entry is independent of evaluation order.
pub fn add_noise(clean: &ComplexMatrix, delta: f64, seed: u64) -> Result<ComplexMatrix> {
    if !(0.0..1.0).contains(&delta) {
        return Err(Error::config(format!(
            "noise level must lie in [0, 1), got {delta}"
        )));
    }
    if delta == 0.0 {
        return Ok(clean.clone());
    }
    let mut out = clean.clone();
    let cols = clean.cols();
    if cols == 0 {
        return Ok(out);
    }
    out.as_mut_slice()
        .par_chunks_mut(cols)
        .enumerate()
        .for_each(|(j, row)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(j as u64);
            for (i, u) in row.iter_mut().enumerate() {
                // Two f64 draws consume four 32-bit words.
                rng.set_word_pos(4 * i as u128);
                let r1: f64 = rng.gen_range(-1.0..1.0);
                let r2: f64 = rng.gen_range(-1.0..1.0);
                *u += delta * r1 * u.norm() * C64::from_polar(1.0, std::f64::consts::PI * r2);
            }
        });
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringDataset {
    pub config: MeasurementConfig,
    pub obstacles: Vec<BoundaryCurve>,
    pub n_nystrom: usize,
    pub taper_form: TaperForm,
    pub directions: Vec<Vec2>,
    pub receivers: Vec<Vec2>,
    /// `N_d × N_R`, row per direction.
    pub clean: ComplexMatrix,
    pub noisy: ComplexMatrix,
    pub per_direction_lambda: Vec<f64>,
}

/// Simulate noisy near-field data for all directions with the default beam.
pub fn synthesize(
    obstacles: &[BoundaryCurve],
    config: &MeasurementConfig,
    n_nystrom: usize,
) -> Result<ScatteringDataset> {
    synthesize_with_form(obstacles, config, n_nystrom, TaperForm::Printed)
}

pub fn synthesize_with_form(
    obstacles: &[BoundaryCurve],
    config: &MeasurementConfig,
    n_nystrom: usize,
    taper_form: TaperForm,
) -> Result<ScatteringDataset> {
    config.validate_for(obstacles)?;
    let receivers = build_receivers(config);
    let directions = build_directions(config.n_directions);
    let solver = ForwardSolver::new(obstacles, config.k, n_nystrom)?;
    let measure = MeasurementOperator::new(solver.discretization(), &receivers)?;

    let rows: Vec<Result<(Vec<C64>, f64)>> = directions
        .par_iter()
        .enumerate()
        .map(|(j, &d)| {
            let wrap = |e| Error::Direction {
                index: j,
                source: Box::new(e),
            };
            let beam = TaperedWave::new(config.k, config.g, d)
                .map_err(wrap)?
                .with_form(taper_form);
            let sol = solver.solve(&beam).map_err(wrap)?;
            Ok((measure.apply(&sol), beam.lambda))
        })
        .collect();
    let mut data = Vec::with_capacity(rows.len());
    let mut lambdas = Vec::with_capacity(rows.len());
    for r in rows {
        let (row, lambda) = r?;
        data.push(row);
        lambdas.push(lambda);
    }
    let clean = ComplexMatrix::from_rows(data)?;
    let noisy = add_noise(&clean, config.noise_delta, config.seed)?;
    Ok(ScatteringDataset {
        config: *config,
        obstacles: obstacles.to_vec(),
        n_nystrom,
        taper_form,
        directions,
        receivers,
        clean,
        noisy,
        per_direction_lambda: lambdas,
    })
}

fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

impl ScatteringDataset {
    pub fn n_directions(&self) -> usize {
        self.directions.len()
    }

    pub fn n_receivers(&self) -> usize {
        self.receivers.len()
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut s = String::new();
        let obstacles: Vec<String> = self.obstacles.iter().map(|o| o.to_string()).collect();
        let header = [
            ("format", FORMAT_VERSION.to_string()),
            ("radius", fmt_f(c.radius)),
            ("n_receivers", c.n_receivers.to_string()),
            ("aperture_start", fmt_f(c.aperture_start)),
            ("aperture_extent", fmt_f(c.aperture_extent)),
            ("n_directions", c.n_directions.to_string()),
            ("k", fmt_f(c.k)),
            ("g", fmt_f(c.g)),
            ("noise_delta", fmt_f(c.noise_delta)),
            ("seed", c.seed.to_string()),
            ("n_nystrom", self.n_nystrom.to_string()),
            ("taper_form", self.taper_form.name().to_string()),
            ("obstacles", obstacles.join("; ")),
        ];
        for (k, v) in header {
            let _ = writeln!(s, "{k} = {v}");
        }
        s.push_str("[receivers]\n");
        for r in &self.receivers {
            let _ = writeln!(s, "{} {}", fmt_f(r.x), fmt_f(r.y));
        }
        s.push_str("[directions]\n");
        for (d, l) in self.directions.iter().zip(&self.per_direction_lambda) {
            let _ = writeln!(s, "{} {} {}", fmt_f(d.x), fmt_f(d.y), fmt_f(*l));
        }
        for (name, m) in [("clean", &self.clean), ("noisy", &self.noisy)] {
            let _ = writeln!(s, "[{name}]");
            for row in m.iter_rows() {
                let line: Vec<String> = row.iter().flat_map(|z| [fmt_f(z.re), fmt_f(z.im)]).collect();
                s.push_str(&line.join(" "));
                s.push('\n');
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().peekable();
        let fmt_err = |line: usize, msg: &str| Error::Format(format!("line {}: {msg}", line + 1));

        let mut header = std::collections::BTreeMap::new();
        while let Some(&(no, line)) = lines.peek() {
            if line.starts_with('[') {
                break;
            }
            lines.next();
            if line.trim().is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| fmt_err(no, "expected `key = value`"))?;
            header.insert(k.trim().to_string(), v.trim().to_string());
        }
        let get = |k: &str| -> Result<&str> {
            header
                .get(k)
                .map(String::as_str)
                .ok_or_else(|| Error::Format(format!("missing header key {k:?}")))
        };
        let version = get("format")?;
        if version != FORMAT_VERSION {
            return Err(Error::Version {
                found: version.to_string(),
                expected: FORMAT_VERSION.to_string(),
            });
        }
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse()
                .map_err(|_| Error::Format(format!("bad value {v:?} for {key:?}")))
        }
        let config = MeasurementConfig {
            radius: num("radius", get("radius")?)?,
            n_receivers: num("n_receivers", get("n_receivers")?)?,
            aperture_start: num("aperture_start", get("aperture_start")?)?,
            aperture_extent: num("aperture_extent", get("aperture_extent")?)?,
            n_directions: num("n_directions", get("n_directions")?)?,
            k: num("k", get("k")?)?,
            g: num("g", get("g")?)?,
            noise_delta: num("noise_delta", get("noise_delta")?)?,
            seed: num("seed", get("seed")?)?,
        };
        let n_nystrom = num("n_nystrom", get("n_nystrom")?)?;
        let taper_form =
            TaperForm::from_name(get("taper_form")?).map_err(|e| Error::Format(e.to_string()))?;
        let obstacles = get("obstacles")?
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<BoundaryCurve>>>()?;

        let mut section = |name: &str, rows: usize, width: Option<usize>| -> Result<Vec<Vec<f64>>> {
            let (no, line) = lines
                .next()
                .ok_or_else(|| Error::Format(format!("missing section [{name}]")))?;
            if line.trim() != format!("[{name}]") {
                return Err(fmt_err(no, &format!("expected [{name}]")));
            }
            let mut out = Vec::with_capacity(rows);
            for _ in 0..rows {
                let (no, line) = lines
                    .next()
                    .ok_or_else(|| Error::Format(format!("section [{name}] is truncated")))?;
                let vals = line
                    .split_whitespace()
                    .map(|v| v.parse::<f64>().map_err(|_| fmt_err(no, "bad number")))
                    .collect::<Result<Vec<f64>>>()?;
                if width.is_some_and(|w| vals.len() != w) {
                    return Err(fmt_err(no, "wrong number of columns"));
                }
                out.push(vals);
            }
            Ok(out)
        };
        let (nr, nd) = (config.n_receivers, config.n_directions);
        let receivers = section("receivers", nr, Some(2))?
            .into_iter()
            .map(|v| Vec2::new(v[0], v[1]))
            .collect();
        let dir_rows = section("directions", nd, Some(3))?;
        let directions = dir_rows.iter().map(|v| Vec2::new(v[0], v[1])).collect();
        let per_direction_lambda = dir_rows.iter().map(|v| v[2]).collect();
        let to_matrix = |rows: Vec<Vec<f64>>| -> Result<ComplexMatrix> {
            ComplexMatrix::from_rows(
                rows.into_iter()
                    .map(|r| r.chunks(2).map(|p| C64::new(p[0], p[1])).collect())
                    .collect(),
            )
        };
        let clean = to_matrix(section("clean", nd, Some(2 * nr))?)?;
        let noisy = to_matrix(section("noisy", nd, Some(2 * nr))?)?;
        if let Some((no, line)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(fmt_err(no, &format!("unexpected trailing content {line:?}")));
        }
        config.validate().map_err(|e| Error::Format(e.to_string()))?;
        Ok(ScatteringDataset {
            config,
            obstacles,
            n_nystrom,
            taper_form,
            directions,
            receivers,
            clean,
            noisy,
            per_direction_lambda,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::{eval_scattered, solve_density};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn small_config() -> MeasurementConfig {
        MeasurementConfig {
            n_receivers: 64,
            n_directions: 8,
            noise_delta: 0.0,
            ..MeasurementConfig::default()
        }
    }

    #[test]
    fn four_receivers_on_the_axes() {
        let cfg = MeasurementConfig {
            n_receivers: 4,
            ..MeasurementConfig::default()
        };
        let r = build_receivers(&cfg);
        let want = [(5.0, 0.0), (0.0, 5.0), (-5.0, 0.0), (0.0, -5.0)];
        for (p, (x, y)) in r.iter().zip(want) {
            assert!((p.x - x).abs() < 1e-14 && (p.y - y).abs() < 1e-14, "{p:?}");
        }
    }

    #[test]
    fn receivers_match_the_closed_formula() {
        let cfg = MeasurementConfig {
            n_receivers: 512,
            ..MeasurementConfig::default()
        };
        let r = build_receivers(&cfg);
        for i in 1..=512usize {
            let theta = 2.0 * i as f64 * PI / 512.0;
            let p = r[i % 512];
            assert!((p - Vec2::new(5.0 * theta.cos(), 5.0 * theta.sin())).norm() < 1e-12);
            assert!((p.norm() - 5.0).abs() < 1e-12);
        }
    }

    #[test]
    fn half_aperture_receivers() {
        let cfg = MeasurementConfig {
            n_receivers: 100,
            aperture_extent: PI,
            ..MeasurementConfig::default()
        };
        for p in build_receivers(&cfg) {
            let a = p.y.atan2(p.x).rem_euclid(TAU);
            assert!((0.0..PI).contains(&a) || a.abs() < 1e-15, "{a}");
        }
    }

    #[test]
    fn four_directions_are_diagonal() {
        let d = build_directions(4);
        for (v, a) in d.iter().zip([1.0, 3.0, 5.0, 7.0]) {
            assert!((v.angle().rem_euclid(TAU) - a * PI / 4.0).abs() < 1e-14);
            assert!((v.norm() - 1.0).abs() < 1e-15);
            assert!((v.x * v.y).abs() > 0.4);
        }
    }

    #[test]
    fn directions_stay_off_the_axes() {
        for nd in (4..=4096usize).step_by(4) {
            let bound = (PI / nd as f64).sin() * (PI / nd as f64).cos();
            for d in build_directions(nd) {
                assert!((d.norm() - 1.0).abs() < 1e-15);
                assert!((d.x * d.y).abs() >= bound * (1.0 - 1e-9), "nd={nd}");
            }
        }
        // Other counts hit an axis, and the configuration refuses them.
        assert!(build_directions(2).iter().any(|d| (d.x * d.y).abs() < 1e-15));
        for nd in [1, 2, 3, 6, 7] {
            let cfg = MeasurementConfig {
                n_directions: nd,
                ..small_config()
            };
            assert!(matches!(cfg.validate(), Err(Error::Config(_))));
        }
    }

    #[test]
    fn zero_noise_is_identity() {
        let m = ComplexMatrix::from_fn(3, 5, |i, j| C64::new(i as f64, j as f64 - 2.0));
        assert_eq!(add_noise(&m, 0.0, 9).unwrap(), m);
        assert!(add_noise(&m, 1.0, 9).is_err());
        assert!(add_noise(&m, -0.1, 9).is_err());
    }

    #[test]
    fn noise_is_keyed_by_position() {
        let m = ComplexMatrix::from_fn(4, 6, |i, j| C64::new(1.0 + i as f64, j as f64));
        let a = add_noise(&m, 0.1, 7).unwrap();
        let b = add_noise(&m, 0.1, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, add_noise(&m, 0.1, 8).unwrap());
        // A sub-block sees the same draws as the full matrix.
        let sub = ComplexMatrix::from_fn(2, 3, |i, j| m[(i, j)]);
        let sub_noisy = add_noise(&sub, 0.1, 7).unwrap();
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(sub_noisy[(i, j)], a[(i, j)]);
            }
        }
    }

    proptest! {
        #[test]
        fn noise_bound_holds(
            delta in prop::sample::select(vec![0.05, 0.10, 0.20, 0.5]),
            seed in any::<u64>(),
            re in -10.0..10.0f64,
            im in -10.0..10.0f64,
        ) {
            let m = ComplexMatrix::from_fn(3, 4, |i, j| C64::new(re + i as f64, im - j as f64));
            let noisy = add_noise(&m, delta, seed).unwrap();
            for i in 0..3 {
                for j in 0..4 {
                    let (u, v) = (m[(i, j)], noisy[(i, j)]);
                    prop_assert!((v - u).norm() <= delta * u.norm() * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn zero_entries_stay_zero() {
        let m = ComplexMatrix::zeros(2, 3);
        assert_eq!(add_noise(&m, 0.2, 1).unwrap(), m);
    }

    #[test]
    fn config_validation() {
        assert!(small_config().validate().is_ok());
        for bad in [
            MeasurementConfig {
                n_receivers: 1,
                ..small_config()
            },
            MeasurementConfig {
                n_directions: 0,
                ..small_config()
            },
            MeasurementConfig {
                aperture_extent: 0.0,
                ..small_config()
            },
            MeasurementConfig {
                aperture_extent: 7.0,
                ..small_config()
            },
            MeasurementConfig {
                noise_delta: 1.5,
                ..small_config()
            },
            MeasurementConfig {
                radius: -1.0,
                ..small_config()
            },
        ] {
            assert!(matches!(bad.validate(), Err(Error::Config(_))), "{bad:?}");
        }
        let small_radius = MeasurementConfig {
            radius: 1.2,
            ..small_config()
        };
        assert!(small_radius.validate_for(&[BoundaryCurve::kite()]).is_err());
    }

    #[test]
    fn rows_equal_direct_forward_evaluation() {
        let cfg = MeasurementConfig {
            n_receivers: 16,
            n_directions: 4,
            ..small_config()
        };
        let circle = BoundaryCurve::circle(1.0);
        let ds = synthesize(&[circle], &cfg, 128).unwrap();
        assert_eq!((ds.clean.rows(), ds.clean.cols()), (4, 16));
        assert_eq!(ds.clean, ds.noisy);
        for (j, d) in ds.directions.iter().enumerate() {
            let beam = TaperedWave::new(cfg.k, cfg.g, *d).unwrap();
            let sol = solve_density(&circle, &beam, cfg.k, 128).unwrap();
            for (i, x) in ds.receivers.iter().enumerate() {
                let direct = eval_scattered(&sol, *x).unwrap();
                assert!((ds.clean[(j, i)] - direct).norm() <= 1e-12 * direct.norm());
            }
            assert_eq!(ds.per_direction_lambda[j], cfg.g * d.y.abs());
            assert!(ds.clean.row(j).iter().map(|z| z.norm()).fold(0.0, f64::max) > 1e-6);
        }
    }

    #[test]
    fn text_round_trip_is_exact() {
        let cfg = MeasurementConfig {
            n_receivers: 8,
            n_directions: 4,
            noise_delta: 0.1,
            aperture_extent: PI,
            ..small_config()
        };
        let obstacles = crate::geometry::obstacles_by_name("multi").unwrap();
        let cfg = MeasurementConfig { radius: 10.0, ..cfg };
        let ds = synthesize(&obstacles, &cfg, 64).unwrap();
        let text = ds.to_text();
        let back = ScatteringDataset::from_text(&text).unwrap();
        assert_eq!(back, ds);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn version_and_format_errors() {
        let cfg = MeasurementConfig {
            n_receivers: 4,
            n_directions: 4,
            ..small_config()
        };
        let ds = synthesize(&[BoundaryCurve::circle(1.0)], &cfg, 32).unwrap();
        let text = ds.to_text();
        let wrong = text.replace(FORMAT_VERSION, "taperscat-ds-0");
        assert!(matches!(
            ScatteringDataset::from_text(&wrong),
            Err(Error::Version { .. })
        ));
        let truncated: String = text.lines().take(20).collect::<Vec<_>>().join("\n");
        assert!(matches!(
            ScatteringDataset::from_text(&truncated),
            Err(Error::Format(_))
        ));
    }
}
