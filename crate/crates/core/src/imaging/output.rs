//! Plain-text outputs: indicator heatmaps as 16-bit PGM and recovered
//! point tables.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::{IndicatorMap, RecoveredPoint, SamplingGrid};
use crate::{Error, Result, Vec2};

const PGM_MAX: u32 = 65535;
const POINTS_HEADER: &str = "x y direction_index indicator_value";

/// Values on a full grid; `None` marks points outside the imaged region.
#[derive(Debug, Clone, PartialEq)]
pub struct Heatmap {
    pub grid: SamplingGrid,
    pub values: Vec<Option<f64>>,
    pub label: String,
}

impl Heatmap {
    pub fn from_values(
        grid: SamplingGrid,
        values: Vec<Option<f64>>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::config(format!(
                "{} heatmap values for a grid of {}",
                values.len(),
                grid.len()
            )));
        }
        Ok(Heatmap {
            grid,
            values,
            label: label.into(),
        })
    }

    /// `(min, max)` over the defined values.
    pub fn range(&self) -> Option<(f64, f64)> {
        self.values
            .iter()
            .flatten()
            .filter(|v| v.is_finite())
            .fold(None, |acc, &v| match acc {
                None => Some((v, v)),
                Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
            })
    }

    /// Grey levels, row-major with the top row at `y_max`; undefined points
    /// map to 0.
    pub fn levels(&self) -> Vec<u32> {
        let (lo, hi) = self.range().unwrap_or((0.0, 0.0));
        let span = hi - lo;
        let g = &self.grid;
        let mut out = Vec::with_capacity(g.len());
        for iy in (0..g.ny).rev() {
            for ix in 0..g.nx {
                let level = match self.values[iy * g.nx + ix] {
                    Some(v) if v.is_finite() && span > 0.0 => {
                        ((v - lo) / span * PGM_MAX as f64).round() as u32
                    }
                    _ => 0,
                };
                out.push(level);
            }
        }
        out
    }

    pub fn to_pgm(&self) -> String {
        let mut s = format!(
            "P2\n# {}\n{} {}\n{PGM_MAX}\n",
            self.label, self.grid.nx, self.grid.ny
        );
        for row in self.levels().chunks(self.grid.nx) {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn sidecar(&self) -> String {
        let (lo, hi) = self.range().unwrap_or((f64::NAN, f64::NAN));
        let g = &self.grid;
        format!(
            "label {}\nmin {lo:.16e}\nmax {hi:.16e}\nx_min {:.16e}\nx_max {:.16e}\ny_min {:.16e}\ny_max {:.16e}\nnx {}\nny {}\n",
            self.label, g.x_min, g.x_max, g.y_min, g.y_max, g.nx, g.ny
        )
    }
}

/// Heatmap of one direction's indicator on its strip.
pub fn render_heatmap(map: &IndicatorMap) -> Heatmap {
    let grid = map.mesh.parent;
    let mut values = vec![None; grid.len()];
    for (&i, &v) in map.mesh.member_indices.iter().zip(&map.values) {
        values[i] = Some(v);
    }
    Heatmap {
        grid,
        values,
        label: format!("direction {}", map.direction_index),
    }
}

/// Write `<path>` as PGM and `<path>.txt` with the scaling; returns the
/// sidecar path.
pub fn write_heatmap(heatmap: &Heatmap, path: impl AsRef<Path>) -> Result<PathBuf> {
    let path = path.as_ref();
    std::fs::write(path, heatmap.to_pgm())?;
    let mut side = path.as_os_str().to_owned();
    side.push(".txt");
    let side = PathBuf::from(side);
    std::fs::write(&side, heatmap.sidecar())?;
    Ok(side)
}

/// Header line plus one `x y direction_index indicator_value` row per point.
pub fn write_points_table(points: &[RecoveredPoint]) -> String {
    let mut s = String::from(POINTS_HEADER);
    s.push('\n');
    for p in points {
        let _ = writeln!(
            s,
            "{:.16e} {:.16e} {} {:.16e}",
            p.position.x, p.position.y, p.direction_index, p.indicator_value
        );
    }
    s
}

pub fn read_points_table(text: &str) -> Result<Vec<RecoveredPoint>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == POINTS_HEADER => {}
        other => {
            return Err(Error::Format(format!(
                "expected points header {POINTS_HEADER:?}, found {other:?}"
            )))
        }
    }
    lines
        .enumerate()
        .map(|(n, line)| {
            let bad = || Error::Format(format!("points row {}: {line:?}", n + 1));
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 {
                return Err(bad());
            }
            let num = |s: &str| s.parse::<f64>().map_err(|_| bad());
            Ok(RecoveredPoint {
                position: Vec2::new(num(f[0])?, num(f[1])?),
                direction_index: f[2].parse().map_err(|_| bad())?,
                indicator_value: num(f[3])?,
            })
        })
        .collect()
}
