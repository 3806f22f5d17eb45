//! Direct imaging: the beam indicator on strip-shaped meshes, peak
//! extraction, and the reconstruction pipeline.
//!
//! For direction `d_j` with taper width `λ_j`, the indicator is
//! `I(z; d_j) = (1/λ_j) |Σ_i u(x_i; d_j) conj(e^{i(k|x_i − z| + π/4)}) w|`
//! with receiver spacing `w`. Only points near the beam axis are probed,
//! and the strongest few well-separated peaks mark where the beam met the
//! boundary.

mod fit;
mod output;

use std::f64::consts::FRAC_PI_4;

use rayon::prelude::*;

use crate::geometry::{distance_to_union, BoundaryCurve};
use crate::synthesis::ScatteringDataset;
use crate::{Error, Result, Vec2, C64};

pub use fit::{point_source_fit, PointSourceFit};
pub use output::{read_points_table, render_heatmap, write_heatmap, write_points_table, Heatmap};

/// Default peak count per direction.
pub const DEFAULT_PEAKS: usize = 2;

/// Default peak separation in grid spacings.
pub const DEFAULT_SEPARATION_CELLS: f64 = 3.0;

/// Uniform lattice of cell-centred sample points; index `iy · nx + ix`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Default for SamplingGrid {
    fn default() -> Self {
        SamplingGrid {
            x_min: -2.0,
            x_max: 2.0,
            y_min: -2.0,
            y_max: 2.0,
            nx: 150,
            ny: 150,
        }
    }
}

impl SamplingGrid {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, nx: usize, ny: usize) -> Result<Self> {
        let g = SamplingGrid {
            x_min,
            x_max,
            y_min,
            y_max,
            nx,
            ny,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite || !(self.x_min < self.x_max) || !(self.y_min < self.y_max) {
            return Err(Error::config(format!("invalid grid bounds {self:?}")));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::config(format!(
                "grid needs at least 2 points per axis, got {}x{}",
                self.nx, self.ny
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_max - self.y_min) / self.ny as f64
    }

    /// The larger of the two spacings.
    pub fn spacing(&self) -> f64 {
        self.dx().max(self.dy())
    }

    pub fn point(&self, index: usize) -> Vec2 {
        let (ix, iy) = (index % self.nx, index / self.nx);
        Vec2::new(
            self.x_min + (ix as f64 + 0.5) * self.dx(),
            self.y_min + (iy as f64 + 0.5) * self.dy(),
        )
    }

    pub fn contains(&self, p: Vec2) -> bool {
        (self.x_min..=self.x_max).contains(&p.x) && (self.y_min..=self.y_max).contains(&p.y)
    }
}

/// Grid points inside the strip `|z · d⊥| ≤ half_width` around one beam axis.
#[derive(Debug, Clone, PartialEq)]
pub struct ElongatedMesh {
    pub parent: SamplingGrid,
    pub direction: Vec2,
    pub half_width: f64,
    pub member_indices: Vec<usize>,
}

impl ElongatedMesh {
    pub fn len(&self) -> usize {
        self.member_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.member_indices.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = Vec2> + '_ {
        self.member_indices.iter().map(|&i| self.parent.point(i))
    }
}

/// Strip of half-width `max(5λ, 3h)` about the axis through the origin
/// along `d`, with `h` the larger grid spacing.
pub fn build_elongated_mesh(grid: &SamplingGrid, d: Vec2, lambda: f64) -> Result<ElongatedMesh> {
    grid.validate()?;
    let half_width = (5.0 * lambda).max(3.0 * grid.spacing());
    let normal = d.perp();
    let member_indices: Vec<usize> = (0..grid.len())
        .filter(|&i| grid.point(i).dot(normal).abs() <= half_width)
        .collect();
    if member_indices.is_empty() {
        return Err(Error::config(format!(
            "the strip for direction {d:?} (half-width {half_width:e}) misses the sampling grid"
        )));
    }
    Ok(ElongatedMesh {
        parent: *grid,
        direction: d,
        half_width,
        member_indices,
    })
}

/// Indicator values on one mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorMap {
    pub mesh: ElongatedMesh,
    pub values: Vec<f64>,
    pub direction_index: usize,
}

/// The indicator at one sampling point.
pub fn indicator(
    z: Vec2,
    data_row: &[C64],
    receivers: &[Vec2],
    k: f64,
    lambda: f64,
    arc_weight: f64,
) -> Result<f64> {
    if receivers.is_empty() {
        return Err(Error::config("indicator needs at least one receiver"));
    }
    if data_row.len() != receivers.len() {
        return Err(Error::config(format!(
            "{} data values for {} receivers",
            data_row.len(),
            receivers.len()
        )));
    }
    if !(lambda > 0.0) {
        return Err(Error::config(format!(
            "beam width must be positive, got {lambda}"
        )));
    }
    Ok(indicator_unchecked(z, data_row, receivers, k, lambda, arc_weight))
}

#[inline]
fn indicator_unchecked(
    z: Vec2,
    data_row: &[C64],
    receivers: &[Vec2],
    k: f64,
    lambda: f64,
    arc_weight: f64,
) -> f64 {
    let mut sum = C64::default();
    for (u, x) in data_row.iter().zip(receivers) {
        let (s, c) = (k * x.dist(z)).sin_cos();
        sum += u * C64::new(c, -s);
    }
    // conj(e^{iπ/4}) does not change the modulus but keeps the formula whole.
    (sum * C64::from_polar(1.0, -FRAC_PI_4)).norm() * arc_weight / lambda
}

/// Indicator of direction `j` of `data` over `mesh`.
pub fn indicator_map(
    mesh: ElongatedMesh,
    data_row: &[C64],
    receivers: &[Vec2],
    k: f64,
    lambda: f64,
    arc_weight: f64,
    direction_index: usize,
) -> Result<IndicatorMap> {
    if let Some(z) = mesh.points().next() {
        indicator(z, data_row, receivers, k, lambda, arc_weight)?;
    }
    let values = mesh
        .points()
        .map(|z| indicator_unchecked(z, data_row, receivers, k, lambda, arc_weight))
        .collect();
    Ok(IndicatorMap {
        mesh,
        values,
        direction_index,
    })
}

/// One selected peak.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub position: Vec2,
    pub value: f64,
    pub grid_index: usize,
}

/// Result of peak extraction; `exhausted` is set when fewer than the
/// requested number of separated peaks exist.
#[derive(Debug, Clone, PartialEq)]
pub struct Peaks {
    pub peaks: Vec<Peak>,
    pub exhausted: bool,
}

/// Greedy non-maximum suppression over `(grid index, value)` candidates.
fn select_peaks(grid: &SamplingGrid, candidates: &[(usize, f64)], m: usize, min_separation: f64) -> Peaks {
    let mut order: Vec<(usize, f64)> = candidates.iter().copied().filter(|c| !c.1.is_nan()).collect();
    order.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut peaks: Vec<Peak> = Vec::with_capacity(m);
    for (index, value) in order {
        if peaks.len() == m {
            break;
        }
        let position = grid.point(index);
        if peaks.iter().all(|p| p.position.dist(position) > min_separation) {
            peaks.push(Peak {
                position,
                value,
                grid_index: index,
            });
        }
    }
    Peaks {
        exhausted: peaks.len() < m,
        peaks,
    }
}

/// The `m` largest indicator values that are pairwise more than
/// `min_separation` apart, in descending order (ties by grid index).
pub fn local_maxima(map: &IndicatorMap, m: usize, min_separation: f64) -> Result<Peaks> {
    if m < 1 {
        return Err(Error::config("peak count must be at least 1"));
    }
    let candidates: Vec<(usize, f64)> = map
        .mesh
        .member_indices
        .iter()
        .copied()
        .zip(map.values.iter().copied())
        .collect();
    let peaks = select_peaks(&map.mesh.parent, &candidates, m, min_separation);
    if peaks.exhausted {
        log::warn!(
            "direction {}: only {} separated maxima available, {m} requested",
            map.direction_index,
            peaks.peaks.len()
        );
    }
    Ok(peaks)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoveredPoint {
    pub position: Vec2,
    pub direction_index: usize,
    pub indicator_value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconstructionMetrics {
    pub mean_distance: f64,
    pub max_distance: f64,
    pub fraction_within_tol: f64,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Reconstruction {
    pub points: Vec<RecoveredPoint>,
    pub metrics: Option<ReconstructionMetrics>,
    pub warnings: Vec<String>,
}

/// Knobs shared by the reconstruction variants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconstructionOptions {
    /// Peaks per direction (or per subdomain for the separated variant).
    pub peaks: usize,
    /// Suppression radius; `None` means three grid spacings.
    pub min_separation: Option<f64>,
    /// Image the noiseless matrix instead of the noisy one.
    pub use_clean: bool,
}

impl Default for ReconstructionOptions {
    fn default() -> Self {
        ReconstructionOptions {
            peaks: DEFAULT_PEAKS,
            min_separation: None,
            use_clean: false,
        }
    }
}

impl ReconstructionOptions {
    fn separation(&self, grid: &SamplingGrid) -> f64 {
        self.min_separation
            .unwrap_or(DEFAULT_SEPARATION_CELLS * grid.spacing())
    }
}

fn data_row(dataset: &ScatteringDataset, j: usize, use_clean: bool) -> &[C64] {
    if use_clean {
        dataset.clean.row(j)
    } else {
        dataset.noisy.row(j)
    }
}

/// Indicator map for direction `j` of a dataset.
pub fn direction_map(
    dataset: &ScatteringDataset,
    grid: &SamplingGrid,
    j: usize,
    use_clean: bool,
) -> Result<IndicatorMap> {
    let d = *dataset
        .directions
        .get(j)
        .ok_or_else(|| Error::config(format!("no direction {j} in the dataset")))?;
    let lambda = dataset.per_direction_lambda[j];
    let mesh = build_elongated_mesh(grid, d, lambda)?;
    indicator_map(
        mesh,
        data_row(dataset, j, use_clean),
        &dataset.receivers,
        dataset.config.k,
        lambda,
        dataset.config.arc_weight(),
        j,
    )
}

/// Peaks of every direction, tagged by direction index.
pub fn reconstruct(
    dataset: &ScatteringDataset,
    grid: &SamplingGrid,
    options: &ReconstructionOptions,
) -> Result<Reconstruction> {
    let all: Vec<usize> = (0..dataset.n_directions()).collect();
    reconstruct_directions(dataset, grid, options, &all)
}

/// [`reconstruct`] restricted to the listed directions.
pub fn reconstruct_directions(
    dataset: &ScatteringDataset,
    grid: &SamplingGrid,
    options: &ReconstructionOptions,
    directions: &[usize],
) -> Result<Reconstruction> {
    grid.validate()?;
    if options.peaks < 1 {
        return Err(Error::config("peak count must be at least 1"));
    }
    if let Some(&j) = directions.iter().find(|&&j| j >= dataset.n_directions()) {
        return Err(Error::config(format!(
            "direction index {j} out of range (dataset has {})",
            dataset.n_directions()
        )));
    }
    let min_sep = options.separation(grid);
    let per_direction: Vec<std::result::Result<Peaks, String>> = directions
        .par_iter()
        .map(|&j| {
            direction_map(dataset, grid, j, options.use_clean)
                .and_then(|map| local_maxima(&map, options.peaks, min_sep))
                .map_err(|e| format!("direction {j} skipped: {e}"))
        })
        .collect();

    let mut rec = Reconstruction::default();
    let mut succeeded = 0;
    for (&j, result) in directions.iter().zip(per_direction) {
        match result {
            Ok(peaks) => {
                succeeded += 1;
                if peaks.exhausted {
                    rec.warnings.push(format!(
                        "direction {j}: only {} of {} maxima found",
                        peaks.peaks.len(),
                        options.peaks
                    ));
                }
                rec.points.extend(peaks.peaks.into_iter().map(|p| RecoveredPoint {
                    position: p.position,
                    direction_index: j,
                    indicator_value: p.value,
                }));
            }
            Err(w) => {
                log::warn!("{w}");
                rec.warnings.push(w);
            }
        }
    }
    if succeeded == 0 && !directions.is_empty() {
        return Err(Error::config(format!(
            "no direction produced an imaging mesh: {}",
            rec.warnings.join("; ")
        )));
    }
    Ok(rec)
}

/// Axis-aligned closed rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Rect {
    pub fn contains(&self, p: Vec2) -> bool {
        (self.x_min..=self.x_max).contains(&p.x) && (self.y_min..=self.y_max).contains(&p.y)
    }

    fn interiors_overlap(&self, o: &Rect) -> bool {
        self.x_min < o.x_max && o.x_min < self.x_max && self.y_min < o.y_max && o.y_min < self.y_max
    }
}

/// The grid's bounding box split by the horizontal line `y = split`:
/// `[lower, upper]`.
pub fn split_at_y(grid: &SamplingGrid, split: f64) -> Result<Vec<Rect>> {
    if !(grid.y_min < split && split < grid.y_max) {
        return Err(Error::config(format!(
            "split line y = {split} does not cut the grid [{}, {}]",
            grid.y_min, grid.y_max
        )));
    }
    let lower = Rect {
        x_min: grid.x_min,
        x_max: grid.x_max,
        y_min: grid.y_min,
        y_max: split,
    };
    let upper = Rect {
        y_min: split,
        y_max: grid.y_max,
        ..lower
    };
    Ok(vec![lower, upper])
}

/// Aggregate indicator `A(z) = max_j I(z; d_j)` over the directions whose
/// strip contains `z`, with the maximising direction. Points outside every
/// strip carry `None`.
pub fn aggregate_indicator(
    dataset: &ScatteringDataset,
    grid: &SamplingGrid,
    use_clean: bool,
) -> Result<Vec<Option<(f64, usize)>>> {
    grid.validate()?;
    let maps: Vec<Result<IndicatorMap>> = (0..dataset.n_directions())
        .into_par_iter()
        .map(|j| direction_map(dataset, grid, j, use_clean))
        .collect();
    let mut agg: Vec<Option<(f64, usize)>> = vec![None; grid.len()];
    for map in maps.into_iter().flatten() {
        for (&i, &v) in map.mesh.member_indices.iter().zip(&map.values) {
            if agg[i].is_none_or(|(best, _)| v > best) {
                agg[i] = Some((v, map.direction_index));
            }
        }
    }
    Ok(agg)
}

/// Per-subdomain peaks of the aggregate indicator. A grid point on a shared
/// edge belongs to the first listed rectangle containing it.
pub fn separated_domain_reconstruct(
    dataset: &ScatteringDataset,
    grid: &SamplingGrid,
    subdomains: &[Rect],
    per_domain_count: usize,
    options: &ReconstructionOptions,
) -> Result<Reconstruction> {
    if subdomains.is_empty() {
        return Err(Error::config("at least one subdomain is required"));
    }
    if per_domain_count < 1 {
        return Err(Error::config("per-domain count must be at least 1"));
    }
    for (a, ra) in subdomains.iter().enumerate() {
        for rb in &subdomains[a + 1..] {
            if ra.interiors_overlap(rb) {
                return Err(Error::config(format!("subdomains {ra:?} and {rb:?} overlap")));
            }
        }
    }
    let agg = aggregate_indicator(dataset, grid, options.use_clean)?;
    let mut buckets: Vec<Vec<(usize, f64)>> = vec![Vec::new(); subdomains.len()];
    let mut owner = vec![usize::MAX; grid.len()];
    for i in 0..grid.len() {
        let p = grid.point(i);
        match subdomains.iter().position(|r| r.contains(p)) {
            Some(b) => {
                if let Some((v, _)) = agg[i] {
                    buckets[b].push((i, v));
                    owner[i] = b;
                }
            }
            None => {
                return Err(Error::config(format!(
                    "grid point {p:?} is not covered by any subdomain"
                )))
            }
        }
    }
    let min_sep = options.separation(grid);
    let mut rec = Reconstruction::default();
    if buckets.iter().all(Vec::is_empty) {
        return Err(Error::config("no direction produced an imaging mesh"));
    }
    for (b, cands) in buckets.iter().enumerate() {
        let peaks = select_peaks(grid, cands, per_domain_count, min_sep);
        if peaks.exhausted {
            rec.warnings.push(format!(
                "subdomain {b}: only {} of {per_domain_count} maxima found",
                peaks.peaks.len()
            ));
        }
        rec.points.extend(peaks.peaks.into_iter().map(|p| RecoveredPoint {
            position: p.position,
            direction_index: agg[p.grid_index].map_or(usize::MAX, |a| a.1),
            indicator_value: p.value,
        }));
    }
    Ok(rec)
}

/// Distances of the recovered points to the true boundary.
pub fn reconstruction_metrics(
    rec: &Reconstruction,
    truth: &[BoundaryCurve],
    tol: f64,
) -> Result<ReconstructionMetrics> {
    if truth.is_empty() {
        return Err(Error::config("metrics need at least one true boundary"));
    }
    if rec.points.is_empty() {
        return Err(Error::config("metrics of an empty reconstruction"));
    }
    let dists: Vec<f64> = rec
        .points
        .par_iter()
        .map(|p| distance_to_union(truth, p.position))
        .collect();
    let n = dists.len() as f64;
    Ok(ReconstructionMetrics {
        mean_distance: dists.iter().sum::<f64>() / n,
        max_distance: dists.iter().cloned().fold(0.0, f64::max),
        fraction_within_tol: dists.iter().filter(|&&d| d <= tol).count() as f64 / n,
        tol,
    })
}
