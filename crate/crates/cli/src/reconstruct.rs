use std::path::Path;

use anyhow::{anyhow, Context};
use taperscat::geometry::obstacles_by_name;
use taperscat::imaging::{
    aggregate_indicator, direction_map, reconstruct_directions, reconstruction_metrics, render_heatmap,
    separated_domain_reconstruct, split_at_y, write_heatmap, write_points_table, Heatmap,
    ReconstructionOptions, SamplingGrid, DEFAULT_PEAKS,
};
use taperscat::synthesis::ScatteringDataset;

use crate::args::{Mode, ReconstructArgs};
use crate::{CliResult, Failure};

fn write_heatmaps(
    dir: &Path,
    dataset: &ScatteringDataset,
    grid: &SamplingGrid,
    args: &ReconstructArgs,
    directions: &[usize],
) -> anyhow::Result<usize> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    if args.mode == Mode::Separated {
        let values = aggregate_indicator(dataset, grid, args.use_clean)?
            .into_iter()
            .map(|a| a.map(|(v, _)| v))
            .collect();
        let map = Heatmap::from_values(*grid, values, "aggregate over directions")?;
        write_heatmap(&map, dir.join("aggregate.pgm"))?;
        return Ok(1);
    }
    let mut written = 0;
    for &j in directions {
        // Directions whose strip misses the grid were reported already.
        let Ok(map) = direction_map(dataset, grid, j, args.use_clean) else {
            continue;
        };
        write_heatmap(&render_heatmap(&map), dir.join(format!("direction_{j:05}.pgm")))?;
        written += 1;
    }
    Ok(written)
}

pub fn run(args: ReconstructArgs) -> CliResult<()> {
    let grid = args
        .grid
        .or_else(|| args.preset.map(|p| p.values().grid))
        .unwrap_or_default();
    let peaks = args.m.unwrap_or(DEFAULT_PEAKS);
    if peaks < 1 {
        return Err(Failure::usage(anyhow!("--m must be at least 1")));
    }
    if let Some(s) = args.min_sep {
        if !(s >= 0.0 && s.is_finite()) {
            return Err(Failure::usage(anyhow!(
                "--min-sep must be a non-negative length, got {s}"
            )));
        }
    }
    if !(args.tol >= 0.0 && args.tol.is_finite()) {
        return Err(Failure::usage(anyhow!("--tol must be non-negative")));
    }
    let truth = match &args.shape {
        Some(name) => Some(obstacles_by_name(name).map_err(Failure::usage)?),
        None => None,
    };
    let dataset = ScatteringDataset::load(&args.dataset)
        .map_err(|e| Failure::runtime(anyhow!("reconstruct: reading {}: {e}", args.dataset.display())))?;
    let directions: Vec<usize> = match &args.directions {
        Some(list) => list.clone(),
        None => (0..dataset.n_directions()).collect(),
    };
    if let Some(&j) = directions.iter().find(|&&j| j >= dataset.n_directions()) {
        return Err(Failure::usage(anyhow!(
            "direction {j} is out of range; the dataset has {} directions",
            dataset.n_directions()
        )));
    }
    let options = ReconstructionOptions {
        peaks,
        min_separation: args.min_sep,
        use_clean: args.use_clean,
    };

    let rec = match args.mode {
        Mode::Standard => reconstruct_directions(&dataset, &grid, &options, &directions),
        Mode::Separated => split_at_y(&grid, args.split_y).and_then(|rects| {
            separated_domain_reconstruct(&dataset, &grid, &rects, args.per_domain, &options)
        }),
    }
    .map_err(|e| Failure::runtime(anyhow!("reconstruct: imaging failed: {e}")))?;
    for w in &rec.warnings {
        eprintln!("warning: {w}");
    }

    std::fs::write(&args.out, write_points_table(&rec.points))
        .with_context(|| format!("reconstruct: writing {}", args.out.display()))
        .map_err(Failure::runtime)?;
    println!("wrote {} points to {}", rec.points.len(), args.out.display());

    if let Some(dir) = &args.heatmap_dir {
        let n = write_heatmaps(dir, &dataset, &grid, &args, &directions)
            .context("reconstruct: writing heatmaps")
            .map_err(Failure::runtime)?;
        println!("wrote {n} heatmaps to {}", dir.display());
    }

    if let Some(truth) = truth {
        if !rec.points.is_empty() {
            let m = reconstruction_metrics(&rec, &truth, args.tol)
                .map_err(|e| Failure::runtime(anyhow!("reconstruct: metrics: {e}")))?;
            println!("mean_distance {:.6e}", m.mean_distance);
            println!("max_distance {:.6e}", m.max_distance);
            println!("fraction_within_tol {:.6} (tol {})", m.fraction_within_tol, m.tol);
        }
    }
    Ok(())
}
