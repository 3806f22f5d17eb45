use anyhow::{anyhow, Context};
use taperscat::geometry::obstacles_by_name;
use taperscat::incident::TaperForm;
use taperscat::synthesis::{synthesize_with_form, MeasurementConfig, DEFAULT_NYSTROM};

use crate::args::{SimulateArgs, TaperFormArg};
use crate::manifest::{manifest_path, Manifest, SimulationSettings};
use crate::{CliResult, Failure};

/// Flags override the manifest or preset, which override the defaults.
fn resolve(args: &SimulateArgs) -> CliResult<SimulationSettings> {
    let defaults = MeasurementConfig::default();
    let mut s = SimulationSettings {
        shape: "circle".into(),
        k: defaults.k,
        g: defaults.g,
        n_directions: defaults.n_directions,
        n_receivers: defaults.n_receivers,
        radius: defaults.radius,
        aperture_start: defaults.aperture_start,
        aperture_extent: defaults.aperture_extent,
        noise_delta: defaults.noise_delta,
        seed: defaults.seed,
        n_nystrom: DEFAULT_NYSTROM,
        taper_form: TaperForm::default().name().into(),
    };
    if let Some(path) = &args.from_manifest {
        s = Manifest::load(path).map_err(Failure::usage)?.settings;
    }
    if let Some(p) = args.preset {
        let v = p.values();
        s.shape = v.shape.into();
        s.k = v.k;
        s.g = v.g;
        s.n_directions = v.n_directions;
        s.n_receivers = v.n_receivers;
        s.radius = v.radius;
    }
    if let Some(v) = &args.shape {
        s.shape = v.clone();
    }
    macro_rules! take {
        ($($flag:ident => $field:ident),*) => {
            $(if let Some(v) = args.$flag { s.$field = v; })*
        };
    }
    take!(k => k, g => g, nd => n_directions, nr => n_receivers, radius => radius,
          noise => noise_delta, seed => seed, nystrom => n_nystrom);
    if let Some((start, extent)) = args.aperture {
        s.aperture_start = start;
        s.aperture_extent = extent;
    }
    if let Some(f) = args.taper_form {
        s.taper_form = match f {
            TaperFormArg::Printed => TaperForm::Printed,
            TaperFormArg::Phase => TaperForm::PhaseModulated,
        }
        .name()
        .into();
    }
    Ok(s)
}

pub fn run(args: SimulateArgs) -> CliResult<()> {
    let s = resolve(&args)?;
    let obstacles = obstacles_by_name(&s.shape).map_err(Failure::usage)?;
    let form = TaperForm::from_name(&s.taper_form).map_err(Failure::usage)?;
    let config = MeasurementConfig {
        radius: s.radius,
        n_receivers: s.n_receivers,
        aperture_start: s.aperture_start,
        aperture_extent: s.aperture_extent,
        n_directions: s.n_directions,
        k: s.k,
        g: s.g,
        noise_delta: s.noise_delta,
        seed: s.seed,
    };
    config
        .validate_for(&obstacles)
        .map_err(|e| Failure::usage(anyhow!("invalid configuration: {e}")))?;
    if s.n_nystrom < taperscat::forward::MIN_NODES || s.n_nystrom % 2 != 0 {
        return Err(Failure::usage(anyhow!(
            "--nystrom must be even and at least {}, got {}",
            taperscat::forward::MIN_NODES,
            s.n_nystrom
        )));
    }

    let dataset = synthesize_with_form(&obstacles, &config, s.n_nystrom, form)
        .map_err(|e| Failure::runtime(anyhow!("simulate: forward solve failed: {e}")))?;
    let text = dataset.to_text();
    std::fs::write(&args.out, &text)
        .with_context(|| format!("simulate: writing dataset {}", args.out.display()))
        .map_err(Failure::runtime)?;
    let manifest = Manifest::new(s, &args.out, text.as_bytes());
    let mpath = manifest_path(&args.out);
    std::fs::write(&mpath, manifest.to_json())
        .with_context(|| format!("simulate: writing manifest {}", mpath.display()))
        .map_err(Failure::runtime)?;
    println!(
        "wrote {} ({} directions x {} receivers), sha256 {}",
        args.out.display(),
        dataset.n_directions(),
        dataset.n_receivers(),
        manifest.dataset_sha256
    );
    Ok(())
}
