//! Run manifests: enough of the configuration to repeat a simulation, plus
//! a digest of the file it produced.

use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const MANIFEST_FORMAT: &str = "taperscat-manifest-1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationSettings {
    pub shape: String,
    pub k: f64,
    pub g: f64,
    pub n_directions: usize,
    pub n_receivers: usize,
    pub radius: f64,
    pub aperture_start: f64,
    pub aperture_extent: f64,
    pub noise_delta: f64,
    pub seed: u64,
    pub n_nystrom: usize,
    pub taper_form: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub format: String,
    pub tool_version: String,
    pub settings: SimulationSettings,
    pub dataset_file: String,
    pub dataset_sha256: String,
}

impl Manifest {
    pub fn new(settings: SimulationSettings, dataset: &Path, contents: &[u8]) -> Self {
        Manifest {
            format: MANIFEST_FORMAT.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            settings,
            dataset_file: dataset
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default(),
            dataset_sha256: sha256_hex(contents),
        }
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading manifest {}", path.display()))?;
        let m: Manifest =
            serde_json::from_str(&text).with_context(|| format!("parsing manifest {}", path.display()))?;
        if m.format != MANIFEST_FORMAT {
            anyhow::bail!("manifest format {:?} is not {MANIFEST_FORMAT:?}", m.format);
        }
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

/// `<dataset>.manifest.json` next to the dataset.
pub fn manifest_path(dataset: &Path) -> PathBuf {
    let mut s = dataset.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings() -> SimulationSettings {
        SimulationSettings {
            shape: "circle".into(),
            k: 25.0,
            g: 0.1 + 0.2,
            n_directions: 8,
            n_receivers: 64,
            radius: 5.0,
            aperture_start: 0.0,
            aperture_extent: std::f64::consts::TAU,
            noise_delta: 0.05,
            seed: 42,
            n_nystrom: 512,
            taper_form: "printed".into(),
        }
    }

    #[test]
    fn digest_of_known_input() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn json_round_trip_keeps_floats_exact() {
        let m = Manifest::new(settings(), Path::new("/tmp/ds.txt"), b"x");
        let back: Manifest = serde_json::from_str(&m.to_json()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.dataset_file, "ds.txt");
        assert_eq!(
            manifest_path(Path::new("a/ds.txt")),
            PathBuf::from("a/ds.txt.manifest.json")
        );
    }
}
