//! Desk-scale versions of the four reference experiments.

use clap::ValueEnum;
use taperscat::imaging::SamplingGrid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Unit circle.
    Example1,
    /// Kite at k = 20 with very narrow beams.
    Example2,
    /// Three-leaf obstacle.
    Example3,
    /// Three obstacles on a larger domain.
    Example4,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PresetValues {
    pub shape: &'static str,
    pub k: f64,
    pub g: f64,
    pub n_directions: usize,
    pub n_receivers: usize,
    pub radius: f64,
    pub grid: SamplingGrid,
}

impl Preset {
    pub fn values(self) -> PresetValues {
        let base = PresetValues {
            shape: "circle",
            k: 25.0,
            g: 0.01,
            n_directions: 128,
            n_receivers: 256,
            radius: 5.0,
            grid: SamplingGrid::default(),
        };
        match self {
            Preset::Example1 => base,
            Preset::Example2 => PresetValues {
                shape: "kite",
                k: 20.0,
                g: 5e-4,
                n_directions: 256,
                ..base
            },
            Preset::Example3 => PresetValues {
                shape: "leaf3",
                g: 0.003,
                n_directions: 256,
                n_receivers: 128,
                ..base
            },
            Preset::Example4 => PresetValues {
                shape: "multi",
                g: 0.005,
                n_directions: 256,
                n_receivers: 512,
                radius: 10.0,
                grid: SamplingGrid {
                    x_min: -5.0,
                    x_max: 5.0,
                    y_min: -5.0,
                    y_max: 5.0,
                    nx: 200,
                    ny: 200,
                },
                ..base
            },
        }
    }
}
