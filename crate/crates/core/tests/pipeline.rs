//! End-to-end simulate → image runs at desk scale.

use taperscat::geometry::BoundaryCurve;
use taperscat::imaging::{
    reconstruct, reconstruction_metrics, separated_domain_reconstruct, split_at_y, ReconstructionOptions,
    SamplingGrid,
};
use taperscat::synthesis::{synthesize, MeasurementConfig, ScatteringDataset};

fn unit_circle_data() -> ScatteringDataset {
    let config = MeasurementConfig {
        k: 25.0,
        g: 0.01,
        n_directions: 128,
        n_receivers: 256,
        noise_delta: 0.05,
        ..MeasurementConfig::default()
    };
    synthesize(&[BoundaryCurve::circle(1.0)], &config, 512).unwrap()
}

#[test]
fn circle_peaks_sit_at_the_chord_endpoints_and_ignore_noise() {
    let ds = unit_circle_data();
    let grid = SamplingGrid::default();
    let noisy = reconstruct(&ds, &grid, &ReconstructionOptions::default()).unwrap();
    assert_eq!(noisy.points.len(), 256);
    assert!(noisy.warnings.is_empty());

    // Every beam passes through the centre, so it meets the unit circle at ±d.
    for (j, d) in ds.directions.iter().enumerate() {
        let pts: Vec<_> = noisy.points.iter().filter(|p| p.direction_index == j).collect();
        assert_eq!(pts.len(), 2);
        for end in [*d, *d * -1.0] {
            let best = pts
                .iter()
                .map(|p| p.position.dist(end))
                .fold(f64::INFINITY, f64::min);
            assert!(best <= 0.1, "direction {j}: nearest peak {best} from {end:?}");
        }
    }

    let truth = [BoundaryCurve::circle(1.0)];
    let clean = reconstruct(
        &ds,
        &grid,
        &ReconstructionOptions {
            use_clean: true,
            ..Default::default()
        },
    )
    .unwrap();
    let m_noisy = reconstruction_metrics(&noisy, &truth, 0.06).unwrap();
    let m_clean = reconstruction_metrics(&clean, &truth, 0.06).unwrap();
    assert!(m_noisy.fraction_within_tol >= 0.9, "{m_noisy:?}");
    assert!((m_noisy.mean_distance - m_clean.mean_distance).abs() < 0.03);
}

#[test]
fn three_leaf_separated_domains() {
    let leaf = BoundaryCurve::leaf(3);
    let config = MeasurementConfig {
        k: 25.0,
        g: 0.005,
        n_directions: 128,
        n_receivers: 256,
        ..MeasurementConfig::default()
    };
    let ds = synthesize(std::slice::from_ref(&leaf), &config, 512).unwrap();
    let grid = SamplingGrid::default();
    let halves = split_at_y(&grid, 0.0).unwrap();
    let rec =
        separated_domain_reconstruct(&ds, &grid, &halves, 24, &ReconstructionOptions::default()).unwrap();
    assert_eq!(rec.points.len(), 48);
    let m = reconstruction_metrics(&rec, &[leaf], 0.08).unwrap();
    assert!(m.fraction_within_tol >= 0.85, "{m:?}");
}
