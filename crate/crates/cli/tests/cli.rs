use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use taperscat::imaging::read_points_table;
use taperscat::synthesis::ScatteringDataset;

fn taperscat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taperscat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// `simulate` with the small reference settings; `extra` may override the
/// direction and receiver counts.
fn simulate_small(dir: &Path, name: &str, extra: &[&str]) -> PathBuf {
    let out = dir.join(name);
    let mut args = vec![
        "simulate",
        "--shape",
        "circle",
        "--k",
        "25",
        "--g",
        "0.01",
        "--radius",
        "5",
        "--noise",
        "0.05",
        "--seed",
        "42",
        "--out",
        path_str(&out),
    ];
    if !extra.contains(&"--nd") {
        args.extend(["--nd", "8"]);
    }
    if !extra.contains(&"--nr") {
        args.extend(["--nr", "64"]);
    }
    args.extend_from_slice(extra);
    let o = taperscat(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn simulate_writes_a_dataset_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let ds = simulate_small(dir.path(), "ds.txt", &[]);
    let data = ScatteringDataset::load(&ds).unwrap();
    assert_eq!((data.n_directions(), data.n_receivers()), (8, 64));
    let manifest = std::fs::read_to_string(dir.path().join("ds.txt.manifest.json")).unwrap();
    assert!(manifest.contains("\"dataset_sha256\""));
    assert!(manifest.contains("\"seed\": 42"));
}

#[test]
fn repeated_simulation_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = simulate_small(dir.path(), "a.txt", &[]);
    let b = simulate_small(dir.path(), "b.txt", &[]);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn manifest_reruns_the_same_experiment() {
    let dir = tempfile::tempdir().unwrap();
    let a = simulate_small(dir.path(), "a.txt", &["--aperture", "-1,3", "--nystrom", "128"]);
    let b = dir.path().join("b.txt");
    let manifest = dir.path().join("a.txt.manifest.json");
    let o = taperscat(&[
        "simulate",
        "--from-manifest",
        path_str(&manifest),
        "--out",
        path_str(&b),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let ds = ScatteringDataset::load(&b).unwrap();
    assert_eq!(
        (ds.config.aperture_start, ds.config.aperture_extent, ds.n_nystrom),
        (-1.0, 3.0, 128)
    );
}

#[test]
fn invalid_arguments_exit_with_status_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.txt");
    let cases: [&[&str]; 5] = [
        &["--noise", "1.5"],
        &["--shape", "hexagon"],
        &["--nd", "6"],
        &["--k", "-3"],
        &["--radius", "1.0"],
    ];
    for extra in cases {
        let mut args = vec!["simulate", "--out", path_str(&out), "--nd", "8", "--nr", "16"];
        args.extend_from_slice(extra);
        let o = taperscat(&args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{extra:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(!out.exists());
    }
    assert_eq!(taperscat(&["simulate"]).status.code(), Some(2));
    assert_eq!(taperscat(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn thread_count_must_be_positive() {
    let o = Command::new(env!("CARGO_BIN_EXE_taperscat"))
        .env("TAPERSCAT_THREADS", "zero")
        .args(["validate"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reconstruct_caps_rows_and_reports_metrics() {
    let dir = tempfile::tempdir().unwrap();
    let ds = simulate_small(dir.path(), "ds.txt", &["--nystrom", "256"]);
    let pts = dir.path().join("pts.txt");
    let o = taperscat(&[
        "reconstruct",
        "--dataset",
        path_str(&ds),
        "--out",
        path_str(&pts),
        "--shape",
        "circle",
        "--grid",
        "-2,2,-2,2,80,80",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("mean_distance"), "{stdout}");
    let points = read_points_table(&std::fs::read_to_string(&pts).unwrap()).unwrap();
    assert!(!points.is_empty() && points.len() <= 2 * 8);
    assert!(points.iter().all(|p| p.direction_index < 8));
}

#[test]
fn heatmaps_are_written_for_the_requested_directions() {
    let dir = tempfile::tempdir().unwrap();
    let ds = simulate_small(
        dir.path(),
        "ds.txt",
        &["--nd", "128", "--nr", "32", "--nystrom", "128"],
    );
    let maps = dir.path().join("maps");
    let pts = dir.path().join("pts.txt");
    let o = taperscat(&[
        "reconstruct",
        "--dataset",
        path_str(&ds),
        "--out",
        path_str(&pts),
        "--heatmap-dir",
        path_str(&maps),
        "--directions",
        "15,100",
        "--grid",
        "-2,2,-2,2,40,40",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut pgm: Vec<String> = std::fs::read_dir(&maps)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".pgm"))
        .collect();
    pgm.sort();
    assert_eq!(pgm, ["direction_00015.pgm", "direction_00100.pgm"]);
    let text = std::fs::read_to_string(maps.join("direction_00015.pgm")).unwrap();
    assert!(text.starts_with("P2\n"));
    assert!(maps.join("direction_00015.pgm.txt").exists());
}

#[test]
fn separated_mode_splits_at_the_x_axis() {
    let dir = tempfile::tempdir().unwrap();
    let ds = simulate_small(dir.path(), "ds.txt", &["--nd", "16", "--nystrom", "256"]);
    let pts = dir.path().join("pts.txt");
    let o = taperscat(&[
        "reconstruct",
        "--dataset",
        path_str(&ds),
        "--out",
        path_str(&pts),
        "--mode",
        "separated",
        "--split-y",
        "0",
        "--per-domain",
        "6",
        "--grid",
        "-2,2,-2,2,60,60",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let points = read_points_table(&std::fs::read_to_string(&pts).unwrap()).unwrap();
    assert_eq!(points.len(), 12);
    assert!(points[..6].iter().all(|p| p.position.y <= 0.0));
    assert!(points[6..].iter().all(|p| p.position.y >= 0.0));
}

#[test]
fn unreadable_or_foreign_datasets_fail_at_runtime() {
    let dir = tempfile::tempdir().unwrap();
    let ds = simulate_small(dir.path(), "ds.txt", &["--nystrom", "128"]);
    let text = std::fs::read_to_string(&ds).unwrap();
    let old = dir.path().join("old.txt");
    std::fs::write(&old, text.replacen("taperscat-ds-1", "taperscat-ds-0", 1)).unwrap();
    let pts = dir.path().join("pts.txt");
    for bad in [old.as_path(), dir.path().join("missing.txt").as_path()] {
        let o = taperscat(&["reconstruct", "--dataset", path_str(bad), "--out", path_str(&pts)]);
        assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let far = taperscat(&[
        "reconstruct",
        "--dataset",
        path_str(&ds),
        "--out",
        path_str(&pts),
        "--grid",
        "40,41,40,41,10,10",
    ]);
    assert_eq!(far.status.code(), Some(3));
}

#[test]
fn validate_passes_and_reports_magnitudes() {
    let o = taperscat(&["validate"]);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(o.status.code(), Some(0), "{stdout}");
    assert!(stdout.contains("PASS mie k=25: relative l2 error"));
    assert!(stdout.contains("e-"), "{stdout}");
}

#[test]
fn validate_without_coupling_fails_at_resonance() {
    let o = taperscat(&["validate", "--debug-eta", "0"]);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout.contains("FAIL mie k=3.831705970207512"), "{stdout}");
    assert!(String::from_utf8_lossy(&o.stderr).contains("mie"));
}
