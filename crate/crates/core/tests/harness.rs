use std::collections::HashMap;
use std::path::{Path, PathBuf};

use robin_eigen::classifier::{Location, Subcase};
use robin_eigen::harness::{
    self, emit_figures, format_csv, read_curve_data, FigureOutcome, RowStatus, SweepRow,
};
use robin_eigen::SweepConfig;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn small_config() -> SweepConfig {
    let mut cfg = SweepConfig::default();
    cfg.apply_kv("beta_min = 0.5\nbeta_max = 6.5\nn_beta = 4\nn_a = 15\nn_lambda = 400\n")
        .unwrap();
    cfg
}

/// Compares against a golden file; `UPDATE_GOLDEN=1` rewrites it.
fn check_golden(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, actual).unwrap();
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {name}");
}

fn pool(n: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .unwrap()
}

#[test]
fn small_sweep_csv_golden() {
    let out = harness::run_sweep(&small_config()).unwrap();
    assert_eq!(out.rows.len(), 16);
    check_golden("small_sweep.csv", &format_csv(&out.rows));
}

#[test]
fn small_sweep_figures_golden() {
    let out = harness::run_sweep(&small_config()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let figs = emit_figures(&out.rows, &out.curves, dir.path()).unwrap();
    assert_eq!(figs.len(), 6);
    for f in &figs {
        if let FigureOutcome::Written {
            cell,
            row,
            data,
            plot,
        } = f
        {
            let stem = cell.stem();
            check_golden(
                &format!("{stem}.dat"),
                &std::fs::read_to_string(data).unwrap(),
            );
            check_golden(
                &format!("{stem}.svg"),
                &std::fs::read_to_string(plot).unwrap(),
            );
            assert_eq!(
                &read_curve_data(data).unwrap(),
                out.curves[*row].as_ref().unwrap()
            );
        }
    }
}

#[test]
fn output_independent_of_worker_count() {
    let cfg = small_config();
    let one = pool(1).install(|| harness::run_sweep(&cfg).unwrap());
    let four = pool(4).install(|| harness::run_sweep(&cfg).unwrap());
    assert_eq!(format_csv(&one.rows), format_csv(&four.rows));
    assert_eq!(one.curves, four.curves);
}

#[test]
fn small_betas_give_only_lt_figures() {
    let mut cfg = SweepConfig::default();
    cfg.apply_kv("beta_min = 0.2\nbeta_max = 0.3\nn_beta = 3\nn_a = 11\n")
        .unwrap();
    let out = harness::run_sweep(&cfg).unwrap();
    for row in &out.rows {
        assert_eq!(
            row.label().unwrap().regime.as_str(),
            "b0b1<lambda",
            "{row:?}"
        );
    }
    let dir = tempfile::tempdir().unwrap();
    let figs = emit_figures(&out.rows, &out.curves, dir.path()).unwrap();
    let mut written = 0;
    for f in &figs {
        match f {
            FigureOutcome::Written { cell, .. } => {
                assert!(cell.stem().starts_with("lt_"));
                written += 1;
            }
            FigureOutcome::Skipped { cell } => {
                assert!(!dir.path().join(format!("{}.dat", cell.stem())).exists())
            }
            FigureOutcome::Failed { error, .. } => panic!("{error}"),
        }
    }
    assert!(written >= 1);
}

#[test]
fn degenerate_grid_is_uniform() {
    let mut cfg = SweepConfig::default();
    cfg.apply_kv("beta_min = 3.0\nbeta_max = 3.000001\nn_beta = 2\nn_a = 11\n")
        .unwrap();
    let out = harness::run_sweep(&cfg).unwrap();
    assert_eq!(out.rows.len(), 4);
    let labels: Vec<_> = out.rows.iter().map(|r| r.label().unwrap().regime).collect();
    assert!(labels.iter().all(|&l| l == labels[0]));
}

fn mirrored_subcase(s: Subcase) -> Subcase {
    match s {
        Subcase::B0MuchGreater => Subcase::B0MuchLess,
        Subcase::B0MuchLess => Subcase::B0MuchGreater,
        other => other,
    }
}

fn key(b0: f64, b1: f64) -> (u64, u64) {
    (b0.to_bits(), b1.to_bits())
}

#[test]
fn axis_swap_mirrors_rows() {
    let out = harness::run_sweep(&small_config()).unwrap();
    let by_pair: HashMap<_, &SweepRow> = out
        .rows
        .iter()
        .map(|r| (key(r.beta0, r.beta1), r))
        .collect();
    for row in &out.rows {
        let twin = by_pair[&key(row.beta1, row.beta0)];
        match (&row.status, &twin.status) {
            (
                RowStatus::Classified {
                    label,
                    predicted,
                    numeric,
                    argmin_a,
                    lambda_min,
                    ..
                },
                RowStatus::Classified {
                    label: l2,
                    predicted: p2,
                    numeric: n2,
                    argmin_a: a2,
                    lambda_min: m2,
                    ..
                },
            ) => {
                assert_eq!(label.regime, l2.regime);
                assert_eq!(mirrored_subcase(label.subcase), l2.subcase);
                assert_eq!(predicted.map(Location::mirrored), *p2);
                // Ties on a symmetric curve go left on both sides.
                if row.beta0 != row.beta1 {
                    assert_eq!(numeric.mirrored(), *n2);
                    assert!((argmin_a + a2 - 0.7).abs() < 1e-12);
                }
                assert!((lambda_min - m2).abs() <= 1e-8);
            }
            other => panic!("{other:?}"),
        }
    }
}
