//! Batch verification over a grid (or an explicit list) of Robin pairs.

mod csv_out;
mod figures;
mod limits;
pub mod svg;

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::characteristic::hypothesis_bounds;
use crate::classifier::{
    classify_pair, compare_prediction, numeric_argmin, numeric_location, CaseLabel, Location,
    Regime, Subcase,
};
use crate::eigensolver::{lambda_curve, SpectralWindow};
use crate::{CurvePoint, Params, SolverConfig, SweepConfig};

pub use csv_out::{format_csv, write_csv, CSV_HEADER};
pub use figures::{emit_figures, read_curve_data, write_curve_data, FigureCell, FigureOutcome};
pub use limits::{verify_limits, LimitCheck, LimitReport};

/// Errors of the harness layer.
#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Solver(#[from] crate::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{path}, line {line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },
}

impl HarnessError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

/// Classification outcome of a row.
#[derive(Debug, Clone, PartialEq)]
pub enum RowStatus {
    Classified {
        label: CaseLabel,
        predicted: Option<Location>,
        numeric: Location,
        comparison: Option<bool>,
        argmin_a: f64,
        lambda_min: f64,
        a_star_diag: Option<f64>,
    },
    /// The solver failed on at least one placement.
    Error(String),
}

/// One record of the batch verification.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub c: f64,
    pub kappa: f64,
    pub beta0: f64,
    pub beta1: f64,
    pub status: RowStatus,
    pub hypothesis_ok: bool,
}

impl SweepRow {
    pub fn label(&self) -> Option<CaseLabel> {
        match &self.status {
            RowStatus::Classified { label, .. } => Some(*label),
            RowStatus::Error(_) => None,
        }
    }

    pub fn predicted(&self) -> Option<Location> {
        match &self.status {
            RowStatus::Classified { predicted, .. } => *predicted,
            RowStatus::Error(_) => None,
        }
    }

    pub fn comparison(&self) -> Option<bool> {
        match &self.status {
            RowStatus::Classified { comparison, .. } => *comparison,
            RowStatus::Error(_) => None,
        }
    }
}

/// Rows in input order together with the curves they were computed from.
#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    /// `None` for rows whose curve failed.
    pub curves: Vec<Option<Vec<CurvePoint>>>,
}

/// Evaluates one Robin pair: curve, classification, comparison.
pub fn evaluate_pair(
    c: f64,
    kappa: f64,
    beta0: f64,
    beta1: f64,
    solver: &SolverConfig,
) -> (SweepRow, Option<Vec<CurvePoint>>) {
    let mut row = SweepRow {
        c,
        kappa,
        beta0,
        beta1,
        status: RowStatus::Error(String::new()),
        hypothesis_ok: false,
    };
    let p = match Params::new(c, kappa, beta0, beta1) {
        Ok(p) => p,
        Err(e) => {
            row.status = RowStatus::Error(e.to_string());
            return (row, None);
        }
    };
    row.hypothesis_ok = hypothesis_bounds(&p, SpectralWindow::new(c, kappa)).certified();
    let curve = match lambda_curve(&p, solver) {
        Ok(curve) => curve,
        Err(e) => {
            log::warn!("pair ({beta0}, {beta1}): {e}");
            row.status = RowStatus::Error(e.to_string());
            return (row, None);
        }
    };
    let argmin = numeric_argmin(&curve).expect("curve has n_a >= 2 points");
    let cl = classify_pair(&p, &curve);
    let numeric = numeric_location(argmin.index, curve.len());
    let (predicted, comparison) = match cl.prediction {
        Some(pred) => {
            let cmp = compare_prediction(pred.location, argmin.index, curve.len());
            (Some(pred.location), Some(cmp.matched))
        }
        None => (None, None),
    };
    let a_star_diag = cl.prediction.and_then(|pred| pred.a_star_value);
    row.status = RowStatus::Classified {
        label: cl.label,
        predicted,
        numeric,
        comparison,
        argmin_a: argmin.a,
        lambda_min: argmin.lambda,
        a_star_diag,
    };
    (row, Some(curve))
}

/// Evaluates the given pairs concurrently; output follows input order.
pub fn run_pairs(pairs: &[(f64, f64)], c: f64, kappa: f64, solver: &SolverConfig) -> SweepOutcome {
    let (rows, curves) = pairs
        .par_iter()
        .map(|&(b0, b1)| evaluate_pair(c, kappa, b0, b1, solver))
        .collect::<Vec<_>>()
        .into_iter()
        .unzip();
    SweepOutcome { rows, curves }
}

/// All `(β₀, β₁)` of the configured grid, `β₀`-major.
pub fn grid_pairs(cfg: &SweepConfig) -> Vec<(f64, f64)> {
    let grid = cfg.beta_grid();
    grid.iter()
        .flat_map(|&b0| grid.iter().map(move |&b1| (b0, b1)))
        .collect()
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutcome, HarnessError> {
    let cfg = cfg.clone().validate()?;
    Ok(run_pairs(&grid_pairs(&cfg), cfg.c, cfg.kappa, &cfg.solver))
}

/// Parses a pairs file: one `beta0 beta1` per line; `#` starts a comment.
pub fn parse_pairs(text: &str, path: &Path) -> Result<Vec<(f64, f64)>, HarnessError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| HarnessError::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            msg,
        };
        let fields: Vec<&str> = line
            .split(|ch: char| ch.is_whitespace() || ch == ',')
            .filter(|s| !s.is_empty())
            .collect();
        if fields.len() != 2 {
            return Err(err(format!("expected two numbers, got {line:?}")));
        }
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| err(format!("not a number: {s:?}")))
        };
        out.push((parse(fields[0])?, parse(fields[1])?));
    }
    Ok(out)
}

pub fn read_pairs_file(path: &Path) -> Result<Vec<(f64, f64)>, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    parse_pairs(&text, path)
}

/// The six non-degenerate cells, in figure order.
pub fn figure_cells() -> [FigureCell; 6] {
    use Location::*;
    [
        FigureCell::new(Regime::Gt, Subcase::B0MuchLess, Left),
        FigureCell::new(Regime::Gt, Subcase::SmallDiff, Interior),
        FigureCell::new(Regime::Gt, Subcase::B0MuchGreater, Right),
        FigureCell::new(Regime::Lt, Subcase::B0MuchLess, Left),
        FigureCell::new(Regime::Lt, Subcase::SmallDiff, Either),
        FigureCell::new(Regime::Lt, Subcase::B0MuchGreater, Right),
    ]
}
