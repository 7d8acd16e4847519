use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::{figure_cells, HarnessError, RowStatus, SweepRow};
use crate::classifier::{numeric_argmin, Location, Regime, Subcase};
use crate::CurvePoint;

/// One of the six non-degenerate (regime, subcase) cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FigureCell {
    pub regime: Regime,
    pub subcase: Subcase,
    pub location: Location,
}

impl FigureCell {
    pub fn new(regime: Regime, subcase: Subcase, location: Location) -> Self {
        FigureCell {
            regime,
            subcase,
            location,
        }
    }

    /// File stem such as `gt_interior`.
    pub fn stem(&self) -> String {
        let regime = match self.regime {
            Regime::Gt => "gt",
            Regime::Lt => "lt",
            Regime::Mixed => "mixed",
            Regime::Degenerate => "degenerate",
        };
        format!("{regime}_{}", self.location.as_str())
    }
}

#[derive(Debug)]
pub enum FigureOutcome {
    Written {
        cell: FigureCell,
        row: usize,
        data: PathBuf,
        plot: PathBuf,
    },
    /// No classified pair falls in the cell.
    Skipped { cell: FigureCell },
    Failed {
        cell: FigureCell,
        error: HarnessError,
    },
}

/// Writes `a λ` lines with round-trip float formatting.
pub fn write_curve_data(
    path: &Path,
    header: &str,
    curve: &[CurvePoint],
) -> Result<(), HarnessError> {
    let mut s = String::new();
    for line in header.lines() {
        let _ = writeln!(s, "# {line}");
    }
    for p in curve {
        let _ = writeln!(s, "{} {}", p.a, p.lambda);
    }
    std::fs::write(path, s).map_err(|e| HarnessError::io(path, e))
}

pub fn read_curve_data(path: &Path) -> Result<Vec<CurvePoint>, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = || HarnessError::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            msg: format!("expected `a lambda`, got {line:?}"),
        };
        let mut it = line.split_whitespace().map(str::parse::<f64>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(lambda)), None) => out.push(CurvePoint { a, lambda }),
            _ => return Err(err()),
        }
    }
    Ok(out)
}

fn emit_cell(
    dir: &Path,
    cell: FigureCell,
    row: &SweepRow,
    curve: &[CurvePoint],
) -> Result<(PathBuf, PathBuf), HarnessError> {
    let stem = cell.stem();
    let data = dir.join(format!("{stem}.dat"));
    let plot = dir.join(format!("{stem}.svg"));
    let title = format!(
        "{}, {}: beta0={:.2}, beta1={:.2}",
        cell.regime.as_str(),
        cell.subcase.as_str(),
        row.beta0,
        row.beta1
    );
    let header = format!("{title}\nc={} kappa={}\na lambda", row.c, row.kappa);
    write_curve_data(&data, &header, curve)?;
    let pts: Vec<(f64, f64)> = curve.iter().map(|p| (p.a, p.lambda)).collect();
    let marker = numeric_argmin(curve).map(|m| m.index);
    let svg = super::svg::line_plot(&pts, marker, &title);
    std::fs::write(&plot, svg).map_err(|e| HarnessError::io(&plot, e))?;
    Ok((data, plot))
}

/// Writes one data file and one plot per populated cell, picking the first
/// classified row of each cell.
pub fn emit_figures(
    rows: &[SweepRow],
    curves: &[Option<Vec<CurvePoint>>],
    fig_dir: &Path,
) -> Result<Vec<FigureOutcome>, HarnessError> {
    std::fs::create_dir_all(fig_dir).map_err(|e| HarnessError::io(fig_dir, e))?;
    let mut out = Vec::new();
    for cell in figure_cells() {
        let found = rows
            .iter()
            .zip(curves)
            .enumerate()
            .find_map(|(i, (row, curve))| match (&row.status, curve) {
                (
                    RowStatus::Classified {
                        label,
                        predicted: Some(_),
                        ..
                    },
                    Some(curve),
                ) if label.regime == cell.regime && label.subcase == cell.subcase => {
                    Some((i, row, curve))
                }
                _ => None,
            });
        match found {
            None => {
                log::info!("no pair in cell {}; figure skipped", cell.stem());
                out.push(FigureOutcome::Skipped { cell });
            }
            Some((i, row, curve)) => match emit_cell(fig_dir, cell, row, curve) {
                Ok((data, plot)) => out.push(FigureOutcome::Written {
                    cell,
                    row: i,
                    data,
                    plot,
                }),
                Err(error) => {
                    log::error!("figure {}: {error}", cell.stem());
                    out.push(FigureOutcome::Failed { cell, error });
                }
            },
        }
    }
    Ok(out)
}
