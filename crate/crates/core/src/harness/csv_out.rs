use std::path::Path;

use super::{HarnessError, RowStatus, SweepRow};

pub const CSV_HEADER: [&str; 13] = [
    "c",
    "kappa",
    "beta0",
    "beta1",
    "regime",
    "subcase",
    "predicted",
    "numeric",
    "comparison",
    "argmin_a",
    "lambda_min",
    "hypothesis_ok",
    "a_star_diag",
];

/// `x` rounded to `sig` significant digits, in positional notation.
pub(crate) fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{:.*}", sig.saturating_sub(1), x);
    }
    // The exponent of the rounded value, so 9.9999996 gives "10.0000".
    let sci = format!("{:.*e}", sig - 1, x);
    let exp: i32 = sci.rsplit('e').next().unwrap().parse().unwrap();
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

fn record(row: &SweepRow) -> [String; 13] {
    let mut out: [String; 13] = Default::default();
    out[0] = format!("{:.3}", row.c);
    out[1] = format!("{:.3}", row.kappa);
    out[2] = format!("{:.2}", row.beta0);
    out[3] = format!("{:.2}", row.beta1);
    out[11] = row.hypothesis_ok.to_string();
    match &row.status {
        RowStatus::Classified {
            label,
            predicted,
            numeric,
            comparison,
            argmin_a,
            lambda_min,
            a_star_diag,
        } => {
            out[4] = label.regime.as_str().to_string();
            out[5] = label.subcase.as_str().to_string();
            out[6] = predicted
                .map(|l| l.as_str().to_string())
                .unwrap_or_default();
            out[7] = numeric.as_str().to_string();
            out[8] = comparison.map(|b| b.to_string()).unwrap_or_default();
            out[9] = format!("{argmin_a:.3}");
            out[10] = fmt_sig(*lambda_min, 6);
            out[12] = a_star_diag.map(|v| format!("{v:.6}")).unwrap_or_default();
        }
        RowStatus::Error(_) => {
            out[4] = "error".to_string();
        }
    }
    out
}

fn write_rows<W: std::io::Write>(rows: &[SweepRow], sink: W) -> csv::Result<W> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(record(row))?;
    }
    w.into_inner().map_err(|e| e.into_error().into())
}

/// The CSV text for `rows`.
pub fn format_csv(rows: &[SweepRow]) -> String {
    let bytes = write_rows(rows, Vec::new()).expect("writing to memory");
    String::from_utf8(bytes).expect("CSV fields are UTF-8")
}

pub fn write_csv(rows: &[SweepRow], path: &Path) -> Result<(), HarnessError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    std::fs::write(path, format_csv(rows)).map_err(|e| HarnessError::io(path, e))
}
