//! Minimal standalone SVG line plots.

use std::fmt::Write;

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 320.0;
const MARGIN: f64 = 48.0;

/// Line plot of `(x, y)` with the point at `marker` circled.
pub fn line_plot(points: &[(f64, f64)], marker: Option<usize>, title: &str) -> String {
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if points.is_empty() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 - x0 <= 0.0 {
        x1 = x0 + 1.0;
    }
    if y1 - y0 <= 0.0 {
        let pad = y0.abs().max(1.0) * 1e-3;
        y0 -= pad;
        y1 += pad;
    }
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="20" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        s,
        r#"<path d="M{left:.1} {top:.1} L{left:.1} {bottom:.1} L{right:.1} {bottom:.1}" fill="none" stroke="black"/>"#
    );
    let label = |s: &mut String, x: f64, y: f64, anchor: &str, text: String| {
        let _ = writeln!(
            s,
            r#"<text x="{x:.1}" y="{y:.1}" font-family="sans-serif" font-size="11" text-anchor="{anchor}">{text}</text>"#
        );
    };
    label(&mut s, left, bottom + 16.0, "middle", format!("{x0:.3}"));
    label(&mut s, right, bottom + 16.0, "middle", format!("{x1:.3}"));
    label(
        &mut s,
        (left + right) / 2.0,
        bottom + 32.0,
        "middle",
        "a".to_string(),
    );
    label(&mut s, left - 4.0, bottom, "end", format!("{y0:.4}"));
    label(&mut s, left - 4.0, top + 4.0, "end", format!("{y1:.4}"));
    label(
        &mut s,
        12.0,
        (top + bottom) / 2.0,
        "middle",
        "&#955;".to_string(),
    );

    let mut pts = String::new();
    for (i, &(x, y)) in points.iter().enumerate() {
        if i > 0 {
            pts.push(' ');
        }
        let _ = write!(pts, "{:.2},{:.2}", px(x), py(y));
    }
    let _ = writeln!(
        s,
        r#"<polyline points="{pts}" fill="none" stroke="steelblue" stroke-width="1.5"/>"#
    );
    if let Some(&(x, y)) = marker.and_then(|i| points.get(i)) {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="none" stroke="crimson" stroke-width="1.5"/>"#,
            px(x),
            py(y)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plot_has_one_polyline_and_marker() {
        let pts = [(0.0, 2.0), (0.5, 1.0), (1.0, 3.0)];
        let svg = line_plot(&pts, Some(1), "b0>>b1 & more");
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains("b0&gt;&gt;b1 &amp; more"));
        // Minimum sits on the bottom axis.
        assert!(svg.contains(r#"cx="240.00" cy="272.00""#));
    }

    #[test]
    fn flat_and_empty_inputs_are_finite() {
        let svg = line_plot(&[(0.0, 1.0), (1.0, 1.0)], None, "flat");
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
        let svg = line_plot(&[], Some(0), "empty");
        assert!(!svg.contains("<circle"));
    }
}
