//! Static SVG rendering of a BSADF sequence against its critical
//! sequence, with detected episodes shaded.

use std::fmt::Write as _;

use crate::datestamp::EpisodeSet;
use crate::month::MonthIndex;

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 420.0;
const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 50.0;

/// Renders the date-stamping picture: statistic and critical sequences as
/// polylines, episodes as shaded bands. `first_obs_month` anchors the
/// 1-based observation indices in `bsadf` to calendar months.
pub fn render_bsadf_svg(
    title: &str,
    bsadf: &[(usize, f64)],
    cv_seq: &[f64],
    episodes: &EpisodeSet,
    first_obs_month: MonthIndex,
) -> String {
    let inner_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let inner_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;

    let xs: Vec<usize> = bsadf.iter().map(|&(i, _)| i).collect();
    let x_lo = *xs.first().unwrap_or(&1) as f64;
    let x_hi = *xs.last().unwrap_or(&2) as f64;
    let mut y_lo = f64::INFINITY;
    let mut y_hi = f64::NEG_INFINITY;
    for &(_, v) in bsadf {
        y_lo = y_lo.min(v);
        y_hi = y_hi.max(v);
    }
    for &v in cv_seq {
        y_lo = y_lo.min(v);
        y_hi = y_hi.max(v);
    }
    if !y_lo.is_finite() || !y_hi.is_finite() {
        y_lo = -1.0;
        y_hi = 1.0;
    }
    let pad = 0.05 * (y_hi - y_lo).max(1e-9);
    y_lo -= pad;
    y_hi += pad;

    let x_of = |obs: f64| MARGIN_LEFT + (obs - x_lo) / (x_hi - x_lo).max(1.0) * inner_w;
    let y_of = |v: f64| MARGIN_TOP + (y_hi - v) / (y_hi - y_lo) * inner_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="20" font-family="sans-serif" font-size="14" font-weight="bold">{}</text>"#,
        MARGIN_LEFT,
        xml_escape(title)
    );

    // episode bands first, so the curves draw on top
    for ep in &episodes.episodes {
        let x0 = x_of(ep.start_index as f64);
        let x1 = x_of(ep.end_index as f64);
        let _ = writeln!(
            svg,
            r##"<rect x="{:.2}" y="{MARGIN_TOP}" width="{:.2}" height="{:.2}" fill="#f4c7c3" opacity="0.6"/>"##,
            x0,
            (x1 - x0).max(1.5),
            inner_h
        );
    }

    // axes
    let _ = writeln!(
        svg,
        r#"<line x1="{MARGIN_LEFT}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#,
        MARGIN_TOP + inner_h,
        MARGIN_LEFT + inner_w,
        MARGIN_TOP + inner_h
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" y2="{:.2}" stroke="black"/>"#,
        MARGIN_TOP + inner_h
    );

    // y ticks
    for tick in 0..=4 {
        let v = y_lo + (y_hi - y_lo) * tick as f64 / 4.0;
        let y = y_of(v);
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{MARGIN_LEFT}" y2="{y:.2}" stroke="black"/>"#,
            MARGIN_LEFT - 4.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{v:.2}</text>"#,
            MARGIN_LEFT - 8.0,
            y + 4.0
        );
    }

    // x ticks: yearly or sparser depending on span
    let span = (x_hi - x_lo) as usize;
    let step = (span / 8).max(1);
    let mut obs = x_lo as usize;
    while obs <= x_hi as usize {
        let x = x_of(obs as f64);
        let label = first_obs_month.plus(obs as i64 - 1);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#,
            MARGIN_TOP + inner_h,
            MARGIN_TOP + inner_h + 4.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{label}</text>"#,
            MARGIN_TOP + inner_h + 18.0
        );
        obs += step;
    }

    let polyline = |points: &[(f64, f64)], color: &str, dash: &str| -> String {
        let mut path = String::new();
        for (i, &(x, y)) in points.iter().enumerate() {
            if i > 0 {
                path.push(' ');
            }
            let _ = write!(path, "{x:.2},{y:.2}");
        }
        format!(
            r#"<polyline points="{path}" fill="none" stroke="{color}" stroke-width="1.5"{dash}/>"#
        )
    };

    let stat_points: Vec<(f64, f64)> = bsadf
        .iter()
        .map(|&(i, v)| (x_of(i as f64), y_of(v)))
        .collect();
    let cv_points: Vec<(f64, f64)> = bsadf
        .iter()
        .zip(cv_seq)
        .map(|(&(i, _), &cv)| (x_of(i as f64), y_of(cv)))
        .collect();
    let _ = writeln!(svg, "{}", polyline(&stat_points, "#1f77b4", ""));
    let _ = writeln!(
        svg,
        "{}",
        polyline(&cv_points, "#d62728", r#" stroke-dasharray="6,3""#)
    );

    // legend
    let lx = MARGIN_LEFT + inner_w - 220.0;
    let _ = writeln!(
        svg,
        r##"<line x1="{lx}" y1="40" x2="{}" y2="40" stroke="#1f77b4" stroke-width="1.5"/><text x="{}" y="44" font-family="sans-serif" font-size="11">BSADF</text>"##,
        lx + 24.0,
        lx + 30.0
    );
    let _ = writeln!(
        svg,
        r##"<line x1="{lx}" y1="56" x2="{}" y2="56" stroke="#d62728" stroke-width="1.5" stroke-dasharray="6,3"/><text x="{}" y="60" font-family="sans-serif" font-size="11">critical sequence</text>"##,
        lx + 24.0,
        lx + 30.0
    );

    svg.push_str("</svg>\n");
    svg
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
