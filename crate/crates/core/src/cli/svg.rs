use crate::geometry::Point2;
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SvgStyle {
    /// one stroke per path, full opacity
    Plain,
    /// opacity rising from the first path to the last
    Ramp,
    /// like `Ramp`, with the viewport centered at the origin
    Centered,
}

const SIZE: f64 = 800.0;

/// Renders closed paths into a fixed 800×800 viewport. Output bytes depend only
/// on the input.
pub fn render_svg(paths: &[Vec<Point2>], style: SvgStyle) -> String {
    let pts = paths.iter().flatten();
    let (mut lo, mut hi) = (Point2::new(f64::INFINITY, f64::INFINITY), Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for p in pts.clone() {
        lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    if !lo.x.is_finite() {
        lo = Point2::new(-1.0, -1.0);
        hi = Point2::new(1.0, 1.0);
    }
    let (center, half) = match style {
        SvgStyle::Centered => {
            let r = pts.map(|p| p.x.abs().max(p.y.abs())).fold(0.0, f64::max);
            (Point2::ZERO, if r > 0.0 { r } else { 1.0 })
        }
        _ => {
            let h = 0.5 * (hi.x - lo.x).max(hi.y - lo.y);
            ((lo + hi) * 0.5, if h > 0.0 { h } else { 1.0 })
        }
    };
    let scale = 0.45 * SIZE / half;
    let map = |p: &Point2| (0.5 * SIZE + (p.x - center.x) * scale, 0.5 * SIZE - (p.y - center.y) * scale);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 800 800">"#);
    let _ = writeln!(s, r#"<rect width="800" height="800" fill="white"/>"#);
    if style == SvgStyle::Centered {
        let (cx, cy) = map(&Point2::ZERO);
        let _ = writeln!(s, r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="2" fill="red"/>"#);
    }
    let n = paths.len();
    for (i, path) in paths.iter().enumerate() {
        if path.is_empty() {
            continue;
        }
        let opacity = match style {
            SvgStyle::Plain => 1.0,
            _ => 0.15 + 0.85 * (i + 1) as f64 / n as f64,
        };
        let mut d = String::new();
        for (j, p) in path.iter().enumerate() {
            let (x, y) = map(p);
            let _ = write!(d, "{}{x:.3} {y:.3} ", if j == 0 { "M" } else { "L" });
        }
        d.push('Z');
        let _ = writeln!(s, r#"<path d="{d}" fill="none" stroke="black" stroke-width="1" stroke-opacity="{opacity:.3}"/>"#);
    }
    s.push_str("</svg>\n");
    s
}
