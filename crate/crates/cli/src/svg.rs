//! Hand-written SVG 1.1 for the median curve and the quadrant-count scan.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use quarter_median::solver::CurvePoint;
use quarter_median::Point2;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 48.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn header(out: &mut String, title: &str, manifest_json: &str, style: &str) {
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(out, "<title>{}</title>", escape(title)).unwrap();
    writeln!(out, "<metadata>{}</metadata>", escape(manifest_json)).unwrap();
    writeln!(out, "<style>{style}</style>").unwrap();
    writeln!(out, r#"<rect class="frame" x="0" y="0" width="{WIDTH}" height="{HEIGHT}"/>"#).unwrap();
}

/// Affine map from a data box onto the plot area, `y` pointing up.
struct Viewport {
    min: Point2,
    scale: Point2,
}

impl Viewport {
    fn new(min: Point2, max: Point2, equal_aspect: bool) -> Self {
        let mut span = Point2::new(max.x - min.x, max.y - min.y);
        let mut min = min;
        let pad = |lo: &mut f64, span: &mut f64| {
            if *span <= 0.0 {
                let w = if lo.abs() > 0.0 { lo.abs() * 0.1 } else { 1.0 };
                *lo -= w / 2.0;
                *span = w;
            }
        };
        pad(&mut min.x, &mut span.x);
        pad(&mut min.y, &mut span.y);
        let (aw, ah) = (WIDTH - 2.0 * MARGIN, HEIGHT - 2.0 * MARGIN);
        let mut scale = Point2::new(aw / span.x, ah / span.y);
        if equal_aspect {
            let s = scale.x.min(scale.y);
            min.x -= (aw / s - span.x) / 2.0;
            min.y -= (ah / s - span.y) / 2.0;
            scale = Point2::new(s, s);
        }
        Viewport { min, scale }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        (
            MARGIN + (p.x - self.min.x) * self.scale.x,
            HEIGHT - MARGIN - (p.y - self.min.y) * self.scale.y,
        )
    }
}

fn coord(v: f64) -> String {
    let r = (v * 1000.0).round() / 1000.0;
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r}")
    }
}

fn move_to(d: &mut String, (x, y): (f64, f64)) {
    write!(d, "M{} {}", coord(x), coord(y)).unwrap();
}

fn line_to(d: &mut String, (x, y): (f64, f64)) {
    write!(d, "L{} {}", coord(x), coord(y)).unwrap();
}

fn bounds(points: impl Iterator<Item = Point2>) -> (Point2, Point2) {
    points.fold(
        (Point2::new(f64::INFINITY, f64::INFINITY), Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY)),
        |(lo, hi), p| (Point2::new(lo.x.min(p.x), lo.y.min(p.y)), Point2::new(hi.x.max(p.x), hi.y.max(p.y))),
    )
}

/// Median curve over the data points. Segments joining two valid grid
/// samples are drawn with class `valid`, all others with class `invalid`.
pub fn curve(data: &[Point2], curve: &[CurvePoint], manifest_json: &str) -> String {
    let (lo, hi) = bounds(data.iter().copied().chain(curve.iter().map(|c| c.point)));
    let vp = Viewport::new(lo, hi, true);
    let mut out = String::new();
    header(
        &mut out,
        "Median curve",
        manifest_json,
        ".frame{fill:white;stroke:none}.data{stroke:#555;stroke-width:3;stroke-linecap:round;fill:none}\
         .invalid{stroke:#1f77b4;stroke-width:1.5;fill:none}.valid{stroke:#d62728;stroke-width:3;fill:none}\
         .start{fill:#1f77b4}",
    );

    let mut d = String::new();
    for &p in data {
        let (x, y) = vp.map(p);
        write!(d, "M{} {}h0", coord(x), coord(y)).unwrap();
    }
    if !d.is_empty() {
        writeln!(out, r#"<path class="data" d="{d}"/>"#).unwrap();
    }

    let mut valid = String::new();
    let mut invalid = String::new();
    let mut prev_class: Option<bool> = None;
    for w in curve.windows(2) {
        let class = w[0].valid && w[1].valid;
        let d = if class { &mut valid } else { &mut invalid };
        if prev_class != Some(class) {
            move_to(d, vp.map(w[0].point));
        }
        line_to(d, vp.map(w[1].point));
        prev_class = Some(class);
    }
    if curve.len() == 1 || curve.windows(2).all(|w| w[0].point == w[1].point) {
        // A degenerate curve is a single point; draw it as a dot.
        if let Some(c) = curve.first() {
            let d = if c.valid { &mut valid } else { &mut invalid };
            d.clear();
            move_to(d, vp.map(c.point));
            d.push_str("h0");
        }
    }
    if !invalid.is_empty() {
        writeln!(out, r#"<path class="invalid" d="{invalid}"/>"#).unwrap();
    }
    if !valid.is_empty() {
        writeln!(out, r#"<path class="valid" stroke-linecap="round" d="{valid}"/>"#).unwrap();
    }
    if let Some(c) = curve.first() {
        let (x, y) = vp.map(c.point);
        writeln!(out, r#"<circle class="start" cx="{}" cy="{}" r="3"/>"#, coord(x), coord(y)).unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// Step plot of the open upper-right count against `α ∈ [0, π/2)` with a
/// horizontal reference line at `n/4`.
pub fn scan(counts: &[(f64, f64)], observations: usize, manifest_json: &str) -> String {
    let quarter = observations as f64 / 4.0;
    let top = counts.iter().map(|c| c.1).fold(quarter, f64::max).max(1.0);
    let vp = Viewport::new(Point2::new(0.0, 0.0), Point2::new(FRAC_PI_2, top), false);
    let mut out = String::new();
    header(
        &mut out,
        "Open upper-right quadrant count",
        manifest_json,
        ".frame{fill:white;stroke:none}.axis{stroke:black;stroke-width:1;fill:none}\
         .count{stroke:#1f77b4;stroke-width:1.5;fill:none}.reference{stroke:#d62728;stroke-width:1;stroke-dasharray:6 4;fill:none}\
         text{font-family:sans-serif;font-size:12px}",
    );

    let (x0, y0) = vp.map(Point2::new(0.0, 0.0));
    let (x1, y1) = vp.map(Point2::new(FRAC_PI_2, top));
    writeln!(
        out,
        r#"<path class="axis" d="M{} {}L{} {}M{} {}L{} {}"/>"#,
        coord(x0),
        coord(y1),
        coord(x0),
        coord(y0),
        coord(x0),
        coord(y0),
        coord(x1),
        coord(y0)
    )
    .unwrap();
    writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">0</text>"#, coord(x0), coord(y0 + 16.0)).unwrap();
    writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">π/2</text>"#, coord(x1), coord(y0 + 16.0)).unwrap();
    writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">α</text>"#, coord((x0 + x1) / 2.0), coord(y0 + 32.0)).unwrap();
    writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, coord(x0 - 6.0), coord(y1 + 4.0), top).unwrap();

    let mut d = String::new();
    for (i, &(alpha, count)) in counts.iter().enumerate() {
        let next = counts.get(i + 1).map_or(FRAC_PI_2, |c| c.0);
        let a = vp.map(Point2::new(alpha, count));
        if i == 0 {
            move_to(&mut d, a);
        } else {
            line_to(&mut d, a);
        }
        line_to(&mut d, vp.map(Point2::new(next, count)));
    }
    if !d.is_empty() {
        writeln!(out, r#"<path class="count" d="{d}"/>"#).unwrap();
    }
    let (rx0, ry) = vp.map(Point2::new(0.0, quarter));
    let (rx1, _) = vp.map(Point2::new(FRAC_PI_2, quarter));
    writeln!(out, r#"<path class="reference" d="M{} {}L{} {}"/>"#, coord(rx0), coord(ry), coord(rx1), coord(ry)).unwrap();
    writeln!(out, r#"<text x="{}" y="{}">n/4 = {quarter}</text>"#, coord(rx1 + 4.0 - 60.0), coord(ry - 6.0)).unwrap();
    out.push_str("</svg>\n");
    out
}
