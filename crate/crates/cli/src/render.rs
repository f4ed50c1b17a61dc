//! SVG figures: the weighted grid, a route over it, a tour and its
//! convergence curve.

use std::fmt::Write;

use hexroute_core::{EnvModel, GeoPoint, Route};

const WIDTH: f64 = 1000.0;

/// Geographic extent mapped onto the drawing area, north up.
struct Frame {
    min_lon: f64,
    max_lat: f64,
    scale: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn around(points: impl Iterator<Item = GeoPoint>) -> Frame {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            x0 = x0.min(p.lon);
            x1 = x1.max(p.lon);
            y0 = y0.min(p.lat);
            y1 = y1.max(p.lat);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-12);
        let scale = WIDTH / span;
        Frame {
            min_lon: x0,
            max_lat: y1,
            scale,
            width: (x1 - x0) * scale,
            height: (y1 - y0) * scale,
        }
    }

    fn xy(&self, p: GeoPoint) -> (f64, f64) {
        ((p.lon - self.min_lon) * self.scale, (self.max_lat - p.lat) * self.scale)
    }

    fn points(&self, ps: &[GeoPoint]) -> String {
        let mut out = String::new();
        for (i, p) in ps.iter().enumerate() {
            let (x, y) = self.xy(*p);
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{x:.2},{y:.2}");
        }
        out
    }

    fn open(&self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.2} {h:.2}\">\n",
            w = self.width,
            h = self.height
        )
    }
}

fn model_frame(model: &EnvModel) -> Frame {
    let corners = [
        (0, 0),
        (model.n_cols() - 1, 0),
        (0, model.n_rows() - 1),
        (model.n_cols() - 1, model.n_rows() - 1),
        (0, 1.min(model.n_rows() - 1)),
    ];
    Frame::around(corners.iter().flat_map(|&(c, r)| {
        model
            .lattice()
            .outline(hexroute_core::OffsetCoord::new(c as i32, r as i32))
    }))
}

/// Grey level for a navigable cell; weight 1 is white, heavier cells darker.
fn shade(weight: f64, max_weight: f64) -> String {
    let t = if max_weight > 1.0 {
        (weight - 1.0) / (max_weight - 1.0)
    } else {
        0.0
    };
    let level = (255.0 - 150.0 * t).round() as u8;
    format!("#{level:02x}{level:02x}ff")
}

fn grid_layer(model: &EnvModel, frame: &Frame, out: &mut String) {
    let max_weight = model.cells().iter().filter_map(|c| c.weight).fold(1.0, f64::max);
    out.push_str("<g stroke=\"#888\" stroke-width=\"0.2\">\n");
    for (idx, cell) in model.cells().iter().enumerate() {
        let o = model.coord(idx);
        let fill = match cell.weight {
            Some(w) if cell.navigable => shade(w, max_weight),
            _ => "#000".to_string(),
        };
        let ring = frame.points(&model.lattice().outline(o));
        let _ = writeln!(out, "<polygon points=\"{ring}\" fill=\"{fill}\"/>");
    }
    out.push_str("</g>\n");
}

fn marker(frame: &Frame, p: GeoPoint, color: &str, label: &str, out: &mut String) {
    let (x, y) = frame.xy(p);
    let _ = writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"5\" fill=\"{color}\"/>");
    if !label.is_empty() {
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" font-family=\"sans-serif\">{label}</text>",
            x + 7.0,
            y - 7.0
        );
    }
}

fn route_layer(frame: &Frame, route: &Route, color: &str, out: &mut String) {
    let line = frame.points(&route.positions());
    let _ = writeln!(
        out,
        "<polyline points=\"{line}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>"
    );
    for w in &route.waypoints {
        let (x, y) = frame.xy(w.position);
        let _ = writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"2.5\" fill=\"{color}\"/>");
        if let Some(turn) = &w.turn {
            let (cx, cy) = frame.xy(turn.center);
            let r = turn.radius / hexroute_core::NMI_PER_DEGREE * frame.scale;
            let _ = writeln!(
                out,
                "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{r:.2}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"0.6\" stroke-dasharray=\"3 2\"/>"
            );
        }
    }
}

pub fn model_svg(model: &EnvModel) -> String {
    let frame = model_frame(model);
    let mut out = frame.open();
    grid_layer(model, &frame, &mut out);
    out.push_str("</svg>\n");
    out
}

/// The grid with the raw cell path and the smoothed route drawn on top.
pub fn plan_svg(model: &EnvModel, raw: &[GeoPoint], route: &Route) -> String {
    let frame = model_frame(model);
    let mut out = frame.open();
    grid_layer(model, &frame, &mut out);
    let line = frame.points(raw);
    let _ = writeln!(
        out,
        "<polyline points=\"{line}\" fill=\"none\" stroke=\"#e08000\" stroke-width=\"1\" stroke-dasharray=\"4 2\"/>"
    );
    route_layer(&frame, route, "#d00000", &mut out);
    if let (Some(first), Some(last)) = (route.waypoints.first(), route.waypoints.last()) {
        marker(&frame, first.position, "#008000", "start", &mut out);
        marker(&frame, last.position, "#800080", "goal", &mut out);
    }
    out.push_str("</svg>\n");
    out
}

/// The grid, every leg of the tour, and the labelled task points.
pub fn tour_svg(model: &EnvModel, legs: &[&Route], points: &[GeoPoint], labels: &[String]) -> String {
    let frame = model_frame(model);
    let mut out = frame.open();
    grid_layer(model, &frame, &mut out);
    for leg in legs {
        route_layer(&frame, leg, "#d00000", &mut out);
    }
    for (p, label) in points.iter().zip(labels) {
        marker(&frame, *p, "#008000", label, &mut out);
    }
    out.push_str("</svg>\n");
    out
}

/// Best tour length per iteration.
pub fn convergence_svg(history: &[f64]) -> String {
    let (w, h, pad) = (800.0, 400.0, 50.0);
    let mut out =
        format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n");
    let _ = writeln!(
        out,
        "<rect x=\"{pad}\" y=\"{pad}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#000\"/>",
        w - 2.0 * pad,
        h - 2.0 * pad
    );
    if let (Some(lo), Some(hi)) = (
        history.iter().copied().reduce(f64::min),
        history.iter().copied().reduce(f64::max),
    ) {
        let span = (hi - lo).max(1e-9);
        let n = (history.len() - 1).max(1) as f64;
        let mut line = String::new();
        for (i, v) in history.iter().enumerate() {
            let x = pad + (w - 2.0 * pad) * i as f64 / n;
            let y = pad + (h - 2.0 * pad) * (hi - v) / span;
            let _ = write!(line, "{x:.2},{y:.2} ");
        }
        let _ = writeln!(
            out,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#0040c0\" stroke-width=\"2\"/>",
            line.trim_end()
        );
        let text = |out: &mut String, x: f64, y: f64, s: String| {
            let _ = writeln!(
                out,
                "<text x=\"{x:.1}\" y=\"{y:.1}\" font-size=\"12\" font-family=\"sans-serif\">{s}</text>"
            );
        };
        text(&mut out, 5.0, pad + 4.0, format!("{hi:.2}"));
        text(&mut out, 5.0, h - pad + 4.0, format!("{lo:.2}"));
        text(&mut out, w - pad - 30.0, h - pad + 18.0, format!("{}", history.len()));
        text(&mut out, w / 2.0 - 40.0, h - 10.0, "iteration".into());
    }
    out.push_str("</svg>\n");
    out
}
