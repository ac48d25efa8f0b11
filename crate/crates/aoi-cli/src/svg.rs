//! Minimal two-series line chart. The contract that matters downstream:
//! well-formed standalone XML, exactly two `<polyline>` series (classes
//! `series-oma` and `series-noma`), axis tick labels, a legend, and an
//! optional crossover marker (`<circle class="crossover">`). Byte-stable
//! for identical inputs.

use std::fmt::Write as _;

use crate::json::fmt_sig;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 60.0;
const TICKS: usize = 5;

pub struct ChartSpec<'a> {
    pub x_label: &'a str,
    pub y_label: &'a str,
    /// Grid values, ascending.
    pub x: &'a [f64],
    /// Total age per grid point, one entry per `x`, for each scheme.
    pub oma: &'a [f64],
    pub noma: &'a [f64],
    /// Plot x on a log₁₀ scale (all x must be positive).
    pub log_x: bool,
    /// Marker position in data coordinates, typically the crossover point.
    pub crossover: Option<(f64, f64)>,
}

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn coordinate(&self, v: f64) -> f64 {
        let f = |x: f64| if self.log { x.log10() } else { x };
        let span = f(self.hi) - f(self.lo);
        if span == 0.0 {
            0.5
        } else {
            (f(v) - f(self.lo)) / span
        }
    }

    fn tick_value(&self, i: usize) -> f64 {
        let t = i as f64 / (TICKS - 1) as f64;
        if self.log {
            10f64.powf(self.lo.log10() + t * (self.hi.log10() - self.lo.log10()))
        } else {
            self.lo + t * (self.hi - self.lo)
        }
    }
}

pub fn render_chart(spec: &ChartSpec) -> String {
    assert_eq!(spec.x.len(), spec.oma.len());
    assert_eq!(spec.x.len(), spec.noma.len());
    assert!(spec.x.len() >= 2, "a line chart needs at least two points");

    let x_axis = Axis {
        lo: spec.x[0],
        hi: spec.x[spec.x.len() - 1],
        log: spec.log_x,
    };
    let mut y_lo = f64::INFINITY;
    let mut y_hi = f64::NEG_INFINITY;
    for v in spec.oma.iter().chain(spec.noma) {
        y_lo = y_lo.min(*v);
        y_hi = y_hi.max(*v);
    }
    let pad = if y_hi > y_lo { 0.05 * (y_hi - y_lo) } else { 1.0 };
    let y_axis = Axis {
        lo: y_lo - pad,
        hi: y_hi + pad,
        log: false,
    };

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |v: f64| MARGIN_LEFT + plot_w * x_axis.coordinate(v);
    let py = |v: f64| MARGIN_TOP + plot_h * (1.0 - y_axis.coordinate(v));

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);

    // Axes.
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    let _ = writeln!(
        svg,
        r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black" stroke-width="1"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black" stroke-width="1"/>"#
    );

    // Ticks and labels.
    for i in 0..TICKS {
        let vx = x_axis.tick_value(i);
        let cx = px(vx);
        let _ = writeln!(
            svg,
            r#"<line x1="{cx:.2}" y1="{y0}" x2="{cx:.2}" y2="{}" stroke="black" stroke-width="1"/>"#,
            y0 + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{cx:.2}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">{}</text>"#,
            y0 + 20.0,
            fmt_sig(vx, 4)
        );

        let vy = y_axis.tick_value(i);
        let cy = py(vy);
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="{cy:.2}" x2="{x0}" y2="{cy:.2}" stroke="black" stroke-width="1"/>"#,
            x0 - 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="end" font-family="sans-serif" font-size="12">{}</text>"#,
            x0 - 9.0,
            cy + 4.0,
            fmt_sig(vy, 4)
        );
    }

    // Axis titles.
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 14.0,
        escape(spec.x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="14" transform="rotate(-90 18 {:.2})">{}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        escape(spec.y_label)
    );

    // The two series.
    for (class, color, data) in [
        ("series-oma", "#1f77b4", spec.oma),
        ("series-noma", "#d62728", spec.noma),
    ] {
        let mut points = String::new();
        for (v, y) in spec.x.iter().zip(data) {
            let _ = write!(points, "{:.2},{:.2} ", px(*v), py(*y));
        }
        let _ = writeln!(
            svg,
            r#"<polyline class="{class}" fill="none" stroke="{color}" stroke-width="1.8" points="{}"/>"#,
            points.trim_end()
        );
    }

    if let Some((cx, cy)) = spec.crossover {
        let _ = writeln!(
            svg,
            r#"<circle class="crossover" cx="{:.2}" cy="{:.2}" r="4.5" fill="none" stroke="black" stroke-width="1.5"/>"#,
            px(cx),
            py(cy)
        );
    }

    // Legend, top right of the plot area.
    let lx = x1 - 130.0;
    for (i, (label, color)) in [("oma", "#1f77b4"), ("noma", "#d62728")].iter().enumerate() {
        let ly = y1 + 16.0 + 18.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="1.8"/>"#,
            lx + 26.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13">{label}</text>"#,
            lx + 32.0,
            ly + 4.0
        );
    }

    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec<'a>(x: &'a [f64], oma: &'a [f64], noma: &'a [f64]) -> ChartSpec<'a> {
        ChartSpec {
            x_label: "alpha",
            y_label: "total average age",
            x,
            oma,
            noma,
            log_x: false,
            crossover: Some((1.5, 2.25)),
        }
    }

    #[test]
    fn chart_has_exactly_two_series_and_a_marker() {
        let x = [1.0, 1.5, 2.0];
        let oma = [2.5, 2.5, 2.5];
        let noma = [3.0, 2.25, 1.8];
        let svg = render_chart(&spec(&x, &oma, &noma));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches(r#"class="series-oma""#).count(), 1);
        assert_eq!(svg.matches(r#"class="series-noma""#).count(), 1);
        assert_eq!(svg.matches(r#"class="crossover""#).count(), 1);
        assert!(svg.contains("alpha") && svg.contains("total average age"));
        assert!(svg.starts_with("<svg ") && svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn log_scale_ticks_land_on_decades() {
        let x = [1e-3, 1e-2, 1e-1, 1.0, 10.0];
        let y = [5.0, 4.0, 3.0, 2.0, 1.0];
        let svg = render_chart(&ChartSpec {
            log_x: true,
            crossover: None,
            ..spec(&x, &y, &y)
        });
        for label in [">0.001<", ">0.01<", ">0.1<", ">1<", ">10<"] {
            assert!(svg.contains(label), "missing tick {label}");
        }
        assert_eq!(svg.matches(r#"class="crossover""#).count(), 0);
    }

    #[test]
    fn byte_stable() {
        let x = [1.0, 2.0];
        let a = [1.0, 2.0];
        let b = [2.0, 1.0];
        assert_eq!(render_chart(&spec(&x, &a, &b)), render_chart(&spec(&x, &a, &b)));
    }
}
