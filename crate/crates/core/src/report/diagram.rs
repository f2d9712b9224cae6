use std::fmt::Write as _;

use super::ReportError;
use crate::encoding::ResourceEstimate;
use crate::hardware::{classify_point, HardwareProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiagramFormat {
    #[default]
    Svg,
    Csv,
}

impl std::str::FromStr for DiagramFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "svg" => Ok(Self::Svg),
            "csv" => Ok(Self::Csv),
            _ => Err(format!("unknown diagram format `{s}` (expected svg|csv)")),
        }
    }
}

/// One instance on the qubit/depth plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramPoint {
    pub label: String,
    pub n: u64,
    pub d: u64,
    pub feasible: bool,
}

impl DiagramPoint {
    pub fn classified(label: impl Into<String>, n: u64, d: u64, profile: &HardwareProfile) -> Self {
        Self {
            label: label.into(),
            n,
            d,
            feasible: classify_point(n, d, profile).feasible,
        }
    }

    pub fn from_estimate(
        label: impl Into<String>,
        estimate: &ResourceEstimate,
        profile: &HardwareProfile,
    ) -> Self {
        Self::classified(label, estimate.qubits, estimate.depth, profile)
    }
}

pub fn feasibility_diagram(
    points: &[DiagramPoint],
    profile: &HardwareProfile,
    format: DiagramFormat,
) -> Result<String, ReportError> {
    if points.is_empty() {
        return Err(ReportError::EmptyInput);
    }
    Ok(match format {
        DiagramFormat::Csv => render_csv(points, profile),
        DiagramFormat::Svg => render_svg(points, profile),
    })
}

fn render_csv(points: &[DiagramPoint], profile: &HardwareProfile) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["label", "n", "d", "feasible"])
        .expect("in-memory write");
    for p in points {
        w.write_record([
            p.label.as_str(),
            &p.n.to_string(),
            &p.d.to_string(),
            &p.feasible.to_string(),
        ])
        .expect("in-memory write");
    }
    w.write_record([
        "feasibility_point",
        &profile.n_max.to_string(),
        &profile.d_max.to_string(),
        "true",
    ])
    .expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 540.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const FEASIBLE_COLOR: &str = "#2ca02c";
const INFEASIBLE_COLOR: &str = "#d62728";

/// Decade-aligned log10 axis.
struct LogAxis {
    lo: i32,
    hi: i32,
    px_lo: f64,
    px_hi: f64,
}

impl LogAxis {
    fn spanning(values: impl Iterator<Item = u64>, px_lo: f64, px_hi: f64) -> Self {
        let (mut lo, mut hi) = (i32::MAX, i32::MIN);
        for v in values {
            let l = (v.max(1) as f64).log10();
            lo = lo.min(l.floor() as i32);
            hi = hi.max(l.ceil() as i32);
        }
        if hi <= lo {
            hi = lo + 1;
        }
        Self {
            lo,
            hi,
            px_lo,
            px_hi,
        }
    }

    fn map(&self, v: u64) -> f64 {
        let t = ((v.max(1) as f64).log10() - self.lo as f64) / (self.hi - self.lo) as f64;
        self.px_lo + t * (self.px_hi - self.px_lo)
    }

    fn decades(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        (self.lo..=self.hi).map(move |e| {
            let t = (e - self.lo) as f64 / (self.hi - self.lo) as f64;
            (e, self.px_lo + t * (self.px_hi - self.px_lo))
        })
    }
}

fn star_path(cx: f64, cy: f64, outer: f64, inner: f64) -> String {
    let pts: Vec<String> = (0..10)
        .map(|k| {
            let r = if k % 2 == 0 { outer } else { inner };
            let angle = std::f64::consts::PI * (k as f64) / 5.0 - std::f64::consts::FRAC_PI_2;
            format!("{:.2},{:.2}", cx + r * angle.cos(), cy + r * angle.sin())
        })
        .collect();
    pts.join(" ")
}

fn render_svg(points: &[DiagramPoint], profile: &HardwareProfile) -> String {
    let xs = points.iter().map(|p| p.n).chain([profile.n_max]);
    let ys = points.iter().map(|p| p.d).chain([profile.d_max]);
    let x_axis = LogAxis::spanning(xs, LEFT, WIDTH - RIGHT);
    let y_axis = LogAxis::spanning(ys, HEIGHT - BOTTOM, TOP);
    let (x0, x1, y0, y1) = (LEFT, WIDTH - RIGHT, HEIGHT - BOTTOM, TOP);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="22" text-anchor="middle" font-size="14">Feasibility map vs {} (N_max={}, D_max={})</text>"#,
        (x0 + x1) / 2.0,
        escape(&profile.name),
        profile.n_max,
        profile.d_max
    );

    let _ = writeln!(s, r##"<g stroke="#dddddd" stroke-width="1">"##);
    for (_, px) in x_axis.decades() {
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{y0:.2}" x2="{px:.2}" y2="{y1:.2}"/>"#
        );
    }
    for (_, py) in y_axis.decades() {
        let _ = writeln!(
            s,
            r#"<line x1="{x0:.2}" y1="{py:.2}" x2="{x1:.2}" y2="{py:.2}"/>"#
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(
        s,
        r#"<rect x="{x0:.2}" y="{y1:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        x1 - x0,
        y0 - y1
    );
    for (e, px) in x_axis.decades() {
        let _ = writeln!(
            s,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">10<tspan dy="-5" font-size="9">{e}</tspan></text>"#,
            y0 + 18.0
        );
    }
    for (e, py) in y_axis.decades() {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">10<tspan dy="-5" font-size="9">{e}</tspan></text>"#,
            x0 - 8.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">logical qubits N</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">two-qubit-gate depth D</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    let (fx, fy) = (x_axis.map(profile.n_max), y_axis.map(profile.d_max));
    let _ = writeln!(
        s,
        r#"<line class="qubit-line" x1="{fx:.2}" y1="{y0:.2}" x2="{fx:.2}" y2="{y1:.2}" stroke="black" stroke-dasharray="6,4"/>"#
    );
    let _ = writeln!(
        s,
        r#"<line class="gate-line" x1="{x0:.2}" y1="{fy:.2}" x2="{x1:.2}" y2="{fy:.2}" stroke="black" stroke-dasharray="6,4"/>"#
    );

    for p in points {
        let color = if p.feasible {
            FEASIBLE_COLOR
        } else {
            INFEASIBLE_COLOR
        };
        let _ = writeln!(
            s,
            r#"<circle class="{}" cx="{:.2}" cy="{:.2}" r="4" fill="{color}" fill-opacity="0.8"><title>{} (N={}, D={})</title></circle>"#,
            if p.feasible { "feasible" } else { "infeasible" },
            x_axis.map(p.n),
            y_axis.map(p.d),
            escape(&p.label),
            p.n,
            p.d
        );
    }

    let _ = writeln!(
        s,
        r#"<polygon class="feasibility-point" points="{}" fill="black"><title>feasibility point ({}, {})</title></polygon>"#,
        star_path(fx, fy, 9.0, 4.0),
        profile.n_max,
        profile.d_max
    );
    let _ = writeln!(s, "</svg>");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile() -> HardwareProfile {
        HardwareProfile::new("gen-next-high", 1200, 10_000_000)
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(
            feasibility_diagram(&[], &profile(), DiagramFormat::Svg),
            Err(ReportError::EmptyInput)
        ));
    }

    #[test]
    fn csv_has_trailer_row() {
        let p = profile();
        let pts = [
            DiagramPoint::classified("a", 10, 50, &p),
            DiagramPoint::classified("b", 7685, 38_425, &p),
        ];
        let csv = feasibility_diagram(&pts, &p, DiagramFormat::Csv).unwrap();
        assert_eq!(
            csv,
            "label,n,d,feasible\na,10,50,true\nb,7685,38425,false\nfeasibility_point,1200,10000000,true\n"
        );
    }

    #[test]
    fn boundary_point_is_feasible() {
        let p = profile();
        let pt = DiagramPoint::classified("edge", 1200, 10_000_000, &p);
        assert!(pt.feasible);
        let svg = feasibility_diagram(&[pt], &p, DiagramFormat::Svg).unwrap();
        assert!(svg.contains(r#"class="feasible""#));
    }

    #[test]
    fn svg_structure() {
        let p = profile();
        let pts = [DiagramPoint::classified("x<y", 7685, 38_425, &p)];
        let svg = feasibility_diagram(&pts, &p, DiagramFormat::Svg).unwrap();
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("stroke-dasharray").count(), 2);
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert!(svg.contains("x&lt;y"));
        assert!(svg.contains(INFEASIBLE_COLOR));
    }

    #[test]
    fn log_axis_maps_decades() {
        let axis = LogAxis::spanning([100, 5000].into_iter(), 0.0, 100.0);
        assert_eq!((axis.lo, axis.hi), (2, 4));
        assert_eq!(axis.map(100), 0.0);
        assert_eq!(axis.map(10_000), 100.0);
        assert!((axis.map(1000) - 50.0).abs() < 1e-9);
        let flat = LogAxis::spanning([1000].into_iter(), 0.0, 1.0);
        assert_eq!((flat.lo, flat.hi), (3, 4));
    }
}
