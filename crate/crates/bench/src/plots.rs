//! Self-contained SVG charts: sparsity-versus-PSNR per dataset and the
//! hard/soft/Cauchy shrinkage shapes.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use ict_core::prox::{cauchy_shrink, hard_threshold, soft_threshold, CauchyPenalty, ProxError, RootPolicy};

use crate::runner::SweepResult;
use crate::tables::{curve_rows, file_stem};
use crate::BenchError;

pub const PLOTS_DIR: &str = "plots";
const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 55.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.filter(|v| v.is_finite()).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        return (lo - 0.5, hi + 0.5);
    }
    let pad = 0.04 * (hi - lo);
    (lo - pad, hi + pad)
}

impl Chart {
    /// Renders the chart; every series becomes exactly one `<polyline>`.
    pub fn to_svg(&self) -> String {
        let all = || self.series.iter().flat_map(|s| s.points.iter());
        let (x0, x1) = bounds(all().map(|p| p.0));
        let (y0, y1) = bounds(all().map(|p| p.1));
        let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        let sx = |x: f64| MARGIN_LEFT + (x - x0) / (x1 - x0) * plot_w;
        let sy = |y: f64| MARGIN_TOP + plot_h - (y - y0) / (y1 - y0) * plot_h;
        let (left, right, top, bottom) = (MARGIN_LEFT, MARGIN_LEFT + plot_w, MARGIN_TOP, MARGIN_TOP + plot_h);

        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(svg, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
            (left + right) / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(svg, r#"<line x1="{left:.1}" y1="{bottom:.1}" x2="{right:.1}" y2="{bottom:.1}" stroke="black"/>"#);
        let _ = writeln!(svg, r#"<line x1="{left:.1}" y1="{top:.1}" x2="{left:.1}" y2="{bottom:.1}" stroke="black"/>"#);
        for k in 0..=5 {
            let fx = x0 + (x1 - x0) * k as f64 / 5.0;
            let fy = y0 + (y1 - y0) * k as f64 / 5.0;
            let (px, py) = (sx(fx), sy(fy));
            let _ = writeln!(
                svg,
                r#"<line x1="{px:.1}" y1="{bottom:.1}" x2="{px:.1}" y2="{:.1}" stroke="black"/><text x="{px:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
                bottom + 5.0,
                bottom + 19.0,
                tick_label(fx)
            );
            let _ = writeln!(
                svg,
                r#"<line x1="{:.1}" y1="{py:.1}" x2="{left:.1}" y2="{py:.1}" stroke="black"/><text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
                left - 5.0,
                left - 8.0,
                py + 4.0,
                tick_label(fy)
            );
        }
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            (left + right) / 2.0,
            HEIGHT - 12.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            svg,
            r#"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">{}</text>"#,
            (top + bottom) / 2.0,
            (top + bottom) / 2.0,
            escape(&self.y_label)
        );
        for (i, s) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let pts: Vec<String> = s
                .points
                .iter()
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            let _ = writeln!(
                svg,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.8" points="{}"><title>{}</title></polyline>"#,
                pts.join(" "),
                escape(&s.name)
            );
            let ly = top + 10.0 + 20.0 * i as f64;
            let _ = writeln!(
                svg,
                r#"<rect x="{:.1}" y="{:.1}" width="18" height="4" fill="{color}"/><text x="{:.1}" y="{:.1}">{}</text>"#,
                right + 15.0,
                ly - 2.0,
                right + 40.0,
                ly + 4.0,
                escape(&s.name)
            );
        }
        svg.push_str("</svg>\n");
        svg
    }
}

fn tick_label(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e4 || v.abs() < 1e-2) {
        format!("{v:.1e}")
    } else {
        format!("{v:.2}")
    }
}

/// Sparsity-versus-PSNR chart for one dataset, one series per algorithm.
pub fn sparsity_chart(result: &SweepResult, dataset: &str) -> Chart {
    let rows = curve_rows(result, dataset);
    let series = result
        .algorithms(dataset)
        .into_iter()
        .map(|alg| Series {
            name: alg.to_string(),
            points: rows
                .iter()
                .filter(|r| r.algorithm == alg)
                .map(|r| {
                    let m = r.metrics().expect("curve rows are successful");
                    (m.percent_nonzero, m.psnr_db)
                })
                .collect(),
        })
        .filter(|s| !s.points.is_empty())
        .collect();
    Chart {
        title: format!("{dataset}: sparsity vs PSNR"),
        x_label: "% non-zero coefficients".into(),
        y_label: "PSNR (dB)".into(),
        series,
    }
}

/// Hard, soft and Cauchy shrinkage evaluated on a shared abscissa.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSamples {
    pub xs: Vec<f64>,
    pub hard: Vec<f64>,
    pub soft: Vec<f64>,
    pub cauchy: Vec<f64>,
}

/// Threshold given to the hard and soft curves of the shape chart. It matches
/// the dead zone `2 lambda` that the Cauchy operator approaches as `gamma -> 0`.
pub fn shape_threshold(lambda: f64) -> f64 {
    2.0 * lambda
}

pub fn sample_operators(
    xs: &[f64],
    lambda: f64,
    gamma: f64,
    policy: RootPolicy,
) -> Result<OperatorSamples, ProxError> {
    let penalty = CauchyPenalty::new(lambda, gamma)?;
    let tau = shape_threshold(lambda);
    Ok(OperatorSamples {
        xs: xs.to_vec(),
        hard: xs.iter().map(|&x| hard_threshold(x, tau)).collect(),
        soft: xs.iter().map(|&x| soft_threshold(x, tau)).collect(),
        cauchy: xs.iter().map(|&x| cauchy_shrink(x, &penalty, policy)).collect::<Result<_, _>>()?,
    })
}

/// `x` from -5 to 5 in steps of 0.01.
pub fn operator_grid() -> Vec<f64> {
    (0..=1000).map(|k| -5.0 + k as f64 * 0.01).collect()
}

pub fn operator_chart(lambda: f64, gamma: f64, policy: RootPolicy) -> Result<Chart, ProxError> {
    let s = sample_operators(&operator_grid(), lambda, gamma, policy)?;
    let zip = |ys: &[f64]| s.xs.iter().copied().zip(ys.iter().copied()).collect();
    let tau = shape_threshold(lambda);
    Ok(Chart {
        title: format!("Shrinkage operators (lambda = {lambda}, gamma = {gamma})"),
        x_label: "x".into(),
        y_label: "shrink(x)".into(),
        series: vec![
            Series { name: format!("hard (tau = {tau})"), points: zip(&s.hard) },
            Series { name: format!("soft (tau = {tau})"), points: zip(&s.soft) },
            Series { name: "Cauchy".into(), points: zip(&s.cauchy) },
        ],
    })
}

pub fn write_svg(chart: &Chart, path: &Path) -> Result<(), BenchError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| BenchError::io(parent, e))?;
    }
    fs::write(path, chart.to_svg()).map_err(|e| BenchError::io(path, e))
}

/// Outcome of [`emit_plots`].
#[derive(Debug, Clone, PartialEq)]
pub enum PlotOutcome {
    Written(Vec<PathBuf>),
    /// Nothing to draw; no files were created.
    NoOp(String),
}

/// Writes one sparsity chart per dataset plus the operator-shape chart into
/// `output_dir/plots`.
pub fn emit_plots(
    result: &SweepResult,
    output_dir: &Path,
    operator_lambda: f64,
    operator_gamma: f64,
    policy: RootPolicy,
) -> Result<PlotOutcome, BenchError> {
    if result.is_empty() {
        return Ok(PlotOutcome::NoOp("empty sweep result; no plots written".into()));
    }
    let dir = output_dir.join(PLOTS_DIR);
    let mut written = Vec::new();
    for ds in result.datasets() {
        let path = dir.join(format!("{}.svg", file_stem(ds)));
        write_svg(&sparsity_chart(result, ds), &path)?;
        written.push(path);
    }
    let path = dir.join("operators.svg");
    write_svg(&operator_chart(operator_lambda, operator_gamma, policy)?, &path)?;
    written.push(path);
    Ok(PlotOutcome::Written(written))
}
