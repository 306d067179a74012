//! Self-contained SVG plots, no external renderer.
//!
//! Four plot kinds mirror the harness's analysis views: per-instance learned
//! clause quality (log scale), the mean burst histogram, per-instance mean
//! conflicts-proximity over mc vs sc decisions, and the cumulative
//! solved-over-time delta between two configurations.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::{BenchmarkReport, HarnessError, ReportRow};

const BLUE: &str = "#1f77b4";
const ORANGE: &str = "#ff7f0e";
const GREEN: &str = "#2ca02c";

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 420.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 50.0;

struct Canvas {
    body: String,
}

impl Canvas {
    fn new() -> Canvas {
        let mut body = String::new();
        let _ = write!(
            body,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
             viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\">\n\
             <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
        );
        Canvas { body }
    }

    fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, color: &str, width: f64) {
        let _ = writeln!(
            self.body,
            "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"{color}\" stroke-width=\"{width}\"/>"
        );
    }

    fn polyline(&mut self, points: &[(f64, f64)], color: &str) {
        if points.is_empty() {
            return;
        }
        let coords: Vec<String> = points
            .iter()
            .map(|(x, y)| format!("{x:.2},{y:.2}"))
            .collect();
        let _ = writeln!(
            self.body,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
            coords.join(" ")
        );
    }

    fn circle(&mut self, x: f64, y: f64, r: f64, color: &str) {
        let _ = writeln!(
            self.body,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{r}\" fill=\"{color}\"/>"
        );
    }

    fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, color: &str) {
        let _ = writeln!(
            self.body,
            "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{w:.2}\" height=\"{h:.2}\" fill=\"{color}\"/>"
        );
    }

    fn text(&mut self, x: f64, y: f64, size: f64, anchor: &str, content: &str) {
        let escaped = content
            .replace('&', "&amp;")
            .replace('<', "&lt;")
            .replace('>', "&gt;");
        let _ = writeln!(
            self.body,
            "<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"{size}\" text-anchor=\"{anchor}\" fill=\"#333\">{escaped}</text>"
        );
    }

    fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

/// Linear data-to-pixel mapping over the plot area.
struct Frame {
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        let span = (self.xmax - self.xmin).max(1e-12);
        MARGIN_LEFT + (v - self.xmin) / span * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn y(&self, v: f64) -> f64 {
        let span = (self.ymax - self.ymin).max(1e-12);
        HEIGHT - MARGIN_BOTTOM - (v - self.ymin) / span * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

fn draw_axes(c: &mut Canvas, f: &Frame, title: &str, x_label: &str, y_label: &str, y_tick: impl Fn(f64) -> String) {
    c.line(MARGIN_LEFT, MARGIN_TOP, MARGIN_LEFT, HEIGHT - MARGIN_BOTTOM, "#333", 1.0);
    c.line(
        MARGIN_LEFT,
        HEIGHT - MARGIN_BOTTOM,
        WIDTH - MARGIN_RIGHT,
        HEIGHT - MARGIN_BOTTOM,
        "#333",
        1.0,
    );
    c.text(WIDTH / 2.0, 22.0, 15.0, "middle", title);
    c.text(WIDTH / 2.0, HEIGHT - 12.0, 12.0, "middle", x_label);
    c.text(14.0, MARGIN_TOP - 10.0, 12.0, "start", y_label);
    for i in 0..=4 {
        let v = f.ymin + (f.ymax - f.ymin) * f64::from(i) / 4.0;
        let y = f.y(v);
        c.line(MARGIN_LEFT - 4.0, y, MARGIN_LEFT, y, "#333", 1.0);
        c.line(MARGIN_LEFT, y, WIDTH - MARGIN_RIGHT, y, "#eee", 1.0);
        c.text(MARGIN_LEFT - 8.0, y + 4.0, 11.0, "end", &y_tick(v));
    }
}

fn legend(c: &mut Canvas, entries: &[(&str, &str)]) {
    let mut x = MARGIN_LEFT + 10.0;
    for (label, color) in entries {
        c.rect(x, MARGIN_TOP + 4.0, 12.0, 12.0, color);
        c.text(x + 16.0, MARGIN_TOP + 14.0, 11.0, "start", label);
        x += 16.0 + 8.0 * label.len() as f64 + 24.0;
    }
}

/// Rows of the configuration the per-instance plots describe: the baseline
/// when present, otherwise the single configuration of the run.
fn plot_rows(report: &BenchmarkReport) -> Vec<&ReportRow> {
    let label = report
        .aggregates
        .first()
        .map(|a| a.config.as_str())
        .unwrap_or("baseline");
    report
        .rows
        .iter()
        .filter(|r| r.config == label && r.stats.is_some())
        .collect()
}

/// Per-instance average learned-clause LBD split by decision kind, log10 y.
pub fn clause_quality_svg(report: &BenchmarkReport) -> String {
    let rows = plot_rows(report);
    let mut series: [Vec<(f64, f64)>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    let mut max_log = 1.0f64;
    for (i, row) in rows.iter().enumerate() {
        let stats = row.stats.as_ref().unwrap();
        let values = [stats.albd_sc, stats.albd_mc, stats.avg_min_lbd_mc];
        for (s, v) in series.iter_mut().zip(values) {
            if let Some(v) = v {
                let log = v.max(1.0).log10();
                max_log = max_log.max(log);
                s.push((i as f64, log));
            }
        }
    }
    let frame = Frame {
        xmin: 0.0,
        xmax: (rows.len().max(2) - 1) as f64,
        ymin: 0.0,
        ymax: max_log * 1.05,
    };
    let mut c = Canvas::new();
    draw_axes(
        &mut c,
        &frame,
        "Learned clause quality per instance",
        "instance",
        "LBD (log10)",
        |v| format!("{:.1}", v),
    );
    legend(
        &mut c,
        &[("aLBD_sc", ORANGE), ("aLBD_mc", BLUE), ("avg_min_LBD_mc", GREEN)],
    );
    for (s, color) in series.iter().zip([ORANGE, BLUE, GREEN]) {
        let pts: Vec<(f64, f64)> = s.iter().map(|&(x, y)| (frame.x(x), frame.y(y))).collect();
        c.polyline(&pts, color);
        for &(x, y) in &pts {
            c.circle(x, y, 2.0, color);
        }
    }
    c.finish()
}

/// Mean number of mc decisions per burst size, log10(1 + mean) bars.
pub fn burst_histogram_svg(report: &BenchmarkReport, max_tracked_burst: usize) -> String {
    let rows = plot_rows(report);
    let means = mean_count_b(&rows, max_tracked_burst);
    let max_val = means
        .iter()
        .map(|&m| (1.0 + m).log10())
        .fold(0.1f64, f64::max);
    let frame = Frame {
        xmin: 0.0,
        xmax: means.len() as f64,
        ymin: 0.0,
        ymax: max_val * 1.1,
    };
    let mut c = Canvas::new();
    draw_axes(
        &mut c,
        &frame,
        "Mean count of mc decisions by burst size",
        "burst",
        "log10(1 + mean count)",
        |v| format!("{:.1}", v),
    );
    let slot = (WIDTH - MARGIN_LEFT - MARGIN_RIGHT) / means.len() as f64;
    for (i, &m) in means.iter().enumerate() {
        let h = (1.0 + m).log10();
        let x = frame.x(i as f64) + slot * 0.15;
        let y = frame.y(h);
        c.rect(x, y, slot * 0.7, HEIGHT - MARGIN_BOTTOM - y, BLUE);
        c.text(
            x + slot * 0.35,
            HEIGHT - MARGIN_BOTTOM + 16.0,
            11.0,
            "middle",
            &format!("{}", i + 2),
        );
        c.text(x + slot * 0.35, y - 4.0, 10.0, "middle", &format!("{m:.2}"));
    }
    c.finish()
}

/// Mean `count_b` across instances for each burst `2..=max_tracked_burst`.
pub fn mean_count_b(rows: &[&ReportRow], max_tracked_burst: usize) -> Vec<f64> {
    let mut sums = vec![0.0; max_tracked_burst - 1];
    let mut n = 0u64;
    for row in rows {
        if let Some(stats) = &row.stats {
            n += 1;
            for (i, &v) in stats.count_b.iter().enumerate() {
                if i < sums.len() {
                    sums[i] += v as f64;
                }
            }
        }
    }
    if n > 0 {
        for s in &mut sums {
            *s /= n as f64;
        }
    }
    sums
}

/// Per-instance mean conflicts-proximity over mc and sc decisions.
pub fn proximity_svg(report: &BenchmarkReport) -> String {
    let rows = plot_rows(report);
    let mut mc_pts = Vec::new();
    let mut sc_pts = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let stats = row.stats.as_ref().unwrap();
        if let Some(v) = stats.mean_cp_mc {
            mc_pts.push((i as f64, v));
        }
        if let Some(v) = stats.mean_cp_sc {
            sc_pts.push((i as f64, v));
        }
    }
    let frame = Frame {
        xmin: 0.0,
        xmax: (rows.len().max(2) - 1) as f64,
        ymin: 0.0,
        ymax: 1.0,
    };
    let mut c = Canvas::new();
    draw_axes(
        &mut c,
        &frame,
        "Mean conflicts-proximity per instance",
        "instance",
        "cp",
        |v| format!("{:.2}", v),
    );
    legend(&mut c, &[("cp_mc", BLUE), ("cp_sc", ORANGE)]);
    for (pts, color) in [(&mc_pts, BLUE), (&sc_pts, ORANGE)] {
        let mapped: Vec<(f64, f64)> = pts.iter().map(|&(x, y)| (frame.x(x), frame.y(y))).collect();
        c.polyline(&mapped, color);
        for &(x, y) in &mapped {
            c.circle(x, y, 2.0, color);
        }
    }
    c.finish()
}

/// Step-curve data for the solved-count delta (crvr - baseline) over time.
/// Starts at (0, 0): nothing is solved at time zero.
pub fn solved_delta_points(report: &BenchmarkReport) -> Vec<(f64, f64)> {
    let solved_times = |config: &str| -> Vec<f64> {
        let mut t: Vec<f64> = report
            .rows
            .iter()
            .filter(|r| r.config == config && r.solved())
            .map(|r| r.wall_time_secs)
            .collect();
        t.sort_by(|a, b| a.partial_cmp(b).unwrap());
        t
    };
    let base = solved_times("baseline");
    let crvr = solved_times("crvr");
    let mut events: Vec<(f64, f64)> = base
        .iter()
        .map(|&t| (t, -1.0))
        .chain(crvr.iter().map(|&t| (t, 1.0)))
        .collect();
    events.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut points = vec![(0.0, 0.0)];
    let mut delta = 0.0;
    for (t, step) in events {
        points.push((t, delta));
        delta += step;
        points.push((t, delta));
    }
    points
}

/// Cumulative solved-instances delta between the two configurations.
pub fn solved_delta_svg(report: &BenchmarkReport) -> String {
    let points = solved_delta_points(report);
    let xmax = report
        .meta
        .timeout_secs
        .max(points.last().map(|&(t, _)| t).unwrap_or(1.0));
    let (ymin, ymax) = points
        .iter()
        .fold((-1.0f64, 1.0f64), |(lo, hi), &(_, d)| (lo.min(d), hi.max(d)));
    let frame = Frame {
        xmin: 0.0,
        xmax,
        ymin: ymin - 0.5,
        ymax: ymax + 0.5,
    };
    let mut c = Canvas::new();
    draw_axes(
        &mut c,
        &frame,
        "Solved-instance delta over time (crvr - baseline)",
        "seconds",
        "delta",
        |v| format!("{:.1}", v),
    );
    let zero_y = frame.y(0.0);
    c.line(MARGIN_LEFT, zero_y, WIDTH - MARGIN_RIGHT, zero_y, "#999", 1.0);
    let mapped: Vec<(f64, f64)> = points
        .iter()
        .map(|&(x, y)| (frame.x(x), frame.y(y)))
        .collect();
    c.polyline(&mapped, BLUE);
    c.finish()
}

/// Writes every applicable plot into `dir`; the delta plot needs a paired
/// comparison run.
pub fn emit_plots(
    report: &BenchmarkReport,
    max_tracked_burst: usize,
    dir: &Path,
) -> Result<Vec<PathBuf>, HarnessError> {
    let mut written = Vec::new();
    let mut emit = |name: &str, content: String| -> Result<(), HarnessError> {
        let path = dir.join(name);
        fs::write(&path, content)?;
        written.push(path);
        Ok(())
    };
    emit("clause_quality.svg", clause_quality_svg(report))?;
    emit(
        "burst_histogram.svg",
        burst_histogram_svg(report, max_tracked_burst),
    )?;
    emit("proximity.svg", proximity_svg(report))?;
    if report.comparison.is_some() {
        emit("solved_delta.svg", solved_delta_svg(report))?;
    }
    Ok(written)
}
