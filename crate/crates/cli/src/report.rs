//! Report rows and the CSV/JSON writers.
//!
//! Column order and float formatting are part of the tool's contract:
//! reruns with the same config and seeds must produce byte-identical
//! files. Floats are written with 17 significant digits (`{:.16e}`),
//! which round-trips every f64 exactly.

pub const CSV_HEADER: &str = "sweep_param,sweep_value,f_analytic,expectation,variance,\
skewness,shots_planned,shots_used,empirical_mean,label_mean,label_majority,noise_scale,seed";

pub const SCAN_HEADER: &str = "theta0,theta1,phi,expectation,objective,variance";

pub const PLAN_HEADER: &str = "score,label_width,c,delta,epsilon,shots,noise_scale,shots_noisy";

/// One experiment row. `skewness` is NaN when the sampled distribution
/// is deterministic, and `shots_planned` is 0 when no finite plan
/// exists (score or noise scale numerically zero).
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub sweep_param: &'static str,
    pub sweep_value: f64,
    pub f_analytic: f64,
    pub expectation: f64,
    pub variance: f64,
    pub skewness: f64,
    pub shots_planned: u64,
    pub shots_used: u64,
    pub empirical_mean: f64,
    pub label_mean: String,
    pub label_majority: String,
    pub noise_scale: f64,
    pub seed: u64,
}

/// One angle-grid row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanLine {
    pub theta0: f64,
    pub theta1: f64,
    pub phi: f64,
    pub expectation: f64,
    pub objective: f64,
    pub variance: f64,
}

/// Chebyshev plan summary for one operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanLine {
    pub score: f64,
    pub label_width: u64,
    pub c: f64,
    pub delta: f64,
    pub epsilon: f64,
    pub shots: u64,
    pub noise_scale: f64,
    pub shots_noisy: u64,
}

pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// JSON has no NaN literal, so degenerate entries become null.
fn fmt_json_float(x: f64) -> String {
    if x.is_nan() {
        "null".into()
    } else {
        fmt_float(x)
    }
}

pub fn render_csv(rows: &[Row]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.sweep_param,
            fmt_float(r.sweep_value),
            fmt_float(r.f_analytic),
            fmt_float(r.expectation),
            fmt_float(r.variance),
            fmt_float(r.skewness),
            r.shots_planned,
            r.shots_used,
            fmt_float(r.empirical_mean),
            r.label_mean,
            r.label_majority,
            fmt_float(r.noise_scale),
            r.seed,
        ));
    }
    out
}

pub fn render_json(rows: &[Row]) -> String {
    let body: Vec<String> = rows
        .iter()
        .map(|r| {
            format!(
                "  {{\"sweep_param\":\"{}\",\"sweep_value\":{},\"f_analytic\":{},\
\"expectation\":{},\"variance\":{},\"skewness\":{},\"shots_planned\":{},\
\"shots_used\":{},\"empirical_mean\":{},\"label_mean\":\"{}\",\
\"label_majority\":\"{}\",\"noise_scale\":{},\"seed\":{}}}",
                r.sweep_param,
                fmt_json_float(r.sweep_value),
                fmt_json_float(r.f_analytic),
                fmt_json_float(r.expectation),
                fmt_json_float(r.variance),
                fmt_json_float(r.skewness),
                r.shots_planned,
                r.shots_used,
                fmt_json_float(r.empirical_mean),
                r.label_mean,
                r.label_majority,
                fmt_json_float(r.noise_scale),
                r.seed,
            )
        })
        .collect();
    format!("[\n{}\n]\n", body.join(",\n"))
}

pub fn render_scan_csv(lines: &[ScanLine]) -> String {
    let mut out = String::from(SCAN_HEADER);
    out.push('\n');
    for l in lines {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_float(l.theta0),
            fmt_float(l.theta1),
            fmt_float(l.phi),
            fmt_float(l.expectation),
            fmt_float(l.objective),
            fmt_float(l.variance),
        ));
    }
    out
}

pub fn render_scan_json(lines: &[ScanLine]) -> String {
    let body: Vec<String> = lines
        .iter()
        .map(|l| {
            format!(
                "  {{\"theta0\":{},\"theta1\":{},\"phi\":{},\"expectation\":{},\
\"objective\":{},\"variance\":{}}}",
                fmt_json_float(l.theta0),
                fmt_json_float(l.theta1),
                fmt_json_float(l.phi),
                fmt_json_float(l.expectation),
                fmt_json_float(l.objective),
                fmt_json_float(l.variance),
            )
        })
        .collect();
    format!("[\n{}\n]\n", body.join(",\n"))
}

pub fn render_plan_csv(p: &PlanLine) -> String {
    format!(
        "{}\n{},{},{},{},{},{},{},{}\n",
        PLAN_HEADER,
        fmt_float(p.score),
        p.label_width,
        fmt_float(p.c),
        fmt_float(p.delta),
        fmt_float(p.epsilon),
        p.shots,
        fmt_float(p.noise_scale),
        p.shots_noisy,
    )
}

pub fn render_plan_json(p: &PlanLine) -> String {
    format!(
        "{{\"score\":{},\"label_width\":{},\"c\":{},\"delta\":{},\"epsilon\":{},\
\"shots\":{},\"noise_scale\":{},\"shots_noisy\":{}}}\n",
        fmt_json_float(p.score),
        p.label_width,
        fmt_json_float(p.c),
        fmt_json_float(p.delta),
        fmt_json_float(p.epsilon),
        p.shots,
        fmt_json_float(p.noise_scale),
        p.shots_noisy,
    )
}
