//! Deterministic serialization: 17-significant-digit floats that round-trip
//! f64 bit-exactly, the sweep CSV schema, and hand-assembled JSON documents
//! (infinities need the "+inf"/"-inf" string convention, which rules out a
//! generic serializer).

use breathkit_core::partition::Validity;
use breathkit_core::sweep::{ExtremaReport, SweepPoint};
use std::fmt::Write as _;

/// 17 significant digits in scientific notation; parses back to the same
/// bits. Infinities become "+inf"/"-inf"; NaN (the invalid sentinel) becomes
/// the empty string.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else if x == f64::INFINITY {
        "+inf".to_string()
    } else if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// JSON value for a possibly non-finite number: plain number, quoted
/// "+inf"/"-inf", or null for the invalid sentinel.
pub fn json_f64(x: f64) -> String {
    if x.is_nan() {
        "null".to_string()
    } else if x.is_infinite() {
        format!("\"{}\"", fmt_f64(x))
    } else {
        fmt_f64(x)
    }
}

pub fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

pub const SWEEP_CSV_HEADER: &str = "xi,n,alpha,u_bs,u_vs,chi,a_body_tilde,validity";

pub fn point_csv_row(p: &SweepPoint) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        fmt_f64(p.xi),
        p.n,
        fmt_f64(p.alpha),
        fmt_f64(p.u_bs),
        fmt_f64(p.u_vs),
        fmt_f64(p.chi),
        fmt_f64(p.a_body_tilde),
        p.validity.as_str()
    )
}

pub fn point_json(p: &SweepPoint) -> String {
    format!(
        "{{\"xi\":{},\"n\":{},\"alpha\":{},\"u_bs\":{},\"u_vs\":{},\"chi\":{},\"a_body_tilde\":{},\"validity\":{}}}",
        json_f64(p.xi),
        p.n,
        json_f64(p.alpha),
        json_f64(p.u_bs),
        json_f64(p.u_vs),
        json_f64(p.chi),
        json_f64(p.a_body_tilde),
        json_string(p.validity.as_str())
    )
}

pub fn extrema_csv_comments(report: &ExtremaReport) -> String {
    let mut out = String::new();
    for (xi, u) in &report.minima {
        let _ = writeln!(out, "# min xi={} u_bs={}", fmt_f64(*xi), fmt_f64(*u));
    }
    for (xi, u) in &report.maxima {
        let _ = writeln!(out, "# max xi={} u_bs={}", fmt_f64(*xi), fmt_f64(*u));
    }
    for xi in &report.predicted_minima {
        let _ = writeln!(out, "# predicted_min xi={}", fmt_f64(*xi));
    }
    let _ = writeln!(
        out,
        "# max_abs_position_error={}",
        fmt_f64(report.max_abs_position_error)
    );
    out
}

pub fn extrema_json(report: &ExtremaReport) -> String {
    let pair = |(xi, u): &(f64, f64)| format!("{{\"xi\":{},\"u_bs\":{}}}", json_f64(*xi), json_f64(*u));
    let minima: Vec<String> = report.minima.iter().map(pair).collect();
    let maxima: Vec<String> = report.maxima.iter().map(pair).collect();
    let predicted: Vec<String> = report.predicted_minima.iter().map(|x| json_f64(*x)).collect();
    format!(
        "{{\"minima\":[{}],\"maxima\":[{}],\"predicted_minima\":[{}],\"max_abs_position_error\":{}}}",
        minima.join(","),
        maxima.join(","),
        predicted.join(","),
        json_f64(report.max_abs_position_error)
    )
}

/// Full sweep document in CSV: mandatory header, one row per point, extrema
/// report as trailing comment lines.
pub fn sweep_csv(points: &[SweepPoint], report: Option<&ExtremaReport>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{SWEEP_CSV_HEADER}");
    for p in points {
        let _ = writeln!(out, "{}", point_csv_row(p));
    }
    if let Some(report) = report {
        out.push_str(&extrema_csv_comments(report));
    }
    out
}

/// Full sweep document in JSON: `{"config": ..., "points": [...],
/// "extrema": {...}}`.
pub fn sweep_json(config: &str, points: &[SweepPoint], report: Option<&ExtremaReport>) -> String {
    let rows: Vec<String> = points.iter().map(point_json).collect();
    let extrema = report.map(extrema_json).unwrap_or_else(|| "null".to_string());
    format!(
        "{{\"config\":{},\"points\":[{}],\"extrema\":{}}}\n",
        config,
        rows.join(","),
        extrema
    )
}

/// Human-readable value for text reports: shortest round-trip form, with the
/// same infinity convention.
pub fn fmt_f64_short(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x == f64::INFINITY {
        "+inf".to_string()
    } else if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{x}")
    }
}

pub fn validity_csv(v: Validity) -> &'static str {
    v.as_str()
}
