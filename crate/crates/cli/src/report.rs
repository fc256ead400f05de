//! Deterministic report formatting: floats are rounded to 12 significant
//! digits before serialization so identical inputs produce byte-identical
//! output on every platform.

use fracstab_core::lti::StabilityReport;
use fracstab_core::nonlinear::NonlinearStability;
use serde_json::{json, Map, Value};

/// Rounds to 12 significant digits (shortest round-trip printing then
/// applies to the rounded value).
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0; // normalizes -0.0
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// JSON number rounded for stable output.
pub fn fnum(x: f64) -> Value {
    json!(sig12(x))
}

/// Fixed CSV/scalar formatting: shortest representation of the
/// 12-significant-digit value.
pub fn fstr(x: f64) -> String {
    format!("{}", sig12(x))
}

/// Formats a complex value as `re` or `re+imj` / `re-imj`.
pub fn complex_str(re: f64, im: f64) -> String {
    if sig12(im) == 0.0 {
        fstr(re)
    } else if im < 0.0 {
        format!("{}-{}j", fstr(re), fstr(-im))
    } else {
        format!("{}+{}j", fstr(re), fstr(im))
    }
}

/// The stable envelope every JSON-producing command emits.
pub fn envelope(command: &str, inputs_echo: Map<String, Value>, result: Value, warnings: Vec<String>) -> Value {
    json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "inputs_echo": Value::Object(inputs_echo),
        "result": result,
        "warnings": warnings,
    })
}

/// JSON shape of a stability report: m, fdeg, per-root entries with the
/// w-plane location, argument, sector and (for physical roots) the s-pole.
pub fn stability_report_json(report: &StabilityReport) -> Value {
    let roots: Vec<Value> = report
        .roots
        .iter()
        .map(|r| {
            let mut entry = Map::new();
            entry.insert("w_re".into(), fnum(r.w.re));
            entry.insert("w_im".into(), fnum(r.w.im));
            entry.insert("abs_arg".into(), fnum(r.abs_arg));
            entry.insert("sector".into(), json!(r.sector.as_str()));
            if let Some(s) = r.s_pole {
                entry.insert("s_re".into(), fnum(s.re));
                entry.insert("s_im".into(), fnum(s.im));
            }
            Value::Object(entry)
        })
        .collect();
    json!({
        "m": report.m,
        "fdeg": report.fdeg,
        "verdict": report.verdict.as_str(),
        "roots": roots,
        "notes": report.notes,
    })
}

/// JSON shape of a linearized equilibrium stability result.
pub fn nonlinear_stability_json(st: &NonlinearStability) -> Value {
    let roots: Vec<Value> = st
        .roots
        .iter()
        .zip(&st.abs_args)
        .map(|(r, &arg)| {
            json!({
                "re": fnum(r.re),
                "im": fnum(r.im),
                "abs_arg": fnum(arg),
            })
        })
        .collect();
    let mut obj = Map::new();
    obj.insert("gamma".into(), json!(st.gamma.to_string()));
    obj.insert("verdict".into(), json!(st.verdict.as_str()));
    obj.insert("roots".into(), json!(roots));
    if let Some(cp) = &st.char_poly {
        obj.insert("m".into(), json!(cp.m));
        let coeffs: Vec<Value> = cp
            .poly
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(deg, c)| json!({"degree": deg, "coeff": fnum(*c)}))
            .collect();
        obj.insert("char_poly".into(), json!(coeffs));
    }
    Value::Object(obj)
}

/// Minimal polyline SVG of one or more series over a shared time axis.
pub fn polyline_svg(times: &[f64], series: &[Vec<f64>]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const PAD: f64 = 20.0;
    const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

    let finite = |v: &f64| v.is_finite();
    let tmin = times.iter().copied().filter(|v| finite(v)).fold(f64::INFINITY, f64::min);
    let tmax = times.iter().copied().filter(|v| finite(v)).fold(f64::NEG_INFINITY, f64::max);
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for col in series {
        for &v in col.iter().filter(|v| finite(v)) {
            ymin = ymin.min(v);
            ymax = ymax.max(v);
        }
    }
    if !(tmax > tmin) || !ymin.is_finite() || !ymax.is_finite() {
        return format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\"/>\n");
    }
    if ymax == ymin {
        ymax = ymin + 1.0;
    }
    let sx = |t: f64| PAD + (t - tmin) / (tmax - tmin) * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - (y - ymin) / (ymax - ymin) * (H - 2.0 * PAD);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    ));
    out.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n"
    ));
    if ymin < 0.0 && ymax > 0.0 {
        let y0 = sy(0.0);
        out.push_str(&format!(
            "  <line x1=\"{PAD}\" y1=\"{y0:.2}\" x2=\"{:.2}\" y2=\"{y0:.2}\" stroke=\"#999\" stroke-width=\"1\"/>\n",
            W - PAD
        ));
    }
    for (idx, col) in series.iter().enumerate() {
        let color = COLORS[idx % COLORS.len()];
        let mut points = String::new();
        for (&t, &v) in times.iter().zip(col) {
            if v.is_finite() {
                points.push_str(&format!("{:.2},{:.2} ", sx(t), sy(v)));
            }
        }
        out.push_str(&format!(
            "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            points.trim_end()
        ));
    }
    out.push_str("</svg>\n");
    out
}
