//! Per-command renderers. Every command supports three formats: a human
//! summary, versioned JSON (one document, schema tag "bskernel/<cmd>/v1"),
//! and CSV with a fixed header and 17-significant-digit decimals. All three
//! are byte-deterministic: no timings, no environment echoes.

use bessel_struve::{CertificateReport, EvalDetail, MarginReport, ScanRow};
use serde_json::json;

use crate::literal::format_complex;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Human,
    Json,
    Csv,
}

/// 17 significant digits: enough to reproduce the f64 exactly.
fn csv_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_doc(value: serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(&value).expect("reports serialize");
    text.push('\n');
    text
}

fn opt_usize_cell(v: Option<usize>) -> String {
    v.map(|n| n.to_string()).unwrap_or_default()
}

pub fn render_eval(format: OutputFormat, nu: f64, z_literal: &str, detail: &EvalDetail) -> String {
    match format {
        OutputFormat::Human => {
            let mut out = String::new();
            out.push_str(&format!("nu: {nu}\n"));
            out.push_str(&format!("z: {z_literal}\n"));
            out.push_str(&format!("value: {}\n", format_complex(detail.value)));
            out.push_str(&format!("method: {}\n", detail.method));
            if let Some(terms) = detail.terms_used {
                out.push_str(&format!("terms: {terms}\n"));
            }
            if let Some(order) = detail.quad_order {
                out.push_str(&format!("quad order: {order}\n"));
            }
            if let Some(bound) = detail.tail_bound {
                out.push_str(&format!("tail bound: {bound:e}\n"));
            }
            out
        }
        OutputFormat::Json => json_doc(json!({
            "schema": "bskernel/eval/v1",
            "nu": nu,
            "z": z_literal,
            "method": detail.method.to_string(),
            "value_re": detail.value.re,
            "value_im": detail.value.im,
            "value": format_complex(detail.value),
            "terms": detail.terms_used,
            "quad_order": detail.quad_order,
            "tail_bound": detail.tail_bound,
        })),
        OutputFormat::Csv => {
            let mut out =
                String::from("nu,z,method,value_re,value_im,terms,quad_order,tail_bound\n");
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                csv_f64(nu),
                z_literal,
                detail.method,
                csv_f64(detail.value.re),
                csv_f64(detail.value.im),
                opt_usize_cell(detail.terms_used),
                opt_usize_cell(detail.quad_order),
                detail.tail_bound.map(csv_f64).unwrap_or_default(),
            ));
            out
        }
    }
}

pub fn render_certify(
    format: OutputFormat,
    nu: f64,
    n_max: usize,
    report: &CertificateReport,
) -> String {
    match format {
        OutputFormat::Human => {
            let mut out = String::new();
            out.push_str(&format!("lemma: {}\n", report.lemma));
            out.push_str(&format!("nu: {nu}\n"));
            out.push_str(&format!(
                "n_max: {n_max} (complete through n = {})\n",
                report.n_checked
            ));
            out.push_str(&format!(
                "result: {}\n",
                if report.passed { "PASS" } else { "FAIL" }
            ));
            match report.first_violation {
                None => out.push_str("first violation: none\n"),
                Some(n) => out.push_str(&format!("first violation: n = {n}\n")),
            }
            out.push_str("margins:\n");
            for m in &report.margins {
                out.push_str(&format!(
                    "  n={} {} {:e} {}\n",
                    m.n, m.label, m.value, m.status
                ));
            }
            out
        }
        OutputFormat::Json => json_doc(json!({
            "schema": "bskernel/certify/v1",
            "lemma": report.lemma.to_string(),
            "nu": nu,
            "n_max": n_max,
            "n_checked": report.n_checked,
            "passed": report.passed,
            "first_violation": report.first_violation,
            "margins": report.margins.iter().map(|m| json!({
                "n": m.n,
                "label": m.label,
                "value": m.value,
                "status": m.status.to_string(),
            })).collect::<Vec<_>>(),
        })),
        OutputFormat::Csv => {
            let mut out = String::from("lemma,nu,n,label,margin,status\n");
            for m in &report.margins {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    report.lemma,
                    csv_f64(nu),
                    m.n,
                    m.label,
                    csv_f64(m.value),
                    m.status
                ));
            }
            out
        }
    }
}

/// What the margin scan ran against: a kernel order or the built-in
/// identity fixture.
pub enum MarginTarget {
    Kernel { nu: f64, subject: &'static str },
    IdentityFixture,
}

impl MarginTarget {
    fn subject_token(&self) -> &'static str {
        match self {
            MarginTarget::Kernel { subject, .. } => subject,
            MarginTarget::IdentityFixture => "identity",
        }
    }

    fn nu(&self) -> Option<f64> {
        match self {
            MarginTarget::Kernel { nu, .. } => Some(*nu),
            MarginTarget::IdentityFixture => None,
        }
    }
}

pub fn render_margin(format: OutputFormat, target: &MarginTarget, report: &MarginReport) -> String {
    let radius_max = *report.grid.radii().last().expect("grids are non-empty");
    match format {
        OutputFormat::Human => {
            let mut out = String::new();
            out.push_str(&format!(
                "property: {} (lambda = {}, beta = {})\n",
                report.property, report.lambda, report.beta
            ));
            match target {
                MarginTarget::Kernel { nu, subject } => {
                    out.push_str(&format!("subject: {subject} (nu = {nu})\n"));
                }
                MarginTarget::IdentityFixture => out.push_str("subject: identity fixture\n"),
            }
            out.push_str(&format!(
                "grid: {} radii x {} angles (largest radius {})\n",
                report.grid.radii().len(),
                report.grid.angles_per_radius(),
                radius_max
            ));
            out.push_str(&format!(
                "extremal margin: {:e} at z = {}\n",
                report.extremal_margin,
                format_complex(report.argmin_point)
            ));
            out.push_str(&format!("holds on grid: {}\n", report.holds_on_grid()));
            out.push_str(&format!(
                "note: {}, not a proof\n",
                MarginReport::EVIDENCE_LABEL
            ));
            out
        }
        OutputFormat::Json => json_doc(json!({
            "schema": "bskernel/margin/v1",
            "property": report.property.to_string(),
            "subject": target.subject_token(),
            "nu": target.nu(),
            "lambda": report.lambda,
            "beta": report.beta,
            "grid": {
                "radii": report.grid.radii().len(),
                "angles": report.grid.angles_per_radius(),
                "radius_max": radius_max,
            },
            "extremal_margin": report.extremal_margin,
            "argmin_re": report.argmin_point.re,
            "argmin_im": report.argmin_point.im,
            "argmin": format_complex(report.argmin_point),
            "holds_on_grid": report.holds_on_grid(),
            "evidence": MarginReport::EVIDENCE_LABEL,
        })),
        OutputFormat::Csv => {
            let mut out = String::from(
                "property,subject,nu,lambda,beta,margin,argmin_re,argmin_im,holds,evidence\n",
            );
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                report.property,
                target.subject_token(),
                target.nu().map(csv_f64).unwrap_or_default(),
                csv_f64(report.lambda),
                csv_f64(report.beta),
                csv_f64(report.extremal_margin),
                csv_f64(report.argmin_point.re),
                csv_f64(report.argmin_point.im),
                report.holds_on_grid(),
                MarginReport::EVIDENCE_LABEL,
            ));
            out
        }
    }
}

pub fn render_nu0(
    format: OutputFormat,
    bracket: (f64, f64),
    tol: f64,
    root: f64,
    objective_at_root: f64,
) -> String {
    match format {
        OutputFormat::Human => {
            let mut out = String::new();
            out.push_str(&format!("threshold order nu0: {root}\n"));
            out.push_str(&format!("bracket: [{}, {}]\n", bracket.0, bracket.1));
            out.push_str(&format!("objective at root: {objective_at_root:e}\n"));
            out.push_str(&format!("tolerance: {tol:e}\n"));
            out
        }
        OutputFormat::Json => json_doc(json!({
            "schema": "bskernel/nu0/v1",
            "root": root,
            "bracket_lo": bracket.0,
            "bracket_hi": bracket.1,
            "objective_at_root": objective_at_root,
            "tol": tol,
        })),
        OutputFormat::Csv => {
            let mut out = String::from("root,bracket_lo,bracket_hi,objective_at_root,tol\n");
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                csv_f64(root),
                csv_f64(bracket.0),
                csv_f64(bracket.1),
                csv_f64(objective_at_root),
                csv_f64(tol)
            ));
            out
        }
    }
}

pub fn render_scan(format: OutputFormat, rows: &[ScanRow]) -> String {
    match format {
        OutputFormat::Human => {
            let mut out = String::new();
            for row in rows {
                match &row.cells {
                    Ok(cells) => out.push_str(&format!(
                        "nu={} acharya={} ms_two_six={} cc_odd={} starlike_margin={:e}\n",
                        row.nu,
                        cells.acharya,
                        cells.ms_two_six,
                        cells.cc_odd,
                        cells.starlike_margin
                    )),
                    Err(err) => out.push_str(&format!("nu={} error: {err}\n", row.nu)),
                }
            }
            out
        }
        OutputFormat::Json => json_doc(json!({
            "schema": "bskernel/scan/v1",
            "rows": rows.iter().map(|row| match &row.cells {
                Ok(cells) => json!({
                    "nu": row.nu,
                    "acharya": cells.acharya,
                    "ms_two_six": cells.ms_two_six,
                    "cc_odd": cells.cc_odd,
                    "starlike_margin": cells.starlike_margin,
                }),
                Err(err) => json!({
                    "nu": row.nu,
                    "error": err.to_string(),
                }),
            }).collect::<Vec<_>>(),
        })),
        OutputFormat::Csv => {
            let mut out = String::from("nu,acharya,ms_two_six,cc_odd,starlike_margin\n");
            for row in rows {
                match &row.cells {
                    Ok(cells) => out.push_str(&format!(
                        "{},{},{},{},{}\n",
                        csv_f64(row.nu),
                        cells.acharya,
                        cells.ms_two_six,
                        cells.cc_odd,
                        csv_f64(cells.starlike_margin)
                    )),
                    Err(_) => {
                        out.push_str(&format!("{},error,error,error,error\n", csv_f64(row.nu)))
                    }
                }
            }
            out
        }
    }
}
