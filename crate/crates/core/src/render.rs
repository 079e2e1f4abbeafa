//! Text and machine renderings of reports.

use std::fmt::Write;

use crate::io::{serialize_report, ReportDocument};
use crate::report::{Report, Residual, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

/// Nonzero coordinates as `[i,j,k]=v`, 1-based.
pub fn residual_text(r: &Residual) -> String {
    r.0.iter()
        .map(|c| {
            if c.index.is_empty() {
                c.value.to_string()
            } else {
                let idx: Vec<String> = c.index.iter().map(|i| (i + 1).to_string()).collect();
                format!("[{}]={}", idx.join(","), c.value)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn violation_line(v: &Violation) -> String {
    let mut line = format!("FAIL {}", v.identity.label());
    if !v.witness.is_empty() {
        let w: Vec<String> = v.witness.iter().map(ToString::to_string).collect();
        write!(line, " at ({})", w.join(",")).unwrap();
    }
    write!(line, ": residual {}", residual_text(&v.residual)).unwrap();
    line
}

fn report_text(r: &Report, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let verdict = if r.passed() { "PASS" } else { "FAIL" };
    write!(out, "{pad}{verdict} {}", r.title).unwrap();
    if !r.checked.is_empty() {
        let labels: Vec<&str> = r.checked.iter().map(|id| id.label()).collect();
        write!(out, " [{}]", labels.join(", ")).unwrap();
    }
    out.push('\n');
    for v in &r.violations {
        writeln!(out, "{pad}  {}", violation_line(v)).unwrap();
    }
    for s in &r.sections {
        report_text(s, depth + 1, out);
    }
}

/// Indented PASS/FAIL tree, one line per violation, then the extra facts
/// and a verdict line.
pub fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    report_text(&doc.report, 0, &mut out);
    for (k, v) in &doc.facts {
        writeln!(out, "{k}: {v}").unwrap();
    }
    let n = doc.report.all_violations().len();
    writeln!(out, "verdict: {} ({n} violation{})", if doc.passed() { "PASS" } else { "FAIL" }, if n == 1 { "" } else { "s" })
        .unwrap();
    out
}

pub fn render_report(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Text => render_text(doc),
        Format::Machine => serialize_report(doc),
    }
}
