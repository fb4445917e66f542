//! Report documents: JSON and a DOT rendering of the realized lattice.

use std::fmt::Write;

use crate::lattice::{EdgeKind, EdgeStatus, ImplicationReport};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Json,
    Dot,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            other => Err(format!("unknown format {other:?}, expected json or dot")),
        }
    }
}

pub fn emit_report(report: &ImplicationReport, format: Format) -> String {
    match format {
        Format::Json => crate::lattice::report_json(report),
        Format::Dot => dot(report),
    }
}

/// Solid edges for arrows that hold, dashed edges labelled with the witness
/// index for mined counterexamples. Non-arrows without a finite witness are
/// left out, as are edges below their minimum size.
pub fn dot(report: &ImplicationReport) -> String {
    let mut out = String::new();
    let s = &report.space;
    writeln!(out, "digraph lattice {{").unwrap();
    writeln!(out, "  label=\"|M|={}, |L|={}, {} amsts\";", s.models, s.sentences, report.checked).unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for e in &report.edges {
        let attrs = match e.status {
            EdgeStatus::Holds if e.expected => {
                let style = if e.kind == EdgeKind::Bridge { "solid, color=gray" } else { "solid" };
                format!("style={style}")
            }
            EdgeStatus::Counterexample => {
                let idx = e.counterexample.as_ref().map_or(String::new(), |c| format!("#{}", c.index));
                let color = if e.expected { ", color=red" } else { "" };
                format!("style=dashed, label=\"{idx}\"{color}")
            }
            _ => continue,
        };
        writeln!(out, "  \"{}\" -> \"{}\" [{attrs}];", e.from, e.to).unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{verify_lattice, LatticeConfig};
    use crate::EnumerationSpace;

    #[test]
    fn dot_marks_holds_and_counterexamples() {
        let cfg = LatticeConfig { threads: 1, cross_check_stride: 0, budget: 16 };
        let r = verify_lattice(&EnumerationSpace::exhaustive(1, 3), &cfg, &[]).unwrap();
        let d = emit_report(&r, Format::Dot);
        assert!(d.starts_with("digraph lattice {"));
        assert!(d.contains("\"spECQ-sat\" -> \"gECQ-sat\" [style=solid]"));
        assert!(d.contains("style=dashed"));
        assert!(!d.contains("color=red"));
    }

    #[test]
    fn json_round_trips() {
        let cfg = LatticeConfig { threads: 1, cross_check_stride: 0, budget: 16 };
        let r = verify_lattice(&EnumerationSpace::exhaustive(1, 2), &cfg, &[]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&emit_report(&r, Format::Json)).unwrap();
        assert_eq!(v["edges"][0]["from"], "gECQ-sat");
        assert!(v["space"].is_object() && v["findings"].is_array());
    }
}
