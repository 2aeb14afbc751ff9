use std::fmt::Write;

use crate::rules::Pattern;
use crate::scenario::{signal_body, Scenario};

fn join(patterns: &[Pattern]) -> String {
    patterns
        .iter()
        .map(Pattern::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Renders a scenario in `.psm` syntax. Parsing the output yields an equal
/// scenario.
pub fn print(sc: &Scenario) -> String {
    let mut out = String::new();
    out.push_str("vocab {\n");
    for d in sc.vocabulary.indicators() {
        let domain: Vec<&str> = d.domain.iter().map(|s| s.as_str()).collect();
        let _ = write!(
            out,
            "    indicator {} \"{}\" {{ {} }}",
            d.causa,
            d.label,
            domain.join(" ")
        );
        if !d.constancy.is_empty() {
            let k: Vec<&str> = d.constancy.iter().map(|s| s.as_str()).collect();
            let _ = write!(out, " constancy {}", k.join(" "));
        }
        out.push('\n');
    }
    out.push_str("}\n\nrules {\n");
    for r in &sc.rules {
        let distinct = if r.distinct_vars { " distinct" } else { "" };
        let _ = writeln!(
            out,
            "    {} {}{distinct} {{ when {} then {} }}",
            r.class,
            r.id,
            join(&r.conditions),
            join(&r.consequents)
        );
    }
    out.push_str("}\n\nsignals {\n");
    for s in &sc.signals {
        let body = signal_body(s).unwrap_or_else(|| s.clone());
        let _ = writeln!(out, "    {body}");
    }
    let _ = writeln!(out, "}}\n\nscenario \"{}\" {{", sc.name);
    for s in &sc.seeds {
        let _ = writeln!(out, "    seed {s}");
    }
    out.push_str("}\n");
    out
}
