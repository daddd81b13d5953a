//! Human-readable renderings: text and markdown tables, check reports,
//! traces and Graphviz DOT.

use std::fmt::Write;

use crate::animator::Trace;
use crate::checker::{CheckReport, OutcomeTable};
use crate::model::{ComponentSpec, StateId};

/// Disjunction symbol used between states in predicates.
pub const OR: &str = "∨";

/// Renders state-set membership as a predicate, e.g.
/// `slrState=partialEnergyGeneration ∨ fullEnergyGeneration`. An empty set
/// renders as `none`.
pub fn predicate(var: &str, states: &[StateId]) -> String {
    if states.is_empty() {
        return "none".to_owned();
    }
    let alts: Vec<&str> = states.iter().map(StateId::as_str).collect();
    format!("{var}={}", alts.join(&format!(" {OR} ")))
}

/// Left-aligned columns separated by two spaces, trailing spaces trimmed.
fn columns(rows: &[Vec<String>]) -> String {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            let pad = widths[c] - cell.chars().count();
            line.extend(std::iter::repeat(' ').take(pad));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn table_text(table: &OutcomeTable) -> String {
    let mut rows = vec![vec![
        "Schema".to_owned(),
        "Pre-condition for success".to_owned(),
        "Condition for error".to_owned(),
    ]];
    for row in &table.rows {
        rows.push(vec![
            row.op.clone(),
            predicate(&table.state_var, &row.success_pre),
            predicate(&table.state_var, &row.error_states),
        ]);
    }
    format!("{}\n{}", table.component, columns(&rows))
}

/// Markdown table with the columns Schema | Pre-condition for success |
/// Condition for error.
pub fn table_markdown(table: &OutcomeTable) -> String {
    let mut out = String::from("| Schema | Pre-condition for success | Condition for error |\n|---|---|---|\n");
    for row in &table.rows {
        let _ = writeln!(
            out,
            "| {} | {} | {} |",
            row.op,
            predicate(&table.state_var, &row.success_pre),
            predicate(&table.state_var, &row.error_states)
        );
    }
    out
}

pub fn check_text(report: &CheckReport) -> String {
    let mut out = String::new();
    for e in &report.errors {
        let _ = writeln!(out, "error: {e}");
    }
    for c in &report.components {
        match &c.reachability {
            Some(reach) => {
                let _ = writeln!(
                    out,
                    "component {}: {} reachable, {} unreachable",
                    c.component,
                    reach.reachable.len(),
                    reach.unreachable.len()
                );
            }
            None => {
                let _ = writeln!(out, "component {}: not well-formed", c.component);
            }
        }
        for e in &c.errors {
            let _ = writeln!(out, "  error: {:?} `{}`", e.kind, e.ident);
        }
        for f in &c.findings {
            let _ = writeln!(out, "  {f}");
        }
        if c.errors.is_empty() && c.findings.is_empty() {
            out.push_str("  no findings\n");
        }
    }
    let findings = report.findings().count();
    let errors = report.errors.len() + report.components.iter().map(|c| c.errors.len()).sum::<usize>();
    let _ = writeln!(out, "{findings} finding(s), {errors} error(s)");
    out
}

pub fn trace_text(trace: &Trace) -> String {
    let mut rows = vec![vec![
        "step".to_owned(),
        "instance".to_owned(),
        "event".to_owned(),
        "outcome".to_owned(),
        "state".to_owned(),
    ]];
    for s in &trace.steps {
        let event = if s.event == s.op {
            s.event.clone()
        } else {
            format!("{} ({})", s.event, s.op)
        };
        rows.push(vec![
            s.index.to_string(),
            s.instance.clone(),
            event,
            s.outcome.to_string(),
            s.state_after.to_string(),
        ]);
    }
    let mut out = columns(&rows);
    out.push_str("final:");
    for f in &trace.final_states {
        let _ = write!(out, " {}={}", f.instance, f.state);
    }
    out.push('\n');
    out
}

const DOT_KEYWORDS: [&str; 6] = ["node", "edge", "graph", "digraph", "subgraph", "strict"];

fn dot_id(s: &str) -> String {
    if DOT_KEYWORDS.iter().any(|k| k.eq_ignore_ascii_case(s)) {
        format!("\"{s}\"")
    } else {
        s.to_owned()
    }
}

fn dot_string(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Graphviz digraph of `spec`: one node per state (the initial state drawn
/// as a double circle) and one edge per (pre-state, operation) pair,
/// labelled with the operation's event label.
pub fn to_dot(spec: &ComponentSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", dot_id(&spec.name));
    out.push_str("    rankdir=LR;\n    node [shape=circle];\n");
    for s in &spec.states {
        if *s == spec.init {
            let _ = writeln!(out, "    {} [shape=doublecircle];", dot_id(s.as_str()));
        } else {
            let _ = writeln!(out, "    {};", dot_id(s.as_str()));
        }
    }
    for op in &spec.ops {
        for pre in &op.pre {
            let _ = writeln!(
                out,
                "    {} -> {} [label={}];",
                dot_id(pre.as_str()),
                dot_id(op.post.as_str()),
                dot_string(op.event_label())
            );
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin;
    use crate::checker::outcome_table;

    #[test]
    fn predicates() {
        assert_eq!(predicate("appState", &["disconnected".into()]), "appState=disconnected");
        assert_eq!(predicate("s", &["a".into(), "b".into()]), "s=a ∨ b");
        assert_eq!(predicate("s", &[]), "none");
    }

    #[test]
    fn solar_dot() {
        let doc = builtin("solar").unwrap();
        assert_eq!(
            to_dot(&doc.components[0]),
            "digraph SolarPanel {
    rankdir=LR;
    node [shape=circle];
    noEnergyGeneration [shape=doublecircle];
    partialEnergyGeneration;
    fullEnergyGeneration;
    noEnergyGeneration -> partialEnergyGeneration [label=\"Day, cloudy\"];
    partialEnergyGeneration -> fullEnergyGeneration [label=\"Day, sunny\"];
    partialEnergyGeneration -> noEnergyGeneration [label=\"Night time\"];
    fullEnergyGeneration -> noEnergyGeneration [label=\"Night time\"];
}
"
        );
    }

    #[test]
    fn dot_keywords_are_quoted() {
        let spec = ComponentSpec::new("graph", ["node", "b"], "node");
        assert!(to_dot(&spec).starts_with("digraph \"graph\" {"));
        assert!(to_dot(&spec).contains("    \"node\" [shape=doublecircle];"));
    }

    #[test]
    fn markdown_turbine() {
        let doc = builtin("turbine").unwrap();
        let table = outcome_table(&doc.components[0]).unwrap();
        assert_eq!(
            table_markdown(&table),
            "| Schema | Pre-condition for success | Condition for error |
|---|---|---|
| SlowWind | trbState=turbineNotRunning | trbState=turbineSlowRunning ∨ turbineFastRunning |
| FastWind | trbState=turbineSlowRunning | trbState=turbineNotRunning ∨ turbineFastRunning |
| NoWind | trbState=turbineSlowRunning | trbState=turbineNotRunning ∨ turbineFastRunning |
"
        );
    }

    #[test]
    fn text_table_is_aligned() {
        let doc = builtin("appliance").unwrap();
        let text = table_text(&outcome_table(&doc.components[0]).unwrap());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "Appliance");
        assert!(lines[1].starts_with("Schema              Pre-condition for success  Condition for error"));
        assert_eq!(lines.len(), 6);
    }
}
