use std::fmt::Write;

use thiserror::Error;

use crate::model::{validate, SpecDocument, StateId, WellFormednessError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PrintError {
    #[error("document is not well-formed ({} error(s))", .0.len())]
    InvalidDocument(Vec<WellFormednessError>),
}

const INDENT: &str = "    ";

/// Renders `doc` in canonical form: four-space indentation, one declaration
/// per line, a blank line between components and a trailing newline.
pub fn pretty_print(doc: &SpecDocument) -> Result<String, PrintError> {
    let errors = validate(doc);
    if !errors.is_empty() {
        return Err(PrintError::InvalidDocument(errors));
    }

    let mut out = String::new();
    for (i, c) in doc.components.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "component {} {{", c.name);
        let _ = writeln!(out, "{INDENT}states: {};", join(&c.states));
        let _ = writeln!(out, "{INDENT}init: {};", c.init);
        if let Some(var) = &c.state_var {
            let _ = writeln!(out, "{INDENT}var: {var};");
        }
        if let Some(label) = &c.label {
            let _ = writeln!(out, "{INDENT}label: {};", quote(label));
        }
        if !c.ops.is_empty() {
            out.push('\n');
        }
        for op in &c.ops {
            let _ = write!(out, "{INDENT}op {}", op.name);
            if let Some(label) = &op.label {
                let _ = write!(out, " [{}]", quote(label));
            }
            let _ = writeln!(out, " {{ pre: {}; post: {}; }}", join(&op.pre), op.post);
        }
        out.push_str("}\n");
    }
    Ok(out)
}

fn join(states: &[StateId]) -> String {
    states.iter().map(StateId::as_str).collect::<Vec<_>>().join(", ")
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
