//! Event script files.
//!
//! ```text
//! # comment
//! instance a1: Appliance
//! a1 PluggedInAppliance
//! a1 "In use"
//! ```
//!
//! Declarations name an instance and its component. Every other non-blank
//! line is a step: an instance id followed by an operation name or event
//! label. Labels containing spaces are double-quoted.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::is_identifier;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDecl {
    pub id: String,
    pub component: String,
}

impl InstanceDecl {
    pub fn new(id: impl Into<String>, component: impl Into<String>) -> Self {
        InstanceDecl {
            id: id.into(),
            component: component.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptStep {
    pub instance_id: String,
    /// Operation name or event label.
    pub event: String,
}

impl ScriptStep {
    pub fn new(instance_id: impl Into<String>, event: impl Into<String>) -> Self {
        ScriptStep {
            instance_id: instance_id.into(),
            event: event.into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Script {
    pub instances: Vec<InstanceDecl>,
    pub steps: Vec<ScriptStep>,
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for decl in &self.instances {
            writeln!(f, "instance {}: {}", decl.id, decl.component)?;
        }
        for step in &self.steps {
            if is_identifier(&step.event) {
                writeln!(f, "{} {}", step.instance_id, step.event)?;
            } else {
                let escaped = step.event.replace('\\', "\\\\").replace('"', "\\\"");
                writeln!(f, "{} \"{escaped}\"", step.instance_id)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

/// Splits a line into words, honouring double quotes and dropping a trailing
/// `#` comment. Quoted words keep their quotes off.
fn words(line: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '#' => break,
            '"' => {
                chars.next();
                let mut word = String::new();
                loop {
                    match chars.next() {
                        None => return Err("unterminated quoted event name".into()),
                        Some('"') => break,
                        Some('\\') => match chars.next() {
                            Some(e @ ('"' | '\\')) => word.push(e),
                            _ => return Err("invalid escape in quoted event name".into()),
                        },
                        Some(c) => word.push(c),
                    }
                }
                out.push(word);
            }
            _ => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '#' || c == '"' {
                        break;
                    }
                    word.push(c);
                    chars.next();
                }
                out.push(word);
            }
        }
    }
    Ok(out)
}

fn check_ident(line: usize, what: &str, s: &str) -> Result<(), ScriptError> {
    if is_identifier(s) {
        Ok(())
    } else {
        Err(ScriptError {
            line,
            message: format!("invalid {what} `{s}`"),
        })
    }
}

pub fn parse_script(text: &str) -> Result<Script, ScriptError> {
    let mut script = Script::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| ScriptError { line, message };
        let w = words(raw).map_err(err)?;
        if w.is_empty() {
            continue;
        }

        // `instance <id>: <Component>`, with the colon attached or spaced.
        if w[0] == "instance" && w.len() > 1 && (w[1].ends_with(':') || w.get(2).is_some_and(|s| s == ":")) {
            let (id, rest) = if let Some(id) = w[1].strip_suffix(':') {
                (id, &w[2..])
            } else {
                (w[1].as_str(), &w[3..])
            };
            let [component] = rest else {
                return Err(err("expected `instance <id>: <Component>`".into()));
            };
            check_ident(line, "instance id", id)?;
            check_ident(line, "component name", component)?;
            script.instances.push(InstanceDecl::new(id, component.as_str()));
            continue;
        }

        let [id, event] = w.as_slice() else {
            return Err(err(format!(
                "expected `<instance> <event>` (quote events containing spaces), found {} word(s)",
                w.len()
            )));
        };
        check_ident(line, "instance id", id)?;
        if event.is_empty() {
            return Err(err("empty event name".into()));
        }
        script.steps.push(ScriptStep::new(id.as_str(), event.as_str()));
    }
    Ok(script)
}
