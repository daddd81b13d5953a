//! Component specifications and the single-step operational semantics.
//!
//! A [`ComponentSpec`] is a finite state machine: an ordered state set, one
//! initial state, and a list of [`OperationSchema`]s. Each operation guards on
//! a set of before-states and moves to exactly one after-state. Applying an
//! operation outside its guard is not an error; it yields
//! [`Outcome::PreconditionViolation`].

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// State variable name used when a component does not declare one.
pub const DEFAULT_STATE_VAR: &str = "state";

/// Returns true if `s` is a valid identifier: ASCII letters, digits and
/// underscores, starting with a letter.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Name of one member of a component's state set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StateId(String);

impl StateId {
    pub fn new(name: impl Into<String>) -> Self {
        StateId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for StateId {
    fn from(s: &str) -> Self {
        StateId(s.to_owned())
    }
}

impl PartialEq<str> for StateId {
    fn eq(&self, other: &str) -> bool {
        self.0 == other
    }
}

impl PartialEq<&str> for StateId {
    fn eq(&self, other: &&str) -> bool {
        self.0 == *other
    }
}

/// A named transition rule: from any state in `pre` to `post`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationSchema {
    pub name: String,
    /// Human-readable event name. Falls back to `name` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub pre: Vec<StateId>,
    pub post: StateId,
}

impl OperationSchema {
    pub fn new<S: Into<StateId>>(
        name: impl Into<String>,
        pre: impl IntoIterator<Item = S>,
        post: impl Into<StateId>,
    ) -> Self {
        OperationSchema {
            name: name.into(),
            label: None,
            pre: pre.into_iter().map(Into::into).collect(),
            post: post.into(),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// The event name shown to users: the label if set, otherwise the op name.
    pub fn event_label(&self) -> &str {
        self.label.as_deref().unwrap_or(&self.name)
    }

    pub fn is_enabled_in(&self, state: &StateId) -> bool {
        self.pre.contains(state)
    }
}

/// A named state machine: state set, initial state and operations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSpec {
    pub name: String,
    /// Name of the state variable (`appState`, `trbState`, ...). Used when
    /// rendering predicates such as `appState=disconnected`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state_var: Option<String>,
    /// Human-readable component name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub states: Vec<StateId>,
    pub init: StateId,
    pub ops: Vec<OperationSchema>,
}

impl ComponentSpec {
    pub fn new<S: Into<StateId>>(
        name: impl Into<String>,
        states: impl IntoIterator<Item = S>,
        init: impl Into<StateId>,
    ) -> Self {
        ComponentSpec {
            name: name.into(),
            state_var: None,
            label: None,
            states: states.into_iter().map(Into::into).collect(),
            init: init.into(),
            ops: Vec::new(),
        }
    }

    pub fn with_op(mut self, op: OperationSchema) -> Self {
        self.ops.push(op);
        self
    }

    pub fn state_var(&self) -> &str {
        self.state_var.as_deref().unwrap_or(DEFAULT_STATE_VAR)
    }

    pub fn has_state(&self, state: &StateId) -> bool {
        self.states.contains(state)
    }

    pub fn op(&self, name: &str) -> Option<&OperationSchema> {
        self.ops.iter().find(|op| op.name == name)
    }

    /// Position of `state` in declaration order.
    pub fn state_index(&self, state: &StateId) -> Option<usize> {
        self.states.iter().position(|s| s == state)
    }
}

/// A parsed or built-in collection of components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDocument {
    pub components: Vec<ComponentSpec>,
    /// File path the document came from, or `"builtin"`.
    pub source_name: String,
}

impl SpecDocument {
    pub fn new(components: Vec<ComponentSpec>, source_name: impl Into<String>) -> Self {
        SpecDocument {
            components,
            source_name: source_name.into(),
        }
    }

    pub fn component(&self, name: &str) -> Option<&ComponentSpec> {
        self.components.iter().find(|c| c.name == name)
    }

    /// Structural equality: same components in the same order, ignoring where
    /// the documents came from.
    pub fn same_structure(&self, other: &SpecDocument) -> bool {
        self.components == other.components
    }
}

/// Result of applying one operation to one state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Success {
        before: StateId,
        after: StateId,
    },
    PreconditionViolation {
        at: StateId,
        expected: Vec<StateId>,
    },
}

impl Outcome {
    pub fn is_success(&self) -> bool {
        matches!(self, Outcome::Success { .. })
    }

    /// State the instance is in after this outcome.
    pub fn resulting_state(&self) -> &StateId {
        match self {
            Outcome::Success { after, .. } => after,
            Outcome::PreconditionViolation { at, .. } => at,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Success { before, after } => write!(f, "ok {before} -> {after}"),
            Outcome::PreconditionViolation { at, expected } => {
                write!(f, "violation at {at}, expected ")?;
                write_state_set(f, expected)
            }
        }
    }
}

pub(crate) fn write_state_set(f: &mut impl fmt::Write, states: &[StateId]) -> fmt::Result {
    f.write_char('{')?;
    for (i, s) in states.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        f.write_str(s.as_str())?;
    }
    f.write_char('}')
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ApplyError {
    #[error("component `{component}` has no operation `{op}`")]
    UnknownOperation { component: String, op: String },
    #[error("component `{component}` has no state `{state}`")]
    UnknownState { component: String, state: StateId },
}

/// Applies operation `op_name` of `spec` in state `current`.
pub fn apply_operation(
    spec: &ComponentSpec,
    op_name: &str,
    current: &StateId,
) -> Result<Outcome, ApplyError> {
    let op = spec.op(op_name).ok_or_else(|| ApplyError::UnknownOperation {
        component: spec.name.clone(),
        op: op_name.to_owned(),
    })?;
    if !spec.has_state(current) {
        return Err(ApplyError::UnknownState {
            component: spec.name.clone(),
            state: current.clone(),
        });
    }
    Ok(step(op, current))
}

/// Applies an already-resolved operation. `current` is assumed to be a state
/// of the owning component.
pub(crate) fn step(op: &OperationSchema, current: &StateId) -> Outcome {
    if op.is_enabled_in(current) {
        Outcome::Success {
            before: current.clone(),
            after: op.post.clone(),
        }
    } else {
        Outcome::PreconditionViolation {
            at: current.clone(),
            expected: op.pre.clone(),
        }
    }
}

pub fn initial_state(spec: &ComponentSpec) -> &StateId {
    &spec.init
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WellFormednessKind {
    DuplicateState,
    DuplicateOp,
    UnknownInit,
    PreNotSubset,
    PostNotMember,
    EmptyPre,
    DuplicateComponent,
    /// A component, state or operation name is not a valid identifier.
    BadIdentifier,
    /// The document has no components at all.
    EmptyDocument,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Error)]
#[error("{component}: {kind:?} `{ident}`")]
pub struct WellFormednessError {
    pub component: String,
    pub kind: WellFormednessKind,
    pub ident: String,
}

impl WellFormednessError {
    fn new(component: &str, kind: WellFormednessKind, ident: impl Into<String>) -> Self {
        WellFormednessError {
            component: component.to_owned(),
            kind,
            ident: ident.into(),
        }
    }
}

/// Checks every structural invariant of `doc`. An empty result means the
/// document is well-formed.
pub fn validate(doc: &SpecDocument) -> Vec<WellFormednessError> {
    let mut errors = Vec::new();
    if doc.components.is_empty() {
        errors.push(WellFormednessError::new("", WellFormednessKind::EmptyDocument, ""));
    }
    let mut seen = HashSet::new();
    for spec in &doc.components {
        if !seen.insert(spec.name.as_str()) {
            errors.push(WellFormednessError::new(
                &spec.name,
                WellFormednessKind::DuplicateComponent,
                &spec.name,
            ));
        }
        errors.extend(validate_component(spec));
    }
    errors
}

/// Checks the invariants local to one component.
pub fn validate_component(spec: &ComponentSpec) -> Vec<WellFormednessError> {
    use WellFormednessKind::*;

    let name = spec.name.as_str();
    let mut errors = Vec::new();
    if !is_identifier(name) {
        errors.push(WellFormednessError::new(name, BadIdentifier, name));
    }
    if let Some(var) = &spec.state_var {
        if !is_identifier(var) {
            errors.push(WellFormednessError::new(name, BadIdentifier, var.as_str()));
        }
    }

    let mut states = HashSet::new();
    for s in &spec.states {
        if !is_identifier(s.as_str()) {
            errors.push(WellFormednessError::new(name, BadIdentifier, s.as_str()));
        }
        if !states.insert(s) {
            errors.push(WellFormednessError::new(name, DuplicateState, s.as_str()));
        }
    }
    if !states.contains(&spec.init) {
        errors.push(WellFormednessError::new(name, UnknownInit, spec.init.as_str()));
    }

    let mut ops = HashSet::new();
    for op in &spec.ops {
        if !is_identifier(&op.name) {
            errors.push(WellFormednessError::new(name, BadIdentifier, op.name.as_str()));
        }
        if !ops.insert(op.name.as_str()) {
            errors.push(WellFormednessError::new(name, DuplicateOp, op.name.as_str()));
        }
        if op.pre.is_empty() {
            errors.push(WellFormednessError::new(name, EmptyPre, op.name.as_str()));
        }
        for s in &op.pre {
            if !states.contains(s) {
                errors.push(WellFormednessError::new(name, PreNotSubset, s.as_str()));
            }
        }
        if !states.contains(&op.post) {
            errors.push(WellFormednessError::new(name, PostNotMember, op.post.as_str()));
        }
    }
    errors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn appliance() -> ComponentSpec {
        ComponentSpec::new("Appliance", ["disconnected", "connected", "running"], "disconnected")
            .with_op(OperationSchema::new("PluggedInAppliance", ["disconnected"], "connected"))
            .with_op(OperationSchema::new("InUseAppliance", ["connected"], "running"))
            .with_op(OperationSchema::new("UnPluggedAppliance", ["connected"], "disconnected"))
            .with_op(OperationSchema::new("NotInUseAppliance", ["running"], "connected"))
    }

    fn kinds(errors: &[WellFormednessError]) -> Vec<WellFormednessKind> {
        errors.iter().map(|e| e.kind).collect()
    }

    #[test]
    fn plugged_in_from_disconnected_succeeds() {
        let out = apply_operation(&appliance(), "PluggedInAppliance", &"disconnected".into());
        assert_eq!(
            out,
            Ok(Outcome::Success {
                before: "disconnected".into(),
                after: "connected".into()
            })
        );
    }

    #[test]
    fn plugged_in_when_connected_is_a_violation() {
        let out = apply_operation(&appliance(), "PluggedInAppliance", &"connected".into()).unwrap();
        assert_eq!(
            out,
            Outcome::PreconditionViolation {
                at: "connected".into(),
                expected: vec!["disconnected".into()]
            }
        );
        assert_eq!(out.resulting_state(), "connected");
    }

    #[test]
    fn disjunctive_precondition() {
        let solar = ComponentSpec::new(
            "SolarPanel",
            ["noEnergyGeneration", "partialEnergyGeneration", "fullEnergyGeneration"],
            "noEnergyGeneration",
        )
        .with_op(OperationSchema::new(
            "Night",
            ["partialEnergyGeneration", "fullEnergyGeneration"],
            "noEnergyGeneration",
        ));
        let out = apply_operation(&solar, "Night", &"fullEnergyGeneration".into()).unwrap();
        assert_eq!(
            out,
            Outcome::Success {
                before: "fullEnergyGeneration".into(),
                after: "noEnergyGeneration".into()
            }
        );
    }

    #[test]
    fn unknown_names_are_errors_not_outcomes() {
        let spec = appliance();
        assert!(matches!(
            apply_operation(&spec, "Explode", &"connected".into()),
            Err(ApplyError::UnknownOperation { .. })
        ));
        assert!(matches!(
            apply_operation(&spec, "InUseAppliance", &"broken".into()),
            Err(ApplyError::UnknownState { .. })
        ));
    }

    #[test]
    fn single_state_initial() {
        let spec = ComponentSpec::new("C", ["a"], "a");
        assert_eq!(initial_state(&spec), "a");
    }

    #[test]
    fn validate_accepts_appliance() {
        let doc = SpecDocument::new(vec![appliance()], "test");
        assert!(validate(&doc).is_empty());
    }

    #[test]
    fn validate_unknown_init() {
        let doc = SpecDocument::new(vec![ComponentSpec::new("C", ["a"], "foo")], "test");
        let errors = validate(&doc);
        assert_eq!(kinds(&errors), vec![WellFormednessKind::UnknownInit]);
        assert_eq!(errors[0].ident, "foo");
    }

    #[test]
    fn validate_post_not_member() {
        let spec = ComponentSpec::new("C", ["a"], "a").with_op(OperationSchema::new("go", ["a"], "x"));
        let errors = validate(&SpecDocument::new(vec![spec], "test"));
        assert_eq!(kinds(&errors), vec![WellFormednessKind::PostNotMember]);
        assert_eq!(errors[0].ident, "x");
    }

    #[test]
    fn validate_remaining_kinds() {
        use WellFormednessKind::*;
        let empty_pre = ComponentSpec::new("C", ["a"], "a")
            .with_op(OperationSchema::new("go", Vec::<StateId>::new(), "a"));
        assert_eq!(kinds(&validate_component(&empty_pre)), vec![EmptyPre]);

        let dup_state = ComponentSpec::new("C", ["a", "a"], "a");
        assert_eq!(kinds(&validate_component(&dup_state)), vec![DuplicateState]);

        let dup_op = ComponentSpec::new("C", ["a"], "a")
            .with_op(OperationSchema::new("go", ["a"], "a"))
            .with_op(OperationSchema::new("go", ["a"], "a"));
        assert_eq!(kinds(&validate_component(&dup_op)), vec![DuplicateOp]);

        let bad_pre = ComponentSpec::new("C", ["a"], "a").with_op(OperationSchema::new("go", ["b"], "a"));
        assert_eq!(kinds(&validate_component(&bad_pre)), vec![PreNotSubset]);

        let bad_name = ComponentSpec::new("9C", ["a"], "a");
        assert_eq!(kinds(&validate_component(&bad_name)), vec![BadIdentifier]);

        let c = ComponentSpec::new("C", ["a"], "a");
        let doc = SpecDocument::new(vec![c.clone(), c], "test");
        assert_eq!(kinds(&validate(&doc)), vec![DuplicateComponent]);

        assert_eq!(kinds(&validate(&SpecDocument::new(vec![], "test"))), vec![EmptyDocument]);
    }

    #[test]
    fn identifiers() {
        assert!(is_identifier("turbineSlowRunning"));
        assert!(is_identifier("a_1"));
        assert!(!is_identifier(""));
        assert!(!is_identifier("1a"));
        assert!(!is_identifier("_a"));
        assert!(!is_identifier("a-b"));
        assert!(!is_identifier("é"));
    }
}
