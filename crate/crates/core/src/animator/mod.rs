//! Runs event scripts against component instances and records a trace.

mod script;

pub use script::{parse_script, InstanceDecl, Script, ScriptError, ScriptStep};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{step, validate, ComponentSpec, OperationSchema, Outcome, SpecDocument, StateId, WellFormednessError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// Stop at the first precondition violation.
    Strict,
    /// Record violations, leave the state unchanged and keep going.
    #[default]
    Permissive,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AnimateError {
    #[error("document is not well-formed ({} error(s))", .0.len())]
    InvalidSpec(Vec<WellFormednessError>),
    #[error("instance `{instance}` refers to unknown component `{component}`")]
    UnknownComponent { instance: String, component: String },
    #[error("instance `{0}` is declared more than once")]
    DuplicateInstance(String),
    #[error("step {step}: unknown instance `{instance}`")]
    UnknownInstance { step: usize, instance: String },
    #[error("step {step}: `{event}` is neither an operation nor an event label of component `{component}`")]
    UnknownEvent {
        step: usize,
        component: String,
        event: String,
    },
    #[error("step {step}: event label `{event}` matches several operations: {}", .ops.join(", "))]
    AmbiguousEvent {
        step: usize,
        event: String,
        ops: Vec<String>,
    },
}

/// A running copy of a component.
#[derive(Clone, Debug)]
pub struct Instance<'a> {
    pub id: String,
    pub spec: &'a ComponentSpec,
    pub current: StateId,
}

/// Resolves `event` to an operation: by exact op name first, then by a
/// unique event label. Returns `Err(ops)` listing every matching op when the
/// label is shared; `Err(vec![])` when nothing matches.
pub fn resolve_event<'a>(spec: &'a ComponentSpec, event: &str) -> Result<&'a OperationSchema, Vec<String>> {
    if let Some(op) = spec.op(event) {
        return Ok(op);
    }
    let matches: Vec<_> = spec.ops.iter().filter(|op| op.label.as_deref() == Some(event)).collect();
    match matches.as_slice() {
        [op] => Ok(op),
        _ => Err(matches.iter().map(|op| op.name.clone()).collect()),
    }
}

/// A set of instances over one document, stepped one event at a time.
#[derive(Clone, Debug)]
pub struct Animator<'a> {
    instances: Vec<Instance<'a>>,
}

impl<'a> Animator<'a> {
    /// Creates every declared instance in its component's initial state.
    pub fn new(doc: &'a SpecDocument, decls: &[InstanceDecl]) -> Result<Self, AnimateError> {
        let errors = validate(doc);
        if !errors.is_empty() {
            return Err(AnimateError::InvalidSpec(errors));
        }
        let mut instances: Vec<Instance<'a>> = Vec::with_capacity(decls.len());
        for decl in decls {
            if instances.iter().any(|i| i.id == decl.id) {
                return Err(AnimateError::DuplicateInstance(decl.id.clone()));
            }
            let spec = doc
                .component(&decl.component)
                .ok_or_else(|| AnimateError::UnknownComponent {
                    instance: decl.id.clone(),
                    component: decl.component.clone(),
                })?;
            instances.push(Instance {
                id: decl.id.clone(),
                spec,
                current: spec.init.clone(),
            });
        }
        Ok(Animator { instances })
    }

    pub fn instances(&self) -> &[Instance<'a>] {
        &self.instances
    }

    pub fn state(&self, id: &str) -> Option<&StateId> {
        self.instances.iter().find(|i| i.id == id).map(|i| &i.current)
    }

    /// Looks up the instance and operation a step refers to, returning the
    /// instance's index.
    pub fn resolve(&self, index: usize, s: &ScriptStep) -> Result<(usize, &'a OperationSchema), AnimateError> {
        let pos = self
            .instances
            .iter()
            .position(|i| i.id == s.instance_id)
            .ok_or_else(|| AnimateError::UnknownInstance {
                step: index,
                instance: s.instance_id.clone(),
            })?;
        let spec = self.instances[pos].spec;
        let op = resolve_event(spec, &s.event).map_err(|ops| {
            if ops.is_empty() {
                AnimateError::UnknownEvent {
                    step: index,
                    component: spec.name.clone(),
                    event: s.event.clone(),
                }
            } else {
                AnimateError::AmbiguousEvent {
                    step: index,
                    event: s.event.clone(),
                    ops,
                }
            }
        })?;
        Ok((pos, op))
    }

    /// Applies `op` to the instance at `pos`. A violation leaves the state
    /// unchanged.
    pub fn apply(&mut self, pos: usize, op: &OperationSchema) -> Outcome {
        let instance = &mut self.instances[pos];
        let outcome = step(op, &instance.current);
        if let Outcome::Success { after, .. } = &outcome {
            instance.current = after.clone();
        }
        outcome
    }

    pub fn snapshot(&self) -> Vec<InstanceState> {
        self.instances
            .iter()
            .map(|i| InstanceState {
                instance: i.id.clone(),
                component: i.spec.name.clone(),
                state: i.current.clone(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub index: usize,
    pub instance: String,
    /// The event as written in the script.
    pub event: String,
    /// The operation the event resolved to.
    pub op: String,
    pub outcome: Outcome,
    pub state_after: StateId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceState {
    pub instance: String,
    pub component: String,
    pub state: StateId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
    /// Every instance's state once the run ended.
    pub final_states: Vec<InstanceState>,
}

impl Trace {
    pub fn has_violations(&self) -> bool {
        self.steps.iter().any(|s| !s.outcome.is_success())
    }

    pub fn final_state(&self, instance: &str) -> Option<&StateId> {
        self.final_states
            .iter()
            .find(|s| s.instance == instance)
            .map(|s| &s.state)
    }

    /// One JSON object per step, newline-terminated.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for step in &self.steps {
            out.push_str(&serde_json::to_string(step).expect("trace steps serialize"));
            out.push('\n');
        }
        out
    }
}

/// Executes `steps` in order. Every step is resolved before any is executed,
/// so an unknown instance or event fails the whole run up front.
pub fn run_script(
    doc: &SpecDocument,
    instances: &[InstanceDecl],
    steps: &[ScriptStep],
    mode: Mode,
) -> Result<Trace, AnimateError> {
    let mut animator = Animator::new(doc, instances)?;
    let resolved = steps
        .iter()
        .enumerate()
        .map(|(i, s)| animator.resolve(i, s))
        .collect::<Result<Vec<_>, _>>()?;

    let mut trace = Vec::with_capacity(steps.len());
    for (index, (s, (pos, op))) in steps.iter().zip(resolved).enumerate() {
        let outcome = animator.apply(pos, op);
        let violated = !outcome.is_success();
        trace.push(TraceStep {
            index,
            instance: s.instance_id.clone(),
            event: s.event.clone(),
            op: op.name.clone(),
            state_after: outcome.resulting_state().clone(),
            outcome,
        });
        if violated && mode == Mode::Strict {
            break;
        }
    }
    Ok(Trace {
        steps: trace,
        final_states: animator.snapshot(),
    })
}

/// Runs a parsed script file.
pub fn run(doc: &SpecDocument, script: &Script, mode: Mode) -> Result<Trace, AnimateError> {
    run_script(doc, &script.instances, &script.steps, mode)
}
