//! Explicit-state analysis: outcome tables, reachability and sinks.
//!
//! State spaces here are a handful of named states, so everything is plain
//! enumeration. All outputs are listed in declaration order (states in
//! state-list order, operations in op order) so that reports are byte-stable.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    validate, validate_component, ComponentSpec, SpecDocument, StateId, WellFormednessError,
    WellFormednessKind,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("component `{component}` is not well-formed ({} error(s))", .errors.len())]
    InvalidSpec {
        component: String,
        errors: Vec<WellFormednessError>,
    },
}

fn ensure_valid(spec: &ComponentSpec) -> Result<(), CheckError> {
    let errors = validate_component(spec);
    if errors.is_empty() {
        Ok(())
    } else {
        Err(CheckError::InvalidSpec {
            component: spec.name.clone(),
            errors,
        })
    }
}

/// One operation's split of the state set into success and error states.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeRow {
    pub op: String,
    pub success_pre: Vec<StateId>,
    pub error_states: Vec<StateId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeTable {
    pub component: String,
    pub state_var: String,
    pub rows: Vec<OutcomeRow>,
}

/// Builds the success/error table of every operation of `spec`.
pub fn outcome_table(spec: &ComponentSpec) -> Result<OutcomeTable, CheckError> {
    ensure_valid(spec)?;
    let rows = spec
        .ops
        .iter()
        .map(|op| {
            let (success_pre, error_states) =
                spec.states.iter().cloned().partition(|s| op.is_enabled_in(s));
            OutcomeRow {
                op: op.name.clone(),
                success_pre,
                error_states,
            }
        })
        .collect();
    Ok(OutcomeTable {
        component: spec.name.clone(),
        state_var: spec.state_var().to_owned(),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReachabilityReport {
    pub component: String,
    pub reachable: Vec<StateId>,
    pub unreachable: Vec<StateId>,
    /// Reachable states in which no operation is enabled.
    pub sinks: Vec<StateId>,
}

/// Breadth-first search from the initial state.
pub fn reachability(spec: &ComponentSpec) -> Result<ReachabilityReport, CheckError> {
    ensure_valid(spec)?;
    let mut seen: HashSet<&StateId> = HashSet::from([&spec.init]);
    let mut queue = VecDeque::from([&spec.init]);
    while let Some(state) = queue.pop_front() {
        for op in spec.ops.iter().filter(|op| op.is_enabled_in(state)) {
            if seen.insert(&op.post) {
                queue.push_back(&op.post);
            }
        }
    }

    let (reachable, unreachable): (Vec<StateId>, Vec<StateId>) =
        spec.states.iter().cloned().partition(|s| seen.contains(s));
    let sinks = reachable
        .iter()
        .filter(|s| !spec.ops.iter().any(|op| op.is_enabled_in(s)))
        .cloned()
        .collect();
    Ok(ReachabilityReport {
        component: spec.name.clone(),
        reachable,
        unreachable,
        sinks,
    })
}

/// Something noteworthy about a well-formed component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "subject")]
pub enum Finding {
    Unreachable(StateId),
    Sink(StateId),
    NeverApplicable(String),
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::Unreachable(s) => write!(f, "Unreachable: {s}"),
            Finding::Sink(s) => write!(f, "Sink: {s}"),
            Finding::NeverApplicable(op) => write!(f, "NeverApplicable: {op}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub component: String,
    pub errors: Vec<WellFormednessError>,
    pub table: Option<OutcomeTable>,
    pub reachability: Option<ReachabilityReport>,
    pub findings: Vec<Finding>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub source: String,
    /// Document-level problems (duplicate or missing components).
    pub errors: Vec<WellFormednessError>,
    pub components: Vec<ComponentReport>,
}

impl CheckReport {
    pub fn has_errors(&self) -> bool {
        !self.errors.is_empty() || self.components.iter().any(|c| !c.errors.is_empty())
    }

    pub fn findings(&self) -> impl Iterator<Item = &Finding> {
        self.components.iter().flat_map(|c| c.findings.iter())
    }

    pub fn has_findings(&self) -> bool {
        self.findings().next().is_some()
    }
}

/// Checks one component. Findings are listed as unreachable states, then
/// sinks, then never-applicable operations.
pub fn check_component(spec: &ComponentSpec) -> ComponentReport {
    let errors = validate_component(spec);
    if !errors.is_empty() {
        return ComponentReport {
            component: spec.name.clone(),
            errors,
            table: None,
            reachability: None,
            findings: Vec::new(),
        };
    }
    let table = outcome_table(spec).expect("validated");
    let reach = reachability(spec).expect("validated");

    let mut findings: Vec<Finding> = reach.unreachable.iter().cloned().map(Finding::Unreachable).collect();
    findings.extend(reach.sinks.iter().cloned().map(Finding::Sink));
    findings.extend(
        spec.ops
            .iter()
            .filter(|op| !op.pre.iter().any(|s| reach.reachable.contains(s)))
            .map(|op| Finding::NeverApplicable(op.name.clone())),
    );
    ComponentReport {
        component: spec.name.clone(),
        errors,
        table: Some(table),
        reachability: Some(reach),
        findings,
    }
}

/// Checks every component of `doc`. Never fails; problems are reported as
/// well-formedness errors or findings.
pub fn check(doc: &SpecDocument) -> CheckReport {
    let errors = validate(doc)
        .into_iter()
        .filter(|e| {
            matches!(
                e.kind,
                WellFormednessKind::DuplicateComponent | WellFormednessKind::EmptyDocument
            )
        })
        .collect();
    CheckReport {
        source: doc.source_name.clone(),
        errors,
        components: doc.components.iter().map(check_component).collect(),
    }
}
