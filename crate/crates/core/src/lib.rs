//! Parser, checker and animator for small state-based component
//! specifications written in the `.sgs` format.
//!
//! A document holds one or more components. Each component is a finite state
//! machine whose operations guard on a set of before-states and move to a
//! single after-state. The crate can
//!
//! * parse and pretty-print documents ([`dsl`]),
//! * check them for well-formedness, unreachable states, sinks and dead
//!   operations, and tabulate every operation's success/error states
//!   ([`checker`]),
//! * run event scripts against component instances ([`animator`]),
//! * export state diagrams as Graphviz DOT ([`render`]).
//!
//! Four smart grid components (appliance, wind turbine, solar panel, storage
//! device) ship as built-in models ([`builtin`]).
//!
//! ```
//! use sgspec_core::{builtin, checker};
//!
//! let doc = builtin::builtin("turbine").unwrap();
//! let report = checker::check(&doc);
//! let findings: Vec<String> = report.findings().map(|f| f.to_string()).collect();
//! assert_eq!(findings, ["Sink: turbineFastRunning"]);
//! ```

pub mod animator;
#[cfg(feature = "arbitrary")]
pub mod arbitrary;
pub mod builtin;
pub mod checker;
pub mod dsl;
pub mod model;
pub mod render;

pub use animator::{run_script, AnimateError, InstanceDecl, Mode, Script, ScriptStep, Trace};
pub use builtin::{BuiltinKey, UnknownBuiltin};
pub use checker::{CheckReport, Finding, OutcomeTable, ReachabilityReport};
pub use dsl::{parse, pretty_print, ParseError};
pub use model::{
    apply_operation, initial_state, validate, ComponentSpec, OperationSchema, Outcome, SpecDocument, StateId,
    WellFormednessError, WellFormednessKind,
};
