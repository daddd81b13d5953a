//! Proptest strategies for well-formed documents and event scripts.

use proptest::collection::vec;
use proptest::option;
use proptest::prelude::*;

use crate::animator::{InstanceDecl, ScriptStep};
use crate::builtin::BuiltinKey;
use crate::model::{ComponentSpec, OperationSchema, SpecDocument, StateId};

pub fn identifier() -> impl Strategy<Value = String> {
    "[a-zA-Z][a-zA-Z0-9_]{0,7}"
}

/// Free text for labels, including characters that need escaping.
pub fn label() -> impl Strategy<Value = String> {
    "[ -~\\t\\n\\r\"\\\\äé∨#{};]{0,12}"
}

fn distinct(items: Vec<String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(items.len());
    for item in items {
        if !out.contains(&item) {
            out.push(item);
        }
    }
    out
}

/// A well-formed component with at most `max_states` states and `max_ops`
/// operations.
pub fn component_spec(max_states: usize, max_ops: usize) -> impl Strategy<Value = ComponentSpec> {
    (
        identifier(),
        vec(identifier(), 1..=max_states),
        option::of(identifier()),
        option::of(label()),
    )
        .prop_flat_map(move |(name, states, state_var, label_text)| {
            let states = distinct(states);
            let n = states.len();
            let op = (identifier(), option::of(label()), vec(0..n, 1..=n), 0..n);
            (
                Just(name),
                Just(states),
                Just(state_var),
                Just(label_text),
                0..n,
                vec(op, 0..=max_ops),
            )
        })
        .prop_map(|(name, states, state_var, label_text, init, raw_ops)| {
            let ids: Vec<StateId> = states.into_iter().map(StateId::new).collect();
            let mut ops: Vec<OperationSchema> = Vec::new();
            for (op_name, op_label, pre, post) in raw_ops {
                if ops.iter().any(|o| o.name == op_name) {
                    continue;
                }
                let mut pre_ids: Vec<StateId> = Vec::new();
                for i in pre {
                    if !pre_ids.contains(&ids[i]) {
                        pre_ids.push(ids[i].clone());
                    }
                }
                ops.push(OperationSchema {
                    name: op_name,
                    label: op_label,
                    pre: pre_ids,
                    post: ids[post].clone(),
                });
            }
            ComponentSpec {
                name,
                state_var,
                label: label_text,
                init: ids[init].clone(),
                states: ids,
                ops,
            }
        })
}

/// A well-formed document of 1..=`max_components` components.
pub fn document(max_components: usize, max_states: usize, max_ops: usize) -> impl Strategy<Value = SpecDocument> {
    vec(component_spec(max_states, max_ops), 1..=max_components).prop_map(|components| {
        let mut out: Vec<ComponentSpec> = Vec::new();
        for c in components {
            if !out.iter().any(|o| o.name == c.name) {
                out.push(c);
            }
        }
        SpecDocument::new(out, "generated")
    })
}

/// Instances used by [`builtin_script`]: two appliances, one turbine, one
/// solar panel and two storage devices.
pub fn builtin_instances() -> Vec<InstanceDecl> {
    vec![
        InstanceDecl::new("a1", "Appliance"),
        InstanceDecl::new("a2", "Appliance"),
        InstanceDecl::new("t1", "WindTurbine"),
        InstanceDecl::new("s1", "SolarPanel"),
        InstanceDecl::new("b1", "StorageDevice"),
        InstanceDecl::new("b2", "StorageDevice"),
    ]
}

/// Random steps over [`builtin_instances`] against `BuiltinKey::All`,
/// addressing operations either by name or by event label.
pub fn builtin_script(len: impl Into<proptest::sample::SizeRange>) -> impl Strategy<Value = Vec<ScriptStep>> {
    let doc = BuiltinKey::All.document();
    let events: Vec<(String, Vec<String>)> = builtin_instances()
        .into_iter()
        .map(|decl| {
            let spec = doc.component(&decl.component).expect("builtin component");
            let mut names: Vec<String> = spec.ops.iter().map(|o| o.name.clone()).collect();
            names.extend(spec.ops.iter().filter_map(|o| o.label.clone()));
            (decl.id, names)
        })
        .collect();
    let n = events.len();
    vec((0..n, any::<prop::sample::Index>()), len).prop_map(move |picks| {
        picks
            .into_iter()
            .map(|(i, ev)| {
                let (id, names) = &events[i];
                ScriptStep::new(id.as_str(), ev.get(names).as_str())
            })
            .collect()
    })
}
