//! The four smart grid component models shipped with the engine.
//!
//! Sources live under `models/` and expected analysis results under
//! `fixtures/`; both are embedded at compile time.

use std::fmt;
use std::str::FromStr;

use serde::Deserialize;
use thiserror::Error;

use crate::checker::{OutcomeTable, ReachabilityReport};
use crate::dsl::parse_named;
use crate::model::SpecDocument;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinKey {
    Appliance,
    Turbine,
    Solar,
    Storage,
    /// All four components in one document.
    All,
}

impl BuiltinKey {
    /// The per-component keys, in corpus order.
    pub const COMPONENTS: [BuiltinKey; 4] = [
        BuiltinKey::Appliance,
        BuiltinKey::Turbine,
        BuiltinKey::Solar,
        BuiltinKey::Storage,
    ];

    pub const ALL_KEYS: [BuiltinKey; 5] = [
        BuiltinKey::Appliance,
        BuiltinKey::Turbine,
        BuiltinKey::Solar,
        BuiltinKey::Storage,
        BuiltinKey::All,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BuiltinKey::Appliance => "appliance",
            BuiltinKey::Turbine => "turbine",
            BuiltinKey::Solar => "solar",
            BuiltinKey::Storage => "storage",
            BuiltinKey::All => "all",
        }
    }

    /// Embedded `.sgs` source text.
    pub fn source(self) -> &'static str {
        match self {
            BuiltinKey::Appliance => include_str!("../models/appliance.sgs"),
            BuiltinKey::Turbine => include_str!("../models/turbine.sgs"),
            BuiltinKey::Solar => include_str!("../models/solar.sgs"),
            BuiltinKey::Storage => include_str!("../models/storage.sgs"),
            BuiltinKey::All => include_str!("../models/all.sgs"),
        }
    }

    pub fn file_name(self) -> String {
        format!("{}.sgs", self.as_str())
    }

    pub fn document(self) -> SpecDocument {
        // The embedded sources are covered by tests; a parse failure here is a
        // build defect, not a runtime condition.
        parse_named(self.source(), &format!("builtin:{}", self.as_str()))
            .unwrap_or_else(|errors| panic!("builtin model {} does not parse: {errors:?}", self.as_str()))
    }
}

impl fmt::Display for BuiltinKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown builtin `{0}`; expected one of appliance, turbine, solar, storage, all")]
pub struct UnknownBuiltin(pub String);

impl FromStr for BuiltinKey {
    type Err = UnknownBuiltin;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BuiltinKey::ALL_KEYS
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| UnknownBuiltin(s.to_owned()))
    }
}

/// Returns the built-in document named by `key`.
pub fn builtin(key: &str) -> Result<SpecDocument, UnknownBuiltin> {
    key.parse::<BuiltinKey>().map(BuiltinKey::document)
}

/// A built-in component together with its expected analysis results.
#[derive(Clone, Debug)]
pub struct BuiltinModel {
    pub key: BuiltinKey,
    pub source: &'static str,
    pub expected_table: OutcomeTable,
    pub expected_reach: ReachabilityReport,
}

#[derive(Deserialize)]
struct Fixture {
    table: OutcomeTable,
    reachability: ReachabilityReport,
}

fn fixture_text(key: BuiltinKey) -> &'static str {
    match key {
        BuiltinKey::Appliance => include_str!("../fixtures/appliance.json"),
        BuiltinKey::Turbine => include_str!("../fixtures/turbine.json"),
        BuiltinKey::Solar => include_str!("../fixtures/solar.json"),
        BuiltinKey::Storage => include_str!("../fixtures/storage.json"),
        BuiltinKey::All => unreachable!("no fixture for the combined document"),
    }
}

/// The four per-component models with their fixtures.
pub fn models() -> Vec<BuiltinModel> {
    BuiltinKey::COMPONENTS
        .into_iter()
        .map(|key| {
            let fixture: Fixture =
                serde_json::from_str(fixture_text(key)).expect("embedded fixture is valid JSON");
            BuiltinModel {
                key,
                source: key.source(),
                expected_table: fixture.table,
                expected_reach: fixture.reachability,
            }
        })
        .collect()
}
