//! The JSON envelope every command can emit with `--json`.
//!
//! The layout is fixed by `schema/run_report.schema.json`. Numbers are always
//! integers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// JSON Schema (draft 2020-12) for [`RunReport`].
pub const RUN_REPORT_SCHEMA: &str = include_str!("../schema/run_report.schema.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub result: Value,
    pub version: String,
    pub status: Status,
}

impl RunReport {
    pub fn new(command: &str, parameters: BTreeMap<String, Value>, result: Value, status: Status) -> Self {
        RunReport {
            command: command.to_string(),
            parameters,
            result,
            version: VERSION.to_string(),
            status,
        }
    }

    pub fn error(command: &str, parameters: BTreeMap<String, Value>, err: &Error) -> Self {
        let mut detail = serde_json::json!({
            "kind": err.kind(),
            "message": err.to_string(),
            "exit_code": err.exit_code(),
        });
        if let Error::Incomplete { nodes, lower, upper } = err {
            detail["nodes"] = (*nodes).into();
            detail["lower"] = (*lower).into();
            detail["upper"] = (*upper).into();
        }
        RunReport::new(command, parameters, serde_json::json!({ "error": detail }), Status::Error)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }

    pub fn from_json(text: &str) -> Result<RunReport, Error> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}
