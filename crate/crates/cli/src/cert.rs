//! Certificates: the JSON document every analysis subcommand emits.

use serde::Serialize;
use serde_json::Value;
use witfam::{ElementSet, GroundParams};

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub counterexample: Option<Vec<ElementSet>>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Check {
            name: name.into(),
            pass,
            counterexample: None,
        }
    }

    pub fn failed(name: impl Into<String>, counterexample: Vec<ElementSet>) -> Self {
        Check {
            name: name.into(),
            pass: false,
            counterexample: Some(counterexample),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Command {
    pub name: &'static str,
    pub args: Value,
}

#[derive(Debug, Serialize)]
pub struct Certificate {
    pub tool_version: &'static str,
    pub command: Command,
    pub params: Option<GroundParams>,
    pub payload: Value,
    pub checks: Vec<Check>,
}

impl Certificate {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}
