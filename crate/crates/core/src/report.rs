//! Pass/fail records produced by the verification routines.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::Element;
use crate::formats::element_to_literal;

/// One checked statement, with the first counterexample (or exhibited
/// witness) when there is one.
#[derive(Clone, Debug)]
pub struct Claim {
    pub claim: String,
    pub pass: bool,
    pub witness: Option<Element>,
    pub parameters: BTreeMap<String, Value>,
}

impl Claim {
    pub fn new(claim: impl Into<String>, pass: bool) -> Self {
        Claim {
            claim: claim.into(),
            pass,
            witness: None,
            parameters: BTreeMap::new(),
        }
    }

    pub fn with_witness(mut self, witness: Option<Element>) -> Self {
        self.witness = witness;
        self
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    /// Records an element as a parameter, rendered in the expression grammar.
    pub fn element_param(self, key: &str, value: &Element) -> Self {
        let s = value.to_string();
        self.param(key, s)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "claim": self.claim,
            "pass": self.pass,
            "witness": self.witness.as_ref().map(|w| serde_json::to_value(element_to_literal(w)).unwrap()),
            "parameters": self.parameters,
        })
    }
}
