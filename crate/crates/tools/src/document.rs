//! JSON fan documents:
//! `{"rays": [[x,y,z], ...], "cones": [[i, ...], ...], "meta": {...}}`
//! with 0-based ray indices and an optional free-form `meta` object.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use toric_core::{validate_fan, Fan, FanError, LatticeVector};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDocument {
    pub rays: Vec<[i64; 3]>,
    pub cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Map<String, Value>>,
}

impl FanDocument {
    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn from_fan(fan: &Fan, meta: Option<Map<String, Value>>) -> Self {
        FanDocument {
            rays: fan.rays().iter().map(|r| r.coords()).collect(),
            cones: fan.cones().to_vec(),
            meta,
        }
    }

    pub fn to_fan(&self) -> Result<Fan, FanError> {
        validate_fan(self.rays.iter().map(|r| LatticeVector(*r)).collect(), self.cones.clone())
    }

    /// Sorted keys, two-space indentation, trailing newline.
    pub fn to_json_string(&self) -> String {
        let v = serde_json::to_value(self).expect("documents serialize");
        let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
        s.push('\n');
        s
    }
}
