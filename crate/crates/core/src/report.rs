//! Machine-readable check reports shared by the verification modules.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl From<bool> for Status {
    fn from(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    #[serde(rename = "N")]
    pub n: u32,
    pub conditions: Vec<Condition>,
    pub passed: bool,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn new(n: u32) -> Self {
        Report {
            n,
            conditions: Vec::new(),
            passed: true,
            wall_time_ms: 0,
        }
    }

    pub fn check(&mut self, id: impl Into<String>, ok: bool) -> bool {
        self.push(id, ok, None)
    }

    pub fn check_with(&mut self, id: impl Into<String>, ok: bool, witness: Value) -> bool {
        self.push(id, ok, Some(witness))
    }

    fn push(&mut self, id: impl Into<String>, ok: bool, witness: Option<Value>) -> bool {
        self.passed &= ok;
        self.conditions.push(Condition {
            id: id.into(),
            status: ok.into(),
            witness,
        });
        ok
    }

    pub fn extend(&mut self, other: Report) {
        self.passed &= other.passed;
        self.conditions.extend(other.conditions);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn timed(mut self, start: std::time::Instant) -> Self {
        self.wall_time_ms = start.elapsed().as_millis() as u64;
        self
    }
}
