use thiserror::Error;

use crate::metric::{MetricRule, PointKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point kind mismatch: space expects {expected}, got {found}")]
    PointKind { expected: PointKind, found: PointKind },

    #[error("metric {rule} is not defined on {kind} points")]
    IncompatibleSpace { rule: MetricRule, kind: PointKind },

    #[error("no exact distance rule for {set} under the {rule} metric")]
    Unsupported { set: &'static str, rule: MetricRule },

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("invalid probe: {0}")]
    InvalidProbe(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("unknown scenario `{name}`; known scenarios: {}", known.join(", "))]
    UnknownScenario { name: String, known: Vec<String> },

    #[error("scenario parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
