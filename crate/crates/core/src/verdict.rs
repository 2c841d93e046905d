//! Outcomes of semi-decided checks.

use std::fmt;

use serde::Serialize;

use crate::metric::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    /// Interval or margin arithmetic could not settle a strict comparison.
    Undecided,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Undecided => "undecided",
        })
    }
}

/// Evidence attached to a verdict: where it was decided and by which value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    /// Sequence index or family member index (1-based).
    pub index: Option<usize>,
    pub label: Option<String>,
    pub point: Option<Point>,
    pub value: f64,
}

impl Witness {
    pub fn value(value: f64) -> Self {
        Witness {
            index: None,
            label: None,
            point: None,
            value,
        }
    }

    pub fn at_point(point: Point, value: f64) -> Self {
        Witness {
            point: Some(point),
            ..Witness::value(value)
        }
    }

    pub fn index(mut self, index: usize) -> Self {
        self.index = Some(index);
        self
    }

    pub fn label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(i) = self.index {
            parts.push(format!("n={i}"));
        }
        if let Some(l) = &self.label {
            parts.push(format!("S={l}"));
        }
        if let Some(p) = &self.point {
            parts.push(format!("x={p}"));
        }
        parts.push(format!("value={}", self.value));
        f.write_str(&parts.join(" "))
    }
}

/// The resolution a verdict was decided at.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Resolution {
    pub epsilon: Option<f64>,
    pub horizon: Option<usize>,
    pub depth: Option<usize>,
}

impl Resolution {
    pub fn epsilon(epsilon: f64) -> Self {
        Resolution {
            epsilon: Some(epsilon),
            ..Default::default()
        }
    }

    pub fn with_horizon(mut self, horizon: usize) -> Self {
        self.horizon = Some(horizon);
        self
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = Some(depth);
        self
    }
}

/// Pass / fail / undecided, with witnesses and the resolution used.
///
/// A failing verdict always carries at least one witness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub witnesses: Vec<Witness>,
    pub resolution: Resolution,
    /// Named sub-verdicts for composite checks.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<(String, Verdict)>,
}

impl Verdict {
    pub fn pass(resolution: Resolution) -> Self {
        Verdict {
            outcome: Outcome::Pass,
            witnesses: Vec::new(),
            resolution,
            parts: Vec::new(),
        }
    }

    pub fn fail(witness: Witness, resolution: Resolution) -> Self {
        Self::fail_with(vec![witness], resolution)
    }

    pub fn fail_with(witnesses: Vec<Witness>, resolution: Resolution) -> Self {
        assert!(!witnesses.is_empty(), "a failing verdict needs a witness");
        Verdict {
            outcome: Outcome::Fail,
            witnesses,
            resolution,
            parts: Vec::new(),
        }
    }

    pub fn undecided(witness: Witness, resolution: Resolution) -> Self {
        Verdict {
            outcome: Outcome::Undecided,
            witnesses: vec![witness],
            resolution,
            parts: Vec::new(),
        }
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witnesses.push(witness);
        self
    }

    pub fn is_pass(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.outcome == Outcome::Fail
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witnesses.first()
    }

    pub fn part(&self, name: &str) -> Option<&Verdict> {
        self.parts.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.outcome)?;
        if let Some(h) = self.resolution.horizon {
            write!(f, " (up to n={h})")?;
        }
        if let Some(w) = self.witness() {
            write!(f, " [{w}]")?;
        }
        Ok(())
    }
}
