//! Certified enclosures for truncated weighted series.

use std::fmt;

use serde::Serialize;

/// How far the upper end of an [`IntervalValue`] can be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    /// Every summand was computed from an exact supremum: `lo ≤ v ≤ hi`.
    Exact,
    /// Some summand came from a finite sample: only `lo ≤ v` is certified.
    LowerOnly,
}

/// Three-valued answer to a strict comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    Yes,
    No,
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntervalValue {
    pub lo: f64,
    pub hi: f64,
    /// Number of series terms actually summed.
    pub depth: usize,
    pub certification: Certification,
}

impl IntervalValue {
    pub fn exact(value: f64) -> Self {
        IntervalValue {
            lo: value,
            hi: value,
            depth: 0,
            certification: Certification::Exact,
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.certification == Certification::Exact
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// Is the enclosed value `< eps`?
    ///
    /// `Yes` needs a trusted upper end; `No` only needs the certified lower end.
    pub fn less_than(&self, eps: f64) -> Decision {
        if self.lo >= eps {
            Decision::No
        } else if self.is_exact() && self.hi < eps {
            Decision::Yes
        } else {
            Decision::Undecided
        }
    }
}

impl fmt::Display for IntervalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)?;
        if !self.is_exact() {
            write!(f, " (lower bound only)")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64, certification: Certification) -> IntervalValue {
        IntervalValue {
            lo,
            hi,
            depth: 3,
            certification,
        }
    }

    #[test]
    fn strict_comparisons() {
        let v = iv(0.25, 0.375, Certification::Exact);
        assert_eq!(v.less_than(0.5), Decision::Yes);
        assert_eq!(v.less_than(0.25), Decision::No);
        assert_eq!(v.less_than(0.3), Decision::Undecided);
        // hi == eps is not definitely below
        assert_eq!(v.less_than(0.375), Decision::Undecided);
    }

    #[test]
    fn lower_only_never_certifies_below() {
        let v = iv(0.0, 0.125, Certification::LowerOnly);
        assert_eq!(v.less_than(0.5), Decision::Undecided);
        assert_eq!(
            iv(0.6, 0.7, Certification::LowerOnly).less_than(0.5),
            Decision::No
        );
    }
}
