//! Hyperspace topologies on closed subsets of a metric space, decided at
//! explicit resolution: distance functionals, enlargements, bornologies,
//! the series metric over a countable family, and sequence convergence.

pub mod bornology;
pub mod convergence;
pub mod error;
pub mod hyperdist;
pub mod interval;
pub mod metric;
pub mod properties;
pub mod sampling;
pub mod scenario;
pub mod sets;
pub mod verdict;

pub use bornology::ProbeFamily;
pub use convergence::SetSequence;
pub use error::{Error, Result};
pub use interval::{Certification, Decision, IntervalValue};
pub use metric::{GroundSpace, MetricRule, Point, PointKind};
pub use sets::{ClosedSet, ExactSup, ProbeSet};
pub use verdict::{Outcome, Resolution, Verdict, Witness};
