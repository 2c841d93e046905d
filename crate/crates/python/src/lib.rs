use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use hyperspace::convergence::{self as conv};
use hyperspace::hyperdist;
use hyperspace::scenario::{self as sc, Format, Overrides};
use hyperspace::{
    ClosedSet, ExactSup, GroundSpace, IntervalValue, Outcome, Point, PointKind, ProbeFamily, ProbeSet,
    SetSequence, Verdict as CoreVerdict, Witness,
};

fn err(e: hyperspace::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// float -> scalar, sequence of floats -> vector (dense sequence on
/// sequence spaces), {index: value} -> finitely supported sequence.
fn to_point(obj: &Bound<'_, PyAny>, kind: PointKind) -> PyResult<Point> {
    if let Ok(d) = obj.cast::<PyDict>() {
        let mut entries = Vec::with_capacity(d.len());
        for (k, v) in d.iter() {
            entries.push((k.extract::<usize>()?, v.extract::<f64>()?));
        }
        return Point::seq(entries).map_err(err);
    }
    if let Ok(v) = obj.extract::<f64>() {
        return Point::scalar(v).map_err(err);
    }
    let coords: Vec<f64> = obj.extract()?;
    match kind {
        PointKind::Seq => Point::seq_dense(&coords).map_err(err),
        _ => Point::vector(coords).map_err(err),
    }
}

fn to_points(objs: &Bound<'_, PyAny>, kind: PointKind) -> PyResult<Vec<Point>> {
    objs.try_iter()?.map(|o| to_point(&o?, kind)).collect()
}

fn from_point<'py>(py: Python<'py>, p: &Point) -> PyResult<Bound<'py, PyAny>> {
    Ok(match p {
        Point::Scalar(v) => v.into_pyobject(py)?.into_any(),
        Point::Vector(v) => PyTuple::new(py, v)?.into_any(),
        Point::Seq(m) => {
            let d = PyDict::new(py);
            for (k, v) in m {
                d.set_item(k, v)?;
            }
            d.into_any()
        }
    })
}

/// A metric space: a point kind plus a metric.
#[pyclass(name = "Space", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PySpace(GroundSpace);

#[pymethods]
impl PySpace {
    #[staticmethod]
    fn real_line() -> Self {
        PySpace(GroundSpace::real_line())
    }

    #[staticmethod]
    fn plane() -> Self {
        PySpace(GroundSpace::euclidean_plane())
    }

    #[staticmethod]
    fn french_metro() -> Self {
        PySpace(GroundSpace::french_metro())
    }

    #[staticmethod]
    fn discrete_line() -> Self {
        PySpace(GroundSpace::discrete_line())
    }

    #[staticmethod]
    fn sup_seq() -> Self {
        PySpace(GroundSpace::sup_seq())
    }

    #[getter]
    fn rule(&self) -> &'static str {
        self.0.rule().name()
    }

    fn distance(&self, x: &Bound<'_, PyAny>, y: &Bound<'_, PyAny>) -> PyResult<f64> {
        let k = self.0.kind();
        self.0.distance(&to_point(x, k)?, &to_point(y, k)?).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Space({}, {})", self.0.kind(), self.0.rule())
    }
}

#[pyclass(name = "Set", frozen, from_py_object)]
#[derive(Clone)]
struct PySet(ClosedSet);

#[pymethods]
impl PySet {
    #[staticmethod]
    fn finite(space: &PySpace, points: &Bound<'_, PyAny>) -> PyResult<Self> {
        let set = ClosedSet::finite(to_points(points, space.0.kind())?).map_err(err)?;
        set.validate(&space.0).map_err(err)?;
        Ok(PySet(set))
    }

    #[staticmethod]
    fn interval(lo: f64, hi: f64) -> PyResult<Self> {
        ClosedSet::interval(lo, hi).map(PySet).map_err(err)
    }

    /// The line `y = slope * x` through the origin.
    #[staticmethod]
    fn line(slope: f64) -> PyResult<Self> {
        ClosedSet::line(slope).map(PySet).map_err(err)
    }

    #[staticmethod]
    fn ball(radius: f64) -> PyResult<Self> {
        ClosedSet::ball(radius).map(PySet).map_err(err)
    }

    #[staticmethod]
    fn axis_lattice() -> Self {
        PySet(ClosedSet::AxisLattice)
    }

    #[staticmethod]
    fn whole() -> Self {
        PySet(ClosedSet::WholeSpace)
    }

    #[staticmethod]
    fn union(members: Vec<PySet>) -> PyResult<Self> {
        ClosedSet::union(members.into_iter().map(|s| s.0).collect())
            .map(PySet)
            .map_err(err)
    }

    fn distance(&self, space: &PySpace, x: &Bound<'_, PyAny>) -> PyResult<f64> {
        self.0
            .distance(&space.0, &to_point(x, space.0.kind())?)
            .map_err(err)
    }

    fn contains(&self, space: &PySpace, x: &Bound<'_, PyAny>) -> PyResult<bool> {
        self.0
            .contains(&space.0, &to_point(x, space.0.kind())?)
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Set({:?})", self.0)
    }
}

/// A finite sample standing in for a probe set.
#[pyclass(name = "Probe", frozen, from_py_object)]
#[derive(Clone)]
struct PyProbe(ProbeSet);

#[pymethods]
impl PyProbe {
    #[new]
    #[pyo3(signature = (space, label, points, exhaustive = false))]
    fn new(space: &PySpace, label: String, points: &Bound<'_, PyAny>, exhaustive: bool) -> PyResult<Self> {
        let pts = to_points(points, space.0.kind())?;
        let p = if exhaustive {
            ProbeSet::exhaustive(label, pts)
        } else {
            ProbeSet::new(label, pts)
        }
        .map_err(err)?;
        p.validate(&space.0).map_err(err)?;
        Ok(PyProbe(p))
    }

    /// Attach the set the sample stands for; deviations then use it.
    fn with_region(&self, region: &PySet) -> Self {
        PyProbe(self.0.clone().with_region(region.0.clone()))
    }

    #[getter]
    fn label(&self) -> &str {
        &self.0.label
    }

    fn __len__(&self) -> usize {
        self.0.sample().len()
    }

    fn __repr__(&self) -> String {
        format!("Probe({:?}, {} points)", self.0.label, self.0.sample().len())
    }
}

/// An ordered family of probes indexing the series metric.
#[pyclass(name = "Family", frozen, from_py_object)]
#[derive(Clone)]
struct PyFamily(ProbeFamily);

#[pymethods]
impl PyFamily {
    #[new]
    #[pyo3(signature = (label, probes, complete = false))]
    fn new(label: String, probes: Vec<PyProbe>, complete: bool) -> PyResult<Self> {
        let f = ProbeFamily::new(label, probes.into_iter().map(|p| p.0).collect()).map_err(err)?;
        Ok(PyFamily(if complete { f.complete() } else { f }))
    }

    /// Singletons of the given points.
    #[staticmethod]
    fn singletons(space: &PySpace, points: &Bound<'_, PyAny>) -> PyResult<Self> {
        let members = to_points(points, space.0.kind())?
            .into_iter()
            .enumerate()
            .map(|(i, p)| ProbeSet::singleton(format!("x{}", i + 1), p))
            .collect();
        ProbeFamily::new("singletons", members).map(PyFamily).map_err(err)
    }

    /// Intervals `[-n, n]` sampled at `step`, for the discrete metric.
    #[staticmethod]
    #[pyo3(signature = (count, step = 0.5))]
    fn discrete_intervals(count: usize, step: f64) -> PyResult<Self> {
        let members = (1..=count)
            .map(|n| {
                let m = n as f64;
                let pts = hyperspace::sampling::grid(-m, m, step)
                    .into_iter()
                    .map(Point::Scalar)
                    .collect();
                Ok(ProbeSet::new(format!("[-{n},{n}]"), pts)?
                    .with_exact_sup(ExactSup::DiscreteIndicator { lo: -m, hi: m }))
            })
            .collect::<hyperspace::Result<Vec<_>>>()
            .map_err(err)?;
        ProbeFamily::new("intervals", members).map(PyFamily).map_err(err)
    }

    /// Sampled balls `B(center, n)`, `n = 1..=count`.
    #[staticmethod]
    #[pyo3(signature = (space, center, count, per_unit = 2))]
    fn balls(space: &PySpace, center: &Bound<'_, PyAny>, count: usize, per_unit: usize) -> PyResult<Self> {
        let c = to_point(center, space.0.kind())?;
        hyperdist::ball_probes(&space.0, &c, count, per_unit)
            .map(PyFamily)
            .map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Family({:?}, {} members)", self.0.label, self.0.len())
    }
}

#[pyclass(name = "Sequence", frozen, from_py_object)]
#[derive(Clone)]
struct PySequence(SetSequence);

#[pymethods]
impl PySequence {
    /// `y = x/n` in the plane.
    #[staticmethod]
    fn lines_through_origin() -> Self {
        PySequence(SetSequence::LinesThroughOrigin)
    }

    /// `[-n, n]` on the line.
    #[staticmethod]
    fn growing_intervals() -> Self {
        PySequence(SetSequence::GrowingIntervals)
    }

    #[staticmethod]
    fn explicit(sets: Vec<PySet>) -> Self {
        PySequence(SetSequence::explicit(sets.into_iter().map(|s| s.0).collect()))
    }

    #[staticmethod]
    fn singletons(space: &PySpace, points: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PySequence(SetSequence::singletons(&to_points(
            points,
            space.0.kind(),
        )?)))
    }

    fn __getitem__(&self, n: usize) -> PyResult<PySet> {
        self.0.set(n).map(PySet).map_err(err)
    }
}

/// Certified bounds on a series value.
#[pyclass(name = "Interval", frozen, skip_from_py_object)]
struct PyInterval(IntervalValue);

#[pymethods]
impl PyInterval {
    #[getter]
    fn lo(&self) -> f64 {
        self.0.lo
    }

    #[getter]
    fn hi(&self) -> f64 {
        self.0.hi
    }

    #[getter]
    fn depth(&self) -> usize {
        self.0.depth
    }

    /// False when `hi` is only the truncation tail over a sampled lower bound.
    #[getter]
    fn exact(&self) -> bool {
        self.0.is_exact()
    }

    fn contains(&self, v: f64) -> bool {
        self.0.contains(v)
    }

    fn __repr__(&self) -> String {
        let tag = if self.0.is_exact() {
            ""
        } else {
            ", lower bound only"
        };
        format!(
            "Interval([{}, {}], depth={}{tag})",
            self.0.lo, self.0.hi, self.0.depth
        )
    }
}

#[pyclass(name = "Verdict", frozen, skip_from_py_object)]
struct PyVerdict(CoreVerdict);

fn witness_dict<'py>(py: Python<'py>, w: &Witness) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("index", w.index)?;
    d.set_item("label", w.label.as_deref())?;
    d.set_item("value", w.value)?;
    match &w.point {
        Some(p) => d.set_item("point", from_point(py, p)?)?,
        None => d.set_item("point", py.None())?,
    }
    Ok(d)
}

#[pymethods]
impl PyVerdict {
    /// "pass", "fail" or "undecided".
    #[getter]
    fn outcome(&self) -> String {
        self.0.outcome.to_string()
    }

    #[getter]
    fn passed(&self) -> bool {
        self.0.outcome == Outcome::Pass
    }

    #[getter]
    fn witnesses<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        self.0.witnesses.iter().map(|w| witness_dict(py, w)).collect()
    }

    #[getter]
    fn parts(&self) -> BTreeMap<String, PyVerdict> {
        self.0
            .parts
            .iter()
            .map(|(k, v)| (k.clone(), PyVerdict(v.clone())))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("Verdict({})", self.0)
    }
}

#[pyfunction]
#[pyo3(signature = (space, family, a, c, depth = 40))]
fn dsa(space: &PySpace, family: &PyFamily, a: &PySet, c: &PySet, depth: usize) -> PyResult<PyInterval> {
    hyperdist::dsa(&space.0, &family.0, &a.0, &c.0, depth)
        .map(PyInterval)
        .map_err(err)
}

/// `(value, exact)` for `sup |d(x,A) - d(x,C)|` over the probe.
#[pyfunction]
fn hausdorff(space: &PySpace, a: &PySet, c: &PySet, probe: &PyProbe) -> PyResult<(f64, bool)> {
    let s = hyperdist::hausdorff_distance(&space.0, &a.0, &c.0, &probe.0).map_err(err)?;
    Ok((s.value, s.exact))
}

#[pyfunction]
#[pyo3(signature = (space, probe, a, c, cap = None))]
fn uniform_deviation(
    space: &PySpace,
    probe: &PyProbe,
    a: &PySet,
    c: &PySet,
    cap: Option<f64>,
) -> PyResult<(f64, bool)> {
    let s = hyperdist::uniform_deviation(&space.0, &probe.0, &a.0, &c.0, cap).map_err(err)?;
    Ok((s.value, s.exact))
}

#[pyfunction]
#[pyo3(signature = (space, sequence, limit, family, epsilon, horizon, depth = 40))]
fn dsa_convergence(
    space: &PySpace,
    sequence: &PySequence,
    limit: &PySet,
    family: &PyFamily,
    epsilon: f64,
    horizon: usize,
    depth: usize,
) -> PyResult<PyVerdict> {
    conv::dsa_convergence_check(
        &space.0,
        &sequence.0,
        &limit.0,
        &family.0,
        epsilon,
        horizon,
        depth,
    )
    .map(PyVerdict)
    .map_err(err)
}

#[pyfunction]
fn s_convergence(
    space: &PySpace,
    sequence: &PySequence,
    limit: &PySet,
    family: &PyFamily,
    epsilon: f64,
    horizon: usize,
) -> PyResult<PyVerdict> {
    conv::s_convergence_check(&space.0, &sequence.0, &limit.0, &family.0, epsilon, horizon)
        .map(PyVerdict)
        .map_err(err)
}

#[pyfunction]
fn tau_sd(
    space: &PySpace,
    sequence: &PySequence,
    limit: &PySet,
    family: &PyFamily,
    epsilon: f64,
    horizon: usize,
) -> PyResult<PyVerdict> {
    conv::tau_sd_check(&space.0, &sequence.0, &limit.0, &family.0, epsilon, horizon)
        .map(PyVerdict)
        .map_err(err)
}

#[pyfunction]
fn wijsman(
    space: &PySpace,
    sequence: &PySequence,
    limit: &PySet,
    test_points: &Bound<'_, PyAny>,
    epsilon: f64,
    horizon: usize,
) -> PyResult<PyVerdict> {
    let pts = to_points(test_points, space.0.kind())?;
    conv::wijsman_check(&space.0, &sequence.0, &limit.0, &pts, epsilon, horizon)
        .map(PyVerdict)
        .map_err(err)
}

#[pyfunction]
fn builtin_ids() -> Vec<&'static str> {
    sc::builtin_ids().to_vec()
}

fn overrides(
    epsilon: Option<f64>,
    horizon: Option<usize>,
    depth: Option<usize>,
    seed: Option<u64>,
) -> Overrides {
    Overrides {
        epsilon,
        horizon,
        depth,
        seed,
    }
}

fn report(s: &sc::Scenario, format: &str) -> PyResult<(String, bool)> {
    let format: Format = format.parse().map_err(err)?;
    let r = sc::run_scenario(s, false);
    let met = r.all_expected_met;
    Ok((sc::render(&[r], format).map_err(err)?, met))
}

/// Runs a built-in scenario; returns `(report, all_expected_met)`.
#[pyfunction]
#[pyo3(signature = (name, format = "table", epsilon = None, horizon = None, depth = None, seed = None))]
fn run_builtin(
    name: &str,
    format: &str,
    epsilon: Option<f64>,
    horizon: Option<usize>,
    depth: Option<usize>,
    seed: Option<u64>,
) -> PyResult<(String, bool)> {
    let s = sc::builtin_scenario_with(name, &overrides(epsilon, horizon, depth, seed)).map_err(err)?;
    report(&s, format)
}

/// Runs a scenario given as TOML text; returns `(report, all_expected_met)`.
#[pyfunction]
#[pyo3(signature = (text, format = "table", epsilon = None, horizon = None, depth = None, seed = None))]
fn run_scenario(
    text: &str,
    format: &str,
    epsilon: Option<f64>,
    horizon: Option<usize>,
    depth: Option<usize>,
    seed: Option<u64>,
) -> PyResult<(String, bool)> {
    let s = sc::parse_scenario(text, &overrides(epsilon, horizon, depth, seed)).map_err(err)?;
    report(&s, format)
}

#[pymodule(name = "hyperspace")]
fn hyperspace_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpace>()?;
    m.add_class::<PySet>()?;
    m.add_class::<PyProbe>()?;
    m.add_class::<PyFamily>()?;
    m.add_class::<PySequence>()?;
    m.add_class::<PyInterval>()?;
    m.add_class::<PyVerdict>()?;
    m.add_function(wrap_pyfunction!(dsa, m)?)?;
    m.add_function(wrap_pyfunction!(hausdorff, m)?)?;
    m.add_function(wrap_pyfunction!(uniform_deviation, m)?)?;
    m.add_function(wrap_pyfunction!(dsa_convergence, m)?)?;
    m.add_function(wrap_pyfunction!(s_convergence, m)?)?;
    m.add_function(wrap_pyfunction!(tau_sd, m)?)?;
    m.add_function(wrap_pyfunction!(wijsman, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_ids, m)?)?;
    m.add_function(wrap_pyfunction!(run_builtin, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    Ok(())
}
