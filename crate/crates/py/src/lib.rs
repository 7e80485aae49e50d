//! Python bindings: graphs and generators, volume profiles, the shell and
//! sphere-bound analyses, product sets, ergodic traces and experiments.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use polygrowth::analysis;
use polygrowth::ergodic::{self, AveragingBalls, Observable, RotationPreset, TorusAction};
use polygrowth::experiment::{self, ExperimentConfig, ExperimentOutcome};
use polygrowth::generators::{self, GroupModel, TreeChainSpec};
use polygrowth::space;
use polygrowth::walk::{self, ProductOptions};
use polygrowth::Rational;

const DEFAULT_BUDGET: usize = 5_000_000;

fn err(e: polygrowth::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, q: Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((*q.numer(), *q.denom()))
}

fn model(group: &str, rank: usize) -> PyResult<GroupModel> {
    match group {
        "lattice" => GroupModel::lattice(rank).map_err(err),
        "heisenberg" => Ok(GroupModel::heisenberg()),
        other => Err(PyValueError::new_err(format!("unknown group `{other}`"))),
    }
}

#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: space::Graph,
}

#[pymethods]
impl PyGraph {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self { inner: space::Graph::parse(text).map_err(err)? })
    }

    #[staticmethod]
    fn from_edges(vertex_count: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Self { inner: space::Graph::from_edges(vertex_count, &edges).map_err(err)? })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        self.inner.check_vertex(v).map_err(err)?;
        Ok(self.inner.neighbors(v).collect())
    }

    fn basepoint(&self, label: &str) -> PyResult<usize> {
        self.inner.basepoint(label).map_err(err)
    }

    fn basepoints(&self) -> Vec<(String, usize)> {
        self.inner.basepoints().iter().map(|(k, v)| (k.clone(), *v)).collect()
    }

    /// Ball and sphere counts around `center` up to `radius`.
    fn profile(&self, center: usize, radius: usize) -> PyResult<PyProfile> {
        Ok(PyProfile { inner: space::volume_profile(&self.inner, center, radius).map_err(err)? })
    }

    /// Greedy maximal `k`-separated set in `{y : r_lo < d(center, y) <= r_hi}`.
    fn separated_net(&self, center: usize, r_lo: u32, r_hi: u32, k: u32) -> PyResult<Vec<usize>> {
        space::separated_net(&self.inner, space::Annulus::new(center, r_lo, r_hi), k).map_err(err)
    }

    fn monotone_geodesic(&self, x: usize, y: usize) -> PyResult<Vec<usize>> {
        Ok(space::monotone_geodesic(&self.inner, x, y).map_err(err)?.points)
    }

    fn __repr__(&self) -> String {
        format!("Graph(vertices={}, edges={})", self.inner.vertex_count(), self.inner.edge_count())
    }
}

#[pyclass(name = "VolumeProfile", frozen)]
struct PyProfile {
    inner: space::VolumeProfile,
}

#[pymethods]
impl PyProfile {
    #[getter]
    fn center(&self) -> usize {
        self.inner.center()
    }

    #[getter]
    fn balls(&self) -> Vec<u64> {
        self.inner.balls().to_vec()
    }

    #[getter]
    fn spheres(&self) -> Vec<u64> {
        self.inner.spheres().to_vec()
    }

    fn ball(&self, r: usize) -> Option<u64> {
        self.inner.ball(r)
    }

    fn sphere(&self, r: usize) -> Option<u64> {
        self.inner.sphere(r)
    }

    fn __len__(&self) -> usize {
        self.inner.max_radius() + 1
    }

    fn __repr__(&self) -> String {
        format!("VolumeProfile(center={}, max_radius={})", self.inner.center(), self.inner.max_radius())
    }
}

fn inner_profiles(list: &[PyRef<'_, PyProfile>]) -> Vec<space::VolumeProfile> {
    list.iter().map(|p| p.inner.clone()).collect()
}

/// Word ball of `Z^rank` for a named generating set.
#[pyfunction]
#[pyo3(signature = (rank, radius, generators = "standard", max_vertices = DEFAULT_BUDGET))]
fn lattice_graph(rank: usize, radius: u32, generators: &str, max_vertices: usize) -> PyResult<PyGraph> {
    let m = GroupModel::lattice(rank).map_err(err)?;
    let gens = m.generating_set(generators).map_err(err)?;
    Ok(PyGraph { inner: generators::lattice_graph(rank, gens, radius, max_vertices).map_err(err)? })
}

#[pyfunction]
#[pyo3(signature = (radius, max_vertices = DEFAULT_BUDGET))]
fn heisenberg_graph(radius: u32, max_vertices: usize) -> PyResult<PyGraph> {
    let m = GroupModel::heisenberg();
    let gens = m.generating_set("standard").map_err(err)?;
    Ok(PyGraph { inner: generators::heisenberg_graph(gens, radius, max_vertices).map_err(err)? })
}

#[pyfunction]
#[pyo3(signature = (a, b, blocks, max_vertices = DEFAULT_BUDGET))]
fn tree_chain(a: u64, b: u64, blocks: u32, max_vertices: usize) -> PyResult<PyGraph> {
    let spec = TreeChainSpec::new(a, b, blocks).map_err(err)?;
    Ok(PyGraph { inner: generators::build_tree_chain(spec, max_vertices).map_err(err)?.graph })
}

#[pyfunction]
fn stairway_strip(levels: u32) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: generators::stairway_strip(levels).map_err(err)? })
}

#[pyfunction]
fn subdivided_line(half_len: usize) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: generators::subdivided_line(half_len).map_err(err)? })
}

/// Stairway profile under the distance of the plane.
#[pyfunction]
fn stairway_profile(graph: &PyGraph, center: usize, radius: usize) -> PyResult<PyProfile> {
    let plane = space::EuclideanSubset::from_graph(&graph.inner).map_err(err)?;
    Ok(PyProfile { inner: space::metric_volume_profile(&plane, center, radius).map_err(err)? })
}

/// `max |B(x,2r)| / |B(x,r)|` over the profiles and `1 <= r <= r_max`.
#[pyfunction]
fn doubling_constant<'py>(py: Python<'py>, profiles: Vec<PyRef<'py, PyProfile>>, r_max: usize) -> PyResult<Bound<'py, PyAny>> {
    let rep = analysis::doubling_constant(&inner_profiles(&profiles), r_max).map_err(err)?;
    fraction(py, rep.constant)
}

/// Infimum of the shell ratios; returns a dict with `alpha`, `delta` and
/// the argmin `(center, n, k)`.
#[pyfunction]
#[pyo3(signature = (profiles, n_max, k_min = 5))]
fn shell_alpha<'py>(py: Python<'py>, profiles: Vec<PyRef<'py, PyProfile>>, n_max: usize, k_min: usize) -> PyResult<Bound<'py, PyDict>> {
    let rep = analysis::shell_alpha_all(&inner_profiles(&profiles), k_min, n_max).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("alpha", fraction(py, rep.alpha)?)?;
    d.set_item("delta", rep.delta)?;
    d.set_item("argmin", rep.argmin)?;
    d.set_item("records", rep.records.len())?;
    Ok(d)
}

/// Whether the recursion audit holds at `n` for the given `alpha = (p, q)`.
#[pyfunction]
fn lemma_recursion_audit(profile: &PyProfile, n: usize, alpha: (u64, u64)) -> PyResult<bool> {
    let a = Rational::new(alpha.0, alpha.1);
    Ok(analysis::lemma_recursion_audit(&profile.inner, n, a).map_err(err)?.holds())
}

#[pyfunction]
fn verify_sphere_bound<'py>(
    py: Python<'py>,
    profiles: Vec<PyRef<'py, PyProfile>>,
    delta: f64,
    radii: Vec<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let rep = analysis::verify_sphere_bound(&inner_profiles(&profiles), delta, &radii).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("fitted_c", rep.fitted_c)?;
    d.set_item("trend_slope", rep.trend_slope)?;
    d.set_item("pass", rep.pass)?;
    d.set_item("c", rep.rows.iter().map(|r| r.c).collect::<Vec<_>>())?;
    Ok(d)
}

/// Dyadic radii `r_i` with their certificate flags.
#[pyfunction]
fn dyadic_subsequence(profile: &PyProfile, doubling: (u64, u64), i_max: u32) -> PyResult<Vec<(usize, bool)>> {
    let sel = analysis::dyadic_subsequence(&profile.inner, Rational::new(doubling.0, doubling.1), i_max)
        .map_err(err)?;
    Ok(sel.entries.iter().map(|e| (e.radius, e.certified)).collect())
}

#[pyfunction]
#[pyo3(signature = (balls, lo, hi, full_window = false))]
fn growth_exponent(balls: Vec<u64>, lo: usize, hi: usize, full_window: bool) -> PyResult<f64> {
    let w = if full_window { analysis::FitWindow::Full } else { analysis::FitWindow::TopHalf };
    Ok(analysis::growth_exponent_fit(&balls, lo, hi, w).map_err(err)?.exponent)
}

/// `|U^n|` for `n = 0..=n_max`; `factor` is a set label or a list of
/// coordinate tuples.
#[pyfunction]
#[pyo3(signature = (factor, n_max, group = "lattice", rank = 2, max_elements = 20_000_000))]
fn product_powers(factor: &Bound<'_, PyAny>, n_max: usize, group: &str, rank: usize, max_elements: usize) -> PyResult<Vec<u64>> {
    let m = model(group, rank)?;
    let u = if let Ok(label) = factor.extract::<String>() {
        m.generating_set(&label).map_err(err)?.to_vec()
    } else {
        let coords: Vec<Vec<i64>> = factor.extract()?;
        coords.iter().map(|c| m.element(c)).collect::<Result<_, _>>().map_err(err)?
    };
    let seq = walk::product_powers(&m, &u, n_max, &ProductOptions { max_elements }).map_err(err)?;
    Ok(seq.sizes().to_vec())
}

#[pyfunction]
fn folner_ratios<'py>(py: Python<'py>, sizes: Vec<u64>) -> PyResult<Vec<Bound<'py, PyAny>>> {
    walk::folner_ratios(&sizes)
        .map_err(err)?
        .into_iter()
        .map(|q| fraction(py, q))
        .collect()
}

/// Ball averages `A_n f(x)` for `n = 1..=n_max` under the rotation action of `Z^2`.
#[pyfunction]
#[pyo3(signature = (observable, start, n_max, preset = "golden"))]
fn ergodic_trace(observable: &str, start: (f64, f64), n_max: usize, preset: &str) -> PyResult<Vec<f64>> {
    let preset = match preset {
        "golden" => RotationPreset::Golden,
        "silver" => RotationPreset::Silver,
        other => return Err(PyValueError::new_err(format!("unknown preset `{other}`"))),
    };
    let f = Observable::named(observable).map_err(err)?;
    let balls = AveragingBalls::new("standard", n_max, 20_000_000).map_err(err)?;
    let trace = ergodic::ergodic_trace(&TorusAction::preset(preset), &f, [start.0, start.1], &balls)
        .map_err(err)?;
    Ok(trace.values)
}

fn outcome<'py>(py: Python<'py>, out: ExperimentOutcome) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("summary", serde_json::to_string(&out.summary).expect("json"))?;
    d.set_item("pass", out.pass)?;
    d.set_item("checks", out.checks.into_iter().collect::<Vec<_>>())?;
    let artifacts = PyDict::new(py);
    for a in out.artifacts {
        artifacts.set_item(a.name, a.contents)?;
    }
    d.set_item("artifacts", artifacts)?;
    Ok(d)
}

/// Runs a JSON config. The result has `summary` (JSON text), `pass`,
/// `checks` and `artifacts` (CSV text by file name).
#[pyfunction]
fn run_experiment<'py>(py: Python<'py>, config: &str) -> PyResult<Bound<'py, PyDict>> {
    let cfg = ExperimentConfig::from_json(config).map_err(err)?;
    let out = py.detach(|| experiment::run_experiment(&cfg)).map_err(err)?;
    outcome(py, out)
}

#[pyfunction]
fn reproduce<'py>(py: Python<'py>, name: &str) -> PyResult<Bound<'py, PyDict>> {
    let out = py.detach(|| experiment::reproduce(name)).map_err(err)?;
    outcome(py, out)
}

#[pyfunction]
fn recipe_names() -> Vec<&'static str> {
    experiment::recipe_names()
}

#[pymodule]
fn pygrowth(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyProfile>()?;
    m.add_function(wrap_pyfunction!(lattice_graph, m)?)?;
    m.add_function(wrap_pyfunction!(heisenberg_graph, m)?)?;
    m.add_function(wrap_pyfunction!(tree_chain, m)?)?;
    m.add_function(wrap_pyfunction!(stairway_strip, m)?)?;
    m.add_function(wrap_pyfunction!(subdivided_line, m)?)?;
    m.add_function(wrap_pyfunction!(stairway_profile, m)?)?;
    m.add_function(wrap_pyfunction!(doubling_constant, m)?)?;
    m.add_function(wrap_pyfunction!(shell_alpha, m)?)?;
    m.add_function(wrap_pyfunction!(lemma_recursion_audit, m)?)?;
    m.add_function(wrap_pyfunction!(verify_sphere_bound, m)?)?;
    m.add_function(wrap_pyfunction!(dyadic_subsequence, m)?)?;
    m.add_function(wrap_pyfunction!(growth_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(product_powers, m)?)?;
    m.add_function(wrap_pyfunction!(folner_ratios, m)?)?;
    m.add_function(wrap_pyfunction!(ergodic_trace, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce, m)?)?;
    m.add_function(wrap_pyfunction!(recipe_names, m)?)?;
    Ok(())
}
