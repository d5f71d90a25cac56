//! Python bindings for leafkernel.

use leafkernel::io::{self, Family};
use leafkernel::kernel::{self, Pipeline};
use leafkernel::{bigis, graph, oracle, outerplanar};
use leafkernel::{Certificate, Graph, Instance, KernelOutcome, Problem, Strategy};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An undirected simple graph with stable vertex ids `0..id_bound`.
#[pyclass(name = "Graph", module = "pyleafkernel", from_py_object)]
#[derive(Clone)]
pub struct PyGraph {
    pub inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: Graph::from_edges(n, &edges).map_err(value_error)?,
        })
    }

    /// Decodes a graph6 string.
    #[staticmethod]
    fn from_graph6(code: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: io::parse_graph6(code).map_err(value_error)?,
        })
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn vertices(&self) -> Vec<usize> {
        self.inner.vertices().collect()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        self.check(v)?;
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.check(v)?;
        Ok(self.inner.degree(v))
    }

    fn add_edge(&mut self, u: usize, v: usize) -> PyResult<bool> {
        self.inner.add_edge(u, v).map_err(value_error)
    }

    fn remove_vertex(&mut self, v: usize) -> PyResult<Vec<usize>> {
        self.inner.remove_vertex(v).map_err(value_error)
    }

    fn is_connected(&self) -> bool {
        graph::is_connected(&self.inner)
    }

    fn is_outerplanar(&self) -> bool {
        outerplanar::recognize_and_embed(&self.inner).is_ok()
    }

    fn is_nonseparating_independent(&self, set: Vec<usize>) -> bool {
        graph::is_nonseparating_independent(&self.inner, &set.into_iter().collect())
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __eq__(&self, other: &PyGraph) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.vertex_count(), self.inner.edge_count())
    }
}

impl PyGraph {
    fn check(&self, v: usize) -> PyResult<()> {
        if self.inner.contains(v) {
            Ok(())
        } else {
            Err(value_error(format!("vertex {v} is not in the graph")))
        }
    }
}

/// A graph with a problem (`nsis`, `cvc` or `maxleaf`) and its parameter.
#[pyclass(name = "Instance", module = "pyleafkernel", from_py_object)]
#[derive(Clone)]
pub struct PyInstance {
    pub inner: Instance,
}

#[pymethods]
impl PyInstance {
    #[new]
    fn new(graph: PyGraph, problem: &str, parameter: i64) -> PyResult<Self> {
        let problem: Problem = problem.parse().map_err(value_error)?;
        Ok(PyInstance {
            inner: Instance::new(graph.inner, problem, parameter),
        })
    }

    /// Parses an instance file.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyInstance {
            inner: io::parse_instance(text).map_err(value_error)?,
        })
    }

    fn to_text(&self) -> String {
        io::serialize_instance(&self.inner)
    }

    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.graph.clone(),
        }
    }

    #[getter]
    fn problem(&self) -> String {
        self.inner.problem.to_string()
    }

    #[getter]
    fn parameter(&self) -> i64 {
        self.inner.parameter
    }

    fn __eq__(&self, other: &PyInstance) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance({}, n={}, m={}, parameter={})",
            self.inner.problem,
            self.inner.graph.vertex_count(),
            self.inner.graph.edge_count(),
            self.inner.parameter
        )
    }
}

/// The result of a kernelization pipeline.
#[pyclass(name = "Outcome", module = "pyleafkernel", from_py_object)]
#[derive(Clone)]
pub struct PyOutcome {
    pub inner: KernelOutcome,
}

#[pymethods]
impl PyOutcome {
    /// Parses an outcome document.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyOutcome {
            inner: io::parse_outcome(text).map_err(value_error)?,
        })
    }

    fn to_text(&self) -> String {
        io::serialize_outcome(&self.inner)
    }

    /// `"decided"` or `"reduced"`.
    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind()
    }

    /// `"yes"`, `"no"` or `"reduced"`.
    #[getter]
    fn answer(&self) -> &'static str {
        match self.inner {
            KernelOutcome::Decided { yes: true, .. } => "yes",
            KernelOutcome::Decided { yes: false, .. } => "no",
            KernelOutcome::Reduced { .. } => "reduced",
        }
    }

    #[getter]
    fn kernel_size(&self) -> usize {
        self.inner.kernel_size()
    }

    /// The reduced instance, or `None` when decided.
    #[getter]
    fn instance(&self) -> Option<PyInstance> {
        match &self.inner {
            KernelOutcome::Reduced { instance, .. } => Some(PyInstance {
                inner: instance.clone(),
            }),
            KernelOutcome::Decided { .. } => None,
        }
    }

    #[getter]
    fn bound(&self) -> Option<i64> {
        match &self.inner {
            KernelOutcome::Reduced { bound, .. } => Some(*bound),
            KernelOutcome::Decided { .. } => None,
        }
    }

    #[getter]
    fn cvc_parameter(&self) -> Option<i64> {
        match &self.inner {
            KernelOutcome::Reduced { cvc_parameter, .. } => *cvc_parameter,
            KernelOutcome::Decided { .. } => None,
        }
    }

    /// Vertices of an NSIS certificate, if any.
    #[getter]
    fn certificate_set(&self) -> Option<Vec<usize>> {
        match self.inner.certificate() {
            Some(Certificate::NsisSet(set)) => Some(set.iter().copied().collect()),
            _ => None,
        }
    }

    /// Edges of a spanning tree certificate, if any.
    #[getter]
    fn certificate_tree(&self) -> Option<Vec<(usize, usize)>> {
        match self.inner.certificate() {
            Some(Certificate::MaxLeafTree(edges)) => Some(edges.clone()),
            _ => None,
        }
    }

    fn __repr__(&self) -> String {
        format!("Outcome({}, kernel_size={})", self.answer(), self.inner.kernel_size())
    }
}

/// Runs `nsis-9k`, `nsis-12k` or `maxleaf-5k` on an instance.
#[pyfunction]
#[pyo3(signature = (instance, pipeline = "nsis-9k"))]
fn kernelize(instance: &PyInstance, pipeline: &str) -> PyResult<PyOutcome> {
    let pipeline: Pipeline = pipeline.parse().map_err(value_error)?;
    Ok(PyOutcome {
        inner: pipeline.run(&instance.inner).map_err(value_error)?,
    })
}

/// Whether the outcome is a YES answer whose certificate holds on the
/// instance.
#[pyfunction]
fn verify(instance: &PyInstance, outcome: &PyOutcome) -> bool {
    match &outcome.inner {
        KernelOutcome::Decided { yes: true, certificate } => {
            kernel::verify_certificate(&instance.inner.graph, certificate, instance.inner.parameter)
        }
        _ => false,
    }
}

/// Generates a family instance with the default parameter.
#[pyfunction]
#[pyo3(signature = (family, size, seed = 0, problem = "nsis"))]
fn generate(family: &str, size: usize, seed: u64, problem: &str) -> PyResult<PyInstance> {
    let family: Family = family.parse().map_err(value_error)?;
    let problem: Problem = problem.parse().map_err(value_error)?;
    Ok(PyInstance {
        inner: io::generate_instance(family, size, seed, problem).map_err(value_error)?,
    })
}

/// Family names accepted by [`generate`].
#[pyfunction]
fn families() -> Vec<String> {
    Family::ALL.iter().map(ToString::to_string).collect()
}

/// `(size, set)` of a maximum non-separating independent set, or `None`
/// when the graph has no edge or is disconnected.
#[pyfunction]
fn max_nsis(graph: &PyGraph) -> PyResult<Option<(usize, Vec<usize>)>> {
    let best = oracle::max_nsis_bruteforce(&graph.inner).map_err(value_error)?;
    Ok(best.map(|r| (r.optimum, r.witness.into_iter().collect())))
}

/// `(size, cover)` of a minimum connected vertex cover, or `None`.
#[pyfunction]
fn min_cvc(graph: &PyGraph) -> PyResult<Option<(usize, Vec<usize>)>> {
    let best = oracle::min_cvc_bruteforce(&graph.inner).map_err(value_error)?;
    Ok(best.map(|r| (r.optimum, r.witness.into_iter().collect())))
}

/// `(leaves, edges)` of a spanning tree with the most leaves.
#[pyfunction]
fn max_leaf(graph: &PyGraph) -> PyResult<(usize, Vec<(usize, usize)>)> {
    let best = oracle::max_leaf_bruteforce(&graph.inner).map_err(value_error)?;
    Ok((best.optimum, best.witness.edges))
}

/// Edges of the spanning tree built with `generic`, `branching` or
/// `maxleaf` expansions.
#[pyfunction]
#[pyo3(signature = (graph, strategy = "generic"))]
fn spanning_tree(graph: &PyGraph, strategy: &str) -> PyResult<Vec<(usize, usize)>> {
    let strategy = match strategy {
        "generic" => Strategy::Generic,
        "branching" => Strategy::Branching,
        "maxleaf" => Strategy::MaxLeaf,
        other => return Err(value_error(format!("unknown strategy `{other}`"))),
    };
    let t = leafkernel::spanning_tree::build_spanning_tree(&graph.inner, strategy).map_err(value_error)?;
    Ok(t.edges())
}

/// `(independent, cycles)` with `9|I| ≥ 4n − 3|C|` for an outerplanar graph.
#[pyfunction]
fn independent_set_with_cycles(graph: &PyGraph) -> PyResult<(Vec<usize>, Vec<Vec<usize>>)> {
    let (set, cycles) = bigis::independent_set_with_cycles(&graph.inner).map_err(value_error)?;
    Ok((set.into_iter().collect(), cycles.cycles().to_vec()))
}

/// Kernels for planar non-separating independent set and max leaf spanning
/// tree.
#[pymodule]
mod pyleafkernel {
    #[pymodule_export]
    use super::{
        families, generate, independent_set_with_cycles, kernelize, max_leaf, max_nsis, min_cvc, spanning_tree, verify,
        PyGraph, PyInstance, PyOutcome,
    };
}
