//! Python bindings: a thin expression-oriented wrapper over the engine.
//! Polynomials cross the boundary as strings in the term grammar; normal-form
//! coordinates as lists of rational strings.

use std::path::Path;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use veronalt::poly::format_rational;
use veronalt::{
    new_generators, parse, veronese_component, IdentitySet, LinearGroupAction, MultiDegree,
    StructureEngine, TIdealEngine, VeroneseConfig,
};

fn err(e: veronalt::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn variety(name: &str) -> PyResult<IdentitySet> {
    match name {
        "alt" => Ok(IdentitySet::alternative()),
        "assoc" => Ok(IdentitySet::associative()),
        "ralt" => Ok(IdentitySet::right_alternative()),
        "nonassoc" => Ok(IdentitySet::nonassoc_free()),
        other => match other.strip_prefix("custom:") {
            Some(path) => IdentitySet::from_file("custom", Path::new(path)).map_err(err),
            None => Err(PyValueError::new_err(format!(
                "unknown variety '{other}' (expected alt|assoc|ralt|nonassoc|custom:<path>)"
            ))),
        },
    }
}

/// The relatively free algebra of a variety at a fixed rank.
#[pyclass]
struct Engine {
    eng: Arc<TIdealEngine>,
}

#[pymethods]
impl Engine {
    #[new]
    #[pyo3(signature = (variety_name, rank, degree_cap=None))]
    fn new(variety_name: &str, rank: usize, degree_cap: Option<u32>) -> PyResult<Self> {
        let ids = variety(variety_name)?;
        let eng = match degree_cap {
            Some(cap) => TIdealEngine::with_cap(ids, rank, cap),
            None => TIdealEngine::new(ids, rank),
        };
        Ok(Engine { eng: Arc::new(eng) })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.eng.rank()
    }

    #[getter]
    fn degree_cap(&self) -> u32 {
        self.eng.degree_cap()
    }

    /// Graded dimensions [(degree, dim)] up to max_degree.
    fn dims(&self, max_degree: u32) -> PyResult<Vec<(u32, usize)>> {
        self.eng.dim_table(max_degree).map_err(err)
    }

    /// Dimension of one multigraded component of the relatively free algebra.
    fn quotient_dim(&self, counts: Vec<u32>) -> PyResult<usize> {
        let m = MultiDegree::new(counts);
        Ok(self.eng.normalizer(&m).map_err(err)?.quotient_dim())
    }

    /// True iff the expression is an identity of the variety.
    fn is_identity(&self, expr: &str) -> PyResult<bool> {
        let p = parse(expr, self.eng.rank()).map_err(err)?;
        self.eng.is_identity(&p).map_err(err)
    }

    /// Normal form per multihomogeneous component:
    /// [(multidegree, representative, coordinates)].
    fn normal_form(&self, expr: &str) -> PyResult<Vec<(String, String, Vec<String>)>> {
        let p = parse(expr, self.eng.rank()).map_err(err)?;
        let mut out = Vec::new();
        for (m, comp) in p.components(self.eng.rank()) {
            let norm = self.eng.normalizer(&m).map_err(err)?;
            let nf = norm.normal_form(&comp).map_err(err)?;
            out.push((
                m.to_string(),
                veronalt::format(&norm.lift(&nf)),
                nf.coords.iter().map(format_rational).collect(),
            ));
        }
        Ok(out)
    }

    /// Veronese generator report: [(degree, dim_target, dim_generated, new_count)].
    fn veronese_new_generators(
        &self,
        n: u32,
        max_degree: u32,
    ) -> PyResult<Vec<(u32, usize, usize, usize)>> {
        let cfg = VeroneseConfig::new(n, max_degree).map_err(err)?;
        let report = new_generators(&self.eng, &cfg).map_err(err)?;
        Ok(report
            .rows
            .iter()
            .map(|r| (r.degree, r.dim_target, r.dim_generated, r.new_count))
            .collect())
    }

    /// Dimension of the degree-d Veronese component.
    fn veronese_dim(&self, n: u32, d: u32) -> PyResult<usize> {
        let slices = veronese_component(&self.eng, n, d).map_err(err)?;
        Ok(slices.iter().map(|s| s.dim()).sum())
    }

    /// Truncated nucleus dims at one degree: [(multidegree, ambient, dim)].
    fn nucleus_dims(&self, degree: u32, cutoff: u32) -> PyResult<Vec<(String, usize, usize)>> {
        let se = StructureEngine::new(self.eng.clone());
        let slices = se.nucleus_component(degree, cutoff).map_err(err)?;
        Ok(slices
            .iter()
            .map(|s| (s.multidegree.to_string(), s.ambient_dim, s.dim()))
            .collect())
    }

    /// Invariant-subalgebra generator report under the scalar group of the
    /// given order: [(degree, dim_target, dim_generated, new_count)].
    fn scalar_invariant_generators(
        &self,
        order: u32,
        max_degree: u32,
    ) -> PyResult<Vec<(u32, usize, usize, usize)>> {
        let action = LinearGroupAction::scalar(self.eng.rank(), order).map_err(err)?;
        let report =
            veronalt::invariant_generators(&action, &self.eng, max_degree).map_err(err)?;
        Ok(report
            .rows
            .iter()
            .map(|r| (r.degree, r.dim_target, r.dim_generated, r.new_count))
            .collect())
    }
}

/// Zero test on the rank-3 split-octonion representation.
#[pyfunction]
fn is_zero_split(expr: &str) -> PyResult<bool> {
    let p = parse(expr, 3).map_err(err)?;
    veronalt::is_zero_split(&p).map_err(err)
}

/// Residue class from {1..n-1} with at least n members, or None.
#[pyfunction]
fn pigeonhole_witness(n: u32, residues: Vec<u32>) -> PyResult<Option<u32>> {
    veronalt::pigeonhole_witness(n, &residues).map_err(err)
}

/// Parse and reformat an expression (canonical form).
#[pyfunction]
fn canonical(expr: &str, rank: usize) -> PyResult<String> {
    Ok(veronalt::format(&parse(expr, rank).map_err(err)?))
}

#[pymodule]
fn veronalt_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Engine>()?;
    m.add_function(wrap_pyfunction!(is_zero_split, m)?)?;
    m.add_function(wrap_pyfunction!(pigeonhole_witness, m)?)?;
    m.add_function(wrap_pyfunction!(canonical, m)?)?;
    Ok(())
}
