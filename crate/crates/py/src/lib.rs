//! Python bindings: rings, ideals, the epsilon pipeline and the job runner.

use parseval_core::field::FieldConfig;
use parseval_core::groebner::IdealBasis;
use parseval_core::job::{self, RunOptions};
use parseval_core::models;
use parseval_core::parseval::ParsevalContext;
use parseval_core::poly::{
    monomials_of_degree, parse_monomial, parse_polynomial, format_monomial, PolyRing, Polynomial,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A polynomial ring over `F_{p^e}` with named variables and grevlex order.
#[pyclass(name = "Ring", from_py_object)]
#[derive(Clone)]
struct PyRing {
    inner: parseval_core::poly::Ring,
}

#[pymethods]
impl PyRing {
    #[new]
    #[pyo3(signature = (p, vars, e = 1))]
    fn new(p: u64, vars: Vec<String>, e: usize) -> PyResult<Self> {
        let field = FieldConfig::new(p, e).map_err(err)?;
        Ok(PyRing {
            inner: PolyRing::new(field, vars),
        })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.field().characteristic()
    }

    #[getter]
    fn e(&self) -> usize {
        self.inner.field().extension_degree()
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.inner.vars().to_vec()
    }

    /// Parse, normalize and render a polynomial in this ring.
    fn normalize(&self, text: &str) -> PyResult<String> {
        Ok(parse_polynomial(&self.inner, text).map_err(err)?.to_string())
    }

    fn add(&self, a: &str, b: &str) -> PyResult<String> {
        let fa = parse_polynomial(&self.inner, a).map_err(err)?;
        let fb = parse_polynomial(&self.inner, b).map_err(err)?;
        Ok(fa.add(&fb).to_string())
    }

    fn mul(&self, a: &str, b: &str) -> PyResult<String> {
        let fa = parse_polynomial(&self.inner, a).map_err(err)?;
        let fb = parse_polynomial(&self.inner, b).map_err(err)?;
        Ok(fa.mul(&fb).to_string())
    }

    fn monomials_of_degree(&self, d: u32) -> Vec<String> {
        monomials_of_degree(&self.inner, d)
            .iter()
            .map(|m| format_monomial(self.inner.vars(), m))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Ring(p={}, e={}, vars={:?})",
            self.p(),
            self.e(),
            self.vars()
        )
    }
}

/// An ordered homogeneous generating set with its Groebner machinery.
#[pyclass(name = "Ideal")]
struct PyIdeal {
    ring: parseval_core::poly::Ring,
    ideal: IdealBasis,
    gb: parseval_core::groebner::IdealGroebner,
}

#[pymethods]
impl PyIdeal {
    #[new]
    fn new(ring: PyRing, generators: Vec<String>) -> PyResult<Self> {
        let polys: Vec<Polynomial> = generators
            .iter()
            .map(|s| parse_polynomial(&ring.inner, s).map_err(err))
            .collect::<PyResult<_>>()?;
        let ideal = IdealBasis::new(&ring.inner, polys).map_err(err)?;
        let gb = ideal.groebner();
        Ok(PyIdeal {
            ring: ring.inner,
            ideal,
            gb,
        })
    }

    fn groebner_basis(&self) -> Vec<String> {
        self.gb
            .basis_polynomials()
            .iter()
            .map(|p| p.to_string())
            .collect()
    }

    fn normal_form(&self, f: &str) -> PyResult<String> {
        let poly = parse_polynomial(&self.ring, f).map_err(err)?;
        Ok(self.gb.normal_form(&poly).to_string())
    }

    fn contains(&self, f: &str) -> PyResult<bool> {
        let poly = parse_polynomial(&self.ring, f).map_err(err)?;
        Ok(self.gb.contains(&poly))
    }

    fn dimension_in_degree(&self, d: u32) -> usize {
        self.gb.dimension_in_degree(d)
    }

    fn is_artinian(&self) -> bool {
        self.gb.is_artinian()
    }

    fn socle_degree(&self) -> PyResult<u32> {
        self.gb.socle_degree().map_err(err)
    }

    /// Betti numbers of the minimal free resolution of the quotient.
    fn betti_numbers(&self) -> PyResult<Vec<usize>> {
        let f = parseval_core::complexes::minimal_free_resolution(&self.ideal).map_err(err)?;
        Ok(f.betti_numbers())
    }
}

/// Run the epsilon pipeline on an ideal with `vol(m0) = 1` and return a dict
/// with `s`, `s_hat`, `nu`, `epsilon` (normal form), the lemma checks and the
/// per-monomial identity results.
#[pyfunction]
fn epsilon_pipeline(py: Python<'_>, ideal: &PyIdeal, vol_monomial: &str) -> PyResult<Py<PyDict>> {
    let ring = &ideal.ring;
    let m0 = parse_monomial(ring, vol_monomial).map_err(err)?;
    let ctx = ParsevalContext::new(ideal.ideal.clone(), &m0, &ring.field().one()).map_err(err)?;
    let eps = ctx.epsilon_homological().map_err(err)?;
    let lemmas = ctx.check_lemmas(&eps);

    let out = PyDict::new(py);
    out.set_item("s", ctx.socle_degree())?;
    out.set_item("s_hat", ctx.socle_degree_hat())?;
    out.set_item("nu", ctx.nu().to_string())?;
    out.set_item(
        "epsilon",
        ctx.bracket_groebner().normal_form(&eps.epsilon).to_string(),
    )?;
    let lem = PyDict::new(py);
    lem.set_item("vol_nu_is_one", lemmas.vol_nu_is_one)?;
    lem.set_item("eps_annihilates_ideal", lemmas.eps_annihilates_ideal)?;
    lem.set_item("hat_vol_eps_nu_is_one", lemmas.hat_vol_eps_nu_is_one)?;
    lem.set_item("eps_nu_congruence", lemmas.eps_nu_congruence)?;
    out.set_item("lemmas", lem)?;

    let mut identity = Vec::new();
    for u in ctx.vol().monomials() {
        let w = Polynomial::from_term(ring, u.clone(), ring.field().one());
        let check = ctx.verify_identity(&eps, &w).map_err(err)?;
        identity.push((w.to_string(), check.pass));
    }
    out.set_item("identity", identity)?;
    Ok(out.into())
}

/// Evaluate both sides of the identity for one `w`; returns
/// `(lhs, rhs, pass)` with field elements serialized as strings.
#[pyfunction]
fn verify_identity(
    ideal: &PyIdeal,
    vol_monomial: &str,
    w: &str,
) -> PyResult<(String, String, bool)> {
    let ring = &ideal.ring;
    let m0 = parse_monomial(ring, vol_monomial).map_err(err)?;
    let ctx = ParsevalContext::new(ideal.ideal.clone(), &m0, &ring.field().one()).map_err(err)?;
    let eps = ctx.epsilon_homological().map_err(err)?;
    let wp = parse_polynomial(ring, w).map_err(err)?;
    let check = ctx.verify_identity(&eps, &wp).map_err(err)?;
    Ok((check.lhs.serialize(), check.rhs.serialize(), check.pass))
}

/// Parse and run a job description; returns `(exit_code, report_json)`.
#[pyfunction]
#[pyo3(signature = (text, seed = None))]
fn run_job(text: &str, seed: Option<u64>) -> PyResult<(i32, String)> {
    let spec = job::parse_job(text).map_err(err)?;
    let opts = RunOptions {
        seed_override: seed,
        corrupt_epsilon: false,
    };
    let outcome = job::run_job(&spec, &opts);
    let report = serde_json::to_string(&outcome.report).map_err(err)?;
    Ok((outcome.exit_code, report))
}

/// The job text for a builtin fixture (`nonci`, `ci-xy`, `simplex-boundary`,
/// `octahedron`, `square`).
#[pyfunction]
fn fixture_job(name: &str) -> PyResult<String> {
    Ok(job::fixture_job(name).map_err(err)?.render())
}

/// Vertex names and facets of a builtin sphere, for inspection from Python.
#[pyfunction]
fn builtin_sphere(name: &str) -> PyResult<(Vec<String>, Vec<Vec<usize>>)> {
    let sphere = match name {
        "simplex-boundary" => models::OrientedSimplicialSphere::simplex_boundary(),
        "octahedron" => models::OrientedSimplicialSphere::octahedron(),
        "square" => models::OrientedSimplicialSphere::square(),
        other => return Err(PyValueError::new_err(format!("unknown sphere '{}'", other))),
    };
    Ok((sphere.vertices().to_vec(), sphere.facets().to_vec()))
}

#[pymodule]
fn parseval_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyIdeal>()?;
    m.add_function(wrap_pyfunction!(epsilon_pipeline, m)?)?;
    m.add_function(wrap_pyfunction!(verify_identity, m)?)?;
    m.add_function(wrap_pyfunction!(run_job, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_job, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_sphere, m)?)?;
    Ok(())
}
