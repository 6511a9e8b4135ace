//! Python bindings. Rationals cross the boundary as `fractions.Fraction`;
//! inputs may be `Fraction`, `int` or strings such as `"-3/4"`.

use kenmotsu_core::catalog;
use kenmotsu_core::deformation::DeformationParams;
use kenmotsu_core::document::{emit_manifold, parse_manifold, LoadedModel, ManifoldDocument};
use kenmotsu_core::frame::Geometry;
use kenmotsu_core::rational::{format_rational, parse_rational};
use kenmotsu_core::report::{Quantity, Report};
use kenmotsu_core::validation::Status;
use kenmotsu_core::workbench::{self, PotentialSpec};
use kenmotsu_core::Rational;
use ndarray::{Array2, Axis};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyKeyError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList, PyString};

create_exception!(kenmotsu, KenmotsuError, PyException, "Invalid input to the workbench.");

fn err(e: kenmotsu_core::Error) -> PyErr {
    KenmotsuError::new_err(e.to_string())
}

fn rational_from(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(obj.str()?.to_str()?).map_err(err)
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((format_rational(r),))
}

fn fraction_matrix<'py>(py: Python<'py>, a: &Array2<Rational>) -> PyResult<Bound<'py, PyList>> {
    let rows = a
        .rows()
        .into_iter()
        .map(|row| PyList::new(py, row.iter().map(|x| fraction(py, x)).collect::<PyResult<Vec<_>>>()?))
        .collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, rows)
}

fn potential_from(obj: Option<&Bound<'_, PyAny>>) -> PyResult<PotentialSpec> {
    let Some(obj) = obj else {
        return Ok(PotentialSpec::Xi);
    };
    if let Ok(s) = obj.cast::<PyString>() {
        return s.to_str()?.parse().map_err(err);
    }
    let parts = obj.try_iter()?.map(|x| rational_from(&x?)).collect::<PyResult<Vec<_>>>()?;
    Ok(PotentialSpec::Components(parts))
}

/// A frame model, optionally with an almost contact structure.
#[pyclass(name = "Manifold", module = "kenmotsu", frozen)]
struct PyManifold {
    model: LoadedModel,
}

#[pymethods]
impl PyManifold {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let model = parse_manifold(text).and_then(|d| d.to_model()).map_err(err)?;
        Ok(PyManifold { model })
    }

    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        match catalog::load(name) {
            Some(model) => Ok(PyManifold { model: model.map_err(err)? }),
            None => Err(PyKeyError::new_err(name.to_string())),
        }
    }

    #[getter]
    fn name(&self) -> &str {
        &self.model.name
    }

    #[getter]
    fn dim(&self) -> usize {
        self.model.manifold.dim()
    }

    #[getter]
    fn has_contact(&self) -> bool {
        self.model.contact.is_some()
    }

    fn to_json(&self) -> String {
        let m = &self.model;
        emit_manifold(&ManifoldDocument::from_model(&m.name, &m.manifold, m.contact.as_ref(), None))
    }

    fn metric<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        fraction_matrix(py, self.model.manifold.metric())
    }

    fn geometry(&self) -> PyResult<PyGeometry> {
        Ok(PyGeometry { geo: Geometry::compute(self.model.manifold.clone()).map_err(err)? })
    }

    fn validate(&self) -> PyResult<PyReport> {
        workbench::validate(&self.model).map(PyReport::from).map_err(err)
    }

    fn analyze(&self) -> PyResult<PyReport> {
        workbench::analyze(&self.model).map(PyReport::from).map_err(err)
    }

    /// `potential` is `"xi"` (the default), a comma-separated string or a sequence.
    #[pyo3(signature = (p, potential = None, gradient = false))]
    fn soliton(
        &self,
        p: &Bound<'_, PyAny>,
        potential: Option<&Bound<'_, PyAny>>,
        gradient: bool,
    ) -> PyResult<PyReport> {
        let p = rational_from(p)?;
        let v = potential_from(potential)?;
        workbench::soliton(&self.model, &v, &p, gradient).map(PyReport::from).map_err(err)
    }

    #[pyo3(signature = (a, b, potential = None, p = None))]
    fn deform(
        &self,
        a: &Bound<'_, PyAny>,
        b: &Bound<'_, PyAny>,
        potential: Option<&Bound<'_, PyAny>>,
        p: Option<&Bound<'_, PyAny>>,
    ) -> PyResult<PyReport> {
        let params = DeformationParams::new(rational_from(a)?, rational_from(b)?).map_err(err)?;
        let p = match p {
            Some(p) => rational_from(p)?,
            None => Rational::from_integer(0.into()),
        };
        let v = potential.map(|v| potential_from(Some(v))).transpose()?;
        workbench::deform(&self.model, &params, v.as_ref().map(|v| (v, &p))).map(PyReport::from).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Manifold({:?}, dim={})", self.model.name, self.model.manifold.dim())
    }
}

/// Levi-Civita data of a frame model.
#[pyclass(name = "Geometry", module = "kenmotsu", frozen)]
struct PyGeometry {
    geo: Geometry,
}

#[pymethods]
impl PyGeometry {
    /// `connection()[i][j][k]` is the `e_k` component of `∇_{e_i} e_j` (0-based).
    fn connection<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let blocks = (0..self.geo.dim())
            .map(|i| fraction_matrix(py, &self.geo.connection.0.index_axis(Axis(0), i).to_owned()))
            .collect::<PyResult<Vec<_>>>()?;
        PyList::new(py, blocks)
    }

    fn ricci<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        fraction_matrix(py, &self.geo.ricci.0)
    }

    fn ricci_operator<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        fraction_matrix(py, &self.geo.ricci_operator.0)
    }

    #[getter]
    fn scalar_curvature<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.geo.scalar_curvature)
    }
}

#[pyclass(name = "Report", module = "kenmotsu", frozen)]
struct PyReport {
    report: Report,
}

impl From<Report> for PyReport {
    fn from(report: Report) -> Self {
        PyReport { report }
    }
}

#[pymethods]
impl PyReport {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Report::from_json(text).map(PyReport::from).map_err(err)
    }

    #[getter]
    fn passed(&self) -> bool {
        self.report.passed
    }

    #[getter]
    fn exit_code(&self) -> i32 {
        self.report.exit_code()
    }

    #[getter]
    fn labels<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (k, v) in &self.report.labels {
            d.set_item(k, v)?;
        }
        Ok(d)
    }

    /// `(section, name, status, informational)` tuples in report order.
    #[getter]
    fn checks(&self) -> Vec<(String, String, &'static str, bool)> {
        self.report
            .checks
            .iter()
            .map(|c| {
                let status = match c.check.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                    Status::NotApplicable => "not_applicable",
                };
                (c.section.clone(), c.check.name.clone(), status, c.check.informational)
            })
            .collect()
    }

    fn quantity_names(&self) -> Vec<String> {
        self.report.quantities.keys().cloned().collect()
    }

    /// A `Fraction`, a list of them, or a list of rows.
    fn quantity<'py>(&self, py: Python<'py>, name: &str) -> PyResult<Bound<'py, PyAny>> {
        let q = self.report.quantities.get(name).ok_or_else(|| PyKeyError::new_err(name.to_string()))?;
        Ok(match q {
            Quantity::Scalar(x) => fraction(py, &x.0)?,
            Quantity::Vector(v) => {
                PyList::new(py, v.iter().map(|x| fraction(py, &x.0)).collect::<PyResult<Vec<_>>>()?)?.into_any()
            }
            Quantity::Matrix(rows) => {
                let rows = rows
                    .iter()
                    .map(|r| PyList::new(py, r.iter().map(|x| fraction(py, &x.0)).collect::<PyResult<Vec<_>>>()?))
                    .collect::<PyResult<Vec<_>>>()?;
                PyList::new(py, rows)?.into_any()
            }
        })
    }

    fn to_json(&self) -> String {
        self.report.to_json()
    }

    fn to_text(&self) -> String {
        self.report.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Report({} {}, passed={})", self.report.command, self.report.subject, self.report.passed)
    }
}

#[pyfunction]
fn catalog_names() -> Vec<&'static str> {
    catalog::names().collect()
}

#[pymodule]
fn kenmotsu(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyManifold>()?;
    m.add_class::<PyGeometry>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add("KenmotsuError", m.py().get_type::<KenmotsuError>())?;
    Ok(())
}
