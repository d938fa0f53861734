//! Python bindings. The module is importable as `endolab`.

use ::endolab::dl_spectra::{character_table_dixon, classical_table_oracle, conjugacy_classes, DlContext};
use ::endolab::endoscopy::{endoscopic_from_kappa, enumerate_split_elliptic, estimate_diagram_check, EndoscopicTriple as CoreTriple};
use ::endolab::finite_lie::{build_finite_group, Kind};
use ::endolab::galois_tori::{component_group_pi0, norm_kernel_quotient, sln_kappa_group, tn_pairing, TwistedTorus as CoreTorus};
use ::endolab::padic::{self, quasi_log_bijection_check, topological_jordan, Place, TruncatedMatrix};
use ::endolab::root_datum::{build_root_datum, parse_type, Isogeny, RootDatum as CoreDatum};
use num_rational::Rational64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(frozen, module = "endolab")]
struct RootDatum {
    inner: CoreDatum,
}

#[pymethods]
impl RootDatum {
    #[new]
    #[pyo3(signature = (cartan_type, isogeny = "sc"))]
    fn new(cartan_type: &str, isogeny: &str) -> PyResult<Self> {
        let (series, rank) = parse_type(cartan_type).map_err(value_err)?;
        let inner = build_root_datum(series, rank, Isogeny::parse(isogeny).map_err(value_err)?).map_err(value_err)?;
        Ok(RootDatum { inner })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.semisimple_rank()
    }

    #[getter]
    fn cartan_type(&self) -> String {
        self.inner.cartan_type()
    }

    fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.inner.cartan().to_vec()
    }

    fn num_roots(&self) -> usize {
        self.inner.roots().len()
    }

    /// Split elliptic endoscopic triples, one per orbit of the center on the extended diagram.
    fn endoscopic_triples(&self) -> PyResult<Vec<EndoscopicTriple>> {
        Ok(enumerate_split_elliptic(&self.inner).map_err(value_err)?.into_iter().map(EndoscopicTriple::from).collect())
    }

    /// Triple attached to `kappa` given as strings like "1/2".
    fn triple_from_kappa(&self, kappa: Vec<String>) -> PyResult<EndoscopicTriple> {
        let kappa: Vec<Rational64> = kappa.iter().map(|s| s.parse().map_err(|_| value_err(format!("bad rational {s:?}")))).collect::<PyResult<_>>()?;
        endoscopic_from_kappa(&self.inner, &kappa).map(EndoscopicTriple::from).map_err(value_err)
    }

    /// `(center_order, [(orbit, ord_s)], consistent)` for the large non-special orbits.
    fn estimate(&self) -> PyResult<(u64, Vec<(Vec<usize>, u64)>, bool)> {
        let r = estimate_diagram_check(&self.inner).map_err(value_err)?;
        Ok((r.center_order, r.large_nonspecial.into_iter().map(|o| (o.orbit, o.ord_s)).collect(), r.consistent))
    }

    fn __repr__(&self) -> String {
        format!("RootDatum({})", self.inner.type_name())
    }
}

#[pyclass(frozen, get_all, module = "endolab")]
struct EndoscopicTriple {
    orbit: Vec<usize>,
    marks: Vec<u64>,
    ord_s: u64,
    h_type: String,
    lambda_torsion: Option<Vec<u64>>,
    elliptic: bool,
}

impl From<CoreTriple> for EndoscopicTriple {
    fn from(t: CoreTriple) -> Self {
        EndoscopicTriple {
            orbit: t.vertex_orbit,
            marks: t.marks,
            ord_s: t.ord_s,
            h_type: t.h_type,
            lambda_torsion: t.lambda.map(|l| l.torsion),
            elliptic: t.elliptic,
        }
    }
}

#[pymethods]
impl EndoscopicTriple {
    fn __repr__(&self) -> String {
        format!("EndoscopicTriple(orbit={:?}, H={}, ord_s={})", self.orbit, self.h_type, self.ord_s)
    }
}

/// Torus split by an unramified extension, given by the Frobenius action on cocharacters.
#[pyclass(frozen, module = "endolab")]
struct TwistedTorus {
    inner: CoreTorus,
}

#[pymethods]
impl TwistedTorus {
    #[new]
    fn new(frobenius: Vec<Vec<i64>>) -> PyResult<Self> {
        Ok(TwistedTorus { inner: CoreTorus::from_i64_rows(&frobenius).map_err(value_err)? })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Invariant factors of H^1.
    fn h1(&self) -> PyResult<Vec<u64>> {
        Ok(component_group_pi0(&self.inner).map_err(value_err)?.h1.torsion)
    }

    fn norm_kernel_quotient(&self) -> Vec<u64> {
        norm_kernel_quotient(&self.inner).torsion
    }

    /// Tate-Nakayama pairing as a cyclotomic number in display form.
    fn pairing(&self, inv: Vec<u64>, kappa: Vec<u64>) -> PyResult<String> {
        let data = component_group_pi0(&self.inner).map_err(value_err)?;
        Ok(tn_pairing(&data, &inv, &kappa).map_err(value_err)?.to_string())
    }
}

/// `(closed, invariant factors of the generated group)`.
#[pyfunction]
fn sln_kappa(n: usize, m: usize, degrees: Vec<usize>) -> PyResult<(bool, Vec<u64>)> {
    let r = sln_kappa_group(n, m, &degrees).map_err(value_err)?;
    Ok((r.closed, r.group.torsion))
}

fn kind(group: &str) -> PyResult<Kind> {
    Kind::parse(group).map_err(value_err)
}

/// `(cases, passes, failures)` of the Springer sweep.
#[pyfunction]
#[pyo3(signature = (group, q, all_unipotent = true))]
fn springer_verify(py: Python<'_>, group: &str, q: u64, all_unipotent: bool) -> PyResult<(usize, usize, usize)> {
    let kind = kind(group)?;
    let r = py
        .detach(|| DlContext::new(kind, q).and_then(|c| c.springer_sweep(all_unipotent)))
        .map_err(value_err)?;
    Ok((r.cases, r.passes, r.failures.len()))
}

/// `(cases, mixed_cases, failures)` of the Deligne-Lusztig reduction sweep.
#[pyfunction]
fn jordan_reduction_verify(py: Python<'_>, group: &str, q: u64) -> PyResult<(usize, usize, usize)> {
    let kind = kind(group)?;
    let r = py.detach(|| DlContext::new(kind, q).and_then(|c| c.jordan_sweep())).map_err(value_err)?;
    Ok((r.cases, r.mixed_cases, r.failures.len()))
}

/// `(class labels, rows)` with values in display form; method is "dixon" or "classical".
#[pyfunction]
#[pyo3(signature = (group, q, method = "dixon"))]
fn character_table(group: &str, q: u64, method: &str) -> PyResult<(Vec<String>, Vec<Vec<String>>)> {
    let g = build_finite_group(kind(group)?, q).map_err(value_err)?;
    let table = match method {
        "dixon" => character_table_dixon(&g).map_err(value_err)?,
        "classical" => classical_table_oracle(&g, &conjugacy_classes(&g)).map_err(value_err)?.table,
        _ => return Err(value_err(format!("unknown method {method:?}"))),
    };
    let rows = table.characters.iter().map(|c| c.values.iter().map(|v| v.to_string()).collect()).collect();
    Ok((table.classes.labels.clone(), rows))
}

/// `(delta, u, order_r)` with matrices as rows of integers in `[0, p^k)`.
#[pyfunction]
fn tjd(p: u64, k: u32, matrix: Vec<Vec<i64>>) -> PyResult<(Vec<Vec<String>>, Vec<Vec<String>>, u64)> {
    let gamma = TruncatedMatrix::new(p, k, &matrix).map_err(value_err)?;
    let j = topological_jordan(&gamma).map_err(value_err)?;
    if !j.verify(&gamma) {
        return Err(PyRuntimeError::new_err("decomposition failed its post-conditions"));
    }
    let show = |m: &TruncatedMatrix| m.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    Ok((show(&j.delta), show(&j.u), j.order_r))
}

/// `(a, b)_v` for rationals given as strings; `place` is a prime or "inf".
#[pyfunction]
fn hilbert_symbol(a: &str, b: &str, place: &str) -> PyResult<i8> {
    let v: Place = place.parse().map_err(value_err)?;
    let a = padic::parse_rational(a).map_err(value_err)?;
    let b = padic::parse_rational(b).map_err(value_err)?;
    padic::hilbert_symbol(&a, &b, v).map_err(value_err)
}

#[pyfunction]
fn hilbert_product(a: &str, b: &str) -> PyResult<i8> {
    let a = padic::parse_rational(a).map_err(value_err)?;
    let b = padic::parse_rational(b).map_err(value_err)?;
    padic::hilbert_product(&a, &b).map_err(value_err)
}

#[pyfunction]
fn quasi_log_bijective(group: &str, p: u64, k: u32) -> PyResult<bool> {
    Ok(quasi_log_bijection_check(kind(group)?, p, k).map_err(value_err)?.bijective())
}

#[pymodule]
#[pyo3(name = "endolab")]
fn endolab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<RootDatum>()?;
    m.add_class::<EndoscopicTriple>()?;
    m.add_class::<TwistedTorus>()?;
    m.add_function(wrap_pyfunction!(sln_kappa, m)?)?;
    m.add_function(wrap_pyfunction!(springer_verify, m)?)?;
    m.add_function(wrap_pyfunction!(jordan_reduction_verify, m)?)?;
    m.add_function(wrap_pyfunction!(character_table, m)?)?;
    m.add_function(wrap_pyfunction!(tjd, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_product, m)?)?;
    m.add_function(wrap_pyfunction!(quasi_log_bijective, m)?)?;
    Ok(())
}
