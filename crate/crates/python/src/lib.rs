//! Python bindings. Exact rationals cross the boundary as
//! `fractions.Fraction`.

use std::collections::BTreeMap;

use gemd::analysis::{self, EmdHistogram, GradeTable, DEFAULT_ENUMERATION_BUDGET};
use gemd::cost::{build_cost_array, CostArray, DEFAULT_DENSE_CAP};
use gemd::monge::{check_full, check_planes, MongeVerdict};
use gemd::{genfunc, transport, BinShape, JointArray, Rational};
use num_bigint::BigInt;
use pyo3::exceptions::{PyMemoryError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: gemd::Error) -> PyErr {
    match e {
        gemd::Error::CapacityExceeded { .. } => PyMemoryError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.numer().clone(), r.denom().clone()))
}

fn shape(sizes: Vec<usize>) -> PyResult<BinShape> {
    BinShape::new(sizes).map_err(err)
}

type Witness = Option<(Vec<usize>, Vec<usize>)>;

fn verdict(v: MongeVerdict) -> (bool, Witness) {
    (
        v.holds,
        v.witness.map(|(x, y)| (x.into_vec(), y.into_vec())),
    )
}

fn plan(j: &JointArray) -> Vec<(Vec<usize>, u64)> {
    j.support()
        .iter()
        .map(|(m, w)| (m.coords().to_vec(), *w))
        .collect()
}

/// A tuple of histograms sharing one total mass.
#[pyclass(name = "DistTuple", module = "gemd", frozen)]
pub struct PyDistTuple {
    inner: transport::DistTuple,
}

#[pymethods]
impl PyDistTuple {
    #[new]
    fn new(rows: Vec<Vec<u64>>) -> PyResult<Self> {
        Ok(Self {
            inner: transport::DistTuple::from_rows(rows).map_err(err)?,
        })
    }

    #[getter]
    fn members(&self) -> Vec<Vec<u64>> {
        self.inner
            .members()
            .iter()
            .map(|c| c.bins().to_vec())
            .collect()
    }

    #[getter]
    fn mass(&self) -> u64 {
        self.inner.mass()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn shape(&self) -> Vec<usize> {
        self.inner.shape().sizes().to_vec()
    }

    fn discrete_emd(&self) -> u64 {
        transport::discrete_emd(&self.inner)
    }

    fn continuous_emd<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &transport::continuous_emd(&self.inner).map_err(err)?)
    }

    fn unit_normalized_emd<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &transport::unit_normalized_emd(&self.inner).map_err(err)?)
    }

    /// Exhaustive search; only for small tuples.
    fn brute_force_emd(&self) -> PyResult<u64> {
        transport::brute_force_emd(&self.inner).map_err(err)
    }

    fn pairwise_emd_sum(&self) -> PyResult<u64> {
        transport::pairwise_emd_sum(&self.inner).map_err(err)
    }

    /// Optimal plan from the word matrix as `[(cell, weight), ...]`,
    /// cells 1-based.
    fn rsk_plan(&self) -> Vec<(Vec<usize>, u64)> {
        plan(&transport::rsk_joint(&self.inner))
    }

    fn greedy_plan(&self) -> Vec<(Vec<usize>, u64)> {
        plan(&transport::greedy_joint(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!("DistTuple({:?})", self.members())
    }
}

#[pyfunction]
fn cost(m: Vec<usize>) -> u64 {
    gemd::cost::cost(&m)
}

#[pyfunction]
fn cost_range(m: Vec<usize>) -> u64 {
    gemd::cost::cost_range(&m)
}

#[pyfunction]
fn max_emd(d: usize, n: usize) -> u64 {
    transport::max_emd(d, n)
}

#[pyfunction]
fn continuous_expected(py: Python<'_>, sizes: Vec<usize>) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &genfunc::continuous_expected(&shape(sizes)?))
}

#[pyfunction]
fn unit_normalized_expected(py: Python<'_>, d: usize, n: usize) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &genfunc::unit_normalized_expected(d, n).map_err(err)?)
}

#[pyfunction]
fn discrete_expected(py: Python<'_>, sizes: Vec<usize>, s: u64) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &genfunc::discrete_expected(&shape(sizes)?, s).map_err(err)?)
}

/// Coefficients of the Newcomb polynomial, constant term first.
#[pyfunction]
fn w_poly(sizes: Vec<usize>) -> PyResult<Vec<BigInt>> {
    Ok(genfunc::w_poly(&shape(sizes)?)
        .coeffs()
        .iter()
        .map(|c| c.to_integer())
        .collect())
}

/// Monge check of the built-in cost array on `[n]^d`.
#[pyfunction]
#[pyo3(signature = (d, n, full = false))]
fn monge_builtin(d: usize, n: usize, full: bool) -> PyResult<(bool, Witness)> {
    let a = build_cost_array(&BinShape::uniform(d, n).map_err(err)?, DEFAULT_DENSE_CAP)
        .map_err(err)?;
    Ok(verdict(if full { check_full(&a) } else { check_planes(&a) }))
}

/// Monge check of a row-major integer array.
#[pyfunction]
#[pyo3(signature = (entries, sizes, full = false))]
fn monge_check(entries: Vec<i64>, sizes: Vec<usize>, full: bool) -> PyResult<(bool, Witness)> {
    let a = CostArray::from_entries(shape(sizes)?, entries).map_err(err)?;
    Ok(verdict(if full { check_full(&a) } else { check_planes(&a) }))
}

/// `{emd: count}` over every d-tuple of mass `s` on `n` bins.
#[pyfunction]
#[pyo3(signature = (d, n, s, budget = None, via_genfunc = false))]
fn emd_histogram(
    d: usize,
    n: usize,
    s: u64,
    budget: Option<u128>,
    via_genfunc: bool,
) -> PyResult<BTreeMap<u64, u64>> {
    let h = if via_genfunc {
        analysis::histogram_from_genfunc(d, n, s)
    } else {
        analysis::emd_histogram(d, n, s, budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET))
    };
    Ok(h.map_err(err)?.counts)
}

/// Population skewness of an `{emd: count}` histogram; `None` at zero
/// variance.
#[pyfunction]
fn skewness(counts: BTreeMap<u64, u64>) -> Option<f64> {
    let h = EmdHistogram {
        d: 0,
        n: 0,
        s: 0,
        counts,
    };
    let sk = analysis::skewness(&h);
    (!sk.degenerate).then_some(sk.value)
}

/// EMD report for grade-table CSV text.
#[pyfunction]
fn grade_report<'py>(py: Python<'py>, csv_text: &str) -> PyResult<Bound<'py, PyDict>> {
    let table = GradeTable::parse_csv(csv_text).map_err(err)?;
    let r = analysis::grade_report(&table).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("labels", &table.labels)?;
    let sections: Vec<(String, Vec<u64>)> = table
        .sections
        .iter()
        .zip(r.tuple.members())
        .map(|((name, _), c)| (name.clone(), c.bins().to_vec()))
        .collect();
    out.set_item("sections", sections)?;
    out.set_item("mass", r.mass)?;
    out.set_item("discrete", r.discrete)?;
    out.set_item("continuous", fraction(py, &r.continuous)?)?;
    out.set_item("unit_normalized", fraction(py, &r.unit_normalized)?)?;
    let optional = |v: &Option<Rational>| v.as_ref().map(|x| fraction(py, x)).transpose();
    out.set_item("expected_normalized", optional(&r.expected_normalized)?)?;
    out.set_item("ratio_to_expected", optional(&r.ratio_to_expected)?)?;
    out.set_item("warnings", r.warnings)?;
    Ok(out)
}

#[pymodule(name = "gemd")]
mod gemd_py {
    #[pymodule_export]
    use super::{
        continuous_expected, cost, cost_range, discrete_expected, emd_histogram, grade_report,
        max_emd, monge_builtin, monge_check, skewness, unit_normalized_expected, w_poly,
        PyDistTuple,
    };
}
