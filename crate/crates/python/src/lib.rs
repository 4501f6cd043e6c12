//! Python bindings. The extension module is named `divcrit`.

use divcrit::params::{self, DEFAULT_Q_MAX};
use divcrit::rules::{self, Termination};
use divcrit::tables::{self, PaperTable, TableFormat};
use divcrit::verify::{self, Method};
use divcrit::{Error, SoundnessClass};
use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(
    divcrit,
    DivcritError,
    PyValueError,
    "Invalid input to a divcrit operation."
);

fn err(e: Error) -> PyErr {
    DivcritError::new_err(e.to_string())
}

fn value_err(msg: impl Into<String>) -> PyErr {
    DivcritError::new_err(msg.into())
}

fn soundness_name(class: SoundnessClass) -> &'static str {
    match class {
        SoundnessClass::Full => "full",
        SoundnessClass::ForwardOnly { .. } => "forward-only",
    }
}

/// A signed numeral in a base between 2 and 36.
#[pyclass(
    name = "Numeral",
    module = "divcrit",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyNumeral(pub divcrit::Numeral);

#[pymethods]
impl PyNumeral {
    #[new]
    #[pyo3(signature = (text, base = 10))]
    fn new(text: &str, base: u32) -> PyResult<Self> {
        divcrit::Numeral::parse(text, base).map(Self).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (value, base = 10))]
    fn from_value(value: BigInt, base: u32) -> PyResult<Self> {
        divcrit::Numeral::from_value(&value, base)
            .map(Self)
            .map_err(err)
    }

    /// Digits are little-endian: units first.
    #[staticmethod]
    #[pyo3(signature = (digits, base = 10, negative = false))]
    fn from_digits(digits: Vec<u32>, base: u32, negative: bool) -> PyResult<Self> {
        let digits = digits
            .into_iter()
            .map(|d| u8::try_from(d).map_err(|_| value_err(format!("digit {d} out of range"))))
            .collect::<PyResult<Vec<u8>>>()?;
        divcrit::Numeral::from_digits(base, negative, digits)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (digit, degree, base = 10))]
    fn repdigit(digit: u8, degree: usize, base: u32) -> PyResult<Self> {
        divcrit::Numeral::repdigit(digit, degree, base)
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn base(&self) -> u32 {
        self.0.base()
    }

    #[getter]
    fn negative(&self) -> bool {
        self.0.is_negative()
    }

    #[getter]
    fn digits(&self) -> Vec<u32> {
        // a Vec<u8> would surface as `bytes`
        self.0.digits().iter().map(|&d| u32::from(d)).collect()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn value(&self) -> BigInt {
        self.0.to_value()
    }

    fn __int__(&self) -> BigInt {
        self.0.to_value()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Numeral('{}', base={})", self.0, self.0.base())
    }
}

/// Divisibility parameters `(w, u)` with `w*t - u = q*n`.
#[pyclass(
    name = "ParameterSet",
    module = "divcrit",
    frozen,
    eq,
    hash,
    from_py_object
)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PyParameterSet(pub divcrit::ParameterSet);

#[pymethods]
impl PyParameterSet {
    /// The multiplier `q` is derived from `w*t - u`.
    #[new]
    fn new(divisor: u64, base: u32, w: i64, u: i64) -> PyResult<Self> {
        divcrit::ParameterSet::from_pair(divisor, base, w, u)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn with_multiplier(divisor: u64, base: u32, q: i64, w: i64, u: i64) -> PyResult<Self> {
        divcrit::ParameterSet::new(divisor, base, q, w, u)
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn divisor(&self) -> u64 {
        self.0.divisor()
    }

    #[getter]
    fn base(&self) -> u32 {
        self.0.base()
    }

    #[getter]
    fn q(&self) -> i64 {
        self.0.multiplier()
    }

    #[getter]
    fn multiple(&self) -> i64 {
        self.0.multiple()
    }

    #[getter]
    fn w(&self) -> i64 {
        self.0.w()
    }

    #[getter]
    fn u(&self) -> i64 {
        self.0.u()
    }

    /// `gcd(|w|, n) == 1`.
    #[getter]
    fn sound(&self) -> bool {
        self.0.is_sound()
    }

    #[getter]
    fn rule(&self) -> String {
        tables::rule_text(self.0.u(), self.0.w())
    }

    fn negated(&self) -> Self {
        Self(self.0.negated())
    }

    fn canonical(&self) -> Self {
        Self(self.0.canonical())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "ParameterSet(divisor={}, base={}, w={}, u={})",
            self.0.divisor(),
            self.0.base(),
            self.0.w(),
            self.0.u()
        )
    }
}

#[pyclass(name = "ReductionTrace", module = "divcrit", frozen, get_all)]
pub struct PyReductionTrace {
    params: PyParameterSet,
    values: Vec<BigInt>,
    /// One of "below-threshold", "fixed-point", "no-decrease", "iteration-cap".
    termination: &'static str,
}

#[pymethods]
impl PyReductionTrace {
    #[getter]
    fn steps(&self) -> usize {
        self.values.len() - 1
    }

    #[getter]
    fn last(&self) -> BigInt {
        self.values.last().cloned().unwrap_or_default()
    }

    fn __repr__(&self) -> String {
        let values: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        format!(
            "ReductionTrace(values=[{}], termination='{}')",
            values.join(", "),
            self.termination
        )
    }
}

#[pyclass(name = "EquivalenceReport", module = "divcrit", frozen, get_all)]
pub struct PyEquivalenceReport {
    params: PyParameterSet,
    bound: u64,
    forward_violations: u64,
    reverse_witnesses: Vec<u64>,
    soundness: &'static str,
    witness: Option<u64>,
}

#[pymethods]
impl PyEquivalenceReport {
    fn __repr__(&self) -> String {
        format!(
            "EquivalenceReport(bound={}, soundness='{}', witness={:?}, reverse_witnesses={})",
            self.bound,
            self.soundness,
            self.witness,
            self.reverse_witnesses.len()
        )
    }
}

#[pyclass(name = "AuditFinding", module = "divcrit", frozen, get_all)]
pub struct PyAuditFinding {
    n: u64,
    base: u32,
    kind: String,
    detail: String,
    witness: Option<u64>,
    line: String,
}

#[pymethods]
impl PyAuditFinding {
    fn __str__(&self) -> String {
        self.line.clone()
    }

    fn __repr__(&self) -> String {
        format!("AuditFinding({:?})", self.line)
    }
}

impl From<divcrit::TableAuditFinding> for PyAuditFinding {
    fn from(f: divcrit::TableAuditFinding) -> Self {
        Self {
            n: f.n,
            base: f.source.base(),
            kind: f.kind.to_string(),
            line: f.to_string(),
            detail: f.detail,
            witness: f.witness,
        }
    }
}

/// The one or two `(w, u)` pairs with `w*t - u = multiple` and `|u| <= t-1`.
#[pyfunction]
fn representations(multiple: i64, base: u32) -> PyResult<Vec<(i64, i64)>> {
    params::representations(multiple, base).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (divisor, base = 10, q_max = DEFAULT_Q_MAX))]
fn enumerate(divisor: u64, base: u32, q_max: u32) -> PyResult<Vec<PyParameterSet>> {
    params::enumerate(divisor, base, q_max)
        .map(|v| v.into_iter().map(PyParameterSet).collect())
        .map_err(err)
}

/// Returns `("full", None)` or `("forward-only", witness)`.
#[pyfunction]
#[pyo3(signature = (ps, bound = None))]
fn classify(ps: &PyParameterSet, bound: Option<u64>) -> (&'static str, Option<u64>) {
    let bound = bound.unwrap_or_else(|| tables::default_bound(ps.0.divisor(), ps.0.base()));
    let class = params::classify(&ps.0, bound);
    (soundness_name(class), class.witness())
}

#[pyfunction]
#[pyo3(signature = (candidates, require_sound = true))]
fn select_best(candidates: Vec<PyParameterSet>, require_sound: bool) -> PyResult<PyParameterSet> {
    let sets: Vec<_> = candidates.into_iter().map(|p| p.0).collect();
    params::select_best(&sets, require_sound)
        .map(PyParameterSet)
        .map_err(err)
}

#[pyfunction]
fn restricted_step(a: BigInt, ps: &PyParameterSet) -> BigInt {
    rules::restricted_step(&a, &ps.0)
}

/// Defaults: threshold `t**3`, at most digit-count + 8 steps.
#[pyfunction]
#[pyo3(signature = (a, ps, threshold = None, max_iters = None))]
fn reduce(
    a: BigInt,
    ps: &PyParameterSet,
    threshold: Option<u64>,
    max_iters: Option<usize>,
) -> PyReductionTrace {
    let base = ps.0.base();
    let threshold = threshold.unwrap_or_else(|| rules::default_threshold(base));
    let max_iters = max_iters.unwrap_or_else(|| rules::default_max_iters(&a, base));
    let trace = rules::reduce(&a, &ps.0, threshold, max_iters);
    PyReductionTrace {
        params: *ps,
        values: trace.values,
        termination: match trace.termination {
            Termination::BelowThreshold => "below-threshold",
            Termination::FixedPoint => "fixed-point",
            Termination::NoDecrease => "no-decrease",
            Termination::IterationCap => "iteration-cap",
        },
    }
}

#[pyfunction]
fn gdc_coefficients(ps: &PyParameterSet, degree: usize) -> Vec<BigInt> {
    rules::gdc_coefficients(&ps.0, degree)
}

#[pyfunction]
fn gdc_evaluate(x: &PyNumeral, ps: &PyParameterSet) -> PyResult<BigInt> {
    rules::gdc_evaluate(&x.0, &ps.0).map_err(err)
}

#[pyfunction]
fn identical_digit_form(digit: u32, degree: usize, ps: &PyParameterSet) -> PyResult<BigInt> {
    if digit == 0 || digit >= ps.0.base() {
        return Err(value_err(format!(
            "digit {digit} is not a nonzero digit in base {}",
            ps.0.base()
        )));
    }
    Ok(rules::identical_digit_form(digit, degree, &ps.0))
}

#[pyfunction]
fn digit_sum(x: &PyNumeral) -> BigInt {
    rules::digit_sum(&x.0)
}

#[pyfunction]
fn alternating_sum(x: &PyNumeral) -> BigInt {
    rules::alternating_sum(&x.0)
}

#[pyfunction]
fn oracle_divisible(a: BigInt, divisor: u64) -> PyResult<bool> {
    verify::oracle_divisible(&a, divisor).map_err(err)
}

#[pyfunction]
fn congruence_check(a: BigInt, ps: &PyParameterSet) -> bool {
    verify::congruence_check(&a, &ps.0)
}

#[pyfunction]
fn equivalence_audit(ps: &PyParameterSet, bound: u64) -> PyEquivalenceReport {
    let report = verify::equivalence_audit(&ps.0, bound);
    PyEquivalenceReport {
        params: *ps,
        bound: report.bound,
        forward_violations: report.forward_violations,
        reverse_witnesses: report.reverse_witnesses,
        soundness: soundness_name(report.verdict),
        witness: report.verdict.witness(),
    }
}

fn parse_method(method: &str) -> PyResult<Method> {
    method.parse().map_err(value_err)
}

/// `method` is "restricted", "gdc" or "oracle".
#[pyfunction]
#[pyo3(signature = (x, divisor, method = "restricted", q_max = DEFAULT_Q_MAX))]
fn verdict(x: &PyNumeral, divisor: u64, method: &str, q_max: u32) -> PyResult<bool> {
    verify::verdict(&x.0, divisor, parse_method(method)?, q_max).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (x, ps, method = "restricted"))]
fn verdict_with(x: &PyNumeral, ps: &PyParameterSet, method: &str) -> PyResult<bool> {
    verify::verdict_with(&x.0, &ps.0, parse_method(method)?).map_err(err)
}

#[pyfunction]
fn rule_text(u: i64, w: i64) -> String {
    tables::rule_text(u, w)
}

/// Renders the rule table for divisors `start..=stop` as "text" or "csv".
#[pyfunction]
#[pyo3(signature = (base, start, stop, q_max = DEFAULT_Q_MAX, format = "text"))]
fn generate_table(base: u32, start: u64, stop: u64, q_max: u32, format: &str) -> PyResult<String> {
    let format: TableFormat = format.parse().map_err(value_err)?;
    if start < 2 || start > stop {
        return Err(value_err(format!("invalid divisor range {start}..={stop}")));
    }
    let rows = tables::generate(base, start..=stop, q_max).map_err(err)?;
    Ok(tables::render(&rows, format))
}

#[pyfunction]
#[pyo3(signature = (table, bound = None))]
fn audit_paper_table(table: u8, bound: Option<u64>) -> PyResult<Vec<PyAuditFinding>> {
    let table = PaperTable::from_id(table).ok_or_else(|| value_err(format!("no table {table}")))?;
    Ok(tables::audit_paper_table(table, bound)
        .into_iter()
        .map(PyAuditFinding::from)
        .collect())
}

#[pymodule]
#[pyo3(name = "divcrit")]
pub fn divcrit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DivcritError", m.py().get_type::<DivcritError>())?;
    m.add_class::<PyNumeral>()?;
    m.add_class::<PyParameterSet>()?;
    m.add_class::<PyReductionTrace>()?;
    m.add_class::<PyEquivalenceReport>()?;
    m.add_class::<PyAuditFinding>()?;
    m.add_function(wrap_pyfunction!(representations, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(select_best, m)?)?;
    m.add_function(wrap_pyfunction!(restricted_step, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(gdc_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(gdc_evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(identical_digit_form, m)?)?;
    m.add_function(wrap_pyfunction!(digit_sum, m)?)?;
    m.add_function(wrap_pyfunction!(alternating_sum, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_divisible, m)?)?;
    m.add_function(wrap_pyfunction!(congruence_check, m)?)?;
    m.add_function(wrap_pyfunction!(equivalence_audit, m)?)?;
    m.add_function(wrap_pyfunction!(verdict, m)?)?;
    m.add_function(wrap_pyfunction!(verdict_with, m)?)?;
    m.add_function(wrap_pyfunction!(rule_text, m)?)?;
    m.add_function(wrap_pyfunction!(generate_table, m)?)?;
    m.add_function(wrap_pyfunction!(audit_paper_table, m)?)?;
    Ok(())
}
