//! Python bindings. Words cross the boundary as `'0'/'1'` strings, position 0
//! first; message bits may also be given as a sequence of ints.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use rm_stuck::harness::{self, ErrorModel};
use rm_stuck::{BitWord, Error, StuckPattern};

create_exception!(rm_stuck, RmStuckError, PyException);
create_exception!(rm_stuck, CapacityError, RmStuckError);
create_exception!(rm_stuck, LabelError, RmStuckError);
create_exception!(rm_stuck, DecodeError, RmStuckError);

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Capacity { .. } => CapacityError::new_err(msg),
        Error::Label(_) | Error::InfeasibleLabel(_) => LabelError::new_err(msg),
        Error::Uncorrectable | Error::LabelMiss(_) => DecodeError::new_err(msg),
        Error::Io(_) => PyIOError::new_err(msg),
        Error::Parameter(_) | Error::Parse(_) | Error::TooLarge { .. } => {
            PyValueError::new_err(msg)
        }
    }
}

trait OrPy<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> OrPy<T> for rm_stuck::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

fn parse_word(text: &str) -> PyResult<BitWord> {
    text.parse().py_err()
}

fn bits_arg(obj: &Bound<'_, PyAny>) -> PyResult<Vec<bool>> {
    if let Ok(text) = obj.extract::<String>() {
        return Ok(parse_word(&text)?.iter().collect());
    }
    let values: Vec<i64> = obj.extract()?;
    values
        .into_iter()
        .map(|v| match v {
            0 => Ok(false),
            1 => Ok(true),
            _ => Err(PyValueError::new_err(format!(
                "bit value {v} is not 0 or 1"
            ))),
        })
        .collect()
}

/// Accepts `"2:1 5:1"`, `[(2, 1), (5, 1)]` or `{2: 1, 5: 1}`.
fn stuck_arg(obj: Option<&Bound<'_, PyAny>>) -> PyResult<StuckPattern> {
    let Some(obj) = obj else {
        return Ok(StuckPattern::empty());
    };
    if let Ok(text) = obj.extract::<String>() {
        return StuckPattern::parse(&text).py_err();
    }
    let pairs: Vec<(usize, u8)> = match obj.cast::<PyDict>() {
        Ok(d) => d
            .iter()
            .map(|(k, v)| Ok((k.extract()?, v.extract()?)))
            .collect::<PyResult<_>>()?,
        Err(_) => obj.extract()?,
    };
    StuckPattern::new(pairs.into_iter().map(|(p, v)| (p, v != 0)).collect()).py_err()
}

fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

#[pyclass(name = "MaskSet", frozen, module = "rm_stuck")]
struct PyMaskSet {
    inner: rm_stuck::MaskSet,
}

#[pymethods]
impl PyMaskSet {
    #[new]
    fn new(py: Python<'_>, s: usize, m: u32) -> PyResult<Self> {
        let inner = py.detach(|| rm_stuck::build_mask_set(s, m)).py_err()?;
        Ok(PyMaskSet { inner })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let file = File::open(path)?;
        let inner = rm_stuck::MaskSet::read_from(BufReader::new(file)).py_err()?;
        Ok(PyMaskSet { inner })
    }

    fn save(&self, path: &str) -> PyResult<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.inner.write_to(&mut w).py_err()?;
        w.flush()?;
        Ok(())
    }

    /// Writes a plain PBM image, one row per mask.
    fn render(&self, path: &str) -> PyResult<()> {
        let mut w = BufWriter::new(File::create(path)?);
        rm_stuck::pbm::write_pbm(&self.inner, &mut w).py_err()?;
        w.flush()?;
        Ok(())
    }

    #[getter]
    fn s(&self) -> usize {
        self.inner.s()
    }

    #[getter]
    fn m(&self) -> u32 {
        self.inner.m()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "MaskSet(s={}, m={}, count={})",
            self.inner.s(),
            self.inner.m(),
            self.inner.len()
        )
    }

    fn masks(&self) -> Vec<String> {
        self.inner.masks().iter().map(BitWord::to_string).collect()
    }

    fn __contains__(&self, word: &str) -> PyResult<bool> {
        self.inner.is_member(&parse_word(word)?).py_err()
    }

    fn index_of(&self, word: &str) -> PyResult<Option<usize>> {
        Ok(self.inner.index_of(&parse_word(word)?))
    }

    /// A member mask agreeing with every stuck cell.
    #[pyo3(signature = (stuck))]
    fn synthesize(&self, stuck: &Bound<'_, PyAny>) -> PyResult<String> {
        let pattern = stuck_arg(Some(stuck))?;
        Ok(self.inner.synthesize(&pattern).py_err()?.to_string())
    }

    /// Exhaustive coverage check; `guard=None` removes the size limit.
    #[pyo3(signature = (guard = Some(harness::DEFAULT_GUARD as u64)))]
    fn verify_coverage<'py>(
        &self,
        py: Python<'py>,
        guard: Option<u64>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let report = py
            .detach(|| harness::verify_coverage_with_guard(&self.inner, guard.map(u128::from)))
            .py_err()?;
        let d = PyDict::new(py);
        d.set_item("checked", report.checked)?;
        d.set_item("covered", report.covered)?;
        d.set_item("exhaustive", report.exhaustive)?;
        d.set_item("passed", report.passed())?;
        Ok(d)
    }

    fn label_s2(&self) -> PyResult<PyLabel> {
        let inner = rm_stuck::label_s2_for(&self.inner).py_err()?;
        Ok(PyLabel { inner })
    }

    fn greedy_label(&self, py: Python<'_>) -> PyResult<PyLabel> {
        let inner = py.detach(|| rm_stuck::greedy_label(&self.inner)).py_err()?;
        Ok(PyLabel { inner })
    }

    fn validate_label(&self, positions: Vec<usize>) -> bool {
        rm_stuck::validate_label(&self.inner, &positions)
    }

    fn label(&self, positions: Vec<usize>) -> PyResult<PyLabel> {
        let inner = rm_stuck::Label::new(&self.inner, &positions).py_err()?;
        Ok(PyLabel { inner })
    }
}

#[pyclass(name = "Label", frozen, module = "rm_stuck")]
struct PyLabel {
    inner: rm_stuck::Label,
}

#[pymethods]
impl PyLabel {
    #[getter]
    fn positions(&self) -> Vec<usize> {
        self.inner.positions().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Label(s={}, m={}, positions={:?})",
            self.inner.s(),
            self.inner.m(),
            self.inner.positions()
        )
    }

    /// Index of the mask whose label bits these are.
    fn lookup(&self, bits: &str) -> PyResult<Option<usize>> {
        Ok(self.inner.lookup(&parse_word(bits)?))
    }

    fn save(&self, path: &str) -> PyResult<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.inner.write_to(&mut w).py_err()?;
        w.flush()?;
        Ok(())
    }
}

#[pyclass(name = "RmCode", frozen, module = "rm_stuck")]
struct PyRmCode {
    inner: rm_stuck::RmCode,
}

#[pymethods]
impl PyRmCode {
    #[new]
    fn new(r: u32, m: u32) -> PyResult<Self> {
        Ok(PyRmCode {
            inner: rm_stuck::RmCode::new(r, m).py_err()?,
        })
    }

    #[getter]
    fn r(&self) -> u32 {
        self.inner.r
    }

    #[getter]
    fn m(&self) -> u32 {
        self.inner.m
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d
    }

    #[getter]
    fn t(&self) -> usize {
        self.inner.t
    }

    fn __repr__(&self) -> String {
        let c = &self.inner;
        format!(
            "RmCode(r={}, m={}, n={}, k={}, d={}, t={})",
            c.r, c.m, c.n, c.k, c.d, c.t
        )
    }

    fn generator(&self) -> Vec<String> {
        self.inner
            .generator()
            .rows()
            .iter()
            .map(BitWord::to_string)
            .collect()
    }

    fn is_codeword(&self, word: &str) -> PyResult<bool> {
        self.inner.is_codeword(&parse_word(word)?).py_err()
    }

    /// Majority-logic estimate and whether it lies within the correction radius.
    fn decode(&self, word: &str) -> PyResult<(String, bool)> {
        let (est, ok) = self.inner.decode(&parse_word(word)?).py_err()?;
        Ok((est.to_string(), ok))
    }
}

#[pyclass(name = "Codec", frozen, module = "rm_stuck")]
struct PyCodec {
    inner: rm_stuck::CodecConfig,
}

#[pymethods]
impl PyCodec {
    /// Without `label`, uses the constructed label for `s = 2` and the greedy
    /// one otherwise.
    #[new]
    #[pyo3(signature = (r, m, s, label = None))]
    fn new(py: Python<'_>, r: u32, m: u32, s: usize, label: Option<Vec<usize>>) -> PyResult<Self> {
        let inner = py
            .detach(|| rm_stuck::CodecConfig::new(r, m, s, label.as_deref()))
            .py_err()?;
        Ok(PyCodec { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn s(&self) -> usize {
        self.inner.s()
    }

    #[getter]
    fn k_user(&self) -> usize {
        self.inner.k_user()
    }

    #[getter]
    fn redundancy(&self) -> usize {
        self.inner.redundancy()
    }

    #[getter]
    fn label(&self) -> Vec<usize> {
        self.inner.label().positions().to_vec()
    }

    #[getter]
    fn info_set(&self) -> Vec<usize> {
        self.inner.info_set().to_vec()
    }

    #[getter]
    fn code(&self) -> PyRmCode {
        PyRmCode {
            inner: *self.inner.code(),
        }
    }

    fn __repr__(&self) -> String {
        let c = self.inner.code();
        format!(
            "Codec(RM({},{}), s={}, n={}, k_user={})",
            c.r,
            c.m,
            self.inner.s(),
            self.inner.n(),
            self.inner.k_user()
        )
    }

    #[pyo3(signature = (message, stuck = None))]
    fn encode(
        &self,
        message: &Bound<'_, PyAny>,
        stuck: Option<&Bound<'_, PyAny>>,
    ) -> PyResult<String> {
        let message = bits_arg(message)?;
        let stuck = stuck_arg(stuck)?;
        Ok(self.inner.encode(&message, &stuck).py_err()?.to_string())
    }

    /// Intermediate words of one encoding, as a dict of bit strings.
    #[pyo3(signature = (message, stuck = None))]
    fn encode_trace<'py>(
        &self,
        py: Python<'py>,
        message: &Bound<'py, PyAny>,
        stuck: Option<&Bound<'py, PyAny>>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let message = bits_arg(message)?;
        let stuck = stuck_arg(stuck)?;
        let t = self.inner.encode_trace(&message, &stuck).py_err()?;
        let d = PyDict::new(py);
        d.set_item("intermediate_message", bit_string(&t.intermediate_message))?;
        d.set_item("intermediate_codeword", t.intermediate_codeword.to_string())?;
        d.set_item("mask", t.mask.to_string())?;
        d.set_item("codeword", t.codeword.to_string())?;
        Ok(d)
    }

    fn decode(&self, word: &str) -> PyResult<String> {
        Ok(bit_string(&self.inner.decode(&parse_word(word)?).py_err()?))
    }

    fn decode_trace<'py>(&self, py: Python<'py>, word: &str) -> PyResult<Bound<'py, PyDict>> {
        let t = self.inner.decode_trace(&parse_word(word)?).py_err()?;
        let d = PyDict::new(py);
        d.set_item("codeword", t.codeword.to_string())?;
        d.set_item("label_bits", t.label_bits.to_string())?;
        d.set_item("mask_index", t.mask_index)?;
        d.set_item("mask", t.mask.to_string())?;
        d.set_item("intermediate_codeword", t.intermediate_codeword.to_string())?;
        d.set_item("message", bit_string(&t.message))?;
        Ok(d)
    }

    /// Seeded Monte Carlo run; give either `weight` (exact flips) or `bsc`.
    #[pyo3(signature = (trials, stuck_count = None, weight = None, bsc = None, seed = 0))]
    fn simulate<'py>(
        &self,
        py: Python<'py>,
        trials: u64,
        stuck_count: Option<usize>,
        weight: Option<usize>,
        bsc: Option<f64>,
        seed: u64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let model = match (weight, bsc) {
            (Some(_), Some(_)) => {
                return Err(PyValueError::new_err("give weight or bsc, not both"));
            }
            (_, Some(p)) => ErrorModel::Bsc { p },
            (w, None) => ErrorModel::ExactWeight {
                weight: w.unwrap_or(0),
            },
        };
        let stuck_count = stuck_count.unwrap_or(self.inner.s());
        let st = py
            .detach(|| harness::simulate(&self.inner, trials, stuck_count, model, seed))
            .py_err()?;
        let d = PyDict::new(py);
        d.set_item("trials", st.trials)?;
        d.set_item("frame_errors", st.frame_errors)?;
        d.set_item("uncorrectable", st.uncorrectable)?;
        d.set_item("label_misses", st.label_misses)?;
        d.set_item("miscorrections", st.miscorrections)?;
        d.set_item("stuck_count", st.stuck_count)?;
        d.set_item("seed", st.seed)?;
        Ok(d)
    }
}

#[pyfunction]
fn mask_count(py: Python<'_>, s: usize, m: u32) -> PyResult<usize> {
    py.detach(|| rm_stuck::mask_count(s, m)).py_err()
}

#[pyfunction]
fn synthesize_mask(s: usize, m: u32, stuck: &Bound<'_, PyAny>) -> PyResult<String> {
    let pattern = stuck_arg(Some(stuck))?;
    Ok(rm_stuck::synthesize_mask(s, m, &pattern)
        .py_err()?
        .to_string())
}

#[pyfunction]
fn label_s2(m: u32) -> PyResult<PyLabel> {
    Ok(PyLabel {
        inner: rm_stuck::label_s2(m).py_err()?,
    })
}

#[pyfunction]
fn label_lower_bound(s: usize, m: u32) -> PyResult<usize> {
    rm_stuck::label_lower_bound(s, m).py_err()
}

#[pyfunction]
fn label_upper_bound(s: usize, n_masks: usize) -> PyResult<u128> {
    if n_masks < 2 {
        return Err(PyValueError::new_err(
            "upper bound needs at least two masks",
        ));
    }
    Ok(rm_stuck::label_upper_bound(s, n_masks))
}

/// Degree of the algebraic normal form; `None` for the zero word.
#[pyfunction]
fn anf_degree(word: &str) -> PyResult<Option<u32>> {
    let w = parse_word(word)?;
    if !w.len().is_power_of_two() {
        return Err(PyValueError::new_err("word length must be a power of two"));
    }
    Ok(rm_stuck::anf_degree(&w))
}

#[pyfunction]
fn to_hex(word: &str) -> PyResult<String> {
    Ok(parse_word(word)?.to_hex())
}

#[pyfunction]
fn from_hex(hex: &str, n: usize) -> PyResult<String> {
    Ok(BitWord::from_hex(hex, n).py_err()?.to_string())
}

/// Construction checks for every `s <= s_max`, `m <= m_max`, one dict per check.
#[pyfunction]
fn verify_theorems<'py>(py: Python<'py>, s_max: usize, m_max: u32) -> PyResult<Bound<'py, PyList>> {
    let report = py.detach(|| harness::verify_theorems(s_max, m_max));
    let out = PyList::empty(py);
    for r in &report.records {
        let d = PyDict::new(py);
        d.set_item("name", &r.name)?;
        d.set_item("anchor", &r.anchor)?;
        d.set_item("params", &r.params)?;
        d.set_item("passed", r.passed)?;
        d.set_item("measured", &r.measured)?;
        d.set_item("expected", &r.expected)?;
        d.set_item("elapsed_ms", r.elapsed_ms)?;
        out.append(d)?;
    }
    Ok(out)
}

/// Reproduced table rows with the published values alongside.
#[pyfunction]
#[pyo3(signature = (search_labels = true))]
fn reproduce_table1<'py>(py: Python<'py>, search_labels: bool) -> PyResult<Bound<'py, PyList>> {
    let rows = py
        .detach(|| harness::reproduce_table1_with(search_labels))
        .py_err()?;
    let out = PyList::empty(py);
    for row in &rows {
        let d = PyDict::new(py);
        d.set_item("m", row.m)?;
        d.set_item("s", row.s)?;
        d.set_item("n", row.n)?;
        d.set_item("n_masks", row.n_masks)?;
        d.set_item("r_lb", row.r_lb)?;
        d.set_item("r_found", row.r_found)?;
        d.set_item("published_n_masks", row.expected.n_masks)?;
        d.set_item("published_r", row.expected.r)?;
        d.set_item("published_r_lb", row.expected.r_lb)?;
        d.set_item("matches", row.matches())?;
        out.append(d)?;
    }
    Ok(out)
}

#[pymodule(name = "rm_stuck")]
fn rm_stuck_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("RmStuckError", py.get_type::<RmStuckError>())?;
    m.add("CapacityError", py.get_type::<CapacityError>())?;
    m.add("LabelError", py.get_type::<LabelError>())?;
    m.add("DecodeError", py.get_type::<DecodeError>())?;
    m.add_class::<PyMaskSet>()?;
    m.add_class::<PyLabel>()?;
    m.add_class::<PyRmCode>()?;
    m.add_class::<PyCodec>()?;
    m.add_function(wrap_pyfunction!(mask_count, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize_mask, m)?)?;
    m.add_function(wrap_pyfunction!(label_s2, m)?)?;
    m.add_function(wrap_pyfunction!(label_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(label_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(anf_degree, m)?)?;
    m.add_function(wrap_pyfunction!(to_hex, m)?)?;
    m.add_function(wrap_pyfunction!(from_hex, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorems, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce_table1, m)?)?;
    Ok(())
}
