use std::cell::RefCell;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

use lockers::verify;
use lockers::{IndexSet, LockerError, LockerState, MoveSequence, SignatureSet};

fn value_err(e: LockerError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A set of students drawn from 1..=universe.
#[pyclass(
    name = "IndexSet",
    module = "pylockers",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyIndexSet(IndexSet);

#[pymethods]
impl PyIndexSet {
    #[new]
    #[pyo3(signature = (universe, members = Vec::new()))]
    fn new(universe: usize, members: Vec<usize>) -> PyResult<Self> {
        IndexSet::from_members(universe, members)
            .map(Self)
            .map_err(value_err)
    }

    #[getter]
    fn universe(&self) -> usize {
        self.0.universe()
    }

    fn members(&self) -> Vec<usize> {
        self.0.members()
    }

    fn min_element(&self) -> Option<usize> {
        self.0.min_element()
    }

    fn sym_diff(&self, other: &PyIndexSet) -> PyResult<Self> {
        self.0.sym_diff(&other.0).map(Self).map_err(value_err)
    }

    fn __xor__(&self, other: &PyIndexSet) -> PyResult<Self> {
        self.sym_diff(other)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __contains__(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("IndexSet({}, {:?})", self.0.universe(), self.0.members())
    }
}

/// Locker states; `str()` gives the '0'/'1' string with locker 1 leftmost.
#[pyclass(
    name = "LockerState",
    module = "pylockers",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyLockerState(LockerState);

#[pymethods]
impl PyLockerState {
    #[new]
    fn new(bits: &str) -> PyResult<Self> {
        LockerState::parse(bits, bits.trim().chars().count())
            .map(Self)
            .map_err(value_err)
    }

    #[staticmethod]
    fn closed(n: usize) -> PyResult<Self> {
        LockerState::zeros(n).map(Self).map_err(value_err)
    }

    fn open_indices(&self) -> Vec<usize> {
        self.0.open_indices()
    }

    fn count_open(&self) -> usize {
        self.0.count_open()
    }

    fn is_open(&self, j: usize) -> bool {
        self.0.is_open(j)
    }

    fn xor(&self, other: &PyLockerState) -> PyResult<Self> {
        self.0.xor(&other.0).map(Self).map_err(value_err)
    }

    fn __xor__(&self, other: &PyLockerState) -> PyResult<Self> {
        self.xor(other)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LockerState('{}')", self.0)
    }
}

#[pyclass(name = "CheckReport", module = "pylockers", frozen, get_all)]
struct PyCheckReport {
    claim: String,
    attempted: u64,
    passed: u64,
    counterexample: Option<String>,
    seconds: f64,
    advisory: bool,
}

#[pymethods]
impl PyCheckReport {
    fn summary_line(&self) -> String {
        let mut line = format!(
            "claim={} attempted={} passed={}",
            self.claim, self.attempted, self.passed
        );
        if let Some(cx) = &self.counterexample {
            line.push_str(" counterexample=");
            line.push_str(cx);
        }
        line
    }

    fn __repr__(&self) -> String {
        self.summary_line()
    }
}

impl From<verify::CheckReport> for PyCheckReport {
    fn from(r: verify::CheckReport) -> Self {
        Self {
            counterexample: r.counterexample.map(|c| c.detail().to_string()),
            claim: r.claim,
            attempted: r.attempted,
            passed: r.passed,
            seconds: r.elapsed.as_secs_f64(),
            advisory: r.advisory,
        }
    }
}

/// Plays `moves` in order on `n` lockers, starting from `initial` or all closed.
#[pyfunction]
#[pyo3(signature = (n, moves, initial = None))]
fn simulate(
    n: usize,
    moves: Vec<usize>,
    initial: Option<&PyLockerState>,
) -> PyResult<PyLockerState> {
    let moves = MoveSequence::new(moves).map_err(value_err)?;
    let initial = match initial {
        Some(v) if v.0.len() != n => {
            return Err(value_err(LockerError::StateLength {
                expected: n,
                found: v.0.len(),
            }))
        }
        Some(v) => v.0.clone(),
        None => LockerState::zeros(n).map_err(value_err)?,
    };
    Ok(PyLockerState(lockers::simulate(
        &lockers::ProblemSpec::new(initial, moves),
    )))
}

#[pyfunction]
fn forward(u: &PyIndexSet) -> PyLockerState {
    PyLockerState(lockers::forward(&u.0))
}

#[pyfunction]
fn forward_divisor_parity(u: &PyIndexSet) -> PyLockerState {
    PyLockerState(lockers::forward_divisor_parity(&u.0))
}

/// Returns `(state, peeled)` where `peeled` lists the opened lockers in order.
#[pyfunction]
fn forward_basis(u: &PyIndexSet) -> (PyLockerState, Vec<usize>) {
    let (v, peeled) = lockers::forward_basis(&u.0);
    (PyLockerState(v), peeled)
}

#[pyfunction]
fn inverse_map(v: &PyLockerState) -> PyIndexSet {
    PyIndexSet(lockers::inverse_map(&v.0))
}

#[pyfunction]
fn solve_from_initial(initial: &PyLockerState, target: &PyLockerState) -> PyResult<PyIndexSet> {
    lockers::solve_from_initial(&initial.0, &target.0)
        .map(PyIndexSet)
        .map_err(value_err)
}

#[pyfunction]
fn basis_set(k: usize, n: usize) -> PyResult<PyIndexSet> {
    lockers::basis_set(k, n).map(PyIndexSet).map_err(value_err)
}

#[pyfunction]
fn reduce_moves(moves: Vec<usize>, n: usize) -> PyResult<PyIndexSet> {
    let moves = MoveSequence::new(moves).map_err(value_err)?;
    lockers::reduce_moves(&moves, n)
        .map(PyIndexSet)
        .map_err(value_err)
}

#[pyfunction]
fn closed_all(n: usize) -> PyResult<PyLockerState> {
    lockers::closed_all(n).map(PyLockerState).map_err(value_err)
}

#[pyfunction]
fn closed_single(i: usize, n: usize) -> PyResult<PyLockerState> {
    lockers::closed_single(i, n)
        .map(PyLockerState)
        .map_err(value_err)
}

#[pyfunction]
fn closed_all_but_one(i: usize, n: usize) -> PyResult<PyLockerState> {
    lockers::closed_all_but_one(i, n)
        .map(PyLockerState)
        .map_err(value_err)
}

#[pyfunction]
fn count_open_prefix(p: usize, n: usize) -> PyResult<usize> {
    lockers::count_open_prefix(p, n).map_err(value_err)
}

#[pyfunction]
fn torrence_open_state(m: u32, n: usize) -> PyResult<PyLockerState> {
    lockers::torrence_open_state(m, n)
        .map(PyLockerState)
        .map_err(value_err)
}

#[pyfunction]
fn factorize(n: u64) -> PyResult<Vec<(u64, u32)>> {
    lockers::factorize(n)
        .map(|f| f.factors().to_vec())
        .map_err(value_err)
}

#[pyfunction]
fn divisor_count(n: u64) -> PyResult<u64> {
    lockers::divisor_count(n).map_err(value_err)
}

#[pyfunction]
fn theta(n: u64) -> u64 {
    lockers::theta(n)
}

#[pyfunction]
fn is_perfect_square(n: u64) -> bool {
    lockers::is_perfect_square(n)
}

#[pyfunction]
fn squarefree_upto(n: u64) -> Vec<u64> {
    lockers::squarefree_upto(n)
}

#[pyfunction]
fn signature(n: u64) -> PyResult<Vec<u32>> {
    lockers::signature(n)
        .map(|s| s.iter().collect())
        .map_err(value_err)
}

#[pyfunction]
fn upsilon_holds(m: u64, x: u64) -> PyResult<bool> {
    Ok(lockers::upsilon_predicate(m).map_err(value_err)?.holds(x))
}

/// `σ(T) ∩ [1, n]` where `exponents` is an iterable of ints or a predicate.
#[pyfunction]
fn sigma_set(exponents: &Bound<'_, PyAny>, n: u64) -> PyResult<Vec<u64>> {
    if exponents.is_callable() {
        let failure: RefCell<Option<PyErr>> = RefCell::new(None);
        let out = lockers::sigma_set(
            &|e: u32| match exponents.call1((e,)).and_then(|r| r.is_truthy()) {
                Ok(b) => b,
                Err(err) => {
                    failure.borrow_mut().get_or_insert(err);
                    false
                }
            },
            n,
        );
        return match failure.into_inner() {
            Some(err) => Err(err),
            None => Ok(out),
        };
    }
    let mut set = Vec::new();
    for item in exponents.try_iter()? {
        set.push(item?.extract::<u32>()?);
    }
    let set = SignatureSet::new(set).map_err(value_err)?;
    Ok(lockers::sigma_set(&set, n))
}

#[pyfunction]
#[pyo3(signature = (n, trials = 100, seed = 42))]
fn check_forward_equivalence(n: usize, trials: usize, seed: u64) -> PyCheckReport {
    verify::check_forward_equivalence(n, trials, seed).into()
}

#[pyfunction]
#[pyo3(signature = (n, trials = 100, seed = 42))]
fn check_group_and_homomorphism(n: usize, trials: usize, seed: u64) -> PyCheckReport {
    verify::check_group_and_homomorphism(n, trials, seed).into()
}

#[pyfunction]
fn check_closed_forms(n_max: usize) -> PyCheckReport {
    verify::check_closed_forms(n_max).into()
}

#[pyfunction]
fn check_torrence_states(m_max: u32, n: usize) -> Vec<PyCheckReport> {
    verify::check_torrence_states(m_max, n)
        .into_iter()
        .map(Into::into)
        .collect()
}

#[pymodule]
fn pylockers(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyIndexSet>()?;
    m.add_class::<PyLockerState>()?;
    m.add_class::<PyCheckReport>()?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(forward, m)?)?;
    m.add_function(wrap_pyfunction!(forward_divisor_parity, m)?)?;
    m.add_function(wrap_pyfunction!(forward_basis, m)?)?;
    m.add_function(wrap_pyfunction!(inverse_map, m)?)?;
    m.add_function(wrap_pyfunction!(solve_from_initial, m)?)?;
    m.add_function(wrap_pyfunction!(basis_set, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_moves, m)?)?;
    m.add_function(wrap_pyfunction!(closed_all, m)?)?;
    m.add_function(wrap_pyfunction!(closed_single, m)?)?;
    m.add_function(wrap_pyfunction!(closed_all_but_one, m)?)?;
    m.add_function(wrap_pyfunction!(count_open_prefix, m)?)?;
    m.add_function(wrap_pyfunction!(torrence_open_state, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(divisor_count, m)?)?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(is_perfect_square, m)?)?;
    m.add_function(wrap_pyfunction!(squarefree_upto, m)?)?;
    m.add_function(wrap_pyfunction!(signature, m)?)?;
    m.add_function(wrap_pyfunction!(upsilon_holds, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_set, m)?)?;
    m.add_function(wrap_pyfunction!(check_forward_equivalence, m)?)?;
    m.add_function(wrap_pyfunction!(check_group_and_homomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(check_closed_forms, m)?)?;
    m.add_function(wrap_pyfunction!(check_torrence_states, m)?)?;
    Ok(())
}
