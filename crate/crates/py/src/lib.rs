use std::collections::BTreeMap;

use miura_core::critical::{self, BetheConfig, PolyTuple, ProblemData};
use miura_core::exactalg::{rat, Poly, Rational};
use miura_core::liedata::{self, cartan_data, Family, Weight, WeylWord};
use miura_core::population::{self, Projective};
use miura_core::solutions::{self, TwistedMatrix};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(miura, MiuraError, PyException);

fn core_err(e: miura_core::Error) -> PyErr {
    use miura_core::Error as E;
    match e {
        E::ZeroPolynomial(_)
        | E::DivisionByZero
        | E::Precondition(_)
        | E::InvalidType { .. }
        | E::IndexOutOfRange { .. }
        | E::Representation(_) => PyValueError::new_err(e.to_string()),
        _ => MiuraError::new_err(e.to_string()),
    }
}

/// An exact scalar given as an integer or a `"p/q"` string.
#[derive(FromPyObject)]
enum Scalar {
    Int(i64),
    Str(String),
}

impl Scalar {
    fn to_rational(&self) -> PyResult<Rational> {
        match self {
            Scalar::Int(n) => Ok(rat(*n)),
            Scalar::Str(s) => s
                .trim()
                .parse::<Rational>()
                .map_err(|_| PyValueError::new_err(format!("invalid rational {s:?}"))),
        }
    }
}

fn rationals(values: &[Scalar]) -> PyResult<Vec<Rational>> {
    values.iter().map(Scalar::to_rational).collect()
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn family(lie_type: &str) -> PyResult<Family> {
    let mut chars = lie_type.trim().chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Family::from_letter(c.to_ascii_uppercase()),
        _ => None,
    }
    .ok_or_else(|| PyValueError::new_err(format!("unknown type {lie_type:?}")))
}

fn one_based(indices: &[usize], rank: usize) -> PyResult<Vec<usize>> {
    indices
        .iter()
        .map(|&i| {
            if i == 0 || i > rank {
                Err(PyValueError::new_err(format!("index {i} outside 1..={rank}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

fn parameter(s: &str) -> PyResult<Projective> {
    let parse = |t: &str| Scalar::Str(t.to_string()).to_rational();
    match s.split_once(':') {
        Some((a, b)) => Projective::new(parse(a)?, parse(b)?).map_err(core_err),
        None => Ok(Projective::affine(parse(s)?)),
    }
}

/// A tuple of polynomials, each an ascending coefficient list.
fn tuple(p: &ProblemData, coeffs: Vec<Vec<Scalar>>) -> PyResult<PolyTuple> {
    if coeffs.len() != p.rank() {
        return Err(PyValueError::new_err(format!(
            "{} polynomials for rank {}",
            coeffs.len(),
            p.rank()
        )));
    }
    let polys = coeffs
        .iter()
        .map(|c| rationals(c).map(Poly::from_coeffs))
        .collect::<PyResult<Vec<_>>>()?;
    PolyTuple::new(polys).map_err(core_err)
}

fn tuple_out(y: &PolyTuple) -> Vec<Vec<String>> {
    y.polys().iter().map(|p| strings(p.coeffs())).collect()
}

/// Cartan data, weights at finite points and the points themselves.
#[pyclass(module = "miura", frozen)]
struct Problem {
    inner: ProblemData,
}

#[pymethods]
impl Problem {
    #[new]
    #[pyo3(signature = (lie_type, rank, weights = Vec::new(), points = Vec::new()))]
    fn new(lie_type: &str, rank: usize, weights: Vec<Vec<i64>>, points: Vec<Scalar>) -> PyResult<Self> {
        let cartan = cartan_data(family(lie_type)?, rank).map_err(core_err)?;
        if weights.iter().any(|w| w.len() != rank) {
            return Err(PyValueError::new_err(format!("every weight needs {rank} coordinates")));
        }
        let weights = weights.iter().map(|w| Weight::from_ints(w)).collect();
        let inner = ProblemData::new(cartan, weights, rationals(&points)?).map_err(core_err)?;
        Ok(Problem { inner })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.cartan.label()
    }

    #[getter]
    fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.inner.cartan.a.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "Problem({}, weights={}, points={:?})",
            self.inner.cartan.label(),
            self.inner.weights.len(),
            strings(&self.inner.points)
        )
    }
}

/// A cell of a population.
#[pyclass(module = "miura", frozen, get_all)]
struct Cell {
    degrees: Vec<usize>,
    /// 1-based letters of the shortest Weyl word.
    word: Vec<usize>,
    length: usize,
    sample: Vec<Vec<String>>,
}

#[pymethods]
impl Cell {
    fn __repr__(&self) -> String {
        format!("Cell(degrees={:?}, word={:?})", self.degrees, self.word)
    }
}

/// A verified solution: `entries[i][j]` maps a `T`-exponent string to a rational function.
#[pyclass(module = "miura", frozen, get_all)]
struct Solution {
    builder: String,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<BTreeMap<String, String>>>,
}

#[pymethods]
impl Solution {
    fn __repr__(&self) -> String {
        format!("Solution({}, {}x{})", self.builder, self.rows, self.cols)
    }
}

fn solution(builder: &str, m: &TwistedMatrix) -> Solution {
    let entries = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    m.get(i, j)
                        .terms()
                        .iter()
                        .map(|(q, f)| (format!("({})", strings(q).join(", ")), f.to_string()))
                        .collect()
                })
                .collect()
        })
        .collect();
    Solution {
        builder: builder.to_string(),
        rows: m.rows(),
        cols: m.cols(),
        entries,
    }
}

#[pyfunction]
fn is_generic(problem: &Problem, y: Vec<Vec<Scalar>>) -> PyResult<bool> {
    let y = tuple(&problem.inner, y)?;
    Ok(critical::is_generic(&y, &problem.inner).is_generic())
}

#[pyfunction]
fn is_fertile(problem: &Problem, y: Vec<Vec<Scalar>>) -> PyResult<bool> {
    let y = tuple(&problem.inner, y)?;
    Ok(critical::is_fertile(&y, &problem.inner))
}

/// Canonical `ỹ_i` per direction, `None` where infertile.
#[pyfunction]
fn fertility(problem: &Problem, y: Vec<Vec<Scalar>>) -> PyResult<Vec<Option<Vec<String>>>> {
    let p = &problem.inner;
    let y = tuple(p, y)?;
    (0..p.rank())
        .map(|i| {
            critical::fertility_direction(&y, i, p)
                .map(|c| c.map(|c| strings(c.coeffs())))
                .map_err(core_err)
        })
        .collect()
}

#[pyfunction]
fn bethe_residuals(problem: &Problem, coordinates: Vec<Vec<Scalar>>) -> PyResult<Vec<String>> {
    let coords = coordinates
        .iter()
        .map(|c| rationals(c))
        .collect::<PyResult<Vec<_>>>()?;
    let r = critical::bethe_residuals(&BetheConfig::new(coords), &problem.inner).map_err(core_err)?;
    Ok(strings(&r))
}

/// One reproduction in 1-based `direction`; `param` is `"c"` for `(1:c)` or `"c1:c2"`.
#[pyfunction]
#[pyo3(signature = (problem, y, direction, param = None))]
fn descend(problem: &Problem, y: Vec<Vec<Scalar>>, direction: usize, param: Option<&str>) -> PyResult<Vec<Vec<String>>> {
    let p = &problem.inner;
    let y = tuple(p, y)?;
    let i = one_based(&[direction], p.rank())?[0];
    let c = param.map(parameter).transpose()?.unwrap_or_else(Projective::canonical);
    Ok(tuple_out(&population::descend(&y, i, &c, p).map_err(core_err)?))
}

fn path(p: &ProblemData, y: &PolyTuple, indices: &[usize], params: Option<Vec<String>>) -> PyResult<population::ReproductionPath> {
    let indices = one_based(indices, p.rank())?;
    let params = match params {
        Some(ps) => ps.iter().map(|s| parameter(s)).collect::<PyResult<Vec<_>>>()?,
        None => vec![Projective::canonical(); indices.len()],
    };
    population::reproduce_path(y, &indices, &params, p).map_err(core_err)
}

/// Intermediate tuples along a 1-based reproduction path.
#[pyfunction]
#[pyo3(signature = (problem, y, indices, params = None))]
fn reproduce(problem: &Problem, y: Vec<Vec<Scalar>>, indices: Vec<usize>, params: Option<Vec<String>>) -> PyResult<Vec<Vec<Vec<String>>>> {
    let p = &problem.inner;
    let y = tuple(p, y)?;
    let path = path(p, &y, &indices, params)?;
    Ok(path.tuples.iter().map(tuple_out).collect())
}

#[pyfunction]
fn populate(problem: &Problem, y: Vec<Vec<Scalar>>) -> PyResult<Vec<Cell>> {
    let p = &problem.inner;
    let y = tuple(p, y)?;
    let summary = population::explore(&y, p).map_err(core_err)?;
    summary
        .cells
        .iter()
        .map(|(degrees, cell)| {
            Ok(Cell {
                degrees: degrees.clone(),
                word: cell.word.one_based(),
                length: liedata::weyl_length(&cell.word, &p.cartan).map_err(core_err)?,
                sample: tuple_out(&cell.sample),
            })
        })
        .collect()
}

/// Solution of the Miura oper of `y`, verified exactly. With `path` the general
/// vector construction is used; otherwise the explicit `A`/`B` matrices.
#[pyfunction]
#[pyo3(signature = (problem, y, path = None, params = None))]
fn solve(problem: &Problem, y: Vec<Vec<Scalar>>, path: Option<Vec<usize>>, params: Option<Vec<String>>) -> PyResult<Solution> {
    let p = &problem.inner;
    let y = tuple(p, y)?;
    match path {
        Some(indices) => {
            let rep = solutions::default_rep(p).map_err(core_err)?;
            let path = self::path(p, &y, &indices, params)?;
            let m = solutions::solution_general_path(&path, &rep, p).map_err(core_err)?;
            Ok(solution("general", &m))
        }
        None => match p.cartan.family {
            Family::A => Ok(solution("sl", &solutions::solution_a(&y, p).map_err(core_err)?)),
            Family::B => Ok(solution("bc", &solutions::solution_bc(&y, p).map_err(core_err)?.matrix)),
            _ => Err(PyValueError::new_err(format!(
                "no explicit builder for {}; pass a path for the general construction",
                p.cartan.label()
            ))),
        },
    }
}

/// `w · λ = w(λ + ρ) − ρ` for a 1-based word.
#[pyfunction]
fn shifted_action(lie_type: &str, rank: usize, word: Vec<usize>, weight: Vec<Scalar>) -> PyResult<Vec<String>> {
    let c = cartan_data(family(lie_type)?, rank).map_err(core_err)?;
    let w = WeylWord::new(one_based(&word, rank)?);
    let lambda = Weight::new(rationals(&weight)?);
    Ok(strings(&liedata::shifted_action(&w, &lambda, &c).map_err(core_err)?.coords))
}

#[pymodule]
fn miura(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Problem>()?;
    m.add_class::<Cell>()?;
    m.add_class::<Solution>()?;
    m.add_function(wrap_pyfunction!(is_generic, m)?)?;
    m.add_function(wrap_pyfunction!(is_fertile, m)?)?;
    m.add_function(wrap_pyfunction!(fertility, m)?)?;
    m.add_function(wrap_pyfunction!(bethe_residuals, m)?)?;
    m.add_function(wrap_pyfunction!(descend, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce, m)?)?;
    m.add_function(wrap_pyfunction!(populate, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(shifted_action, m)?)?;
    m.add("MiuraError", m.py().get_type::<MiuraError>())?;
    Ok(())
}
