use std::collections::BTreeMap;

use miura_core::critical::PolyTuple;
use miura_core::exactalg::Rational;
use miura_core::miura::TwistedFunc;
use miura_core::solutions::TwistedMatrix;
use serde::Serialize;

use crate::problem::{coefficient_strings, ProblemFile};

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub options: BTreeMap<String, String>,
    pub problem: ProblemFile,
    #[serde(flatten)]
    pub body: Body,
    pub elapsed_ms: u128,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Body {
    Check(CheckBody),
    Descend(DescendBody),
    Populate(PopulateBody),
    Solve(SolveBody),
    Verify(VerifyBody),
}

#[derive(Debug, Serialize)]
pub struct DirectionReport {
    pub direction: usize,
    pub fertile: bool,
    /// Ascending coefficients of the canonical `ỹ_i`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical: Option<Vec<String>>,
    pub wronskian_target: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct CheckBody {
    pub generic: bool,
    pub genericity: String,
    pub fertile: bool,
    pub directions: Vec<DirectionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bethe_residuals: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub critical: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct DescendBody {
    pub direction: usize,
    pub parameter: String,
    pub tuple: Vec<Vec<String>>,
    pub degrees: Vec<usize>,
    pub generic: bool,
    pub fertile: bool,
}

#[derive(Debug, Serialize)]
pub struct CellRow {
    pub degrees: Vec<usize>,
    /// 1-based letters.
    pub word: Vec<usize>,
    pub length: usize,
    pub sample: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct ExceptionalRow {
    pub from: Vec<usize>,
    pub direction: usize,
    pub parameter: String,
}

#[derive(Debug, Serialize)]
pub struct PopulateBody {
    pub cells: Vec<CellRow>,
    pub base: Vec<usize>,
    pub exceptional: Vec<ExceptionalRow>,
    pub descents: usize,
}

#[derive(Debug, Serialize)]
pub struct SolveBody {
    pub builder: String,
    pub representation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bc_sign: Option<String>,
    pub rows: usize,
    pub cols: usize,
    /// `entries[i][j]` maps a `T`-exponent vector to its rational coefficient.
    pub entries: Vec<Vec<BTreeMap<String, String>>>,
    pub exponents_in_lattice: bool,
    pub verification: String,
}

#[derive(Debug, Serialize)]
pub struct StepReport {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_step: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct D0Summary {
    pub conjugation: bool,
    pub exponents_cancel: bool,
    pub diagonal_agrees: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyBody {
    /// 1-based.
    pub path: Vec<usize>,
    pub parameters: Vec<String>,
    pub generation_relations: bool,
    pub reduced_relations: StepReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d0: Option<D0Summary>,
    pub gauge_squares: usize,
    pub gauge_failures: Vec<usize>,
    pub passed: bool,
}

pub fn tuple_strings(y: &PolyTuple) -> Vec<Vec<String>> {
    y.polys().iter().map(coefficient_strings).collect()
}

fn exponent_key(q: &[Rational]) -> String {
    let parts: Vec<String> = q.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn twisted_entry(f: &TwistedFunc) -> BTreeMap<String, String> {
    f.terms()
        .iter()
        .map(|(q, c)| (exponent_key(q), c.to_string()))
        .collect()
}

pub fn matrix_entries(m: &TwistedMatrix) -> Vec<Vec<BTreeMap<String, String>>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| twisted_entry(m.get(i, j))).collect())
        .collect()
}
