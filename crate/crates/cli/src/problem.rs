use std::fmt;

use miura_core::critical::{BetheConfig, PolyTuple, ProblemData};
use miura_core::exactalg::{Poly, Rational};
use miura_core::liedata::{cartan_data, Family, Weight};
use miura_core::population::Projective;
use serde::{Deserialize, Serialize};

/// Problem description as read from disk. Rationals are strings `"p/q"`,
/// polynomial coefficients ascending, indices 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub lie_type: String,
    pub rank: usize,
    #[serde(default)]
    pub weights: Vec<Vec<i64>>,
    #[serde(default)]
    pub points: Vec<String>,
    pub tuple: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<Vec<usize>>,
    /// One per path step: `"c"` for `(1:c)` or `"c1:c2"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameters: Option<Vec<String>>,
    /// Explicit Bethe coordinates, grouped by color.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<Vec<Vec<String>>>,
}

/// Malformed input; reported with exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<miura_core::Error> for InputError {
    fn from(e: miura_core::Error) -> Self {
        InputError(e.to_string())
    }
}

pub fn parse_rational(s: &str, field: &str) -> Result<Rational, InputError> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| InputError(format!("{field}: invalid rational {s:?}")))
}

pub fn parse_projective(s: &str, field: &str) -> Result<Projective, InputError> {
    match s.split_once(':') {
        Some((a, b)) => Projective::new(parse_rational(a, field)?, parse_rational(b, field)?)
            .map_err(|e| InputError(format!("{field}: {e}"))),
        None => Ok(Projective::affine(parse_rational(s, field)?)),
    }
}

/// Comma-separated 1-based indices, converted to 0-based.
pub fn parse_indices(s: &str, rank: usize, field: &str) -> Result<Vec<usize>, InputError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| InputError(format!("{field}: invalid index {part:?}")))
        })
        .collect::<Result<Vec<_>, _>>()
        .and_then(|ix| to_zero_based(&ix, rank, field))
}

pub fn to_zero_based(indices: &[usize], rank: usize, field: &str) -> Result<Vec<usize>, InputError> {
    indices
        .iter()
        .map(|&i| {
            if i == 0 || i > rank {
                Err(InputError(format!("{field}: index {i} outside 1..={rank}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

/// The parsed problem.
#[derive(Debug)]
pub struct Problem {
    pub data: ProblemData,
    pub tuple: PolyTuple,
    pub path: Option<Vec<usize>>,
    pub parameters: Option<Vec<Projective>>,
    pub coordinates: Option<BetheConfig>,
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| InputError(format!("problem file: {e}")))
    }

    pub fn parse(&self) -> Result<Problem, InputError> {
        let mut letters = self.lie_type.trim().chars();
        let family = match (letters.next(), letters.next()) {
            (Some(c), None) => Family::from_letter(c.to_ascii_uppercase()),
            _ => None,
        }
        .ok_or_else(|| InputError(format!("lie_type: unknown type {:?}", self.lie_type)))?;
        let cartan = cartan_data(family, self.rank).map_err(|e| InputError(format!("lie_type/rank: {e}")))?;
        if self.weights.len() != self.points.len() {
            return Err(InputError(format!(
                "weights/points: {} weights but {} points",
                self.weights.len(),
                self.points.len()
            )));
        }
        let weights = self
            .weights
            .iter()
            .enumerate()
            .map(|(s, w)| {
                if w.len() != self.rank {
                    return Err(InputError(format!(
                        "weights[{s}]: {} coordinates for rank {}",
                        w.len(),
                        self.rank
                    )));
                }
                Ok(Weight::from_ints(w))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let points = self
            .points
            .iter()
            .enumerate()
            .map(|(s, z)| parse_rational(z, &format!("points[{s}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let data = ProblemData::new(cartan, weights, points)?;
        if self.tuple.len() != self.rank {
            return Err(InputError(format!(
                "tuple: {} polynomials for rank {}",
                self.tuple.len(),
                self.rank
            )));
        }
        let polys = self
            .tuple
            .iter()
            .enumerate()
            .map(|(i, coeffs)| {
                let coeffs = coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| parse_rational(c, &format!("tuple[{i}][{k}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                let p = Poly::from_coeffs(coeffs);
                if p.is_zero() {
                    return Err(InputError(format!("tuple[{i}]: zero polynomial")));
                }
                Ok(p)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let tuple = PolyTuple::new(polys)?;
        let path = self
            .path
            .as_ref()
            .map(|p| to_zero_based(p, self.rank, "path"))
            .transpose()?;
        let parameters = self
            .parameters
            .as_ref()
            .map(|ps| {
                ps.iter()
                    .enumerate()
                    .map(|(k, s)| parse_projective(s, &format!("parameters[{k}]")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        let coordinates = self
            .coordinates
            .as_ref()
            .map(|cs| {
                if cs.len() != self.rank {
                    return Err(InputError(format!("coordinates: {} colors for rank {}", cs.len(), self.rank)));
                }
                cs.iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, t)| parse_rational(t, &format!("coordinates[{i}][{j}]")))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map(BetheConfig::new)
            })
            .transpose()?;
        Ok(Problem {
            data,
            tuple,
            path,
            parameters,
            coordinates,
        })
    }
}

pub fn coefficient_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}
