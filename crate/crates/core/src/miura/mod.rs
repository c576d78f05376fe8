//! Miura opers `∂ + Σ F_i + Σ c_j H_j` of the Langlands dual algebra attached
//! to tuples, their Riccati equations and gauge deformations, and reduced
//! tuples in the field with formal fractional powers of the `T_l`.

mod twisted;

pub use twisted::{twisted_wronskian, TwistField, TwistedFunc};

use std::sync::Arc;

use num_traits::Zero;

use crate::critical::{build_t, fertility_direction, PolyTuple, ProblemData};
use crate::error::{Error, Result};
use crate::exactalg::{log_derivative, log_derivative_poly, Poly, RatFunc, Rational};
use crate::liedata::{langlands_dual, CartanData};
use crate::population::{descend, Projective, ReproductionPath};

/// Miura oper with `V = Σ c_j H_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiuraOper {
    /// Cartan data of the dual algebra.
    pub cartan: CartanData,
    pub h_coords: Vec<RatFunc>,
    pub provenance: Option<(PolyTuple, ProblemData)>,
}

impl MiuraOper {
    /// `v_i = ⟨ᵗα_i, V⟩ = Σ_j a_{i,j} c_j`, with `a` the Cartan matrix of `g`.
    pub fn pairing(&self, i: usize) -> RatFunc {
        self.h_coords
            .iter()
            .enumerate()
            .fold(RatFunc::zero(), |acc, (j, c)| {
                let a = self.cartan.a[j][i];
                if a == 0 {
                    acc
                } else {
                    &acc + &c.scale(&Rational::from_integer(a.into()))
                }
            })
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }
}

/// `c_j = log′(y_j) − Σ_l b_{j,l} log′(T_l)`, the oper of the tuple.
pub fn miura_from_tuple(y: &PolyTuple, p: &ProblemData) -> Result<MiuraOper> {
    let g = &p.cartan;
    let ts = build_t(p);
    let log_t: Vec<RatFunc> = ts.iter().map(log_derivative_poly).collect::<Result<_>>()?;
    let h_coords = (0..g.rank)
        .map(|j| {
            let mut c = log_derivative_poly(y.get(j))?;
            for (l, lt) in log_t.iter().enumerate() {
                if !g.b[j][l].is_zero() {
                    c = &c - &lt.scale(&g.b[j][l]);
                }
            }
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    let oper = MiuraOper {
        cartan: langlands_dual(g),
        h_coords,
        provenance: Some((y.clone(), p.clone())),
    };
    for i in 0..g.rank {
        if oper.pairing(i) != expected_pairing(y, i, p, &ts)? {
            return Err(Error::Verification(format!(
                "pairing {} disagrees with the defining relation",
                i + 1
            )));
        }
    }
    Ok(oper)
}

/// `−log′(T_i ∏_j y_j^{−a_{i,j}})`.
fn expected_pairing(y: &PolyTuple, i: usize, p: &ProblemData, ts: &[Poly]) -> Result<RatFunc> {
    let mut v = -log_derivative_poly(&ts[i])?;
    for j in 0..p.rank() {
        let a = p.cartan.a[i][j];
        if a != 0 {
            v = &v + &log_derivative_poly(y.get(j))?.scale(&Rational::from_integer(a.into()));
        }
    }
    Ok(v)
}

/// `g′ + v_i g + g²`.
pub fn riccati_residual(g: &RatFunc, i: usize, d: &MiuraOper) -> RatFunc {
    // over the common denominator D²Q, with g = N/D and v_i = P/Q
    let (n, den) = (g.num(), g.den());
    let v = d.pairing(i);
    let (p, q) = (v.num(), v.den());
    let num = &(&(&(&n.derivative() * den) - &(n * &den.derivative())) + &(n * n)) * q;
    let num = &num + &(&(p * n) * den);
    RatFunc::new(num, &(den * den) * q).expect("nonzero denominator")
}

/// Rational solutions `g_c = log′((ỹ_i + c·y_i)/y_i)` of one Riccati equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiccatiFamily {
    pub direction: usize,
    pub canonical: Poly,
    pub base: Poly,
}

impl RiccatiFamily {
    pub fn member(&self, c: &Rational) -> Result<RatFunc> {
        let num = &self.canonical + &self.base.scale(c);
        log_derivative(&RatFunc::new(num, self.base.clone())?)
    }
}

/// The family of nonzero rational Riccati solutions in direction `i`.
pub fn riccati_solutions(d: &MiuraOper, i: usize) -> Result<RiccatiFamily> {
    let (y, p) = d.provenance.as_ref().ok_or_else(|| {
        Error::Precondition("oper has no tuple to read the Wronskian target from".into())
    })?;
    match fertility_direction(y, i, p)? {
        Some(canonical) => Ok(RiccatiFamily {
            direction: i,
            canonical,
            base: y.get(i).clone(),
        }),
        None => Err(Error::Infertile {
            direction: i + 1,
            step: None,
        }),
    }
}

/// `e^{ad(g E_i)}·D = ∂ + I + (V + g H_i)` for a Riccati solution `g`.
///
/// When `g = log′(ỹ/y_i)` for a member `ỹ` of the descendant family, the
/// provenance moves to that descendant.
pub fn deform(d: &MiuraOper, i: usize, g: &RatFunc) -> Result<MiuraOper> {
    d.cartan.check_index(i)?;
    let residual = riccati_residual(g, i, d);
    if !residual.is_zero() {
        return Err(Error::Verification(format!(
            "Riccati residual in direction {} is {residual}",
            i + 1
        )));
    }
    if g.is_zero() {
        return Ok(d.clone());
    }
    let mut h_coords = d.h_coords.clone();
    h_coords[i] = &h_coords[i] + g;
    let provenance = match &d.provenance {
        Some((y, p)) => descendant_for(y, i, g, p)?.map(|t| (t, p.clone())),
        None => None,
    };
    Ok(MiuraOper {
        cartan: d.cartan.clone(),
        h_coords,
        provenance,
    })
}

/// Solves `g = (ỹ/y)′/(ỹ/y + c)` for the constant `c`.
fn descendant_for(y: &PolyTuple, i: usize, g: &RatFunc, p: &ProblemData) -> Result<Option<PolyTuple>> {
    let Some(canonical) = fertility_direction(y, i, p)? else {
        return Ok(None);
    };
    let ratio = RatFunc::new(canonical, y.get(i).clone())?;
    let c = &(&ratio.derivative() / g) - &ratio;
    match c.as_constant() {
        Some(c) => Ok(Some(descend(y, i, &Projective::affine(c), p)?)),
        None => Ok(None),
    }
}

/// Twist field of a problem: its `T_l` and `det` of the Cartan matrix.
pub fn twist_field(p: &ProblemData) -> Arc<TwistField> {
    TwistField::new(build_t(p), p.cartan.det_d)
}

/// `f·∏_l T_l^{−b_{i,l}}`.
pub fn reduce_poly(f: &Poly, i: usize, p: &ProblemData, field: &Arc<TwistField>) -> TwistedFunc {
    let q: Vec<Rational> = p.cartan.b[i].iter().map(|b| -b).collect();
    TwistedFunc::term(field, RatFunc::from_poly(f.clone()), &q)
}

/// `ȳ_i = y_i ∏_l T_l^{−b_{i,l}}`.
pub fn reduced_tuple(y: &PolyTuple, p: &ProblemData) -> Vec<TwistedFunc> {
    let field = twist_field(p);
    (0..p.rank())
        .map(|i| reduce_poly(y.get(i), i, p, &field))
        .collect()
}

/// Outcome of a stepwise identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepCheck {
    pub passed: bool,
    /// 1-based.
    pub failing_step: Option<usize>,
}

/// `W(ȳ_{i_l}^{prev}, ȳ_{i_l}^{new}) ∝ ∏_{j≠i_l} (ȳ_j^{prev})^{−a_{i_l,j}}` at every step.
pub fn reduced_wronskian_check(path: &ReproductionPath, p: &ProblemData) -> StepCheck {
    reduced_relations(path, p, false)
}

/// The reduced relations with constant exactly one, for the exactly
/// normalized diagonal sequence of `path`.
pub fn reduced_wronskian_check_exact(path: &ReproductionPath, p: &ProblemData) -> StepCheck {
    reduced_relations(path, p, true)
}

fn reduced_relations(path: &ReproductionPath, p: &ProblemData, exact: bool) -> StepCheck {
    let field = twist_field(p);
    let mut prev: Vec<TwistedFunc> = (0..p.rank())
        .map(|i| reduce_poly(path.seed.get(i), i, p, &field))
        .collect();
    let diagonal = if exact { path.exact_diagonal() } else { path.diagonal.clone() };
    for l in 0..path.len() {
        let i = path.indices[l];
        let new = reduce_poly(&diagonal[l], i, p, &field);
        let w = twisted_wronskian(&prev[i], &new);
        let mut rhs = TwistedFunc::one(&field);
        let mut ok = true;
        for (j, pj) in prev.iter().enumerate() {
            let a = p.cartan.a[i][j];
            if j != i && a != 0 {
                match pj.pow(-a) {
                    Ok(v) => rhs = &rhs * &v,
                    Err(_) => ok = false,
                }
            }
        }
        let proportional = ok
            && if exact {
                w == rhs
            } else {
                match rhs.inv() {
                Ok(inv) => (&w * &inv)
                    .as_ratfunc()
                    .and_then(|r| r.as_constant())
                    .is_some_and(|c| !c.is_zero()),
                Err(_) => false,
                }
            };
        if !proportional {
            return StepCheck {
                passed: false,
                failing_step: Some(l + 1),
            };
        }
        prev[i] = new;
    }
    StepCheck {
        passed: true,
        failing_step: None,
    }
}
