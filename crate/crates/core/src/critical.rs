//! Master-function data: weights at points, the tuple representation of
//! critical points, genericity, fertility and the Bethe system.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{integrate_shape, rational_antiderivative, squarefree, wronskian, Poly, RatFunc, Rational};
use crate::liedata::{CartanData, Weight};

/// Dominant integral weights `Λ_s` placed at distinct points `z_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemData {
    pub cartan: CartanData,
    pub weights: Vec<Weight>,
    pub points: Vec<Rational>,
}

impl ProblemData {
    pub fn new(cartan: CartanData, weights: Vec<Weight>, points: Vec<Rational>) -> Result<Self> {
        if weights.len() != points.len() {
            return Err(Error::Precondition(format!(
                "{} weights but {} points",
                weights.len(),
                points.len()
            )));
        }
        for (s, w) in weights.iter().enumerate() {
            if w.coords.len() != cartan.rank {
                return Err(Error::Precondition(format!(
                    "weight {} has {} coordinates, rank is {}",
                    s + 1,
                    w.coords.len(),
                    cartan.rank
                )));
            }
            if !w.is_dominant_integral() {
                return Err(Error::Precondition(format!(
                    "weight {} is not dominant integral",
                    s + 1
                )));
            }
        }
        for s in 0..points.len() {
            for u in 0..s {
                if points[s] == points[u] {
                    return Err(Error::Precondition(format!(
                        "points {} and {} coincide at {}",
                        u + 1,
                        s + 1,
                        points[s]
                    )));
                }
            }
        }
        Ok(ProblemData {
            cartan,
            weights,
            points,
        })
    }

    /// No marked points: every `T_i = 1`.
    pub fn empty(cartan: CartanData) -> Self {
        ProblemData {
            cartan,
            weights: Vec::new(),
            points: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    /// `m_{s,i} = ⟨Λ_s, α_i^∨⟩`.
    fn m(&self, s: usize, i: usize) -> i64 {
        self.weights[s].coords[i]
            .to_integer()
            .to_i64()
            .expect("small weight coordinate")
    }
}

/// Monic representative of a projective tuple of polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyTuple {
    polys: Vec<Poly>,
}

impl PolyTuple {
    /// Normalizes every entry to be monic.
    pub fn new(polys: Vec<Poly>) -> Result<Self> {
        if polys.iter().any(Poly::is_zero) {
            return Err(Error::ZeroPolynomial("PolyTuple"));
        }
        Ok(PolyTuple {
            polys: polys.iter().map(Poly::monic).collect(),
        })
    }

    pub fn ones(rank: usize) -> Self {
        PolyTuple {
            polys: vec![Poly::one(); rank],
        }
    }

    /// Tuple with the given roots in each coordinate.
    pub fn from_roots(roots: &[Vec<Rational>]) -> Self {
        PolyTuple {
            polys: roots.iter().map(|r| Poly::from_roots(r)).collect(),
        }
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn get(&self, i: usize) -> &Poly {
        &self.polys[i]
    }

    pub fn rank(&self) -> usize {
        self.polys.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.polys.iter().map(Poly::deg).collect()
    }

    /// Copy with the `i`-th entry replaced by the monic normalization of `p`.
    pub fn with(&self, i: usize, p: &Poly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial("PolyTuple"));
        }
        let mut polys = self.polys.clone();
        polys[i] = p.monic();
        Ok(PolyTuple { polys })
    }
}

impl fmt::Display for PolyTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.polys.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for PolyTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyTuple{self}")
    }
}

/// Coordinates `t^{(i)}_j` of the Bethe system, grouped by color `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetheConfig {
    pub coords: Vec<Vec<Rational>>,
}

impl BetheConfig {
    pub fn new(coords: Vec<Vec<Rational>>) -> Self {
        BetheConfig { coords }
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.coords.iter().map(Vec::len).collect()
    }

    /// The tuple whose roots are these coordinates.
    pub fn to_tuple(&self) -> PolyTuple {
        PolyTuple::from_roots(&self.coords)
    }
}

/// `T_i = ∏_s (x − z_s)^{⟨Λ_s, α_i^∨⟩}`.
pub fn build_t(p: &ProblemData) -> Vec<Poly> {
    (0..p.rank())
        .map(|i| {
            p.points.iter().enumerate().fold(Poly::one(), |acc, (s, z)| {
                let e = p.m(s, i) as u32;
                if e == 0 {
                    acc
                } else {
                    &acc * &Poly::from_roots(std::slice::from_ref(z)).pow(e)
                }
            })
        })
        .collect()
}

/// Outcome of the genericity test, naming the first violated condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Genericity {
    Generic,
    MultipleRoot { index: usize },
    MeetsPoints { index: usize },
    SharedRoot { i: usize, j: usize },
}

impl Genericity {
    pub fn is_generic(&self) -> bool {
        matches!(self, Genericity::Generic)
    }
}

impl fmt::Display for Genericity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Genericity::Generic => write!(f, "generic"),
            Genericity::MultipleRoot { index } => write!(f, "y_{} has a multiple root", index + 1),
            Genericity::MeetsPoints { index } => {
                write!(f, "y_{} vanishes at a point with nonzero weight", index + 1)
            }
            Genericity::SharedRoot { i, j } => {
                write!(f, "y_{} and y_{} share a root", i + 1, j + 1)
            }
        }
    }
}

pub fn is_generic(y: &PolyTuple, p: &ProblemData) -> Genericity {
    let t = build_t(p);
    let r = p.rank();
    for i in 0..r {
        if !squarefree(y.get(i)).expect("tuple entries are nonzero") {
            return Genericity::MultipleRoot { index: i };
        }
        if !y.get(i).gcd(&t[i]).is_one() {
            return Genericity::MeetsPoints { index: i };
        }
    }
    for i in 0..r {
        for j in i + 1..r {
            if p.cartan.a[i][j] != 0 && !y.get(i).gcd(y.get(j)).is_one() {
                return Genericity::SharedRoot { i, j };
            }
        }
    }
    Genericity::Generic
}

/// Residuals of the Bethe system, flattened color by color.
pub fn bethe_residuals(t: &BetheConfig, p: &ProblemData) -> Result<Vec<Rational>> {
    let c = &p.cartan;
    if t.coords.len() != c.rank {
        return Err(Error::Precondition(format!(
            "configuration has {} colors, rank is {}",
            t.coords.len(),
            c.rank
        )));
    }
    let mut out = Vec::new();
    for i in 0..c.rank {
        for (j, tij) in t.coords[i].iter().enumerate() {
            let mut acc = Rational::zero();
            for (s, z) in p.points.iter().enumerate() {
                let m = p.m(s, i);
                if m == 0 {
                    continue;
                }
                let diff = tij - z;
                if diff.is_zero() {
                    return Err(Error::Collision(format!(
                        "t^({})_{} = z_{} = {z}",
                        i + 1,
                        j + 1,
                        s + 1
                    )));
                }
                acc -= Rational::from_integer((m * c.d_sym[i]).into()) / diff;
            }
            for (s, row) in t.coords.iter().enumerate() {
                let form = c.form(i, s);
                if form == 0 {
                    continue;
                }
                for (k, u) in row.iter().enumerate() {
                    if s == i && k == j {
                        continue;
                    }
                    let diff = tij - u;
                    if diff.is_zero() {
                        return Err(Error::Collision(format!(
                            "t^({})_{} = t^({})_{} = {u}",
                            i + 1,
                            j + 1,
                            s + 1,
                            k + 1
                        )));
                    }
                    acc += Rational::from_integer(form.into()) / diff;
                }
            }
            out.push(acc);
        }
    }
    Ok(out)
}

/// `N_i = T_i ∏_{j≠i} y_j^{−a_{i,j}}`, the Wronskian target in direction `i`.
pub fn wronskian_target(y: &PolyTuple, i: usize, p: &ProblemData) -> Result<Poly> {
    p.cartan.check_index(i)?;
    let t = build_t(p);
    Ok((0..p.rank())
        .filter(|&j| j != i && p.cartan.a[i][j] != 0)
        .fold(t[i].clone(), |acc, j| {
            &acc * &y.get(j).pow((-p.cartan.a[i][j]) as u32)
        }))
}

/// Canonical `ỹ_i` with `W(y_i, ỹ_i) = c·N_i`, or `None` if `N_i/y_i²` has no
/// rational antiderivative.
///
/// Canonical means: the coefficient of `x^{deg y_i}` vanishes and `ỹ_i` is
/// monic. A non-squarefree `y_i` is handled by general Hermite reduction, with
/// the extra requirement that `y_i·∫N_i/y_i²` be a polynomial.
pub fn fertility_direction(y: &PolyTuple, i: usize, p: &ProblemData) -> Result<Option<Poly>> {
    let n = wronskian_target(y, i, p)?;
    let yi = y.get(i);
    let raw = if yi.is_constant() {
        n.antiderivative()
    } else if squarefree(yi)? {
        let shape = integrate_shape(&n, yi)?;
        if !shape.obstruction.is_zero() {
            return Ok(None);
        }
        &(yi * &shape.poly_part) - &shape.rat_part_num
    } else {
        let f = RatFunc::new(n.clone(), yi * yi)?;
        match rational_antiderivative(&f)? {
            None => return Ok(None),
            Some(g) => match (&g * &RatFunc::from_poly(yi.clone())).as_poly() {
                Some(q) => q.clone(),
                None => return Ok(None),
            },
        }
    };
    let k = yi.deg();
    let top = raw.coeff(k);
    let normalized = &raw - &yi.scale(&top);
    let w = wronskian(yi, &normalized);
    let lead = match (w.leading(), n.leading()) {
        (Some(a), Some(b)) => a / b,
        _ => {
            return Err(Error::Verification(format!(
                "zero Wronskian in direction {}",
                i + 1
            )))
        }
    };
    if w != n.scale(&lead) {
        return Err(Error::Verification(format!(
            "W(y_{0}, ỹ_{0}) is not proportional to the target",
            i + 1
        )));
    }
    Ok(Some(normalized.monic()))
}

/// Fertile iff every direction admits a rational `ỹ_i`.
pub fn is_fertile(y: &PolyTuple, p: &ProblemData) -> bool {
    (0..p.rank()).all(|i| matches!(fertility_direction(y, i, p), Ok(Some(_))))
}

/// Result of [`newton_seed`].
#[derive(Clone, Debug, PartialEq)]
pub struct NewtonOutcome {
    pub coords: Vec<Vec<f64>>,
    pub residual: f64,
    pub iterations: usize,
}

struct FloatSystem<'a> {
    p: &'a ProblemData,
    points: Vec<f64>,
    /// `(color, index)` of each flattened coordinate.
    slots: Vec<usize>,
}

impl FloatSystem<'_> {
    fn residual(&self, t: &[f64]) -> Option<Vec<f64>> {
        let c = &self.p.cartan;
        let mut out = vec![0.0; t.len()];
        for (a, &ta) in t.iter().enumerate() {
            let i = self.slots[a];
            let mut acc = 0.0;
            for (s, &z) in self.points.iter().enumerate() {
                let m = self.p.m(s, i);
                if m != 0 {
                    let diff = ta - z;
                    if diff == 0.0 {
                        return None;
                    }
                    acc -= (m * c.d_sym[i]) as f64 / diff;
                }
            }
            for (b, &tb) in t.iter().enumerate() {
                let form = c.form(i, self.slots[b]);
                if b != a && form != 0 {
                    let diff = ta - tb;
                    if diff == 0.0 {
                        return None;
                    }
                    acc += form as f64 / diff;
                }
            }
            out[a] = acc;
        }
        Some(out)
    }

    fn jacobian(&self, t: &[f64]) -> DMatrix<f64> {
        let c = &self.p.cartan;
        let n = t.len();
        let mut jac = DMatrix::zeros(n, n);
        for a in 0..n {
            let i = self.slots[a];
            for (s, &z) in self.points.iter().enumerate() {
                let m = self.p.m(s, i);
                if m != 0 {
                    jac[(a, a)] += (m * c.d_sym[i]) as f64 / (t[a] - z).powi(2);
                }
            }
            for b in 0..n {
                let form = c.form(i, self.slots[b]);
                if b != a && form != 0 {
                    let v = form as f64 / (t[a] - t[b]).powi(2);
                    jac[(a, a)] -= v;
                    jac[(a, b)] += v;
                }
            }
        }
        jac
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Damped Newton iteration on the Bethe system in floating point.
///
/// Each step halves the Newton increment until the max-norm residual drops.
pub fn newton_seed(
    p: &ProblemData,
    l: &[usize],
    start: &[Vec<f64>],
    max_iter: usize,
    tol: f64,
) -> Result<NewtonOutcome> {
    if l.len() != p.rank() || start.len() != p.rank() || start.iter().zip(l).any(|(s, &k)| s.len() != k) {
        return Err(Error::Precondition(format!(
            "start shape does not match degree vector {l:?}"
        )));
    }
    let sys = FloatSystem {
        p,
        points: p.points.iter().map(|z| z.to_f64().expect("finite point")).collect(),
        slots: l.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k)).collect(),
    };
    let regroup = |t: &[f64]| -> Vec<Vec<f64>> {
        let mut out = Vec::with_capacity(l.len());
        let mut pos = 0;
        for &k in l {
            out.push(t[pos..pos + k].to_vec());
            pos += k;
        }
        out
    };
    let fail = |reason: &str, t: &[f64], res: f64| Error::Newton {
        reason: reason.to_string(),
        last_iterate: regroup(t),
        residual: res,
    };
    let mut t: Vec<f64> = start.iter().flatten().copied().collect();
    let mut res = match sys.residual(&t) {
        Some(r) => r,
        None => return Err(fail("start lies on a pole", &t, f64::INFINITY)),
    };
    let mut norm = max_abs(&res);
    for iter in 0..max_iter {
        if norm < tol {
            return Ok(NewtonOutcome {
                coords: regroup(&t),
                residual: norm,
                iterations: iter,
            });
        }
        let jac = sys.jacobian(&t);
        let step = match jac.lu().solve(&DVector::from_vec(res.clone())) {
            Some(s) if s.iter().all(|v| v.is_finite()) => s,
            _ => return Err(fail("singular jacobian", &t, norm)),
        };
        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let trial: Vec<f64> = t.iter().zip(step.iter()).map(|(x, d)| x - lambda * d).collect();
            if let Some(r) = sys.residual(&trial) {
                let n = max_abs(&r);
                if n.is_finite() && n < norm {
                    accepted = Some((trial, r, n));
                    break;
                }
            }
            lambda *= 0.5;
        }
        match accepted {
            Some((nt, nr, nn)) => {
                t = nt;
                res = nr;
                norm = nn;
            }
            None => return Err(fail("damping found no decrease", &t, norm)),
        }
    }
    if norm < tol {
        return Ok(NewtonOutcome {
            coords: regroup(&t),
            residual: norm,
            iterations: max_iter,
        });
    }
    Err(fail("iteration cap reached", &t, norm))
}
