//! Matrix representations of the dual algebra and explicit solutions of
//! `DY = 0` for Miura opers of critical points.

mod matrix;
mod rep;

pub use matrix::{exp_nilpotent, QMatrix, TwistedMatrix};
pub use rep::{nested_bracket, rep_standard_sl, rep_standard_sp, BracketKind, MatrixRep};

use std::sync::Arc;

use num_traits::{ToPrimitive, Zero};

use crate::critical::{PolyTuple, ProblemData};
use crate::error::{Error, Result};
use crate::exactalg::{log_derivative, Poly, RatFunc, Rational};
use crate::liedata::{cartan_data, langlands_dual, Family, Weight};
use crate::miura::{miura_from_tuple, reduced_tuple, twist_field, MiuraOper, TwistField, TwistedFunc};
use crate::population::{reproduce_path, Projective, ReproductionPath};

/// `Y′ + (Σ F_i + Σ c_j H_j)·Y`; zero exactly when `Y` solves `DY = 0`.
pub fn apply_miura(d: &MiuraOper, rep: &MatrixRep, y: &TwistedMatrix) -> Result<TwistedMatrix> {
    if rep.cartan != d.cartan {
        return Err(Error::Precondition(format!(
            "representation of type {} does not match oper of type {}",
            rep.cartan.label(),
            d.cartan.label()
        )));
    }
    if y.rows() != rep.dim {
        return Err(Error::Precondition(format!(
            "{} rows but the representation has dimension {}",
            y.rows(),
            rep.dim
        )));
    }
    let field = y.field();
    let i_sum = rep.f.iter().fold(QMatrix::zero(rep.dim), |acc, f| &acc + f);
    let mut out = &y.derivative() + &y.left_mul_const(&i_sum)?;
    for (c, h) in d.h_coords.iter().zip(&rep.h) {
        if !c.is_zero() {
            let hy = y.left_mul_const(h)?;
            out = &out + &hy.scale(&TwistedFunc::from_ratfunc(field, c.clone()));
        }
    }
    Ok(out)
}

fn ensure_zero(residual: &TwistedMatrix, what: &str) -> Result<()> {
    match residual.first_nonzero() {
        None => Ok(()),
        Some((i, j, e)) => Err(Error::Verification(format!(
            "{what}: DY has nonzero entry ({}, {}) = {e}",
            i + 1,
            j + 1
        ))),
    }
}

fn integer(q: &Rational) -> Result<i64> {
    if !q.is_integer() {
        return Err(Error::NotRepresentable(format!("non-integer weight {q}")));
    }
    q.to_integer()
        .to_i64()
        .ok_or_else(|| Error::NotRepresentable("weight out of range".into()))
}

/// `∏_j y_j^{−H_j} T_j^{w_j}`, diagonal with single-term entries.
pub fn diagonal_factor(
    polys: &[Poly],
    rep: &MatrixRep,
    field: &Arc<TwistField>,
) -> Result<TwistedMatrix> {
    let r = rep.rank();
    if polys.len() != r || field.rank() != r {
        return Err(Error::Precondition("tuple length does not match the rank".into()));
    }
    let diag = (0..rep.dim)
        .map(|k| {
            let mut q = vec![Rational::zero(); r];
            let mut f = RatFunc::one();
            for j in 0..r {
                let h = integer(rep.h[j].get(k, k))?;
                if h != 0 {
                    f = &f * &RatFunc::from_poly(polys[j].clone()).pow(-h)?;
                }
                q[j] = rep.coweights[j].get(k, k).clone();
            }
            Ok(TwistedFunc::term(field, f, &q))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TwistedMatrix::from_diagonal(field, diag))
}

/// `∏_j ȳ_j^{−H_j}` computed from the reduced tuple.
pub fn reduced_diagonal_factor(y: &PolyTuple, rep: &MatrixRep, p: &ProblemData) -> Result<TwistedMatrix> {
    let field = twist_field(p);
    let ybar = reduced_tuple(y, p);
    let diag = (0..rep.dim)
        .map(|k| {
            (0..rep.rank()).try_fold(TwistedFunc::one(&field), |acc, j| {
                Ok(&acc * &ybar[j].pow(-integer(rep.h[j].get(k, k))?)?)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TwistedMatrix::from_diagonal(&field, diag))
}

fn ratio(field: &Arc<TwistField>, num: &Poly, den: &Poly) -> Result<TwistedFunc> {
    Ok(TwistedFunc::from_ratfunc(field, RatFunc::new(num.clone(), den.clone())?))
}

fn canonical_path(y: &PolyTuple, indices: Vec<usize>, p: &ProblemData) -> Result<ReproductionPath> {
    let params = vec![Projective::canonical(); indices.len()];
    reproduce_path(y, &indices, &params, p)
}

fn product(field: &Arc<TwistField>, dim: usize, factors: &[TwistedMatrix]) -> TwistedMatrix {
    factors
        .iter()
        .fold(TwistedMatrix::identity(field, dim), |acc, f| &acc * f)
}

/// The exponentials of one unipotent block: coefficient and constant matrix.
pub type Block = Vec<(TwistedFunc, QMatrix)>;

/// Diagonal part and unipotent blocks of a type A solution.
#[derive(Clone, Debug)]
pub struct SlFactors {
    pub diagonal: TwistedMatrix,
    pub blocks: Vec<Block>,
}

fn check_family(p: &ProblemData, family: Family, what: &str) -> Result<()> {
    if p.cartan.family != family {
        return Err(Error::Precondition(format!(
            "{what} needs type {family}, got {}",
            p.cartan.label()
        )));
    }
    Ok(())
}

/// Factors `Y_0` and `Y_i = ∏_{j≥i} exp((y_j^{[i..j]}/y_j)·F_{i,j})` for type `A_r`.
pub fn sl_factors(y: &PolyTuple, p: &ProblemData) -> Result<SlFactors> {
    check_family(p, Family::A, "the sl builder")?;
    let r = p.rank();
    let rep = rep_standard_sl(r + 1)?;
    let field = twist_field(p);
    let diagonal = diagonal_factor(y.polys(), &rep, &field)?;
    let mut blocks = Vec::with_capacity(r);
    for i in 0..r {
        let path = canonical_path(y, (i..r).collect(), p)?;
        let block = (i..r)
            .map(|j| {
                let g = ratio(&field, &path.exact_tuple(j - i + 1)[j], y.get(j))?;
                Ok((g, nested_bracket(&rep, BracketKind::Chain, i, j)?))
            })
            .collect::<Result<Block>>()?;
        blocks.push(block);
    }
    Ok(SlFactors { diagonal, blocks })
}

fn assemble(field: &Arc<TwistField>, diagonal: &TwistedMatrix, blocks: &[Block]) -> Result<TwistedMatrix> {
    let dim = diagonal.rows();
    let mut factors = vec![diagonal.clone()];
    for block in blocks {
        for (g, m) in block {
            factors.push(exp_nilpotent(g, m)?);
        }
    }
    Ok(product(field, dim, &factors))
}

/// Fundamental solution `Y_0 Y_1 ⋯ Y_r` in the defining representation of `sl_{r+1}`.
pub fn solution_a(y: &PolyTuple, p: &ProblemData) -> Result<TwistedMatrix> {
    let factors = sl_factors(y, p)?;
    let field = twist_field(p);
    let out = assemble(&field, &factors.diagonal, &factors.blocks)?;
    let rep = rep_standard_sl(p.rank() + 1)?;
    ensure_zero(&apply_miura(&miura_from_tuple(y, p)?, &rep, &out)?, "sl solution")?;
    Ok(out)
}

/// `u = (y_1, …, y_r, …, y_1)` with the weights folded onto `A_{2r−1}`.
pub fn fold_to_a(y: &PolyTuple, p: &ProblemData) -> Result<(PolyTuple, ProblemData)> {
    check_family(p, Family::B, "folding")?;
    let r = p.rank();
    let mirror = |k: usize| if k < r { k } else { 2 * r - 2 - k };
    let u = PolyTuple::new((0..2 * r - 1).map(|k| y.get(mirror(k)).clone()).collect())?;
    let weights = p
        .weights
        .iter()
        .map(|w| Weight::new((0..2 * r - 1).map(|k| w.coords[mirror(k)].clone()).collect()))
        .collect();
    let pa = ProblemData::new(cartan_data(Family::A, 2 * r - 1)?, weights, p.points.clone())?;
    Ok((u, pa))
}

/// Sign of the `[[F_r, F_{i,r−1}], F_{i,r−1}]` coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BcSign {
    Plus,
    Minus,
}

impl BcSign {
    fn half(self) -> Rational {
        let h = Rational::new(1.into(), 2.into());
        match self {
            BcSign::Plus => h,
            BcSign::Minus => -h,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BcSolution {
    pub matrix: TwistedMatrix,
    /// Convention under which `DY = 0` held.
    pub sign: BcSign,
}

/// Factors of the type `B_r` solution in the defining representation of `sp_{2r}`.
pub fn bc_factors(y: &PolyTuple, p: &ProblemData, sign: BcSign) -> Result<SlFactors> {
    check_family(p, Family::B, "the bc builder")?;
    let r = p.rank();
    let rep = rep_standard_sp(r)?;
    let field = twist_field(p);
    let diagonal = diagonal_factor(y.polys(), &rep, &field)?;
    let (u, pa) = fold_to_a(y, p)?;
    let mut blocks = Vec::with_capacity(r);
    for i in 0..r - 1 {
        let path = canonical_path(y, (i..r).collect(), p)?;
        let mut block = Block::new();
        for j in i..r - 1 {
            let g = ratio(&field, &path.exact_tuple(j - i + 1)[j], y.get(j))?;
            block.push((g, nested_bracket(&rep, BracketKind::Chain, i, j)?));
        }
        let top = ratio(&field, &path.exact_tuple(r - i)[r - 1], y.get(r - 1))?;
        let coeff = top.scale(&RatFunc::constant(sign.half()));
        block.push((coeff, nested_bracket(&rep, BracketKind::Double, i, 0)?));
        let folded = canonical_path(&u, (i..2 * r - 2 - i).collect(), &pa)?;
        for j in r - 1..2 * r - 2 - i {
            let k = 2 * r - 2 - j;
            let g = ratio(&field, &folded.exact_tuple(j - i + 1)[j], y.get(k))?;
            block.push((g, nested_bracket(&rep, BracketKind::Star, i, k)?));
        }
        blocks.push(block);
    }
    let last = canonical_path(y, vec![r - 1], p)?;
    let g = ratio(&field, &last.exact_tuple(1)[r - 1], y.get(r - 1))?;
    blocks.push(vec![(g, rep.f[r - 1].clone())]);
    Ok(SlFactors { diagonal, blocks })
}

/// Fundamental solution for a `B_r` critical point with a fixed sign convention.
pub fn solution_bc_with(y: &PolyTuple, p: &ProblemData, sign: BcSign) -> Result<TwistedMatrix> {
    let factors = bc_factors(y, p, sign)?;
    let field = twist_field(p);
    let out = assemble(&field, &factors.diagonal, &factors.blocks)?;
    let rep = rep_standard_sp(p.rank())?;
    ensure_zero(&apply_miura(&miura_from_tuple(y, p)?, &rep, &out)?, "bc solution")?;
    Ok(out)
}

/// Fundamental solution for a `B_r` critical point, trying `+½` first.
pub fn solution_bc(y: &PolyTuple, p: &ProblemData) -> Result<BcSolution> {
    match solution_bc_with(y, p, BcSign::Plus) {
        Ok(matrix) => Ok(BcSolution {
            matrix,
            sign: BcSign::Plus,
        }),
        Err(Error::Verification(first)) => match solution_bc_with(y, p, BcSign::Minus) {
            Ok(matrix) => Ok(BcSolution {
                matrix,
                sign: BcSign::Minus,
            }),
            Err(Error::Verification(second)) => Err(Error::Verification(format!(
                "both sign conventions fail: {first}; {second}"
            ))),
            Err(e) => Err(e),
        },
        Err(e) => Err(e),
    }
}

/// Vector solution `∏_l exp(−log′(y^{new}/y^{prev})·E_{i_l}) · ∏_j y_j^{−H_j} T_j^{w_j} · v`
/// along a reproduction path, `v` the lowest vector.
pub fn solution_general_path(path: &ReproductionPath, rep: &MatrixRep, p: &ProblemData) -> Result<TwistedMatrix> {
    if rep.cartan != langlands_dual(&p.cartan) {
        return Err(Error::Precondition(format!(
            "representation of type {} does not match problem of type {}",
            rep.cartan.label(),
            p.cartan.label()
        )));
    }
    let field = twist_field(p);
    let mut factors = Vec::with_capacity(path.len() + 1);
    for l in 0..path.len() {
        let i = path.indices[l];
        let prev = &path.exact_tuple(l)[i];
        let new = &path.exact_tuple(l + 1)[i];
        let g = -&log_derivative(&RatFunc::new(new.clone(), prev.clone())?)?;
        factors.push(exp_nilpotent(&TwistedFunc::from_ratfunc(&field, g), &rep.e[i])?);
    }
    factors.push(diagonal_factor(&path.exact_tuple(path.len()), rep, &field)?);
    let mut low = vec![TwistedFunc::zero(&field); rep.dim];
    low[rep.lowest] = TwistedFunc::one(&field);
    let out = product(&field, rep.dim, &factors).try_mul(&TwistedMatrix::column(&field, low))?;
    let d = miura_from_tuple(&path.seed, p)?;
    ensure_zero(&apply_miura(&d, rep, &out)?, "general solution")?;
    Ok(out)
}

/// [`solution_general_path`] along `indices` with canonical parameters.
pub fn solution_general(y: &PolyTuple, indices: &[usize], rep: &MatrixRep, p: &ProblemData) -> Result<TwistedMatrix> {
    let path = canonical_path(y, indices.to_vec(), p)?;
    solution_general_path(&path, rep, p)
}

/// The defining representation of the dual algebra, where implemented.
pub fn default_rep(p: &ProblemData) -> Result<MatrixRep> {
    let r = p.rank();
    match p.cartan.family {
        Family::A => rep_standard_sl(r + 1),
        Family::B => rep_standard_sp(r),
        _ => Err(Error::Precondition(format!(
            "no built-in representation for the dual of {}",
            p.cartan.label()
        ))),
    }
}

/// Outcome of the conjugation identity for `∏ ȳ_j^{−H_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D0Report {
    /// `D·Y_0 = Y_0·Σ_j (∏_l ȳ_l^{−a_{j,l}}) F_j` entrywise.
    pub conjugation: bool,
    /// `∏_l ȳ_l^{−a_{j,l}} = T_j ∏_l y_l^{−a_{j,l}}` for every `j`.
    pub exponents_cancel: bool,
    /// The two constructions of `Y_0` agree.
    pub diagonal_agrees: bool,
}

impl D0Report {
    pub fn passed(&self) -> bool {
        self.conjugation && self.exponents_cancel && self.diagonal_agrees
    }
}

pub fn d0_check(y: &PolyTuple, rep: &MatrixRep, p: &ProblemData) -> Result<D0Report> {
    let field = twist_field(p);
    let ybar = reduced_tuple(y, p);
    let y0 = reduced_diagonal_factor(y, rep, p)?;
    let direct = diagonal_factor(y.polys(), rep, &field)?;
    let r = p.rank();
    let mut rhs = TwistedMatrix::zero(&field, rep.dim, rep.dim);
    let mut exponents_cancel = true;
    for j in 0..r {
        let mut g = TwistedFunc::one(&field);
        let mut plain = RatFunc::from_poly(field.ts()[j].clone());
        for l in 0..r {
            let a = p.cartan.a[j][l];
            g = &g * &ybar[l].pow(-a)?;
            plain = &plain * &RatFunc::from_poly(y.get(l).clone()).pow(-a)?;
        }
        exponents_cancel &= g.as_ratfunc() == Some(plain);
        rhs = &rhs + &y0.right_mul_const(&rep.f[j])?.scale(&g);
    }
    let lhs = apply_miura(&miura_from_tuple(y, p)?, rep, &y0)?;
    Ok(D0Report {
        conjugation: lhs == rhs,
        exponents_cancel,
        diagonal_agrees: y0 == direct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, ratio as q};
    use crate::liedata::Weight;

    fn problem(family: Family, rank: usize, weights: &[&[i64]]) -> ProblemData {
        let points = (0..weights.len() as i64).map(rat).collect();
        ProblemData::new(
            cartan_data(family, rank).unwrap(),
            weights.iter().map(|w| Weight::from_ints(w)).collect(),
            points,
        )
        .unwrap()
    }

    fn tuple(roots: &[Vec<Rational>]) -> PolyTuple {
        PolyTuple::from_roots(roots)
    }

    #[test]
    fn apply_miura_identity() {
        let p = ProblemData::empty(cartan_data(Family::A, 1).unwrap());
        let d = miura_from_tuple(&PolyTuple::ones(1), &p).unwrap();
        let rep = rep_standard_sl(2).unwrap();
        let k = twist_field(&p);
        let out = apply_miura(&d, &rep, &TwistedMatrix::identity(&k, 2)).unwrap();
        assert_eq!(out, TwistedMatrix::from_scaled(&k, &TwistedFunc::one(&k), &rep.f[0]));
        assert!(apply_miura(&d, &rep_standard_sl(3).unwrap(), &TwistedMatrix::identity(&k, 3)).is_err());
    }

    #[test]
    fn sl2_trivial_seed() {
        let p = ProblemData::empty(cartan_data(Family::A, 1).unwrap());
        let y = solution_a(&PolyTuple::ones(1), &p).unwrap();
        let k = twist_field(&p);
        let x = TwistedFunc::from_poly(&k, Poly::x());
        assert_eq!(y.get(0, 0), &TwistedFunc::one(&k));
        assert!(y.get(0, 1).is_zero());
        assert_eq!(y.get(1, 0), &-&x);
        assert_eq!(y.get(1, 1), &TwistedFunc::one(&k));
    }

    #[test]
    fn sl2_half_example() {
        let p = problem(Family::A, 1, &[&[1], &[1]]);
        let y = tuple(&[vec![q(1, 2)]]);
        let sol = solution_a(&y, &p).unwrap();
        let k = twist_field(&p);
        let half = [q(-1, 2)];
        let ybar = TwistedFunc::term(&k, RatFunc::from_poly(y.get(0).clone()), &half);
        let tilde = TwistedFunc::term(&k, RatFunc::from_poly(Poly::from_ints(&[0, 0, -1])), &half);
        assert_eq!(sol.get(0, 0), &ybar.inv().unwrap());
        assert_eq!(sol.get(1, 0), &tilde);
        assert_eq!(sol.get(1, 1), &ybar);
        assert!(sol.exponents_in_lattice());
    }

    #[test]
    fn right_translation() {
        let p = ProblemData::empty(cartan_data(Family::A, 2).unwrap());
        let y = PolyTuple::ones(2);
        let sol = solution_a(&y, &p).unwrap();
        let mut g = QMatrix::identity(3);
        g.set(0, 2, rat(5));
        g.set(1, 0, q(-1, 3));
        let d = miura_from_tuple(&y, &p).unwrap();
        let rep = rep_standard_sl(3).unwrap();
        assert!(apply_miura(&d, &rep, &sol.right_mul_const(&g).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn sl_solutions_solve() {
        for r in 1..=3 {
            let p = ProblemData::empty(cartan_data(Family::A, r).unwrap());
            solution_a(&PolyTuple::ones(r), &p).unwrap();
        }
        let p = problem(Family::A, 2, &[&[0, 1], &[1, 0]]);
        let y = tuple(&[vec![q(2, 3)], vec![q(1, 3)]]);
        let sol = solution_a(&y, &p).unwrap();
        assert!(sol.exponents_in_lattice());
    }

    #[test]
    fn sl_block_factors_commute() {
        let p = ProblemData::empty(cartan_data(Family::A, 3).unwrap());
        let f = sl_factors(&PolyTuple::ones(3), &p).unwrap();
        assert_eq!(f.blocks.iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 2, 1]);
        for block in &f.blocks {
            for (_, m) in block {
                for (_, n) in block {
                    assert!(m.bracket(n).is_zero());
                }
            }
        }
    }

    #[test]
    fn folding() {
        let p = problem(Family::B, 2, &[&[0, 1], &[1, 0]]);
        let y = tuple(&[vec![q(3, 5)], vec![q(1, 5)]]);
        let (u, pa) = fold_to_a(&y, &p).unwrap();
        assert_eq!(u.polys(), &[y.get(0).clone(), y.get(1).clone(), y.get(0).clone()]);
        assert_eq!(pa.weights[0].coords, Weight::from_ints(&[0, 1, 0]).coords);
        assert_eq!(pa.weights[1].coords, Weight::from_ints(&[1, 0, 1]).coords);
        assert!(crate::critical::is_fertile(&y, &p));
        assert!(crate::critical::is_fertile(&u, &pa));
        let pb = ProblemData::empty(cartan_data(Family::B, 3).unwrap());
        let (ones, _) = fold_to_a(&PolyTuple::ones(3), &pb).unwrap();
        assert_eq!(ones, PolyTuple::ones(5));
    }

    #[test]
    fn bc_solutions_solve() {
        let p = ProblemData::empty(cartan_data(Family::B, 2).unwrap());
        let sol = solution_bc(&PolyTuple::ones(2), &p).unwrap();
        assert_eq!(sol.sign, BcSign::Plus);
        let f = bc_factors(&PolyTuple::ones(2), &p, BcSign::Plus).unwrap();
        for block in &f.blocks {
            for (g, _) in block {
                let poly = g.as_ratfunc().unwrap();
                let num = poly.as_poly().unwrap();
                assert_eq!(num.coeffs().iter().filter(|c| !c.is_zero()).count(), 1);
            }
        }
        let p = problem(Family::B, 2, &[&[0, 1], &[1, 0]]);
        let y = tuple(&[vec![q(3, 5)], vec![q(1, 5)]]);
        let sol = solution_bc(&y, &p).unwrap();
        assert!(sol.matrix.exponents_in_lattice());
        assert!(solution_bc(&PolyTuple::ones(2), &problem(Family::A, 2, &[])).is_err());
    }

    #[test]
    fn bc_wrong_sign_fails() {
        let p = ProblemData::empty(cartan_data(Family::B, 2).unwrap());
        assert!(matches!(
            solution_bc_with(&PolyTuple::ones(2), &p, BcSign::Minus),
            Err(Error::Verification(_))
        ));
    }

    #[test]
    fn general_solutions() {
        let p = ProblemData::empty(cartan_data(Family::A, 1).unwrap());
        let rep = rep_standard_sl(2).unwrap();
        let k = twist_field(&p);
        let v = solution_general(&PolyTuple::ones(1), &[], &rep, &p).unwrap();
        assert_eq!(v.entries(), &[TwistedFunc::zero(&k), TwistedFunc::one(&k)]);

        let v = solution_general(&PolyTuple::ones(1), &[0], &rep, &p).unwrap();
        let a = solution_a(&PolyTuple::ones(1), &p).unwrap();
        assert_eq!(v.get(0, 0), a.get(0, 0));
        assert_eq!(v.get(1, 0), a.get(1, 0));

        let p3 = problem(Family::A, 2, &[&[0, 1], &[1, 0]]);
        let y = tuple(&[vec![q(2, 3)], vec![q(1, 3)]]);
        let v = solution_general(&y, &[0, 1], &rep_standard_sl(3).unwrap(), &p3).unwrap();
        assert!(v.exponents_in_lattice());
        assert!(v.entries().iter().any(|e| e.terms().keys().any(|q| q.iter().any(|x| !x.is_integer()))));

        let pb = ProblemData::empty(cartan_data(Family::B, 2).unwrap());
        solution_general(&PolyTuple::ones(2), &[0, 1, 0, 1], &rep_standard_sp(2).unwrap(), &pb).unwrap();
        assert!(solution_general(&PolyTuple::ones(2), &[0], &rep_standard_sl(3).unwrap(), &pb).is_err());
    }

    #[test]
    fn d0_identities() {
        let cases = [
            (problem(Family::A, 1, &[&[1], &[1]]), tuple(&[vec![q(1, 2)]])),
            (problem(Family::A, 2, &[&[0, 1], &[1, 0]]), tuple(&[vec![q(2, 3)], vec![q(1, 3)]])),
            (problem(Family::B, 2, &[&[0, 1], &[1, 0]]), tuple(&[vec![q(3, 5)], vec![q(1, 5)]])),
        ];
        for (p, y) in cases {
            let rep = default_rep(&p).unwrap();
            assert!(d0_check(&y, &rep, &p).unwrap().passed());
        }
    }
}
