//! Exact univariate algebra over the rationals.
//!
//! Polynomials are dense ascending coefficient vectors of [`Rational`]s,
//! rational functions are kept reduced with a monic denominator. On top of
//! the arithmetic sit the two calculus primitives the rest of the crate needs:
//! the Wronskian and Hermite reduction, which decides whether an
//! antiderivative of a rational function is itself rational.

mod poly;
mod ratfunc;

pub use poly::{rat, ratio, Poly};
pub use ratfunc::RatFunc;

use num_traits::Zero;

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar; always stored reduced with positive denominator.
pub type Rational = num_rational::BigRational;

/// `W(f, g) = f′g − fg′`.
pub fn wronskian(f: &Poly, g: &Poly) -> Poly {
    &(&f.derivative() * g) - &(f * &g.derivative())
}

/// Wronskian of rational functions, same sign convention as [`wronskian`].
pub fn wronskian_rf(f: &RatFunc, g: &RatFunc) -> RatFunc {
    &(&f.derivative() * g) - &(f * &g.derivative())
}

/// True iff `gcd(f, f′)` is constant.
pub fn squarefree(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("squarefree"));
    }
    Ok(f.gcd(&f.derivative()).is_constant())
}

/// Yun's algorithm: returns `[a_1, a_2, …]` with `monic(f) = ∏ a_i^i`, each `a_i`
/// squarefree and pairwise coprime.
pub fn squarefree_factorization(f: &Poly) -> Result<Vec<Poly>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("squarefree_factorization"));
    }
    let f = f.monic();
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0)?;
    let c = df.exact_div(&a0)?;
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    while !b.is_constant() {
        let a = b.gcd(&d);
        b = b.exact_div(&a)?;
        let c = d.exact_div(&a)?;
        d = &c - &b.derivative();
        out.push(a);
    }
    Ok(out)
}

/// Decomposition `N/y² = P′ + (−A/y)′ + B/y` for squarefree `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrateShape {
    /// `P`, normalized by `P(0) = 0`.
    pub poly_part: Poly,
    /// `A`, with `deg A < deg y`.
    pub rat_part_num: Poly,
    /// `B`, with `deg B < deg y`; the antiderivative is rational iff it is zero.
    pub obstruction: Poly,
}

impl IntegrateShape {
    /// `P − A/y`, an antiderivative of `N/y²` whenever the obstruction vanishes.
    pub fn antiderivative(&self, y: &Poly) -> RatFunc {
        let rat_part = RatFunc::new(-&self.rat_part_num, y.clone()).expect("y nonzero");
        &RatFunc::from_poly(self.poly_part.clone()) + &rat_part
    }
}

/// Hermite reduction of `N/y²` for monic, squarefree, nonconstant `y`.
///
/// With `s·y + t·y′ = 1`: `B = (N·s + (N·t)′) mod y` and `A = N·t mod y`.
pub fn integrate_shape(n: &Poly, y: &Poly) -> Result<IntegrateShape> {
    if y.is_constant() {
        return Err(Error::Precondition(format!(
            "integrate_shape needs nonconstant y, got {y}"
        )));
    }
    if !y.is_monic() {
        return Err(Error::Precondition(format!(
            "integrate_shape needs monic y, got {y}"
        )));
    }
    if !squarefree(y)? {
        return Err(Error::Precondition(format!(
            "integrate_shape needs squarefree y, got {y}"
        )));
    }
    let dy = y.derivative();
    let (t, s) = Poly::solve_bezout(&dy, y, &Poly::one())?;
    let nt = n * &t;
    let (q, a) = nt.div_rem(y)?;
    let m = &(n * &s) + &nt.derivative();
    let (q2, b) = m.div_rem(y)?;
    let mut p = &q2.antiderivative() - &q;
    let p0 = p.coeff(0);
    if !p0.is_zero() {
        p = &p - &Poly::constant(p0);
    }
    Ok(IntegrateShape {
        poly_part: p,
        rat_part_num: a,
        obstruction: b,
    })
}

/// General Hermite reduction `f = g′ + h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteReduction {
    /// `g`: polynomial part with zero constant term plus a proper fraction.
    pub rational: RatFunc,
    /// `h`: proper fraction with squarefree denominator; zero iff `∫f` is rational.
    pub log_part: RatFunc,
}

/// Hermite reduction for an arbitrary rational function (quadratic variant).
pub fn hermite_reduce(f: &RatFunc) -> Result<HermiteReduction> {
    let (q, proper) = f.split_proper();
    let mut a = proper.num().clone();
    let mut d = proper.den().clone();
    let mut g = RatFunc::zero();
    if !a.is_zero() {
        let factors = squarefree_factorization(&d)?;
        for (idx, v) in factors.iter().enumerate() {
            let mult = idx + 1;
            if mult < 2 || v.is_constant() {
                continue;
            }
            let u = d.exact_div(&v.pow(mult as u32))?;
            let uv = &u * &v.derivative();
            for j in (1..mult).rev() {
                let rhs = a.scale(&-rat(j as i64).recip());
                let (b, c) = Poly::solve_bezout(&uv, v, &rhs)?;
                g = &g + &RatFunc::new(b.clone(), v.pow(j as u32))?;
                a = &c.scale(&-rat(j as i64)) - &(&u * &b.derivative());
            }
            d = &u * v;
        }
    }
    let (q2, log_part) = RatFunc::new(a, d)?.split_proper();
    let poly_part = (&q + &q2).antiderivative();
    Ok(HermiteReduction {
        rational: &g + &RatFunc::from_poly(poly_part),
        log_part,
    })
}

/// Rational antiderivative with vanishing polynomial constant term, if one exists.
pub fn rational_antiderivative(f: &RatFunc) -> Result<Option<RatFunc>> {
    let h = hermite_reduce(f)?;
    Ok(h.log_part.is_zero().then_some(h.rational))
}

/// `f′/f`.
pub fn log_derivative(f: &RatFunc) -> Result<RatFunc> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("log_derivative"));
    }
    Ok(&f.derivative() / f)
}

/// `log′` of a polynomial.
pub fn log_derivative_poly(f: &Poly) -> Result<RatFunc> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("log_derivative"));
    }
    RatFunc::new(f.derivative(), f.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn half_root() -> Poly {
        Poly::from_coeffs(vec![ratio(-1, 2), rat(1)])
    }

    #[test]
    fn wronskian_examples() {
        assert_eq!(wronskian(&Poly::x(), &Poly::one()), Poly::one());
        let f = p(&[3, 1, 4]);
        assert!(wronskian(&f, &f).is_zero());
        // f′g − fg′ for f = x − 1/2, g = x² − x/2 + 1/4 is x − x².
        let g = Poly::from_coeffs(vec![ratio(1, 4), ratio(-1, 2), rat(1)]);
        assert_eq!(wronskian(&half_root(), &g), p(&[0, 1, -1]));
    }

    #[test]
    fn squarefree_examples() {
        assert!(squarefree(&p(&[0, -1, 1])).unwrap());
        assert!(!squarefree(&p(&[0, 0, 1])).unwrap());
        let f = &Poly::from_roots(&[rat(1), rat(1)]) * &p(&[2, 1]);
        assert!(!squarefree(&f).unwrap());
        assert_eq!(f.gcd(&f.derivative()), p(&[-1, 1]));
        assert_eq!(squarefree(&Poly::zero()), Err(Error::ZeroPolynomial("squarefree")));
    }

    #[test]
    fn integrate_shape_half_example() {
        let s = integrate_shape(&p(&[0, -1, 1]), &half_root()).unwrap();
        assert_eq!(s.poly_part, Poly::x());
        assert_eq!(s.rat_part_num, Poly::constant(ratio(-1, 4)));
        assert!(s.obstruction.is_zero());
    }

    #[test]
    fn integrate_shape_inverse_square() {
        let s = integrate_shape(&Poly::one(), &Poly::x()).unwrap();
        assert!(s.poly_part.is_zero());
        assert_eq!(s.rat_part_num, Poly::one());
        assert!(s.obstruction.is_zero());
        let anti = s.antiderivative(&Poly::x());
        assert_eq!(anti, RatFunc::new(p(&[-1]), Poly::x()).unwrap());
    }

    #[test]
    fn integrate_shape_log_obstruction() {
        let s = integrate_shape(&Poly::x(), &p(&[-1, 1])).unwrap();
        assert_eq!(s.obstruction, Poly::one());
    }

    #[test]
    fn integrate_shape_preconditions() {
        assert!(matches!(
            integrate_shape(&Poly::one(), &Poly::one()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            integrate_shape(&Poly::one(), &p(&[0, 0, 1])),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            integrate_shape(&Poly::one(), &p(&[0, 2])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn log_derivative_examples() {
        let sq = RatFunc::from_poly(p(&[0, 0, 1]));
        assert_eq!(
            log_derivative(&sq).unwrap(),
            RatFunc::new(p(&[2]), Poly::x()).unwrap()
        );
        assert!(log_derivative(&RatFunc::constant(rat(5))).unwrap().is_zero());
        assert!(log_derivative(&RatFunc::zero()).is_err());

        let top = Poly::from_coeffs(vec![ratio(1, 4), ratio(-1, 2), rat(1)]);
        let f = RatFunc::new(top.clone(), half_root()).unwrap();
        let expected_num = &(&top.derivative() * &half_root()) - &top;
        let expected = RatFunc::new(expected_num, &top * &half_root()).unwrap();
        assert_eq!(log_derivative(&f).unwrap(), expected);
    }

    #[test]
    fn yun_factorization() {
        let f = &(&p(&[-1, 1]).pow(3) * &p(&[2, 1]).pow(1)) * &p(&[1, 0, 1]).pow(2);
        let fac = squarefree_factorization(&f).unwrap();
        assert_eq!(fac.len(), 3);
        assert_eq!(fac[0], p(&[2, 1]));
        assert_eq!(fac[1], p(&[1, 0, 1]));
        assert_eq!(fac[2], p(&[-1, 1]));
    }

    #[test]
    fn hermite_handles_repeated_roots() {
        // ∫ 1/x⁴ = −1/(3x³)
        let f = RatFunc::new(Poly::one(), p(&[0, 0, 0, 0, 1])).unwrap();
        let h = hermite_reduce(&f).unwrap();
        assert!(h.log_part.is_zero());
        assert_eq!(
            h.rational,
            RatFunc::new(Poly::constant(ratio(-1, 3)), p(&[0, 0, 0, 1])).unwrap()
        );
        // x/(x−1)² has a logarithmic part 1/(x−1)
        let g = RatFunc::new(Poly::x(), p(&[-1, 1]).pow(2)).unwrap();
        let h = hermite_reduce(&g).unwrap();
        assert_eq!(h.log_part, RatFunc::new(Poly::one(), p(&[-1, 1])).unwrap());
        assert_eq!(&h.rational.derivative() + &h.log_part, g);
    }

    #[test]
    fn hermite_agrees_with_integrate_shape() {
        let y = Poly::from_roots(&[rat(2), ratio(-1, 3), rat(5)]);
        let n = p(&[1, -2, 0, 3, 1]);
        let shape = integrate_shape(&n, &y).unwrap();
        let f = RatFunc::new(n, &y * &y).unwrap();
        let h = hermite_reduce(&f).unwrap();
        assert_eq!(shape.obstruction.is_zero(), h.log_part.is_zero());
        let sy = RatFunc::new(shape.obstruction.clone(), y.clone()).unwrap();
        assert_eq!(h.log_part, sy);
        assert_eq!(h.rational, shape.antiderivative(&y));
    }
}
