use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{Poly, RatFunc, Rational};

/// The polynomials `T_1..T_r` adjoined through formal fractional powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistField {
    ts: Vec<Poly>,
    det_d: i64,
}

impl TwistField {
    pub fn new(ts: Vec<Poly>, det_d: i64) -> Arc<Self> {
        Arc::new(TwistField { ts, det_d })
    }

    pub fn ts(&self) -> &[Poly] {
        &self.ts
    }

    pub fn det_d(&self) -> i64 {
        self.det_d
    }

    pub fn rank(&self) -> usize {
        self.ts.len()
    }
}

/// Finite sum `Σ f_q ∏ T_l^{q_l}` with every `q_l ∈ [0, 1)`.
///
/// Integer parts of exponents are folded into the rational coefficient, and
/// the exponent of a constant `T_l` is always zero.
#[derive(Clone, PartialEq, Eq)]
pub struct TwistedFunc {
    field: Arc<TwistField>,
    terms: BTreeMap<Vec<Rational>, RatFunc>,
}

impl TwistedFunc {
    pub fn zero(field: &Arc<TwistField>) -> Self {
        TwistedFunc {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &Arc<TwistField>) -> Self {
        Self::from_ratfunc(field, RatFunc::one())
    }

    pub fn from_ratfunc(field: &Arc<TwistField>, f: RatFunc) -> Self {
        Self::term(field, f, &vec![Rational::zero(); field.rank()])
    }

    pub fn from_poly(field: &Arc<TwistField>, p: Poly) -> Self {
        Self::from_ratfunc(field, RatFunc::from_poly(p))
    }

    /// `f·∏ T_l^{q_l}` for arbitrary rational `q`.
    pub fn term(field: &Arc<TwistField>, f: RatFunc, q: &[Rational]) -> Self {
        assert_eq!(q.len(), field.rank(), "exponent vector length");
        let mut out = TwistedFunc::zero(field);
        if !f.is_zero() {
            let (coeff, key) = fold(field, f, q);
            out.terms.insert(key, coeff);
        }
        out
    }

    pub fn field(&self) -> &Arc<TwistField> {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Rational>, RatFunc> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_single_term(&self) -> bool {
        self.terms.len() == 1
    }

    /// The rational function, if there are no fractional powers.
    pub fn as_ratfunc(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero()),
            1 => {
                let (q, f) = self.terms.iter().next().expect("one term");
                q.iter().all(Zero::is_zero).then(|| f.clone())
            }
            _ => None,
        }
    }

    /// Every exponent lies in `(1/det_d)ℤ`.
    pub fn exponents_in_lattice(&self) -> bool {
        let d = Rational::from_integer(self.field.det_d.into());
        self.terms
            .keys()
            .all(|q| q.iter().all(|e| (e * &d).is_integer()))
    }

    fn check_field(&self, other: &TwistedFunc) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "mismatched twist fields"
        );
    }

    fn insert(&mut self, key: Vec<Rational>, f: RatFunc) {
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&key) {
            Some(g) => &g + &f,
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn scale(&self, f: &RatFunc) -> TwistedFunc {
        let mut out = TwistedFunc::zero(&self.field);
        for (q, g) in &self.terms {
            out.insert(q.clone(), g * f);
        }
        out
    }

    fn single(&self) -> Result<(&Vec<Rational>, &RatFunc)> {
        if self.terms.len() != 1 {
            return Err(Error::NotRepresentable(format!(
                "expected a single term, found {}",
                self.terms.len()
            )));
        }
        Ok(self.terms.iter().next().expect("one term"))
    }

    /// Integer power; negative powers need a single term.
    pub fn pow(&self, e: i64) -> Result<TwistedFunc> {
        if e >= 0 {
            let mut out = TwistedFunc::one(&self.field);
            for _ in 0..e {
                out = &out * self;
            }
            return Ok(out);
        }
        let (q, f) = self.single()?;
        let scaled: Vec<Rational> = q.iter().map(|x| x * Rational::from_integer(e.into())).collect();
        Ok(TwistedFunc::term(&self.field, f.pow(e)?, &scaled))
    }

    /// Rational power of a pure product of `T`-powers.
    pub fn pow_rational(&self, e: &Rational) -> Result<TwistedFunc> {
        let (q, f) = self.single()?;
        if e.is_integer() {
            return self.pow(e.to_integer().try_into().map_err(|_| {
                Error::NotRepresentable("exponent out of range".into())
            })?);
        }
        if !f.is_one() {
            return Err(Error::NotRepresentable(format!(
                "fractional power of coefficient {f}"
            )));
        }
        let scaled: Vec<Rational> = q.iter().map(|x| x * e).collect();
        Ok(TwistedFunc::term(&self.field, RatFunc::one(), &scaled))
    }

    pub fn inv(&self) -> Result<TwistedFunc> {
        self.pow(-1)
    }

    /// `(f′ + f Σ q_l T_l′/T_l)·∏ T^q` termwise.
    pub fn derivative(&self) -> TwistedFunc {
        let mut out = TwistedFunc::zero(&self.field);
        for (q, f) in &self.terms {
            let mut d = f.derivative();
            for (l, e) in q.iter().enumerate() {
                if !e.is_zero() {
                    let t = &self.field.ts[l];
                    let logd = RatFunc::new(t.derivative().scale(e), t.clone())
                        .expect("T nonzero");
                    d = &d + &(f * &logd);
                }
            }
            out.insert(q.clone(), d);
        }
        out
    }
}

/// Reduces exponents to `[0, 1)`, moving integer parts into the coefficient.
fn fold(field: &TwistField, f: RatFunc, q: &[Rational]) -> (RatFunc, Vec<Rational>) {
    let mut coeff = f;
    let mut key = Vec::with_capacity(q.len());
    for (l, e) in q.iter().enumerate() {
        let t = &field.ts[l];
        if t.is_constant() {
            key.push(Rational::zero());
            continue;
        }
        let n = e.floor();
        let frac = e - &n;
        if !n.is_zero() {
            let k: i64 = n.to_integer().try_into().expect("small exponent");
            coeff = &coeff * &RatFunc::from_poly(t.clone()).pow(k).expect("T nonzero");
        }
        key.push(frac);
    }
    (coeff, key)
}

/// `u′v − uv′`.
pub fn twisted_wronskian(u: &TwistedFunc, v: &TwistedFunc) -> TwistedFunc {
    &(&u.derivative() * v) - &(u * &v.derivative())
}

impl Add for &TwistedFunc {
    type Output = TwistedFunc;
    fn add(self, rhs: &TwistedFunc) -> TwistedFunc {
        self.check_field(rhs);
        let mut out = self.clone();
        for (q, f) in &rhs.terms {
            out.insert(q.clone(), f.clone());
        }
        out
    }
}

impl Neg for &TwistedFunc {
    type Output = TwistedFunc;
    fn neg(self) -> TwistedFunc {
        TwistedFunc {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(q, f)| (q.clone(), -f)).collect(),
        }
    }
}

impl Sub for &TwistedFunc {
    type Output = TwistedFunc;
    fn sub(self, rhs: &TwistedFunc) -> TwistedFunc {
        self + &(-rhs)
    }
}

impl Mul for &TwistedFunc {
    type Output = TwistedFunc;
    fn mul(self, rhs: &TwistedFunc) -> TwistedFunc {
        self.check_field(rhs);
        let mut out = TwistedFunc::zero(&self.field);
        for (q, f) in &self.terms {
            for (p, g) in &rhs.terms {
                let sum: Vec<Rational> = q.iter().zip(p).map(|(a, b)| a + b).collect();
                let (coeff, key) = fold(&self.field, f * g, &sum);
                out.insert(key, coeff);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for TwistedFunc {
            type Output = TwistedFunc;
            fn $m(self, rhs: TwistedFunc) -> TwistedFunc { (&self).$m(&rhs) }
        }
        impl $tr<&TwistedFunc> for TwistedFunc {
            type Output = TwistedFunc;
            fn $m(self, rhs: &TwistedFunc) -> TwistedFunc { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for TwistedFunc {
    type Output = TwistedFunc;
    fn neg(self) -> TwistedFunc {
        -&self
    }
}

impl fmt::Display for TwistedFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(q, c)| {
                let powers: Vec<String> = q
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| !e.is_zero())
                    .map(|(l, e)| format!("T{}^({e})", l + 1))
                    .collect();
                if powers.is_empty() {
                    format!("[{c}]")
                } else {
                    format!("[{c}]*{}", powers.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TwistedFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistedFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, ratio};

    fn sl2_field() -> Arc<TwistField> {
        TwistField::new(vec![Poly::from_ints(&[0, -1, 1])], 2)
    }

    #[test]
    fn folding_and_inverse() {
        let k = sl2_field();
        let t = &k.ts()[0];
        let a = TwistedFunc::term(&k, RatFunc::one(), &[ratio(-1, 2)]);
        assert_eq!(a.terms().keys().next().unwrap(), &vec![ratio(1, 2)]);
        assert_eq!(
            a.terms().values().next().unwrap(),
            &RatFunc::new(Poly::one(), t.clone()).unwrap()
        );
        let ybar = a.scale(&RatFunc::from_poly(Poly::from_coeffs(vec![ratio(-1, 2), rat(1)])));
        assert_eq!(&ybar * &ybar.inv().unwrap(), TwistedFunc::one(&k));
        assert_eq!(
            (&a * &a).as_ratfunc().unwrap(),
            RatFunc::new(Poly::one(), t.clone()).unwrap()
        );
        let trivial = TwistField::new(vec![Poly::one()], 1);
        let c = TwistedFunc::term(&trivial, RatFunc::one(), &[ratio(1, 3)]);
        assert_eq!(c, TwistedFunc::one(&trivial));
    }

    #[test]
    fn chain_rule() {
        let k = sl2_field();
        let t = k.ts()[0].clone();
        let root = TwistedFunc::term(&k, RatFunc::one(), &[ratio(1, 2)]);
        let expected = root.scale(&RatFunc::new(t.derivative().scale(&ratio(1, 2)), t).unwrap());
        assert_eq!(root.derivative(), expected);
    }

    #[test]
    fn powers() {
        let k = sl2_field();
        let root = TwistedFunc::term(&k, RatFunc::one(), &[ratio(1, 2)]);
        assert_eq!(
            root.pow_rational(&rat(2)).unwrap().as_ratfunc().unwrap(),
            RatFunc::from_poly(k.ts()[0].clone())
        );
        let sum = &root + &TwistedFunc::one(&k);
        assert!(matches!(sum.pow_rational(&ratio(1, 2)), Err(Error::NotRepresentable(_))));
        assert!(sum.pow(-1).is_err());
        assert_eq!(sum.pow(2).unwrap(), &sum * &sum);
        let x = TwistedFunc::from_poly(&k, Poly::x());
        assert!(x.pow_rational(&ratio(1, 2)).is_err());
    }

    #[test]
    fn reduced_wronskian_sl2() {
        // W(ȳ, ȳ̃) = T^{-1}·W(y, ỹ) = −1 with y = x − 1/2 and ỹ = x²
        let k = sl2_field();
        let a = TwistedFunc::term(&k, RatFunc::one(), &[ratio(-1, 2)]);
        let ybar = a.scale(&RatFunc::from_poly(Poly::from_coeffs(vec![ratio(-1, 2), rat(1)])));
        let ytbar = a.scale(&RatFunc::from_poly(Poly::from_ints(&[0, 0, 1])));
        assert_eq!(
            twisted_wronskian(&ybar, &ytbar),
            TwistedFunc::from_ratfunc(&k, RatFunc::constant(rat(-1)))
        );
    }
}
