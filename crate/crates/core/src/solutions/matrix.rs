use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{RatFunc, Rational};
use crate::miura::{TwistField, TwistedFunc};

/// Dense square matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zero(n: usize) -> Self {
        QMatrix {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Matrix unit with a one in row `i`, column `j` (0-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = QMatrix::zero(n);
        m.data[i * n + j] = Rational::one();
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        let mut m = QMatrix::zero(n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.n + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diag(&self) -> Vec<Rational> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = QMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QMatrix {
            n: self.n,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    /// `[self, other]`.
    pub fn bracket(&self, other: &QMatrix) -> Self {
        &(self * other) - &(other * self)
    }

    /// Smallest `k` with `selfᵏ = 0`, if any.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let mut p = QMatrix::identity(self.n);
        for k in 1..=self.n.max(1) {
            p = &p * self;
            if p.is_zero() {
                return Some(k);
            }
        }
        None
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        QMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        QMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix {
            n: self.n,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        let n = self.n;
        let mut m = QMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        m.data[i * n + j] += a * b;
                    }
                }
            }
        }
        m
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
                format!("[{}]", row.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Matrix with entries in the twisted field; also used for column vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct TwistedMatrix {
    rows: usize,
    cols: usize,
    field: Arc<TwistField>,
    entries: Vec<TwistedFunc>,
}

impl TwistedMatrix {
    pub fn zero(field: &Arc<TwistField>, rows: usize, cols: usize) -> Self {
        TwistedMatrix {
            rows,
            cols,
            field: field.clone(),
            entries: vec![TwistedFunc::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &Arc<TwistField>, n: usize) -> Self {
        let mut m = TwistedMatrix::zero(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = TwistedFunc::one(field);
        }
        m
    }

    /// `g·M` for a constant matrix `M`.
    pub fn from_scaled(field: &Arc<TwistField>, g: &TwistedFunc, m: &QMatrix) -> Self {
        let n = m.dim();
        let mut out = TwistedMatrix::zero(field, n, n);
        for i in 0..n {
            for j in 0..n {
                let c = m.get(i, j);
                if !c.is_zero() {
                    out.entries[i * n + j] = g.scale(&RatFunc::constant(c.clone()));
                }
            }
        }
        out
    }

    pub fn from_diagonal(field: &Arc<TwistField>, diag: Vec<TwistedFunc>) -> Self {
        let n = diag.len();
        let mut out = TwistedMatrix::zero(field, n, n);
        for (i, d) in diag.into_iter().enumerate() {
            out.entries[i * n + i] = d;
        }
        out
    }

    /// Column vector.
    pub fn column(field: &Arc<TwistField>, entries: Vec<TwistedFunc>) -> Self {
        TwistedMatrix {
            rows: entries.len(),
            cols: 1,
            field: field.clone(),
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<TwistField> {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &TwistedFunc {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[TwistedFunc] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(TwistedFunc::is_zero)
    }

    /// First nonzero entry, for diagnostics.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &TwistedFunc)> {
        self.entries
            .iter()
            .enumerate()
            .find(|(_, e)| !e.is_zero())
            .map(|(k, e)| (k / self.cols, k % self.cols, e))
    }

    /// Every entry has `T`-exponents in `(1/det_d)ℤ`.
    pub fn exponents_in_lattice(&self) -> bool {
        self.entries.iter().all(TwistedFunc::exponents_in_lattice)
    }

    /// Entrywise product with a scalar function.
    pub fn scale(&self, g: &TwistedFunc) -> Self {
        TwistedMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field.clone(),
            entries: self.entries.iter().map(|e| e * g).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        TwistedMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field.clone(),
            entries: self.entries.iter().map(TwistedFunc::derivative).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &TwistedMatrix) -> Result<TwistedMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Precondition(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = TwistedMatrix::zero(&self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `M·self` for a constant matrix `M`.
    pub fn left_mul_const(&self, m: &QMatrix) -> Result<TwistedMatrix> {
        if m.dim() != self.rows {
            return Err(Error::Precondition("dimension mismatch".into()));
        }
        let mut out = TwistedMatrix::zero(&self.field, self.rows, self.cols);
        for i in 0..self.rows {
            for k in 0..self.rows {
                let c = m.get(i, k);
                if c.is_zero() {
                    continue;
                }
                let c = RatFunc::constant(c.clone());
                for j in 0..self.cols {
                    let idx = i * self.cols + j;
                    out.entries[idx] = &out.entries[idx] + &self.get(k, j).scale(&c);
                }
            }
        }
        Ok(out)
    }

    /// `self·M` for a constant matrix `M`.
    pub fn right_mul_const(&self, m: &QMatrix) -> Result<TwistedMatrix> {
        if m.dim() != self.cols {
            return Err(Error::Precondition("dimension mismatch".into()));
        }
        let mut out = TwistedMatrix::zero(&self.field, self.rows, self.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let c = m.get(k, j);
                    if !c.is_zero() {
                        let idx = i * self.cols + j;
                        out.entries[idx] = &out.entries[idx] + &a.scale(&RatFunc::constant(c.clone()));
                    }
                }
            }
        }
        Ok(out)
    }
}

impl Add for &TwistedMatrix {
    type Output = TwistedMatrix;
    fn add(self, rhs: &TwistedMatrix) -> TwistedMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        TwistedMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field.clone(),
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &TwistedMatrix {
    type Output = TwistedMatrix;
    fn sub(self, rhs: &TwistedMatrix) -> TwistedMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        TwistedMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field.clone(),
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &TwistedMatrix {
    type Output = TwistedMatrix;
    /// Panics on a shape mismatch; see [`TwistedMatrix::try_mul`].
    fn mul(self, rhs: &TwistedMatrix) -> TwistedMatrix {
        self.try_mul(rhs).expect("shape mismatch")
    }
}

impl fmt::Debug for TwistedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TwistedMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `exp(g·M) = Σ gᵏMᵏ/k!` for nilpotent constant `M`.
pub fn exp_nilpotent(g: &TwistedFunc, m: &QMatrix) -> Result<TwistedMatrix> {
    let n = m.dim();
    let index = m
        .nilpotency_index()
        .ok_or_else(|| Error::Precondition("exponent matrix is not nilpotent".into()))?;
    let field = g.field();
    let mut out = TwistedMatrix::identity(field, n);
    let mut power = QMatrix::identity(n);
    let mut gk = TwistedFunc::one(field);
    let mut fact = Rational::one();
    for k in 1..index {
        power = &power * m;
        gk = &gk * g;
        fact *= Rational::from_integer(k.into());
        let term = TwistedMatrix::from_scaled(field, &gk, &power.scale(&fact.recip()));
        out = &out + &term;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, Poly};

    #[test]
    fn nilpotency() {
        let f = QMatrix::unit(3, 1, 0);
        assert_eq!(f.nilpotency_index(), Some(2));
        let g = &QMatrix::unit(3, 1, 0) + &QMatrix::unit(3, 2, 1);
        assert_eq!(g.nilpotency_index(), Some(3));
        assert_eq!(QMatrix::identity(2).nilpotency_index(), None);
    }

    #[test]
    fn exponentials() {
        let k = TwistField::new(vec![Poly::one()], 1);
        let zero = TwistedFunc::zero(&k);
        let f = QMatrix::unit(2, 1, 0);
        assert_eq!(exp_nilpotent(&zero, &f).unwrap(), TwistedMatrix::identity(&k, 2));
        let g = TwistedFunc::from_poly(&k, Poly::x());
        let e = exp_nilpotent(&g, &f).unwrap();
        assert_eq!(e.get(1, 0), &g);
        assert_eq!(e.get(0, 0), &TwistedFunc::one(&k));
        let inv = exp_nilpotent(&-&g, &f).unwrap();
        assert_eq!(&e * &inv, TwistedMatrix::identity(&k, 2));
        assert!(exp_nilpotent(&g, &QMatrix::identity(2)).is_err());
        let big = &QMatrix::unit(3, 1, 0) + &QMatrix::unit(3, 2, 1);
        let e3 = exp_nilpotent(&g, &big).unwrap();
        assert_eq!(
            e3.get(2, 0),
            &TwistedFunc::from_poly(&k, Poly::monomial(rat(1) / rat(2), 2))
        );
    }
}
