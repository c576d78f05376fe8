use num_traits::Zero;

use super::matrix::QMatrix;
use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::liedata::{cartan_data, CartanData, Family};

/// Chevalley generators of the dual algebra acting on a finite-dimensional
/// space, with the fundamental coweights.
///
/// `cartan` is the Cartan data of the represented algebra: `[H_i, F_j] =
/// −cartan.a[i][j]·F_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    pub cartan: CartanData,
    pub dim: usize,
    pub f: Vec<QMatrix>,
    pub e: Vec<QMatrix>,
    pub h: Vec<QMatrix>,
    /// `w_j` with `[w_j, F_i] = −δ_{i,j} F_i`.
    pub coweights: Vec<QMatrix>,
    /// Basis index of a vector killed by every `F_i`.
    pub lowest: usize,
}

impl MatrixRep {
    /// Builds `E_i = F_iᵀ`, `H_i = [E_i, F_i]` and the coweights, then validates.
    pub fn from_lowering(cartan: CartanData, f: Vec<QMatrix>, lowest: usize) -> Result<Self> {
        let dim = f.first().map(QMatrix::dim).unwrap_or(0);
        let e: Vec<QMatrix> = f.iter().map(QMatrix::transpose).collect();
        let h: Vec<QMatrix> = e.iter().zip(&f).map(|(e, f)| e.bracket(f)).collect();
        let r = cartan.rank;
        // [w_j, F_i] = −δ_ij F_i  ⇔  w_j = Σ_l b_{j,l} H_l
        let coweights = (0..r)
            .map(|j| {
                (0..r).fold(QMatrix::zero(dim), |acc, l| {
                    &acc + &h[l].scale(&cartan.b[j][l])
                })
            })
            .collect();
        let rep = MatrixRep {
            cartan,
            dim,
            f,
            e,
            h,
            coweights,
            lowest,
        };
        rep.validate()?;
        Ok(rep)
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    /// Checks the Chevalley relations, Serre relations, nilpotency, the
    /// coweight identities and the lowest vector.
    pub fn validate(&self) -> Result<()> {
        let r = self.rank();
        let fail = |msg: String| Err(Error::Representation(msg));
        if [self.f.len(), self.e.len(), self.h.len(), self.coweights.len()] != [r; 4] {
            return fail("generator count does not match the rank".into());
        }
        let a = |i: usize, j: usize| Rational::from_integer(self.cartan.a[i][j].into());
        for i in 0..r {
            for j in 0..r {
                let ef = self.e[i].bracket(&self.f[j]);
                let expected = if i == j { self.h[i].clone() } else { QMatrix::zero(self.dim) };
                if ef != expected {
                    return fail(format!("[E_{}, F_{}] is wrong", i + 1, j + 1));
                }
                if self.h[i].bracket(&self.f[j]) != self.f[j].scale(&-a(i, j)) {
                    return fail(format!("[H_{}, F_{}] is wrong", i + 1, j + 1));
                }
                if self.h[i].bracket(&self.e[j]) != self.e[j].scale(&a(i, j)) {
                    return fail(format!("[H_{}, E_{}] is wrong", i + 1, j + 1));
                }
                if !self.h[i].bracket(&self.h[j]).is_zero() {
                    return fail(format!("H_{} and H_{} do not commute", i + 1, j + 1));
                }
                if i != j {
                    let mut ad = self.f[j].clone();
                    let mut ad_e = self.e[j].clone();
                    for _ in 0..(1 - self.cartan.a[i][j]) {
                        ad = self.f[i].bracket(&ad);
                        ad_e = self.e[i].bracket(&ad_e);
                    }
                    if !ad.is_zero() || !ad_e.is_zero() {
                        return fail(format!("Serre relation fails for ({}, {})", i + 1, j + 1));
                    }
                }
                let wf = self.coweights[j].bracket(&self.f[i]);
                let expected = if i == j { -&self.f[i] } else { QMatrix::zero(self.dim) };
                if wf != expected {
                    return fail(format!("coweight {} pairs wrongly with root {}", j + 1, i + 1));
                }
            }
            if self.f[i].nilpotency_index().is_none() || self.e[i].nilpotency_index().is_none() {
                return fail(format!("generator {} is not nilpotent", i + 1));
            }
            if !self.h[i].is_diagonal() || !self.coweights[i].is_diagonal() {
                return fail(format!("H_{} or w_{} is not diagonal", i + 1, i + 1));
            }
            if (0..self.dim).any(|k| !self.f[i].get(k, self.lowest).is_zero()) {
                return fail(format!("F_{} does not kill the lowest vector", i + 1));
            }
        }
        Ok(())
    }
}

/// Defining representation of `sl_m`: `F_i = e_{i+1,i}`.
pub fn rep_standard_sl(m: usize) -> Result<MatrixRep> {
    if m < 2 {
        return Err(Error::Precondition(format!("sl_{m} needs m ≥ 2")));
    }
    let f = (0..m - 1).map(|i| QMatrix::unit(m, i + 1, i)).collect();
    MatrixRep::from_lowering(cartan_data(Family::A, m - 1)?, f, m - 1)
}

/// Defining representation of `sp_{2r}`: `F_i = e_{i+1,i} + e_{2r−i+1,2r−i}` for
/// `i < r` and `F_r = e_{r+1,r}` (1-based).
pub fn rep_standard_sp(r: usize) -> Result<MatrixRep> {
    if r < 2 {
        return Err(Error::Precondition(format!("sp_{} needs r ≥ 2", 2 * r)));
    }
    let n = 2 * r;
    let f = (1..=r)
        .map(|i| {
            if i < r {
                &QMatrix::unit(n, i, i - 1) + &QMatrix::unit(n, n - i, n - i - 1)
            } else {
                QMatrix::unit(n, r, r - 1)
            }
        })
        .collect();
    MatrixRep::from_lowering(cartan_data(Family::C, r)?, f, n - 1)
}

/// Which nested commutator of lowering operators to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketKind {
    /// `F_{i,j} = [F_j, F_{i,j−1}]`, `F_{i,i} = F_i`.
    Chain,
    /// `F*_{i,r} = [F_r, F_{i,r−1}]`, `F*_{i,j} = [F_j, F*_{i,j+1}]`.
    Star,
    /// `[[F_r, F_{i,r−1}], F_{i,r−1}]`; `j` is ignored.
    Double,
}

/// Nested brackets of lowering operators; indices are 0-based.
pub fn nested_bracket(rep: &MatrixRep, kind: BracketKind, i: usize, j: usize) -> Result<QMatrix> {
    let r = rep.rank();
    let out_of_range = || Error::IndexOutOfRange {
        index: i.max(j),
        rank: r,
    };
    let chain = |i: usize, j: usize| {
        (i + 1..=j).fold(rep.f[i].clone(), |acc, k| rep.f[k].bracket(&acc))
    };
    match kind {
        BracketKind::Chain => {
            if i > j || j >= r {
                return Err(out_of_range());
            }
            Ok(chain(i, j))
        }
        BracketKind::Star => {
            if r < 2 || i > j || j >= r || i + 1 >= r {
                return Err(out_of_range());
            }
            let top = rep.f[r - 1].bracket(&chain(i, r - 2));
            Ok((j..r - 1).rev().fold(top, |acc, k| rep.f[k].bracket(&acc)))
        }
        BracketKind::Double => {
            if r < 2 || i + 1 >= r {
                return Err(out_of_range());
            }
            let c = chain(i, r - 2);
            Ok(rep.f[r - 1].bracket(&c).bracket(&c))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, ratio};

    #[test]
    fn sl_reps() {
        let s2 = rep_standard_sl(2).unwrap();
        assert_eq!(s2.h[0], QMatrix::diagonal(&[rat(1), rat(-1)]));
        assert_eq!(s2.f[0], QMatrix::unit(2, 1, 0));
        let s3 = rep_standard_sl(3).unwrap();
        assert_eq!(s3.e[0].bracket(&s3.f[0]), s3.h[0]);
        assert_eq!(
            s3.coweights[0],
            QMatrix::diagonal(&[ratio(2, 3), ratio(-1, 3), ratio(-1, 3)])
        );
        for m in 2..=5 {
            rep_standard_sl(m).unwrap();
        }
        assert!(rep_standard_sl(1).is_err());
    }

    #[test]
    fn sp_reps() {
        let sp4 = rep_standard_sp(2).unwrap();
        assert_eq!(sp4.h[1], QMatrix::diagonal(&[rat(0), rat(1), rat(-1), rat(0)]));
        assert_eq!(sp4.h[0], QMatrix::diagonal(&[rat(1), rat(-1), rat(1), rat(-1)]));
        assert_eq!(sp4.h[0].bracket(&sp4.f[1]), sp4.f[1].scale(&rat(2)));
        assert_eq!(sp4.h[1].bracket(&sp4.f[0]), sp4.f[0].clone());
        for f in &sp4.f {
            assert!(f.nilpotency_index().unwrap() <= 3);
        }
        for r in 2..=4 {
            rep_standard_sp(r).unwrap();
        }
    }

    #[test]
    fn broken_rep_is_rejected() {
        // sl_3 generators checked against the wrong Cartan matrix
        let f = (0..2).map(|i| QMatrix::unit(3, i + 1, i)).collect();
        let b2 = cartan_data(Family::B, 2).unwrap();
        assert!(matches!(
            MatrixRep::from_lowering(b2, f, 2),
            Err(Error::Representation(_))
        ));
    }

    #[test]
    fn brackets() {
        let s3 = rep_standard_sl(3).unwrap();
        assert_eq!(nested_bracket(&s3, BracketKind::Chain, 1, 1).unwrap(), s3.f[1]);
        let f12 = nested_bracket(&s3, BracketKind::Chain, 0, 1).unwrap();
        assert_eq!(f12, QMatrix::unit(3, 2, 0));
        assert!(s3.f[0].bracket(&f12).is_zero());
        assert!(nested_bracket(&s3, BracketKind::Chain, 1, 0).is_err());
        assert!(nested_bracket(&s3, BracketKind::Chain, 0, 2).is_err());

        let sp4 = rep_standard_sp(2).unwrap();
        let star = nested_bracket(&sp4, BracketKind::Star, 0, 1).unwrap();
        assert_eq!(star, sp4.f[1].bracket(&sp4.f[0]));
        let double = nested_bracket(&sp4, BracketKind::Double, 0, 0).unwrap();
        assert!(!double.is_zero());
        assert!(double.bracket(&sp4.f[0]).is_zero());
        let sp6 = rep_standard_sp(3).unwrap();
        let s = nested_bracket(&sp6, BracketKind::Star, 0, 1).unwrap();
        let top = nested_bracket(&sp6, BracketKind::Star, 0, 2).unwrap();
        assert_eq!(s, sp6.f[1].bracket(&top));
    }
}
