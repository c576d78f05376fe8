//! Cartan data of finite simple types, Langlands duality, the shifted Weyl
//! action and the degree bookkeeping attached to Weyl group elements.
//!
//! Node numbering follows Bourbaki. Entries are `a[i][j] = 2(αᵢ,αⱼ)/(αᵢ,αᵢ)`,
//! symmetrizers `d[i] = (αᵢ,αᵢ)/2`, so `(αᵢ,αⱼ) = d[i]·a[i][j]`. In `B_r` the
//! last simple root is short.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    fn dual(self) -> Family {
        match self {
            Family::B => Family::C,
            Family::C => Family::B,
            f => f,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub family: Family,
    pub rank: usize,
    /// Cartan matrix, `a[i][i] = 2`.
    pub a: Vec<Vec<i64>>,
    pub d_sym: Vec<i64>,
    /// Inverse of `a`.
    pub b: Vec<Vec<Rational>>,
    /// Determinant of `a`.
    pub det_d: i64,
}

/// Gram matrix `(αᵢ, αⱼ)` of the simple roots.
fn gram(family: Family, rank: usize) -> Result<Vec<Vec<i64>>> {
    let valid = match family {
        Family::A => rank >= 1,
        Family::B | Family::C => rank >= 2,
        Family::D => rank >= 4,
        Family::E => (6..=8).contains(&rank),
        Family::F => rank == 4,
        Family::G => rank == 2,
    };
    if !valid {
        return Err(Error::InvalidType {
            family: family.letter(),
            rank,
        });
    }
    let mut g = vec![vec![0i64; rank]; rank];
    let link = |i: usize, j: usize, v: i64, g: &mut Vec<Vec<i64>>| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match family {
        Family::A | Family::D | Family::E => {
            for i in 0..rank {
                g[i][i] = 2;
            }
            match family {
                Family::A => (0..rank - 1).for_each(|i| link(i, i + 1, -1, &mut g)),
                Family::D => {
                    (0..rank - 2).for_each(|i| link(i, i + 1, -1, &mut g));
                    link(rank - 3, rank - 1, -1, &mut g);
                }
                _ => {
                    // 1-3-4-5-…, with 2 attached to 4
                    link(0, 2, -1, &mut g);
                    link(1, 3, -1, &mut g);
                    (2..rank - 1).for_each(|i| link(i, i + 1, -1, &mut g));
                }
            }
        }
        Family::B => {
            for i in 0..rank {
                g[i][i] = if i + 1 < rank { 4 } else { 2 };
            }
            (0..rank - 1).for_each(|i| link(i, i + 1, -2, &mut g));
        }
        Family::C => {
            for i in 0..rank {
                g[i][i] = if i + 1 < rank { 2 } else { 4 };
            }
            (0..rank - 2).for_each(|i| link(i, i + 1, -1, &mut g));
            link(rank - 2, rank - 1, -2, &mut g);
        }
        Family::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(0, 1, -2, &mut g);
            link(1, 2, -2, &mut g);
            link(2, 3, -1, &mut g);
        }
        Family::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            link(0, 1, -3, &mut g);
        }
    }
    Ok(g)
}

/// Exact inverse and determinant of a square integer matrix.
pub(crate) fn invert(a: &[Vec<i64>]) -> Option<(Vec<Vec<Rational>>, Rational)> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&v| rat(v)).collect();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let mut det = Rational::one();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        let inv = p.recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
    }
    Some((m.into_iter().map(|row| row[n..].to_vec()).collect(), det))
}

impl CartanData {
    fn from_matrix(family: Family, a: Vec<Vec<i64>>, d_sym: Vec<i64>) -> CartanData {
        let (b, det) = invert(&a).expect("finite type Cartan matrices are invertible");
        CartanData {
            family,
            rank: a.len(),
            a,
            d_sym,
            b,
            det_d: det.to_integer().to_i64().expect("small determinant"),
        }
    }

    /// `(αᵢ, αⱼ) = d_i a_{i,j}`.
    pub fn form(&self, i: usize, j: usize) -> i64 {
        self.d_sym[i] * self.a[i][j]
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rank {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank,
            });
        }
        Ok(())
    }

    /// Simple reflection in root coordinates.
    fn reflect_root(&self, i: usize, beta: &mut [i64]) {
        let pairing: i64 = (0..self.rank).map(|j| beta[j] * self.a[i][j]).sum();
        beta[i] -= pairing;
    }

    /// Positive roots as coefficient vectors in the simple roots.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..self.rank {
            let mut e = vec![0; self.rank];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..self.rank {
                let mut next = beta.clone();
                self.reflect_root(i, &mut next);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|b| b.iter().all(|&c| c >= 0)).collect();
        pos.sort_by_key(|b| (b.iter().sum::<i64>(), b.clone()));
        pos
    }

    /// Linear Weyl action in coroot-pairing coordinates: `(sᵢλ)_j = m_j − m_i a_{j,i}`.
    fn reflect_weight(&self, i: usize, m: &mut [Rational]) {
        let mi = m[i].clone();
        for (j, mj) in m.iter_mut().enumerate() {
            *mj -= &mi * rat(self.a[j][i]);
        }
    }

    /// Group elements as shortest words, in breadth-first order from the identity.
    pub fn weyl_group(&self) -> Vec<WeylWord> {
        let rho = Weight::rho(self.rank);
        let mut seen = HashSet::new();
        seen.insert(rho.coords.clone());
        let mut queue = VecDeque::from([(WeylWord::identity(), rho.coords)]);
        let mut out = Vec::new();
        while let Some((w, img)) = queue.pop_front() {
            for i in 0..self.rank {
                let mut next = img.clone();
                self.reflect_weight(i, &mut next);
                if seen.insert(next.clone()) {
                    let mut letters = vec![i];
                    letters.extend_from_slice(&w.letters);
                    queue.push_back((WeylWord { letters }, next));
                }
            }
            out.push(w);
        }
        out
    }

    /// Linear action `w(λ)`, letters applied right to left.
    pub fn act(&self, w: &WeylWord, lambda: &Weight) -> Result<Weight> {
        let mut m = lambda.coords.clone();
        for &i in w.letters.iter().rev() {
            self.check_index(i)?;
            self.reflect_weight(i, &mut m);
        }
        Ok(Weight { coords: m })
    }

    /// Two words name the same group element iff they move `ρ` identically.
    pub fn same_element(&self, u: &WeylWord, w: &WeylWord) -> Result<bool> {
        let rho = Weight::rho(self.rank);
        Ok(self.act(u, &rho)? == self.act(w, &rho)?)
    }

    /// `ΣΛ_s − Σ l_i α_i`.
    pub fn weight_at_infinity(&self, weights: &[Weight], l: &[usize]) -> Weight {
        let mut coords = vec![Rational::zero(); self.rank];
        for w in weights {
            for (c, m) in coords.iter_mut().zip(&w.coords) {
                *c += m;
            }
        }
        for (j, c) in coords.iter_mut().enumerate() {
            for (i, &li) in l.iter().enumerate() {
                *c -= rat(self.a[j][i] * li as i64);
            }
        }
        Weight { coords }
    }
}

/// Cartan data for a finite simple type.
pub fn cartan_data(family: Family, rank: usize) -> Result<CartanData> {
    let g = gram(family, rank)?;
    let a = (0..rank)
        .map(|i| (0..rank).map(|j| 2 * g[i][j] / g[i][i]).collect())
        .collect();
    let d_sym = (0..rank).map(|i| g[i][i] / 2).collect();
    Ok(CartanData::from_matrix(family, a, d_sym))
}

/// Data of the algebra with the transposed Cartan matrix.
pub fn langlands_dual(c: &CartanData) -> CartanData {
    let r = c.rank;
    let a: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| c.a[j][i]).collect()).collect();
    let lcm = c
        .d_sym
        .iter()
        .fold(1i64, |acc, &d| num_integer::lcm(acc, d));
    let d_sym = c.d_sym.iter().map(|&d| lcm / d).collect();
    CartanData::from_matrix(c.family.dual(), a, d_sym)
}

/// Weight in coroot-pairing coordinates `m_i = ⟨λ, α_i^∨⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub coords: Vec<Rational>,
}

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Self {
        Weight { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight {
            coords: coords.iter().map(|&c| rat(c)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        Weight {
            coords: vec![Rational::zero(); rank],
        }
    }

    pub fn rho(rank: usize) -> Self {
        Weight {
            coords: vec![Rational::one(); rank],
        }
    }

    pub fn is_dominant_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer() && !c.is_negative())
    }

    /// Integer coordinates when all coordinates are integral.
    pub fn integer_coords(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }
}

/// Word `s_{i_1} ⋯ s_{i_k}` in the simple reflections; letters are 0-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylWord {
    pub letters: Vec<usize>,
}

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord::default()
    }

    pub fn new(letters: Vec<usize>) -> Self {
        WeylWord { letters }
    }

    pub fn from_one_based(letters: &[usize]) -> Self {
        WeylWord {
            letters: letters.iter().map(|&l| l - 1).collect(),
        }
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.letters.iter().map(|&l| l + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| format!("s{}", l + 1)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `w·λ = w(λ + ρ) − ρ`, letter by letter right to left:
/// `(sᵢ·λ)_j = m_j − (m_i + 1)·a_{j,i}`.
pub fn shifted_action(w: &WeylWord, lambda: &Weight, c: &CartanData) -> Result<Weight> {
    let mut m = lambda.coords.clone();
    for &i in w.letters.iter().rev() {
        c.check_index(i)?;
        let shift = &m[i] + Rational::one();
        for (j, mj) in m.iter_mut().enumerate() {
            *mj -= &shift * rat(c.a[j][i]);
        }
    }
    Ok(Weight { coords: m })
}

/// Solves `w·Λ_∞ = ΣΛ_s − Σ l^w_i α_i` for `l^w`, with `Λ_∞ = ΣΛ_s − Σ l_i α_i`.
pub fn degrees_for(
    w: &WeylWord,
    weights: &[Weight],
    l: &[usize],
    c: &CartanData,
) -> Result<Vec<usize>> {
    let r = c.rank;
    if l.len() != r {
        return Err(Error::Precondition(format!(
            "degree vector has {} entries, rank is {r}",
            l.len()
        )));
    }
    let lambda_inf = c.weight_at_infinity(weights, l);
    let moved = shifted_action(w, &lambda_inf, c)?;
    let total = c.weight_at_infinity(weights, &vec![0; r]);
    let diff: Vec<Rational> = (0..r).map(|j| &total.coords[j] - &moved.coords[j]).collect();
    (0..r)
        .map(|i| {
            let v: Rational = (0..r).map(|j| &c.b[i][j] * &diff[j]).sum();
            if !v.is_integer() || v.is_negative() {
                return Err(Error::NotACell(format!(
                    "{w} gives degree {v} in coordinate {}",
                    i + 1
                )));
            }
            Ok(v.to_integer().to_usize().expect("small degree"))
        })
        .collect()
}

/// Length of the group element: positive roots sent to negative roots.
pub fn weyl_length(w: &WeylWord, c: &CartanData) -> Result<usize> {
    for &i in &w.letters {
        c.check_index(i)?;
    }
    Ok(c
        .positive_roots()
        .into_iter()
        .filter(|beta| {
            let mut b = beta.clone();
            for &i in w.letters.iter().rev() {
                c.reflect_root(i, &mut b);
            }
            b.iter().any(|&x| x < 0)
        })
        .count())
}
