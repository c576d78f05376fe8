//! Reproduction procedures, diagonal sequences and populations of tuples,
//! labeled by Bruhat cells through their degree vectors.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::critical::{fertility_direction, is_generic, wronskian_target, PolyTuple, ProblemData};
use crate::error::{Error, Result};
use crate::exactalg::{rat, wronskian, Poly, Rational};
use crate::liedata::{degrees_for, weyl_length, WeylWord};

/// Point `(c₁ : c₂)` of the projective line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Projective {
    c1: Rational,
    c2: Rational,
}

impl Projective {
    pub fn new(c1: Rational, c2: Rational) -> Result<Self> {
        if c1.is_zero() && c2.is_zero() {
            return Err(Error::Precondition("projective parameter (0:0)".into()));
        }
        Ok(Projective { c1, c2 })
    }

    /// `(1 : 0)`, the canonical descendant.
    pub fn canonical() -> Self {
        Projective {
            c1: Rational::one(),
            c2: Rational::zero(),
        }
    }

    /// `(0 : 1)`, the base tuple itself.
    pub fn base() -> Self {
        Projective {
            c1: Rational::zero(),
            c2: Rational::one(),
        }
    }

    /// `(1 : c)`.
    pub fn affine(c: Rational) -> Self {
        Projective {
            c1: Rational::one(),
            c2: c,
        }
    }

    pub fn c1(&self) -> &Rational {
        &self.c1
    }

    pub fn c2(&self) -> &Rational {
        &self.c2
    }

    pub fn is_base(&self) -> bool {
        self.c1.is_zero()
    }
}

impl fmt::Display for Projective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.c1, self.c2)
    }
}

/// The one-parameter family of immediate descendants in one direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescendantFamily {
    pub base: PolyTuple,
    pub direction: usize,
    /// Canonical `ỹ_i`: monic, no `x^{deg y_i}` term.
    pub canonical: Poly,
}

impl DescendantFamily {
    pub fn new(y: &PolyTuple, i: usize, p: &ProblemData) -> Result<Self> {
        match fertility_direction(y, i, p)? {
            Some(canonical) => Ok(DescendantFamily {
                base: y.clone(),
                direction: i,
                canonical,
            }),
            None => Err(Error::Infertile {
                direction: i + 1,
                step: None,
            }),
        }
    }

    /// `c₁·ỹ_i + c₂·y_i` in position `i`, monic-normalized.
    pub fn member(&self, c: &Projective) -> PolyTuple {
        let i = self.direction;
        let entry = &self.canonical.scale(&c.c1) + &self.base.get(i).scale(&c.c2);
        self.base
            .with(i, &entry)
            .expect("canonical and base entries are independent")
    }
}

/// Simple reproduction in direction `i`.
pub fn descend(y: &PolyTuple, i: usize, c: &Projective, p: &ProblemData) -> Result<PolyTuple> {
    Ok(DescendantFamily::new(y, i, p)?.member(c))
}

/// Tuples and diagonal sequence produced by a sequence of simple reproductions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReproductionPath {
    pub seed: PolyTuple,
    pub indices: Vec<usize>,
    pub parameters: Vec<Projective>,
    /// `y^{[i_1..i_l]}` for `l = 1..k`.
    pub tuples: Vec<PolyTuple>,
    /// Monic `y_{i_l}^{[i_1..i_l]}`.
    pub diagonal: Vec<Poly>,
    /// Scalars making the generation relations hold with constant one when
    /// the seed is taken monic: the exact diagonal entries are `scales[l]·diagonal[l]`.
    pub scales: Vec<Rational>,
}

impl ReproductionPath {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn last(&self) -> &PolyTuple {
        self.tuples.last().unwrap_or(&self.seed)
    }

    pub fn exact_diagonal(&self) -> Vec<Poly> {
        self.diagonal
            .iter()
            .zip(&self.scales)
            .map(|(d, s)| d.scale(s))
            .collect()
    }

    /// Exactly normalized entries of the tuple after `steps` reproductions.
    pub fn exact_tuple(&self, steps: usize) -> Vec<Poly> {
        let mut out = self.seed.polys().to_vec();
        for l in 0..steps {
            out[self.indices[l]] = self.diagonal[l].scale(&self.scales[l]);
        }
        out
    }

    /// `W(Y_{i_l}^{prev}, Y_{i_l}^{new}) = T_{i_l} ∏_{j≠i_l} (Y_j^{prev})^{−a_{i_l,j}}` for all `l`.
    pub fn verify(&self, p: &ProblemData) -> Result<()> {
        for l in 0..self.len() {
            let i = self.indices[l];
            let prev = self.exact_tuple(l);
            let target = exact_target(&prev, i, p)?;
            let w = wronskian(&prev[i], &self.diagonal[l].scale(&self.scales[l]));
            if w != target {
                return Err(Error::Verification(format!(
                    "generation relation fails at step {}",
                    l + 1
                )));
            }
            for j in 0..p.rank() {
                if j != i && self.tuples[l].get(j) != &prev[j].monic() {
                    return Err(Error::Verification(format!(
                        "entry {} changed off-diagonal at step {}",
                        j + 1,
                        l + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

fn exact_target(polys: &[Poly], i: usize, p: &ProblemData) -> Result<Poly> {
    let tuple = PolyTuple::new(polys.to_vec())?;
    let monic = wronskian_target(&tuple, i, p)?;
    // wronskian_target works with monic entries; restore the leading factors
    let factor = (0..p.rank())
        .filter(|&j| j != i && p.cartan.a[i][j] != 0)
        .fold(Rational::one(), |acc, j| {
            let lead = polys[j].leading().expect("nonzero").clone();
            let mut f = acc;
            for _ in 0..(-p.cartan.a[i][j]) {
                f *= &lead;
            }
            f
        });
    Ok(monic.scale(&factor))
}

/// Applies the reproductions `indices` with `parameters`, recording the
/// intermediate tuples and the exactly normalized diagonal sequence.
pub fn reproduce_path(
    seed: &PolyTuple,
    indices: &[usize],
    parameters: &[Projective],
    p: &ProblemData,
) -> Result<ReproductionPath> {
    if indices.len() != parameters.len() {
        return Err(Error::Precondition(format!(
            "{} indices but {} parameters",
            indices.len(),
            parameters.len()
        )));
    }
    let mut path = ReproductionPath {
        seed: seed.clone(),
        indices: indices.to_vec(),
        parameters: parameters.to_vec(),
        tuples: Vec::new(),
        diagonal: Vec::new(),
        scales: Vec::new(),
    };
    let mut exact = seed.polys().to_vec();
    let mut current = seed.clone();
    for (step, (&i, c)) in indices.iter().zip(parameters).enumerate() {
        if c.is_base() {
            return Err(Error::Precondition(format!(
                "parameter (0:1) at step {} does not reproduce",
                step + 1
            )));
        }
        let family = DescendantFamily::new(&current, i, p).map_err(|e| match e {
            Error::Infertile { direction, .. } => Error::Infertile {
                direction,
                step: Some(step + 1),
            },
            e => e,
        })?;
        let next = family.member(c);
        let new_entry = next.get(i).clone();
        let target = exact_target(&exact, i, p)?;
        let w = wronskian(&exact[i], &new_entry);
        let scale = match (target.leading(), w.leading()) {
            (Some(t), Some(w)) => t / w,
            _ => {
                return Err(Error::Verification(format!(
                    "vanishing Wronskian at step {}",
                    step + 1
                )))
            }
        };
        exact[i] = new_entry.scale(&scale);
        path.diagonal.push(new_entry);
        path.scales.push(scale);
        path.tuples.push(next.clone());
        current = next;
    }
    path.verify(p)?;
    Ok(path)
}

/// A cell of a population.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellInfo {
    pub word: WeylWord,
    pub dimension: usize,
    pub sample: PolyTuple,
}

/// A canonical descendant that failed genericity and was replaced by another
/// family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exceptional {
    pub from: Vec<usize>,
    pub direction: usize,
    pub used: Projective,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PopulationSummary {
    pub cells: BTreeMap<Vec<usize>, CellInfo>,
    /// Degree vector of the member with dominant weight at infinity.
    pub base: Vec<usize>,
    pub exceptional: Vec<Exceptional>,
    pub descents: usize,
}

/// Parameters `c₂` tried when the canonical descendant is not generic.
fn fallback_parameters() -> impl Iterator<Item = Rational> {
    (1..=8i64).flat_map(|k| [rat(k), rat(-k)])
}

/// Breadth-first closure of `seed` under canonical reproductions.
///
/// When the canonical member of a family is not generic, the first generic
/// member `(1 : c)` with small integer `c` is kept instead and the event is
/// recorded in `exceptional`.
pub fn explore(seed: &PolyTuple, p: &ProblemData) -> Result<PopulationSummary> {
    let c = &p.cartan;
    let r = c.rank;
    let cap = c.weyl_group().len() * r;
    let mut samples: BTreeMap<Vec<usize>, PolyTuple> = BTreeMap::new();
    let mut exceptional = Vec::new();
    samples.insert(seed.degrees(), seed.clone());
    let mut queue = VecDeque::from([seed.clone()]);
    let mut descents = 0;
    while let Some(y) = queue.pop_front() {
        for i in 0..r {
            descents += 1;
            if descents > cap {
                return Err(Error::Exploration(format!(
                    "more than {cap} descents without closing"
                )));
            }
            let family = match DescendantFamily::new(&y, i, p) {
                Ok(f) => f,
                Err(Error::Infertile { .. }) => continue,
                Err(e) => return Err(e),
            };
            let mut next = family.member(&Projective::canonical());
            if samples.contains_key(&next.degrees()) {
                continue;
            }
            if !is_generic(&next, p).is_generic() {
                if let Some(c2) = fallback_parameters()
                    .find(|c2| is_generic(&family.member(&Projective::affine(c2.clone())), p).is_generic())
                {
                    let used = Projective::affine(c2);
                    next = family.member(&used);
                    exceptional.push(Exceptional {
                        from: y.degrees(),
                        direction: i,
                        used,
                    });
                }
            }
            samples.insert(next.degrees(), next.clone());
            queue.push_back(next);
        }
    }
    let base = samples
        .keys()
        .filter(|l| {
            c.weight_at_infinity(&p.weights, l)
                .coords
                .iter()
                .all(|m| !m.is_negative())
        })
        .min_by_key(|l| l.iter().sum::<usize>())
        .cloned()
        .ok_or_else(|| Error::Exploration("no member with dominant weight at infinity".into()))?;
    let mut cells = BTreeMap::new();
    for (l, sample) in samples {
        let word = cell_of(&sample, &base, p)?;
        let dimension = weyl_length(&word, c)?;
        cells.insert(l, CellInfo { word, dimension, sample });
    }
    Ok(PopulationSummary {
        cells,
        base,
        exceptional,
        descents,
    })
}

/// Shortest `w` with `l^w = deg y`, relative to base degrees `l`.
pub fn cell_of(y: &PolyTuple, l: &[usize], p: &ProblemData) -> Result<WeylWord> {
    let target = y.degrees();
    p.cartan
        .weyl_group()
        .into_iter()
        .find(|w| degrees_for(w, &p.weights, l, &p.cartan).is_ok_and(|lw| lw == target))
        .ok_or_else(|| Error::NotACell(format!("no group element maps {l:?} to {target:?}")))
}
