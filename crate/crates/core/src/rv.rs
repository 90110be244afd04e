//! Random variables and laws over the unit-interval sample space.
//!
//! The sample space is fixed once and for all: the half-open interval
//! `[0,1)` carrying length measure, restricted to rational endpoints. It is
//! rich enough to realize every rational law on a finite space, and it is
//! never materialized beyond the interval partitions of the random variables
//! defined on it.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::space::{require_same_space, SpaceRef};

/// One step of a random variable: the half-open interval `[start, end)`
/// mapped to the point with index `point`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub start: Rat,
    pub end: Rat,
    pub point: usize,
}

/// A step function from `[0,1)` into a finite metric space.
///
/// Pieces are kept sorted by start; they partition `[0,1)` exactly. Adjacent
/// pieces mapping to the same point are allowed, so one function has many
/// representations; all operations are invariant under subdivision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomVariable {
    space: SpaceRef,
    pieces: Vec<Piece>,
}

impl RandomVariable {
    /// Validates and builds a random variable. The pieces (in any order)
    /// must tile `[0,1)` without gaps or overlaps.
    pub fn new(space: SpaceRef, mut pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidRandomVariable("no pieces".into()));
        }
        pieces.sort_by(|a, b| a.start.cmp(&b.start));
        let mut expected = Rat::zero();
        for p in &pieces {
            if p.point >= space.len() {
                return Err(Error::InvalidRandomVariable(format!(
                    "point index {} out of range",
                    p.point
                )));
            }
            if p.start != expected {
                return Err(Error::InvalidRandomVariable(format!(
                    "gap or overlap at {}",
                    crate::rat::format_rat(&p.start)
                )));
            }
            if p.end <= p.start {
                return Err(Error::InvalidRandomVariable("empty or reversed interval".into()));
            }
            expected = p.end.clone();
        }
        if !expected.is_one() {
            return Err(Error::InvalidRandomVariable(
                "pieces do not cover [0,1)".into(),
            ));
        }
        Ok(RandomVariable { space, pieces })
    }

    /// The constant random variable at `point`.
    pub fn constant(space: SpaceRef, point: usize) -> Result<Self> {
        RandomVariable::new(
            space,
            vec![Piece {
                start: Rat::zero(),
                end: Rat::one(),
                point,
            }],
        )
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Value at sample `omega` (which must lie in `[0,1)`).
    pub fn value_at(&self, omega: &Rat) -> usize {
        // binary search on sorted starts
        let mut lo = 0usize;
        let mut hi = self.pieces.len();
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if self.pieces[mid].start <= *omega {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        self.pieces[lo].point
    }

    /// Image measure: total interval length mapped to each point.
    pub fn law(&self) -> Law {
        let mut weights = vec![Rat::zero(); self.space.len()];
        for p in &self.pieces {
            weights[p.point] += &p.end - &p.start;
        }
        Law {
            space: self.space.clone(),
            weights,
        }
    }

    /// Pushforward along a point map into another space.
    /// `map[i]` is the image index of point `i`; it must be total.
    pub fn pushforward(&self, target: SpaceRef, map: &[usize]) -> Result<RandomVariable> {
        if map.len() != self.space.len() {
            return Err(Error::InvalidRandomVariable(
                "point map arity does not match the source space".into(),
            ));
        }
        if let Some(&bad) = map.iter().find(|&&m| m >= target.len()) {
            return Err(Error::InvalidRandomVariable(format!(
                "point map image {bad} out of range"
            )));
        }
        let pieces = self
            .pieces
            .iter()
            .map(|p| Piece {
                start: p.start.clone(),
                end: p.end.clone(),
                point: map[p.point],
            })
            .collect();
        RandomVariable::new(target, pieces)
    }
}

/// Law of a random variable (exposed as a free function to mirror the
/// library's operation vocabulary).
pub fn law_of(xi: &RandomVariable) -> Law {
    xi.law()
}

/// A rational probability law on a finite metric space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Law {
    space: SpaceRef,
    weights: Vec<Rat>,
}

impl Law {
    /// Validates weights: nonnegative, one per point, summing to exactly 1.
    pub fn new(space: SpaceRef, weights: Vec<Rat>) -> Result<Self> {
        if weights.len() != space.len() {
            return Err(Error::InvalidLaw(format!(
                "expected {} weights, got {}",
                space.len(),
                weights.len()
            )));
        }
        let mut total = Rat::zero();
        for (i, w) in weights.iter().enumerate() {
            if *w < Rat::zero() {
                return Err(Error::InvalidLaw(format!("negative weight at point {i}")));
            }
            total += w;
        }
        if !total.is_one() {
            return Err(Error::InvalidLaw(format!(
                "weights sum to {}, not 1",
                crate::rat::format_rat(&total)
            )));
        }
        Ok(Law { space, weights })
    }

    /// Point mass at `point`.
    pub fn dirac(space: SpaceRef, point: usize) -> Result<Self> {
        let mut weights = vec![Rat::zero(); space.len()];
        if point >= space.len() {
            return Err(Error::InvalidLaw(format!("point index {point} out of range")));
        }
        weights[point] = Rat::one();
        Law::new(space, weights)
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &Rat {
        &self.weights[i]
    }

    /// Mass of a point subset given as a bitmask (bit i = point i).
    pub fn mass_of_mask(&self, mask: u32) -> Rat {
        let mut total = Rat::zero();
        for i in 0..self.space.len() {
            if mask & (1 << i) != 0 {
                total += &self.weights[i];
            }
        }
        total
    }

    /// Number of points with positive mass.
    pub fn support_size(&self) -> usize {
        self.weights.iter().filter(|w| !w.is_zero()).count()
    }
}

/// Realizes a law as a random variable by stacking atoms in point order as
/// consecutive intervals with cumulative endpoints. Deterministic, and exact:
/// `law_of(realize(p)) == p`.
pub fn realize(law: &Law) -> RandomVariable {
    let mut pieces = Vec::new();
    let mut cursor = Rat::zero();
    for (point, w) in law.weights().iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let end = &cursor + w;
        pieces.push(Piece {
            start: cursor.clone(),
            end: end.clone(),
            point,
        });
        cursor = end;
    }
    RandomVariable::new(law.space().clone(), pieces)
        .expect("a valid law realizes to a valid random variable")
}

/// The sorted list of all interval endpoints of the given random variables:
/// the grid of their common refinement.
pub fn refinement_grid(rvs: &[&RandomVariable]) -> Vec<Rat> {
    let mut cuts: Vec<Rat> = vec![Rat::zero(), Rat::one()];
    for rv in rvs {
        for p in rv.pieces() {
            cuts.push(p.start.clone());
            cuts.push(p.end.clone());
        }
    }
    cuts.sort();
    cuts.dedup();
    cuts
}

/// True when the two random variables agree except on a set of measure zero.
/// On this sample space that means: equal on the common refinement.
pub fn equal_ae(a: &RandomVariable, b: &RandomVariable) -> Result<bool> {
    require_same_space(a.space(), b.space())?;
    let grid = refinement_grid(&[a, b]);
    for w in grid.windows(2) {
        if a.value_at(&w[0]) != b.value_at(&w[0]) {
            debug_assert!(w[1] > w[0]);
            return Ok(false);
        }
    }
    Ok(true)
}
