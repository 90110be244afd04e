//! Finite metric spaces with exact rational distances.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::Rat;

/// A finite metric space: named points and an exact rational distance matrix.
///
/// Construction validates the metric axioms; instances are immutable and
/// shared behind `Arc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinMetricSpace {
    points: Vec<String>,
    dist: Vec<Vec<Rat>>,
}

/// Shared handle to a space. Equality is structural.
pub type SpaceRef = Arc<FinMetricSpace>;

impl FinMetricSpace {
    /// Validates and builds a space. Rejects the first axiom violation found,
    /// reporting the offending indices.
    pub fn new(points: Vec<String>, dist: Vec<Vec<Rat>>) -> Result<SpaceRef> {
        let n = points.len();
        if n == 0 {
            return Err(Error::InvalidSpace("empty point set".into()));
        }
        {
            let mut seen = std::collections::BTreeSet::new();
            for p in &points {
                if !seen.insert(p) {
                    return Err(Error::InvalidSpace(format!("duplicate point {p:?}")));
                }
            }
        }
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSpace(format!(
                "distance matrix must be {n}x{n}"
            )));
        }
        for i in 0..n {
            if !dist[i][i].is_zero() {
                return Err(Error::InvalidSpace(format!("d[{i}][{i}] must be 0")));
            }
            for j in 0..n {
                if dist[i][j] != dist[j][i] {
                    return Err(Error::InvalidSpace(format!(
                        "d[{i}][{j}] != d[{j}][{i}]"
                    )));
                }
                if i != j && dist[i][j] <= Rat::zero() {
                    return Err(Error::InvalidSpace(format!(
                        "d[{i}][{j}] must be positive for distinct points"
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if dist[i][k] > &dist[i][j] + &dist[j][k] {
                        return Err(Error::TriangleViolation { i, j, k });
                    }
                }
            }
        }
        Ok(Arc::new(FinMetricSpace { points, dist }))
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// True when the space has a single point.
    pub fn is_singleton(&self) -> bool {
        self.points.len() == 1
    }

    /// Point identifiers, in index order.
    pub fn points(&self) -> &[String] {
        &self.points
    }

    /// Index of a named point.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p == name)
    }

    /// Distance between points `i` and `j`.
    pub fn dist(&self, i: usize, j: usize) -> &Rat {
        &self.dist[i][j]
    }

    /// The full distance matrix.
    pub fn dist_matrix(&self) -> &[Vec<Rat>] {
        &self.dist
    }

    /// All distinct distance values, sorted ascending. Always contains 0.
    pub fn distance_values(&self) -> Vec<Rat> {
        let mut vals: Vec<Rat> = vec![Rat::zero()];
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                vals.push(self.dist[i][j].clone());
            }
        }
        vals.sort();
        vals.dedup();
        vals
    }

    /// Distinct positive distance values, sorted ascending.
    pub fn positive_distance_values(&self) -> Vec<Rat> {
        let mut vals = self.distance_values();
        vals.retain(|v| !v.is_zero());
        vals
    }

    /// The smallest positive distance, when the space is not a singleton.
    pub fn min_positive_distance(&self) -> Option<Rat> {
        self.positive_distance_values().into_iter().next()
    }

    /// The largest distance in the space.
    pub fn max_distance(&self) -> Rat {
        self.distance_values().pop().unwrap()
    }
}

/// Checks that two operands share a space (structurally).
pub fn require_same_space(a: &SpaceRef, b: &SpaceRef) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}
