//! Joint laws: coupling matrices and k-coordinate chain laws.
//!
//! `Coupling` is a dense joint law on a product of two spaces, the shape the
//! transport optimizer works with. `ChainLaw` is a sparse tensor on a product
//! of `k` spaces, the shape produced by gluing and by joint laws of several
//! random variables. Only positive atoms are stored in a `ChainLaw`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::rv::{refinement_grid, Law, Piece, RandomVariable};
use crate::space::{require_same_space, SpaceRef};

/// A joint probability law on `X_0 × … × X_{k-1}`, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainLaw {
    spaces: Vec<SpaceRef>,
    entries: BTreeMap<Vec<usize>, Rat>,
}

impl ChainLaw {
    /// Validates and builds a chain law from (multi-index, mass) atoms.
    /// Zero atoms are dropped; duplicate indices are summed.
    pub fn new(spaces: Vec<SpaceRef>, atoms: Vec<(Vec<usize>, Rat)>) -> Result<Self> {
        if spaces.is_empty() {
            return Err(Error::InvalidChain("no coordinate spaces".into()));
        }
        let mut entries: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
        let mut total = Rat::zero();
        for (idx, mass) in atoms {
            if idx.len() != spaces.len() {
                return Err(Error::InvalidChain(format!(
                    "index arity {} does not match {} coordinates",
                    idx.len(),
                    spaces.len()
                )));
            }
            for (axis, (&i, space)) in idx.iter().zip(&spaces).enumerate() {
                if i >= space.len() {
                    return Err(Error::InvalidChain(format!(
                        "index {i} out of range on axis {axis}"
                    )));
                }
            }
            if mass < Rat::zero() {
                return Err(Error::InvalidChain("negative mass".into()));
            }
            if mass.is_zero() {
                continue;
            }
            total += &mass;
            *entries.entry(idx).or_insert_with(Rat::zero) += mass;
        }
        if !total.is_one() {
            return Err(Error::InvalidChain(format!(
                "total mass {} is not 1",
                crate::rat::format_rat(&total)
            )));
        }
        Ok(ChainLaw { spaces, entries })
    }

    /// The product law of independent coordinates.
    pub fn product(laws: &[&Law]) -> Result<Self> {
        if laws.is_empty() {
            return Err(Error::InvalidChain("no coordinate spaces".into()));
        }
        let spaces: Vec<SpaceRef> = laws.iter().map(|l| l.space().clone()).collect();
        let mut atoms: Vec<(Vec<usize>, Rat)> = vec![(Vec::new(), Rat::one())];
        for law in laws {
            let mut next = Vec::new();
            for (idx, mass) in &atoms {
                for (i, w) in law.weights().iter().enumerate() {
                    if w.is_zero() {
                        continue;
                    }
                    let mut idx2 = idx.clone();
                    idx2.push(i);
                    next.push((idx2, mass * w));
                }
            }
            atoms = next;
        }
        ChainLaw::new(spaces, atoms)
    }

    /// Number of coordinates.
    pub fn arity(&self) -> usize {
        self.spaces.len()
    }

    pub fn spaces(&self) -> &[SpaceRef] {
        &self.spaces
    }

    /// Positive atoms in lexicographic index order.
    pub fn atoms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rat)> {
        self.entries.iter()
    }

    /// Mass at a multi-index (zero when absent).
    pub fn mass(&self, idx: &[usize]) -> Rat {
        self.entries.get(idx).cloned().unwrap_or_else(Rat::zero)
    }

    /// Number of positive atoms.
    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    /// Image law under the projection onto the axes in `keep` (as a set;
    /// kept in increasing axis order). Errors on an empty or out-of-range set.
    pub fn marginal(&self, keep: &[usize]) -> Result<ChainLaw> {
        let mut axes: Vec<usize> = keep.to_vec();
        axes.sort_unstable();
        axes.dedup();
        if axes.is_empty() {
            return Err(Error::InvalidChain("marginal over empty axis set".into()));
        }
        if let Some(&bad) = axes.iter().find(|&&a| a >= self.arity()) {
            return Err(Error::InvalidChain(format!(
                "marginal axis {bad} out of range"
            )));
        }
        let spaces: Vec<SpaceRef> = axes.iter().map(|&a| self.spaces[a].clone()).collect();
        let mut entries: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
        for (idx, mass) in &self.entries {
            let proj: Vec<usize> = axes.iter().map(|&a| idx[a]).collect();
            *entries.entry(proj).or_insert_with(Rat::zero) += mass;
        }
        Ok(ChainLaw { spaces, entries })
    }

    /// Marginal law of a single axis.
    pub fn axis_law(&self, axis: usize) -> Result<Law> {
        if axis >= self.arity() {
            return Err(Error::InvalidChain(format!("axis {axis} out of range")));
        }
        let space = self.spaces[axis].clone();
        let mut weights = vec![Rat::zero(); space.len()];
        for (idx, mass) in &self.entries {
            weights[idx[axis]] += mass;
        }
        Law::new(space, weights)
    }
}

/// Joint law of finitely many random variables over the shared sample space:
/// the mass of the common refinement of their interval partitions.
pub fn joint_law(rvs: &[&RandomVariable]) -> Result<ChainLaw> {
    if rvs.is_empty() {
        return Err(Error::InvalidChain("joint law of no random variables".into()));
    }
    let spaces: Vec<SpaceRef> = rvs.iter().map(|rv| rv.space().clone()).collect();
    let grid = refinement_grid(rvs);
    let mut atoms: Vec<(Vec<usize>, Rat)> = Vec::new();
    for w in grid.windows(2) {
        let idx: Vec<usize> = rvs.iter().map(|rv| rv.value_at(&w[0])).collect();
        atoms.push((idx, &w[1] - &w[0]));
    }
    ChainLaw::new(spaces, atoms)
}

/// Realizes a chain law as one random variable per coordinate, stacking the
/// atoms in lexicographic order as consecutive intervals. The joint law of
/// the result is exactly the input.
pub fn realize_chain(chain: &ChainLaw) -> Vec<RandomVariable> {
    let k = chain.arity();
    let mut pieces: Vec<Vec<Piece>> = vec![Vec::new(); k];
    let mut cursor = Rat::zero();
    for (idx, mass) in chain.atoms() {
        let end = &cursor + mass;
        for (axis, piece_list) in pieces.iter_mut().enumerate() {
            piece_list.push(Piece {
                start: cursor.clone(),
                end: end.clone(),
                point: idx[axis],
            });
        }
        cursor = end;
    }
    pieces
        .into_iter()
        .enumerate()
        .map(|(axis, ps)| {
            RandomVariable::new(chain.spaces()[axis].clone(), ps)
                .expect("chain law atoms tile the unit interval")
        })
        .collect()
}

/// Rebuilds the given random variables on a permuted interval layout: the
/// segments of their common refinement are laid out in the order given by
/// `perm`. The joint law (hence every marginal law) is preserved exactly.
pub fn relayout(rvs: &[&RandomVariable], perm: &[usize]) -> Result<Vec<RandomVariable>> {
    let grid = refinement_grid(rvs);
    let segments = grid.len() - 1;
    if perm.len() != segments {
        return Err(Error::InvalidChain(format!(
            "permutation of length {} for {} refinement segments",
            perm.len(),
            segments
        )));
    }
    let mut seen = vec![false; segments];
    for &s in perm {
        if s >= segments || seen[s] {
            return Err(Error::InvalidChain("not a permutation".into()));
        }
        seen[s] = true;
    }
    let mut pieces: Vec<Vec<Piece>> = vec![Vec::new(); rvs.len()];
    let mut cursor = Rat::zero();
    for &s in perm {
        let (a, b) = (&grid[s], &grid[s + 1]);
        let end = &cursor + &(b - a);
        for (rv, piece_list) in rvs.iter().zip(pieces.iter_mut()) {
            piece_list.push(Piece {
                start: cursor.clone(),
                end: end.clone(),
                point: rv.value_at(a),
            });
        }
        cursor = end;
    }
    rvs.iter()
        .zip(pieces)
        .map(|(rv, ps)| RandomVariable::new(rv.space().clone(), ps))
        .collect()
}

/// A joint probability law on `X × Y`, stored densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coupling {
    row_space: SpaceRef,
    col_space: SpaceRef,
    entries: Vec<Vec<Rat>>,
}

impl Coupling {
    /// Validates and builds a coupling from a dense matrix.
    pub fn new(row_space: SpaceRef, col_space: SpaceRef, entries: Vec<Vec<Rat>>) -> Result<Self> {
        let (m, n) = (row_space.len(), col_space.len());
        if entries.len() != m || entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidChain(format!(
                "coupling matrix must be {m}x{n}"
            )));
        }
        let mut total = Rat::zero();
        for row in &entries {
            for e in row {
                if *e < Rat::zero() {
                    return Err(Error::InvalidChain("negative mass".into()));
                }
                total += e;
            }
        }
        if !total.is_one() {
            return Err(Error::InvalidChain(format!(
                "total mass {} is not 1",
                crate::rat::format_rat(&total)
            )));
        }
        Ok(Coupling {
            row_space,
            col_space,
            entries,
        })
    }

    /// The independent coupling `P ⊗ Q`.
    pub fn product(p: &Law, q: &Law) -> Coupling {
        let entries = p
            .weights()
            .iter()
            .map(|pi| q.weights().iter().map(|qj| pi * qj).collect())
            .collect();
        Coupling {
            row_space: p.space().clone(),
            col_space: q.space().clone(),
            entries,
        }
    }

    /// The diagonal coupling of a law with itself.
    pub fn diagonal(p: &Law) -> Coupling {
        let n = p.space().len();
        let mut entries = vec![vec![Rat::zero(); n]; n];
        for (i, w) in p.weights().iter().enumerate() {
            entries[i][i] = w.clone();
        }
        Coupling {
            row_space: p.space().clone(),
            col_space: p.space().clone(),
            entries,
        }
    }

    pub fn row_space(&self) -> &SpaceRef {
        &self.row_space
    }

    pub fn col_space(&self) -> &SpaceRef {
        &self.col_space
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    /// First marginal, a law on the row space.
    pub fn row_marginal(&self) -> Law {
        let weights = self
            .entries
            .iter()
            .map(|row| row.iter().fold(Rat::zero(), |acc, e| acc + e))
            .collect();
        Law::new(self.row_space.clone(), weights).expect("marginal of a coupling is a law")
    }

    /// Second marginal, a law on the column space.
    pub fn col_marginal(&self) -> Law {
        let n = self.col_space.len();
        let mut weights = vec![Rat::zero(); n];
        for row in &self.entries {
            for (j, e) in row.iter().enumerate() {
                weights[j] += e;
            }
        }
        Law::new(self.col_space.clone(), weights).expect("marginal of a coupling is a law")
    }

    /// View as a 2-coordinate chain law.
    pub fn to_chain(&self) -> ChainLaw {
        let mut atoms = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    atoms.push((vec![i, j], e.clone()));
                }
            }
        }
        ChainLaw::new(
            vec![self.row_space.clone(), self.col_space.clone()],
            atoms,
        )
        .expect("a coupling is a valid chain law")
    }

    /// Converts a 2-coordinate chain law back to a dense coupling.
    pub fn from_chain(chain: &ChainLaw) -> Result<Coupling> {
        if chain.arity() != 2 {
            return Err(Error::InvalidChain(format!(
                "expected arity 2, got {}",
                chain.arity()
            )));
        }
        let (rs, cs) = (chain.spaces()[0].clone(), chain.spaces()[1].clone());
        let mut entries = vec![vec![Rat::zero(); cs.len()]; rs.len()];
        for (idx, mass) in chain.atoms() {
            entries[idx[0]][idx[1]] = mass.clone();
        }
        Coupling::new(rs, cs, entries)
    }

    /// Realizes the coupling as a pair of random variables with this joint law.
    pub fn realize_pair(&self) -> (RandomVariable, RandomVariable) {
        let mut rvs = realize_chain(&self.to_chain());
        let eta = rvs.pop().expect("two coordinates");
        let xi = rvs.pop().expect("two coordinates");
        (xi, eta)
    }

    /// Total mass on cells selected by the predicate.
    pub fn mass_where(&self, mut pred: impl FnMut(usize, usize) -> bool) -> Rat {
        let mut total = Rat::zero();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !e.is_zero() && pred(i, j) {
                    total += e;
                }
            }
        }
        total
    }

    /// Largest distance carried by the support. Requires both coordinates on
    /// the same space.
    pub fn support_max_distance(&self) -> Result<Rat> {
        require_same_space(&self.row_space, &self.col_space)?;
        let mut max = Rat::zero();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !e.is_zero() && *self.row_space.dist(i, j) > max {
                    max = self.row_space.dist(i, j).clone();
                }
            }
        }
        Ok(max)
    }

    /// Distribution of the distance between the two coordinates:
    /// sorted `(value, mass)` pairs with positive mass. Requires both
    /// coordinates on the same space.
    pub fn distance_distribution(&self) -> Result<Vec<(Rat, Rat)>> {
        require_same_space(&self.row_space, &self.col_space)?;
        let mut by_value: BTreeMap<Rat, Rat> = BTreeMap::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    *by_value
                        .entry(self.row_space.dist(i, j).clone())
                        .or_insert_with(Rat::zero) += e;
                }
            }
        }
        Ok(by_value.into_iter().collect())
    }
}

/// Glues two couplings along a shared middle marginal into a law on
/// `X_0 × X_1 × X_2` via conditional independence given the middle
/// coordinate. Both prescribed two-coordinate marginals are reproduced
/// exactly; middle atoms of mass zero contribute nothing.
pub fn glue(pi1: &Coupling, pi2: &Coupling) -> Result<ChainLaw> {
    let mid1 = pi1.col_marginal();
    let mid2 = pi2.row_marginal();
    require_same_space(pi1.col_space(), pi2.row_space())?;
    if mid1 != mid2 {
        return Err(Error::MarginalMismatch(
            "middle marginals of the two couplings differ".into(),
        ));
    }
    let mu = mid1;
    let mut atoms = Vec::new();
    for (x0, row) in pi1.entries().iter().enumerate() {
        for (x1, e1) in row.iter().enumerate() {
            if e1.is_zero() {
                continue;
            }
            for (x2, e2) in pi2.entries()[x1].iter().enumerate() {
                if e2.is_zero() {
                    continue;
                }
                atoms.push((vec![x0, x1, x2], e1 * e2 / mu.weight(x1)));
            }
        }
    }
    ChainLaw::new(
        vec![
            pi1.row_space().clone(),
            pi1.col_space().clone(),
            pi2.col_space().clone(),
        ],
        atoms,
    )
}

/// Glues a consistent family of couplings `π_n` on `X_0 × X_n` (all with the
/// same first marginal) into a law on `X_0 × X_1 × … × X_N`, conditionally
/// independent given coordinate 0. Every two-coordinate marginal `{0, n}`
/// reproduces `π_n` exactly.
pub fn glue_chain(couplings: &[Coupling]) -> Result<ChainLaw> {
    if couplings.is_empty() {
        return Err(Error::InvalidChain("gluing an empty family".into()));
    }
    let mu = couplings[0].row_marginal();
    for (n, c) in couplings.iter().enumerate().skip(1) {
        require_same_space(couplings[0].row_space(), c.row_space())?;
        if c.row_marginal() != mu {
            return Err(Error::MarginalMismatch(format!(
                "coupling {n} has a different first marginal"
            )));
        }
    }
    let mut spaces = vec![couplings[0].row_space().clone()];
    spaces.extend(couplings.iter().map(|c| c.col_space().clone()));

    let mut atoms: Vec<(Vec<usize>, Rat)> = Vec::new();
    for x0 in 0..mu.space().len() {
        if mu.weight(x0).is_zero() {
            continue;
        }
        // conditional rows given x0
        let mut partial: Vec<(Vec<usize>, Rat)> = vec![(vec![x0], mu.weight(x0).clone())];
        for c in couplings {
            let mut next = Vec::new();
            for (idx, mass) in &partial {
                for (xn, e) in c.entries()[x0].iter().enumerate() {
                    if e.is_zero() {
                        continue;
                    }
                    let mut idx2 = idx.clone();
                    idx2.push(xn);
                    next.push((idx2, mass * e / mu.weight(x0)));
                }
            }
            partial = next;
        }
        atoms.extend(partial);
    }
    ChainLaw::new(spaces, atoms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, ratio, Rat};
    use crate::rv::{law_of, Law, Piece, RandomVariable};
    use crate::space::{FinMetricSpace, SpaceRef};

    fn two_point_space() -> SpaceRef {
        FinMetricSpace::new(
            vec!["a".into(), "b".into()],
            vec![vec![int(0), int(1)], vec![int(1), int(0)]],
        )
        .unwrap()
    }

    fn rv(space: &SpaceRef, steps: &[(i64, i64, usize)]) -> RandomVariable {
        let pieces = steps
            .iter()
            .map(|&(a, b, pt)| Piece {
                start: ratio(a, 4),
                end: ratio(b, 4),
                point: pt,
            })
            .collect();
        RandomVariable::new(space.clone(), pieces).unwrap()
    }

    #[test]
    fn joint_law_of_pair_with_itself_is_diagonal() {
        let s = two_point_space();
        let xi = rv(&s, &[(0, 2, 0), (2, 4, 1)]);
        let chain = joint_law(&[&xi, &xi]).unwrap();
        assert_eq!(chain.mass(&[0, 0]), ratio(1, 2));
        assert_eq!(chain.mass(&[1, 1]), ratio(1, 2));
        assert_eq!(chain.mass(&[0, 1]), int(0));
        assert_eq!(chain.support_size(), 2);
    }

    #[test]
    fn joint_law_refines_partitions() {
        let s = two_point_space();
        // xi = a on [0,1/2), b after; eta = b on [0,1/2), a after
        let xi = rv(&s, &[(0, 2, 0), (2, 4, 1)]);
        let eta = rv(&s, &[(0, 2, 1), (2, 4, 0)]);
        let chain = joint_law(&[&xi, &eta]).unwrap();
        assert_eq!(chain.mass(&[0, 1]), ratio(1, 2));
        assert_eq!(chain.mass(&[1, 0]), ratio(1, 2));

        // xi = a on [0,1/2); eta = a on [0,1/4) u [1/2,3/4): all four cells 1/4
        let eta2 = rv(&s, &[(0, 1, 0), (1, 2, 1), (2, 3, 0), (3, 4, 1)]);
        let chain2 = joint_law(&[&xi, &eta2]).unwrap();
        for idx in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            assert_eq!(chain2.mass(&idx), ratio(1, 4), "cell {idx:?}");
        }
    }

    #[test]
    fn marginal_keeps_identity_and_product_projects() {
        let s = two_point_space();
        let p = Law::new(s.clone(), vec![ratio(1, 4), ratio(3, 4)]).unwrap();
        let q = Law::new(s.clone(), vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        let prod = ChainLaw::product(&[&p, &q]).unwrap();
        assert_eq!(prod.marginal(&[0, 1]).unwrap(), prod);
        assert_eq!(prod.axis_law(0).unwrap(), p);
        assert_eq!(prod.axis_law(1).unwrap(), q);
        assert!(prod.marginal(&[]).is_err());
        assert!(prod.marginal(&[2]).is_err());
    }

    #[test]
    fn realize_chain_round_trips_joint_law() {
        let s = two_point_space();
        let chain = ChainLaw::new(
            vec![s.clone(), s.clone()],
            vec![
                (vec![0, 1], ratio(1, 2)),
                (vec![1, 0], ratio(1, 2)),
            ],
        )
        .unwrap();
        let rvs = realize_chain(&chain);
        assert_eq!(rvs.len(), 2);
        let back = joint_law(&[&rvs[0], &rvs[1]]).unwrap();
        assert_eq!(back, chain);
    }

    #[test]
    fn relayout_preserves_joint_law() {
        let s = two_point_space();
        let xi = rv(&s, &[(0, 2, 0), (2, 4, 1)]);
        let eta = rv(&s, &[(0, 1, 1), (1, 4, 0)]);
        let before = joint_law(&[&xi, &eta]).unwrap();
        let grid = refinement_grid(&[&xi, &eta]);
        let segs = grid.len() - 1;
        let perm: Vec<usize> = (0..segs).rev().collect();
        let out = relayout(&[&xi, &eta], &perm).unwrap();
        let after = joint_law(&[&out[0], &out[1]]).unwrap();
        assert_eq!(before, after);
        assert_eq!(law_of(&out[0]), law_of(&xi));
    }

    #[test]
    fn glue_with_diagonal_middle_reproduces_first() {
        let s = two_point_space();
        let p = Law::new(s.clone(), vec![ratio(1, 3), ratio(2, 3)]).unwrap();
        let q = Law::new(s.clone(), vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        let pi1 = Coupling::product(&p, &q);
        let pi2 = Coupling::diagonal(&q);
        let glued = glue(&pi1, &pi2).unwrap();
        // third coordinate copies the middle one
        for (idx, _) in glued.atoms() {
            assert_eq!(idx[1], idx[2]);
        }
        assert_eq!(
            Coupling::from_chain(&glued.marginal(&[0, 1]).unwrap()).unwrap(),
            pi1
        );
        assert_eq!(
            Coupling::from_chain(&glued.marginal(&[1, 2]).unwrap()).unwrap(),
            pi2
        );
    }

    #[test]
    fn glue_crossing_example() {
        let s = two_point_space();
        // pi1 uniform on {(0,0),(1,1)}, pi2 uniform on {(0,1),(1,0)}
        let pi1 = Coupling::new(
            s.clone(),
            s.clone(),
            vec![
                vec![ratio(1, 2), int(0)],
                vec![int(0), ratio(1, 2)],
            ],
        )
        .unwrap();
        let pi2 = Coupling::new(
            s.clone(),
            s.clone(),
            vec![
                vec![int(0), ratio(1, 2)],
                vec![ratio(1, 2), int(0)],
            ],
        )
        .unwrap();
        let glued = glue(&pi1, &pi2).unwrap();
        assert_eq!(glued.mass(&[0, 0, 1]), ratio(1, 2));
        assert_eq!(glued.mass(&[1, 1, 0]), ratio(1, 2));
        assert_eq!(glued.support_size(), 2);
    }

    #[test]
    fn glue_of_products_is_triple_product() {
        let s = two_point_space();
        let p = Law::new(s.clone(), vec![ratio(1, 4), ratio(3, 4)]).unwrap();
        let mu = Law::new(s.clone(), vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        let q = Law::new(s.clone(), vec![ratio(2, 3), ratio(1, 3)]).unwrap();
        let glued = glue(&Coupling::product(&p, &mu), &Coupling::product(&mu, &q)).unwrap();
        let expect = ChainLaw::product(&[&p, &mu, &q]).unwrap();
        assert_eq!(glued, expect);
    }

    #[test]
    fn glue_rejects_mismatched_middles() {
        let s = two_point_space();
        let p = Law::new(s.clone(), vec![ratio(1, 3), ratio(2, 3)]).unwrap();
        let q = Law::new(s.clone(), vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        let pi1 = Coupling::product(&p, &p);
        let pi2 = Coupling::product(&q, &q);
        assert!(matches!(
            glue(&pi1, &pi2),
            Err(Error::MarginalMismatch(_))
        ));
    }

    #[test]
    fn glue_chain_single_and_diagonal() {
        let s = two_point_space();
        let mu = Law::new(s.clone(), vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        let diag = Coupling::diagonal(&mu);
        let single = glue_chain(std::slice::from_ref(&diag)).unwrap();
        assert_eq!(single, diag.to_chain());

        let two = glue_chain(&[diag.clone(), diag.clone()]).unwrap();
        assert_eq!(two.mass(&[0, 0, 0]), ratio(1, 2));
        assert_eq!(two.mass(&[1, 1, 1]), ratio(1, 2));
        assert_eq!(two.support_size(), 2);
    }

    #[test]
    fn glue_chain_reproduces_pairwise_marginals() {
        let s = two_point_space();
        let p = Law::new(s.clone(), vec![ratio(1, 4), ratio(3, 4)]).unwrap();
        let qs = [
            Law::new(s.clone(), vec![ratio(1, 2), ratio(1, 2)]).unwrap(),
            Law::new(s.clone(), vec![ratio(5, 8), ratio(3, 8)]).unwrap(),
            Law::new(s.clone(), vec![int(1), int(0)]).unwrap(),
        ];
        let couplings: Vec<Coupling> = qs.iter().map(|q| Coupling::product(&p, q)).collect();
        let glued = glue_chain(&couplings).unwrap();
        for (n, c) in couplings.iter().enumerate() {
            let m = glued.marginal(&[0, n + 1]).unwrap();
            assert_eq!(&Coupling::from_chain(&m).unwrap(), c, "marginal {{0,{}}}", n + 1);
        }
    }

    #[test]
    fn chain_mass_must_total_one() {
        let s = two_point_space();
        assert!(ChainLaw::new(
            vec![s.clone()],
            vec![(vec![0], ratio(1, 2))],
        )
        .is_err());
        let ok = ChainLaw::new(
            vec![s],
            vec![(vec![0], ratio(1, 2)), (vec![1], ratio(1, 2)), (vec![0], Rat::zero())],
        )
        .unwrap();
        assert_eq!(ok.support_size(), 2);
    }
}
