//! Exact optimization over couplings: the transportation polytope.
//!
//! The solver is a transportation simplex over exact rationals: north-west
//! corner start, cycle pivoting, Bland's rule for anti-cycling. Solutions are
//! vertices of the polytope (their support is a spanning forest), which the
//! independent enumeration oracle [`enumerate_vertices`] checks against.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::chain::Coupling;
use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::rv::Law;
use crate::space::require_same_space;
use crate::value::rat_pow;

/// Largest space size for which vertex enumeration is attempted.
pub const VERTEX_ENUM_LIMIT: usize = 6;

/// A minimum-cost coupling problem between two laws on the same space.
#[derive(Debug, Clone)]
pub struct TransportProblem {
    pub p: Law,
    pub q: Law,
    pub cost: Vec<Vec<Rat>>,
}

impl TransportProblem {
    /// Validates dimensions and builds a problem with an arbitrary cost.
    pub fn new(p: Law, q: Law, cost: Vec<Vec<Rat>>) -> Result<Self> {
        require_same_space(p.space(), q.space())?;
        let n = p.space().len();
        if cost.len() != n || cost.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidChain(format!("cost matrix must be {n}x{n}")));
        }
        Ok(TransportProblem { p, q, cost })
    }

    /// Cost `d(x,y)^pow` (the Wasserstein-`p` objective).
    pub fn with_distance_power(p: Law, q: Law, pow: u32) -> Result<Self> {
        require_same_space(p.space(), q.space())?;
        let space = p.space().clone();
        let n = space.len();
        let cost = (0..n)
            .map(|i| (0..n).map(|j| rat_pow(space.dist(i, j), pow)).collect())
            .collect();
        TransportProblem::new(p, q, cost)
    }

    /// Indicator cost of `{ (x,y) | d(x,y) >= t }`.
    pub fn with_indicator_ge(p: Law, q: Law, t: &Rat) -> Result<Self> {
        Self::with_indicator(p, q, |d| d >= t)
    }

    /// Indicator cost of `{ (x,y) | d(x,y) > t }`.
    pub fn with_indicator_gt(p: Law, q: Law, t: &Rat) -> Result<Self> {
        Self::with_indicator(p, q, |d| d > t)
    }

    fn with_indicator(p: Law, q: Law, pred: impl Fn(&Rat) -> bool) -> Result<Self> {
        require_same_space(p.space(), q.space())?;
        let space = p.space().clone();
        let n = space.len();
        let cost = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if pred(space.dist(i, j)) { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        TransportProblem::new(p, q, cost)
    }
}

/// Solves a transport problem exactly, returning the minimum expected cost
/// and an optimal coupling that is a vertex of the transportation polytope.
pub fn transport_lp(prob: &TransportProblem) -> Result<(Rat, Coupling)> {
    let (value, flow) = solve_transport(prob.p.weights(), prob.q.weights(), &prob.cost);
    let coupling = Coupling::new(prob.p.space().clone(), prob.q.space().clone(), flow)?;
    debug_assert_eq!(&coupling.row_marginal(), &prob.p);
    debug_assert_eq!(&coupling.col_marginal(), &prob.q);
    Ok((value, coupling))
}

/// Exact minimum over couplings of the mass of `{ d >= t }`.
/// Nonincreasing in `t`; 1 at `t <= 0`, 0 beyond the largest distance.
pub fn min_mass_above(t: &Rat, p: &Law, q: &Law) -> Result<Rat> {
    let prob = TransportProblem::with_indicator_ge(p.clone(), q.clone(), t)?;
    Ok(transport_lp(&prob)?.0)
}

/// Optimal coupling variant of [`min_mass_above`].
pub fn min_mass_above_with_witness(t: &Rat, p: &Law, q: &Law) -> Result<(Rat, Coupling)> {
    let prob = TransportProblem::with_indicator_ge(p.clone(), q.clone(), t)?;
    transport_lp(&prob)
}

/// Exact minimum over couplings of the mass of `{ d > t }`.
pub fn min_mass_strictly_above(t: &Rat, p: &Law, q: &Law) -> Result<Rat> {
    let prob = TransportProblem::with_indicator_gt(p.clone(), q.clone(), t)?;
    Ok(transport_lp(&prob)?.0)
}

/// The Wasserstein metric of order `∞`: the least threshold `t` (a distance
/// value) admitting a coupling supported on `{ d <= t }`, checked exactly via
/// `min over couplings of mass { d > t } = 0`.
pub fn bottleneck(p: &Law, q: &Law) -> Result<Rat> {
    require_same_space(p.space(), q.space())?;
    for t in p.space().distance_values() {
        if min_mass_strictly_above(&t, p, q)?.is_zero() {
            return Ok(t);
        }
    }
    unreachable!("every coupling is supported within the largest distance")
}

/// Optimal coupling variant of [`bottleneck`]: a coupling supported on
/// `{ d <= t* }` whose largest support distance is exactly `t*`.
pub fn bottleneck_with_witness(p: &Law, q: &Law) -> Result<(Rat, Coupling)> {
    require_same_space(p.space(), q.space())?;
    for t in p.space().distance_values() {
        let prob = TransportProblem::with_indicator_gt(p.clone(), q.clone(), &t)?;
        let (value, pi) = transport_lp(&prob)?;
        if value.is_zero() {
            return Ok((t, pi));
        }
    }
    unreachable!("every coupling is supported within the largest distance")
}

// ---------------------------------------------------------------------------
// Simplex core
// ---------------------------------------------------------------------------

/// Transportation simplex over raw rational marginals and cost matrix.
/// Requires `sum(p) == sum(q)`; returns (optimal value, optimal flow).
fn solve_transport(p: &[Rat], q: &[Rat], cost: &[Vec<Rat>]) -> (Rat, Vec<Vec<Rat>>) {
    let m = p.len();
    let n = q.len();
    debug_assert!(m > 0 && n > 0);

    // North-west corner start: exactly m+n-1 basic cells forming a tree.
    let mut flow = vec![vec![Rat::zero(); n]; m];
    let mut basic = vec![vec![false; n]; m];
    {
        let mut a: Vec<Rat> = p.to_vec();
        let mut b: Vec<Rat> = q.to_vec();
        let (mut i, mut j) = (0usize, 0usize);
        loop {
            let x = if a[i] <= b[j] { a[i].clone() } else { b[j].clone() };
            flow[i][j] = x.clone();
            basic[i][j] = true;
            a[i] -= &x;
            b[j] -= &x;
            if i == m - 1 && j == n - 1 {
                break;
            }
            if a[i].is_zero() && i < m - 1 {
                i += 1;
            } else {
                j += 1;
            }
        }
    }

    loop {
        // Duals from the basis tree: u[i] + v[j] = c[i][j] on basic cells.
        let (u, v) = duals(m, n, &basic, cost);

        // Bland: entering cell = smallest index with negative reduced cost.
        let mut entering = None;
        'scan: for i in 0..m {
            for j in 0..n {
                if !basic[i][j] && &cost[i][j] - &u[i] - &v[j] < Rat::zero() {
                    entering = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((ei, ej)) = entering else { break };

        // Unique cycle: path from row node ei to col node ej in the basis
        // tree, plus the entering cell.
        let path = tree_path(m, n, &basic, ei, m + ej);
        let mut cycle: Vec<(usize, usize)> = vec![(ei, ej)];
        for w in path.windows(2).rev() {
            let (x, y) = (w[0], w[1]);
            let (ri, cj) = if x < m { (x, y - m) } else { (y, x - m) };
            cycle.push((ri, cj));
        }

        // Alternate signs around the cycle; theta = min flow on minus cells.
        let mut theta: Option<Rat> = None;
        for (k, &(i, j)) in cycle.iter().enumerate() {
            if k % 2 == 1 {
                match &theta {
                    Some(t) if &flow[i][j] >= t => {}
                    _ => theta = Some(flow[i][j].clone()),
                }
            }
        }
        let theta = theta.expect("cycle has at least one minus cell");

        // Leaving cell: smallest index among minus cells attaining theta.
        let mut leaving = None;
        for (k, &(i, j)) in cycle.iter().enumerate() {
            if k % 2 == 1 && flow[i][j] == theta {
                match leaving {
                    Some((li, lj)) if (li, lj) <= (i, j) => {}
                    _ => leaving = Some((i, j)),
                }
            }
        }
        let (li, lj) = leaving.expect("a minus cell attains theta");

        for (k, &(i, j)) in cycle.iter().enumerate() {
            if k % 2 == 0 {
                flow[i][j] += &theta;
            } else {
                flow[i][j] -= &theta;
            }
        }
        basic[ei][ej] = true;
        basic[li][lj] = false;
        debug_assert!(flow[li][lj].is_zero());
    }

    let mut value = Rat::zero();
    for i in 0..m {
        for j in 0..n {
            if !flow[i][j].is_zero() {
                value += &flow[i][j] * &cost[i][j];
            }
        }
    }
    (value, flow)
}

/// Dual potentials on the basis tree, rooted at row 0 with `u[0] = 0`.
fn duals(m: usize, n: usize, basic: &[Vec<bool>], cost: &[Vec<Rat>]) -> (Vec<Rat>, Vec<Rat>) {
    let mut u: Vec<Option<Rat>> = vec![None; m];
    let mut v: Vec<Option<Rat>> = vec![None; n];
    u[0] = Some(Rat::zero());
    let mut stack = vec![0usize]; // node ids: rows 0..m, cols m..m+n
    while let Some(node) = stack.pop() {
        if node < m {
            let i = node;
            for j in 0..n {
                if basic[i][j] && v[j].is_none() {
                    v[j] = Some(&cost[i][j] - u[i].as_ref().unwrap());
                    stack.push(m + j);
                }
            }
        } else {
            let j = node - m;
            for i in 0..m {
                if basic[i][j] && u[i].is_none() {
                    u[i] = Some(&cost[i][j] - v[j].as_ref().unwrap());
                    stack.push(i);
                }
            }
        }
    }
    (
        u.into_iter().map(|x| x.expect("basis tree spans all rows")).collect(),
        v.into_iter().map(|x| x.expect("basis tree spans all columns")).collect(),
    )
}

/// Node path between two nodes of the basis tree (BFS).
fn tree_path(m: usize, n: usize, basic: &[Vec<bool>], from: usize, to: usize) -> Vec<usize> {
    let total = m + n;
    let mut parent = vec![usize::MAX; total];
    parent[from] = from;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(node) = queue.pop_front() {
        if node == to {
            break;
        }
        if node < m {
            for j in 0..n {
                if basic[node][j] && parent[m + j] == usize::MAX {
                    parent[m + j] = node;
                    queue.push_back(m + j);
                }
            }
        } else {
            let j = node - m;
            for i in 0..m {
                if basic[i][j] && parent[i] == usize::MAX {
                    parent[i] = node;
                    queue.push_back(i);
                }
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur];
        debug_assert_ne!(cur, usize::MAX, "basis tree is connected");
        path.push(cur);
    }
    path.reverse();
    path
}

// ---------------------------------------------------------------------------
// Vertex enumeration oracle
// ---------------------------------------------------------------------------

/// Enumerates every vertex of the transportation polytope `Π(P, Q)` by
/// walking all spanning trees of the bipartite support graph and keeping the
/// nonnegative basic solutions. Exponential; refused above
/// [`VERTEX_ENUM_LIMIT`] points per side.
pub fn enumerate_vertices(p: &Law, q: &Law) -> Result<Vec<Coupling>> {
    let m = p.space().len();
    let n = q.space().len();
    let limit = VERTEX_ENUM_LIMIT;
    if m > limit || n > limit {
        return Err(Error::SizeLimit {
            what: "transportation polytope vertex enumeration",
            limit,
            got: m.max(n),
        });
    }

    // scale both laws to a common integer grid
    let mut lcm = BigInt::one();
    for w in p.weights().iter().chain(q.weights()) {
        lcm = lcm.lcm(w.denom());
    }
    let scale = |w: &Rat| -> BigInt { (w * Rat::from_integer(lcm.clone())).to_integer() };
    let a: Vec<BigInt> = p.weights().iter().map(scale).collect();
    let b: Vec<BigInt> = q.weights().iter().map(scale).collect();

    let need = m + n - 1;
    let cells = m * n;
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(need);
    let mut dsu = Dsu::new(m + n);
    let mut seen: BTreeSet<Vec<(usize, BigInt)>> = BTreeSet::new();
    let mut out: Vec<Vec<Vec<Rat>>> = Vec::new();

    // DFS over cells in index order; prune cycles and short remainders.
    fn dfs(
        next: usize,
        cells: usize,
        need: usize,
        m: usize,
        n: usize,
        a: &[BigInt],
        b: &[BigInt],
        lcm: &BigInt,
        chosen: &mut Vec<(usize, usize)>,
        dsu: &mut Dsu,
        seen: &mut BTreeSet<Vec<(usize, BigInt)>>,
        out: &mut Vec<Vec<Vec<Rat>>>,
    ) {
        if chosen.len() == need {
            if let Some(flows) = tree_flows(m, n, a, b, chosen) {
                let key: Vec<(usize, BigInt)> = flows
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| !f.is_zero())
                    .map(|(k, f)| (chosen[k].0 * n + chosen[k].1, f.clone()))
                    .collect();
                if seen.insert(key) {
                    let mut mat = vec![vec![Rat::zero(); n]; m];
                    for (k, &(i, j)) in chosen.iter().enumerate() {
                        mat[i][j] = Rat::new(flows[k].clone(), lcm.clone());
                    }
                    out.push(mat);
                }
            }
            return;
        }
        if next >= cells || chosen.len() + (cells - next) < need {
            return;
        }
        let (i, j) = (next / n, next % n);
        // take this cell when it joins two components
        if dsu.find(i) != dsu.find(m + j) {
            let mark = dsu.mark();
            dsu.union(i, m + j);
            chosen.push((i, j));
            dfs(next + 1, cells, need, m, n, a, b, lcm, chosen, dsu, seen, out);
            chosen.pop();
            dsu.rollback(mark);
        }
        // skip this cell
        dfs(next + 1, cells, need, m, n, a, b, lcm, chosen, dsu, seen, out);
    }

    dfs(
        0, cells, need, m, n, &a, &b, &lcm, &mut chosen, &mut dsu, &mut seen, &mut out,
    );

    out.into_iter()
        .map(|mat| Coupling::new(p.space().clone(), q.space().clone(), mat))
        .collect()
}

/// Flows determined by a spanning tree via leaf elimination; `None` when some
/// flow would be negative.
fn tree_flows(
    m: usize,
    n: usize,
    a: &[BigInt],
    b: &[BigInt],
    edges: &[(usize, usize)],
) -> Option<Vec<BigInt>> {
    let total = m + n;
    let mut degree = vec![0usize; total];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); total];
    for (k, &(i, j)) in edges.iter().enumerate() {
        degree[i] += 1;
        degree[m + j] += 1;
        incident[i].push(k);
        incident[m + j].push(k);
    }
    let mut mass: Vec<BigInt> = a.iter().chain(b.iter()).cloned().collect();
    let mut used = vec![false; edges.len()];
    let mut flows = vec![BigInt::zero(); edges.len()];
    let mut leaves: Vec<usize> = (0..total).filter(|&v| degree[v] == 1).collect();
    let mut resolved = 0usize;
    while let Some(v) = leaves.pop() {
        let Some(&k) = incident[v].iter().find(|&&k| !used[k]) else {
            continue;
        };
        let (i, j) = edges[k];
        let other = if v == i { m + j } else { i };
        let f = mass[v].clone();
        if f.is_negative() {
            return None;
        }
        flows[k] = f.clone();
        mass[other] -= f;
        mass[v] = BigInt::zero();
        used[k] = true;
        resolved += 1;
        degree[v] -= 1;
        degree[other] -= 1;
        if degree[other] == 1 {
            leaves.push(other);
        }
    }
    debug_assert_eq!(resolved, edges.len());
    Some(flows)
}

/// Union-find with an undo trail (no path compression, union by rank).
struct Dsu {
    parent: Vec<usize>,
    rank: Vec<u8>,
    trail: Vec<(usize, u8)>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            rank: vec![0; n],
            trail: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) {
        let (mut rx, mut ry) = (self.find(x), self.find(y));
        if rx == ry {
            return;
        }
        if self.rank[rx] > self.rank[ry] {
            std::mem::swap(&mut rx, &mut ry);
        }
        self.trail.push((rx, self.rank[ry]));
        self.parent[rx] = ry;
        if self.rank[rx] == self.rank[ry] {
            self.rank[ry] += 1;
        }
    }

    fn mark(&self) -> usize {
        self.trail.len()
    }

    fn rollback(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (child, old_rank) = self.trail.pop().unwrap();
            let root = self.parent[child];
            self.rank[root] = old_rank;
            self.parent[child] = child;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, ratio};
    use crate::space::{FinMetricSpace, SpaceRef};

    fn two_point_space() -> SpaceRef {
        FinMetricSpace::new(
            vec!["a".into(), "b".into()],
            vec![vec![int(0), int(1)], vec![int(1), int(0)]],
        )
        .unwrap()
    }

    fn line_space() -> SpaceRef {
        // a - b - c with d(a,b) = d(b,c) = 1, d(a,c) = 2
        FinMetricSpace::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![int(0), int(1), int(2)],
                vec![int(1), int(0), int(1)],
                vec![int(2), int(1), int(0)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn identical_laws_have_zero_cost_diagonal_plan() {
        let s = two_point_space();
        let p = Law::new(s.clone(), vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        let prob = TransportProblem::with_distance_power(p.clone(), p.clone(), 1).unwrap();
        let (value, pi) = transport_lp(&prob).unwrap();
        assert!(value.is_zero());
        assert_eq!(pi, Coupling::diagonal(&p));
    }

    #[test]
    fn point_masses_forced_coupling() {
        let s = two_point_space();
        let p = Law::dirac(s.clone(), 0).unwrap();
        let q = Law::dirac(s.clone(), 1).unwrap();
        let prob = TransportProblem::with_distance_power(p, q, 1).unwrap();
        let (value, pi) = transport_lp(&prob).unwrap();
        assert_eq!(value, int(1));
        assert_eq!(pi.entry(0, 1), &int(1));
    }

    #[test]
    fn half_mass_move_costs_half() {
        let s = two_point_space();
        let p = Law::new(s.clone(), vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        let q = Law::dirac(s.clone(), 0).unwrap();
        let prob = TransportProblem::with_distance_power(p, q, 1).unwrap();
        let (value, pi) = transport_lp(&prob).unwrap();
        assert_eq!(value, ratio(1, 2));
        assert_eq!(pi.entry(0, 0), &ratio(1, 2));
        assert_eq!(pi.entry(1, 0), &ratio(1, 2));
    }

    #[test]
    fn min_mass_above_examples() {
        let s = two_point_space();
        let p = Law::new(s.clone(), vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        let q = Law::dirac(s.clone(), 0).unwrap();
        assert_eq!(min_mass_above(&int(0), &p, &q).unwrap(), int(1));
        assert_eq!(min_mass_above(&int(5), &p, &q).unwrap(), int(0));
        assert_eq!(min_mass_above(&int(1), &p, &q).unwrap(), ratio(1, 2));
    }

    #[test]
    fn min_mass_above_is_nonincreasing_and_piecewise() {
        let s = line_space();
        let p = Law::new(s.clone(), vec![ratio(1, 2), int(0), ratio(1, 2)]).unwrap();
        let q = Law::new(s.clone(), vec![ratio(1, 4), ratio(1, 4), ratio(1, 2)]).unwrap();
        let mut prev = min_mass_above(&int(0), &p, &q).unwrap();
        assert_eq!(prev, int(1));
        for t in s.positive_distance_values() {
            let mid = &t - ratio(1, 100);
            let at_mid = min_mass_above(&mid, &p, &q).unwrap();
            let at_t = min_mass_above(&t, &p, &q).unwrap();
            // constant on (prev breakpoint, t]
            assert_eq!(at_mid, at_t);
            assert!(at_t <= prev);
            prev = at_t;
        }
    }

    #[test]
    fn bottleneck_examples() {
        let s = line_space();
        let p = Law::new(s.clone(), vec![ratio(1, 2), int(0), ratio(1, 2)]).unwrap();
        let q = Law::dirac(s.clone(), 1).unwrap();
        assert_eq!(bottleneck(&p, &q).unwrap(), int(1));
        assert_eq!(bottleneck(&p, &p).unwrap(), int(0));
        let da = Law::dirac(s.clone(), 0).unwrap();
        let dc = Law::dirac(s, 2).unwrap();
        assert_eq!(bottleneck(&da, &dc).unwrap(), int(2));

        let (t, pi) = bottleneck_with_witness(&p, &q).unwrap();
        assert_eq!(t, int(1));
        assert_eq!(pi.support_max_distance().unwrap(), int(1));
    }

    #[test]
    fn vertex_enumeration_small_cases() {
        let s = two_point_space();
        let da = Law::dirac(s.clone(), 0).unwrap();
        let verts = enumerate_vertices(&da, &da).unwrap();
        assert_eq!(verts.len(), 1);
        assert_eq!(verts[0].entry(0, 0), &int(1));

        let half = Law::new(s.clone(), vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        let verts = enumerate_vertices(&half, &half).unwrap();
        assert_eq!(verts.len(), 2); // diagonal and anti-diagonal

        let q = Law::new(s, vec![ratio(1, 3), ratio(2, 3)]).unwrap();
        let verts = enumerate_vertices(&da, &q).unwrap();
        assert_eq!(verts.len(), 1); // row concentrated, forced
        assert_eq!(verts[0].entry(0, 0), &ratio(1, 3));
        assert_eq!(verts[0].entry(0, 1), &ratio(2, 3));
    }

    #[test]
    fn lp_optimum_is_attained_on_vertices() {
        let s = line_space();
        let p = Law::new(s.clone(), vec![ratio(1, 2), ratio(1, 4), ratio(1, 4)]).unwrap();
        let q = Law::new(s.clone(), vec![ratio(1, 8), ratio(3, 8), ratio(1, 2)]).unwrap();
        for pow in [1u32, 2, 3] {
            let prob = TransportProblem::with_distance_power(p.clone(), q.clone(), pow).unwrap();
            let (value, _) = transport_lp(&prob).unwrap();
            let mut best: Option<Rat> = None;
            for v in enumerate_vertices(&p, &q).unwrap() {
                let mut c = Rat::zero();
                for i in 0..3 {
                    for j in 0..3 {
                        c += v.entry(i, j) * &prob.cost[i][j];
                    }
                }
                assert!(c >= value, "vertex below claimed optimum");
                best = Some(match best {
                    Some(b) if b <= c => b,
                    _ => c,
                });
            }
            assert_eq!(best.unwrap(), value, "optimum attained at a vertex");
        }
    }

    #[test]
    fn enumeration_size_guard() {
        let n = VERTEX_ENUM_LIMIT + 1;
        let points: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let dist: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { int(0) } else { int(1) }).collect())
            .collect();
        let s = FinMetricSpace::new(points, dist).unwrap();
        let p = Law::dirac(s.clone(), 0).unwrap();
        assert!(matches!(
            enumerate_vertices(&p, &p),
            Err(Error::SizeLimit { .. })
        ));
    }
}
