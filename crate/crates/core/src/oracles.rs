//! Brute-force reference evaluators.
//!
//! These deliberately avoid the candidate-set scans of the production
//! evaluators: the grid oracles walk a dense ε-grid and return the first
//! feasible grid point (within one grid step of the exact infimum), and the
//! subset oracle maximizes over all events directly. They exist to be
//! disagreed with.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::metrics::{distance_distribution, prokhorov_reach, PROKHOROV_ENUM_LIMIT};
use crate::rat::{ratio, Rat};
use crate::rv::{Law, RandomVariable};
use crate::space::require_same_space;

/// Grid step denominator for the ε-grid oracles.
pub const GRID_DENOM: i64 = 1024;

/// Dense-grid Ky-Fan oracle: the first `ε = k/1024` with
/// `P[d(ξ,η) >= λ·ε] < ε`. Always terminates by `ε = 1 + 1/1024`.
pub fn ky_fan_grid(lambda: &Rat, xi: &RandomVariable, eta: &RandomVariable) -> Result<Rat> {
    let dist = distance_distribution(xi, eta)?;
    for k in 1..=(GRID_DENOM + 1) {
        let eps = ratio(k, GRID_DENOM);
        let threshold = lambda * &eps;
        let survival = dist
            .iter()
            .filter(|(t, _)| !t.is_zero() && *t >= threshold)
            .fold(Rat::zero(), |acc, (_, m)| acc + m);
        if survival < eps {
            return Ok(eps);
        }
    }
    unreachable!("survival is at most 1, so ε = 1 + 1/1024 is always feasible")
}

/// Dense-grid Prokhorov oracle: the first `ε = k/1024` with
/// `max_A (P[A] − Q[A^{(λ·ε)}]) <= ε`.
pub fn prokhorov_grid(lambda: &Rat, p: &Law, q: &Law) -> Result<Rat> {
    require_same_space(p.space(), q.space())?;
    let space = p.space();
    for k in 1..=(GRID_DENOM + 1) {
        let eps = ratio(k, GRID_DENOM);
        let radius = lambda * &eps;
        if prokhorov_reach(space, p, q, &radius)? <= eps {
            return Ok(eps);
        }
    }
    unreachable!("the reach is at most 1, so ε = 1 + 1/1024 is always feasible")
}

/// Total variation by full subset enumeration: `max_A |P[A] − Q[A]|`.
pub fn tv_subsets(p: &Law, q: &Law) -> Result<Rat> {
    require_same_space(p.space(), q.space())?;
    let n = p.space().len();
    if n > PROKHOROV_ENUM_LIMIT {
        return Err(Error::SizeLimit {
            what: "total variation subset enumeration",
            limit: PROKHOROV_ENUM_LIMIT,
            got: n,
        });
    }
    let mut best = Rat::zero();
    for mask in 0u32..(1 << n) {
        let mut diff = Rat::zero();
        for i in 0..n {
            if mask & (1 << i) != 0 {
                diff += p.weight(i) - q.weight(i);
            }
        }
        if diff < Rat::zero() {
            diff = -diff;
        }
        if diff > best {
            best = diff;
        }
    }
    Ok(best)
}
