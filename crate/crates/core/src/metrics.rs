//! The six probability metrics, evaluated exactly.
//!
//! Every evaluator works from finite rational data: the distribution of the
//! distance between the two random variables (for the four non-simple
//! metrics) or the two marginal laws (for Prokhorov and total variation).
//! The `inf { ε | … }` definitions reduce to scans over a finite candidate
//! set because both sides of each defining condition are piecewise constant
//! between consecutive threshold values.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::chain::{joint_law, Coupling};
use crate::error::{Error, Result};
use crate::rat::{format_rat, parse_rat, Rat};
use crate::rv::{Law, RandomVariable};
use crate::space::{require_same_space, FinMetricSpace};
use crate::value::MetricValue;

/// Largest point count for which Prokhorov subset enumeration is attempted.
pub const PROKHOROV_ENUM_LIMIT: usize = 16;

/// A tagged description of a probability metric, possibly parametrized.
///
/// Text syntax: `kyfan:1/2`, `lp:2`, `linf`, `ind`, `prok:1`, `tv`,
/// `sup(ind,tv)`, `hat(lp:2)`. A rational (non-integer) `lp` exponent parses
/// to [`MetricDescriptor::LpFloat`], which only evaluates in float mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetricDescriptor {
    /// Ky-Fan metric with parameter `λ > 0`.
    KyFan(Rat),
    /// `L^p` metric with integer `p >= 1`; exact via the `p`-th power value.
    Lp(u32),
    /// `L^p` metric with rational `p >= 1`; float mode only.
    LpFloat(Rat),
    /// `L^∞` metric (essential supremum of the distance).
    Linf,
    /// Indicator metric `P[d > 0]`.
    Indicator,
    /// Prokhorov metric with parameter `λ > 0`; simple.
    Prokhorov(Rat),
    /// Total variation metric; simple.
    Tv,
    /// Pointwise supremum of finitely many metrics.
    SupOf(Vec<MetricDescriptor>),
    /// Minimal probability metric of the inner descriptor; always simple.
    Hat(Box<MetricDescriptor>),
}

impl MetricDescriptor {
    /// Checks parameter constraints.
    pub fn validate(&self) -> Result<()> {
        match self {
            MetricDescriptor::KyFan(l) | MetricDescriptor::Prokhorov(l) => {
                if *l <= Rat::zero() {
                    return Err(Error::ParseDescriptor(format!(
                        "parameter must be positive in {self}"
                    )));
                }
            }
            MetricDescriptor::Lp(p) => {
                if *p == 0 {
                    return Err(Error::ParseDescriptor("lp exponent must be >= 1".into()));
                }
            }
            MetricDescriptor::LpFloat(p) => {
                if *p < Rat::one() {
                    return Err(Error::ParseDescriptor("lp exponent must be >= 1".into()));
                }
            }
            MetricDescriptor::SupOf(list) => {
                if list.is_empty() {
                    return Err(Error::ParseDescriptor("sup() of no metrics".into()));
                }
                for d in list {
                    d.validate()?;
                }
            }
            MetricDescriptor::Hat(inner) => inner.validate()?,
            _ => {}
        }
        Ok(())
    }

    /// True when the metric depends only on the two marginal laws.
    pub fn is_simple(&self) -> bool {
        match self {
            MetricDescriptor::Prokhorov(_) | MetricDescriptor::Tv => true,
            MetricDescriptor::Hat(_) => true,
            MetricDescriptor::SupOf(list) => list.iter().all(|d| d.is_simple()),
            _ => false,
        }
    }

    /// True when evaluation requires float mode somewhere.
    pub fn needs_float(&self) -> bool {
        match self {
            MetricDescriptor::LpFloat(_) => true,
            MetricDescriptor::SupOf(list) => list.iter().any(|d| d.needs_float()),
            MetricDescriptor::Hat(inner) => inner.needs_float(),
            _ => false,
        }
    }
}

impl fmt::Display for MetricDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricDescriptor::KyFan(l) => write!(f, "kyfan:{}", format_rat(l)),
            MetricDescriptor::Lp(p) => write!(f, "lp:{p}"),
            MetricDescriptor::LpFloat(p) => write!(f, "lp:{}", format_rat(p)),
            MetricDescriptor::Linf => write!(f, "linf"),
            MetricDescriptor::Indicator => write!(f, "ind"),
            MetricDescriptor::Prokhorov(l) => write!(f, "prok:{}", format_rat(l)),
            MetricDescriptor::Tv => write!(f, "tv"),
            MetricDescriptor::SupOf(list) => {
                write!(f, "sup(")?;
                for (i, d) in list.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{d}")?;
                }
                write!(f, ")")
            }
            MetricDescriptor::Hat(inner) => write!(f, "hat({inner})"),
        }
    }
}

impl FromStr for MetricDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let desc = parse_descriptor(s.trim())?;
        desc.validate()?;
        Ok(desc)
    }
}

fn parse_descriptor(s: &str) -> Result<MetricDescriptor> {
    let err = || Error::ParseDescriptor(s.to_string());
    if let Some(rest) = s.strip_prefix("sup(") {
        let inner = rest.strip_suffix(')').ok_or_else(err)?;
        let parts = split_top_level(inner);
        if parts.is_empty() {
            return Err(err());
        }
        let list = parts
            .into_iter()
            .map(|p| parse_descriptor(p.trim()))
            .collect::<Result<Vec<_>>>()?;
        return Ok(MetricDescriptor::SupOf(list));
    }
    if let Some(rest) = s.strip_prefix("hat(") {
        let inner = rest.strip_suffix(')').ok_or_else(err)?;
        return Ok(MetricDescriptor::Hat(Box::new(parse_descriptor(inner.trim())?)));
    }
    match s {
        "linf" => return Ok(MetricDescriptor::Linf),
        "ind" => return Ok(MetricDescriptor::Indicator),
        "tv" => return Ok(MetricDescriptor::Tv),
        _ => {}
    }
    if let Some(arg) = s.strip_prefix("kyfan:") {
        return Ok(MetricDescriptor::KyFan(parse_rat(arg)?));
    }
    if let Some(arg) = s.strip_prefix("prok:") {
        return Ok(MetricDescriptor::Prokhorov(parse_rat(arg)?));
    }
    if let Some(arg) = s.strip_prefix("lp:") {
        let p = parse_rat(arg)?;
        return if p.denom().is_one() && p > Rat::zero() {
            u32::try_from(p.numer().clone())
                .map(MetricDescriptor::Lp)
                .map_err(|_| err())
        } else {
            Ok(MetricDescriptor::LpFloat(p))
        };
    }
    Err(err())
}

/// Splits on commas that are not nested inside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s.is_empty() {
        parts.push(&s[start..]);
    }
    parts
}

// ---------------------------------------------------------------------------
// Threshold scans
// ---------------------------------------------------------------------------

/// Computes `inf { ε > 0 | level(λ·ε) ⋚ ε }` for a piecewise-constant level
/// function given by positive thresholds `t_1 < … < t_m` and per-interval
/// levels: `levels[j]` holds on `ε ∈ (t_j/λ, t_{j+1}/λ]` (with `t_0 = 0` and
/// `t_{m+1} = ∞`, where `levels[m]` must be 0). The infimum is the first
/// candidate `max(t_j/λ, levels[j])` that lies strictly below the interval's
/// right endpoint; this is exactly the limit-point boundary handling of the
/// strict (`<`) and weak (`≤`) defining conditions, whose infima coincide on
/// this piecewise-constant structure.
pub(crate) fn threshold_scan(lambda: &Rat, thresholds: &[Rat], levels: &[Rat]) -> Rat {
    debug_assert_eq!(levels.len(), thresholds.len() + 1);
    debug_assert!(levels.last().map(|l| l.is_zero()).unwrap_or(true));
    let m = thresholds.len();
    for j in 0..=m {
        let a = if j == 0 {
            Rat::zero()
        } else {
            &thresholds[j - 1] / lambda
        };
        let cand = if levels[j] > a { levels[j].clone() } else { a };
        if j == m {
            return cand;
        }
        let b = &thresholds[j] / lambda;
        if cand < b {
            return cand;
        }
    }
    unreachable!("final interval always yields a candidate")
}

// ---------------------------------------------------------------------------
// Distance-distribution metrics
// ---------------------------------------------------------------------------

/// Distribution of `d(ξ, η)` as sorted `(value, mass)` pairs.
pub fn distance_distribution(xi: &RandomVariable, eta: &RandomVariable) -> Result<Vec<(Rat, Rat)>> {
    require_same_space(xi.space(), eta.space())?;
    let chain = joint_law(&[xi, eta])?;
    Coupling::from_chain(&chain)?.distance_distribution()
}

/// Ky-Fan value from a distance distribution.
pub fn ky_fan_from_distribution(lambda: &Rat, dist: &[(Rat, Rat)]) -> Rat {
    let positive: Vec<&(Rat, Rat)> = dist.iter().filter(|(t, _)| !t.is_zero()).collect();
    let thresholds: Vec<Rat> = positive.iter().map(|(t, _)| t.clone()).collect();
    // levels[j] = mass of {d >= t_{j+1}} = suffix sums; levels[m] = 0
    let mut levels = vec![Rat::zero(); thresholds.len() + 1];
    for j in (0..thresholds.len()).rev() {
        levels[j] = &levels[j + 1] + &positive[j].1;
    }
    threshold_scan(lambda, &thresholds, &levels)
}

/// `p`-th power of the `L^p` metric from a distance distribution.
pub fn lp_power_from_distribution(p: u32, dist: &[(Rat, Rat)]) -> Rat {
    let mut total = Rat::zero();
    for (t, mass) in dist {
        if !t.is_zero() {
            total += mass * crate::value::rat_pow(t, p);
        }
    }
    total
}

/// Essential supremum of the distance from a distance distribution.
pub fn linf_from_distribution(dist: &[(Rat, Rat)]) -> Rat {
    dist.last().map(|(t, _)| t.clone()).unwrap_or_else(Rat::zero)
}

/// `P[d > 0]` from a distance distribution.
pub fn indicator_from_distribution(dist: &[(Rat, Rat)]) -> Rat {
    dist.iter()
        .filter(|(t, _)| !t.is_zero())
        .fold(Rat::zero(), |acc, (_, m)| acc + m)
}

/// The Ky-Fan metric with parameter `λ`:
/// `inf { ε > 0 | P[d(ξ,η) >= λ·ε] < ε }`.
pub fn ky_fan(lambda: &Rat, xi: &RandomVariable, eta: &RandomVariable) -> Result<MetricValue> {
    MetricDescriptor::KyFan(lambda.clone()).validate()?;
    let dist = distance_distribution(xi, eta)?;
    Ok(MetricValue::Finite(ky_fan_from_distribution(lambda, &dist)))
}

/// The `L^p` metric for integer `p >= 1`. The returned value carries the
/// exact rational power `∫ d^p dP` and compares exactly as its `p`-th root.
pub fn lp_metric(p: u32, xi: &RandomVariable, eta: &RandomVariable) -> Result<MetricValue> {
    MetricDescriptor::Lp(p).validate()?;
    let dist = distance_distribution(xi, eta)?;
    Ok(MetricValue::root(lp_power_from_distribution(p, &dist), p))
}

/// Floating `L^p` metric for rational `p >= 1` (float mode).
pub fn lp_metric_float(p: &Rat, xi: &RandomVariable, eta: &RandomVariable) -> Result<f64> {
    MetricDescriptor::LpFloat(p.clone()).validate()?;
    let dist = distance_distribution(xi, eta)?;
    let pf = crate::rat::to_f64(p);
    let mut total = 0.0;
    for (t, mass) in &dist {
        if !t.is_zero() {
            total += crate::rat::to_f64(mass) * crate::rat::to_f64(t).powf(pf);
        }
    }
    Ok(total.powf(1.0 / pf))
}

/// The `L^∞` metric: on a finite space, the largest distance attained with
/// positive probability.
pub fn linf_metric(xi: &RandomVariable, eta: &RandomVariable) -> Result<MetricValue> {
    let dist = distance_distribution(xi, eta)?;
    Ok(MetricValue::Finite(linf_from_distribution(&dist)))
}

/// The indicator metric `P[d(ξ,η) > 0]`.
pub fn indicator_metric(xi: &RandomVariable, eta: &RandomVariable) -> Result<MetricValue> {
    let dist = distance_distribution(xi, eta)?;
    Ok(MetricValue::Finite(indicator_from_distribution(&dist)))
}

// ---------------------------------------------------------------------------
// Simple metrics (law-level)
// ---------------------------------------------------------------------------

/// `max_A (P[A] − Q[A^{(r)}])` where `A^{(r)}` is the closed `r`-enlargement.
/// Subset enumeration; refused above [`PROKHOROV_ENUM_LIMIT`] points.
pub fn prokhorov_reach(space: &FinMetricSpace, p: &Law, q: &Law, r: &Rat) -> Result<Rat> {
    let n = space.len();
    if n > PROKHOROV_ENUM_LIMIT {
        return Err(Error::SizeLimit {
            what: "Prokhorov subset enumeration",
            limit: PROKHOROV_ENUM_LIMIT,
            got: n,
        });
    }
    // ball[i] = points within distance r of point i
    let mut ball = vec![0u32; n];
    for i in 0..n {
        for x in 0..n {
            if space.dist(x, i) <= r {
                ball[i] |= 1 << x;
            }
        }
    }
    let size = 1usize << n;
    let mut p_mass = vec![Rat::zero(); size];
    let mut q_mass = vec![Rat::zero(); size];
    let mut enlarged = vec![0u32; size];
    for mask in 1..size {
        let low = mask & mask.wrapping_neg();
        let i = low.trailing_zeros() as usize;
        let rest = mask ^ low;
        p_mass[mask] = &p_mass[rest] + p.weight(i);
        q_mass[mask] = &q_mass[rest] + q.weight(i);
        enlarged[mask] = enlarged[rest] | ball[i];
    }
    let mut best = Rat::zero();
    for mask in 1..size {
        let gap = &p_mass[mask] - &q_mass[enlarged[mask] as usize];
        if gap > best {
            best = gap;
        }
    }
    Ok(best)
}

/// The Prokhorov metric with parameter `λ`:
/// `inf { ε > 0 | ∀A : P[A] <= Q[A^{(λ·ε)}] + ε }`.
pub fn prokhorov(lambda: &Rat, p: &Law, q: &Law) -> Result<MetricValue> {
    MetricDescriptor::Prokhorov(lambda.clone()).validate()?;
    require_same_space(p.space(), q.space())?;
    let space = p.space();
    let thresholds = space.positive_distance_values();
    // levels[j] = reach at the closed enlargement radius t_j (t_0 = 0);
    // on the last interval the enlargement covers the whole space, so 0.
    let mut levels = Vec::with_capacity(thresholds.len() + 1);
    levels.push(prokhorov_reach(space, p, q, &Rat::zero())?);
    for t in &thresholds {
        levels.push(prokhorov_reach(space, p, q, t)?);
    }
    debug_assert!(levels.last().unwrap().is_zero());
    Ok(MetricValue::Finite(threshold_scan(
        lambda,
        &thresholds,
        &levels,
    )))
}

/// The total variation metric, by the half-`L^1` closed form.
pub fn total_variation(p: &Law, q: &Law) -> Result<MetricValue> {
    require_same_space(p.space(), q.space())?;
    let mut total = Rat::zero();
    for (pi, qi) in p.weights().iter().zip(q.weights()) {
        let diff = pi - qi;
        total += if diff < Rat::zero() { -diff } else { diff };
    }
    Ok(MetricValue::Finite(total / crate::rat::int(2)))
}

// ---------------------------------------------------------------------------
// Descriptor evaluation on couplings (joint laws)
// ---------------------------------------------------------------------------

/// Evaluates a non-`hat` descriptor as a function of a joint law. This is the
/// law-level form every probability metric factors through; the four
/// non-simple metrics read the distance distribution of the coupling, the
/// simple ones read only its marginals.
pub fn eval_on_coupling(desc: &MetricDescriptor, pi: &Coupling) -> Result<MetricValue> {
    desc.validate()?;
    match desc {
        MetricDescriptor::KyFan(l) => {
            let dist = pi.distance_distribution()?;
            Ok(MetricValue::Finite(ky_fan_from_distribution(l, &dist)))
        }
        MetricDescriptor::Lp(p) => {
            let dist = pi.distance_distribution()?;
            Ok(MetricValue::root(lp_power_from_distribution(*p, &dist), *p))
        }
        MetricDescriptor::LpFloat(_) => Err(Error::FloatModeRequired(desc.to_string())),
        MetricDescriptor::Linf => {
            let dist = pi.distance_distribution()?;
            Ok(MetricValue::Finite(linf_from_distribution(&dist)))
        }
        MetricDescriptor::Indicator => {
            let dist = pi.distance_distribution()?;
            Ok(MetricValue::Finite(indicator_from_distribution(&dist)))
        }
        MetricDescriptor::Prokhorov(l) => {
            prokhorov(l, &pi.row_marginal(), &pi.col_marginal())
        }
        MetricDescriptor::Tv => total_variation(&pi.row_marginal(), &pi.col_marginal()),
        MetricDescriptor::SupOf(list) => {
            let mut best = MetricValue::zero();
            for d in list {
                best = best.max(eval_on_coupling(d, pi)?);
            }
            Ok(best)
        }
        MetricDescriptor::Hat(_) => Err(Error::ParseDescriptor(format!(
            "{desc} must be evaluated through the minimal-metric dispatcher"
        ))),
    }
}
