//! Metric values with exact ordering.
//!
//! Most metrics here produce plain rationals, but the `L^p` metric produces
//! the `p`-th root of a rational, so metric values are kept as radicals
//! `power^(1/degree)` with rational `power >= 0`. Sums and comparisons of
//! such values are decided exactly: rationally commensurable radicals are
//! combined symbolically, and the remaining (linearly independent) radicals
//! are separated by interval refinement with integer root bounds.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rat::{format_rat, Rat};

/// Value of a probability metric: a nonnegative exact rational, the exact
/// `degree`-th root of a rational (the `L^p` case, carrying the exact power
/// value), or `+∞`.
#[derive(Debug, Clone)]
pub enum MetricValue {
    Finite(Rat),
    Root { power: Rat, degree: u32 },
    Infinite,
}

impl MetricValue {
    pub fn zero() -> Self {
        MetricValue::Finite(Rat::zero())
    }

    /// Builds `power^(1/degree)`, collapsing degree 1 to a plain rational.
    pub fn root(power: Rat, degree: u32) -> Self {
        assert!(degree >= 1, "root degree must be positive");
        assert!(!power.is_negative(), "radicand must be nonnegative");
        if degree == 1 {
            MetricValue::Finite(power)
        } else {
            MetricValue::Root { power, degree }
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, MetricValue::Infinite)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            MetricValue::Finite(r) => r.is_zero(),
            MetricValue::Root { power, .. } => power.is_zero(),
            MetricValue::Infinite => false,
        }
    }

    /// The exact rational value, when the value is rational.
    pub fn as_rational(&self) -> Option<Rat> {
        match self {
            MetricValue::Finite(r) => Some(r.clone()),
            MetricValue::Root { power, degree } => rat_nth_root(power, *degree),
            MetricValue::Infinite => None,
        }
    }

    /// For root values, the exact power value `d^p` and the degree `p`.
    pub fn power_value(&self) -> Option<(&Rat, u32)> {
        match self {
            MetricValue::Root { power, degree } => Some((power, *degree)),
            _ => None,
        }
    }

    /// Floating approximation of the value.
    pub fn approx(&self) -> f64 {
        match self {
            MetricValue::Finite(r) => crate::rat::to_f64(r),
            MetricValue::Root { power, degree } => {
                crate::rat::to_f64(power).powf(1.0 / f64::from(*degree))
            }
            MetricValue::Infinite => f64::INFINITY,
        }
    }

    /// Exact total-order comparison.
    pub fn cmp_exact(&self, other: &MetricValue) -> Ordering {
        use MetricValue::*;
        match (self, other) {
            (Infinite, Infinite) => Ordering::Equal,
            (Infinite, _) => Ordering::Greater,
            (_, Infinite) => Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
            _ => sign_of_combination(&[(Rat::one(), self.clone()), (-Rat::one(), other.clone())]),
        }
    }

    /// Exact check of `self <= a + b` (the triangle-inequality shape).
    pub fn le_sum(&self, a: &MetricValue, b: &MetricValue) -> bool {
        use MetricValue::*;
        match (self, a, b) {
            (_, Infinite, _) | (_, _, Infinite) => true,
            (Infinite, _, _) => false,
            _ => {
                let sign = sign_of_combination(&[
                    (Rat::one(), a.clone()),
                    (Rat::one(), b.clone()),
                    (-Rat::one(), self.clone()),
                ]);
                sign != Ordering::Less
            }
        }
    }

    /// Pointwise minimum with a rational cap (the `∧ ω` operation).
    pub fn min_rat(&self, omega: &Rat) -> MetricValue {
        let cap = MetricValue::Finite(omega.clone());
        if self.cmp_exact(&cap) == Ordering::Greater {
            cap
        } else {
            self.clone()
        }
    }

    /// Maximum of two values.
    pub fn max(self, other: MetricValue) -> MetricValue {
        if self.cmp_exact(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }
}

impl PartialEq for MetricValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl Eq for MetricValue {}

impl PartialOrd for MetricValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_exact(other))
    }
}

impl Ord for MetricValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

impl From<Rat> for MetricValue {
    fn from(r: Rat) -> Self {
        MetricValue::Finite(r)
    }
}

impl fmt::Display for MetricValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricValue::Finite(r) => write!(f, "{}", format_rat(r)),
            MetricValue::Root { power, degree } => match rat_nth_root(power, *degree) {
                Some(r) => write!(f, "{}", format_rat(&r)),
                None => write!(f, "({})^(1/{})", format_rat(power), degree),
            },
            MetricValue::Infinite => write!(f, "inf"),
        }
    }
}

/// Exact `n`-th root of a nonnegative rational, when it is rational.
pub fn rat_nth_root(x: &Rat, n: u32) -> Option<Rat> {
    debug_assert!(!x.is_negative());
    if n == 1 {
        return Some(x.clone());
    }
    let rn = x.numer().nth_root(n);
    if &rn.clone().pow(n) != x.numer() {
        return None;
    }
    let rd = x.denom().nth_root(n);
    if &rd.clone().pow(n) != x.denom() {
        return None;
    }
    Some(Rat::new(rn, rd))
}

/// `x^n` for a rational base and machine exponent.
pub fn rat_pow(x: &Rat, n: u32) -> Rat {
    Rat::new(x.numer().clone().pow(n), x.denom().clone().pow(n))
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    a / num_integer::gcd(a, b) * b
}

/// One normalized summand: `coeff * rad^(1/deg)` with `rad > 0`.
struct Radical {
    coeff: Rat,
    rad: Rat,
}

/// Exact sign of `Σ coeff_i * value_i` over finite metric values.
///
/// Commensurable radicals are merged; what remains is a rational constant
/// plus rational multiples of pairwise incommensurable irrational radicals
/// of one common degree, which vanishes only when all coefficients do.
/// Otherwise interval refinement terminates with the sign.
fn sign_of_combination(terms: &[(Rat, MetricValue)]) -> Ordering {
    // common degree
    let mut degree = 1u32;
    for (_, v) in terms {
        if let MetricValue::Root { degree: d, .. } = v {
            degree = lcm_u32(degree, *d);
        }
    }

    let mut constant = Rat::zero();
    let mut radicals: Vec<Radical> = Vec::new();
    for (coeff, v) in terms {
        if coeff.is_zero() {
            continue;
        }
        let (power, d) = match v {
            MetricValue::Finite(r) => {
                constant += coeff * r;
                continue;
            }
            MetricValue::Root { power, degree: d } => (power.clone(), *d),
            MetricValue::Infinite => unreachable!("infinite values handled by callers"),
        };
        if power.is_zero() {
            continue;
        }
        let lifted = rat_pow(&power, degree / d);
        if let Some(root) = rat_nth_root(&lifted, degree) {
            constant += coeff * root;
            continue;
        }
        // merge into an existing commensurability class if the ratio of
        // radicands is a perfect degree-th power
        let mut merged = false;
        for r in &mut radicals {
            if let Some(ratio_root) = rat_nth_root(&(&lifted / &r.rad), degree) {
                r.coeff += coeff * ratio_root;
                merged = true;
                break;
            }
        }
        if !merged {
            radicals.push(Radical {
                coeff: coeff.clone(),
                rad: lifted,
            });
        }
    }
    radicals.retain(|r| !r.coeff.is_zero());

    if radicals.is_empty() {
        return constant.cmp(&Rat::zero());
    }

    // The combination is nonzero; refine until the enclosing interval
    // excludes zero.
    let mut bits = 32u32;
    while bits <= 1 << 14 {
        let mut lo = constant.clone();
        let mut hi = constant.clone();
        for r in &radicals {
            let (rlo, rhi) = root_bounds(&r.rad, degree, bits);
            if r.coeff.is_positive() {
                lo += &r.coeff * &rlo;
                hi += &r.coeff * &rhi;
            } else {
                lo += &r.coeff * &rhi;
                hi += &r.coeff * &rlo;
            }
        }
        if lo.is_positive() {
            return Ordering::Greater;
        }
        if hi.is_negative() {
            return Ordering::Less;
        }
        bits *= 2;
    }
    unreachable!("interval refinement failed to separate a provably nonzero radical combination")
}

/// Rational enclosure of `q^(1/deg)` with width `2^-bits / denom`.
fn root_bounds(q: &Rat, deg: u32, bits: u32) -> (Rat, Rat) {
    // q = a/b; q^(1/deg) = (a * b^(deg-1))^(1/deg) / b
    let a = q.numer();
    let b = q.denom();
    let n = a * b.pow(deg - 1);
    let shifted = n << (deg as usize * bits as usize);
    let r = shifted.nth_root(deg);
    let scale = BigInt::from(b.clone()) << (bits as usize);
    (
        Rat::new(r.clone(), scale.clone()),
        Rat::new(r + BigInt::one(), scale),
    )
}
