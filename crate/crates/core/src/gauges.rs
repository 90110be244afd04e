//! Probability uniform gauges and their limit operators.
//!
//! A gauge is given by a basis of probability metrics: either a finite list
//! of descriptors or one of the two parametrized families (all Ky-Fan
//! metrics, all Prokhorov metrics). Limit operators are evaluated on
//! eventually periodic sequences, where the limsup is an exact finite
//! maximum over the cycle; the sup over a full parametrized family is its
//! small-parameter limit, available in closed form (Ky-Fan → indicator,
//! Prokhorov → total variation).

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::chain::{glue_chain, realize_chain, relayout, Coupling};
use crate::error::{Error, Result};
use crate::metrics::MetricDescriptor;
use crate::minimal::{eval_metric, hat_with_witness};
use crate::rat::{ratio, Rat};
use crate::rv::{realize, refinement_grid, Law, RandomVariable};
use crate::space::{require_same_space, SpaceRef};
use crate::value::MetricValue;

/// A probability uniform gauge, by its basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gauge {
    /// Finite basis of probability metrics.
    FiniteBasis(Vec<MetricDescriptor>),
    /// The family of all Ky-Fan metrics `{ K_λ | λ > 0 }`.
    KyFanFamily,
    /// The family of all Prokhorov metrics `{ ρ_λ | λ > 0 }`.
    ProkhorovFamily,
}

impl Gauge {
    pub fn validate(&self) -> Result<()> {
        match self {
            Gauge::FiniteBasis(list) => {
                if list.is_empty() {
                    return Err(Error::ParseGauge("basis() of no metrics".into()));
                }
                for d in list {
                    d.validate()?;
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// True when the gauge has a basis of simple metrics.
    pub fn is_simple(&self) -> bool {
        match self {
            Gauge::FiniteBasis(list) => list.iter().all(|d| d.is_simple()),
            Gauge::KyFanFamily => false,
            Gauge::ProkhorovFamily => true,
        }
    }

    /// A finite probe basis, used by the refutation-style contraction
    /// search. Exact for finite bases; for the two families it samples the
    /// parameter at a fixed grid of scales.
    pub fn probe_basis(&self) -> Vec<MetricDescriptor> {
        match self {
            Gauge::FiniteBasis(list) => list.clone(),
            Gauge::KyFanFamily => PROBE_LAMBDAS
                .iter()
                .map(|&(n, d)| MetricDescriptor::KyFan(ratio(n, d)))
                .collect(),
            Gauge::ProkhorovFamily => PROBE_LAMBDAS
                .iter()
                .map(|&(n, d)| MetricDescriptor::Prokhorov(ratio(n, d)))
                .collect(),
        }
    }
}

const PROBE_LAMBDAS: [(i64, i64); 5] = [(1, 4), (1, 2), (1, 1), (2, 1), (4, 1)];

impl fmt::Display for Gauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gauge::FiniteBasis(list) => {
                write!(f, "basis(")?;
                for (i, d) in list.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{d}")?;
                }
                write!(f, ")")
            }
            Gauge::KyFanFamily => write!(f, "family:kyfan"),
            Gauge::ProkhorovFamily => write!(f, "family:prokhorov"),
        }
    }
}

impl FromStr for Gauge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "family:kyfan" => return Ok(Gauge::KyFanFamily),
            "family:prokhorov" => return Ok(Gauge::ProkhorovFamily),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("basis(") {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::ParseGauge(s.to_string()))?;
            let mut list = Vec::new();
            let mut depth = 0usize;
            let mut start = 0usize;
            let bytes = inner.as_bytes();
            for (i, &c) in bytes.iter().enumerate() {
                match c {
                    b'(' => depth += 1,
                    b')' => depth = depth.saturating_sub(1),
                    b',' if depth == 0 => {
                        list.push(inner[start..i].parse::<MetricDescriptor>()?);
                        start = i + 1;
                    }
                    _ => {}
                }
            }
            if start < inner.len() {
                list.push(inner[start..].parse::<MetricDescriptor>()?);
            }
            let gauge = Gauge::FiniteBasis(list);
            gauge.validate()?;
            return Ok(gauge);
        }
        Err(Error::ParseGauge(s.to_string()))
    }
}

/// An eventually periodic sequence of random variables: a finite prefix
/// followed by a nonempty cycle repeated forever.
#[derive(Debug, Clone)]
pub struct SequenceSpec {
    prefix: Vec<RandomVariable>,
    cycle: Vec<RandomVariable>,
}

impl SequenceSpec {
    pub fn new(prefix: Vec<RandomVariable>, cycle: Vec<RandomVariable>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::InvalidRandomVariable(
                "sequence cycle must be nonempty".into(),
            ));
        }
        let space = cycle[0].space().clone();
        for rv in prefix.iter().chain(&cycle) {
            require_same_space(&space, rv.space())?;
        }
        Ok(SequenceSpec { prefix, cycle })
    }

    /// A constant (eventually constant) sequence.
    pub fn constant(rv: RandomVariable) -> Self {
        SequenceSpec {
            prefix: Vec::new(),
            cycle: vec![rv],
        }
    }

    pub fn prefix(&self) -> &[RandomVariable] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[RandomVariable] {
        &self.cycle
    }

    pub fn space(&self) -> &SpaceRef {
        self.cycle[0].space()
    }
}

/// Exact `limsup_n d(ξ, ξ_n)` for an eventually periodic sequence: the
/// maximum over the cycle (the prefix never affects the limsup).
pub fn limsup_seq(
    desc: &MetricDescriptor,
    seq: &SequenceSpec,
    xi: &RandomVariable,
) -> Result<MetricValue> {
    let mut best = MetricValue::zero();
    for eta in seq.cycle() {
        best = best.max(eval_metric(desc, xi, eta)?);
    }
    Ok(best)
}

/// The limit operator of a gauge on an eventually periodic sequence:
/// `sup` over the basis of `limsup`. For the two full families the sup over
/// the parameter is the small-parameter limit, evaluated in closed form
/// (Ky-Fan family → indicator metric, Prokhorov family → total variation).
pub fn limit_operator(
    gauge: &Gauge,
    seq: &SequenceSpec,
    xi: &RandomVariable,
) -> Result<MetricValue> {
    gauge.validate()?;
    match gauge {
        Gauge::FiniteBasis(list) => {
            let mut best = MetricValue::zero();
            for d in list {
                best = best.max(limsup_seq(d, seq, xi)?);
            }
            Ok(best)
        }
        Gauge::KyFanFamily => limsup_seq(&MetricDescriptor::Indicator, seq, xi),
        Gauge::ProkhorovFamily => limsup_seq(&MetricDescriptor::Tv, seq, xi),
    }
}

/// Windowed streaming mode for arbitrary generator-driven sequences: the sup
/// of `d(ξ, ξ_n)` over `n ∈ [n0, n1]`. This is an approximation of the
/// limsup — a finite window can both miss late terms and overcount transient
/// ones — so it is exact only for sequences known to cycle inside the window.
pub fn limsup_window(
    desc: &MetricDescriptor,
    seq: &mut dyn FnMut(usize) -> Result<RandomVariable>,
    window: (usize, usize),
    xi: &RandomVariable,
) -> Result<MetricValue> {
    let (n0, n1) = window;
    if n1 < n0 {
        return Err(Error::InvalidRandomVariable("empty window".into()));
    }
    let mut best = MetricValue::zero();
    for n in n0..=n1 {
        best = best.max(eval_metric(desc, xi, &seq(n)?)?);
    }
    Ok(best)
}

/// Windowed limit operator over a generator-driven sequence; approximate in
/// the same sense as [`limsup_window`].
pub fn limit_operator_window(
    gauge: &Gauge,
    seq: &mut dyn FnMut(usize) -> Result<RandomVariable>,
    window: (usize, usize),
    xi: &RandomVariable,
) -> Result<MetricValue> {
    gauge.validate()?;
    match gauge {
        Gauge::FiniteBasis(list) => {
            let mut best = MetricValue::zero();
            for d in list {
                best = best.max(limsup_window(d, seq, window, xi)?);
            }
            Ok(best)
        }
        Gauge::KyFanFamily => limsup_window(&MetricDescriptor::Indicator, seq, window, xi),
        Gauge::ProkhorovFamily => limsup_window(&MetricDescriptor::Tv, seq, window, xi),
    }
}

/// The hat of a single descriptor, as a descriptor. Closed forms are used
/// where the identities provide them; the remaining cases wrap in `hat(…)`,
/// which evaluates through the minimal-metric dispatcher.
pub fn hat_descriptor(desc: &MetricDescriptor) -> MetricDescriptor {
    match desc {
        MetricDescriptor::KyFan(l) => MetricDescriptor::Prokhorov(l.clone()),
        MetricDescriptor::Indicator => MetricDescriptor::Tv,
        MetricDescriptor::Prokhorov(_) | MetricDescriptor::Tv => desc.clone(),
        MetricDescriptor::Hat(_) => desc.clone(),
        d if d.is_simple() => d.clone(),
        _ => MetricDescriptor::Hat(Box::new(desc.clone())),
    }
}

/// The reflection of a gauge into simple gauges: hat each basis element.
/// `reflect(family:kyfan) = family:prokhorov`; simple gauges are fixed.
pub fn reflect(gauge: &Gauge) -> Gauge {
    match gauge {
        Gauge::FiniteBasis(list) => {
            Gauge::FiniteBasis(list.iter().map(hat_descriptor).collect())
        }
        Gauge::KyFanFamily => Gauge::ProkhorovFamily,
        Gauge::ProkhorovFamily => Gauge::ProkhorovFamily,
    }
}

/// The coreflection of a gauge into single metrics: the sup of its basis.
/// `coreflect(family:kyfan) = ind` (the sup of all Ky-Fan metrics) and
/// `coreflect(family:prokhorov) = tv`.
pub fn coreflect(gauge: &Gauge) -> Result<MetricDescriptor> {
    gauge.validate()?;
    Ok(match gauge {
        Gauge::FiniteBasis(list) => {
            if list.len() == 1 {
                list[0].clone()
            } else {
                MetricDescriptor::SupOf(list.clone())
            }
        }
        Gauge::KyFanFamily => MetricDescriptor::Indicator,
        Gauge::ProkhorovFamily => MetricDescriptor::Tv,
    })
}

/// Report of the minimal-limit-operator comparison on one instance.
#[derive(Debug, Clone)]
pub struct GapReport {
    /// `λ` of the reflected gauge on the original sequence — the lower side.
    pub lower: MetricValue,
    /// Best (smallest) `λ` of the original gauge over constructed
    /// law-preserving versions — an upper bound on the infimum.
    pub upper: MetricValue,
    /// `lower <= upper`, decided exactly. Guaranteed by the construction.
    pub holds: bool,
    /// True when the budget was exhausted with `upper > lower` — a candidate
    /// instance for the open strictness question, never an assertion.
    pub strict_candidate: bool,
    /// Number of version sequences evaluated.
    pub candidates_tried: usize,
}

/// Compares the limit operator of the reflected gauge with the infimum over
/// law-preserving versions of the limit operator of the gauge itself. The
/// upper side is approached with glued optimal-coupling versions (one per
/// basis descriptor) plus `budget` seeded random re-realizations.
pub fn min_limit_gap(
    gauge: &Gauge,
    seq: &SequenceSpec,
    xi: &RandomVariable,
    seed: u64,
    budget: usize,
) -> Result<GapReport> {
    gauge.validate()?;
    require_same_space(seq.space(), xi.space())?;
    let lower = limit_operator(&reflect(gauge), seq, xi)?;

    let target_law = xi.law();
    let cycle_laws: Vec<Law> = seq.cycle().iter().map(|rv| rv.law()).collect();

    let mut candidates_tried = 0usize;
    let mut upper: Option<MetricValue> = None;
    let mut consider = |value: MetricValue| {
        candidates_tried += 1;
        match &upper {
            Some(u) if u <= &value => {}
            _ => upper = Some(value),
        }
    };

    // the original sequence is itself a version
    consider(limit_operator(gauge, seq, xi)?);

    // glued optimal-coupling versions, one per witness descriptor
    let witness_descs: Vec<MetricDescriptor> = match gauge {
        Gauge::FiniteBasis(list) => list.clone(),
        // the family sup is the indicator metric; its hat witnesses are the
        // couplings minimizing the off-diagonal mass
        Gauge::KyFanFamily => vec![MetricDescriptor::Indicator],
        // simple already: versions cannot change the value
        Gauge::ProkhorovFamily => Vec::new(),
    };
    for d in &witness_descs {
        if d.needs_float() {
            continue;
        }
        let mut couplings: Vec<Coupling> = Vec::with_capacity(cycle_laws.len());
        for q in &cycle_laws {
            couplings.push(hat_with_witness(d, &target_law, q)?.1);
        }
        let glued = glue_chain(&couplings)?;
        let mut rvs = realize_chain(&glued);
        let xi_v = rvs.remove(0);
        let version = SequenceSpec::new(Vec::new(), rvs)?;
        consider(limit_operator(gauge, &version, &xi_v)?);
    }

    // seeded random law-preserving re-realizations
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let xi_v = random_relayout(xi, &mut rng)?;
        let cycle_v = seq
            .cycle()
            .iter()
            .map(|rv| random_relayout(rv, &mut rng))
            .collect::<Result<Vec<_>>>()?;
        let version = SequenceSpec::new(Vec::new(), cycle_v)?;
        consider(limit_operator(gauge, &version, &xi_v)?);
    }

    let upper = upper.expect("at least one candidate evaluated");
    let holds = lower <= upper;
    let strict_candidate = upper > lower;
    Ok(GapReport {
        lower,
        upper,
        holds,
        strict_candidate,
        candidates_tried,
    })
}

/// Law-preserving rebuild of one random variable on a randomly permuted
/// interval layout.
pub fn random_relayout(rv: &RandomVariable, rng: &mut ChaCha20Rng) -> Result<RandomVariable> {
    let segments = refinement_grid(&[rv]).len() - 1;
    let mut perm: Vec<usize> = (0..segments).collect();
    perm.shuffle(rng);
    Ok(relayout(&[rv], &perm)?.remove(0))
}

/// Canonical law-preserving version: the deterministic realization of the law.
pub fn canonical_version(rv: &RandomVariable) -> RandomVariable {
    realize(&rv.law())
}

/// One violation found by the contraction search: for the target-side metric
/// and slack `(ε, ω)`, no candidate domination metric works on the family;
/// for each candidate the first failing pair is recorded.
#[derive(Debug, Clone)]
pub struct ContractionViolation {
    pub target_metric: MetricDescriptor,
    pub eps: Rat,
    pub omega: Rat,
    pub counterexamples: Vec<(MetricDescriptor, usize)>,
}

/// Report of a random-contraction check. Refutation-sound: `pass` means no
/// violation was found on the given family and slack grid, not a proof.
#[derive(Debug, Clone)]
pub struct ContractionReport {
    pub pass: bool,
    pub checks: usize,
    pub violations: Vec<ContractionViolation>,
}

/// Default `(ε, ω)` slack grid for contraction checks.
pub fn default_slack_grid() -> Vec<(Rat, Rat)> {
    vec![
        (ratio(1, 4), ratio(2, 1)),
        (ratio(1, 2), ratio(4, 1)),
        (ratio(1, 8), ratio(1, 1)),
    ]
}

/// Checks whether the point map `f` behaves as a random contraction from
/// `(X, gauge_x)` to `(Y, gauge_y)` on a finite test family of pairs: for
/// every target-basis metric `e` and every `(ε, ω)` on the grid, some
/// source-basis metric `d` must satisfy
/// `e(f∘ξ, f∘η) ∧ ω <= d(ξ, η) + ε` across the family.
pub fn check_random_contraction(
    map: &[usize],
    target: &SpaceRef,
    gauge_x: &Gauge,
    gauge_y: &Gauge,
    family: &[(RandomVariable, RandomVariable)],
    grid: &[(Rat, Rat)],
) -> Result<ContractionReport> {
    gauge_x.validate()?;
    gauge_y.validate()?;
    let mut checks = 0usize;
    let mut violations = Vec::new();

    // image pairs and their per-metric values are shared across slacks
    let mut mapped: Vec<(RandomVariable, RandomVariable)> = Vec::with_capacity(family.len());
    for (xi, eta) in family {
        mapped.push((
            xi.pushforward(target.clone(), map)?,
            eta.pushforward(target.clone(), map)?,
        ));
    }

    for e in gauge_y.probe_basis() {
        let image_values: Vec<MetricValue> = mapped
            .iter()
            .map(|(fx, fe)| eval_metric(&e, fx, fe))
            .collect::<Result<Vec<_>>>()?;
        for (eps, omega) in grid {
            checks += 1;
            let mut counterexamples = Vec::new();
            let mut dominated = false;
            for d in gauge_x.probe_basis() {
                let mut first_fail = None;
                for (idx, (xi, eta)) in family.iter().enumerate() {
                    let lhs = image_values[idx].min_rat(omega);
                    let rhs = eval_metric(&d, xi, eta)?;
                    if !lhs.le_sum(&rhs, &MetricValue::Finite(eps.clone())) {
                        first_fail = Some(idx);
                        break;
                    }
                }
                match first_fail {
                    None => {
                        dominated = true;
                        break;
                    }
                    Some(idx) => counterexamples.push((d, idx)),
                }
            }
            if !dominated {
                violations.push(ContractionViolation {
                    target_metric: e.clone(),
                    eps: eps.clone(),
                    omega: omega.clone(),
                    counterexamples,
                });
            }
        }
    }

    Ok(ContractionReport {
        pass: violations.is_empty(),
        checks,
        violations,
    })
}

/// Outcome of the reflection-factorization check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorizationOutcome {
    /// The map already fails the plain contraction test; nothing to check.
    NotApplicable,
    /// Passing against `(gauge_x, gauge_y)` carried over to
    /// `(reflect(gauge_x), gauge_y)`.
    Pass,
    /// The reflected test failed although the plain one passed.
    Fail,
}

/// Report of [`verify_reflection_factorization`].
#[derive(Debug, Clone)]
pub struct FactorizationReport {
    pub outcome: FactorizationOutcome,
    pub plain: ContractionReport,
    pub reflected: Option<ContractionReport>,
}

/// Checks, on a test family, that a map passing the contraction test against
/// `(gauge_x, gauge_y)` with a simple target gauge also passes against
/// `(reflect(gauge_x), gauge_y)` — the factorization of the map through the
/// reflection.
pub fn verify_reflection_factorization(
    map: &[usize],
    target: &SpaceRef,
    gauge_x: &Gauge,
    gauge_y: &Gauge,
    family: &[(RandomVariable, RandomVariable)],
    grid: &[(Rat, Rat)],
) -> Result<FactorizationReport> {
    if !gauge_y.is_simple() {
        return Err(Error::ParseGauge(format!(
            "factorization check requires a simple target gauge, got {gauge_y}"
        )));
    }
    let plain = check_random_contraction(map, target, gauge_x, gauge_y, family, grid)?;
    if !plain.pass {
        return Ok(FactorizationReport {
            outcome: FactorizationOutcome::NotApplicable,
            plain,
            reflected: None,
        });
    }
    let reflected =
        check_random_contraction(map, target, &reflect(gauge_x), gauge_y, family, grid)?;
    let outcome = if reflected.pass {
        FactorizationOutcome::Pass
    } else {
        FactorizationOutcome::Fail
    };
    Ok(FactorizationReport {
        outcome,
        plain,
        reflected: Some(reflected),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;
    use crate::rv::Piece;
    use crate::space::FinMetricSpace;

    fn two_point_space() -> SpaceRef {
        FinMetricSpace::new(
            vec!["a".into(), "b".into()],
            vec![vec![int(0), int(1)], vec![int(1), int(0)]],
        )
        .unwrap()
    }

    fn rv(space: &SpaceRef, steps: &[(i64, i64, usize)], denom: i64) -> RandomVariable {
        let pieces = steps
            .iter()
            .map(|&(a, b, pt)| Piece {
                start: ratio(a, denom),
                end: ratio(b, denom),
                point: pt,
            })
            .collect();
        RandomVariable::new(space.clone(), pieces).unwrap()
    }

    #[test]
    fn gauge_parse_display_round_trip() {
        for s in ["family:kyfan", "family:prokhorov", "basis(tv)", "basis(ind,kyfan:1/2)"] {
            let g: Gauge = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        assert!("basis()".parse::<Gauge>().is_err());
        assert!("family:weird".parse::<Gauge>().is_err());
    }

    #[test]
    fn limsup_of_constant_cycle_is_zero() {
        let s = two_point_space();
        let xi = rv(&s, &[(0, 1, 0), (1, 2, 1)], 2);
        let seq = SequenceSpec::constant(xi.clone());
        for d in ["kyfan:1", "lp:2", "linf", "ind", "prok:1", "tv"] {
            let desc: MetricDescriptor = d.parse().unwrap();
            assert!(limsup_seq(&desc, &seq, &xi).unwrap().is_zero(), "{d}");
        }
    }

    #[test]
    fn limsup_takes_cycle_max_and_ignores_prefix() {
        let s = two_point_space();
        let xi = rv(&s, &[(0, 2, 0)], 2);
        let far = rv(&s, &[(0, 2, 1)], 2); // d = 1 a.s.
        let near = rv(&s, &[(0, 1, 0), (1, 2, 1)], 2); // d = 1 on half
        let seq = SequenceSpec::new(vec![far.clone()], vec![near.clone()]).unwrap();
        let ind = MetricDescriptor::Indicator;
        // prefix ignored: limsup = d_i(xi, near) = 1/2
        assert_eq!(
            limsup_seq(&ind, &seq, &xi).unwrap(),
            MetricValue::Finite(ratio(1, 2))
        );
        let seq2 = SequenceSpec::new(vec![], vec![near, far]).unwrap();
        assert_eq!(
            limsup_seq(&ind, &seq2, &xi).unwrap(),
            MetricValue::Finite(int(1))
        );
    }

    #[test]
    fn windowed_mode_matches_exact_on_cyclic_generators() {
        let s = two_point_space();
        let xi = rv(&s, &[(0, 2, 0)], 2);
        let near = rv(&s, &[(0, 1, 0), (1, 2, 1)], 2);
        let far = rv(&s, &[(0, 2, 1)], 2);
        let seq = SequenceSpec::new(vec![], vec![near.clone(), far.clone()]).unwrap();
        let cycle = [near, far];
        let mut gen = |n: usize| Ok(cycle[n % 2].clone());
        for gauge in [Gauge::KyFanFamily, Gauge::ProkhorovFamily] {
            let exact = limit_operator(&gauge, &seq, &xi).unwrap();
            let windowed = limit_operator_window(&gauge, &mut gen, (0, 7), &xi).unwrap();
            assert_eq!(windowed, exact, "{gauge}");
        }
        // a window that misses the far element undershoots
        let mut gen_far_late = |n: usize| Ok(if n < 5 { cycle[0].clone() } else { cycle[1].clone() });
        let small_window =
            limit_operator_window(&Gauge::KyFanFamily, &mut gen_far_late, (0, 4), &xi).unwrap();
        assert_eq!(small_window, MetricValue::Finite(ratio(1, 2)));
    }

    #[test]
    fn family_limit_operators_closed_forms() {
        let s = two_point_space();
        let xi = rv(&s, &[(0, 2, 0)], 2);
        // eta differs on measure 3/10
        let eta = rv(&s, &[(0, 3, 1), (3, 10, 0)], 10);
        let seq = SequenceSpec::constant(eta);
        assert_eq!(
            limit_operator(&Gauge::KyFanFamily, &seq, &xi).unwrap(),
            MetricValue::Finite(ratio(3, 10))
        );
        // delta_a vs delta_b: Prokhorov family limit = TV = 1
        let target = rv(&s, &[(0, 2, 0)], 2);
        let far = rv(&s, &[(0, 2, 1)], 2);
        assert_eq!(
            limit_operator(&Gauge::ProkhorovFamily, &SequenceSpec::constant(far), &target)
                .unwrap(),
            MetricValue::Finite(int(1))
        );
    }

    #[test]
    fn reflect_closed_forms() {
        assert_eq!(reflect(&Gauge::KyFanFamily), Gauge::ProkhorovFamily);
        assert_eq!(reflect(&Gauge::ProkhorovFamily), Gauge::ProkhorovFamily);
        let g = Gauge::FiniteBasis(vec![MetricDescriptor::Indicator]);
        assert_eq!(
            reflect(&g),
            Gauge::FiniteBasis(vec![MetricDescriptor::Tv])
        );
        let g2 = Gauge::FiniteBasis(vec![
            MetricDescriptor::KyFan(ratio(1, 2)),
            MetricDescriptor::Lp(2),
        ]);
        assert_eq!(
            reflect(&g2),
            Gauge::FiniteBasis(vec![
                MetricDescriptor::Prokhorov(ratio(1, 2)),
                MetricDescriptor::Hat(Box::new(MetricDescriptor::Lp(2))),
            ])
        );
    }

    #[test]
    fn coreflect_closed_forms() {
        assert_eq!(
            coreflect(&Gauge::KyFanFamily).unwrap(),
            MetricDescriptor::Indicator
        );
        assert_eq!(coreflect(&Gauge::ProkhorovFamily).unwrap(), MetricDescriptor::Tv);
        assert_eq!(
            coreflect(&Gauge::FiniteBasis(vec![MetricDescriptor::Tv])).unwrap(),
            MetricDescriptor::Tv
        );
        assert_eq!(
            coreflect(&Gauge::FiniteBasis(vec![
                MetricDescriptor::Indicator,
                MetricDescriptor::Tv
            ]))
            .unwrap(),
            MetricDescriptor::SupOf(vec![MetricDescriptor::Indicator, MetricDescriptor::Tv])
        );
    }

    #[test]
    fn gap_report_constant_sequence() {
        let s = two_point_space();
        let xi = rv(&s, &[(0, 1, 0), (1, 2, 1)], 2);
        let seq = SequenceSpec::constant(xi.clone());
        for gauge in [
            Gauge::KyFanFamily,
            Gauge::ProkhorovFamily,
            Gauge::FiniteBasis(vec![MetricDescriptor::Lp(1), MetricDescriptor::Linf]),
        ] {
            let report = min_limit_gap(&gauge, &seq, &xi, 7, 4).unwrap();
            assert!(report.lower.is_zero());
            assert!(report.upper.is_zero());
            assert!(report.holds);
            assert!(!report.strict_candidate);
        }
    }

    #[test]
    fn gap_kyfan_family_attains_tv_bound() {
        let s = two_point_space();
        let target = rv(&s, &[(0, 2, 0)], 2); // delta_a
        let far = rv(&s, &[(0, 2, 1)], 2); // delta_b
        let seq = SequenceSpec::constant(far);
        let report = min_limit_gap(&Gauge::KyFanFamily, &seq, &target, 3, 4).unwrap();
        // L = TV(delta_a, delta_b) = 1; point masses admit only one coupling,
        // so every version still differs a.s. and U = 1.
        assert_eq!(report.lower, MetricValue::Finite(int(1)));
        assert_eq!(report.upper, MetricValue::Finite(int(1)));
        assert!(report.holds && !report.strict_candidate);
    }

    #[test]
    fn gap_glued_versions_close_the_gap() {
        let s = two_point_space();
        // target = a on [0,1/2), b after; cycle element has the same law but
        // anti-aligned layout, so the plain indicator distance is 1 while the
        // TV of the laws is 0.
        let xi = rv(&s, &[(0, 1, 0), (1, 2, 1)], 2);
        let eta = rv(&s, &[(0, 1, 1), (1, 2, 0)], 2);
        let seq = SequenceSpec::constant(eta);
        let report = min_limit_gap(&Gauge::KyFanFamily, &seq, &xi, 11, 2).unwrap();
        assert!(report.lower.is_zero());
        // the glued TV-optimal version aligns the pair exactly
        assert!(report.upper.is_zero());
        assert!(!report.strict_candidate);
    }

    #[test]
    fn identity_map_is_a_contraction() {
        let s = two_point_space();
        let xi = rv(&s, &[(0, 1, 0), (1, 2, 1)], 2);
        let eta = rv(&s, &[(0, 1, 1), (1, 2, 0)], 2);
        let family = vec![(xi.clone(), xi.clone()), (xi, eta)];
        let map = vec![0, 1];
        for gauge in [Gauge::KyFanFamily, Gauge::ProkhorovFamily] {
            let report = check_random_contraction(
                &map,
                &s,
                &gauge,
                &gauge,
                &family,
                &default_slack_grid(),
            )
            .unwrap();
            assert!(report.pass, "{gauge}");
        }
    }

    #[test]
    fn constant_map_is_a_contraction() {
        let s = two_point_space();
        let xi = rv(&s, &[(0, 1, 0), (1, 2, 1)], 2);
        let eta = rv(&s, &[(0, 2, 1)], 2);
        let family = vec![(xi, eta)];
        let map = vec![0, 0]; // collapse everything to point a
        let gx = Gauge::FiniteBasis(vec![MetricDescriptor::Indicator]);
        let gy = Gauge::FiniteBasis(vec![MetricDescriptor::Tv]);
        let report =
            check_random_contraction(&map, &s, &gx, &gy, &family, &default_slack_grid()).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn factorization_identity_indicator_to_tv() {
        let s = two_point_space();
        let xi = rv(&s, &[(0, 1, 0), (1, 2, 1)], 2);
        let eta = rv(&s, &[(0, 1, 1), (1, 2, 0)], 2);
        let family = vec![(xi.clone(), xi.clone()), (xi, eta)];
        let gx = Gauge::FiniteBasis(vec![MetricDescriptor::Indicator]);
        let gy = Gauge::FiniteBasis(vec![MetricDescriptor::Tv]);
        let report = verify_reflection_factorization(
            &[0, 1],
            &s,
            &gx,
            &gy,
            &family,
            &default_slack_grid(),
        )
        .unwrap();
        assert_eq!(report.outcome, FactorizationOutcome::Pass);
    }

    #[test]
    fn factorization_requires_simple_target() {
        let s = two_point_space();
        let gx = Gauge::FiniteBasis(vec![MetricDescriptor::Indicator]);
        let gy = Gauge::KyFanFamily;
        assert!(verify_reflection_factorization(
            &[0, 1],
            &s,
            &gx,
            &gy,
            &[],
            &default_slack_grid()
        )
        .is_err());
    }
}
