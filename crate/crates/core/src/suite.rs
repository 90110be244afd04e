//! Named verification suites over seeded instances.
//!
//! Each suite checks one family of identities or inequalities on bundles
//! generated from the given seeds, with zero tolerance in exact mode.
//! Reports are deterministic: identical seeds and flags produce
//! byte-identical documents (wall-clock timing is kept out of them).

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use serde::Serialize;

use crate::chain::{glue, glue_chain, joint_law, realize_chain, relayout, Coupling};
use crate::error::{Error, Result};
use crate::gauges::{
    coreflect, limit_operator, min_limit_gap, random_relayout, Gauge, SequenceSpec,
};
use crate::generate::{generate, GenProfile};
use crate::instance::InstanceBundle;
use crate::metrics::{
    indicator_metric, ky_fan, prokhorov, total_variation, MetricDescriptor,
};
use crate::minimal::{eval_metric, hat, hat_sup_report, hat_triangle, hat_with_witness};
use crate::oracles::{ky_fan_grid, prokhorov_grid, GRID_DENOM};
use crate::rat::{int, ratio, Rat};

use crate::rv::{equal_ae, law_of, realize, Law, Piece, RandomVariable};
use crate::transport::{enumerate_vertices, transport_lp, TransportProblem};
use crate::value::MetricValue;

/// Known suite names, in documentation order.
pub const SUITE_NAMES: [&str; 12] = [
    "axioms",
    "invariance",
    "simplicity",
    "identities",
    "minimal",
    "mingauge",
    "gluing",
    "limitops",
    "minlimop",
    "coreflections",
    "oracles",
    "determinism",
];

/// Per-group statistics of a suite run.
#[derive(Debug, Clone, Serialize)]
pub struct GroupStat {
    pub group: String,
    pub cases: usize,
    pub failures: usize,
    /// Worst observed |lhs − rhs| as a float; 0 whenever every check held
    /// exactly.
    pub max_gap: f64,
}

/// One failed check, with the instance document that reproduces it.
#[derive(Debug, Clone, Serialize)]
pub struct CaseFailure {
    pub seed: u64,
    pub case: String,
    pub message: String,
    pub instance: String,
}

/// Result of one suite run.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub exact_mode: bool,
    pub seeds: Vec<u64>,
    pub cases: usize,
    pub groups: Vec<GroupStat>,
    pub failures: Vec<CaseFailure>,
    /// Wall-clock duration; never serialized, so reports stay deterministic.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Output formats for [`emit_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Table,
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(ReportFormat::Table),
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::InstanceFormat(format!("unknown format {other:?}"))),
        }
    }
}

/// Serializes a report deterministically.
pub fn emit_report(report: &SuiteReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        ReportFormat::Csv => {
            let mut out = String::from("suite,group,cases,failures,max_gap\n");
            for g in &report.groups {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    report.suite, g.group, g.cases, g.failures, g.max_gap
                ));
            }
            out
        }
        ReportFormat::Table => {
            let mut out = format!(
                "suite {} | mode {} | seeds {} | cases {} | failures {}\n",
                report.suite,
                if report.exact_mode { "exact" } else { "float" },
                report.seeds.len(),
                report.cases,
                report.failures.len()
            );
            for g in &report.groups {
                out.push_str(&format!(
                    "  {:<28} cases {:>6}  failures {:>4}  max_gap {}\n",
                    g.group, g.cases, g.failures, g.max_gap
                ));
            }
            for f in &report.failures {
                out.push_str(&format!(
                    "  FAIL seed={} case={} : {}\n",
                    f.seed, f.case, f.message
                ));
            }
            out
        }
    }
}

/// Runs a named suite over the given seeds. Exact mode is the default; float
/// mode compares floating approximations with tolerance `1e-9` instead.
pub fn run_suite(name: &str, seeds: &[u64], float_mode: bool) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut ctx = Ctx::new(float_mode);
    match name {
        "axioms" => suite_axioms(seeds, &mut ctx)?,
        "invariance" => suite_invariance(seeds, &mut ctx)?,
        "simplicity" => suite_simplicity(seeds, &mut ctx)?,
        "identities" => suite_identities(seeds, &mut ctx)?,
        "minimal" => suite_minimal(seeds, &mut ctx)?,
        "mingauge" => suite_mingauge(seeds, &mut ctx)?,
        "gluing" => suite_gluing(seeds, &mut ctx)?,
        "limitops" => suite_limitops(seeds, &mut ctx)?,
        "minlimop" => suite_minlimop(seeds, &mut ctx)?,
        "coreflections" => suite_coreflections(seeds, &mut ctx)?,
        "oracles" => suite_oracles(seeds, &mut ctx)?,
        "determinism" => suite_determinism(seeds, &mut ctx)?,
        other => return Err(Error::UnknownSuite(other.to_string())),
    }
    Ok(ctx.finish(name, seeds, start.elapsed()))
}

// ---------------------------------------------------------------------------
// Suite context
// ---------------------------------------------------------------------------

struct Ctx {
    float_mode: bool,
    groups: BTreeMap<String, GroupStat>,
    failures: Vec<CaseFailure>,
    seed: u64,
    instance: String,
}

impl Ctx {
    fn new(float_mode: bool) -> Self {
        Ctx {
            float_mode,
            groups: BTreeMap::new(),
            failures: Vec::new(),
            seed: 0,
            instance: String::new(),
        }
    }

    fn set_instance(&mut self, seed: u64, bundle: &InstanceBundle) {
        self.seed = seed;
        self.instance = bundle.to_json();
    }

    fn record(&mut self, group: &str, case: &str, ok: bool, gap: f64, message: impl FnOnce() -> String) {
        let stat = self.groups.entry(group.to_string()).or_insert_with(|| GroupStat {
            group: group.to_string(),
            cases: 0,
            failures: 0,
            max_gap: 0.0,
        });
        stat.cases += 1;
        if gap.is_finite() && gap > stat.max_gap {
            stat.max_gap = gap;
        }
        if !ok {
            stat.failures += 1;
            self.failures.push(CaseFailure {
                seed: self.seed,
                case: case.to_string(),
                message: message(),
                instance: self.instance.clone(),
            });
        }
    }

    /// Equality check: exact by default, `1e-9` on approximations in float mode.
    fn check_eq(&mut self, group: &str, case: &str, lhs: &MetricValue, rhs: &MetricValue) {
        let gap = (lhs.approx() - rhs.approx()).abs();
        let ok = if self.float_mode {
            gap <= 1e-9
        } else {
            lhs == rhs
        };
        self.record(group, case, ok, if ok { gap } else { gap.max(f64::MIN_POSITIVE) }, || {
            format!("{lhs} != {rhs}")
        });
    }

    /// `lhs <= a + b` check (triangle shape).
    fn check_le_sum(&mut self, group: &str, case: &str, lhs: &MetricValue, a: &MetricValue, b: &MetricValue) {
        let ok = if self.float_mode {
            lhs.approx() <= a.approx() + b.approx() + 1e-9
        } else {
            lhs.le_sum(a, b)
        };
        let gap = (lhs.approx() - a.approx() - b.approx()).max(0.0);
        self.record(group, case, ok, gap, || format!("{lhs} > {a} + {b}"));
    }

    /// `lhs <= rhs` check.
    fn check_le(&mut self, group: &str, case: &str, lhs: &MetricValue, rhs: &MetricValue) {
        self.check_le_sum(group, case, lhs, rhs, &MetricValue::zero());
    }

    /// Plain boolean check.
    fn check(&mut self, group: &str, case: &str, ok: bool, message: impl FnOnce() -> String) {
        self.record(group, case, ok, 0.0, message);
    }

    fn finish(self, suite: &str, seeds: &[u64], elapsed: Duration) -> SuiteReport {
        let groups: Vec<GroupStat> = self.groups.into_values().collect();
        let cases = groups.iter().map(|g| g.cases).sum();
        let mut failures = self.failures;
        failures.sort_by(|a, b| (a.seed, &a.case).cmp(&(b.seed, &b.case)));
        SuiteReport {
            suite: suite.to_string(),
            exact_mode: !self.float_mode,
            seeds: seeds.to_vec(),
            cases,
            groups,
            failures,
            elapsed,
        }
    }
}

fn salted_rng(seed: u64, salt: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(salt))
}

/// The six metrics of the examples, with representative parameters.
fn six_metrics() -> Vec<MetricDescriptor> {
    vec![
        MetricDescriptor::KyFan(int(1)),
        MetricDescriptor::Lp(2),
        MetricDescriptor::Linf,
        MetricDescriptor::Indicator,
        MetricDescriptor::Prokhorov(int(1)),
        MetricDescriptor::Tv,
    ]
}

fn pick<'a, T>(rng: &mut ChaCha20Rng, items: &'a [T]) -> &'a T {
    &items[rng.random_range(0..items.len())]
}

fn bundle_rvs(bundle: &InstanceBundle) -> Vec<&RandomVariable> {
    bundle.random_variables.values().collect()
}

fn bundle_laws(bundle: &InstanceBundle) -> Vec<&Law> {
    bundle.laws.values().collect()
}

/// Splits every piece at its midpoint: an equal-almost-everywhere rewrite.
fn subdivide(rv: &RandomVariable) -> RandomVariable {
    let mut pieces = Vec::with_capacity(rv.pieces().len() * 2);
    for p in rv.pieces() {
        let mid = (&p.start + &p.end) / int(2);
        pieces.push(Piece { start: p.start.clone(), end: mid.clone(), point: p.point });
        pieces.push(Piece { start: mid, end: p.end.clone(), point: p.point });
    }
    RandomVariable::new(rv.space().clone(), pieces).expect("subdivision preserves the partition")
}

/// Realizes a law with its positive atoms rotated by one block: same law,
/// different alignment.
fn rotated_realization(law: &Law) -> RandomVariable {
    let atoms: Vec<(usize, &Rat)> = law
        .weights()
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .collect();
    let k = atoms.len();
    let mut pieces = Vec::with_capacity(k);
    let mut cursor = Rat::zero();
    for idx in 0..k {
        let (point, w) = atoms[(idx + 1) % k];
        let end = &cursor + w;
        pieces.push(Piece { start: cursor.clone(), end: end.clone(), point });
        cursor = end;
    }
    RandomVariable::new(law.space().clone(), pieces).expect("atom blocks tile the unit interval")
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

/// Metric axioms: reflexivity, symmetry, triangle, each exactly. 5 triples
/// per seed per metric.
fn suite_axioms(seeds: &[u64], ctx: &mut Ctx) -> Result<()> {
    let descs = six_metrics();
    for &seed in seeds {
        let bundle = generate(seed, &GenProfile::small())?;
        ctx.set_instance(seed, &bundle);
        let rvs = bundle_rvs(&bundle);
        let mut rng = salted_rng(seed, 1);
        for t in 0..5 {
            let x = *pick(&mut rng, &rvs);
            let y = *pick(&mut rng, &rvs);
            let z = *pick(&mut rng, &rvs);
            for desc in &descs {
                let group = desc.to_string();
                let dxx = eval_metric(desc, x, x)?;
                ctx.check(
                    &group,
                    &format!("reflexivity t{t}"),
                    dxx.is_zero(),
                    || format!("d(x,x) = {dxx}"),
                );
                let dxy = eval_metric(desc, x, y)?;
                let dyx = eval_metric(desc, y, x)?;
                ctx.check_eq(&group, &format!("symmetry t{t}"), &dxy, &dyx);
                let dxz = eval_metric(desc, x, z)?;
                let dyz = eval_metric(desc, y, z)?;
                ctx.check_le_sum(&group, &format!("triangle t{t}"), &dxz, &dxy, &dyz);
            }
        }
    }
    Ok(())
}

/// The probability-metric axiom and almost-everywhere invariance: pairs with
/// equal joint laws evaluate equal; subdivision rewrites change nothing.
fn suite_invariance(seeds: &[u64], ctx: &mut Ctx) -> Result<()> {
    let descs = six_metrics();
    for &seed in seeds {
        let bundle = generate(seed, &GenProfile::small())?;
        ctx.set_instance(seed, &bundle);
        let rvs = bundle_rvs(&bundle);
        let mut rng = salted_rng(seed, 2);
        for t in 0..2 {
            let xi = *pick(&mut rng, &rvs);
            let eta = *pick(&mut rng, &rvs);
            // same joint law, shuffled interval layout
            let chain = joint_law(&[xi, eta])?;
            let pair = realize_chain(&chain);
            let segments = crate::rv::refinement_grid(&[&pair[0], &pair[1]]).len() - 1;
            let mut perm: Vec<usize> = (0..segments).collect();
            for i in (1..segments).rev() {
                perm.swap(i, rng.random_range(0..=i));
            }
            let shuffled = relayout(&[&pair[0], &pair[1]], &perm)?;
            for desc in &descs {
                let v0 = eval_metric(desc, xi, eta)?;
                let v1 = eval_metric(desc, &pair[0], &pair[1])?;
                let v2 = eval_metric(desc, &shuffled[0], &shuffled[1])?;
                ctx.check_eq("pm-axiom", &format!("{desc} realized t{t}"), &v1, &v0);
                ctx.check_eq("pm-axiom", &format!("{desc} shuffled t{t}"), &v2, &v0);
            }
            // a.e. rewrite by subdivision
            let xi_sub = subdivide(xi);
            let eta_sub = subdivide(eta);
            ctx.check(
                "ae-invariance",
                &format!("subdivision is a.e. equal t{t}"),
                equal_ae(xi, &xi_sub)?,
                || "subdivided copy not a.e. equal".into(),
            );
            for desc in &descs {
                let v0 = eval_metric(desc, xi, eta)?;
                let v1 = eval_metric(desc, &xi_sub, &eta_sub)?;
                ctx.check_eq("ae-invariance", &format!("{desc} t{t}"), &v1, &v0);
            }
        }
    }
    Ok(())
}

/// Simplicity: Prokhorov and TV are invariant under independent
/// law-preserving re-realization; the other four admit counterexamples.
fn suite_simplicity(seeds: &[u64], ctx: &mut Ctx) -> Result<()> {
    let simple = [MetricDescriptor::Prokhorov(int(1)), MetricDescriptor::Tv];
    let nonsimple = [
        MetricDescriptor::KyFan(int(1)),
        MetricDescriptor::Lp(2),
        MetricDescriptor::Linf,
        MetricDescriptor::Indicator,
    ];
    let mut found: BTreeMap<String, usize> = BTreeMap::new();
    for &seed in seeds {
        let bundle = generate(seed, &GenProfile::small())?;
        ctx.set_instance(seed, &bundle);
        let p0 = bundle.law("P0")?;
        let xi = realize(p0);
        let eta = rotated_realization(p0);
        ctx.check(
            "construction",
            "rotation preserves the law",
            law_of(&eta) == *p0,
            || "rotated realization changed the law".into(),
        );
        // simple metrics: value depends on the laws only
        let mut rng = salted_rng(seed, 3);
        let laws = bundle_laws(&bundle);
        let q = *pick(&mut rng, &laws);
        let (a1, b1) = (realize(p0), realize(q));
        let (a2, b2) = (rotated_realization(p0), rotated_realization(q));
        for desc in &simple {
            let v1 = eval_metric(desc, &a1, &b1)?;
            let v2 = eval_metric(desc, &a2, &b2)?;
            ctx.check_eq("simple-invariant", &desc.to_string(), &v1, &v2);
        }
        // non-simple metrics: (xi, xi) vs (xi, eta) share marginal laws but
        // the values differ
        for desc in &nonsimple {
            let aligned = eval_metric(desc, &xi, &xi)?;
            let misaligned = eval_metric(desc, &xi, &eta)?;
            if aligned != misaligned {
                *found.entry(desc.to_string()).or_insert(0) += 1;
            }
            ctx.check(
                "counterexample-search",
                &format!("{desc} seed {seed}"),
                true,
                String::new,
            );
        }
    }
    for desc in &nonsimple {
        let n = found.get(&desc.to_string()).copied().unwrap_or(0);
        ctx.check(
            "counterexample-found",
            &desc.to_string(),
            n >= 1,
            || format!("no simplicity counterexample for {desc} in {} instances", seeds.len()),
        );
    }
    Ok(())
}

/// The minimal-metric identities, exactly: Ky-Fan hat = Prokhorov, indicator
/// hat = total variation, `L^p` hat = transport optimum of `d^p`, `L^∞` hat
/// = bottleneck, and idempotence on the simple metrics.
fn suite_identities(seeds: &[u64], ctx: &mut Ctx) -> Result<()> {
    let lambdas = [ratio(1, 2), int(1), int(2)];
    for &seed in seeds {
        let bundle = generate(seed, &GenProfile::small())?;
        ctx.set_instance(seed, &bundle);
        let laws = bundle_laws(&bundle);
        let mut rng = salted_rng(seed, 4);
        for t in 0..2 {
            let p = *pick(&mut rng, &laws);
            let q = *pick(&mut rng, &laws);
            for lambda in &lambdas {
                let lhs = hat(&MetricDescriptor::KyFan(lambda.clone()), p, q)?;
                let rhs = prokhorov(lambda, p, q)?;
                ctx.check_eq(
                    &format!("kyfan-prokhorov:{}", crate::rat::format_rat(lambda)),
                    &format!("t{t}"),
                    &lhs,
                    &rhs,
                );
            }
            let lhs = hat(&MetricDescriptor::Indicator, p, q)?;
            let rhs = total_variation(p, q)?;
            ctx.check_eq("indicator-tv", &format!("t{t}"), &lhs, &rhs);
            for pow in [1u32, 2, 3] {
                let lhs = hat(&MetricDescriptor::Lp(pow), p, q)?;
                let prob = TransportProblem::with_distance_power((*p).clone(), (*q).clone(), pow)?;
                let rhs = MetricValue::root(transport_lp(&prob)?.0, pow);
                ctx.check_eq(&format!("wasserstein:{pow}"), &format!("t{t}"), &lhs, &rhs);
            }
            let lhs = hat(&MetricDescriptor::Linf, p, q)?;
            let rhs = MetricValue::Finite(crate::transport::bottleneck(p, q)?);
            ctx.check_eq("bottleneck", &format!("t{t}"), &lhs, &rhs);
            // hats of the simple metrics are the identity on the value
            let lhs = hat(&MetricDescriptor::Prokhorov(int(1)), p, q)?;
            let rhs = prokhorov(&int(1), p, q)?;
            ctx.check_eq("simple-idempotent", &format!("prokhorov t{t}"), &lhs, &rhs);
            let lhs = hat(&MetricDescriptor::Tv, p, q)?;
            let rhs = total_variation(p, q)?;
            ctx.check_eq("simple-idempotent", &format!("tv t{t}"), &lhs, &rhs);
        }
    }
    Ok(())
}

/// The simple-hull facts: the hat never exceeds the metric, satisfies the
/// triangle inequality exactly, and its glued three-coordinate witness
/// reproduces both prescribed marginals.
fn suite_minimal(seeds: &[u64], ctx: &mut Ctx) -> Result<()> {
    let descs = six_metrics();
    for &seed in seeds {
        let bundle = generate(seed, &GenProfile::small())?;
        ctx.set_instance(seed, &bundle);
        let rvs = bundle_rvs(&bundle);
        let laws = bundle_laws(&bundle);
        let mut rng = salted_rng(seed, 5);
        for t in 0..2 {
            let xi = *pick(&mut rng, &rvs);
            let eta = *pick(&mut rng, &rvs);
            for desc in &descs {
                let plain = eval_metric(desc, xi, eta)?;
                let hatted = hat(desc, &law_of(xi), &law_of(eta))?;
                ctx.check_le("hat-dominated", &format!("{desc} t{t}"), &hatted, &plain);
            }
        }
        for t in 0..2 {
            let p = *pick(&mut rng, &laws);
            let q = *pick(&mut rng, &laws);
            let r = *pick(&mut rng, &laws);
            for desc in &descs {
                let tri = hat_triangle(desc, p, q, r)?;
                ctx.check(
                    "hat-triangle",
                    &format!("{desc} t{t}"),
                    tri.holds,
                    || format!("{} > {} + {}", tri.lhs, tri.via.0, tri.via.1),
                );
                let left = Coupling::from_chain(&tri.glued.marginal(&[0, 1])?)?;
                let right = Coupling::from_chain(&tri.glued.marginal(&[1, 2])?)?;
                ctx.check(
                    "glued-marginals",
                    &format!("{desc} t{t}"),
                    left == tri.left && right == tri.right,
                    || "glued witness does not reproduce the optimal couplings".into(),
                );
            }
        }
    }
    Ok(())
}

/// The two parts of the minimal-gauge lemma: the sup of hats is bounded by
/// the hat-of-sup, and `(ε,ω)`-domination transfers to the hats.
fn suite_mingauge(seeds: &[u64], ctx: &mut Ctx) -> Result<()> {
    let pool = [
        MetricDescriptor::Tv,
        MetricDescriptor::Indicator,
        MetricDescriptor::KyFan(int(1)),
        MetricDescriptor::KyFan(ratio(1, 2)),
        MetricDescriptor::Lp(1),
        MetricDescriptor::Prokhorov(ratio(1, 2)),
        MetricDescriptor::Linf,
    ];
    // pairs (d1, d2) with d1 <= d2 pointwise over all pairs, so the
    // domination antecedent holds with any slack
    let dominated_pairs = [
        (MetricDescriptor::Tv, MetricDescriptor::Indicator),
        (MetricDescriptor::KyFan(int(1)), MetricDescriptor::Indicator),
        (MetricDescriptor::Lp(1), MetricDescriptor::Linf),
        (MetricDescriptor::Prokhorov(int(1)), MetricDescriptor::KyFan(int(1))),
        (MetricDescriptor::Indicator, MetricDescriptor::Indicator),
    ];
    let slacks = [(ratio(1, 4), int(2)), (ratio(1, 2), int(4))];
    for &seed in seeds {
        // small spaces keep the vertex scan of the hat-of-sup bound cheap
        let bundle = generate(seed, &GenProfile::small().with_max_points(4))?;
        ctx.set_instance(seed, &bundle);
        let laws = bundle_laws(&bundle);
        let rvs = bundle_rvs(&bundle);
        let mut rng = salted_rng(seed, 6);

        // sup of hats <= hat of sup
        let basis_size = rng.random_range(1..=3usize);
        let basis: Vec<MetricDescriptor> =
            (0..basis_size).map(|_| pick(&mut rng, &pool).clone()).collect();
        let p = *pick(&mut rng, &laws);
        let q = *pick(&mut rng, &laws);
        let report = hat_sup_report(&basis, p, q)?;
        ctx.check_le(
            "sup-hat-bound",
            &format!("basis {:?}", basis.iter().map(|d| d.to_string()).collect::<Vec<_>>()),
            &report.lower,
            &report.upper,
        );

        // domination transfer on a family extended with hat witnesses
        let (d1, d2) = pick(&mut rng, &dominated_pairs).clone();
        let mut family: Vec<(RandomVariable, RandomVariable)> = Vec::new();
        for _ in 0..2 {
            let xi = (*pick(&mut rng, &rvs)).clone();
            let eta = (*pick(&mut rng, &rvs)).clone();
            family.push((xi, eta));
        }
        let mut extended = family.clone();
        for (xi, eta) in &family {
            let (_, witness) = hat_with_witness(&d2, &law_of(xi), &law_of(eta))?;
            let pair = realize_chain(&witness.to_chain());
            extended.push((pair[0].clone(), pair[1].clone()));
        }
        for (eps, omega) in &slacks {
            let eps_v = MetricValue::Finite(eps.clone());
            for (k, (xi, eta)) in extended.iter().enumerate() {
                let lhs = eval_metric(&d1, xi, eta)?.min_rat(omega);
                let rhs = eval_metric(&d2, xi, eta)?;
                ctx.check(
                    "domination-antecedent",
                    &format!("{d1} vs {d2} eps={} pair {k}", crate::rat::format_rat(eps)),
                    lhs.le_sum(&rhs, &eps_v),
                    || format!("{lhs} > {rhs} + {eps_v}"),
                );
            }
            for (k, (xi, eta)) in family.iter().enumerate() {
                let (p, q) = (law_of(xi), law_of(eta));
                let lhs = hat(&d1, &p, &q)?.min_rat(omega);
                let rhs = hat(&d2, &p, &q)?;
                ctx.check(
                    "domination-transfer",
                    &format!("{d1} vs {d2} eps={} pair {k}", crate::rat::format_rat(eps)),
                    lhs.le_sum(&rhs, &eps_v),
                    || format!("{lhs} > {rhs} + {eps_v}"),
                );
            }
        }
    }
    Ok(())
}

/// Gluing reproduces every prescribed marginal exactly, for the two-coupling
/// glue and the iterated chain glue up to horizon 8.
fn suite_gluing(seeds: &[u64], ctx: &mut Ctx) -> Result<()> {
    for &seed in seeds {
        let bundle = generate(seed, &GenProfile::small().with_max_points(5))?;
        ctx.set_instance(seed, &bundle);
        let laws = bundle_laws(&bundle);
        let mut rng = salted_rng(seed, 7);

        let random_coupling = |rng: &mut ChaCha20Rng, p: &Law, q: &Law| -> Result<Coupling> {
            let n = p.space().len();
            let cost: Vec<Vec<Rat>> = (0..n)
                .map(|_| (0..n).map(|_| ratio(rng.random_range(0..=16), 8)).collect())
                .collect();
            let prob = TransportProblem::new(p.clone(), q.clone(), cost)?;
            Ok(transport_lp(&prob)?.1)
        };

        let p = *pick(&mut rng, &laws);
        let q = *pick(&mut rng, &laws);
        let r = *pick(&mut rng, &laws);
        let pi1 = random_coupling(&mut rng, p, q)?;
        let pi2 = random_coupling(&mut rng, q, r)?;
        let glued = glue(&pi1, &pi2)?;
        ctx.check(
            "glue",
            "pairwise marginals",
            Coupling::from_chain(&glued.marginal(&[0, 1])?)? == pi1
                && Coupling::from_chain(&glued.marginal(&[1, 2])?)? == pi2,
            || "glue lost a prescribed marginal".into(),
        );

        let horizon = rng.random_range(1..=8usize);
        let couplings: Vec<Coupling> = (0..horizon)
            .map(|_| {
                let target = *pick(&mut rng, &laws);
                random_coupling(&mut rng, p, target)
            })
            .collect::<Result<Vec<_>>>()?;
        let chain = glue_chain(&couplings)?;
        let mut ok = true;
        for (n, c) in couplings.iter().enumerate() {
            if Coupling::from_chain(&chain.marginal(&[0, n + 1])?)? != *c {
                ok = false;
                break;
            }
        }
        ctx.check(
            "glue-chain",
            &format!("horizon {horizon}"),
            ok,
            || "glue_chain lost a prescribed marginal".into(),
        );
    }
    Ok(())
}

/// The limit-operator formula: the limsup of the hat equals the limsup of
/// the glued-witness version sequence, exactly, and the zero-limit
/// equivalence follows.
fn suite_limitops(seeds: &[u64], ctx: &mut Ctx) -> Result<()> {
    let descs = [
        MetricDescriptor::KyFan(int(1)),
        MetricDescriptor::Lp(1),
        MetricDescriptor::Lp(2),
        MetricDescriptor::Linf,
        MetricDescriptor::Indicator,
        MetricDescriptor::Tv,
    ];
    for &seed in seeds {
        let bundle = generate(seed, &GenProfile::small())?;
        ctx.set_instance(seed, &bundle);
        let mut rng = salted_rng(seed, 8);
        let rvs = bundle_rvs(&bundle);
        let xi = *pick(&mut rng, &rvs);
        let seq = bundle.sequence("seq0")?;
        let desc = pick(&mut rng, &descs).clone();

        let target_law = law_of(xi);
        let mut lower = MetricValue::zero();
        for eta in seq.cycle() {
            lower = lower.max(hat(&desc, &target_law, &law_of(eta))?);
        }
        let mut couplings = Vec::new();
        for eta in seq.cycle() {
            couplings.push(hat_with_witness(&desc, &target_law, &law_of(eta))?.1);
        }
        let glued = glue_chain(&couplings)?;
        let mut version = realize_chain(&glued);
        let xi_v = version.remove(0);
        let mut achieved = MetricValue::zero();
        for eta_v in &version {
            achieved = achieved.max(eval_metric(&desc, &xi_v, eta_v)?);
        }
        ctx.check_eq("limop-attained", &desc.to_string(), &achieved, &lower);
        ctx.check(
            "genconv",
            &desc.to_string(),
            lower.is_zero() == achieved.is_zero(),
            || "zero-limit equivalence failed".into(),
        );
        ctx.check(
            "version-laws",
            &desc.to_string(),
            law_of(&xi_v) == target_law
                && version
                    .iter()
                    .zip(seq.cycle())
                    .all(|(v, orig)| law_of(v) == law_of(orig)),
            || "constructed version changed a law".into(),
        );

        // simple gauges vanish on law-constant sequences
        let law_constant = SequenceSpec::new(
            Vec::new(),
            (0..2)
                .map(|_| random_relayout(xi, &mut rng))
                .collect::<Result<Vec<_>>>()?,
        )?;
        let vanished = limit_operator(&Gauge::ProkhorovFamily, &law_constant, xi)?;
        ctx.check(
            "simple-vanishes",
            "prokhorov family on law-constant sequence",
            vanished.is_zero(),
            || format!("limit operator {vanished} on a law-constant sequence"),
        );

        // a.e. rewrites never change a limit operator; law-preserving
        // rewrites never change a simple one
        let gauge_any = Gauge::KyFanFamily;
        let before = limit_operator(&gauge_any, seq, xi)?;
        let seq_sub = SequenceSpec::new(
            seq.prefix().iter().map(subdivide).collect(),
            seq.cycle().iter().map(subdivide).collect(),
        )?;
        let after = limit_operator(&gauge_any, &seq_sub, &subdivide(xi))?;
        ctx.check_eq("limop-ae-invariance", "kyfan family", &after, &before);

        let before = limit_operator(&Gauge::ProkhorovFamily, seq, xi)?;
        let seq_shuffled = SequenceSpec::new(
            Vec::new(),
            seq.cycle()
                .iter()
                .map(|rv| random_relayout(rv, &mut rng))
                .collect::<Result<Vec<_>>>()?,
        )?;
        let after =
            limit_operator(&Gauge::ProkhorovFamily, &seq_shuffled, &random_relayout(xi, &mut rng)?)?;
        ctx.check_eq("limop-law-invariance", "prokhorov family", &after, &before);
    }
    Ok(())
}

/// The minimal-limit-operator inequality and the weak-vs-probability
/// corollary, on identical and on law-preserving modified sequences.
fn suite_minlimop(seeds: &[u64], ctx: &mut Ctx) -> Result<()> {
    let gauges = [
        Gauge::KyFanFamily,
        Gauge::ProkhorovFamily,
        Gauge::FiniteBasis(vec![MetricDescriptor::Indicator, MetricDescriptor::Tv]),
        Gauge::FiniteBasis(vec![MetricDescriptor::Lp(1), MetricDescriptor::Linf]),
        Gauge::FiniteBasis(vec![
            MetricDescriptor::KyFan(ratio(1, 2)),
            MetricDescriptor::KyFan(int(2)),
        ]),
    ];
    for &seed in seeds {
        let bundle = generate(seed, &GenProfile::small())?;
        ctx.set_instance(seed, &bundle);
        let mut rng = salted_rng(seed, 9);
        let rvs = bundle_rvs(&bundle);
        let xi = *pick(&mut rng, &rvs);
        let seq = bundle.sequence("seq0")?;
        let gauge = pick(&mut rng, &gauges).clone();

        let report = min_limit_gap(&gauge, seq, xi, seed, 3)?;
        ctx.check(
            "minlimop-holds",
            &gauge.to_string(),
            report.holds,
            || format!("lower {} above upper {}", report.lower, report.upper),
        );

        // λ_w <= λ_P on the identical sequence and on law-preserving versions
        let weak = limit_operator(&Gauge::ProkhorovFamily, seq, xi)?;
        let prob = limit_operator(&Gauge::KyFanFamily, seq, xi)?;
        ctx.check_le("weak-le-prob", "identical", &weak, &prob);
        let xi_v = random_relayout(xi, &mut rng)?;
        let cycle_v = seq
            .cycle()
            .iter()
            .map(|rv| random_relayout(rv, &mut rng))
            .collect::<Result<Vec<_>>>()?;
        let version = SequenceSpec::new(Vec::new(), cycle_v)?;
        let prob_v = limit_operator(&Gauge::KyFanFamily, &version, &xi_v)?;
        ctx.check_le("weak-le-prob", "version", &weak, &prob_v);
    }
    Ok(())
}

/// Closed-form coreflections: evaluating the Ky-Fan metric at half the
/// smallest positive distance gives the indicator metric, and likewise
/// Prokhorov gives total variation, matching the coreflect outputs.
fn suite_coreflections(seeds: &[u64], ctx: &mut Ctx) -> Result<()> {
    for &seed in seeds {
        let bundle = generate(seed, &GenProfile::small())?;
        ctx.set_instance(seed, &bundle);
        let mut rng = salted_rng(seed, 10);
        let rvs = bundle_rvs(&bundle);
        let lambda = bundle
            .space
            .min_positive_distance()
            .map(|t| t / int(2))
            .unwrap_or_else(|| int(1));
        for t in 0..2 {
            let xi = *pick(&mut rng, &rvs);
            let eta = *pick(&mut rng, &rvs);
            let small = ky_fan(&lambda, xi, eta)?;
            let ind = indicator_metric(xi, eta)?;
            ctx.check_eq("kyfan-small-lambda", &format!("t{t}"), &small, &ind);
            let (p, q) = (law_of(xi), law_of(eta));
            let small = prokhorov(&lambda, &p, &q)?;
            let tv = total_variation(&p, &q)?;
            ctx.check_eq("prokhorov-small-lambda", &format!("t{t}"), &small, &tv);

            // coreflect outputs match the closed forms
            let ck = coreflect(&Gauge::KyFanFamily)?;
            let cp = coreflect(&Gauge::ProkhorovFamily)?;
            ctx.check(
                "coreflect-tags",
                &format!("t{t}"),
                ck == MetricDescriptor::Indicator && cp == MetricDescriptor::Tv,
                || "coreflection closed forms changed".into(),
            );
            let via_ck = eval_metric(&ck, xi, eta)?;
            ctx.check_eq("coreflect-eval", &format!("kyfan t{t}"), &via_ck, &ind);
            let via_cp = eval_metric(&cp, xi, eta)?;
            ctx.check_eq("coreflect-eval", &format!("prokhorov t{t}"), &via_cp, &tv);
        }
    }
    Ok(())
}

/// Oracle concordance: the candidate-set evaluators agree with the dense
/// ε-grid within one grid step, and the transport solver agrees exactly with
/// full vertex enumeration.
fn suite_oracles(seeds: &[u64], ctx: &mut Ctx) -> Result<()> {
    let lambdas = [ratio(1, 2), int(1), int(2)];
    let step = ratio(1, GRID_DENOM);
    for &seed in seeds {
        let bundle = generate(seed, &GenProfile::small())?;
        ctx.set_instance(seed, &bundle);
        let mut rng = salted_rng(seed, 11);
        let rvs = bundle_rvs(&bundle);
        for t in 0..2 {
            let xi = *pick(&mut rng, &rvs);
            let eta = *pick(&mut rng, &rvs);
            let lambda = pick(&mut rng, &lambdas).clone();
            let exact = match ky_fan(&lambda, xi, eta)? {
                MetricValue::Finite(r) => r,
                other => unreachable!("ky-fan is rational, got {other}"),
            };
            let grid = ky_fan_grid(&lambda, xi, eta)?;
            ctx.check(
                "kyfan-grid",
                &format!("lambda={} t{t}", crate::rat::format_rat(&lambda)),
                exact <= grid && &grid - &exact <= step,
                || format!("exact {} vs grid {}", crate::rat::format_rat(&exact), crate::rat::format_rat(&grid)),
            );
            let (p, q) = (law_of(xi), law_of(eta));
            let exact = match prokhorov(&lambda, &p, &q)? {
                MetricValue::Finite(r) => r,
                other => unreachable!("prokhorov is rational, got {other}"),
            };
            let grid = prokhorov_grid(&lambda, &p, &q)?;
            ctx.check(
                "prokhorov-grid",
                &format!("lambda={} t{t}", crate::rat::format_rat(&lambda)),
                exact <= grid && &grid - &exact <= step,
                || format!("exact {} vs grid {}", crate::rat::format_rat(&exact), crate::rat::format_rat(&grid)),
            );
        }

        // transport vs full vertex enumeration on a small space
        let small = generate(seed, &GenProfile::small().with_max_points(4))?;
        ctx.set_instance(seed, &small);
        let laws = bundle_laws(&small);
        let p = *pick(&mut rng, &laws);
        let q = *pick(&mut rng, &laws);
        let prob = TransportProblem::with_distance_power((*p).clone(), (*q).clone(), 1)?;
        let (value, _) = transport_lp(&prob)?;
        let mut best: Option<Rat> = None;
        for v in enumerate_vertices(p, q)? {
            let mut c = Rat::zero();
            for i in 0..p.space().len() {
                for j in 0..p.space().len() {
                    c += v.entry(i, j) * &prob.cost[i][j];
                }
            }
            best = Some(match best {
                Some(b) if b <= c => b,
                _ => c,
            });
        }
        let best = best.expect("polytope has vertices");
        ctx.check(
            "transport-vertices",
            "w1",
            best == value,
            || format!(
                "simplex {} vs enumeration {}",
                crate::rat::format_rat(&value),
                crate::rat::format_rat(&best)
            ),
        );
    }
    Ok(())
}

/// Byte determinism: running a suite twice with identical inputs yields
/// byte-identical reports.
fn suite_determinism(seeds: &[u64], ctx: &mut Ctx) -> Result<()> {
    let inner: Vec<u64> = seeds.iter().take(2).copied().collect();
    for name in ["identities", "axioms"] {
        let a = run_suite(name, &inner, false)?;
        let b = run_suite(name, &inner, false)?;
        let (ja, jb) = (
            emit_report(&a, ReportFormat::Json),
            emit_report(&b, ReportFormat::Json),
        );
        ctx.check(
            "byte-identical",
            name,
            ja == jb,
            || format!("{name} reports differ between consecutive runs"),
        );
        ctx.check(
            "byte-identical",
            &format!("{name} csv"),
            emit_report(&a, ReportFormat::Csv) == emit_report(&b, ReportFormat::Csv),
            || format!("{name} csv reports differ"),
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_errors() {
        assert!(matches!(
            run_suite("nonexistent", &[0], false),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn axioms_suite_passes_on_a_few_seeds() {
        let report = run_suite("axioms", &[0, 1, 2], false).unwrap();
        assert!(report.passed(), "{:?}", report.failures.first());
        assert!(report.cases > 0);
    }

    #[test]
    fn identities_suite_passes_and_is_deterministic() {
        let a = run_suite("identities", &[0, 1], false).unwrap();
        assert!(a.passed(), "{:?}", a.failures.first());
        let b = run_suite("identities", &[0, 1], false).unwrap();
        assert_eq!(
            emit_report(&a, ReportFormat::Json),
            emit_report(&b, ReportFormat::Json)
        );
    }

    #[test]
    fn float_mode_is_reported() {
        let report = run_suite("identities", &[0], true).unwrap();
        assert!(!report.exact_mode);
        assert!(report.passed());
    }

    #[test]
    fn empty_seed_list_gives_header_only_documents() {
        let report = run_suite("axioms", &[], false).unwrap();
        assert_eq!(report.cases, 0);
        assert!(report.passed());
        assert_eq!(
            emit_report(&report, ReportFormat::Csv),
            "suite,group,cases,failures,max_gap\n"
        );
    }

    #[test]
    fn report_formats_render() {
        let report = run_suite("gluing", &[0], false).unwrap();
        assert!(report.passed(), "{:?}", report.failures.first());
        let table = emit_report(&report, ReportFormat::Table);
        assert!(table.contains("suite gluing"));
        let csv = emit_report(&report, ReportFormat::Csv);
        assert!(csv.starts_with("suite,group,cases,failures,max_gap\n"));
        let json = emit_report(&report, ReportFormat::Json);
        assert!(serde_json::from_str::<serde_json::Value>(&json).is_ok());
    }
}
