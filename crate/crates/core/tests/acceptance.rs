//! Acceptance gate: one test per criterion, each printing a pass/fail line.
//!
//! Everything runs in exact (zero-tolerance) rational mode. Counts follow
//! the verification contract: most suites contribute a fixed number of
//! instances per seed, so the seed ranges below pin the instance counts.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::Instant;

use probmetric_core::suite::{emit_report, run_suite, ReportFormat, SuiteReport};

fn seeds(n: u64) -> Vec<u64> {
    (0..n).collect()
}

fn report_line(criterion: &str, report: &SuiteReport, extra: &str) {
    let status = if report.passed() { "PASS" } else { "FAIL" };
    println!(
        "criterion {criterion}: {status} ({} cases, {} failures{extra})",
        report.cases,
        report.failures.len()
    );
}

fn assert_passed(criterion: &str, report: &SuiteReport) {
    assert!(
        report.passed(),
        "criterion {criterion} failed: {:?}",
        report.failures.first()
    );
}

/// 1. Metric axioms for the six metrics on 500 generated triples
///    (5 triples per seed), exactly, in under 60 seconds.
#[test]
fn criterion_01_metric_axioms() {
    let start = Instant::now();
    let report = run_suite("axioms", &seeds(100), false).unwrap();
    let elapsed = start.elapsed();
    for group in &report.groups {
        // 500 triples, 3 checks each, per metric
        assert_eq!(group.cases, 1500, "triple count for {}", group.group);
    }
    assert_eq!(report.groups.len(), 6);
    report_line("01 metric-axioms", &report, &format!(", {elapsed:.2?}"));
    assert_passed("01", &report);
    assert!(elapsed.as_secs() < 60, "axioms took {elapsed:?}");
}

/// 2. The probability-metric axiom and a.e. invariance: 200 equal-joint-law
///    realizations and 200 a.e.-modified pairs evaluate identically.
#[test]
fn criterion_02_pm_axiom_and_ae_invariance() {
    let report = run_suite("invariance", &seeds(100), false).unwrap();
    let pm = report.groups.iter().find(|g| g.group == "pm-axiom").unwrap();
    assert_eq!(pm.cases, 100 * 2 * 6 * 2);
    let ae = report
        .groups
        .iter()
        .find(|g| g.group == "ae-invariance")
        .unwrap();
    assert!(ae.cases >= 100 * 2 * 6);
    report_line("02 pm-and-ae-invariance", &report, "");
    assert_passed("02", &report);
}

/// 3. Simplicity classification: Prokhorov and TV invariant under
///    law-preserving re-realization on 200 instances; each non-simple metric
///    has a generated counterexample.
#[test]
fn criterion_03_simplicity() {
    let report = run_suite("simplicity", &seeds(200), false).unwrap();
    let found = report
        .groups
        .iter()
        .find(|g| g.group == "counterexample-found")
        .unwrap();
    assert_eq!(found.cases, 4, "one existence check per non-simple metric");
    report_line("03 simplicity", &report, "");
    assert_passed("03", &report);
}

/// 4. The minimal-metric identities on 200 instances, zero tolerance, in
///    under 120 seconds: Ky-Fan hat = Prokhorov (λ ∈ {1/2, 1, 2}),
///    indicator hat = TV, `L^p` hat = transport optimum (p ∈ {1, 2, 3}),
///    `L^∞` hat = bottleneck.
#[test]
fn criterion_04_minimal_metric_identities() {
    let start = Instant::now();
    let report = run_suite("identities", &seeds(100), false).unwrap();
    let elapsed = start.elapsed();
    for group in [
        "kyfan-prokhorov:1/2",
        "kyfan-prokhorov:1",
        "kyfan-prokhorov:2",
        "indicator-tv",
        "wasserstein:1",
        "wasserstein:2",
        "wasserstein:3",
        "bottleneck",
    ] {
        let g = report.groups.iter().find(|g| g.group == group).unwrap();
        assert_eq!(g.cases, 200, "instance count for {group}");
        assert_eq!(g.max_gap, 0.0, "zero tolerance for {group}");
    }
    report_line("04 minimal-identities", &report, &format!(", {elapsed:.2?}"));
    assert_passed("04", &report);
    assert!(elapsed.as_secs() < 120, "identities took {elapsed:?}");
}

/// 5. The hat is a simple probability metric: dominated by the metric on 200
///    pairs, triangle inequality exact on 200 law triples, glued witness
///    reproducing both prescribed marginals.
#[test]
fn criterion_05_hat_is_simple_metric() {
    let report = run_suite("minimal", &seeds(100), false).unwrap();
    let dominated = report
        .groups
        .iter()
        .find(|g| g.group == "hat-dominated")
        .unwrap();
    assert_eq!(dominated.cases, 100 * 2 * 6);
    let triangle = report
        .groups
        .iter()
        .find(|g| g.group == "hat-triangle")
        .unwrap();
    assert_eq!(triangle.cases, 100 * 2 * 6);
    assert!(report.groups.iter().any(|g| g.group == "glued-marginals"));
    report_line("05 hat-simple-metric", &report, "");
    assert_passed("05", &report);
}

/// 6. The minimal-gauge lemma on 100 instances with bases of size ≤ 3:
///    sup of hats bounded by the hat-of-sup, and (ε,ω)-domination transfer
///    for (1/4, 2) and (1/2, 4), exactly.
#[test]
fn criterion_06_min_gauge_lemma() {
    let report = run_suite("mingauge", &seeds(100), false).unwrap();
    let bound = report
        .groups
        .iter()
        .find(|g| g.group == "sup-hat-bound")
        .unwrap();
    assert_eq!(bound.cases, 100);
    assert!(report
        .groups
        .iter()
        .any(|g| g.group == "domination-transfer" && g.cases >= 100));
    report_line("06 min-gauge-lemma", &report, "");
    assert_passed("06", &report);
}

/// 7. Gluing reproduces all prescribed marginals exactly on 200 instances
///    (chains up to horizon 8, spaces up to 5 points).
#[test]
fn criterion_07_gluing() {
    let report = run_suite("gluing", &seeds(200), false).unwrap();
    for group in ["glue", "glue-chain"] {
        let g = report.groups.iter().find(|g| g.group == group).unwrap();
        assert_eq!(g.cases, 200, "instance count for {group}");
    }
    report_line("07 gluing", &report, "");
    assert_passed("07", &report);
}

/// 8. The limit-operator formula on 100 eventually periodic instances: the
///    limsup of the hat equals the limsup of the glued-witness version
///    sequence exactly, with the zero-limit equivalence.
#[test]
fn criterion_08_limit_operator_formula() {
    let report = run_suite("limitops", &seeds(100), false).unwrap();
    let attained = report
        .groups
        .iter()
        .find(|g| g.group == "limop-attained")
        .unwrap();
    assert_eq!(attained.cases, 100);
    assert_eq!(attained.failures, 0, "version construction always attains");
    assert!(report.groups.iter().any(|g| g.group == "genconv"));
    report_line("08 limit-operator-formula", &report, "");
    assert_passed("08", &report);
}

/// 9. The minimal-limit-operator inequality holds in all 200 gap reports,
///    and the weak limit operator is dominated by the convergence-in-
///    probability one on identical and law-preserving-modified sequences.
#[test]
fn criterion_09_min_limit_operator() {
    let report = run_suite("minlimop", &seeds(200), false).unwrap();
    let holds = report
        .groups
        .iter()
        .find(|g| g.group == "minlimop-holds")
        .unwrap();
    assert_eq!(holds.cases, 200);
    let weak = report
        .groups
        .iter()
        .find(|g| g.group == "weak-le-prob")
        .unwrap();
    assert_eq!(weak.cases, 400, "identical plus version, per instance");
    report_line("09 min-limit-operator", &report, "");
    assert_passed("09", &report);
}

/// 10. Closed-form coreflections on 200 pairs: Ky-Fan at half the smallest
///     positive distance equals the indicator metric, small-λ Prokhorov
///     equals total variation, both matching the coreflect outputs.
#[test]
fn criterion_10_closed_form_coreflections() {
    let report = run_suite("coreflections", &seeds(100), false).unwrap();
    for group in ["kyfan-small-lambda", "prokhorov-small-lambda"] {
        let g = report.groups.iter().find(|g| g.group == group).unwrap();
        assert_eq!(g.cases, 200, "pair count for {group}");
        assert_eq!(g.max_gap, 0.0);
    }
    report_line("10 coreflections", &report, "");
    assert_passed("10", &report);
}

/// 11. Oracle concordance: the candidate-set evaluators agree with the dense
///     1/1024 grid on 200 instances, and the transport solver agrees exactly
///     with full vertex enumeration on 100 instances with ≤ 4 points.
#[test]
fn criterion_11_oracle_concordance() {
    let report = run_suite("oracles", &seeds(100), false).unwrap();
    for group in ["kyfan-grid", "prokhorov-grid"] {
        let g = report.groups.iter().find(|g| g.group == group).unwrap();
        assert_eq!(g.cases, 200, "grid comparisons for {group}");
    }
    let tv = report
        .groups
        .iter()
        .find(|g| g.group == "transport-vertices")
        .unwrap();
    assert_eq!(tv.cases, 100);
    report_line("11 oracle-concordance", &report, "");
    assert_passed("11", &report);
}

/// 12. Determinism: identical seeds yield byte-identical reports across two
///     consecutive runs.
#[test]
fn criterion_12_determinism() {
    let report = run_suite("determinism", &seeds(2), false).unwrap();
    report_line("12 determinism", &report, "");
    assert_passed("12", &report);

    // and directly: two consecutive runs of a suite, byte for byte
    let a = run_suite("minimal", &[3, 4], false).unwrap();
    let b = run_suite("minimal", &[3, 4], false).unwrap();
    for format in [ReportFormat::Table, ReportFormat::Csv, ReportFormat::Json] {
        assert_eq!(emit_report(&a, format), emit_report(&b, format));
    }
}
