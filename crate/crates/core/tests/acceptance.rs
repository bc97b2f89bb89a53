//! Acceptance gate: one test per criterion, each printing a single
//! `PASS`/`FAIL` line. Run with `--nocapture` to see the lines.

use std::time::{Duration, Instant};

use hprime_core::braiding::braid_relations_report;
use hprime_core::classical::{
    bialgebra_checks_report, cobracket, quantum_cobracket, LieBasis, LieTensor,
};
use hprime_core::poisson::{poisson_bracket, ClassPolynomial};
use hprime_core::series::rat;
use hprime_core::suites::{
    eprime_suite, hopf_suite, hprime_suite, lemma31_suite, lemma32_suite, lemma33_suite,
    poisson_report, quasitriangular_suite, run_suites, theorem21_suite, Context, RunConfig, Suite,
};
use hprime_core::{AlgebraElement, InstanceKind, Pbw, VerificationReport};

fn context(instance: InstanceKind, order: usize) -> Context {
    Context::new(RunConfig {
        order,
        instance,
        ..RunConfig::default()
    })
    .expect("valid config")
}

fn verdict(criterion: u32, title: &str, pass: bool, detail: String) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("{tag} criterion {criterion}: {title} ({detail})");
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn summary(report: &VerificationReport) -> String {
    let failed: Vec<String> = report
        .failures()
        .take(5)
        .map(|c| format!("{} [{}]", c.identity, c.inputs))
        .collect();
    if failed.is_empty() {
        format!("{} checks", report.checks.len())
    } else {
        format!(
            "{} checks, failing: {}",
            report.checks.len(),
            failed.join("; ")
        )
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

#[test]
fn criterion_01_hopf_axioms() {
    let ctx = context(InstanceKind::UhSl2, 5);
    let (report, took) = timed(|| hopf_suite(&ctx).unwrap());
    let all_exact = report
        .checks
        .iter()
        .filter(|c| c.required.is_some())
        .all(|c| c.residual_valuation.is_some_and(|v| v.meets(5)));
    let pass = report.overall && all_exact && took < Duration::from_secs(60);
    verdict(
        1,
        "Hopf axioms at N=5, degree ≤ 3",
        pass,
        format!("{}, {took:.2?}", summary(&report)),
    );
}

#[test]
fn criterion_02_quasitriangularity() {
    let ctx = context(InstanceKind::UhSl2, 4);
    let (report, took) = timed(|| quasitriangular_suite(&ctx).unwrap());
    let pass = report.overall && !report.checks.is_empty() && took < Duration::from_secs(120);
    verdict(
        2,
        "quasitriangularity and QYBE at N=4",
        pass,
        format!("{}, {took:.2?}", summary(&report)),
    );
}

#[test]
fn criterion_03_r_matrix_under_subset_coproducts() {
    let mut pass = true;
    let mut details = Vec::new();
    for instance in [InstanceKind::UhSl2, InstanceKind::Trivial] {
        for order in [3, 4] {
            let report = lemma31_suite(&context(instance, order)).unwrap();
            pass &= report.overall && report.checks.len() == 8;
            details.push(format!("{instance} N={order}: {}", summary(&report)));
        }
    }
    verdict(3, "Δ̃_Σ(R) = R_Σ for Σ ⊆ {1,2,3}", pass, details.join("; "));
}

#[test]
fn criterion_04_subset_coproduct_estimates() {
    let ctx = context(InstanceKind::UhSl2, 4);
    let report = lemma32_suite(&ctx).unwrap();
    // 7 subsets with |Σ| > 0, 4 with |Σ| > 1, 1 with |Σ| > 2, per sample
    let per_sample = 7 + 4 + 1;
    let samples = report.checks.len() / per_sample;
    let pass = report.overall && samples > 0 && report.checks.len().is_multiple_of(per_sample);
    verdict(
        4,
        "subset coproduct residuals ≥ i+1 at N=4",
        pass,
        format!("{} certified samples, {}", samples, summary(&report)),
    );
}

#[test]
fn criterion_05_binomial_identities() {
    let ctx = context(InstanceKind::UhSl2, 2);
    let (report, took) = timed(|| lemma33_suite(&ctx).unwrap());
    let pass = report.overall && took < Duration::from_secs(1);
    verdict(
        5,
        "alternating binomial sums, t ≤ 12, s ≤ 8",
        pass,
        format!("{}, {took:.2?}", summary(&report)),
    );
}

#[test]
fn criterion_06_eprime_nullity() {
    let ctx = context(InstanceKind::UhSl2, 2);
    let (report, took) = timed(|| eprime_suite(&ctx).unwrap());
    let counted = report.checks[0]
        .note
        .as_deref()
        .is_some_and(|n| n.starts_with("7737 admissible"));
    let pass = report.overall && counted && took < Duration::from_secs(10);
    verdict(
        6,
        "E' = 0 on admissible tuples, n ≤ 6",
        pass,
        format!("{}, {took:.2?}", summary(&report)),
    );
}

#[test]
fn criterion_07_adjoint_braiding_preserves_hprime() {
    let ctx = context(InstanceKind::UhSl2, 5);
    let (report, took) = timed(|| theorem21_suite(&ctx).unwrap());
    let samples = ctx.samples.hprime_pairs.len();
    let pass = report.overall && report.checks.len() == 4 * samples;
    verdict(
        7,
        "Ad(R^±1) maps (H⊗H)' samples into (H⊗H)' to order 5",
        pass,
        format!("{samples} samples, {}, {took:.2?}", summary(&report)),
    );
}

#[test]
fn criterion_08_classical_bridge() {
    let ctx = context(InstanceKind::UhSl2, 3);
    let r = ctx.r_matrix().unwrap().classical_r().unwrap();
    let mut expected = LieTensor::basis(LieBasis::E).otimes(&LieTensor::basis(LieBasis::F));
    expected = expected.add(
        &LieTensor::basis(LieBasis::H)
            .otimes(&LieTensor::basis(LieBasis::H))
            .scale(&rat(1, 4)),
    );
    let report = bialgebra_checks_report(&r);
    let mut agree = true;
    for b in LieBasis::ALL {
        agree &=
            quantum_cobracket(&ctx.alg, b).unwrap() == cobracket(&LieTensor::basis(b), &r).unwrap();
    }
    let pass = r == expected && report.overall && agree;
    verdict(
        8,
        "classical r solves CYBE, Lie bialgebra identities, δ from Δ - Δ^op",
        pass,
        format!(
            "r = {}; {}; cobracket agreement: {agree}",
            r.to_string().replace('\n', " + "),
            summary(&report)
        ),
    );
}

#[test]
fn criterion_09_poisson_layer() {
    let ctx = context(InstanceKind::UhSl2, 5);
    let poisson = poisson_report(&ctx).unwrap();
    let hprime = hprime_suite(&ctx).unwrap();
    let commutation: Vec<_> = hprime
        .checks
        .iter()
        .filter(|c| c.identity.starts_with("ν([a,b])"))
        .collect();
    let commutes = !commutation.is_empty() && commutation.iter().all(|c| c.pass);
    let n = ctx.alg.order();
    let scaled = |m: Pbw| AlgebraElement::scaled_monomial(m, rat(1, 1), 1, n);
    let ef = poisson_bracket(&ctx.alg, &scaled(Pbw::E), &scaled(Pbw::F)).unwrap();
    let expected_ef = ClassPolynomial::variable(Pbw::H, n - 1)
        .add(&ClassPolynomial::variable(Pbw::new(0, 3, 0), n - 1).scale(&rat(1, 24)));
    let pass = poisson.overall && commutes && ef == expected_ef;
    verdict(
        9,
        "Poisson bracket on H' samples and commutativity mod h",
        pass,
        format!(
            "{}; {} commutator checks; {{x_E, x_F}} = {ef}",
            summary(&poisson),
            commutation.len()
        ),
    );
}

#[test]
fn criterion_10_braid_action() {
    let ctx = context(InstanceKind::UhSl2, 3);
    let r = ctx.r_matrix().unwrap();
    let (report, took) = timed(|| braid_relations_report(r, &ctx.samples.triples, 4));
    let pass = report.overall && report.checks.len() == 2 * ctx.samples.triples.len();
    verdict(
        10,
        "braid relation and group law on 3 strands at N=3",
        pass,
        format!("{}, {took:.2?}", summary(&report)),
    );
}

#[test]
fn criterion_11_deterministic_json() {
    let config = RunConfig {
        order: 3,
        suites: Suite::ALL.to_vec(),
        ..RunConfig::default()
    };
    let first = run_suites(config.clone()).unwrap().to_json();
    let second = run_suites(config).unwrap().to_json();
    let pass = first == second && !first.is_empty();
    verdict(
        11,
        "byte-identical JSON across runs",
        pass,
        format!("{} bytes", first.len()),
    );
}
