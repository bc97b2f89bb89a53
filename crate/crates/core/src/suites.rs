//! Named verification suites, their default samples, and the aggregate report.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::braiding::{braid_relations_report, braided_axioms_report, theorem21_certify};
use crate::classical::{
    bialgebra_checks_report, cobracket, quantum_cobracket, LieBasis, LieTensor,
};
use crate::coalgebra::{mobius_roundtrip, SubsetCoproducts};
use crate::combinatorics::{eprime_sweep, lemma33_check};
use crate::error::AlgebraError;
use crate::hopf::{AlgebraElement, HopfAlgebra, InstanceKind, Pbw};
use crate::poisson::{class_bracket, class_of, poisson_bracket, rescaled_valuation};
use crate::prime::{certify_hprime, certify_hprime_tensor2, lemma32_residuals};
use crate::report::{Check, VerificationReport};
use crate::rmatrix::RMatrix;
use crate::series::Rational;
use crate::subset::SubsetIndex;
use crate::tensor::TensorElement;
use crate::text::parse_samples;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Hopf,
    Quasitriangular,
    Lemma31,
    Lemma32,
    Lemma33,
    Eprime,
    Hprime,
    Theorem21,
    Classical,
    Braid,
}

impl Suite {
    /// Every suite, in execution order.
    pub const ALL: [Suite; 10] = [
        Suite::Hopf,
        Suite::Quasitriangular,
        Suite::Lemma31,
        Suite::Lemma32,
        Suite::Lemma33,
        Suite::Eprime,
        Suite::Hprime,
        Suite::Theorem21,
        Suite::Classical,
        Suite::Braid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hopf => "hopf",
            Suite::Quasitriangular => "quasitriangular",
            Suite::Lemma31 => "lemma31",
            Suite::Lemma32 => "lemma32",
            Suite::Lemma33 => "lemma33",
            Suite::Eprime => "eprime",
            Suite::Hprime => "hprime",
            Suite::Theorem21 => "theorem21",
            Suite::Classical => "classical",
            Suite::Braid => "braid",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                format!("unknown suite `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub order: usize,
    pub instance: InstanceKind,
    pub suites: Vec<Suite>,
    /// Path of the sample file, echoed in reports.
    pub sample_file: Option<String>,
    /// Contents of the sample file.
    #[serde(skip)]
    pub sample_text: Option<String>,
    pub max_rank: usize,
    pub max_n: usize,
    pub max_t: usize,
    /// Include wall-clock seconds per suite in the report.
    #[serde(skip)]
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            order: 5,
            instance: InstanceKind::UhSl2,
            suites: Suite::ALL.to_vec(),
            sample_file: None,
            sample_text: None,
            max_rank: 3,
            max_n: 6,
            max_t: 12,
            timings: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), AlgebraError> {
        if self.order < 2 {
            return Err(AlgebraError::Precondition(
                "order must be at least 2".into(),
            ));
        }
        if self.max_rank < 2 {
            return Err(AlgebraError::Precondition(
                "max rank must be at least 2".into(),
            ));
        }
        if self.max_n > 12 {
            return Err(AlgebraError::Precondition("max n is capped at 12".into()));
        }
        if self.max_t > 60 {
            return Err(AlgebraError::Precondition("max t is capped at 60".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub report: VerificationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JsonReport {
    pub config: RunConfig,
    pub suites: Vec<SuiteOutcome>,
    pub overall: bool,
}

impl JsonReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            out.push_str(&s.report.render_text());
            if let Some(e) = &s.error {
                out.push_str(&format!("error: {e}\n"));
            }
            if let Some(t) = s.seconds {
                out.push_str(&format!("time: {t:.2}s\n"));
            }
            out.push('\n');
        }
        let verdict = if self.overall { "PASS" } else { "FAIL" };
        out.push_str(&format!("overall: {verdict}\n"));
        out
    }
}

type Named<T> = Vec<(String, T)>;

/// Samples used by the suites; user files replace the defaults rank by rank.
#[derive(Clone, Debug)]
pub struct Samples {
    /// Elements of `H` for identities on `H` (PBW degree ≤ 2 by default).
    pub algebra: Named<AlgebraElement>,
    /// Rank-2 inputs for the braided axioms (PBW degree ≤ 2 by default).
    pub pairs: Named<TensorElement>,
    /// Rank-3 inputs for the operator Yang–Baxter equation and braid checks.
    pub triples: Named<TensorElement>,
    /// Elements expected in `H'`.
    pub hprime: Named<AlgebraElement>,
    /// Elements expected in `(H⊗H)'`.
    pub hprime_pairs: Named<TensorElement>,
}

/// `h^{deg m} m`.
fn rescaled(m: Pbw, order: usize) -> AlgebraElement {
    AlgebraElement::scaled_monomial(m, Rational::from_integer(1.into()), m.degree(), order)
}

/// `1, hE, hF, hH, (hE)(hF), (hH)(hE), h^2 E^2`.
pub fn hprime_samples(alg: &HopfAlgebra) -> Named<AlgebraElement> {
    let n = alg.order();
    let (he, hf, hh) = (
        rescaled(Pbw::E, n),
        rescaled(Pbw::F, n),
        rescaled(Pbw::H, n),
    );
    vec![
        ("1".into(), alg.one()),
        ("hE".into(), he.clone()),
        ("hF".into(), hf.clone()),
        ("hH".into(), hh.clone()),
        ("hE*hF".into(), alg.mul(&he, &hf)),
        ("hH*hE".into(), alg.mul(&hh, &he)),
        ("h^2E^2".into(), rescaled(Pbw::new(0, 0, 2), n)),
    ]
}

/// Pure tensors `a⊗b` of the `H'` samples, plus `hH⊗1 + 1⊗hH`.
pub fn hprime_pair_samples(alg: &HopfAlgebra) -> Named<TensorElement> {
    let base = hprime_samples(alg);
    let mut out = Vec::new();
    for (na, a) in &base {
        for (nb, b) in &base {
            out.push((format!("{na} ⊗ {nb}"), TensorElement::pure(&[a, b])));
        }
    }
    let hh = rescaled(Pbw::H, alg.order());
    let one = alg.one();
    out.push((
        "hH ⊗ 1 + 1 ⊗ hH".into(),
        TensorElement::pure(&[&hh, &one]).add(&TensorElement::pure(&[&one, &hh])),
    ));
    out
}

fn monomials(max_degree: usize) -> Vec<Pbw> {
    Pbw::up_to_degree(max_degree)
}

pub fn default_samples(alg: &HopfAlgebra) -> Samples {
    let n = alg.order();
    let algebra = monomials(2)
        .into_iter()
        .map(|m| (m.short(), AlgebraElement::generator(m, n)))
        .collect();
    let mut pairs = Vec::new();
    for a in monomials(2) {
        for b in monomials(2) {
            if a.degree() + b.degree() <= 2 {
                let t = TensorElement::monomial(&[a, b], crate::series::ScalarSeries::one(n));
                pairs.push((format!("{} ⊗ {}", a.short(), b.short()), t));
            }
        }
    }
    let g = |m: Pbw| AlgebraElement::generator(m, n);
    let ef = alg.mul(&alg.e(), &alg.f());
    let triple = |a: &AlgebraElement, b: &AlgebraElement, c: &AlgebraElement| {
        TensorElement::pure(&[a, b, c])
    };
    let triples = vec![
        (
            "E ⊗ F ⊗ H".into(),
            triple(&g(Pbw::E), &g(Pbw::F), &g(Pbw::H)),
        ),
        (
            "F ⊗ H ⊗ E".into(),
            triple(&g(Pbw::F), &g(Pbw::H), &g(Pbw::E)),
        ),
        (
            "H ⊗ E ⊗ F".into(),
            triple(&g(Pbw::H), &g(Pbw::E), &g(Pbw::F)),
        ),
        (
            "E ⊗ 1 ⊗ F".into(),
            triple(&g(Pbw::E), &alg.one(), &g(Pbw::F)),
        ),
        ("E·F ⊗ E ⊗ 1".into(), triple(&ef, &g(Pbw::E), &alg.one())),
    ];
    Samples {
        algebra,
        pairs,
        triples,
        hprime: hprime_samples(alg),
        hprime_pairs: hprime_pair_samples(alg),
    }
}

/// Defaults, overridden by the sample file where it provides tensors of the
/// matching rank. Rank-1 and rank-2 samples from a file serve both the plain
/// and the `H'` checks.
pub fn load_samples(alg: &HopfAlgebra, config: &RunConfig) -> Result<Samples, AlgebraError> {
    let mut samples = default_samples(alg);
    let Some(text) = &config.sample_text else {
        return Ok(samples);
    };
    let parsed = parse_samples(text, alg.order())?;
    let mut rank1 = Vec::new();
    let mut rank2 = Vec::new();
    let mut rank3 = Vec::new();
    for (name, t) in parsed {
        match t.rank() {
            1 => rank1.push((name, t.to_algebra()?)),
            2 => rank2.push((name, t)),
            3 => rank3.push((name, t)),
            r => {
                return Err(AlgebraError::Parse(format!(
                    "sample `{name}` has rank {r}; only ranks 1 to 3 are used"
                )))
            }
        }
    }
    if !rank1.is_empty() {
        samples.algebra = rank1.clone();
        samples.hprime = rank1;
    }
    if !rank2.is_empty() {
        samples.pairs = rank2.clone();
        samples.hprime_pairs = rank2;
    }
    if !rank3.is_empty() {
        samples.triples = rank3;
    }
    Ok(samples)
}

/// Shared state for one run: the algebra, its R-matrix and the samples.
pub struct Context {
    pub config: RunConfig,
    pub alg: Arc<HopfAlgebra>,
    pub samples: Samples,
    r: OnceLock<Result<RMatrix, AlgebraError>>,
}

impl Context {
    pub fn new(config: RunConfig) -> Result<Self, AlgebraError> {
        config.validate()?;
        let alg = HopfAlgebra::new(config.instance, config.order);
        let samples = load_samples(&alg, &config)?;
        Ok(Context {
            config,
            alg,
            samples,
            r: OnceLock::new(),
        })
    }

    pub fn r_matrix(&self) -> Result<&RMatrix, AlgebraError> {
        self.r
            .get_or_init(|| RMatrix::build(&self.alg))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn order(&self) -> usize {
        self.config.order
    }
}

fn check_tensor(
    identity: &str,
    inputs: String,
    residual: &TensorElement,
    required: usize,
) -> Check {
    Check::valuation(identity, inputs, residual.valuation(), required)
}

pub fn hopf_suite(ctx: &Context) -> Result<VerificationReport, AlgebraError> {
    let alg = &ctx.alg;
    let n = ctx.order();
    let mut report = VerificationReport::new("hopf");
    for m in monomials(3) {
        let x = AlgebraElement::generator(m, n);
        let t = TensorElement::from_algebra(&x);
        let inputs = format!("a = {}", m.short());
        let d = alg.coproduct(&x);
        let left = alg.coproduct_on_leg(&d, 0);
        let right = alg.coproduct_on_leg(&d, 1);
        report.push(check_tensor(
            "(Δ⊗Id)Δ = (Id⊗Δ)Δ",
            inputs.clone(),
            &left.sub(&right),
            n,
        ));
        report.push(check_tensor(
            "(ε⊗Id)Δ = Id",
            inputs.clone(),
            &alg.counit_on_leg(&d, 0).sub(&t),
            n,
        ));
        report.push(check_tensor(
            "(Id⊗ε)Δ = Id",
            inputs.clone(),
            &alg.counit_on_leg(&d, 1).sub(&t),
            n,
        ));
        let eps = alg.one().scale(&x.counit());
        let s_left = alg.multiply_legs(&alg.antipode_on_leg(&d, 0))?;
        let s_right = alg.multiply_legs(&alg.antipode_on_leg(&d, 1))?;
        report.push(Check::valuation(
            "m(S⊗Id)Δ = ε",
            inputs.clone(),
            s_left.sub(&eps).valuation(),
            n,
        ));
        report.push(Check::valuation(
            "m(Id⊗S)Δ = ε",
            inputs,
            s_right.sub(&eps).valuation(),
            n,
        ));
    }
    let gens = [Pbw::E, Pbw::F, Pbw::H];
    for a in gens {
        for b in gens {
            let (x, y) = (alg.gen(a), alg.gen(b));
            let inputs = format!("x = {}, y = {}", a.short(), b.short());
            let lhs = alg.coproduct(&alg.mul(&x, &y));
            let rhs = alg.tensor_mul(&alg.coproduct(&x), &alg.coproduct(&y));
            report.push(check_tensor(
                "Δ(xy) = Δ(x)Δ(y)",
                inputs.clone(),
                &lhs.sub(&rhs),
                n,
            ));
            let lhs = alg.antipode(&alg.mul(&x, &y));
            let rhs = alg.mul(&alg.antipode(&y), &alg.antipode(&x));
            report.push(Check::valuation(
                "S(xy) = S(y)S(x)",
                inputs,
                lhs.sub(&rhs).valuation(),
                n,
            ));
        }
    }
    let ef = alg.mul(&alg.e(), &alg.f());
    let generators = [
        ("1", alg.one()),
        ("E", alg.e()),
        ("F", alg.f()),
        ("H", alg.h()),
        ("E·F", ef),
    ];
    for (name, x) in &generators {
        let t = TensorElement::from_algebra(x);
        for sigma in SubsetIndex::all(ctx.config.max_rank) {
            report.extend(mobius_roundtrip(&**alg, &t, &sigma, name));
        }
    }
    Ok(report)
}

pub fn quasitriangular_suite(ctx: &Context) -> Result<VerificationReport, AlgebraError> {
    let r = ctx.r_matrix()?;
    Ok(r.quasitriangularity_report(&ctx.samples.algebra))
}

pub fn lemma31_suite(ctx: &Context) -> Result<VerificationReport, AlgebraError> {
    let r = ctx.r_matrix()?;
    let mut report = VerificationReport::new("lemma31");
    for sigma in SubsetIndex::all(ctx.config.max_rank) {
        let v = r.lemma31_residual(&sigma)?;
        report.push(Check::valuation(
            "Δ̃_Σ(R) = R_Σ",
            format!("Σ = {sigma}, n = {}", sigma.ambient()),
            v,
            ctx.order(),
        ));
    }
    Ok(report)
}

pub fn lemma32_suite(ctx: &Context) -> Result<VerificationReport, AlgebraError> {
    let alg = &ctx.alg;
    let ambient = ctx.config.max_rank;
    let depth = ambient.min(ctx.order());
    let max_i = (ambient - 1).min(2);
    let mut report = VerificationReport::new("lemma32");
    let results: Vec<_> = ctx
        .samples
        .hprime_pairs
        .par_iter()
        .map(|(name, x)| {
            let cert = certify_hprime_tensor2(alg, x, depth, name)?;
            if !cert.covers(depth) {
                return Ok((name, None));
            }
            Ok((
                name,
                Some(lemma32_residuals(alg, x, &cert, ambient, max_i)?),
            ))
        })
        .collect::<Result<_, AlgebraError>>()?;
    for (name, residuals) in results {
        match residuals {
            None => report.note(format!("{name} is not certified to order {depth}; skipped")),
            Some(list) => {
                for (sigma, i, v) in list {
                    report.push(Check::valuation(
                        "Δ̃_Σ(x) ≡ Σ_{|Σ'|≤i} (-1)^{i-|Σ'|} C Δ̃_Σ'(x)",
                        format!("x = {name}, Σ = {sigma}, i = {i}"),
                        v,
                        i + 1,
                    ));
                }
            }
        }
    }
    Ok(report)
}

pub fn lemma33_suite(ctx: &Context) -> Result<VerificationReport, AlgebraError> {
    let max_t = ctx.config.max_t;
    let max_s = 8;
    let mut report = VerificationReport::new("lemma33");
    let mut count = 0;
    let mut fail_a = Vec::new();
    let mut fail_b = Vec::new();
    for t in 1..=max_t {
        for r in 0..t {
            for s in 0..=max_s {
                let o = lemma33_check(r, s, t)?;
                count += 1;
                let expected_a = if r % 2 == 0 { -1 } else { 1 };
                if s == 0 && o.sum_a != expected_a {
                    fail_a.push(format!("(r={r}, t={t}): {}", o.sum_a));
                }
                if o.sum_b != 0 {
                    fail_b.push(format!("(r={r}, s={s}, t={t}): {}", o.sum_b));
                }
            }
        }
    }
    let pairs = max_t * (max_t + 1) / 2;
    let mut a = Check::exact(
        "Σ_d (-1)^d C^r_{d-1} C^d_t = -(-1)^r",
        format!("0 ≤ r < t ≤ {max_t}"),
        fail_a.is_empty(),
    )
    .with_note(format!("{pairs} pairs checked"));
    if !fail_a.is_empty() {
        a = a.with_note(format!("failures: {}", fail_a.join("; ")));
    }
    report.push(a);
    let mut b = Check::exact(
        "Σ_d (-1)^d C^r_{d+s} C^d_t = 0",
        format!("0 ≤ r < t ≤ {max_t}, 0 ≤ s ≤ {max_s}"),
        fail_b.is_empty(),
    )
    .with_note(format!("{count} triples checked"));
    if !fail_b.is_empty() {
        b = b.with_note(format!("failures: {}", fail_b.join("; ")));
    }
    report.push(b);
    Ok(report)
}

pub fn eprime_suite(ctx: &Context) -> Result<VerificationReport, AlgebraError> {
    let summary = eprime_sweep(ctx.config.max_n);
    let mut report = VerificationReport::new("eprime");
    let show = |list: &[crate::combinatorics::EPrimeTuple]| {
        list.iter()
            .take(10)
            .map(|t| {
                format!(
                    "n={} j={} Σ'={:?} Σ''={:?} value={}",
                    t.n, t.j, t.sigma1, t.sigma2, t.value
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    };
    let mut zero = Check::exact(
        "E'(Σ', Σ'') = 0",
        format!(
            "n ≤ {}, j < n, |Σ'| ≤ j, |Σ'∪Σ''| - |Σ'| ≤ n - 1 - j",
            summary.max_n
        ),
        summary.failures.is_empty(),
    )
    .with_note(format!(
        "{} admissible of {} tuples; cases I/II/III: {}/{}/{}",
        summary.admissible,
        summary.tuples,
        summary.case_counts[0],
        summary.case_counts[1],
        summary.case_counts[2]
    ));
    if !summary.failures.is_empty() {
        zero = zero.with_note(format!("failures: {}", show(&summary.failures)));
    }
    report.push(zero);
    let mut closed = Check::exact(
        "grouped closed forms = enumeration",
        format!("all {} tuples", summary.tuples),
        summary.closed_form_mismatches.is_empty(),
    );
    if !summary.closed_form_mismatches.is_empty() {
        closed = closed.with_note(format!(
            "mismatches: {}",
            show(&summary.closed_form_mismatches)
        ));
    }
    report.push(closed);
    if !summary.flagged_outside_range.is_empty() {
        report.note(format!(
            "{} tuples with |Σ'∪Σ''| ≤ n - 1 but outside the admissible range have nonzero E' (e.g. {})",
            summary.flagged_outside_range.len(),
            show(&summary.flagged_outside_range[..1])
        ));
    }
    Ok(report)
}

pub fn hprime_suite(ctx: &Context) -> Result<VerificationReport, AlgebraError> {
    let alg = &ctx.alg;
    let n = ctx.order();
    let mut report = VerificationReport::new("hprime");
    let samples = &ctx.samples.hprime;
    for (name, x) in samples {
        let cert = certify_hprime(alg, x, n, name)?;
        report.push(
            Check::exact("x ∈ H' to order N", format!("x = {name}"), cert.covers(n))
                .with_note(format!("certified to order {}", cert.certified_order)),
        );
        let reduced = x.sub(&alg.one().scale(&x.counit()));
        report.push(Check::valuation(
            "x - ε(x)1 ∈ hH",
            format!("x = {name}"),
            reduced.valuation(),
            1,
        ));
    }
    let pairs: Vec<(usize, usize)> = (0..samples.len())
        .flat_map(|i| (i..samples.len()).map(move |j| (i, j)))
        .collect();
    let products: Vec<_> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let p = alg.mul(&samples[i].1, &samples[j].1);
            certify_hprime(alg, &p, n, "product").map(|c| (i, j, c.covers(n)))
        })
        .collect::<Result<_, _>>()?;
    for (i, j, ok) in products {
        report.push(Check::exact(
            "ab ∈ H' to order N",
            format!("a = {}, b = {}", samples[i].0, samples[j].0),
            ok,
        ));
    }
    for &(i, j) in &pairs {
        let (a, b) = (&samples[i].1, &samples[j].1);
        let c = alg.commutator(a, b);
        let inputs = format!("a = {}, b = {}", samples[i].0, samples[j].0);
        let check = match (
            rescaled_valuation(a),
            rescaled_valuation(b),
            rescaled_valuation(&c),
        ) {
            (_, _, None) | (None, _, _) | (_, None, _) => {
                Check::exact("ν([a,b]) ≥ ν(a) + ν(b) + 1", inputs, true)
            }
            (Some(va), Some(vb), Some(vc)) => {
                Check::exact("ν([a,b]) ≥ ν(a) + ν(b) + 1", inputs, vc > va + vb)
                    .with_note(format!("ν(a) = {va}, ν(b) = {vb}, ν([a,b]) = {vc}"))
            }
        };
        report.push(check);
    }
    // (H⊗H)' membership of a⊗b against membership of the legs
    let depth = n.min(ctx.config.max_rank);
    let mut legs: Vec<(String, AlgebraElement)> = samples.iter().take(4).cloned().collect();
    legs.push(("E".into(), alg.e()));
    legs.push(("H".into(), alg.h()));
    let leg_certs: Vec<bool> = legs
        .iter()
        .map(|(name, x)| certify_hprime(alg, x, depth, name).map(|c| c.covers(depth)))
        .collect::<Result<_, _>>()?;
    for (i, (na, a)) in legs.iter().enumerate() {
        for (j, (nb, b)) in legs.iter().enumerate() {
            let t = TensorElement::pure(&[a, b]);
            let cert = certify_hprime_tensor2(alg, &t, depth, "pair")?;
            let expected = leg_certs[i] && leg_certs[j];
            report.push(
                Check::exact(
                    "a⊗b ∈ (H⊗H)' ⇔ a, b ∈ H'",
                    format!("a = {na}, b = {nb}, to order {depth}"),
                    cert.covers(depth) == expected,
                )
                .with_note(format!("member: {}", cert.covers(depth))),
            );
        }
    }
    Ok(report)
}

pub fn theorem21_suite(ctx: &Context) -> Result<VerificationReport, AlgebraError> {
    let r = ctx.r_matrix()?;
    let n = ctx.order();
    let mut report = VerificationReport::new("theorem21");
    let results: Vec<_> = ctx
        .samples
        .hprime_pairs
        .par_iter()
        .map(|(name, x)| (name, theorem21_certify(r, x, n, name)))
        .collect();
    for (name, res) in results {
        let inputs = format!("x = {name}");
        match res {
            Ok(c) => {
                report.push(
                    Check::exact("x ∈ (H⊗H)'", inputs.clone(), c.input.covers(n))
                        .with_note(format!("certified to order {}", c.input.certified_order)),
                );
                report.push(
                    Check::exact("R x R^-1 ∈ (H⊗H)'", inputs.clone(), c.forward.covers(n))
                        .with_note(format!("certified to order {}", c.forward.certified_order)),
                );
                report.push(
                    Check::exact("R^-1 x R ∈ (H⊗H)'", inputs.clone(), c.inverse.covers(n))
                        .with_note(format!("certified to order {}", c.inverse.certified_order)),
                );
                report.push(Check::exact(
                    "Ad(R^-1)∘Ad(R) = Id = Ad(R)∘Ad(R^-1)",
                    inputs,
                    c.round_trip,
                ));
            }
            Err(e) => report.push(Check::failed("R x R^-1 ∈ (H⊗H)'", inputs, e.to_string())),
        }
    }
    report.note(format!(
        "certified to order {n} on {} samples",
        ctx.samples.hprime_pairs.len()
    ));
    Ok(report)
}

/// Antisymmetry, Jacobi and Leibniz for the bracket on the `H'` samples.
pub fn poisson_report(ctx: &Context) -> Result<VerificationReport, AlgebraError> {
    let mut report = VerificationReport::new("poisson");
    let alg = &ctx.alg;
    let samples = &ctx.samples.hprime;
    let k = samples.len();
    let bracket = |i: usize, j: usize| poisson_bracket(alg, &samples[i].1, &samples[j].1);
    let mut brackets = vec![vec![None; k]; k];
    for (i, row) in brackets.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = Some(bracket(i, j)?);
        }
    }
    let br = |i: usize, j: usize| brackets[i][j].as_ref().expect("filled");
    for i in 0..k {
        for j in i..k {
            report.push(Check::exact(
                "{a,b} + {b,a} = 0",
                format!("a = {}, b = {}", samples[i].0, samples[j].0),
                br(i, j).add(br(j, i)).is_zero(),
            ));
        }
    }
    let classes: Vec<_> = samples
        .iter()
        .map(|(_, x)| class_of(x))
        .collect::<Result<_, _>>()?;
    for a in 0..k {
        for b in (a + 1)..k {
            for c in (b + 1)..k {
                let t1 = class_bracket(alg, &classes[a], br(b, c))?;
                let t2 = class_bracket(alg, &classes[b], br(c, a))?;
                let t3 = class_bracket(alg, &classes[c], br(a, b))?;
                let sum = t1.add(&t2).add(&t3);
                report.push(
                    Check::exact(
                        "{a,{b,c}} + {b,{c,a}} + {c,{a,b}} = 0",
                        format!(
                            "a = {}, b = {}, c = {}",
                            samples[a].0, samples[b].0, samples[c].0
                        ),
                        sum.is_zero(),
                    )
                    .with_note(format!("known below degree {}", sum.precision())),
                );
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            for c in b..k {
                let bc = alg.mul(&samples[b].1, &samples[c].1);
                let lhs = poisson_bracket(alg, &samples[a].1, &bc)?;
                let rhs = br(a, b).mul(&classes[c]).add(&classes[b].mul(br(a, c)));
                report.push(Check::exact(
                    "{a,bc} = {a,b}c + b{a,c}",
                    format!(
                        "a = {}, b = {}, c = {}",
                        samples[a].0, samples[b].0, samples[c].0
                    ),
                    lhs.agrees_with(&rhs),
                ));
            }
        }
    }
    Ok(report)
}

pub fn classical_suite(ctx: &Context) -> Result<VerificationReport, AlgebraError> {
    let r = ctx.r_matrix()?;
    let cr = r.classical_r()?;
    let mut report = bialgebra_checks_report(&cr);
    report.note(format!("r = {}", cr.to_string().replace('\n', " + ")));
    for b in LieBasis::ALL {
        let quantum = quantum_cobracket(&ctx.alg, b)?;
        let classical = cobracket(&LieTensor::basis(b), &cr)?;
        report.push(Check::exact(
            "((Δ - Δ^op)/h)|_{h=0} = δ",
            format!("x = {}", b.symbol()),
            quantum == classical,
        ));
    }
    report.extend(poisson_report(ctx)?);
    Ok(report)
}

pub fn braid_suite(ctx: &Context) -> Result<VerificationReport, AlgebraError> {
    let r = ctx.r_matrix()?;
    let s = &ctx.samples;
    let mut report = braided_axioms_report(r, &s.algebra, &s.pairs, &s.triples);
    report.suite = "braid".into();
    report.extend(braid_relations_report(r, &s.triples, 4));
    Ok(report)
}

pub fn run_suite(ctx: &Context, suite: Suite) -> Result<VerificationReport, AlgebraError> {
    match suite {
        Suite::Hopf => hopf_suite(ctx),
        Suite::Quasitriangular => quasitriangular_suite(ctx),
        Suite::Lemma31 => lemma31_suite(ctx),
        Suite::Lemma32 => lemma32_suite(ctx),
        Suite::Lemma33 => lemma33_suite(ctx),
        Suite::Eprime => eprime_suite(ctx),
        Suite::Hprime => hprime_suite(ctx),
        Suite::Theorem21 => theorem21_suite(ctx),
        Suite::Classical => classical_suite(ctx),
        Suite::Braid => braid_suite(ctx),
    }
}

/// Run the selected suites in their fixed order. A suite that errors is
/// reported as failed without stopping the others.
pub fn run_suites(config: RunConfig) -> Result<JsonReport, AlgebraError> {
    let ctx = Context::new(config)?;
    let mut selected = ctx.config.suites.clone();
    selected.sort();
    selected.dedup();
    let outcomes: Vec<SuiteOutcome> = selected
        .par_iter()
        .map(|&suite| {
            let start = Instant::now();
            let result = run_suite(&ctx, suite);
            let seconds = ctx.config.timings.then(|| start.elapsed().as_secs_f64());
            match result {
                Ok(report) => SuiteOutcome {
                    suite,
                    report,
                    error: None,
                    seconds,
                },
                Err(e) => {
                    let mut report = VerificationReport::new(suite.name());
                    report.push(Check::failed("suite ran", "", e.to_string()));
                    SuiteOutcome {
                        suite,
                        report,
                        error: Some(e.to_string()),
                        seconds,
                    }
                }
            }
        })
        .collect();
    let overall = outcomes.iter().all(|o| o.report.overall);
    Ok(JsonReport {
        config: ctx.config,
        suites: outcomes,
        overall,
    })
}

/// What `dump_element` renders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DumpTarget {
    R,
    RInverse,
    /// `δ_n` of a named `H'` sample.
    Delta {
        n: usize,
        sample: String,
    },
}

/// Canonical rendering of the target modulo `h^N`, followed by one
/// `legs : series` line per term.
pub fn dump_element(config: &RunConfig, target: &DumpTarget) -> Result<String, AlgebraError> {
    let ctx = Context::new(config.clone())?;
    let t = match target {
        DumpTarget::R => ctx.r_matrix()?.value().clone(),
        DumpTarget::RInverse => ctx.r_matrix()?.inverse().clone(),
        DumpTarget::Delta { n, sample } => {
            let (_, x) = ctx
                .samples
                .hprime
                .iter()
                .find(|(name, _)| name == sample)
                .ok_or_else(|| {
                    let names: Vec<&str> =
                        ctx.samples.hprime.iter().map(|(n, _)| n.as_str()).collect();
                    AlgebraError::Parse(format!(
                        "unknown sample `{sample}` (known: {})",
                        names.join(", ")
                    ))
                })?;
            if *n == 0 {
                return Err(AlgebraError::Precondition("δ_n needs n ≥ 1".into()));
            }
            SubsetCoproducts::new(&*ctx.alg, &TensorElement::from_algebra(x), *n)?.delta_n(*n)?
        }
    };
    Ok(format!(
        "{}\n\n{}",
        crate::text::pretty_tensor(&t),
        t.canonical_text()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn config_validation() {
        let bad = RunConfig {
            order: 1,
            ..RunConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = RunConfig {
            max_rank: 1,
            ..RunConfig::default()
        };
        assert!(bad.validate().is_err());
        assert!(RunConfig::default().validate().is_ok());
    }

    #[test]
    fn sample_counts() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 3);
        let s = default_samples(&alg);
        assert_eq!(s.hprime.len(), 7);
        assert_eq!(s.hprime_pairs.len(), 50);
        assert_eq!(s.algebra.len(), 10);
        assert_eq!(s.pairs.len(), 28);
    }

    #[test]
    fn dump_trivial_r() {
        let config = RunConfig {
            instance: InstanceKind::Trivial,
            order: 3,
            ..RunConfig::default()
        };
        let text = dump_element(&config, &DumpTarget::R).unwrap();
        assert!(text.starts_with("1⊗1\n"));
    }
}
