//! The braiding `𝔉 = Ad(R)` on `H⊗H`: braided-Hopf axioms, stabilization of
//! `(H⊗H)'`, and the braid group action on `H^{⊗n}` through
//! `β_i = σ_{i,i+1} ∘ Ad(R_{i,i+1})`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::AlgebraError;
use crate::hopf::AlgebraElement;
use crate::prime::{certify_hprime_tensor2, MembershipCertificate};
use crate::report::{Check, VerificationReport};
use crate::rmatrix::RMatrix;
use crate::tensor::TensorElement;

/// A word in the braid generators: `+i` is `σ_i`, `-i` is `σ_i^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidWord {
    n_strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(n_strands: usize, letters: Vec<i32>) -> Result<Self, AlgebraError> {
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            if l == 0 || i >= n_strands {
                return Err(AlgebraError::Parse(format!(
                    "braid letter {l} out of range for {n_strands} strands"
                )));
            }
        }
        Ok(BraidWord { n_strands, letters })
    }

    /// Parse a comma-separated list such as `1,2,-1`; the empty string is the
    /// identity braid.
    pub fn parse(n_strands: usize, text: &str) -> Result<Self, AlgebraError> {
        let letters = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<i32>()
                    .map_err(|_| AlgebraError::Parse(format!("bad braid letter `{s}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n_strands, letters)
    }

    pub fn n_strands(&self) -> usize {
        self.n_strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// The inverse word: reversed, with every letter negated.
    pub fn inverse(&self) -> Self {
        BraidWord {
            n_strands: self.n_strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Concatenation; `self` acts first.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.n_strands, other.n_strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord {
            n_strands: self.n_strands,
            letters,
        }
    }

    /// All words of length at most `max_len`.
    pub fn all_up_to(n_strands: usize, max_len: usize) -> Vec<Self> {
        let gens: Vec<i32> = (1..n_strands as i32).flat_map(|i| [i, -i]).collect();
        let mut out = vec![BraidWord {
            n_strands,
            letters: Vec::new(),
        }];
        let mut frontier = out.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for &g in &gens {
                    let mut letters = w.letters.clone();
                    letters.push(g);
                    next.push(BraidWord { n_strands, letters });
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for BraidWord {
    type Err = AlgebraError;
    /// `"<strands>:<letters>"`, e.g. `3:1,2,-1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, w) = s
            .split_once(':')
            .ok_or_else(|| AlgebraError::Parse(format!("expected `strands:letters`, got `{s}`")))?;
        let n = n
            .trim()
            .parse()
            .map_err(|_| AlgebraError::Parse(format!("bad strand count `{n}`")))?;
        Self::parse(n, w)
    }
}

/// `Ad(R_{i,j})` on a rank-`n` tensor (1-based legs).
pub fn ad_legs(
    r: &RMatrix,
    i: usize,
    j: usize,
    x: &TensorElement,
) -> Result<TensorElement, AlgebraError> {
    let alg = r.algebra();
    let rank = x.rank();
    let left = alg.try_tensor_mul(&r.leg(i, j, rank)?, x)?;
    alg.try_tensor_mul(&left, &r.leg_inverse(i, j, rank)?)
}

fn ad_inverse_legs(
    r: &RMatrix,
    i: usize,
    j: usize,
    x: &TensorElement,
) -> Result<TensorElement, AlgebraError> {
    let alg = r.algebra();
    let rank = x.rank();
    let left = alg.try_tensor_mul(&r.leg_inverse(i, j, rank)?, x)?;
    alg.try_tensor_mul(&left, &r.leg(i, j, rank)?)
}

/// `β_i(y) = σ_{i,i+1}(R_{i,i+1} y R_{i,i+1}^-1)`.
pub fn beta(r: &RMatrix, i: usize, y: &TensorElement) -> Result<TensorElement, AlgebraError> {
    Ok(ad_legs(r, i, i + 1, y)?.swap_legs(i - 1, i))
}

/// `β_i^{-1}(z) = R_{i,i+1}^-1 σ_{i,i+1}(z) R_{i,i+1}`.
pub fn beta_inverse(
    r: &RMatrix,
    i: usize,
    z: &TensorElement,
) -> Result<TensorElement, AlgebraError> {
    ad_inverse_legs(r, i, i + 1, &z.swap_legs(i - 1, i))
}

/// Apply the letters of `w` from left to right.
pub fn braid_act(
    r: &RMatrix,
    w: &BraidWord,
    x: &TensorElement,
) -> Result<TensorElement, AlgebraError> {
    if x.rank() != w.n_strands() {
        return Err(AlgebraError::RankMismatch(w.n_strands(), x.rank()));
    }
    let mut y = x.clone();
    for &l in w.letters() {
        let i = l.unsigned_abs() as usize;
        y = if l > 0 {
            beta(r, i, &y)?
        } else {
            beta_inverse(r, i, &y)?
        };
    }
    Ok(y)
}

fn push_result(
    report: &mut VerificationReport,
    identity: &str,
    inputs: String,
    required: usize,
    residual: Result<TensorElement, AlgebraError>,
) {
    match residual {
        Ok(t) => report.push(Check::valuation(identity, inputs, t.valuation(), required)),
        Err(e) => report.push(Check::failed(identity, inputs, e.to_string())),
    }
}

/// Evaluate `𝔉∘Δ = Δ^op` on algebra samples, both hexagon identities on
/// rank-2 samples (whose coproducts are rank 3), the operator Yang–Baxter
/// equation on rank-3 samples, multiplicativity of `𝔉`, and the doubled
/// form `Ad(R13 R24)∘Δ̃ = Δ̃^op`.
pub fn braided_axioms_report(
    r: &RMatrix,
    algebra_samples: &[(String, AlgebraElement)],
    pair_samples: &[(String, TensorElement)],
    triple_samples: &[(String, TensorElement)],
) -> VerificationReport {
    let alg = r.algebra();
    let n = r.order();
    let mut report = VerificationReport::new("braided");
    for (name, a) in algebra_samples {
        let d = alg.coproduct(a);
        push_result(
            &mut report,
            "𝔉(Δ(a)) = Δ^op(a)",
            format!("a = {name}"),
            n,
            r.ad(&d).map(|t| t.sub(&d.flip())),
        );
    }
    let r13_r24 = alg.tensor_mul(
        &r.leg(1, 3, 4).expect("valid legs"),
        &r.leg(2, 4, 4).expect("valid legs"),
    );
    let r13_r24_inv = alg.tensor_mul(
        &r.leg_inverse(1, 3, 4).expect("valid legs"),
        &r.leg_inverse(2, 4, 4).expect("valid legs"),
    );
    let mut identity_everywhere = true;
    let mut differs_from_flip = None;
    for (name, x) in pair_samples {
        let inputs = format!("x = {name}");
        let fx = match r.ad(x) {
            Ok(v) => v,
            Err(e) => {
                report.push(Check::failed("𝔉 defined", inputs, e.to_string()));
                continue;
            }
        };
        identity_everywhere &= fx == *x;
        if differs_from_flip.is_none() && fx != x.flip() {
            differs_from_flip = Some(name.clone());
        }
        // (Δ⊗Id)∘𝔉 = Ad(R13) Ad(R23) (Δ⊗Id)
        let lhs = alg.coproduct_on_leg(&fx, 0);
        let rhs = alg.coproduct_on_leg(x, 0);
        push_result(
            &mut report,
            "(Δ⊗Id)∘𝔉 = 𝔉13∘𝔉23∘(Δ⊗Id)",
            inputs.clone(),
            n,
            ad_legs(r, 2, 3, &rhs)
                .and_then(|t| ad_legs(r, 1, 3, &t))
                .map(|t| lhs.sub(&t)),
        );
        // (Id⊗Δ)∘𝔉 = Ad(R13) Ad(R12) (Id⊗Δ)
        let lhs = alg.coproduct_on_leg(&fx, 1);
        let rhs = alg.coproduct_on_leg(x, 1);
        push_result(
            &mut report,
            "(Id⊗Δ)∘𝔉 = 𝔉13∘𝔉12∘(Id⊗Δ)",
            inputs.clone(),
            n,
            ad_legs(r, 1, 2, &rhs)
                .and_then(|t| ad_legs(r, 1, 3, &t))
                .map(|t| lhs.sub(&t)),
        );
        // doubled braiding on Δ̃
        let dt = crate::coalgebra::tilde_coproduct(alg, x).expect("rank 2");
        let conj = alg.tensor_mul(&alg.tensor_mul(&r13_r24, &dt), &r13_r24_inv);
        push_result(
            &mut report,
            "Ad(R13·R24)∘Δ̃ = Δ̃^op",
            inputs.clone(),
            n,
            Ok(conj.sub(&dt.permuted(&[2, 3, 0, 1]))),
        );
    }
    for (i, (na, a)) in pair_samples.iter().enumerate() {
        let (nb, b) = &pair_samples[(i + 1) % pair_samples.len()];
        let prod = alg.tensor_mul(a, b);
        let residual = (|| {
            let lhs = r.ad(&prod)?;
            let rhs = alg.tensor_mul(&r.ad(a)?, &r.ad(b)?);
            Ok(lhs.sub(&rhs))
        })();
        push_result(
            &mut report,
            "𝔉(xy) = 𝔉(x)𝔉(y)",
            format!("x = {na}, y = {nb}"),
            n,
            residual,
        );
    }
    for (name, y) in triple_samples {
        let residual = (|| {
            let lhs = ad_legs(r, 1, 2, &ad_legs(r, 1, 3, &ad_legs(r, 2, 3, y)?)?)?;
            let rhs = ad_legs(r, 2, 3, &ad_legs(r, 1, 3, &ad_legs(r, 1, 2, y)?)?)?;
            Ok(lhs.sub(&rhs))
        })();
        push_result(
            &mut report,
            "𝔉12∘𝔉13∘𝔉23 = 𝔉23∘𝔉13∘𝔉12",
            format!("y = {name}"),
            n,
            residual,
        );
    }
    if identity_everywhere {
        report.note("𝔉 acts as the identity on every sample (R = 1⊗1); it is not the flip");
    }
    match differs_from_flip {
        Some(name) => report.note(format!("𝔉 differs from the flip σ, witnessed on {name}")),
        None => report.note("𝔉 agreed with the flip σ on every sample"),
    }
    report
}

/// Braid relations and group law on rank-3 samples.
pub fn braid_relations_report(
    r: &RMatrix,
    triple_samples: &[(String, TensorElement)],
    max_word_len: usize,
) -> VerificationReport {
    let n = r.order();
    let mut report = VerificationReport::new("braid");
    let w = |s: &str| BraidWord::parse(3, s).expect("valid word");
    for (name, y) in triple_samples {
        let residual = (|| {
            let lhs = braid_act(r, &w("1,2,1"), y)?;
            let rhs = braid_act(r, &w("2,1,2"), y)?;
            Ok(lhs.sub(&rhs))
        })();
        push_result(
            &mut report,
            "β1β2β1 = β2β1β2",
            format!("y = {name}"),
            n,
            residual,
        );
    }
    let words = BraidWord::all_up_to(3, max_word_len);
    for (name, y) in triple_samples {
        let outcomes: Vec<Result<bool, AlgebraError>> = words
            .par_iter()
            .map(|word| {
                let round = word.then(&word.inverse());
                braid_act(r, &round, y).map(|t| t.sub(y).valuation().meets(n))
            })
            .collect();
        let mut failures = Vec::new();
        let mut error = None;
        for (word, outcome) in words.iter().zip(outcomes) {
            match outcome {
                Ok(true) => {}
                Ok(false) => failures.push(word.to_string()),
                Err(e) => {
                    error = Some(e.to_string());
                    break;
                }
            }
        }
        let identity = format!(
            "w·w^-1 = id for all {} words of length ≤ {max_word_len}",
            words.len()
        );
        let check = match (error, failures.is_empty()) {
            (Some(e), _) => Check::failed(identity, format!("y = {name}"), e),
            (None, true) => Check::exact(identity, format!("y = {name}"), true),
            (None, false) => Check::exact(identity, format!("y = {name}"), false)
                .with_note(format!("failing words: {}", failures.join(" "))),
        };
        report.push(check);
    }
    report
}

/// Certificates for `Ad(R)(x)` and `Ad(R^-1)(x)` together with the witness
/// that the two maps are mutually inverse on `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem21Certificate {
    pub input: MembershipCertificate,
    pub forward: MembershipCertificate,
    pub inverse: MembershipCertificate,
    pub round_trip: bool,
}

impl Theorem21Certificate {
    pub fn pass(&self, max_n: usize) -> bool {
        self.input.covers(max_n)
            && self.forward.covers(max_n)
            && self.inverse.covers(max_n)
            && self.round_trip
    }
}

/// Certify `Ad(R)(x) ∈ (H⊗H)'` and `Ad(R^-1)(x) ∈ (H⊗H)'` up to `max_n`,
/// for an `x` that is itself certified to `max_n`.
pub fn theorem21_certify(
    r: &RMatrix,
    x: &TensorElement,
    max_n: usize,
    label: &str,
) -> Result<Theorem21Certificate, AlgebraError> {
    let alg = r.algebra();
    let input = certify_hprime_tensor2(alg, x, max_n, label)?;
    if !input.covers(max_n) {
        return Err(AlgebraError::NotCertified(max_n));
    }
    let fx = r.ad(x)?;
    let gx = r.ad_inverse(x)?;
    let forward = certify_hprime_tensor2(alg, &fx, max_n, &format!("Ad(R)({label})"))?;
    let inverse = certify_hprime_tensor2(alg, &gx, max_n, &format!("Ad(R^-1)({label})"))?;
    let round_trip = r.ad_inverse(&fx)? == *x && r.ad(&gx)? == *x;
    Ok(Theorem21Certificate {
        input,
        forward,
        inverse,
        round_trip,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{HopfAlgebra, InstanceKind};

    #[test]
    fn word_parsing() {
        let w = BraidWord::parse(3, "1,2,-1").unwrap();
        assert_eq!(w.letters(), &[1, 2, -1]);
        assert_eq!(w.inverse().letters(), &[1, -2, -1]);
        assert!(BraidWord::parse(3, "3").is_err());
        assert!(BraidWord::parse(3, "0").is_err());
        assert!(BraidWord::parse(3, "").unwrap().letters().is_empty());
        assert_eq!("3:1,-2".parse::<BraidWord>().unwrap().letters(), &[1, -2]);
        assert_eq!(BraidWord::all_up_to(3, 2).len(), 1 + 4 + 16);
    }

    #[test]
    fn empty_word_and_inverse_pair() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 3);
        let r = RMatrix::build(&alg).unwrap();
        let x = TensorElement::pure(&[&alg.e(), &alg.f()]);
        assert_eq!(
            braid_act(&r, &BraidWord::parse(2, "").unwrap(), &x).unwrap(),
            x
        );
        assert_eq!(
            braid_act(&r, &BraidWord::parse(2, "1,-1").unwrap(), &x).unwrap(),
            x
        );
        assert_eq!(
            braid_act(&r, &BraidWord::parse(2, "-1,1").unwrap(), &x).unwrap(),
            x
        );
        assert!(braid_act(&r, &BraidWord::parse(3, "1").unwrap(), &x).is_err());
    }

    #[test]
    fn trivial_braiding_is_the_flip_action() {
        let alg = HopfAlgebra::new(InstanceKind::Trivial, 2);
        let r = RMatrix::build(&alg).unwrap();
        let x = TensorElement::pure(&[&alg.e(), &alg.f()]);
        let y = braid_act(&r, &BraidWord::parse(2, "1").unwrap(), &x).unwrap();
        assert_eq!(y, x.flip());
    }

    #[test]
    fn theorem21_rejects_uncertified_input() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 2);
        let r = RMatrix::build(&alg).unwrap();
        let x = TensorElement::pure(&[&alg.e(), &alg.one()]);
        assert_eq!(
            theorem21_certify(&r, &x, 2, "E⊗1"),
            Err(AlgebraError::NotCertified(2))
        );
        let unit = TensorElement::unit(2, 2);
        assert!(theorem21_certify(&r, &unit, 2, "I").unwrap().pass(2));
    }
}
