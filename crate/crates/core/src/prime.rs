//! Order-qualified membership in the Drinfeld subalgebra
//! `H' = { a : δ_n(a) ∈ h^n H^{⊗n} for all n }`, and in `(H⊗H)'`.
//!
//! Under truncation modulo `h^N` only `n ≤ N` can be tested, so a certificate
//! always states the largest order it covers.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::coalgebra::{BlockCoalgebra, Doubled, SubsetCoproducts};
use crate::combinatorics::binom_c;
use crate::error::AlgebraError;
use crate::hopf::{AlgebraElement, HopfAlgebra};
use crate::series::{int, Valuation};
use crate::subset::SubsetIndex;
use crate::tensor::TensorElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Certified,
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipCertificate {
    pub element: String,
    #[serde(rename = "N")]
    pub order: usize,
    pub checked_n: Vec<usize>,
    pub valuations: BTreeMap<usize, Valuation>,
    /// Largest `n₀` with `val(δ_n) ≥ n` for every `n ≤ n₀`.
    pub certified_order: usize,
    pub verdict: Verdict,
}

impl MembershipCertificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    /// Whether the certificate covers every `n ≤ n0`.
    pub fn covers(&self, n0: usize) -> bool {
        self.is_certified() && self.certified_order >= n0
    }
}

/// Certify `x` (an element of the coalgebra `c`) for `n = 1..=max_n`, stopping
/// at the first `n` with `val(δ_n(x)) < n`.
pub fn certify_in<C: BlockCoalgebra + ?Sized>(
    c: &C,
    x: &TensorElement,
    max_n: usize,
    label: &str,
) -> Result<MembershipCertificate, AlgebraError> {
    let order = c.order();
    if max_n > order {
        return Err(AlgebraError::BeyondTruncation {
            requested: max_n,
            order,
        });
    }
    let sc = SubsetCoproducts::new(c, x, max_n)?;
    let mut cert = MembershipCertificate {
        element: label.to_string(),
        order,
        checked_n: Vec::new(),
        valuations: BTreeMap::new(),
        certified_order: 0,
        verdict: Verdict::Certified,
    };
    for n in 1..=max_n {
        let v = sc.delta_n(n)?.valuation();
        cert.checked_n.push(n);
        cert.valuations.insert(n, v);
        if !v.meets(n) {
            cert.verdict = Verdict::Refuted;
            break;
        }
        cert.certified_order = n;
    }
    Ok(cert)
}

pub fn certify_hprime(
    alg: &HopfAlgebra,
    x: &AlgebraElement,
    max_n: usize,
    label: &str,
) -> Result<MembershipCertificate, AlgebraError> {
    certify_in(alg, &TensorElement::from_algebra(x), max_n, label)
}

/// Membership in `(H⊗H)'`, using `δ̃_n` built from `Δ̃` and `I = 1⊗1`.
pub fn certify_hprime_tensor2(
    alg: &HopfAlgebra,
    x: &TensorElement,
    max_n: usize,
    label: &str,
) -> Result<MembershipCertificate, AlgebraError> {
    if x.rank() != 2 {
        return Err(AlgebraError::RankMismatch(2, x.rank()));
    }
    certify_in(&Doubled::new(alg), x, max_n, label)
}

/// Valuation of
/// `Δ̃_Σ(x) - Σ_{Σ'⊆Σ, |Σ'|≤i} (-1)^{i-|Σ'|} C^{i-|Σ'|}_{|Σ|-1-|Σ'|} Δ̃_{Σ'}(x)`,
/// which is predicted to be at least `i + 1` for `x ∈ (H⊗H)'` and `|Σ| > i`.
///
/// `cert` must cover `min(|Σ|, N)`: every `δ̃_{Σ'}` with `i < |Σ'| ≤ |Σ|`
/// needs valuation `≥ i + 1`, which certification only to order `i + 1` does
/// not provide.
pub fn lemma32_residual(
    alg: &HopfAlgebra,
    x: &TensorElement,
    cert: &MembershipCertificate,
    sigma: &SubsetIndex,
    i: usize,
) -> Result<Valuation, AlgebraError> {
    if sigma.len() <= i {
        return Err(AlgebraError::Precondition(format!(
            "|Σ| = {} must exceed i = {i}",
            sigma.len()
        )));
    }
    let needed = sigma.len().min(alg.order());
    if !cert.covers(needed) {
        return Err(AlgebraError::NotCertified(needed));
    }
    let dbl = Doubled::new(alg);
    let sc = SubsetCoproducts::new(&dbl, x, sigma.len())?;
    lemma32_from(&sc, sigma, i)
}

fn lemma32_from(
    sc: &SubsetCoproducts,
    sigma: &SubsetIndex,
    i: usize,
) -> Result<Valuation, AlgebraError> {
    let mut residual = sc.upper(sigma)?;
    let s = sigma.len() as i64;
    let i = i as i64;
    for sub in sigma.subsets() {
        let k = sub.len() as i64;
        if k > i {
            continue;
        }
        let sign = if (i - k) % 2 == 0 { 1 } else { -1 };
        let c = sign * binom_c(i - k, s - 1 - k);
        if c == 0 {
            continue;
        }
        let term = sc.upper(&sub)?.scale_rational(&int(c as i64));
        residual = residual.sub(&term);
    }
    Ok(residual.valuation())
}

/// Every residual for `Σ ⊆ {1..ambient}` and `i ≤ max_i` with `|Σ| > i`,
/// sharing one set of iterated coproducts.
pub fn lemma32_residuals(
    alg: &HopfAlgebra,
    x: &TensorElement,
    cert: &MembershipCertificate,
    ambient: usize,
    max_i: usize,
) -> Result<Vec<(SubsetIndex, usize, Valuation)>, AlgebraError> {
    let needed = ambient.min(alg.order());
    if !cert.covers(needed) {
        return Err(AlgebraError::NotCertified(needed));
    }
    let dbl = Doubled::new(alg);
    let sc = SubsetCoproducts::new(&dbl, x, ambient)?;
    let mut out = Vec::new();
    for i in 0..=max_i {
        for sigma in SubsetIndex::all(ambient) {
            if sigma.len() > i {
                let v = lemma32_from(&sc, &sigma, i)?;
                out.push((sigma, i, v));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::InstanceKind;

    #[test]
    fn unit_is_certified() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 3);
        let cert = certify_hprime(&alg, &alg.one(), 3, "1").unwrap();
        assert!(cert.covers(3));
        assert!(cert.valuations.values().all(|v| v.is_vanishing()));
    }

    #[test]
    fn bare_generator_is_refuted_at_one() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 3);
        let cert = certify_hprime(&alg, &alg.e(), 3, "E").unwrap();
        assert_eq!(cert.verdict, Verdict::Refuted);
        assert_eq!(cert.checked_n, vec![1]);
        assert_eq!(cert.valuations[&1], Valuation::Exact(0));
        assert_eq!(cert.certified_order, 0);
    }

    #[test]
    fn rescaled_generator_is_certified() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 3);
        let cert = certify_hprime(&alg, &alg.e().shift_h(1), 3, "hE").unwrap();
        assert!(cert.covers(3));
        assert_eq!(cert.valuations[&2], Valuation::Exact(2));
    }

    #[test]
    fn beyond_truncation_is_an_error() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 3);
        assert_eq!(
            certify_hprime(&alg, &alg.one(), 4, "1"),
            Err(AlgebraError::BeyondTruncation {
                requested: 4,
                order: 3
            })
        );
    }

    #[test]
    fn tensor_certificates() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 3);
        let one = alg.one();
        let unit = TensorElement::unit(2, 3);
        assert!(certify_hprime_tensor2(&alg, &unit, 3, "I")
            .unwrap()
            .covers(3));
        let he = alg.e().shift_h(1);
        let hf = alg.f().shift_h(1);
        let x = TensorElement::pure(&[&he, &hf]);
        assert!(certify_hprime_tensor2(&alg, &x, 3, "hE⊗hF")
            .unwrap()
            .covers(3));
        let bad = TensorElement::pure(&[&alg.e(), &one]);
        let cert = certify_hprime_tensor2(&alg, &bad, 3, "E⊗1").unwrap();
        assert_eq!(cert.verdict, Verdict::Refuted);
        assert_eq!(cert.checked_n, vec![1]);
    }

    #[test]
    fn lemma32_requires_certification_and_size() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 3);
        let bad = TensorElement::pure(&[&alg.e(), &alg.one()]);
        let cert = certify_hprime_tensor2(&alg, &bad, 3, "E⊗1").unwrap();
        let s = SubsetIndex::full(2);
        assert_eq!(
            lemma32_residual(&alg, &bad, &cert, &s, 1),
            Err(AlgebraError::NotCertified(2))
        );
        let unit = TensorElement::unit(2, 3);
        let cert = certify_hprime_tensor2(&alg, &unit, 3, "I").unwrap();
        assert!(lemma32_residual(&alg, &unit, &cert, &s, 2).is_err());
        let v = lemma32_residual(&alg, &unit, &cert, &s, 1).unwrap();
        assert!(v.is_vanishing());
    }
}
