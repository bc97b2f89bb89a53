//! `sl2` as a Lie bialgebra: tensors over the basis `(E, H, F)`, the classical
//! Yang–Baxter equation and the cobracket `δ(x) = [x⊗1 + 1⊗x, r]`.
//!
//! Brackets are evaluated inside `U(sl2)^{⊗n}` (the undeformed instance at
//! order 1) and projected back; a projection that meets a monomial of degree
//! other than one in some leg is an error rather than a silent truncation.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::AlgebraError;
use crate::hopf::{HopfAlgebra, InstanceKind, Pbw};
use crate::report::{Check, VerificationReport};
use crate::series::{fmt_rational, Rational, ScalarSeries};
use crate::tensor::{Key, TensorElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LieBasis {
    E,
    H,
    F,
}

impl LieBasis {
    pub const ALL: [LieBasis; 3] = [LieBasis::E, LieBasis::H, LieBasis::F];

    pub fn pbw(self) -> Pbw {
        match self {
            LieBasis::E => Pbw::E,
            LieBasis::H => Pbw::H,
            LieBasis::F => Pbw::F,
        }
    }

    fn from_pbw(m: Pbw) -> Option<Self> {
        match m {
            Pbw::E => Some(LieBasis::E),
            Pbw::H => Some(LieBasis::H),
            Pbw::F => Some(LieBasis::F),
            _ => None,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            LieBasis::E => "E",
            LieBasis::H => "H",
            LieBasis::F => "F",
        }
    }
}

/// An element of `sl2^{⊗rank}` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieTensor {
    rank: usize,
    terms: BTreeMap<Vec<LieBasis>, Rational>,
}

/// Shared undeformed `U(sl2)` used for all classical brackets.
fn classical_algebra() -> &'static Arc<HopfAlgebra> {
    static ALG: OnceLock<Arc<HopfAlgebra>> = OnceLock::new();
    ALG.get_or_init(|| HopfAlgebra::new(InstanceKind::Trivial, 1))
}

impl LieTensor {
    pub fn zero(rank: usize) -> Self {
        LieTensor {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(x: LieBasis) -> Self {
        let mut t = Self::zero(1);
        t.add_term(vec![x], Rational::one());
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<LieBasis>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &[LieBasis]) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, key: Vec<LieBasis>, c: Rational) {
        assert_eq!(key.len(), self.rank);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.rank);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Output leg `i` carries input leg `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.rank);
        for (k, c) in &self.terms {
            out.add_term(perm.iter().map(|&p| k[p]).collect(), c.clone());
        }
        out
    }

    pub fn flip(&self) -> Self {
        assert_eq!(self.rank, 2);
        self.permuted(&[1, 0])
    }

    pub fn otimes(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.rank + other.rank);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut k = ka.clone();
                k.extend_from_slice(kb);
                out.add_term(k, ca * cb);
            }
        }
        out
    }

    /// The same tensor inside `U(sl2)^{⊗rank}` at order 1.
    pub fn to_tensor(&self) -> TensorElement {
        let mut t = TensorElement::zero(self.rank, 1);
        for (k, c) in &self.terms {
            let key: Key = k.iter().map(|b| b.pbw()).collect();
            t.add_term(key, ScalarSeries::constant(c.clone(), 1));
        }
        t
    }

    /// Read the `h^0` part of a tensor as an element of `sl2^{⊗n}`.
    pub fn project(t: &TensorElement) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(t.rank());
        for (k, c) in t.sorted_terms() {
            let c0 = c.constant_term();
            if c0.is_zero() {
                continue;
            }
            let key = k
                .iter()
                .map(|&m| LieBasis::from_pbw(m))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| {
                    let legs: Vec<String> = k.iter().map(|m| m.short()).collect();
                    AlgebraError::Projection(format!(
                        "term {} is not in sl2 tensors",
                        legs.join("⊗")
                    ))
                })?;
            out.add_term(key, c0.clone());
        }
        Ok(out)
    }

    /// Place leg `j` at position `positions[j]` of a rank-`rank` tensor, with
    /// the unit elsewhere; the result lives in `U(sl2)^{⊗rank}`.
    fn placed(&self, positions: &[usize], rank: usize) -> TensorElement {
        self.to_tensor()
            .place(positions, rank)
            .expect("valid positions")
    }
}

impl fmt::Display for LieTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let lines: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let legs: Vec<&str> = k.iter().map(|b| b.symbol()).collect();
                format!("{} : {}", legs.join("⊗"), fmt_rational(c))
            })
            .collect();
        f.write_str(&lines.join("\n"))
    }
}

impl Serialize for LieTensor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<String, String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let legs: Vec<&str> = k.iter().map(|b| b.symbol()).collect();
                (legs.join("⊗"), fmt_rational(c))
            })
            .collect();
        map.serialize(serializer)
    }
}

/// `x ⊗ 1 ⊗ … + … + 1 ⊗ … ⊗ x` in `U(sl2)^{⊗rank}`.
fn primitive_lift(x: &LieTensor, rank: usize) -> TensorElement {
    let mut out = TensorElement::zero(rank, 1);
    for i in 0..rank {
        out = out.add(&x.placed(&[i], rank));
    }
    out
}

/// `[r12, r13] + [r12, r23] + [r13, r23]`.
pub fn cybe_residual(r: &LieTensor) -> Result<LieTensor, AlgebraError> {
    if r.rank() != 2 {
        return Err(AlgebraError::RankMismatch(2, r.rank()));
    }
    let alg = classical_algebra();
    let r12 = r.placed(&[0, 1], 3);
    let r13 = r.placed(&[0, 2], 3);
    let r23 = r.placed(&[1, 2], 3);
    let sum = alg
        .tensor_commutator(&r12, &r13)
        .add(&alg.tensor_commutator(&r12, &r23))
        .add(&alg.tensor_commutator(&r13, &r23));
    LieTensor::project(&sum)
}

/// The adjoint action `x · t = [x ⊗ 1 ⊗ … + … , t]` of `x ∈ sl2` on `sl2^{⊗n}`.
pub fn adjoint_action(x: &LieTensor, t: &LieTensor) -> Result<LieTensor, AlgebraError> {
    if x.rank() != 1 {
        return Err(AlgebraError::RankMismatch(1, x.rank()));
    }
    let alg = classical_algebra();
    let lifted = primitive_lift(x, t.rank());
    LieTensor::project(&alg.tensor_commutator(&lifted, &t.to_tensor()))
}

/// `δ(x) = [x⊗1 + 1⊗x, r]`.
pub fn cobracket(x: &LieTensor, r: &LieTensor) -> Result<LieTensor, AlgebraError> {
    if r.rank() != 2 {
        return Err(AlgebraError::RankMismatch(2, r.rank()));
    }
    adjoint_action(x, r)
}

/// The Lie bracket of `sl2`, extended bilinearly to rank-1 tensors.
pub fn lie_bracket(x: &LieTensor, y: &LieTensor) -> Result<LieTensor, AlgebraError> {
    adjoint_action(x, y)
}

/// `(δ ⊗ Id)` applied to a rank-2 tensor.
fn cobracket_first_leg(t: &LieTensor, r: &LieTensor) -> Result<LieTensor, AlgebraError> {
    let mut out = LieTensor::zero(t.rank() + 1);
    for (k, c) in t.terms() {
        let d = cobracket(&LieTensor::basis(k[0]), r)?;
        let mut rest = LieTensor::zero(t.rank() - 1);
        rest.add_term(k[1..].to_vec(), c.clone());
        out = out.add(&d.otimes(&rest));
    }
    Ok(out)
}

/// Antisymmetry, co-Jacobi, cocycle and ad-invariance of `r + σ(r)`, plus
/// the classical Yang–Baxter equation for `r`.
pub fn bialgebra_checks_report(r: &LieTensor) -> VerificationReport {
    let mut report = VerificationReport::new("classical");
    let mut run = |identity: &str,
                   inputs: String,
                   f: &dyn Fn() -> Result<LieTensor, AlgebraError>| match f() {
        Ok(t) if t.is_zero() => report.push(Check::exact(identity, inputs, true)),
        Ok(t) => report.push(
            Check::exact(identity, inputs, false)
                .with_note(format!("residual {}", t.to_string().replace('\n', "; "))),
        ),
        Err(e) => report.push(Check::failed(identity, inputs, e.to_string())),
    };
    let basis: Vec<(LieBasis, LieTensor)> = LieBasis::ALL
        .iter()
        .map(|&b| (b, LieTensor::basis(b)))
        .collect();
    for (b, x) in &basis {
        run(
            "δ(x) + σδ(x) = 0",
            format!("x = {}", b.symbol()),
            &|| {
                let d = cobracket(x, r)?;
                Ok(d.add(&d.flip()))
            },
        );
    }
    for (b, x) in &basis {
        run("co-Jacobi", format!("x = {}", b.symbol()), &|| {
            let t = cobracket_first_leg(&cobracket(x, r)?, r)?;
            Ok(t.add(&t.permuted(&[1, 2, 0])).add(&t.permuted(&[2, 0, 1])))
        });
    }
    for (bx, x) in &basis {
        for (by, y) in &basis {
            run(
                "δ([x,y]) = x·δ(y) - y·δ(x)",
                format!("x = {}, y = {}", bx.symbol(), by.symbol()),
                &|| {
                    let lhs = cobracket(&lie_bracket(x, y)?, r)?;
                    let rhs = adjoint_action(x, &cobracket(y, r)?)?
                        .sub(&adjoint_action(y, &cobracket(x, r)?)?);
                    Ok(lhs.sub(&rhs))
                },
            );
        }
    }
    let sym = r.add(&r.flip());
    for (b, x) in &basis {
        run("x·(r + σr) = 0", format!("x = {}", b.symbol()), &|| {
            adjoint_action(x, &sym)
        });
    }
    run("CYBE", "r".into(), &|| cybe_residual(r));
    report
}

/// `((Δ(X) - Δ^op(X)) / h)` at `h = 0`, projected onto `sl2 ⊗ sl2`.
pub fn quantum_cobracket(alg: &HopfAlgebra, x: LieBasis) -> Result<LieTensor, AlgebraError> {
    if alg.order() < 2 {
        return Err(AlgebraError::BeyondTruncation {
            requested: 2,
            order: alg.order(),
        });
    }
    let d = alg.coproduct(&alg.gen(x.pbw()));
    let diff = d.sub(&d.flip());
    if !diff.valuation().meets(1) {
        return Err(AlgebraError::Precondition(
            "Δ - Δ^op does not vanish at h = 0".into(),
        ));
    }
    LieTensor::project(&diff.coefficient_at(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn standard_r() -> LieTensor {
        let mut r = LieTensor::zero(2);
        r.add_term(vec![LieBasis::E, LieBasis::F], Rational::one());
        r.add_term(vec![LieBasis::H, LieBasis::H], rat(1, 4));
        r
    }

    #[test]
    fn cybe_examples() {
        assert!(cybe_residual(&LieTensor::zero(2)).unwrap().is_zero());
        assert!(cybe_residual(&standard_r()).unwrap().is_zero());
        let mut ee = LieTensor::zero(2);
        ee.add_term(vec![LieBasis::E, LieBasis::E], Rational::one());
        // [E,E] = 0 in every pairing, so E⊗E is a (degenerate) solution
        assert!(cybe_residual(&ee).unwrap().is_zero());
        let mut ef = LieTensor::zero(2);
        ef.add_term(vec![LieBasis::E, LieBasis::F], Rational::one());
        assert!(!cybe_residual(&ef).unwrap().is_zero());
    }

    #[test]
    fn cobracket_values() {
        let r = standard_r();
        let h = cobracket(&LieTensor::basis(LieBasis::H), &r).unwrap();
        assert!(h.is_zero());
        let e = cobracket(&LieTensor::basis(LieBasis::E), &r).unwrap();
        let mut expected = LieTensor::zero(2);
        expected.add_term(vec![LieBasis::E, LieBasis::H], rat(1, 2));
        expected.add_term(vec![LieBasis::H, LieBasis::E], rat(-1, 2));
        assert_eq!(e, expected);
    }

    #[test]
    fn reports() {
        assert!(bialgebra_checks_report(&LieTensor::zero(2)).overall);
        let report = bialgebra_checks_report(&standard_r());
        assert!(report.overall, "{}", report.render_text());
        let mut bad = LieTensor::zero(2);
        bad.add_term(vec![LieBasis::E, LieBasis::F], Rational::one());
        bad.add_term(vec![LieBasis::F, LieBasis::E], -Rational::one());
        let report = bialgebra_checks_report(&bad);
        let failing: Vec<&str> = report.failures().map(|c| c.identity.as_str()).collect();
        assert!(failing.contains(&"CYBE"));
    }

    #[test]
    fn projection_rejects_higher_degree() {
        let t = TensorElement::monomial(&[Pbw::new(0, 2, 0), Pbw::E], ScalarSeries::one(1));
        assert!(matches!(
            LieTensor::project(&t),
            Err(AlgebraError::Projection(_))
        ));
    }

    #[test]
    fn quantum_and_classical_cobrackets_agree() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 3);
        let r = standard_r();
        for b in LieBasis::ALL {
            assert_eq!(
                quantum_cobracket(&alg, b).unwrap(),
                cobracket(&LieTensor::basis(b), &r).unwrap()
            );
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(standard_r().to_string(), "E⊗F : 1\nH⊗H : 1/4");
        assert_eq!(LieTensor::zero(2).to_string(), "0");
    }
}
