//! The universal R-matrix modulo `h^N`, its inverse, conjugation by it, and
//! the subset products `R_Σ` that describe `Δ̃_Σ(R)`.
//!
//! For the deformed instance
//!
//! ```text
//! R = exp((h/4) H⊗H) · Σ_{n<N} c_n E^n ⊗ F^n,   c_n = q^{n(n-1)/2} (q - q^-1)^n / [n]_q!
//! ```
//!
//! and `c_n` has valuation `n`, so the sum is finite.

use std::sync::Arc;

use num::{One, Zero};

use crate::classical::LieTensor;
use crate::coalgebra::{delta_sigma_upper, Doubled};
use crate::error::AlgebraError;
use crate::hopf::{AlgebraElement, HopfAlgebra, InstanceKind, Pbw};
use crate::report::{Check, VerificationReport};
use crate::series::{int, rat, Rational, ScalarSeries, Valuation};
use crate::subset::SubsetIndex;
use crate::tensor::{Key, TensorElement};

#[derive(Clone, Debug)]
pub struct RMatrix {
    alg: Arc<HopfAlgebra>,
    value: TensorElement,
    inverse: TensorElement,
}

/// `q^m = exp(m h / 2)`.
fn q_power(m: i64, order: usize) -> ScalarSeries {
    ScalarSeries::monomial(rat(m, 2), 1, order)
        .exp()
        .expect("no constant term")
}

/// `[n]_q = q^{n-1} + q^{n-3} + … + q^{-(n-1)}`.
fn q_integer(n: usize, order: usize) -> ScalarSeries {
    let mut acc = ScalarSeries::zero(order);
    for i in 0..n {
        acc = &acc + &q_power(n as i64 - 1 - 2 * i as i64, order);
    }
    acc
}

/// `c_n = q^{n(n-1)/2} (q - q^-1)^n / [n]_q!`.
pub fn r_coefficient(n: usize, order: usize) -> ScalarSeries {
    let diff = &q_power(1, order) - &q_power(-1, order);
    let mut fact = ScalarSeries::one(order);
    for k in 1..=n {
        fact = &fact * &q_integer(k, order);
    }
    let num = &q_power((n * n.saturating_sub(1) / 2) as i64, order) * &diff.pow(n);
    &num * &fact.inv().expect("[n]_q! is a unit")
}

impl RMatrix {
    pub fn build(alg: &Arc<HopfAlgebra>) -> Result<Self, AlgebraError> {
        let n = alg.order();
        let value = match alg.kind() {
            InstanceKind::Trivial => TensorElement::unit(2, n),
            InstanceKind::UhSl2 => {
                let mut cartan = TensorElement::zero(2, n);
                let mut c = Rational::one();
                for k in 0..n {
                    if k > 0 {
                        c = c * rat(1, 4) / int(k as i64);
                    }
                    let hk = Pbw::new(0, k as u16, 0);
                    cartan.add_term(
                        Key::from_slice(&[hk, hk]),
                        ScalarSeries::monomial(c.clone(), k, n),
                    );
                }
                let mut quantum = TensorElement::zero(2, n);
                for k in 0..n {
                    quantum.add_term(
                        Key::from_slice(&[Pbw::new(0, 0, k as u16), Pbw::new(k as u16, 0, 0)]),
                        r_coefficient(k, n),
                    );
                }
                alg.tensor_mul(&cartan, &quantum)
            }
        };
        let inverse = tensor_inverse(alg, &value)?;
        Ok(RMatrix {
            alg: alg.clone(),
            value,
            inverse,
        })
    }

    pub fn algebra(&self) -> &Arc<HopfAlgebra> {
        &self.alg
    }

    pub fn order(&self) -> usize {
        self.alg.order()
    }

    pub fn value(&self) -> &TensorElement {
        &self.value
    }

    pub fn inverse(&self) -> &TensorElement {
        &self.inverse
    }

    fn check(&self, x: &TensorElement) -> Result<(), AlgebraError> {
        if x.order() != self.order() {
            return Err(AlgebraError::OrderMismatch(self.order(), x.order()));
        }
        if x.rank() != 2 {
            return Err(AlgebraError::RankMismatch(2, x.rank()));
        }
        Ok(())
    }

    /// `R x R^-1`.
    pub fn ad(&self, x: &TensorElement) -> Result<TensorElement, AlgebraError> {
        self.check(x)?;
        let left = self.alg.tensor_mul(&self.value, x);
        Ok(self.alg.tensor_mul(&left, &self.inverse))
    }

    /// `R^-1 x R`.
    pub fn ad_inverse(&self, x: &TensorElement) -> Result<TensorElement, AlgebraError> {
        self.check(x)?;
        let left = self.alg.tensor_mul(&self.inverse, x);
        Ok(self.alg.tensor_mul(&left, &self.value))
    }

    /// `R_{r,s}` inside `H^{⊗rank}` with 1-based legs `r ≠ s`.
    pub fn leg(&self, r: usize, s: usize, rank: usize) -> Result<TensorElement, AlgebraError> {
        placed(&self.value, r, s, rank)
    }

    pub fn leg_inverse(
        &self,
        r: usize,
        s: usize,
        rank: usize,
    ) -> Result<TensorElement, AlgebraError> {
        placed(&self.inverse, r, s, rank)
    }

    /// `R_Σ` in `H^{⊗2n}` for `Σ = {i_1 < … < i_k}`: the product over rows
    /// `a = 1..k` of `R_{2i_a-1, 2i_k} ⋯ R_{2i_a-1, 2i_1}`.
    pub fn r_sigma(&self, sigma: &SubsetIndex) -> Result<TensorElement, AlgebraError> {
        let rank = 2 * sigma.ambient();
        let mut acc = TensorElement::unit(rank, self.order());
        for &ia in sigma.members() {
            for &ib in sigma.members().iter().rev() {
                let factor = self.leg(2 * ia - 1, 2 * ib, rank)?;
                acc = self.alg.tensor_mul(&acc, &factor);
            }
        }
        Ok(acc)
    }

    /// Valuation of `Δ̃_Σ(R) - R_Σ`; exact equality means `>= N`.
    pub fn lemma31_residual(&self, sigma: &SubsetIndex) -> Result<Valuation, AlgebraError> {
        let dbl = Doubled::new(&self.alg);
        let lhs = delta_sigma_upper(&dbl, &self.value, sigma)?;
        let rhs = self.r_sigma(sigma)?;
        Ok(lhs.sub(&rhs).valuation())
    }

    /// The `h^1` coefficient of `R`, projected onto `g ⊗ g`.
    pub fn classical_r(&self) -> Result<LieTensor, AlgebraError> {
        classical_part(&self.value)
    }

    /// Evaluate the intertwining, fusion and Yang–Baxter identities.
    pub fn quasitriangularity_report(
        &self,
        samples: &[(String, AlgebraElement)],
    ) -> VerificationReport {
        let alg = &self.alg;
        let n = self.order();
        let mut report = VerificationReport::new("quasitriangular");
        let unit2 = TensorElement::unit(2, n);
        report.push(Check::valuation(
            "R·R^-1 = I",
            "",
            alg.tensor_mul(&self.value, &self.inverse)
                .sub(&unit2)
                .valuation(),
            n,
        ));
        report.push(Check::valuation(
            "R^-1·R = I",
            "",
            alg.tensor_mul(&self.inverse, &self.value)
                .sub(&unit2)
                .valuation(),
            n,
        ));
        for (name, a) in samples {
            let d = alg.coproduct(a);
            let lhs = self.ad(&d).expect("rank 2");
            report.push(Check::valuation(
                "R·Δ(a)·R^-1 = Δ^op(a)",
                format!("a = {name}"),
                lhs.sub(&d.flip()).valuation(),
                n,
            ));
        }
        let r = |a, b| self.leg(a, b, 3).expect("valid legs");
        let (r12, r13, r23) = (r(1, 2), r(1, 3), r(2, 3));
        let d_left = alg.coproduct_on_leg(&self.value, 0);
        report.push(Check::valuation(
            "(Δ⊗Id)(R) = R13·R23",
            "",
            d_left.sub(&alg.tensor_mul(&r13, &r23)).valuation(),
            n,
        ));
        let d_right = alg.coproduct_on_leg(&self.value, 1);
        report.push(Check::valuation(
            "(Id⊗Δ)(R) = R13·R12",
            "",
            d_right.sub(&alg.tensor_mul(&r13, &r12)).valuation(),
            n,
        ));
        let lhs = alg.tensor_product_of(&[r12.clone(), r13.clone(), r23.clone()], 3);
        let rhs = alg.tensor_product_of(&[r23, r13, r12], 3);
        report.push(Check::valuation(
            "R12·R13·R23 = R23·R13·R12",
            "",
            lhs.sub(&rhs).valuation(),
            n,
        ));
        report
    }
}

fn placed(
    t: &TensorElement,
    r: usize,
    s: usize,
    rank: usize,
) -> Result<TensorElement, AlgebraError> {
    if r == 0 || s == 0 {
        return Err(AlgebraError::BadPositions(vec![r, s], rank));
    }
    t.place(&[r - 1, s - 1], rank)
}

/// The `h^1` coefficient of a rank-2 tensor whose `h^0` part is `1⊗1`,
/// projected onto `g ⊗ g`.
pub fn classical_part(t: &TensorElement) -> Result<LieTensor, AlgebraError> {
    let unit = TensorElement::unit(t.rank(), 1);
    if t.specialize_h0() != unit {
        return Err(AlgebraError::Precondition(
            "constant term is not the unit".into(),
        ));
    }
    if t.order() < 2 {
        return Err(AlgebraError::BeyondTruncation {
            requested: 2,
            order: t.order(),
        });
    }
    LieTensor::project(&t.coefficient_at(1))
}

/// Two-sided inverse of a tensor whose `h^0` part is a nonzero multiple of
/// the unit: `t = c(I - u)` gives `t^-1 = c^-1 Σ_{k<N} u^k`.
pub fn tensor_inverse(alg: &HopfAlgebra, t: &TensorElement) -> Result<TensorElement, AlgebraError> {
    if t.order() != alg.order() {
        return Err(AlgebraError::OrderMismatch(alg.order(), t.order()));
    }
    let rank = t.rank();
    let n = t.order();
    let base = t.specialize_h0();
    let unit_key = crate::tensor::unit_key(rank);
    let c = match base.coefficient(&unit_key) {
        Some(c) if base.len() == 1 => c.constant_term().clone(),
        _ => return Err(AlgebraError::NotInvertible),
    };
    if c.is_zero() {
        return Err(AlgebraError::NotInvertible);
    }
    let unit = TensorElement::unit(rank, n);
    let c_inv = c.recip();
    let u = unit.sub(&t.scale_rational(&c_inv));
    // Horner: I + u(I + u(I + …))
    let mut acc = unit.clone();
    for _ in 1..n {
        acc = unit.add(&alg.tensor_mul(&u, &acc));
    }
    Ok(acc.scale_rational(&c_inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::LieBasis;

    fn series(text: &str, n: usize) -> ScalarSeries {
        ScalarSeries::parse(text, n).unwrap()
    }

    #[test]
    fn coefficient_values() {
        assert!(r_coefficient(0, 4).is_one());
        // c_1 = q - q^-1 = h + h^3/24
        assert_eq!(r_coefficient(1, 4), series("h + 1/24*h^3", 4));
        assert_eq!(r_coefficient(2, 4).valuation(), Valuation::Exact(2));
        assert!(r_coefficient(4, 4).is_zero());
    }

    #[test]
    fn first_order_expansion() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 2);
        let r = RMatrix::build(&alg).unwrap();
        let mut expected = TensorElement::unit(2, 2);
        expected.add_term(Key::from_slice(&[Pbw::E, Pbw::F]), series("h", 2));
        expected.add_term(Key::from_slice(&[Pbw::H, Pbw::H]), series("1/4*h", 2));
        assert_eq!(r.value(), &expected);
        assert_eq!(
            crate::text::pretty_tensor(r.value()),
            "1⊗1 + h·(E⊗F + 1/4·H⊗H)"
        );
    }

    #[test]
    fn trivial_instance_is_unit() {
        let alg = HopfAlgebra::new(InstanceKind::Trivial, 3);
        let r = RMatrix::build(&alg).unwrap();
        assert_eq!(r.value(), &TensorElement::unit(2, 3));
        assert!(r.classical_r().unwrap().is_zero());
    }

    #[test]
    fn inverse_examples() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 3);
        let unit = TensorElement::unit(2, 3);
        assert_eq!(tensor_inverse(&alg, &unit).unwrap(), unit);
        let mut t = unit.clone();
        t.add_term(Key::from_slice(&[Pbw::E, Pbw::F]), series("h", 3));
        let mut expected = unit.clone();
        expected.add_term(Key::from_slice(&[Pbw::E, Pbw::F]), series("-h", 3));
        expected.add_term(
            Key::from_slice(&[Pbw::new(0, 0, 2), Pbw::new(2, 0, 0)]),
            series("h^2", 3),
        );
        assert_eq!(tensor_inverse(&alg, &t).unwrap(), expected);
        let bad = TensorElement::monomial(&[Pbw::E, Pbw::ONE], ScalarSeries::one(3));
        assert_eq!(tensor_inverse(&alg, &bad), Err(AlgebraError::NotInvertible));
    }

    #[test]
    fn classical_r_of_uhsl2() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 3);
        let r = RMatrix::build(&alg).unwrap();
        let cr = r.classical_r().unwrap();
        let mut expected = LieTensor::zero(2);
        expected.add_term(vec![LieBasis::E, LieBasis::F], Rational::one());
        expected.add_term(vec![LieBasis::H, LieBasis::H], rat(1, 4));
        assert_eq!(cr, expected);
    }

    #[test]
    fn r_sigma_two_blocks_matches_pattern() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 3);
        let r = RMatrix::build(&alg).unwrap();
        let s = SubsetIndex::full(2);
        let leg = |a, b| r.leg(a, b, 4).unwrap();
        let expected = alg.tensor_product_of(&[leg(1, 4), leg(1, 2), leg(3, 4), leg(3, 2)], 4);
        assert_eq!(r.r_sigma(&s).unwrap(), expected);
        let one = SubsetIndex::full(1);
        assert_eq!(r.r_sigma(&one).unwrap(), r.value().clone());
    }

    #[test]
    fn lemma31_small_case() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 3);
        let r = RMatrix::build(&alg).unwrap();
        let v = r.lemma31_residual(&SubsetIndex::full(2)).unwrap();
        assert!(v.meets(3), "residual {v}");
    }

    #[test]
    fn quasitriangular_at_order_three() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 3);
        let r = RMatrix::build(&alg).unwrap();
        let samples = vec![
            ("E".to_string(), alg.e()),
            ("F".to_string(), alg.f()),
            ("H".to_string(), alg.h()),
        ];
        let report = r.quasitriangularity_report(&samples);
        assert!(report.overall, "{}", report.render_text());
    }
}
