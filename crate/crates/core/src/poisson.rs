//! The semiclassical limit `H'/hH'` and its Poisson bracket.
//!
//! `H'` is spanned (topologically) by `h^{a+b+c} F^a H^b E^c`, so an element of
//! `H'` is a sum of `h^k F^a H^b E^c` with `k ≥ a + b + c`, and its class
//! modulo `hH'` keeps exactly the terms with `k = a + b + c`. The quotient is
//! the commutative polynomial ring in `x_F, x_H, x_E`, the classes of
//! `hF, hH, hE`. Under truncation modulo `h^N` only monomials of degree
//! `< N` are known; the remaining degrees are tracked as the precision.
//!
//! The bracket of two classes is the class of `[a, b] / h`.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::AlgebraError;
use crate::hopf::{AlgebraElement, HopfAlgebra, Pbw};
use crate::series::{fmt_rational, Rational, ScalarSeries};

/// `Σ_{m} c_m x_F^a x_H^b x_E^c`, known for total degrees `< precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPolynomial {
    terms: BTreeMap<Pbw, Rational>,
    precision: usize,
}

impl ClassPolynomial {
    pub fn zero(precision: usize) -> Self {
        ClassPolynomial {
            terms: BTreeMap::new(),
            precision,
        }
    }

    /// The class of `h X` for a generator `X`.
    pub fn variable(m: Pbw, precision: usize) -> Self {
        let mut p = Self::zero(precision);
        p.add_term(m, Rational::one());
        p
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Pbw, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: Pbw) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Pbw, c: Rational) {
        if c.is_zero() || m.degree() >= self.precision {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Reduce to a lower precision.
    pub fn truncate(&self, precision: usize) -> Self {
        let mut out = Self::zero(precision.min(self.precision));
        for (m, c) in &self.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncate(other.precision);
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.precision);
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    /// Commutative product; exponents add.
    pub fn mul(&self, other: &Self) -> Self {
        // a product is known where both factors are known, shifted by the
        // lowest degree present in the other factor
        let low = |p: &Self| p.terms.keys().map(|m| m.degree()).min();
        let precision = match (low(self), low(other)) {
            (Some(ls), Some(lo)) => (self.precision + lo).min(other.precision + ls),
            _ => self.precision.min(other.precision),
        };
        let mut out = Self::zero(precision);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = Pbw::new(ma.f + mb.f, ma.h + mb.h, ma.e + mb.e);
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    /// Equality on the degrees both sides know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let p = self.precision.min(other.precision);
        self.truncate(p) == other.truncate(p)
    }

    /// The representative `Σ c_m h^{|m|} m` in `H'`.
    pub fn lift(&self, order: usize) -> AlgebraElement {
        let mut x = AlgebraElement::zero(order);
        for (m, c) in &self.terms {
            if m.degree() < order {
                x.add_term(*m, ScalarSeries::monomial(c.clone(), m.degree(), order));
            }
        }
        x
    }
}

impl fmt::Display for ClassPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (deg < {})", self.precision);
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut vars = Vec::new();
            for (sym, e) in [("x_F", m.f), ("x_H", m.h), ("x_E", m.e)] {
                match e {
                    0 => {}
                    1 => vars.push(sym.to_string()),
                    k => vars.push(format!("{sym}^{k}")),
                }
            }
            let mono = if vars.is_empty() {
                "1".to_string()
            } else {
                vars.join("·")
            };
            if c.is_one() && !vars.is_empty() {
                parts.push(mono);
            } else {
                parts.push(format!("{}·{mono}", fmt_rational(c)));
            }
        }
        write!(f, "{} (deg < {})", parts.join(" + "), self.precision)
    }
}

impl Serialize for ClassPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// `min (k - deg m)` over the terms `h^k m` of `x`; `None` for zero. The
/// element lies in the span of the rescaled monomials iff this is `≥ 0`.
pub fn rescaled_valuation(x: &AlgebraElement) -> Option<i64> {
    x.terms()
        .flat_map(|(m, c)| {
            c.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(k, _)| k as i64 - m.degree() as i64)
        })
        .min()
}

/// The class of `x` modulo `hH'`.
pub fn class_of(x: &AlgebraElement) -> Result<ClassPolynomial, AlgebraError> {
    if rescaled_valuation(x).is_some_and(|v| v < 0) {
        return Err(AlgebraError::Precondition(
            "element is not in the span of h^{a+b+c} F^a H^b E^c".into(),
        ));
    }
    let mut p = ClassPolynomial::zero(x.order());
    for (m, c) in x.terms() {
        if m.degree() < x.order() {
            p.add_term(*m, c.coeff(m.degree()).clone());
        }
    }
    Ok(p)
}

/// `{ā, b̄}`: the class of `[a, b] / h`.
pub fn poisson_bracket(
    alg: &HopfAlgebra,
    a: &AlgebraElement,
    b: &AlgebraElement,
) -> Result<ClassPolynomial, AlgebraError> {
    for x in [a, b] {
        if rescaled_valuation(x).is_some_and(|v| v < 0) {
            return Err(AlgebraError::Precondition(
                "bracket inputs must lie in the rescaled lattice".into(),
            ));
        }
    }
    let c = alg.commutator(a, b);
    if rescaled_valuation(&c).is_some_and(|v| v < 1) {
        return Err(AlgebraError::NotCommutingModH);
    }
    // terms of degree d need h^{d+1}, so degrees up to N - 2 are known
    let mut p = ClassPolynomial::zero(alg.order() - 1);
    for (m, coeff) in c.terms() {
        if m.degree() + 1 < alg.order() {
            p.add_term(*m, coeff.coeff(m.degree() + 1).clone());
        }
    }
    Ok(p)
}

/// Bracket of two classes, computed through their canonical lifts.
pub fn class_bracket(
    alg: &HopfAlgebra,
    a: &ClassPolynomial,
    b: &ClassPolynomial,
) -> Result<ClassPolynomial, AlgebraError> {
    let p = poisson_bracket(alg, &a.lift(alg.order()), &b.lift(alg.order()))?;
    // unknown degrees of an input can feed every output degree above the
    // input's precision minus one (the bracket lowers degree by at most one)
    let known = a.precision().min(b.precision());
    Ok(p.truncate(p.precision().min(known.saturating_sub(1))))
}
