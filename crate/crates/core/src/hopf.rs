//! The quantized enveloping algebra `U_h(sl2)` over `Q[h]/h^N` in the PBW basis
//! `F^a H^b E^c`, together with the undeformed baseline `U(sl2)`.
//!
//! Conventions for the deformed instance: `q = exp(h/2)`, `K = exp(hH/2)`,
//!
//! ```text
//! [H, E] = 2E    [H, F] = -2F    [E, F] = (K - K^-1) / (q - q^-1)
//! Δ(E) = E⊗K + 1⊗E    Δ(F) = F⊗1 + K^-1⊗F    Δ(H) = H⊗1 + 1⊗H
//! S(E) = -E K^-1      S(F) = -K F            S(H) = -H
//! ```
//!
//! Every `H^k` in `K` carries `h^k`, so `K` and `[E, F]` are finite polynomials in
//! `H` once truncated.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num::One;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::AlgebraError;
use crate::series::{int, rat, Rational, ScalarSeries, Valuation};
use crate::tensor::{Key, TensorElement};

/// The PBW monomial `F^f H^h E^e`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Pbw {
    pub f: u16,
    pub h: u16,
    pub e: u16,
}

impl Pbw {
    pub const ONE: Pbw = Pbw { f: 0, h: 0, e: 0 };
    pub const E: Pbw = Pbw { f: 0, h: 0, e: 1 };
    pub const F: Pbw = Pbw { f: 1, h: 0, e: 0 };
    pub const H: Pbw = Pbw { f: 0, h: 1, e: 0 };

    pub fn new(f: u16, h: u16, e: u16) -> Self {
        Pbw { f, h, e }
    }

    pub fn degree(self) -> usize {
        (self.f + self.h + self.e) as usize
    }

    pub fn is_one(self) -> bool {
        self == Pbw::ONE
    }

    /// All monomials of total degree at most `d`, in canonical order.
    pub fn up_to_degree(d: usize) -> Vec<Pbw> {
        let d = d as u16;
        let mut out = Vec::new();
        for f in 0..=d {
            for h in 0..=d - f {
                for e in 0..=d - f - h {
                    out.push(Pbw::new(f, h, e));
                }
            }
        }
        out.sort();
        out
    }

    /// Split off the last generator: `self = rest · g`.
    fn split_last(self) -> Option<(Pbw, Pbw)> {
        if self.e > 0 {
            Some((
                Pbw {
                    e: self.e - 1,
                    ..self
                },
                Pbw::E,
            ))
        } else if self.h > 0 {
            Some((
                Pbw {
                    h: self.h - 1,
                    ..self
                },
                Pbw::H,
            ))
        } else if self.f > 0 {
            Some((
                Pbw {
                    f: self.f - 1,
                    ..self
                },
                Pbw::F,
            ))
        } else {
            None
        }
    }

    /// Canonical form `F^a H^b E^c`.
    pub fn canonical(self) -> String {
        format!("F^{} H^{} E^{}", self.f, self.h, self.e)
    }

    /// Short form, e.g. `F^2·H·E`, or `1` for the unit.
    pub fn short(self) -> String {
        if self.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (sym, exp) in [("F", self.f), ("H", self.h), ("E", self.e)] {
            match exp {
                0 => {}
                1 => parts.push(sym.to_string()),
                k => parts.push(format!("{sym}^{k}")),
            }
        }
        parts.join("·")
    }
}

impl fmt::Display for Pbw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

/// A finite sum of PBW monomials with series coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<Pbw, ScalarSeries>,
    order: usize,
}

impl AlgebraElement {
    pub fn zero(order: usize) -> Self {
        assert!(order > 0, "truncation order must be positive");
        AlgebraElement {
            terms: BTreeMap::new(),
            order,
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(Pbw::ONE, ScalarSeries::one(order))
    }

    pub fn monomial(m: Pbw, coeff: ScalarSeries) -> Self {
        let mut x = Self::zero(coeff.order());
        x.add_term(m, coeff);
        x
    }

    /// `c · h^k · m` for a rational `c`.
    pub fn scaled_monomial(m: Pbw, c: Rational, h_power: usize, order: usize) -> Self {
        Self::monomial(m, ScalarSeries::monomial(c, h_power, order))
    }

    pub fn generator(m: Pbw, order: usize) -> Self {
        Self::monomial(m, ScalarSeries::one(order))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Pbw, &ScalarSeries)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: Pbw) -> Option<&ScalarSeries> {
        self.terms.get(&m)
    }

    pub fn add_term(&mut self, m: Pbw, coeff: ScalarSeries) {
        assert_eq!(coeff.order(), self.order, "series order mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&coeff);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.order != other.order {
            return Err(AlgebraError::OrderMismatch(self.order, other.order));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("order mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale_rational(&-Rational::one())
    }

    pub fn scale(&self, c: &ScalarSeries) -> Self {
        let mut out = Self::zero(self.order);
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.order);
        for (m, v) in &self.terms {
            out.add_term(*m, v.scale(c));
        }
        out
    }

    /// Multiply by `h^k`.
    pub fn shift_h(&self, k: usize) -> Self {
        let mut out = Self::zero(self.order);
        for (m, v) in &self.terms {
            out.add_term(*m, v.shift_up(k));
        }
        out
    }

    pub fn valuation(&self) -> Valuation {
        self.terms
            .values()
            .map(ScalarSeries::valuation)
            .min()
            .unwrap_or(Valuation::AtLeast(self.order))
    }

    /// Coefficient of the unit monomial, which is the counit since every
    /// generator is killed by `ε`.
    pub fn counit(&self) -> ScalarSeries {
        self.terms
            .get(&Pbw::ONE)
            .cloned()
            .unwrap_or_else(|| ScalarSeries::zero(self.order))
    }

    /// Keep only the `h^0` part of every coefficient; the result has order 1.
    pub fn specialize_h0(&self) -> Self {
        let mut out = Self::zero(1);
        for (m, v) in &self.terms {
            out.add_term(*m, ScalarSeries::constant(v.constant_term().clone(), 1));
        }
        out
    }

    pub fn div_h(&self) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(self.order - 1);
        for (m, v) in &self.terms {
            out.add_term(*m, v.div_h()?);
        }
        Ok(out)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut out = Self::zero(order);
        for (m, v) in &self.terms {
            out.add_term(*m, v.truncate(order));
        }
        out
    }

    /// Canonical text: one `F^a H^b E^c : series` line per term, sorted.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        for (m, c) in &self.terms {
            out.push_str(&format!("{m} : {c}\n"));
        }
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::pretty_tensor(&TensorElement::from_algebra(
            self,
        )))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceKind {
    /// The quantized enveloping algebra with its standard R-matrix.
    #[serde(rename = "uhsl2")]
    UhSl2,
    /// Undeformed `U(sl2)`, cocommutative, with `R = 1⊗1`.
    Trivial,
}

impl InstanceKind {
    pub fn name(self) -> &'static str {
        match self {
            InstanceKind::UhSl2 => "uhsl2",
            InstanceKind::Trivial => "trivial",
        }
    }
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InstanceKind {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uhsl2" => Ok(InstanceKind::UhSl2),
            "trivial" => Ok(InstanceKind::Trivial),
            other => Err(AlgebraError::UnknownInstance(other.to_string())),
        }
    }
}

/// Polynomial in `H` with series coefficients; index = power of `H`.
type HPoly = Vec<ScalarSeries>;

fn binomial(n: usize, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * int((n - i) as i64) / int((i + 1) as i64);
    }
    acc
}

/// `p(H + s)`.
fn poly_shift(p: &HPoly, s: i64) -> HPoly {
    let order = p[0].order();
    let mut out = vec![ScalarSeries::zero(order); p.len()];
    for (j, pj) in p.iter().enumerate() {
        if pj.is_zero() {
            continue;
        }
        let mut sp = Rational::one();
        for i in (0..=j).rev() {
            // coefficient of H^i in (H + s)^j is C(j, i) s^{j-i}
            let c = binomial(j, i) * &sp;
            out[i].add_assign_ref(&pj.scale(&c));
            sp *= int(s);
        }
    }
    out
}

type Cache<K, V> = RwLock<FxHashMap<K, Arc<V>>>;

/// A concrete Hopf algebra instance at a fixed truncation order.
///
/// Products, coproducts and antipodes of PBW monomials are memoized; the
/// caches are behind locks so one instance can be shared across threads.
pub struct HopfAlgebra {
    kind: InstanceKind,
    order: usize,
    k_poly: HPoly,
    k_inv_poly: HPoly,
    bracket: HPoly,
    bracket_sums: RwLock<Vec<Arc<HPoly>>>,
    products: Cache<(Pbw, Pbw), AlgebraElement>,
    coproducts: Cache<Pbw, TensorElement>,
    antipodes: Cache<Pbw, AlgebraElement>,
}

impl fmt::Debug for HopfAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HopfAlgebra")
            .field("kind", &self.kind)
            .field("order", &self.order)
            .finish()
    }
}

impl HopfAlgebra {
    pub fn new(kind: InstanceKind, order: usize) -> Arc<Self> {
        assert!(order > 0, "truncation order must be positive");
        let (k_poly, k_inv_poly, bracket) = match kind {
            InstanceKind::Trivial => {
                let one = vec![ScalarSeries::one(order)];
                let h = vec![ScalarSeries::zero(order), ScalarSeries::one(order)];
                (one.clone(), one, h)
            }
            InstanceKind::UhSl2 => (
                cartan_exponential(order, rat(1, 2)),
                cartan_exponential(order, rat(-1, 2)),
                quantum_bracket(order),
            ),
        };
        Arc::new(HopfAlgebra {
            kind,
            order,
            k_poly,
            k_inv_poly,
            bracket,
            bracket_sums: RwLock::new(Vec::new()),
            products: RwLock::default(),
            coproducts: RwLock::default(),
            antipodes: RwLock::default(),
        })
    }

    pub fn kind(&self) -> InstanceKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::one(self.order)
    }

    pub fn gen(&self, m: Pbw) -> AlgebraElement {
        AlgebraElement::generator(m, self.order)
    }

    pub fn e(&self) -> AlgebraElement {
        self.gen(Pbw::E)
    }

    pub fn f(&self) -> AlgebraElement {
        self.gen(Pbw::F)
    }

    pub fn h(&self) -> AlgebraElement {
        self.gen(Pbw::H)
    }

    /// `h^k · x`.
    pub fn hbar(&self, k: usize, x: &AlgebraElement) -> AlgebraElement {
        x.shift_h(k)
    }

    fn poly_element(&self, p: &HPoly) -> AlgebraElement {
        let mut x = AlgebraElement::zero(self.order);
        for (j, c) in p.iter().enumerate() {
            x.add_term(Pbw::new(0, j as u16, 0), c.clone());
        }
        x
    }

    /// `K = exp(hH/2)`, or `1` for the undeformed instance.
    pub fn k(&self) -> AlgebraElement {
        self.poly_element(&self.k_poly)
    }

    pub fn k_inv(&self) -> AlgebraElement {
        self.poly_element(&self.k_inv_poly)
    }

    /// `[E, F]` as a polynomial in `H`.
    pub fn ef_bracket(&self) -> AlgebraElement {
        self.poly_element(&self.bracket)
    }

    fn check(&self, x: &AlgebraElement) -> Result<(), AlgebraError> {
        if x.order() != self.order {
            return Err(AlgebraError::OrderMismatch(self.order, x.order()));
        }
        Ok(())
    }

    /// `sum_{k=0}^{e-1} [E,F](H - 2k)`, the correction in `E^e F = F E^e + P_e(H) E^{e-1}`.
    fn bracket_sum(&self, e: usize) -> Arc<HPoly> {
        if let Some(p) = self.bracket_sums.read().unwrap().get(e) {
            return p.clone();
        }
        let mut sums = self.bracket_sums.write().unwrap();
        while sums.len() <= e {
            let k = sums.len();
            let next = if k == 0 {
                vec![ScalarSeries::zero(self.order)]
            } else {
                let prev = &sums[k - 1];
                let shifted = poly_shift(&self.bracket, -2 * (k as i64 - 1));
                let len = prev.len().max(shifted.len());
                let mut p = vec![ScalarSeries::zero(self.order); len];
                for (i, c) in prev.iter().enumerate() {
                    p[i].add_assign_ref(c);
                }
                for (i, c) in shifted.iter().enumerate() {
                    p[i].add_assign_ref(c);
                }
                p
            };
            sums.push(Arc::new(next));
        }
        sums[e].clone()
    }

    fn right_mul_generator(&self, x: &AlgebraElement, g: Pbw) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.order);
        for (m, c) in x.terms() {
            match g {
                Pbw::E => out.add_term(Pbw { e: m.e + 1, ..*m }, c.clone()),
                Pbw::H => {
                    // E^e H = (H - 2e) E^e
                    out.add_term(Pbw { h: m.h + 1, ..*m }, c.clone());
                    if m.e > 0 {
                        out.add_term(*m, c.scale(&int(-2 * m.e as i64)));
                    }
                }
                Pbw::F => {
                    // H^b F = F (H - 2)^b
                    let b = m.h as usize;
                    let mut pow = Rational::one();
                    for j in (0..=b).rev() {
                        let coeff = binomial(b, j) * &pow;
                        out.add_term(Pbw::new(m.f + 1, j as u16, m.e), c.scale(&coeff));
                        pow *= int(-2);
                    }
                    if m.e > 0 {
                        let p = self.bracket_sum(m.e as usize);
                        for (j, pj) in p.iter().enumerate() {
                            if pj.is_zero() {
                                continue;
                            }
                            out.add_term(Pbw::new(m.f, m.h + j as u16, m.e - 1), c * pj);
                        }
                    }
                }
                _ => unreachable!("not a generator"),
            }
        }
        out
    }

    /// Normal-ordered product of two PBW monomials (memoized).
    pub fn mul_monomials(&self, a: Pbw, b: Pbw) -> Arc<AlgebraElement> {
        if let Some(v) = self.products.read().unwrap().get(&(a, b)) {
            return v.clone();
        }
        let value = if b.is_one() {
            AlgebraElement::generator(a, self.order)
        } else if a.is_one() {
            AlgebraElement::generator(b, self.order)
        } else if a.e == 0 && b.f == 0 {
            AlgebraElement::generator(Pbw::new(a.f, a.h + b.h, b.e), self.order)
        } else if b.f == 0 && b.h == 0 {
            AlgebraElement::generator(Pbw::new(a.f, a.h, a.e + b.e), self.order)
        } else {
            let (rest, g) = b.split_last().expect("b is not the unit");
            let partial = self.mul_monomials(a, rest);
            self.right_mul_generator(&partial, g)
        };
        let value = Arc::new(value);
        self.products.write().unwrap().insert((a, b), value.clone());
        value
    }

    pub fn try_mul(
        &self,
        x: &AlgebraElement,
        y: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        let n = self.order;
        let mut out = AlgebraElement::zero(n);
        for (mx, cx) in x.terms() {
            let lx = cx.low_degree();
            for (my, cy) in y.terms() {
                if lx + cy.low_degree() >= n {
                    continue;
                }
                let c = cx * cy;
                if c.is_zero() {
                    continue;
                }
                let prod = self.mul_monomials(*mx, *my);
                for (m, v) in prod.terms() {
                    if v.is_one() {
                        out.add_term(*m, c.clone());
                    } else {
                        out.add_term(*m, &c * v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Normal-ordered product; panics on an order mismatch.
    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.try_mul(x, y).expect("order mismatch")
    }

    pub fn commutator(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.mul(x, y).sub(&self.mul(y, x))
    }

    pub fn pow(&self, x: &AlgebraElement, e: usize) -> AlgebraElement {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn counit(&self, x: &AlgebraElement) -> ScalarSeries {
        x.counit()
    }

    fn generator_coproduct(&self, g: Pbw) -> TensorElement {
        let one = self.one();
        let x = self.gen(g);
        match (self.kind, g) {
            (InstanceKind::UhSl2, Pbw::E) => {
                TensorElement::pure(&[&x, &self.k()]).add(&TensorElement::pure(&[&one, &x]))
            }
            (InstanceKind::UhSl2, Pbw::F) => {
                TensorElement::pure(&[&x, &one]).add(&TensorElement::pure(&[&self.k_inv(), &x]))
            }
            _ => TensorElement::pure(&[&x, &one]).add(&TensorElement::pure(&[&one, &x])),
        }
    }

    /// `Δ` of a PBW monomial, built multiplicatively from the generators.
    pub fn coproduct_monomial(&self, m: Pbw) -> Arc<TensorElement> {
        if let Some(v) = self.coproducts.read().unwrap().get(&m) {
            return v.clone();
        }
        let value = match m.split_last() {
            None => TensorElement::unit(2, self.order),
            Some((rest, g)) => {
                let left = self.coproduct_monomial(rest);
                self.tensor_mul(&left, &self.generator_coproduct(g))
            }
        };
        let value = Arc::new(value);
        self.coproducts.write().unwrap().insert(m, value.clone());
        value
    }

    pub fn coproduct(&self, x: &AlgebraElement) -> TensorElement {
        let n = self.order;
        let mut out = TensorElement::zero(2, n);
        for (m, c) in x.terms() {
            let d = self.coproduct_monomial(*m);
            for (k, v) in d.terms() {
                if c.low_degree() + v.low_degree() < n {
                    out.add_term(k.clone(), c * v);
                }
            }
        }
        out
    }

    fn generator_antipode(&self, g: Pbw) -> AlgebraElement {
        let x = self.gen(g);
        match (self.kind, g) {
            (InstanceKind::UhSl2, Pbw::E) => self.mul(&x, &self.k_inv()).neg(),
            (InstanceKind::UhSl2, Pbw::F) => self.mul(&self.k(), &x).neg(),
            _ => x.neg(),
        }
    }

    /// Antipode of a PBW monomial; `S` reverses products.
    pub fn antipode_monomial(&self, m: Pbw) -> Arc<AlgebraElement> {
        if let Some(v) = self.antipodes.read().unwrap().get(&m) {
            return v.clone();
        }
        let value = match m.split_last() {
            None => self.one(),
            Some((rest, g)) => {
                let tail = self.antipode_monomial(rest);
                self.mul(&self.generator_antipode(g), &tail)
            }
        };
        let value = Arc::new(value);
        self.antipodes.write().unwrap().insert(m, value.clone());
        value
    }

    pub fn antipode(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.order);
        for (m, c) in x.terms() {
            out = out.add(&self.antipode_monomial(*m).scale(c));
        }
        out
    }

    /// Componentwise product in `H^{⊗n}`.
    pub fn tensor_mul(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        a.check_shape(b).expect("tensor shape mismatch");
        let n = self.order;
        let rank = a.rank();
        let mut out = TensorElement::zero(rank, n);
        let mut legs: Vec<Arc<AlgebraElement>> = Vec::with_capacity(rank);
        for (ka, ca) in a.terms() {
            let la = ca.low_degree();
            for (kb, cb) in b.terms() {
                if la + cb.low_degree() >= n {
                    continue;
                }
                let c = ca * cb;
                if c.is_zero() {
                    continue;
                }
                legs.clear();
                for i in 0..rank {
                    legs.push(self.mul_monomials(ka[i], kb[i]));
                }
                let mut key = Key::with_capacity(rank);
                expand_legs(&legs, 0, &mut key, &c, &mut out);
            }
        }
        out
    }

    pub fn try_tensor_mul(
        &self,
        a: &TensorElement,
        b: &TensorElement,
    ) -> Result<TensorElement, AlgebraError> {
        a.check_shape(b)?;
        if a.order() != self.order {
            return Err(AlgebraError::OrderMismatch(self.order, a.order()));
        }
        Ok(self.tensor_mul(a, b))
    }

    /// Product of a sequence of tensors, left to right.
    pub fn tensor_product_of(&self, factors: &[TensorElement], rank: usize) -> TensorElement {
        let mut acc = TensorElement::unit(rank, self.order);
        for f in factors {
            acc = self.tensor_mul(&acc, f);
        }
        acc
    }

    pub fn tensor_commutator(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        self.tensor_mul(a, b).sub(&self.tensor_mul(b, a))
    }

    /// `sum_{k<N} t^k / k!` for `t` with positive valuation.
    pub fn tensor_exp(&self, t: &TensorElement) -> Result<TensorElement, AlgebraError> {
        if !t.valuation().meets(1) {
            return Err(AlgebraError::Precondition(
                "exponential argument must vanish at h = 0".into(),
            ));
        }
        let mut acc = TensorElement::unit(t.rank(), self.order);
        let mut term = acc.clone();
        for k in 1..self.order {
            term = self
                .tensor_mul(&term, t)
                .scale_rational(&int(k as i64).recip());
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Apply `Δ` to leg `leg` of a tensor (rank grows by one).
    pub fn coproduct_on_leg(&self, t: &TensorElement, leg: usize) -> TensorElement {
        t.expand_leg(leg, 2, |m| self.coproduct_monomial(m))
    }

    /// Apply `ε` to leg `leg` of a tensor (rank drops by one).
    pub fn counit_on_leg(&self, t: &TensorElement, leg: usize) -> TensorElement {
        t.contract_leg(leg, |m| m.is_one().then(Rational::one))
    }

    /// Apply `S` to leg `leg`.
    pub fn antipode_on_leg(&self, t: &TensorElement, leg: usize) -> TensorElement {
        t.expand_leg(leg, 1, |m| {
            Arc::new(TensorElement::from_algebra(&self.antipode_monomial(m)))
        })
    }

    /// The multiplication map `H ⊗ H → H`.
    pub fn multiply_legs(&self, t: &TensorElement) -> Result<AlgebraElement, AlgebraError> {
        if t.rank() != 2 {
            return Err(AlgebraError::RankMismatch(2, t.rank()));
        }
        let mut out = AlgebraElement::zero(self.order);
        for (k, c) in t.terms() {
            let p = self.mul_monomials(k[0], k[1]);
            out = out.add(&p.scale(c));
        }
        Ok(out)
    }
}

fn expand_legs(
    legs: &[Arc<AlgebraElement>],
    i: usize,
    key: &mut Key,
    coeff: &ScalarSeries,
    out: &mut TensorElement,
) {
    if i == legs.len() {
        out.add_term(key.clone(), coeff.clone());
        return;
    }
    let n = coeff.order();
    let lc = coeff.low_degree();
    for (m, v) in legs[i].terms() {
        key.push(*m);
        if v.is_one() {
            expand_legs(legs, i + 1, key, coeff, out);
        } else if lc + v.low_degree() < n {
            let c = coeff * v;
            if !c.is_zero() {
                expand_legs(legs, i + 1, key, &c, out);
            }
        }
        key.pop();
    }
}

/// `exp(s·h·H)` as a polynomial in `H`: coefficient of `H^j` is `(s h)^j / j!`.
fn cartan_exponential(order: usize, s: Rational) -> HPoly {
    let step = ScalarSeries::monomial(s, 1, order);
    let mut out = Vec::with_capacity(order);
    let mut term = ScalarSeries::one(order);
    for j in 0..order {
        if j > 0 {
            term = (&term * &step).scale(&int(j as i64).recip());
        }
        out.push(term.clone());
    }
    out
}

/// `(K - K^-1)/(q - q^-1)` as a polynomial in `H`, computed as
/// `((K - K^-1)/h) · ((q - q^-1)/h)^-1`. Both numerators are formed one order
/// higher so that the exact division by `h` lands on order `N`.
fn quantum_bracket(order: usize) -> HPoly {
    let hi = order + 1;
    let k_pos = cartan_exponential(hi, rat(1, 2));
    let k_neg = cartan_exponential(hi, rat(-1, 2));
    let half_h = ScalarSeries::monomial(rat(1, 2), 1, hi);
    let q = half_h.exp().expect("h/2 has no constant term");
    let q_inv = (-&half_h).exp().expect("h/2 has no constant term");
    let denom = (&q - &q_inv)
        .div_h()
        .expect("q - 1/q is divisible by h")
        .inv()
        .expect("(q - 1/q)/h is a unit");
    k_pos
        .iter()
        .zip(&k_neg)
        .map(|(a, b)| {
            let num = (a - b).div_h().expect("K - 1/K is divisible by h");
            &num * &denom
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(text: &str, n: usize) -> ScalarSeries {
        ScalarSeries::parse(text, n).unwrap()
    }

    #[test]
    fn unit_law() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 4);
        let x = alg.mul(&alg.e(), &alg.f()).add(&alg.h());
        assert_eq!(alg.mul(&alg.one(), &x), x);
        assert_eq!(alg.mul(&x, &alg.one()), x);
    }

    #[test]
    fn cartan_relations() {
        // [H, E] = 2E by one application of the rewrite rule E H = (H - 2) E
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 3);
        let he = alg.commutator(&alg.h(), &alg.e());
        assert_eq!(he, alg.e().scale_rational(&int(2)));
        let hf = alg.commutator(&alg.h(), &alg.f());
        assert_eq!(hf, alg.f().scale_rational(&int(-2)));
    }

    #[test]
    fn ef_commutator_specializes_to_h() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 4);
        let ef = alg.commutator(&alg.e(), &alg.f());
        assert_eq!(ef.specialize_h0(), AlgebraElement::generator(Pbw::H, 1));
        // first correction: [H]_q = H + h^2 (H^3 - H)/24 + O(h^4)
        assert_eq!(ef.coefficient(Pbw::H).unwrap(), &series("1 - 1/24*h^2", 4));
        assert_eq!(
            ef.coefficient(Pbw::new(0, 3, 0)).unwrap(),
            &series("1/24*h^2", 4)
        );
    }

    #[test]
    fn k_specializes_to_one() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 5);
        assert_eq!(alg.k().specialize_h0(), AlgebraElement::one(1));
        assert_eq!(alg.mul(&alg.k(), &alg.k_inv()), alg.one());
    }

    #[test]
    fn specialization_drops_higher_orders() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 3);
        assert!(alg.e().shift_h(1).specialize_h0().is_zero());
        let x = alg.e().add(&alg.f().shift_h(1));
        assert_eq!(x.specialize_h0(), AlgebraElement::generator(Pbw::E, 1));
    }

    #[test]
    fn counit_examples() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 3);
        assert!(alg.counit(&alg.one()).is_one());
        assert!(alg.counit(&alg.mul(&alg.e(), &alg.f())).is_zero());
    }

    #[test]
    fn coproduct_examples() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 3);
        assert_eq!(alg.coproduct(&alg.one()), TensorElement::unit(2, 3));
        let one = alg.one();
        let h = alg.h();
        let expected = TensorElement::pure(&[&h, &one]).add(&TensorElement::pure(&[&one, &h]));
        assert_eq!(alg.coproduct(&h), expected);
    }

    #[test]
    fn antipode_examples() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 3);
        assert_eq!(alg.antipode(&alg.one()), alg.one());
        assert_eq!(alg.antipode(&alg.h()), alg.h().neg());
        let de = alg.coproduct(&alg.e());
        let s = alg.multiply_legs(&alg.antipode_on_leg(&de, 0)).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn undeformed_relation() {
        let alg = HopfAlgebra::new(InstanceKind::Trivial, 2);
        assert_eq!(alg.commutator(&alg.e(), &alg.f()), alg.h());
        // E^2 F = F E^2 + 2 (H - 1) E
        let e2f = alg.mul(&alg.pow(&alg.e(), 2), &alg.f());
        let expected = alg
            .mul(&alg.f(), &alg.pow(&alg.e(), 2))
            .add(&alg.mul(&alg.h(), &alg.e()).scale_rational(&int(2)))
            .sub(&alg.e().scale_rational(&int(2)));
        assert_eq!(e2f, expected);
    }

    #[test]
    fn order_mismatch_is_reported() {
        let alg = HopfAlgebra::new(InstanceKind::UhSl2, 3);
        let x = AlgebraElement::generator(Pbw::E, 4);
        assert_eq!(
            alg.try_mul(&x, &alg.e()),
            Err(AlgebraError::OrderMismatch(3, 4))
        );
    }

    #[test]
    fn pbw_degree_enumeration() {
        assert_eq!(Pbw::up_to_degree(3).len(), 20);
        assert_eq!(Pbw::up_to_degree(0), vec![Pbw::ONE]);
    }
}
