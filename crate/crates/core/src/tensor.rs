//! Sparse tensors over PBW monomials.
//!
//! A [`TensorElement`] of rank `n` is an element of `H^{⊗n}`: a finite sum of
//! tuples of PBW monomials with [`ScalarSeries`] coefficients. No stored
//! coefficient is ever the zero series. Products need the multiplication of a
//! concrete algebra and live on [`HopfAlgebra`](crate::hopf::HopfAlgebra).

use std::fmt;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::AlgebraError;
use crate::hopf::{AlgebraElement, Pbw};
use crate::series::{Rational, ScalarSeries, Valuation};

pub type Key = SmallVec<[Pbw; 8]>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    rank: usize,
    order: usize,
    terms: FxHashMap<Key, ScalarSeries>,
}

impl TensorElement {
    pub fn zero(rank: usize, order: usize) -> Self {
        assert!(order > 0, "truncation order must be positive");
        TensorElement {
            rank,
            order,
            terms: FxHashMap::default(),
        }
    }

    /// `1 ⊗ ... ⊗ 1` with `rank` factors.
    pub fn unit(rank: usize, order: usize) -> Self {
        let mut t = Self::zero(rank, order);
        t.terms.insert(unit_key(rank), ScalarSeries::one(order));
        t
    }

    pub fn monomial(key: &[Pbw], coeff: ScalarSeries) -> Self {
        let mut t = Self::zero(key.len(), coeff.order());
        t.add_term(Key::from_slice(key), coeff);
        t
    }

    /// View an algebra element as a rank-one tensor.
    pub fn from_algebra(x: &AlgebraElement) -> Self {
        let mut t = Self::zero(1, x.order());
        for (m, c) in x.terms() {
            t.terms.insert(smallvec::smallvec![*m], c.clone());
        }
        t
    }

    /// `x_1 ⊗ x_2 ⊗ ... ⊗ x_k`.
    pub fn pure(factors: &[&AlgebraElement]) -> Self {
        assert!(!factors.is_empty());
        let order = factors[0].order();
        let mut acc = Self::unit(0, order);
        for x in factors {
            acc = acc.otimes(&Self::from_algebra(x));
        }
        acc
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.order
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

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &ScalarSeries)> {
        self.terms.iter()
    }

    /// Terms in the canonical lexicographic order of their monomial tuples.
    pub fn sorted_terms(&self) -> Vec<(&Key, &ScalarSeries)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn coefficient(&self, key: &[Pbw]) -> Option<&ScalarSeries> {
        self.terms.get(key)
    }

    /// Accumulate `coeff` onto `key`, keeping the sparse form canonical.
    pub fn add_term(&mut self, key: Key, coeff: ScalarSeries) {
        debug_assert_eq!(key.len(), self.rank);
        debug_assert_eq!(coeff.order(), self.order);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&coeff);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub(crate) fn sub_term(&mut self, key: Key, coeff: &ScalarSeries) {
        self.add_term(key, -coeff);
    }

    pub fn check_shape(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.order != other.order {
            return Err(AlgebraError::OrderMismatch(self.order, other.order));
        }
        if self.rank != other.rank {
            return Err(AlgebraError::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.sub_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("tensor shape mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("tensor shape mismatch")
    }

    pub fn neg(&self) -> Self {
        self.scale_rational(&-Rational::from_integer(1.into()))
    }

    pub fn scale(&self, c: &ScalarSeries) -> Self {
        let mut out = Self::zero(self.rank, self.order);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.rank, self.order);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.scale(c));
        }
        out
    }

    /// Minimum coefficient valuation; `AtLeast(N)` for the zero tensor.
    pub fn valuation(&self) -> Valuation {
        self.terms
            .values()
            .map(ScalarSeries::valuation)
            .min()
            .unwrap_or(Valuation::AtLeast(self.order))
    }

    /// Tensor product `self ⊗ other` (ranks add).
    pub fn otimes(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "tensor order mismatch");
        let mut out = Self::zero(self.rank + other.rank, self.order);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut key = ka.clone();
                key.extend_from_slice(kb);
                out.add_term(key, ca * cb);
            }
        }
        out
    }

    /// Leg permutation: output leg `i` carries input leg `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rank);
        let mut out = Self::zero(self.rank, self.order);
        for (k, c) in &self.terms {
            let key: Key = perm.iter().map(|&p| k[p]).collect();
            out.add_term(key, c.clone());
        }
        out
    }

    /// Swap legs `i` and `j` (0-based).
    pub fn swap_legs(&self, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..self.rank).collect();
        perm.swap(i, j);
        self.permuted(&perm)
    }

    /// The flip `a ⊗ b ↦ b ⊗ a` on a rank-two tensor.
    pub fn flip(&self) -> Self {
        assert_eq!(self.rank, 2);
        self.swap_legs(0, 1)
    }

    /// Place input leg `j` at output position `positions[j]` inside a tensor of
    /// rank `rank`; all other positions carry the unit. Positions are 0-based
    /// and need not be increasing (`R_{3,2}` places the legs in reverse).
    pub fn place(&self, positions: &[usize], rank: usize) -> Result<Self, AlgebraError> {
        if positions.len() != self.rank {
            return Err(AlgebraError::RankMismatch(positions.len(), self.rank));
        }
        let mut seen = vec![false; rank];
        for &p in positions {
            if p >= rank || seen[p] {
                return Err(AlgebraError::BadPositions(positions.to_vec(), rank));
            }
            seen[p] = true;
        }
        let mut out = Self::zero(rank, self.order);
        for (k, c) in &self.terms {
            let mut key = unit_key(rank);
            for (j, &p) in positions.iter().enumerate() {
                key[p] = k[j];
            }
            out.add_term(key, c.clone());
        }
        Ok(out)
    }

    /// Replace leg `leg` by the tensor `f(m)` of rank `width`, for every term.
    pub fn expand_leg<F>(&self, leg: usize, width: usize, mut f: F) -> Self
    where
        F: FnMut(Pbw) -> std::sync::Arc<TensorElement>,
    {
        let n = self.order;
        let mut out = Self::zero(self.rank - 1 + width, n);
        for (k, c) in &self.terms {
            let image = f(k[leg]);
            let lo = c.low_degree();
            for (ki, ci) in image.terms() {
                if lo + ci.low_degree() >= n {
                    continue;
                }
                let mut key = Key::with_capacity(self.rank - 1 + width);
                key.extend_from_slice(&k[..leg]);
                key.extend_from_slice(ki);
                key.extend_from_slice(&k[leg + 1..]);
                out.add_term(key, c * ci);
            }
        }
        out
    }

    /// Apply a scalar-valued map (e.g. the counit) to leg `leg`.
    pub fn contract_leg<F>(&self, leg: usize, mut f: F) -> Self
    where
        F: FnMut(Pbw) -> Option<Rational>,
    {
        let mut out = Self::zero(self.rank - 1, self.order);
        for (k, c) in &self.terms {
            if let Some(v) = f(k[leg]) {
                let mut key = k.clone();
                key.remove(leg);
                out.add_term(key, c.scale(&v));
            }
        }
        out
    }

    /// Keep only the `h^0` part; the result has order 1.
    pub fn specialize_h0(&self) -> Self {
        self.coefficient_at(0)
    }

    /// The rational coefficient of `h^k`, as an order-1 tensor.
    pub fn coefficient_at(&self, k: usize) -> Self {
        let mut out = Self::zero(self.rank, 1);
        for (key, c) in &self.terms {
            out.add_term(key.clone(), ScalarSeries::constant(c.coeff(k).clone(), 1));
        }
        out
    }

    /// Exact division by `h`; the order drops by one.
    pub fn div_h(&self) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(self.rank, self.order - 1);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.div_h()?);
        }
        Ok(out)
    }

    /// Reinterpret at a lower truncation order.
    pub fn truncate(&self, order: usize) -> Self {
        let mut out = Self::zero(self.rank, order);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.truncate(order));
        }
        out
    }

    /// Rank-one tensors are algebra elements.
    pub fn to_algebra(&self) -> Result<AlgebraElement, AlgebraError> {
        if self.rank != 1 {
            return Err(AlgebraError::RankMismatch(1, self.rank));
        }
        let mut x = AlgebraElement::zero(self.order);
        for (k, c) in &self.terms {
            x.add_term(k[0], c.clone());
        }
        Ok(x)
    }

    /// Canonical rendering: one `m1 | m2 | ... : series` line per term.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.sorted_terms() {
            let legs: Vec<String> = k.iter().map(Pbw::to_string).collect();
            out.push_str(&legs.join(" | "));
            out.push_str(" : ");
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out
    }
}

pub(crate) fn unit_key(rank: usize) -> Key {
    smallvec::smallvec![Pbw::ONE; rank]
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::pretty_tensor(self))
    }
}
