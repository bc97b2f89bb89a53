//! Iterated coproducts, subset coproducts and their inclusion-exclusion
//! combinations, written once for any coalgebra whose elements occupy a fixed
//! number of tensor legs.
//!
//! For `(H, Δ, 1)` a block is one leg. For `(H⊗H, Δ̃, 1⊗1)` a block is two legs
//! and `Δ̃(a⊗b) = a₁⊗b₁⊗a₂⊗b₂`, so `(H⊗H)^{⊗n}` lives in `H^{⊗2n}`.
//!
//! For `Σ = {i₁ < … < i_k} ⊆ {1..n}`:
//!
//! ```text
//! Δ_Σ = j_Σ ∘ Δ^k          δ_Σ = Σ_{Σ'⊆Σ} (-1)^{|Σ|-|Σ'|} Δ_{Σ'}
//! ```
//!
//! where `j_Σ` puts block `m` at position `i_m` and units elsewhere, and
//! `Δ^0 = ε`.

use std::sync::{Arc, RwLock};

use rustc_hash::FxHashMap;

use crate::error::AlgebraError;
use crate::hopf::{HopfAlgebra, Pbw};
use crate::report::{Check, VerificationReport};
use crate::series::{ScalarSeries, Valuation};
use crate::subset::SubsetIndex;
use crate::tensor::{Key, TensorElement};

pub trait BlockCoalgebra: Sync {
    fn algebra(&self) -> &HopfAlgebra;

    /// Number of tensor legs taken by one element.
    fn block(&self) -> usize;

    /// Coproduct of a basis element (a tuple of `block()` monomials); the
    /// result has rank `2 * block()`.
    fn coproduct_key(&self, key: &[Pbw]) -> Arc<TensorElement>;

    fn order(&self) -> usize {
        self.algebra().order()
    }

    fn unit(&self) -> TensorElement {
        TensorElement::unit(self.block(), self.order())
    }

    /// Coproduct of an element of rank `block()`.
    fn coproduct_block(&self, x: &TensorElement) -> TensorElement {
        expand_first_block(self, x)
    }

    /// `ε` on every leg; the counit of a PBW tuple is 1 iff all legs are units.
    fn counit(&self, x: &TensorElement) -> ScalarSeries {
        x.terms()
            .filter(|(k, _)| k.iter().all(|m| m.is_one()))
            .map(|(_, c)| c.clone())
            .fold(ScalarSeries::zero(x.order()), |a, c| &a + &c)
    }
}

impl BlockCoalgebra for HopfAlgebra {
    fn algebra(&self) -> &HopfAlgebra {
        self
    }

    fn block(&self) -> usize {
        1
    }

    fn coproduct_key(&self, key: &[Pbw]) -> Arc<TensorElement> {
        self.coproduct_monomial(key[0])
    }
}

/// `H⊗H` with the coproduct `Δ̃ = σ₂₃ ∘ (Δ⊗Δ)` and unit `I = 1⊗1`.
pub struct Doubled<'a> {
    alg: &'a HopfAlgebra,
    cache: RwLock<FxHashMap<(Pbw, Pbw), Arc<TensorElement>>>,
}

impl<'a> Doubled<'a> {
    pub fn new(alg: &'a HopfAlgebra) -> Self {
        Doubled {
            alg,
            cache: RwLock::default(),
        }
    }
}

impl BlockCoalgebra for Doubled<'_> {
    fn algebra(&self) -> &HopfAlgebra {
        self.alg
    }

    fn block(&self) -> usize {
        2
    }

    fn coproduct_key(&self, key: &[Pbw]) -> Arc<TensorElement> {
        let pair = (key[0], key[1]);
        if let Some(v) = self.cache.read().unwrap().get(&pair) {
            return v.clone();
        }
        let da = self.alg.coproduct_monomial(pair.0);
        let db = self.alg.coproduct_monomial(pair.1);
        // a₁ ⊗ a₂ ⊗ b₁ ⊗ b₂  ->  a₁ ⊗ b₁ ⊗ a₂ ⊗ b₂
        let value = Arc::new(da.otimes(&db).permuted(&[0, 2, 1, 3]));
        self.cache.write().unwrap().insert(pair, value.clone());
        value
    }
}

/// `Δ̃` of a rank-2 tensor, as a rank-4 tensor.
pub fn tilde_coproduct(
    alg: &HopfAlgebra,
    x: &TensorElement,
) -> Result<TensorElement, AlgebraError> {
    if x.rank() != 2 {
        return Err(AlgebraError::RankMismatch(2, x.rank()));
    }
    Ok(Doubled::new(alg).coproduct_block(x))
}

/// Apply the coproduct to the first block of `t`.
fn expand_first_block<C: BlockCoalgebra + ?Sized>(c: &C, t: &TensorElement) -> TensorElement {
    let b = c.block();
    let n = t.order();
    let mut out = TensorElement::zero(t.rank() + b, n);
    for (k, coeff) in t.terms() {
        let image = c.coproduct_key(&k[..b]);
        let lo = coeff.low_degree();
        for (ki, ci) in image.terms() {
            if lo + ci.low_degree() >= n {
                continue;
            }
            let mut key = Key::with_capacity(t.rank() + b);
            key.extend_from_slice(ki);
            key.extend_from_slice(&k[b..]);
            out.add_term(
                key,
                if ci.is_one() {
                    coeff.clone()
                } else {
                    coeff * ci
                },
            );
        }
    }
    out
}

fn check_block<C: BlockCoalgebra + ?Sized>(c: &C, x: &TensorElement) -> Result<(), AlgebraError> {
    if x.rank() != c.block() {
        return Err(AlgebraError::RankMismatch(c.block(), x.rank()));
    }
    if x.order() != c.order() {
        return Err(AlgebraError::OrderMismatch(c.order(), x.order()));
    }
    Ok(())
}

/// `Δ^k(x)` for `k ≥ 1`; `Δ^1 = Id` and `Δ^k = (Δ ⊗ Id) ∘ Δ^{k-1}`.
pub fn delta_power<C: BlockCoalgebra + ?Sized>(
    c: &C,
    x: &TensorElement,
    k: usize,
) -> Result<TensorElement, AlgebraError> {
    check_block(c, x)?;
    if k == 0 {
        return Err(AlgebraError::Precondition(
            "Δ^0 is the counit; use the counit directly".into(),
        ));
    }
    let mut acc = x.clone();
    for _ in 1..k {
        acc = expand_first_block(c, &acc);
    }
    Ok(acc)
}

/// `j_Σ`: block `m` of `t` goes to block position `Σ[m]` of a tensor with
/// `|ambient|` blocks.
pub fn embed_j_sigma(
    t: &TensorElement,
    block: usize,
    sigma: &SubsetIndex,
) -> Result<TensorElement, AlgebraError> {
    if t.rank() != block * sigma.len() {
        return Err(AlgebraError::SubsetSize {
            expected: t.rank() / block.max(1),
            got: sigma.len(),
        });
    }
    let positions: Vec<usize> = sigma
        .members()
        .iter()
        .flat_map(|&i| (0..block).map(move |l| (i - 1) * block + l))
        .collect();
    t.place(&positions, block * sigma.ambient())
}

/// The iterated coproducts `Δ^0(x), …, Δ^{max}(x)` of one element, from which
/// every `Δ_Σ(x)` and `δ_Σ(x)` with `|Σ| ≤ max` is assembled by embedding.
/// `Δ^0(x)` is stored as the rank-0 tensor `ε(x)`.
pub struct SubsetCoproducts {
    block: usize,
    powers: Vec<TensorElement>,
}

impl SubsetCoproducts {
    pub fn new<C: BlockCoalgebra + ?Sized>(
        c: &C,
        x: &TensorElement,
        max: usize,
    ) -> Result<Self, AlgebraError> {
        check_block(c, x)?;
        let mut powers = Vec::with_capacity(max + 1);
        powers.push(TensorElement::unit(0, x.order()).scale(&c.counit(x)));
        if max >= 1 {
            powers.push(x.clone());
        }
        for k in 2..=max {
            let next = expand_first_block(c, &powers[k - 1]);
            powers.push(next);
        }
        Ok(SubsetCoproducts {
            block: c.block(),
            powers,
        })
    }

    pub fn max(&self) -> usize {
        self.powers.len() - 1
    }

    pub fn power(&self, k: usize) -> &TensorElement {
        &self.powers[k]
    }

    fn check(&self, sigma: &SubsetIndex) -> Result<(), AlgebraError> {
        if sigma.len() > self.max() {
            return Err(AlgebraError::Precondition(format!(
                "subset {sigma} exceeds the precomputed coproduct depth {}",
                self.max()
            )));
        }
        Ok(())
    }

    /// `Δ_Σ(x)`.
    pub fn upper(&self, sigma: &SubsetIndex) -> Result<TensorElement, AlgebraError> {
        self.check(sigma)?;
        embed_j_sigma(&self.powers[sigma.len()], self.block, sigma)
    }

    /// `δ_Σ(x)`, the literal alternating sum over all `Σ' ⊆ Σ`.
    pub fn lower(&self, sigma: &SubsetIndex) -> Result<TensorElement, AlgebraError> {
        self.check(sigma)?;
        let order = self.powers[0].order();
        let mut out = TensorElement::zero(self.block * sigma.ambient(), order);
        for sub in sigma.subsets() {
            let term = self.upper(&sub)?;
            if (sigma.len() - sub.len()).is_multiple_of(2) {
                out = out.add(&term);
            } else {
                out = out.sub(&term);
            }
        }
        Ok(out)
    }

    /// `δ_n(x) = δ_{{1..n}}(x)`.
    pub fn delta_n(&self, n: usize) -> Result<TensorElement, AlgebraError> {
        self.lower(&SubsetIndex::full(n))
    }
}

pub fn delta_sigma_upper<C: BlockCoalgebra + ?Sized>(
    c: &C,
    x: &TensorElement,
    sigma: &SubsetIndex,
) -> Result<TensorElement, AlgebraError> {
    SubsetCoproducts::new(c, x, sigma.len())?.upper(sigma)
}

pub fn delta_sigma_lower<C: BlockCoalgebra + ?Sized>(
    c: &C,
    x: &TensorElement,
    sigma: &SubsetIndex,
) -> Result<TensorElement, AlgebraError> {
    SubsetCoproducts::new(c, x, sigma.len())?.lower(sigma)
}

/// Compare `Δ_Σ(x)` with `Σ_{Σ'⊆Σ} δ_{Σ'}(x)`.
pub fn mobius_roundtrip<C: BlockCoalgebra + ?Sized>(
    c: &C,
    x: &TensorElement,
    sigma: &SubsetIndex,
    label: &str,
) -> VerificationReport {
    let mut report = VerificationReport::new("mobius");
    let inputs = format!("x = {label}, Σ = {sigma}, n = {}", sigma.ambient());
    let result = (|| {
        let sc = SubsetCoproducts::new(c, x, sigma.len())?;
        let lhs = sc.upper(sigma)?;
        let mut rhs = TensorElement::zero(lhs.rank(), lhs.order());
        for sub in sigma.subsets() {
            rhs = rhs.add(&sc.lower(&sub)?);
        }
        Ok::<_, AlgebraError>(lhs.sub(&rhs).valuation())
    })();
    match result {
        Ok(v) => report.push(Check::valuation("Δ_Σ = Σ δ_Σ'", inputs, v, c.order())),
        Err(e) => report.push(Check::failed("Δ_Σ = Σ δ_Σ'", inputs, e.to_string())),
    }
    report
}

/// Valuation of a tensor (minimum over coefficients, `>= N` for zero).
pub fn tensor_valuation(t: &TensorElement) -> Valuation {
    t.valuation()
}

/// The signed count `Σ_{Σ'⊆Σ} (-1)^{|Σ|-|Σ'|}`, which is 1 for `Σ = ∅` and 0
/// otherwise; used as a sanity check for the sign convention.
pub fn alternating_subset_count(sigma: &SubsetIndex) -> i64 {
    sigma
        .subsets()
        .iter()
        .map(|s| {
            if (sigma.len() - s.len()).is_multiple_of(2) {
                1
            } else {
                -1
            }
        })
        .sum()
}

/// `(id - ε)^{⊗n} ∘ Δ^n`: keep only the terms of `Δ^n(x)` with no unit block.
/// Algebraically equal to `δ_n`; used as an independent route in tests.
pub fn reduced_delta_n<C: BlockCoalgebra + ?Sized>(
    c: &C,
    x: &TensorElement,
    n: usize,
) -> Result<TensorElement, AlgebraError> {
    let b = c.block();
    if n == 0 {
        return Ok(TensorElement::unit(0, x.order()).scale(&c.counit(x)));
    }
    let full = delta_power(c, x, n)?;
    let mut out = TensorElement::zero(full.rank(), full.order());
    for (k, v) in full.terms() {
        if k.chunks(b).all(|blk| !blk.iter().all(|m| m.is_one())) {
            out.add_term(k.clone(), v.clone());
        }
    }
    Ok(out)
}
