//! Truncated power series in `h` with exact rational coefficients.
//!
//! A [`ScalarSeries`] of order `N` is an element of `Q[h]/h^N`. It always stores
//! exactly `N` coefficients; coefficient `k` multiplies `h^k`. Two series can only
//! be combined when their orders agree.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Exact rational numbers used for every coefficient.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("truncation order must be positive")]
    ZeroOrder,
    #[error("series has zero constant term and is not invertible")]
    NotInvertible,
    #[error("exponential needs a series without constant term")]
    NonzeroConstant,
    #[error("series is not divisible by h")]
    NotDivisibleByH,
    #[error("cannot parse series `{0}`")]
    Parse(String),
}

/// h-adic valuation, certified only up to the truncation order.
///
/// `AtLeast(N)` is the sentinel returned for elements that vanish modulo `h^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Exact(usize),
    AtLeast(usize),
}

impl Valuation {
    fn key(self) -> (usize, bool) {
        match self {
            Valuation::Exact(v) => (v, false),
            Valuation::AtLeast(v) => (v, true),
        }
    }

    /// Whether the valuation is known to be at least `required`.
    pub fn meets(self, required: usize) -> bool {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v >= required,
        }
    }

    pub fn is_vanishing(self) -> bool {
        matches!(self, Valuation::AtLeast(_))
    }

    /// Lower bound carried by this valuation.
    pub fn bound(self) -> usize {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Exact(v) => serializer.serialize_u64(*v as u64),
            Valuation::AtLeast(_) => serializer.serialize_str(&self.to_string()),
        }
    }
}

/// An element of `Q[h]/h^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarSeries {
    coeffs: Vec<Rational>,
}

impl ScalarSeries {
    pub fn zero(order: usize) -> Self {
        assert!(order > 0, "truncation order must be positive");
        ScalarSeries {
            coeffs: vec![Rational::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * h^power`, which is zero when `power >= order`.
    pub fn monomial(c: Rational, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power < order {
            s.coeffs[power] = c;
        }
        s
    }

    /// The series `h` itself.
    pub fn h(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::ZeroOrder);
        }
        Ok(ScalarSeries { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    /// The value at `h = 0`.
    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => Valuation::Exact(k),
            None => Valuation::AtLeast(self.order()),
        }
    }

    /// Index of the first nonzero coefficient, `order()` for the zero series.
    pub(crate) fn low_degree(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len())
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
        Ok(out)
    }

    /// Cauchy product truncated at `h^N`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let n = self.order();
        let mut out = vec![Rational::zero(); n];
        let lo_a = self.low_degree();
        let lo_b = other.low_degree();
        if lo_a + lo_b >= n {
            return Ok(ScalarSeries { coeffs: out });
        }
        for i in lo_a..n {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in lo_b..n - i {
                let b = &other.coeffs[j];
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(ScalarSeries { coeffs: out })
    }

    pub(crate) fn add_assign_ref(&mut self, other: &Self) {
        assert_eq!(self.order(), other.order(), "series order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ScalarSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Two-sided inverse modulo `h^N`.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let n = self.order();
        let inv0 = a0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += a * &out[k - j];
                }
            }
            out.push(-(acc * &inv0));
        }
        Ok(ScalarSeries { coeffs: out })
    }

    /// `sum_{k<N} a^k / k!`; defined only when the constant term vanishes.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        let n = self.order();
        let mut acc = Self::one(n);
        let mut term = Self::one(n);
        for k in 1..n {
            term = term.checked_mul(self)?.scale(&int(k as i64).recip());
            if term.is_zero() {
                break;
            }
            acc.add_assign_ref(&term);
        }
        Ok(acc)
    }

    /// Integer power.
    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division by `h`. A series known modulo `h^{N}` becomes one known
    /// modulo `h^{N-1}`, so the order drops by one.
    pub fn div_h(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NotDivisibleByH);
        }
        if self.order() < 2 {
            return Err(SeriesError::ZeroOrder);
        }
        Ok(ScalarSeries {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// Multiply by `h^k`, dropping what falls off the end.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = vec![Rational::zero(); n];
        let kept = n.saturating_sub(k);
        out[n - kept..].clone_from_slice(&self.coeffs[..kept]);
        ScalarSeries { coeffs: out }
    }

    /// Reduce to a lower truncation order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order > 0 && order <= self.order());
        ScalarSeries {
            coeffs: self.coeffs[..order].to_vec(),
        }
    }

    /// Parse the textual form produced by `Display`, e.g. `1 + -1/2*h + 3*h^2`.
    /// Terms at or beyond `h^order` are dropped.
    pub fn parse(text: &str, order: usize) -> Result<Self, SeriesError> {
        if order == 0 {
            return Err(SeriesError::ZeroOrder);
        }
        let err = || SeriesError::Parse(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        // binary minus becomes "+-"
        let mut normalized = String::with_capacity(compact.len() + 4);
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if ch == '-' {
                if let Some(p) = prev {
                    if !matches!(p, '+' | '*' | '^' | '/') {
                        normalized.push('+');
                    }
                }
            }
            normalized.push(ch);
            prev = Some(ch);
        }
        let mut out = Self::zero(order);
        for token in normalized.split('+') {
            if token.is_empty() {
                return Err(err());
            }
            let (coeff_part, power) = match token.find('h') {
                None => (token, 0usize),
                Some(pos) => {
                    let (c, rest) = token.split_at(pos);
                    let power = match rest.strip_prefix("h^") {
                        Some(p) => p.parse::<usize>().map_err(|_| err())?,
                        None if rest == "h" => 1,
                        None => return Err(err()),
                    };
                    let c = c.strip_suffix('*').unwrap_or(c);
                    (c, power)
                }
            };
            let coeff = match coeff_part {
                "" => Rational::one(),
                "-" => -Rational::one(),
                s => parse_rational(s).ok_or_else(err)?,
            };
            if power < order {
                out.coeffs[power] += coeff;
            }
        }
        Ok(out)
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for ScalarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let c = fmt_rational(c);
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*h")?,
                _ => write!(f, "{c}*h^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for &ScalarSeries {
    type Output = ScalarSeries;
    fn add(self, rhs: &ScalarSeries) -> ScalarSeries {
        self.checked_add(rhs).expect("series order mismatch")
    }
}

impl Sub for &ScalarSeries {
    type Output = ScalarSeries;
    fn sub(self, rhs: &ScalarSeries) -> ScalarSeries {
        self.checked_sub(rhs).expect("series order mismatch")
    }
}

impl Mul for &ScalarSeries {
    type Output = ScalarSeries;
    fn mul(self, rhs: &ScalarSeries) -> ScalarSeries {
        self.checked_mul(rhs).expect("series order mismatch")
    }
}

impl Neg for &ScalarSeries {
    type Output = ScalarSeries;
    fn neg(self) -> ScalarSeries {
        ScalarSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for ScalarSeries {
    type Output = ScalarSeries;
    fn neg(self) -> ScalarSeries {
        -&self
    }
}
