//! Integer identities behind the subset-coproduct estimates.
//!
//! `C^a_b` denotes `binom(b, a)`, taken to be 0 unless `0 ≤ a ≤ b`.
//!
//! For subsets `Σ', Σ''` of `{1..n}` and `|Σ'| ≤ j`,
//!
//! ```text
//! E'(Σ', Σ'') = Σ_{Σ ⊇ Σ'∪Σ'', |Σ| > j} (-1)^{n-|Σ|} (-1)^{j-|Σ'|} C^{j-|Σ'|}_{|Σ|-1-|Σ'|}
//!             + (-1)^{n-|Σ'|} [Σ'' ⊆ Σ']
//! ```

use serde::Serialize;

use crate::error::AlgebraError;
use crate::subset::SubsetIndex;

/// `C^a_b = binom(b, a)` when `0 ≤ a ≤ b`, else 0 (including negative `b`).
pub fn binom_c(a: i64, b: i64) -> i128 {
    if a < 0 || b < 0 || a > b {
        return 0;
    }
    let a = a.min(b - a);
    let mut acc: i128 = 1;
    for i in 0..a {
        acc = acc * (b - i) as i128 / (i + 1) as i128;
    }
    acc
}

fn sign(k: i64) -> i128 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma33Outcome {
    pub r: usize,
    pub s: usize,
    pub t: usize,
    /// `Σ_{d=0}^t (-1)^d C^r_{d-1} C^d_t`, expected `-(-1)^r`.
    pub sum_a: i128,
    /// `Σ_{d=0}^t (-1)^d C^r_{d+s} C^d_t`, expected 0.
    pub sum_b: i128,
    pub pass: bool,
}

/// Evaluate both alternating sums for `r < t`.
pub fn lemma33_check(r: usize, s: usize, t: usize) -> Result<Lemma33Outcome, AlgebraError> {
    if r >= t {
        return Err(AlgebraError::Precondition(format!(
            "need r < t, got r = {r}, t = {t}"
        )));
    }
    let (ri, si, ti) = (r as i64, s as i64, t as i64);
    let mut sum_a = 0;
    let mut sum_b = 0;
    for d in 0..=ti {
        let c = sign(d) * binom_c(d, ti);
        sum_a += c * binom_c(ri, d - 1);
        sum_b += c * binom_c(ri, d + si);
    }
    let pass = sum_a == -sign(ri) && sum_b == 0;
    Ok(Lemma33Outcome {
        r,
        s,
        t,
        sum_a,
        sum_b,
        pass,
    })
}

/// Direct enumeration of `E'(Σ', Σ'')` over all `Σ ⊆ {1..n}`.
pub fn eprime_value(
    n: usize,
    j: usize,
    sigma1: &SubsetIndex,
    sigma2: &SubsetIndex,
) -> Result<i128, AlgebraError> {
    if sigma1.len() > j {
        return Err(AlgebraError::Precondition(format!(
            "|Σ'| = {} exceeds j = {j}",
            sigma1.len()
        )));
    }
    if sigma1.ambient() != n || sigma2.ambient() != n {
        return Err(AlgebraError::Precondition(format!(
            "subsets must live in {{1..{n}}}"
        )));
    }
    let union = sigma1.union(sigma2);
    let (n, j, s1) = (n as i64, j as i64, sigma1.len() as i64);
    let mut total = 0;
    for sigma in SubsetIndex::all(n as usize) {
        let k = sigma.len() as i64;
        if k <= j || !union.is_subset_of(&sigma) {
            continue;
        }
        total += sign(n - k) * sign(j - s1) * binom_c(j - s1, k - 1 - s1);
    }
    if sigma2.is_subset_of(sigma1) {
        total += sign(n - s1);
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EPrimeCase {
    /// `Σ'' ⊆ Σ'`.
    I,
    /// `Σ'' ⊄ Σ'` and `|Σ'∪Σ''| > j`.
    II,
    /// `Σ'' ⊄ Σ'` and `|Σ'∪Σ''| ≤ j`.
    III,
}

pub fn eprime_case(j: usize, sigma1: &SubsetIndex, sigma2: &SubsetIndex) -> EPrimeCase {
    if sigma2.is_subset_of(sigma1) {
        EPrimeCase::I
    } else if sigma1.union(sigma2).len() > j {
        EPrimeCase::II
    } else {
        EPrimeCase::III
    }
}

/// `E'` regrouped by `d = |Σ|`: the number of `Σ ⊇ W` of size `d` is
/// `C^{d-|W|}_{n-|W|}`, where `W = Σ'` in case I and `W = Σ'∪Σ''` otherwise.
/// The sum starts at `d = j + 1` (cases I, III) or `d = |Σ'∪Σ''|` (case II).
pub fn eprime_closed_form(
    n: usize,
    j: usize,
    sigma1: &SubsetIndex,
    sigma2: &SubsetIndex,
) -> (EPrimeCase, i128) {
    let case = eprime_case(j, sigma1, sigma2);
    let (n, j, s1) = (n as i64, j as i64, sigma1.len() as i64);
    let u = sigma1.union(sigma2).len() as i64;
    let (w, d_min, indicator) = match case {
        EPrimeCase::I => (s1, j + 1, sign(n - s1)),
        EPrimeCase::II => (u, u, 0),
        EPrimeCase::III => (u, j + 1, 0),
    };
    let mut total = indicator;
    for d in d_min..=n {
        total += sign(n - d) * sign(j - s1) * binom_c(j - s1, d - 1 - s1) * binom_c(d - w, n - w);
    }
    (case, total)
}

/// Tuples for which the vanishing of `E'` is established: `j < n`,
/// `|Σ'| ≤ j` and `|Σ'∪Σ''| - |Σ'| ≤ n - 1 - j`.
pub fn eprime_admissible(n: usize, j: usize, sigma1: &SubsetIndex, sigma2: &SubsetIndex) -> bool {
    let u = sigma1.union(sigma2).len();
    j < n && sigma1.len() <= j && u - sigma1.len() + j < n
}

/// The looser condition `|Σ'∪Σ''| ≤ n - 1` (with `j < n`, `|Σ'| ≤ j`).
pub fn eprime_loosely_admissible(
    n: usize,
    j: usize,
    sigma1: &SubsetIndex,
    sigma2: &SubsetIndex,
) -> bool {
    j < n && sigma1.len() <= j && sigma1.union(sigma2).len() < n
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EPrimeTuple {
    pub n: usize,
    pub j: usize,
    pub sigma1: Vec<usize>,
    pub sigma2: Vec<usize>,
    pub value: i128,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EPrimeSummary {
    pub max_n: usize,
    pub tuples: usize,
    pub admissible: usize,
    pub case_counts: [usize; 3],
    /// Admissible tuples with a nonzero value.
    pub failures: Vec<EPrimeTuple>,
    /// Tuples where the regrouped closed form differs from the enumeration.
    pub closed_form_mismatches: Vec<EPrimeTuple>,
    /// Tuples satisfying only the looser condition `|Σ'∪Σ''| ≤ n - 1`
    /// whose value is nonzero; reported, not counted as failures.
    pub flagged_outside_range: Vec<EPrimeTuple>,
}

impl EPrimeSummary {
    pub fn pass(&self) -> bool {
        self.failures.is_empty() && self.closed_form_mismatches.is_empty()
    }
}

/// Exhaustive sweep over `1 ≤ n ≤ max_n`, `0 ≤ j < n`, `|Σ'| ≤ j`, all `Σ''`.
pub fn eprime_sweep(max_n: usize) -> EPrimeSummary {
    let mut out = EPrimeSummary {
        max_n,
        ..Default::default()
    };
    for n in 1..=max_n {
        let subsets = SubsetIndex::all(n);
        for j in 0..n {
            for s1 in subsets.iter().filter(|s| s.len() <= j) {
                for s2 in &subsets {
                    out.tuples += 1;
                    let value = eprime_value(n, j, s1, s2).expect("|Σ'| ≤ j by construction");
                    let tuple = || EPrimeTuple {
                        n,
                        j,
                        sigma1: s1.members().to_vec(),
                        sigma2: s2.members().to_vec(),
                        value,
                    };
                    let (case, closed) = eprime_closed_form(n, j, s1, s2);
                    if closed != value {
                        out.closed_form_mismatches.push(tuple());
                    }
                    if eprime_admissible(n, j, s1, s2) {
                        out.admissible += 1;
                        out.case_counts[case as usize] += 1;
                        if value != 0 {
                            out.failures.push(tuple());
                        }
                    } else if eprime_loosely_admissible(n, j, s1, s2) && value != 0 {
                        out.flagged_outside_range.push(tuple());
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, m: &[usize]) -> SubsetIndex {
        SubsetIndex::new(n, m.to_vec()).unwrap()
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binom_c(0, 5), 1);
        assert_eq!(binom_c(3, 2), 0);
        assert_eq!(binom_c(2, -1), 0);
        assert_eq!(binom_c(0, -1), 0);
        assert_eq!(binom_c(2, 4), 6);
        assert_eq!(binom_c(0, 0), 1);
        assert_eq!(binom_c(-1, 3), 0);
    }

    #[test]
    fn lemma33_examples() {
        assert_eq!(lemma33_check(0, 0, 1).unwrap().sum_a, -1);
        assert_eq!(lemma33_check(1, 0, 2).unwrap().sum_b, 0);
        let o = lemma33_check(2, 0, 5).unwrap();
        assert_eq!(o.sum_a, -1);
        assert!(o.pass);
        assert!(lemma33_check(3, 0, 3).is_err());
    }

    #[test]
    fn eprime_examples() {
        assert_eq!(eprime_value(2, 0, &s(2, &[]), &s(2, &[])).unwrap(), 0);
        assert_eq!(eprime_value(3, 1, &s(3, &[1]), &s(3, &[2])).unwrap(), 0);
        assert_eq!(eprime_value(4, 2, &s(4, &[1]), &s(4, &[1])).unwrap(), 0);
        assert!(eprime_value(3, 0, &s(3, &[1]), &s(3, &[])).is_err());
    }

    #[test]
    fn looser_range_has_nonzero_values() {
        // |Σ'∪Σ''| = 2 ≤ n - 1, yet the value is 1: only Σ = {1,2,3} contributes.
        let (a, b) = (s(3, &[]), s(3, &[1, 2]));
        assert!(eprime_loosely_admissible(3, 2, &a, &b));
        assert!(!eprime_admissible(3, 2, &a, &b));
        assert_eq!(eprime_value(3, 2, &a, &b).unwrap(), 1);
    }

    #[test]
    fn cases() {
        assert_eq!(eprime_case(2, &s(4, &[1]), &s(4, &[1])), EPrimeCase::I);
        assert_eq!(eprime_case(1, &s(4, &[1]), &s(4, &[2])), EPrimeCase::II);
        assert_eq!(eprime_case(2, &s(4, &[1]), &s(4, &[2])), EPrimeCase::III);
    }

    #[test]
    fn small_sweep_is_clean() {
        let summary = eprime_sweep(4);
        assert!(summary.pass(), "{summary:?}");
        assert!(summary.admissible > 0);
    }
}
