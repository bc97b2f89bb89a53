//! Human-readable rendering and the plain-text input format.
//!
//! Elements are written one term per line, legs separated by `|`, followed by
//! `:` and the series coefficient:
//!
//! ```text
//! # E ⊗ F + 1/4 h H ⊗ H
//! F^0 H^0 E^1 | F^1 H^0 E^0 : 1
//! H | H : 1/4*h
//! ```
//!
//! A sample file holds several elements, each introduced by a `[name]` header.

use std::collections::BTreeMap;

use num::{One, Signed};

use crate::error::AlgebraError;
use crate::hopf::{AlgebraElement, Pbw};
use crate::series::{fmt_rational, Rational, ScalarSeries};
use crate::tensor::{Key, TensorElement};

/// Render grouped by powers of `h`, e.g. `1⊗1 + h·(E⊗F + 1/4·H⊗H)`.
pub fn pretty_tensor(t: &TensorElement) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let mut groups: BTreeMap<usize, Vec<(&Key, &Rational)>> = BTreeMap::new();
    for (k, c) in t.sorted_terms() {
        for (p, r) in c.coeffs().iter().enumerate() {
            if !num::Zero::is_zero(r) {
                groups.entry(p).or_default().push((k, r));
            }
        }
    }
    let mut out = String::new();
    for (p, terms) in groups {
        let body = render_sum(&terms);
        let chunk = match p {
            0 => body,
            _ => {
                let hp = if p == 1 {
                    "h".to_string()
                } else {
                    format!("h^{p}")
                };
                if terms.len() == 1 {
                    format!("{hp}·{body}")
                } else {
                    format!("{hp}·({body})")
                }
            }
        };
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&chunk);
    }
    out
}

fn render_key(k: &Key) -> String {
    if k.is_empty() {
        return "1".into();
    }
    k.iter().map(|m| m.short()).collect::<Vec<_>>().join("⊗")
}

fn render_sum(terms: &[(&Key, &Rational)]) -> String {
    let mut out = String::new();
    for (i, (k, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&fmt_rational(&abs));
            out.push('·');
        }
        out.push_str(&render_key(k));
    }
    out
}

/// Parse `F^a H^b E^c`, `1`, or any subsequence such as `H E^2`, in PBW order.
pub fn parse_pbw(text: &str) -> Result<Pbw, AlgebraError> {
    let err = || AlgebraError::Parse(format!("bad PBW monomial `{text}`"));
    let mut m = Pbw::ONE;
    let mut last = 0u8;
    for tok in text.split(|c: char| c.is_whitespace() || c == '·' || c == '*') {
        if tok.is_empty() || tok == "1" {
            continue;
        }
        let (sym, exp) = match tok.split_once('^') {
            Some((s, e)) => (s, e.parse::<u16>().map_err(|_| err())?),
            None => (tok, 1),
        };
        let rank = match sym {
            "F" => 1,
            "H" => 2,
            "E" => 3,
            _ => return Err(err()),
        };
        if rank <= last {
            return Err(err());
        }
        last = rank;
        match rank {
            1 => m.f = exp,
            2 => m.h = exp,
            _ => m.e = exp,
        }
    }
    Ok(m)
}

fn parse_term(line: &str, order: usize) -> Result<(Key, ScalarSeries), AlgebraError> {
    let (legs, coeff) = line
        .rsplit_once(':')
        .ok_or_else(|| AlgebraError::Parse(format!("missing `:` in `{line}`")))?;
    let key = legs.split('|').map(parse_pbw).collect::<Result<Key, _>>()?;
    let c = ScalarSeries::parse(coeff.trim(), order)?;
    Ok((key, c))
}

fn is_blank(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

/// Parse a tensor from term lines; the rank is taken from the first term.
/// An input with no terms is the zero tensor of rank `default_rank`.
pub fn parse_tensor(
    text: &str,
    order: usize,
    default_rank: usize,
) -> Result<TensorElement, AlgebraError> {
    let mut out: Option<TensorElement> = None;
    for line in text.lines().filter(|l| !is_blank(l)) {
        let (key, c) = parse_term(line, order)?;
        let t = out.get_or_insert_with(|| TensorElement::zero(key.len(), order));
        if key.len() != t.rank() {
            return Err(AlgebraError::RankMismatch(t.rank(), key.len()));
        }
        t.add_term(key, c);
    }
    Ok(out.unwrap_or_else(|| TensorElement::zero(default_rank, order)))
}

pub fn parse_element(text: &str, order: usize) -> Result<AlgebraElement, AlgebraError> {
    parse_tensor(text, order, 1)?.to_algebra()
}

/// Parse a file of `[name]` sections, each holding one tensor.
pub fn parse_samples(
    text: &str,
    order: usize,
) -> Result<Vec<(String, TensorElement)>, AlgebraError> {
    let mut sections: Vec<(String, String)> = Vec::new();
    for line in text.lines() {
        let t = line.trim();
        if let Some(name) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            sections.push((name.trim().to_string(), String::new()));
        } else if !is_blank(t) {
            let Some(cur) = sections.last_mut() else {
                return Err(AlgebraError::Parse(format!(
                    "term `{t}` appears before any [name] header"
                )));
            };
            cur.1.push_str(t);
            cur.1.push('\n');
        }
    }
    sections
        .into_iter()
        .map(|(name, body)| Ok((name, parse_tensor(&body, order, 1)?)))
        .collect()
}

/// Render named tensors in the sample-file format.
pub fn render_samples(samples: &[(String, TensorElement)]) -> String {
    let mut out = String::new();
    for (name, t) in samples {
        out.push_str(&format!("[{name}]\n"));
        out.push_str(&t.canonical_text());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    #[test]
    fn pretty_groups_by_h_power() {
        let mut t = TensorElement::unit(2, 3);
        t.add_term(
            Key::from_slice(&[Pbw::E, Pbw::F]),
            ScalarSeries::monomial(rat(1, 1), 1, 3),
        );
        t.add_term(
            Key::from_slice(&[Pbw::H, Pbw::H]),
            ScalarSeries::monomial(rat(1, 4), 1, 3),
        );
        assert_eq!(pretty_tensor(&t), "1⊗1 + h·(E⊗F + 1/4·H⊗H)");
    }

    #[test]
    fn pretty_negative_and_powers() {
        let mut t = TensorElement::zero(1, 4);
        t.add_term(
            Key::from_slice(&[Pbw::new(2, 1, 0)]),
            ScalarSeries::monomial(rat(-1, 2), 3, 4),
        );
        assert_eq!(pretty_tensor(&t), "h^3·-1/2·F^2·H");
        assert_eq!(pretty_tensor(&TensorElement::zero(2, 4)), "0");
    }

    #[test]
    fn pbw_parsing() {
        assert_eq!(parse_pbw("F^1 H^0 E^2").unwrap(), Pbw::new(1, 0, 2));
        assert_eq!(parse_pbw("H E^2").unwrap(), Pbw::new(0, 1, 2));
        assert_eq!(parse_pbw("1").unwrap(), Pbw::ONE);
        assert!(parse_pbw("E F").is_err());
        assert!(parse_pbw("X").is_err());
    }

    #[test]
    fn canonical_text_round_trip() {
        let mut t = TensorElement::unit(2, 3);
        t.add_term(
            Key::from_slice(&[Pbw::E, Pbw::new(1, 2, 0)]),
            ScalarSeries::parse("-1/3*h + 2*h^2", 3).unwrap(),
        );
        let back = parse_tensor(&t.canonical_text(), 3, 2).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn sample_file_round_trip() {
        let a = TensorElement::unit(1, 2);
        let mut b = TensorElement::zero(2, 2);
        b.add_term(Key::from_slice(&[Pbw::H, Pbw::ONE]), ScalarSeries::h(2));
        let samples = vec![("a".to_string(), a), ("b".to_string(), b)];
        let text = render_samples(&samples);
        assert_eq!(parse_samples(&text, 2).unwrap(), samples);
    }

    #[test]
    fn rank_mismatch_is_rejected() {
        let text = "1 : 1\nE | F : 1\n";
        assert!(matches!(
            parse_tensor(text, 2, 1),
            Err(AlgebraError::RankMismatch(1, 2))
        ));
    }
}
