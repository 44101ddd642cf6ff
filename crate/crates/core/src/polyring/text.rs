//! Text form `c*Z0^a0*...*Zn^an + ...`.
//!
//! Rendering is canonical: every term carries its coefficient and every
//! variable with its exponent, terms in graded-lexicographic order. The
//! parser also accepts the looser hand-written forms (`Z0^2 - 3/2*Z1^2`,
//! omitted `^1`, omitted variables).

use std::fmt;

use num_traits::{One, Zero};

use super::{HomPoly, Monomial};
use crate::error::{Error, Result};
use crate::exactalg::{parse_rat, rat_to_string, Rat};

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", rat_to_string(c))?;
            for (i, e) in m.0.iter().enumerate() {
                write!(f, "*Z{i}^{e}")?;
            }
        }
        Ok(())
    }
}

fn split_terms(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..bytes.len() {
        let c = bytes[i];
        let prev = bytes[i - 1];
        if (c == b'+' || c == b'-') && !matches!(prev, b'+' | b'-' | b'*' | b'^' | b'/') {
            out.push(&s[start..i]);
            start = i;
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_term(term: &str, num_vars: usize) -> Result<(Monomial, Rat)> {
    let bad = |why: &str| Error::Parse(format!("term `{term}`: {why}"));
    let mut rest = term;
    let mut coeff = Rat::one();
    loop {
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            coeff = -coeff;
            rest = r;
        } else {
            break;
        }
    }
    if rest.is_empty() {
        return Err(bad("empty"));
    }
    let mut exps = vec![0u32; num_vars];
    for factor in rest.split('*') {
        if let Some(var) = factor.strip_prefix('Z') {
            let (idx, exp) = match var.split_once('^') {
                Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                None => (var, 1),
            };
            let idx: usize = idx.parse().map_err(|_| bad("bad variable index"))?;
            if idx >= num_vars {
                return Err(bad("variable out of range"));
            }
            exps[idx] += exp;
        } else if factor.is_empty() {
            return Err(bad("empty factor"));
        } else {
            coeff *= parse_rat(factor)?;
        }
    }
    Ok((Monomial(exps), coeff))
}

/// Parses a polynomial in `num_vars` variables. The zero polynomial gets
/// nominal degree 0.
pub fn parse_poly(text: &str, num_vars: usize) -> Result<HomPoly> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms = Vec::new();
    for t in split_terms(&compact) {
        let (m, c) = parse_term(t, num_vars)?;
        terms.push((m, c));
    }
    let degree = terms
        .iter()
        .find(|(_, c)| !c.is_zero())
        .map_or(0, |(m, _)| m.degree());
    let p = HomPoly::from_terms(
        num_vars,
        degree,
        terms.into_iter().filter(|(_, c)| !c.is_zero()),
    )
    .map_err(|e| Error::Parse(format!("`{text}`: {e}")))?;
    // Terms may cancel down to zero.
    Ok(if p.is_zero() { p.with_degree(0) } else { p })
}
