//! Canonical text form of monad elements.
//!
//! * points: the bare atom label, `a`
//! * subsets: `{a,b}`
//! * families, by minimal members: `[{a},{b,c}]`
//! * distributions: `{a:1/2, b:1/2}`
//!
//! Atoms appear in carrier order and family members in canonical order.
//! [`parse`] accepts exactly what [`render`] produces (and re-canonicalises
//! reordered input).

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::family;
use crate::error::{Error, Result};
use crate::finset::FinSet;
use crate::monad::{MonadKind, Payload, TElement};

fn render_subset(base: &FinSet, mask: family::Mask) -> String {
    let labels: Vec<&str> = family::indices(mask).map(|i| base.atom(i)).collect();
    format!("{{{}}}", labels.join(","))
}

pub fn render_weight(w: &BigRational) -> String {
    if w.is_integer() {
        w.numer().to_string()
    } else {
        format!("{}/{}", w.numer(), w.denom())
    }
}

pub fn render(e: &TElement) -> String {
    let base = e.base();
    match e.payload() {
        Payload::Point(i) => base.atom(*i).to_string(),
        Payload::Subset(m) => render_subset(base, *m),
        Payload::Family(f) => {
            let members: Vec<String> = f.iter().map(|&m| render_subset(base, m)).collect();
            format!("[{}]", members.join(","))
        }
        Payload::Dist(d) => {
            let entries: Vec<String> = d
                .iter()
                .map(|(i, w)| format!("{}:{}", base.atom(*i), render_weight(w)))
                .collect();
            format!("{{{}}}", entries.join(", "))
        }
    }
}

/// Splits on `sep` at bracket depth zero.
fn split_top(text: &str, sep: char) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth: i32 = 0;
    let mut start = 0;
    for (pos, c) in text.char_indices() {
        match c {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::parse(format!("offset {pos}"), "unbalanced bracket"));
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&text[start..pos]);
                start = pos + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::parse("end of input", "unbalanced bracket"));
    }
    parts.push(&text[start..]);
    Ok(parts)
}

fn strip(text: &str, open: char, close: char) -> Result<&str> {
    text.strip_prefix(open)
        .and_then(|t| t.strip_suffix(close))
        .ok_or_else(|| Error::parse(text, format!("expected {open}…{close}")))
}

fn lookup(base: &FinSet, label: &str) -> Result<usize> {
    base.index_of(label)
        .ok_or_else(|| Error::parse(label, "unknown atom"))
}

fn parse_subset(base: &FinSet, text: &str) -> Result<family::Mask> {
    let inner = strip(text, '{', '}')?;
    if inner.is_empty() {
        return Ok(0);
    }
    let mut mask = 0;
    for label in split_top(inner, ',')? {
        let i = lookup(base, label)?;
        if i >= family::MASK_BITS {
            return Err(Error::parse(label, "index does not fit a subset mask"));
        }
        mask |= family::singleton(i);
    }
    Ok(mask)
}

fn parse_weight(text: &str) -> Result<BigRational> {
    let bad = || Error::parse(text, "expected an integer or p/q weight");
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Parses the canonical text form of an element of `kind` over `base`.
pub fn parse(kind: MonadKind, base: &Arc<FinSet>, text: &str) -> Result<TElement> {
    let text = text.trim();
    let payload = match kind {
        MonadKind::Id => Payload::Point(lookup(base, text)?),
        MonadKind::Exp => Payload::Subset(parse_subset(base, text)?),
        MonadKind::Lambda | MonadKind::Incl => {
            let inner = strip(text, '[', ']')?;
            let members = if inner.is_empty() {
                Vec::new()
            } else {
                split_top(inner, ',')?
                    .into_iter()
                    .map(|m| parse_subset(base, m.trim()))
                    .collect::<Result<_>>()?
            };
            Payload::Family(members)
        }
        MonadKind::Prob => {
            let inner = strip(text, '{', '}')?;
            let mut entries = Vec::new();
            if !inner.is_empty() {
                for entry in split_top(inner, ',')? {
                    let entry = entry.trim();
                    let colon = split_top(entry, ':')?;
                    if colon.len() < 2 {
                        return Err(Error::parse(entry, "expected label:weight"));
                    }
                    let (label, w) = entry.split_at(entry.len() - colon.last().unwrap().len() - 1);
                    entries.push((lookup(base, label)?, parse_weight(&w[1..])?));
                }
            }
            Payload::Dist(entries)
        }
    };
    TElement::new(kind, base, payload).map_err(|e| match e {
        Error::InvalidElement(msg) => Error::parse(text, msg),
        other => other,
    })
}
