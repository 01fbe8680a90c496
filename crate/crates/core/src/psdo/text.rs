//! Operator text form: `(1) * D^2 + (-2 + 4*x) * D^0 + (x^2) * D^-1 + O(D^-4)`.

use std::fmt;

use super::PsDO;
use crate::error::{Error, Result};
use crate::exact::XSeries;

fn split_terms(src: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut negate = false;
    let mut last_sig: Option<char> = None;
    for c in src.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in `{src}`")));
        }
        let is_sign = depth == 0 && (c == '+' || c == '-') && last_sig != Some('^');
        if is_sign {
            if !cur.trim().is_empty() {
                out.push((negate, cur.trim().to_string()));
            } else if last_sig.is_some() && !out.is_empty() {
                return Err(Error::Parse(format!("dangling sign in `{src}`")));
            }
            cur.clear();
            negate = c == '-';
        } else {
            cur.push(c);
        }
        if !c.is_whitespace() {
            last_sig = Some(c);
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in `{src}`")));
    }
    if cur.trim().is_empty() {
        return Err(Error::Parse(format!("empty term in `{src}`")));
    }
    out.push((negate, cur.trim().to_string()));
    Ok(out)
}

fn parse_d_power(s: &str) -> Result<i64> {
    let s = s.trim();
    let rest = s
        .strip_prefix('D')
        .ok_or_else(|| Error::Parse(format!("expected D^k, got `{s}`")))?;
    let rest = rest.trim();
    if rest.is_empty() {
        return Ok(1);
    }
    let e = rest
        .strip_prefix('^')
        .ok_or_else(|| Error::Parse(format!("expected `^` in `{s}`")))?;
    e.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad exponent in `{s}`")))
}

impl PsDO {
    /// Parses the operator grammar; series without `O(x^p)` are trusted to `default_prec`.
    pub fn parse(src: &str, default_prec: usize) -> Result<Self> {
        let t = src.trim();
        if t == "0" {
            return Ok(PsDO::zero());
        }
        let mut terms = Vec::new();
        let mut floor = None;
        for (negate, term) in split_terms(t)? {
            if let Some(inner) = term.strip_prefix("O(").and_then(|r| r.strip_suffix(')')) {
                floor = Some(parse_d_power(inner)? + 1);
                continue;
            }
            let (coef, power) = if let Some(body) = term.strip_prefix('(') {
                let close = body
                    .rfind(')')
                    .ok_or_else(|| Error::Parse(format!("missing `)` in `{term}`")))?;
                let coef = XSeries::parse(&body[..close], default_prec)?;
                let after = body[close + 1..].trim();
                let power = match after.strip_prefix('*') {
                    Some(d) => parse_d_power(d)?,
                    None if after.is_empty() => 0,
                    None => return Err(Error::Parse(format!("expected `*` in `{term}`"))),
                };
                (coef, power)
            } else {
                (XSeries::one(default_prec), parse_d_power(&term)?)
            };
            let coef = if negate { coef.neg() } else { coef };
            terms.push((power, coef));
        }
        Ok(PsDO::from_terms(terms, floor))
    }
}

impl fmt::Display for PsDO {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(k, c)| format!("({c}) * D^{k}"))
            .collect();
        if let Some(fl) = self.floor {
            parts.push(format!("O(D^{})", fl - 1));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}
