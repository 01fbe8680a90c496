//! Bivariate polynomials `F(z, w)` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::{common_denominator, content_gcd, format_term, Scalar};
use super::text::parse_sum;
use crate::error::{Error, Result};

/// `sum c_{ij} z^i w^j`; the zero polynomial has no entries.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RatPoly2 {
    coeffs: BTreeMap<(u32, u32), Scalar>,
}

impl RatPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Scalar)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k.0, k.1, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Scalar) {
        let e = self.coeffs.entry((i, j)).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Scalar {
        self.coeffs
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Nonzero terms keyed by `(z-degree, w-degree)`.
    pub fn terms(&self) -> &BTreeMap<(u32, u32), Scalar> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_z(&self) -> u32 {
        self.coeffs.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn deg_w(&self) -> u32 {
        self.coeffs.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Terms ordered with higher `w`-degree first, then higher `z`-degree.
    pub fn ordered_terms(&self) -> Vec<((u32, u32), Scalar)> {
        let mut t: Vec<_> = self.coeffs.iter().map(|(k, c)| (*k, c.clone())).collect();
        t.sort_by_key(|b| std::cmp::Reverse((b.0 .1, b.0 .0)));
        t
    }

    /// Integer coefficients with content 1 and a positive leading term in the
    /// `w`-first ordering.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = Scalar::from_integer(common_denominator(self.coeffs.values()));
        let scaled: Vec<Scalar> = self.coeffs.values().map(|c| c * &l).collect();
        let g = Scalar::from_integer(content_gcd(scaled.iter()));
        let lead = &self.ordered_terms()[0].1;
        let sign = if lead.is_negative() {
            -Scalar::from_integer(1.into())
        } else {
            Scalar::from_integer(1.into())
        };
        let factor = l / g * sign;
        Self::from_terms(self.coeffs.iter().map(|(k, c)| (*k, c * &factor)))
    }

    pub fn eval(&self, z: &Scalar, w: &Scalar) -> Scalar {
        self.coeffs.iter().fold(Scalar::zero(), |acc, ((i, j), c)| {
            acc + c
                * num_traits::pow(z.clone(), *i as usize)
                * num_traits::pow(w.clone(), *j as usize)
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let parsed = parse_sum(text, &['z', 'w'])?;
        if parsed.big_o.is_some() {
            return Err(Error::Parse("O(...) is not allowed in a polynomial".into()));
        }
        let mut p = Self::zero();
        for (e, c) in parsed.terms {
            if e[0] < 0 || e[1] < 0 {
                return Err(Error::Parse("negative exponent in polynomial".into()));
            }
            p.add_term(e[0] as u32, e[1] as u32, c);
        }
        Ok(p)
    }
}

fn monomial(i: u32, j: u32) -> String {
    let part = |v: char, k: u32| match k {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{v}^{k}")),
    };
    [part('z', i), part('w', j)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for RatPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for ((i, j), c) in self.ordered_terms() {
            out.push_str(&format_term(&c, &monomial(i, j), out.is_empty()));
        }
        write!(f, "{out}")
    }
}

impl Serialize for RatPoly2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RatPoly2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        RatPoly2::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{int, ratio};

    #[test]
    fn normalization_and_display() {
        let p = RatPoly2::from_terms([
            ((2, 0), ratio(1, 2)),
            ((1, 1), ratio(-1, 2)),
            ((0, 0), ratio(1, 2)),
        ]);
        assert_eq!(p.normalized().to_string(), "z*w - z^2 - 1");
        let q = RatPoly2::parse("-w^2 + 4*z^3").unwrap();
        assert_eq!(q.normalized().to_string(), "w^2 - 4*z^3");
        assert_eq!(
            RatPoly2::parse("w^2 - 4*z^3 + 3/2*z + 7")
                .unwrap()
                .to_string(),
            "w^2 - 4*z^3 + 3/2*z + 7"
        );
        assert_eq!(q.eval(&int(1), &int(2)), int(0));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["z*w - z^2 - 1", "w^2 - 4*z^3", "w - z^2"] {
            assert_eq!(RatPoly2::parse(s).unwrap().to_string(), s);
        }
    }
}
