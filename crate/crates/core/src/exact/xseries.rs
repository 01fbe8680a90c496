//! Truncated power series in `x` with a recorded precision.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::{format_term, int, Scalar};
use super::text::parse_sum;
use crate::error::{Error, Result};

/// Power series `c_0 + c_1 x + ... + c_{p-1} x^{p-1} + O(x^p)`; `p` is the
/// precision, the first x-degree whose coefficient is not trusted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XSeries {
    coeffs: Vec<Scalar>,
}

impl XSeries {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        XSeries { coeffs }
    }

    pub fn zero(prec: usize) -> Self {
        XSeries {
            coeffs: vec![Scalar::zero(); prec],
        }
    }

    pub fn constant(c: Scalar, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if prec > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    pub fn one(prec: usize) -> Self {
        Self::constant(Scalar::one(), prec)
    }

    /// `c x^deg` known to `prec`.
    pub fn monomial(deg: usize, c: Scalar, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if deg < prec {
            s.coeffs[deg] = c;
        }
        s
    }

    /// A polynomial given by ascending coefficients, trusted to `prec`.
    pub fn from_poly(poly: &[Scalar], prec: usize) -> Self {
        let mut s = Self::zero(prec);
        for (i, c) in poly.iter().enumerate().take(prec) {
            s.coeffs[i] = c.clone();
        }
        s
    }

    pub fn from_ints(poly: &[i64], prec: usize) -> Self {
        let v: Vec<Scalar> = poly.iter().map(|&c| int(c)).collect();
        Self::from_poly(&v, prec)
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    /// Certified zero: every kept coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero constant term (requires precision at least 1).
    pub fn is_unit(&self) -> bool {
        self.coeffs.first().is_some_and(|c| !c.is_zero())
    }

    /// Certified equal to the constant `c` at the kept precision.
    pub fn is_constant(&self, c: &Scalar) -> bool {
        self.prec() > 0 && &self.coeffs[0] == c && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero kept coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, prec: usize) -> Self {
        XSeries {
            coeffs: self.coeffs[..prec.min(self.prec())].to_vec(),
        }
    }

    /// Equality at the smaller of the two precisions.
    pub fn agrees_with(&self, other: &XSeries) -> bool {
        let p = self.prec().min(other.prec());
        self.coeffs[..p] == other.coeffs[..p]
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        XSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &XSeries) -> Self {
        let p = self.prec().min(other.prec());
        XSeries {
            coeffs: (0..p).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &XSeries) -> Self {
        let p = self.prec().min(other.prec());
        XSeries {
            coeffs: (0..p).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        XSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// In-place `self += c * other`, truncating to the common precision.
    pub fn add_scaled(&mut self, c: &Scalar, other: &XSeries) {
        let p = self.prec().min(other.prec());
        self.coeffs.truncate(p);
        if c.is_zero() {
            return;
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }

    /// Cauchy product at the minimum of the two precisions.
    pub fn mul(&self, other: &XSeries) -> Self {
        let p = self.prec().min(other.prec());
        let mut out = vec![Scalar::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate().take(p) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(p - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        XSeries { coeffs: out }
    }

    /// Multiplicative inverse at the same precision.
    pub fn invert(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotAUnit);
        }
        let p = self.prec();
        let inv0 = self.coeffs[0].recip();
        let mut out: Vec<Scalar> = Vec::with_capacity(p);
        out.push(inv0.clone());
        for n in 1..p {
            let mut acc = Scalar::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &out[n - k];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(XSeries { coeffs: out })
    }

    /// Termwise derivative; precision drops by one.
    pub fn derive(&self) -> Result<Self> {
        if self.prec() == 0 {
            return Err(Error::PrecisionExhausted(
                "derivative of a series with no trusted terms".into(),
            ));
        }
        Ok(XSeries {
            coeffs: (1..self.prec())
                .map(|k| &self.coeffs[k] * int(k as i64))
                .collect(),
        })
    }

    /// Antiderivative with zero constant term; precision grows by one.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.prec() + 1);
        coeffs.push(Scalar::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / int(k as i64 + 1));
        }
        XSeries { coeffs }
    }

    /// Parses `"1 - 3/2*x + x^4 + O(x^6)"`; without an `O` term the series is
    /// trusted to `default_prec`.
    pub fn parse(text: &str, default_prec: usize) -> Result<Self> {
        let parsed = parse_sum(text, &['x'])?;
        let prec = match parsed.big_o {
            Some(e) if e[0] >= 0 => e[0] as usize,
            Some(_) => return Err(Error::Parse("negative order in O(x^k)".into())),
            None => default_prec,
        };
        let mut s = Self::zero(prec);
        for (e, c) in parsed.terms {
            if e[0] < 0 {
                return Err(Error::Parse("negative power of x".into()));
            }
            let d = e[0] as usize;
            if d < prec {
                s.coeffs[d] += c;
            }
        }
        Ok(s)
    }
}

impl fmt::Display for XSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            out.push_str(&format_term(c, &mono, out.is_empty()));
        }
        let big_o = format!("O(x^{})", self.prec());
        if out.is_empty() {
            write!(f, "{big_o}")
        } else {
            write!(f, "{out} + {big_o}")
        }
    }
}

impl Serialize for XSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for XSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        XSeries::parse(&s, 0).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::ratio;

    #[test]
    fn difference_of_squares() {
        let a = XSeries::from_ints(&[1, 1], 4);
        let b = XSeries::from_ints(&[1, -1], 4);
        assert_eq!(a.mul(&b), XSeries::from_ints(&[1, 0, -1, 0], 4));
    }

    #[test]
    fn geometric_series_times_one_minus_x() {
        // Oracle: (1 + x + x^2 + x^3 + x^4)(1 - x) = 1 - x^5, and x^5 is beyond precision 5.
        let g = XSeries::from_ints(&[1, 1, 1, 1, 1], 5);
        let h = XSeries::from_ints(&[1, -1], 5);
        assert_eq!(g.mul(&h), XSeries::one(5));
    }

    #[test]
    fn inverse_of_one_plus_x() {
        let a = XSeries::from_ints(&[1, 1], 6);
        let inv = a.invert().unwrap();
        assert_eq!(inv, XSeries::from_ints(&[1, -1, 1, -1, 1, -1], 6));
        assert_eq!(a.mul(&inv), XSeries::one(6));
        assert_eq!(
            XSeries::constant(int(2), 3).invert().unwrap(),
            XSeries::constant(ratio(1, 2), 3)
        );
        assert_eq!(
            XSeries::from_ints(&[0, 1], 3).invert(),
            Err(Error::NotAUnit)
        );
    }

    #[test]
    fn derivative_loses_one_degree_of_precision() {
        let g = XSeries::from_ints(&[1, 1, 1, 1, 1], 5);
        assert_eq!(g.derive().unwrap(), XSeries::from_ints(&[1, 2, 3, 4], 4));
        assert_eq!(
            XSeries::from_ints(&[0, 0, 1], 4).derive().unwrap(),
            XSeries::from_ints(&[0, 2], 3)
        );
        assert!(XSeries::constant(int(5), 3).derive().unwrap().is_zero());
        assert!(matches!(
            XSeries::zero(0).derive(),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn text_round_trip() {
        let s = XSeries::parse("1 - 3/2*x + x^4 + O(x^6)", 12).unwrap();
        assert_eq!(s.prec(), 6);
        assert_eq!(s.to_string(), "1 - 3/2*x + x^4 + O(x^6)");
        assert_eq!(XSeries::parse(&s.to_string(), 0).unwrap(), s);
        assert_eq!(
            XSeries::parse("x^2", 3).unwrap().to_string(),
            "x^2 + O(x^3)"
        );
        assert_eq!(XSeries::zero(4).to_string(), "O(x^4)");
        assert_eq!(XSeries::parse("O(x^4)", 9).unwrap(), XSeries::zero(4));
    }
}
