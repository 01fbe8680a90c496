//! Truncated Laurent series in `1/z`: finitely many positive powers and a
//! recorded lowest trusted exponent.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::{format_term, int, Scalar};
use super::text::parse_sum;
use crate::error::{Error, Result};

/// `sum_{floor <= e <= top} c_e z^e + O(z^{floor - 1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZSeries {
    floor: i64,
    /// Coefficients for exponents `floor, floor + 1, ...`; the last one is nonzero.
    coeffs: Vec<Scalar>,
}

impl ZSeries {
    fn trimmed(floor: i64, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZSeries { floor, coeffs }
    }

    pub fn zero(floor: i64) -> Self {
        ZSeries {
            floor,
            coeffs: Vec::new(),
        }
    }

    /// `c z^e`, trusted down to `floor`.
    pub fn monomial(e: i64, c: Scalar, floor: i64) -> Self {
        Self::from_terms(&[(e, c)], floor)
    }

    pub fn one(floor: i64) -> Self {
        Self::monomial(0, Scalar::one(), floor)
    }

    /// Builds from `(exponent, coefficient)` pairs; terms below `floor` are dropped.
    pub fn from_terms(terms: &[(i64, Scalar)], floor: i64) -> Self {
        let top = terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, _)| *e)
            .max();
        let Some(top) = top else {
            return Self::zero(floor);
        };
        if top < floor {
            return Self::zero(floor);
        }
        let mut coeffs = vec![Scalar::zero(); (top - floor + 1) as usize];
        for (e, c) in terms {
            if *e >= floor && *e <= top {
                coeffs[(*e - floor) as usize] += c;
            }
        }
        Self::trimmed(floor, coeffs)
    }

    pub fn from_int_terms(terms: &[(i64, i64)], floor: i64) -> Self {
        let t: Vec<(i64, Scalar)> = terms.iter().map(|&(e, c)| (e, int(c))).collect();
        Self::from_terms(&t, floor)
    }

    /// Lowest trusted exponent.
    pub fn floor(&self) -> i64 {
        self.floor
    }

    /// Exponent of the leading nonzero term; `None` for the certified-zero series.
    pub fn degree(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.floor + self.coeffs.len() as i64 - 1)
        }
    }

    /// Highest exponent that may carry a nonzero coefficient (`floor - 1` if zero).
    pub fn top(&self) -> i64 {
        self.floor + self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    /// Coefficient at `e`, or `None` when `e` is below the trusted floor.
    pub fn get(&self, e: i64) -> Option<Scalar> {
        if e < self.floor {
            None
        } else {
            Some(
                self.coeffs
                    .get((e - self.floor) as usize)
                    .cloned()
                    .unwrap_or_else(Scalar::zero),
            )
        }
    }

    /// Coefficient at a trusted exponent.
    pub fn coeff(&self, e: i64) -> Scalar {
        self.get(e).expect("coefficient below the trusted floor")
    }

    /// Nonzero terms in descending exponent order.
    pub fn terms(&self) -> Vec<(i64, Scalar)> {
        let mut out: Vec<(i64, Scalar)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.floor + i as i64, c.clone()))
            .collect();
        out.reverse();
        out
    }

    /// Raises the floor to `floor` (never lowers it).
    pub fn truncate(&self, floor: i64) -> Self {
        if floor <= self.floor {
            return self.clone();
        }
        let skip = (floor - self.floor) as usize;
        let coeffs = self.coeffs.iter().skip(skip).cloned().collect();
        Self::trimmed(floor, coeffs)
    }

    /// Equality on the common trusted range.
    pub fn agrees_with(&self, other: &ZSeries) -> bool {
        let f = self.floor.max(other.floor);
        let top = self.top().max(other.top());
        (f..=top).all(|e| self.coeff(e) == other.coeff(e))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::trimmed(self.floor, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Self {
        ZSeries {
            floor: self.floor,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    fn combine(&self, other: &ZSeries, sign: i64) -> Self {
        let floor = self.floor.max(other.floor);
        let top = self.top().max(other.top());
        if top < floor {
            return Self::zero(floor);
        }
        let s = int(sign);
        let coeffs = (floor..=top)
            .map(|e| self.coeff(e) + other.coeff(e) * &s)
            .collect();
        Self::trimmed(floor, coeffs)
    }

    pub fn add(&self, other: &ZSeries) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &ZSeries) -> Self {
        self.combine(other, -1)
    }

    /// `self * z^k`.
    pub fn shift(&self, k: i64) -> Self {
        ZSeries {
            floor: self.floor + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Product; the floor is limited by the unknown tail of either factor.
    pub fn mul(&self, other: &ZSeries) -> Self {
        let floor = (self.floor + other.top()).max(other.floor + self.top());
        if self.is_zero() || other.is_zero() {
            return Self::zero(floor);
        }
        let top = self.top() + other.top();
        let mut coeffs = vec![Scalar::zero(); (top - floor + 1) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.floor + i as i64;
            for (j, b) in other.coeffs.iter().enumerate() {
                let e = ea + other.floor + j as i64;
                if e < floor || b.is_zero() {
                    continue;
                }
                coeffs[(e - floor) as usize] += a * b;
            }
        }
        Self::trimmed(floor, coeffs)
    }

    /// `self^k`; `self^0` is `1` trusted to the same depth as `self`.
    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return Self::one(self.floor - self.top());
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; the trusted depth below the leading term is preserved.
    pub fn invert(&self) -> Result<Self> {
        let Some(t) = self.degree() else {
            return Err(Error::NotAUnit);
        };
        let depth = (t - self.floor) as usize;
        let lead_inv = self.coeffs.last().unwrap().recip();
        // b_0 = 1/a_0, b_n = -(1/a_0) sum_{k=1..n} a_k b_{n-k}, indexing from the top.
        let a = |k: usize| &self.coeffs[self.coeffs.len() - 1 - k];
        let mut b: Vec<Scalar> = Vec::with_capacity(depth + 1);
        b.push(lead_inv.clone());
        for n in 1..=depth {
            let mut acc = Scalar::zero();
            for k in 1..=n {
                let ak = a(k);
                if !ak.is_zero() {
                    acc += ak * &b[n - k];
                }
            }
            b.push(-acc * &lead_inv);
        }
        b.reverse();
        Ok(Self::trimmed(-t - depth as i64, b))
    }

    /// `d/dz`; the floor drops by one.
    pub fn derive_z(&self) -> Self {
        let coeffs = (0..self.coeffs.len())
            .map(|i| &self.coeffs[i] * int(self.floor + i as i64))
            .collect();
        Self::trimmed(self.floor - 1, coeffs)
    }

    /// `d/dw` with `w = 1/z`: `z^e -> -e z^(e+1)`. The floor rises by one.
    pub fn derive_w(&self) -> Self {
        let coeffs = (0..self.coeffs.len())
            .map(|i| &self.coeffs[i] * int(-(self.floor + i as i64)))
            .collect();
        Self::trimmed(self.floor + 1, coeffs)
    }

    /// Terms with exponent `< 0`.
    pub fn negative_part(&self) -> Self {
        if self.floor >= 0 {
            return Self::zero(self.floor);
        }
        let n = ((-self.floor) as usize).min(self.coeffs.len());
        Self::trimmed(self.floor, self.coeffs[..n].to_vec())
    }

    /// Terms with exponent `>= 0`.
    pub fn nonneg_part(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (i, c) in coeffs.iter_mut().enumerate() {
            if self.floor + (i as i64) < 0 {
                *c = Scalar::zero();
            }
        }
        Self::trimmed(self.floor, coeffs)
    }

    /// Parses `"z^3 + 2 + 5*z^-1 + O(z^-8)"`; without an `O` term the series is
    /// trusted down to `default_floor`.
    pub fn parse(text: &str, default_floor: i64) -> Result<Self> {
        let parsed = parse_sum(text, &['z'])?;
        let floor = match parsed.big_o {
            Some(e) => e[0] + 1,
            None => default_floor,
        };
        let terms: Vec<(i64, Scalar)> = parsed.terms.into_iter().map(|(e, c)| (e[0], c)).collect();
        Ok(Self::from_terms(&terms, floor))
    }
}

impl fmt::Display for ZSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (e, c) in self.terms() {
            let mono = match e {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{e}"),
            };
            out.push_str(&format_term(&c, &mono, out.is_empty()));
        }
        let o = self.floor - 1;
        let big_o = match o {
            0 => "O(1)".to_string(),
            1 => "O(z)".to_string(),
            _ => format!("O(z^{o})"),
        };
        if out.is_empty() {
            write!(f, "{big_o}")
        } else {
            write!(f, "{out} + {big_o}")
        }
    }
}

impl Serialize for ZSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ZSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ZSeries::parse(&s, 0).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let s = ZSeries::parse("z^3 + 2 + 5*z^-1 + O(z^-8)", -12).unwrap();
        assert_eq!(s.floor(), -7);
        assert_eq!(s.degree(), Some(3));
        assert_eq!(s.to_string(), "z^3 + 2 + 5*z^-1 + O(z^-8)");
        assert_eq!(ZSeries::parse(&s.to_string(), 0).unwrap(), s);
        assert_eq!(ZSeries::parse("z", -3).unwrap().to_string(), "z + O(z^-4)");
        assert_eq!(ZSeries::zero(1).to_string(), "O(1)");
    }

    #[test]
    fn product_floor_tracks_both_tails() {
        // (z + 1 + O(z^-3)) (z^2 + O(z^-1)): tails contribute below z^-1 + 1 and z^0 + 1.
        let a = ZSeries::from_int_terms(&[(1, 1), (0, 1)], -2);
        let b = ZSeries::from_int_terms(&[(2, 1)], 0);
        let p = a.mul(&b);
        assert_eq!(p.floor(), 1);
        assert_eq!(p.terms(), vec![(3, int(1)), (2, int(1))]);
    }

    #[test]
    fn inverse_of_geometric_type_series() {
        // 1/(z - 1) = z^-1 + z^-2 + ... ; oracle: multiply back.
        let a = ZSeries::from_int_terms(&[(1, 1), (0, -1)], -6);
        let inv = a.invert().unwrap();
        assert_eq!(inv.degree(), Some(-1));
        assert_eq!(inv.floor(), -8);
        for e in -8..=-1 {
            assert_eq!(inv.coeff(e), int(1));
        }
        let prod = a.mul(&inv);
        assert!(prod.sub(&ZSeries::one(prod.floor())).is_zero());
    }

    #[test]
    fn derivatives_in_z_and_w() {
        let s = ZSeries::from_int_terms(&[(2, 1), (-1, 1)], -5);
        assert_eq!(
            s.derive_z(),
            ZSeries::from_int_terms(&[(1, 2), (-2, -1)], -6)
        );
        // w^-2 + w has w-derivative -2 w^-3 + 1.
        assert_eq!(
            s.derive_w(),
            ZSeries::from_int_terms(&[(3, -2), (0, 1)], -4)
        );
    }
}
