//! Curves `y^2 = 4x^3 - g2 x - g3` with a marked rational point, and the Laurent
//! expansion of the Weierstrass function.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::scalar::{format_scalar, int, one, parse_scalar};
use crate::exact::{RatPoly2, Scalar, ZSeries};

/// A Weierstrass cubic with a rational point `(a, b)` on it. Singular cubics are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveData {
    g2: Scalar,
    g3: Scalar,
    a: Scalar,
    b: Scalar,
}

impl CurveData {
    pub fn new(g2: Scalar, g3: Scalar, a: Scalar, b: Scalar) -> Result<Self> {
        let rhs = int(4) * &a * &a * &a - &g2 * &a - &g3;
        if &b * &b != rhs {
            return Err(Error::PointNotOnCurve);
        }
        Ok(CurveData { g2, g3, a, b })
    }

    pub fn g2(&self) -> &Scalar {
        &self.g2
    }

    pub fn g3(&self) -> &Scalar {
        &self.g3
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    /// `g2^3 - 27 g3^2`.
    pub fn discriminant(&self) -> Scalar {
        &self.g2 * &self.g2 * &self.g2 - int(27) * &self.g3 * &self.g3
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant().is_zero()
    }

    /// `w^2 - 4 z^3 + g2 z + g3`, content-normalized.
    pub fn relation(&self) -> RatPoly2 {
        RatPoly2::from_terms([
            ((0, 2), one()),
            ((3, 0), int(-4)),
            ((1, 0), self.g2.clone()),
            ((0, 0), self.g3.clone()),
        ])
        .normalized()
    }
}

#[derive(Serialize, Deserialize)]
struct CurveRepr {
    g2: String,
    g3: String,
    a: String,
    b: String,
    #[serde(default, skip_deserializing)]
    singular: bool,
}

impl Serialize for CurveData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveRepr {
            g2: format_scalar(&self.g2),
            g3: format_scalar(&self.g3),
            a: format_scalar(&self.a),
            b: format_scalar(&self.b),
            singular: self.is_singular(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CurveData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CurveRepr::deserialize(d)?;
        let parse = |t: &str| parse_scalar(t).map_err(serde::de::Error::custom);
        CurveData::new(parse(&r.g2)?, parse(&r.g3)?, parse(&r.a)?, parse(&r.b)?)
            .map_err(serde::de::Error::custom)
    }
}

/// `℘(w) = w^-2 + sum_{k>=2} c_k w^(2k-2)` written in `z = 1/w`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeierstrassSeries {
    /// `c_2, c_3, ...`
    #[serde(serialize_with = "scalar_strings")]
    pub coeffs: Vec<Scalar>,
    /// `℘(1/z) = z^2 + c_2 z^-2 + c_3 z^-4 + ...`
    pub p: ZSeries,
    /// `℘'(1/z) = -2 z^3 + 2 c_2 z^-1 + ...`
    pub dp: ZSeries,
    /// Highest power of `w` through which the differential equation was checked.
    pub checked_through: i64,
}

fn scalar_strings<S: serde::Serializer>(
    xs: &[Scalar],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(format_scalar))
}

/// `(℘')^2 - 4 ℘^3 + g2 ℘ + g3` on the common window.
pub fn ode_residual(p: &ZSeries, dp: &ZSeries, g2: &Scalar, g3: &Scalar) -> ZSeries {
    let floor = p.floor();
    dp.mul(dp)
        .sub(&p.pow(3).scale(&int(4)))
        .add(&p.scale(g2))
        .add(&ZSeries::monomial(0, g3.clone(), floor))
}

/// The first `terms` coefficients `c_2, ..., c_{terms+1}`, from
/// `c_k = 3 / ((2k + 1)(k - 3)) sum_{m=2}^{k-2} c_m c_{k-m}` for `k >= 4`.
///
/// Panics if the result fails `(℘')^2 = 4℘^3 - g2 ℘ - g3` on its window.
pub fn weierstrass_p(g2: &Scalar, g3: &Scalar, terms: usize) -> WeierstrassSeries {
    let mut c: Vec<Scalar> = Vec::with_capacity(terms);
    for k in 2..terms as i64 + 2 {
        let ck = match k {
            2 => g2 / int(20),
            3 => g3 / int(28),
            _ => {
                let s = (2..=k - 2).fold(Scalar::zero(), |s, m| {
                    s + &c[m as usize - 2] * &c[(k - m) as usize - 2]
                });
                s * int(3) / int((2 * k + 1) * (k - 3))
            }
        };
        c.push(ck);
    }
    let mut t = vec![(2, one())];
    t.extend(
        c.iter()
            .enumerate()
            .map(|(i, ck)| (-2 * i as i64 - 2, ck.clone())),
    );
    let p = ZSeries::from_terms(&t, -2 * terms as i64 - 1);
    let dp = p.derive_w();
    let residual = ode_residual(&p, &dp, g2, g3);
    assert!(
        residual.is_zero(),
        "Weierstrass recursion violates the differential equation"
    );
    WeierstrassSeries {
        coeffs: c,
        p,
        dp,
        checked_through: -residual.floor(),
    }
}
