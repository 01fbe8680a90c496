//! Fractional differential operators as right fractions `A B^-1` of
//! differential operators with `B` monic.

mod denominators;
mod ore;
#[cfg(test)]
mod tests;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Verdict, ZSeries};
use crate::grassmannian::right_act;
use crate::psdo::PsDO;

pub use denominators::{common_denominators, dord, CommonDenominators};
pub use ore::{ore_solve, right_divide, right_gcd};

/// A right fraction `num den^-1`.
#[derive(Clone, Debug)]
pub struct FracOp {
    num: PsDO,
    den: PsDO,
    reduced: bool,
    depth: usize,
    expansion: OnceLock<PsDO>,
}

impl PartialEq for FracOp {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

pub(crate) fn require_differential(p: &PsDO) -> Result<()> {
    if p.is_differential() {
        Ok(())
    } else {
        Err(Error::NotDifferential)
    }
}

impl FracOp {
    /// The fraction `num den^-1` as given, without reduction.
    pub fn new(num: PsDO, den: PsDO) -> Result<Self> {
        require_differential(&num)?;
        require_differential(&den)?;
        if !den.is_monic() {
            return Err(Error::DenominatorNotMonic);
        }
        let num = num.trim_top();
        let den = den.trim_top();
        let depth = num.max_prec().max(den.max_prec());
        Ok(FracOp {
            num,
            den,
            reduced: false,
            depth,
            expansion: OnceLock::new(),
        })
    }

    /// A differential operator viewed as the fraction `p 1^-1`.
    pub fn from_differential(p: PsDO) -> Result<Self> {
        let prec = p.max_prec().max(1);
        let mut f = Self::new(p, PsDO::identity(prec))?;
        f.reduced = true;
        Ok(f)
    }

    /// Sets the number of orders below the top kept by the expansion.
    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self.expansion = OnceLock::new();
        self
    }

    pub fn num(&self) -> &PsDO {
        &self.num
    }

    pub fn den(&self) -> &PsDO {
        &self.den
    }

    /// Whether the fraction was reduced by a right greatest common divisor.
    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `ord(num) - ord(den)`; `None` for the zero fraction.
    pub fn order(&self) -> Option<i64> {
        Some(self.num.order()? - self.den.order().unwrap_or(0))
    }

    /// `num den^-1` as a pseudodifferential operator, trusted `depth` orders below its top.
    pub fn expansion(&self) -> &PsDO {
        self.expansion.get_or_init(|| {
            if self.den.order() == Some(0) {
                return self.num.clone();
            }
            let inv = self
                .den
                .invert_to_depth(self.depth)
                .expect("monic denominator is invertible");
            self.num.mul(&inv)
        })
    }

    /// Parses `frac( A ; B )` or a bare differential operator.
    pub fn parse(src: &str, default_prec: usize) -> Result<Self> {
        let t = src.trim();
        let Some(inner) = t.strip_prefix("frac").map(str::trim_start) else {
            return Self::from_differential(PsDO::parse(t, default_prec)?);
        };
        let inner = inner
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected `frac( A ; B )`, got `{t}`")))?;
        let (a, b) = inner
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("missing `;` in `{t}`")))?;
        Self::new(PsDO::parse(a, default_prec)?, PsDO::parse(b, default_prec)?)
    }
}

impl fmt::Display for FracOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "frac( {} ; {} )", self.num, self.den)
    }
}

impl Serialize for FracOp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FracOp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        FracOp::parse(&s, 0).map_err(serde::de::Error::custom)
    }
}

/// Builds `a b^-1`, reduced by the right greatest common divisor when the
/// Euclidean algorithm only meets unit leading coefficients.
pub fn frac_make(a: &PsDO, b: &PsDO) -> Result<FracOp> {
    let raw = FracOp::new(a.clone(), b.clone())?;
    if raw.den.order() == Some(0) {
        return Ok(FracOp {
            reduced: true,
            ..raw
        });
    }
    let Some(g) = right_gcd(&raw.num, &raw.den) else {
        return Ok(raw);
    };
    if g.order() == Some(0) {
        return Ok(FracOp {
            reduced: true,
            ..raw
        });
    }
    let Ok(lead_inv) = g.leading().expect("nonzero gcd").invert() else {
        return Ok(raw);
    };
    let g = g.left_mul_series(&lead_inv).trim_top();
    let divide = |p: &PsDO| {
        right_divide(p, &g)
            .filter(|(_, r)| r.is_zero())
            .map(|(q, _)| q.trim_top())
    };
    match (divide(&raw.num), divide(&raw.den)) {
        (Some(n), Some(d)) if d.is_monic() && d.is_differential() && n.is_differential() => {
            let depth = raw.depth;
            Ok(FracOp {
                num: n,
                den: d,
                reduced: true,
                depth,
                expansion: OnceLock::new(),
            })
        }
        _ => Ok(raw),
    }
}

/// Outcome of a differentiality check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DifferentialCheck {
    pub verdict: Verdict,
    /// The quotient `num / den` when the division is exact.
    pub quotient: Option<PsDO>,
    /// `(j, z^j . expansion)` with a trusted nonzero negative part.
    pub witness: Option<(i64, ZSeries)>,
}

/// Certifies differentiality by exact right division, or refutes it by a
/// series `z^j` whose image under the expansion leaves the nonnegative powers.
pub fn is_differential(p: &FracOp) -> DifferentialCheck {
    if let Some((q, r)) = right_divide(&p.num, &p.den) {
        if r.is_zero() && r.floor().is_none() {
            return DifferentialCheck {
                verdict: Verdict::YesCertified,
                quotient: Some(q.trim_top()),
                witness: None,
            };
        }
    }
    let e = p.expansion();
    let ptop = e.top().unwrap_or(0);
    let efloor = e.floor().unwrap_or(-(e.max_prec() as i64) - 1);
    for j in 0..=e.max_prec() as i64 {
        // The monomial z^j is exact; its floor only needs to sit below what the action can trust.
        let vfloor = (j + efloor - ptop - 1).min(j - 1);
        let Ok(v) = right_act(
            &ZSeries::monomial(j, crate::exact::scalar::one(), vfloor),
            e,
        ) else {
            continue;
        };
        let neg = v.negative_part();
        if !neg.is_zero() {
            return DifferentialCheck {
                verdict: Verdict::NoWitness,
                quotient: None,
                witness: Some((j, neg)),
            };
        }
    }
    DifferentialCheck {
        verdict: Verdict::UnknownAtPrecision,
        quotient: None,
        witness: None,
    }
}
