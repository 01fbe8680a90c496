//! Differential operators that push finitely many series into `L_+`, and the
//! fractionality test built on them.

use num_traits::Zero;
use serde::Serialize;

use super::right_act;
use super::spectral::excess;
use crate::error::{Error, Result};
use crate::exact::scalar::{factorial, one};
use crate::exact::{Scalar, Verdict, XSeries, ZSeries};
use crate::psdo::PsDO;

/// `Q = q D^d q^-1` with `f . q = z^-d` for `f = z^-d + sum_{n>d} a_n z^-n` (after
/// scaling the lead to 1), so that `f . Q` is a constant.
fn clear_one(f: &ZSeries) -> Result<PsDO> {
    let d = -f.degree().expect("nonzero tail");
    let lead_inv = f.leading().expect("nonzero tail").recip();
    let reach = -f.floor();
    let count = reach - d + 1;
    if count < 1 {
        return Err(Error::PrecisionExhausted(
            "tail has no trusted coefficient below its lead".into(),
        ));
    }
    let a = |n: i64| f.coeff(-n) * &lead_inv;
    let mut q: Vec<Scalar> = vec![one()];
    for k in 1..count {
        let mut s = Scalar::zero();
        for (m, qm) in q.iter().enumerate() {
            let m = m as i64;
            let c =
                factorial((d - 1) as u64) / factorial((d + k - 1 - m) as u64) * a(d + k - m) * qm;
            if (k - m - 1) % 2 == 0 {
                s += c;
            } else {
                s -= c;
            }
        }
        q.push(s);
    }
    let q = XSeries::new(q);
    let q_inv = q.invert()?;
    Ok(PsDO::multiplication(q)
        .mul(&PsDO::d_pow(d, q_inv.prec()))
        .mul(&PsDO::multiplication(q_inv)))
}

/// A monic differential `Q` with `e . Q ⊆ L_+` for every `e` in `es`, composed from
/// one tail-clearing factor per series that still has a negative part.
pub fn clear_tails(es: &[ZSeries]) -> Result<PsDO> {
    let mut acc: Option<PsDO> = None;
    for e in es {
        let image = match &acc {
            Some(q) => right_act(e, q)?,
            None => e.clone(),
        };
        if image.floor() > -1 {
            return Err(Error::PrecisionExhausted(
                "image has no trusted negative exponent".into(),
            ));
        }
        let tail = image.negative_part();
        if tail.is_zero() {
            continue;
        }
        let step = clear_one(&tail)?;
        acc = Some(match acc {
            Some(q) => q.mul(&step),
            None => step,
        });
    }
    let Some(q) = acc else {
        return Ok(PsDO::identity(1));
    };
    for e in es {
        let image = right_act(e, &q)?;
        if image.floor() > -1 || !image.negative_part().is_zero() {
            return Err(Error::PrecisionExhausted(
                "cleared image is not certified in L_+".into(),
            ));
        }
    }
    Ok(q)
}

/// Fractionality of an operator through `dim (L_+ + L_+ p) / L_+`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FracCertificate {
    pub verdict: Verdict,
    pub excess: usize,
    pub stabilized: bool,
    /// A monic differential `Q` with `p Q` differential on the window.
    pub denominator: Option<PsDO>,
    /// `(number of z^j examined, excess)` on the last windows.
    pub windows: Vec<(usize, usize)>,
}

/// `z^j . p` with `z^j` trusted deeply enough that only `p` limits the result.
pub(crate) fn monomial_image(j: i64, p: &PsDO) -> Result<ZSeries> {
    let ptop = p.top().unwrap_or(0);
    let pfloor = p.floor().unwrap_or(-(p.max_prec() as i64) - 1);
    let vfloor = (j + pfloor - ptop - 1).min(j - 1);
    right_act(&ZSeries::monomial(j, one(), vfloor), p)
}

/// Computes the excess of `L_+ p` over `L_+` from `z^j . p`, `j = 0, 1, ...`, and on
/// stabilization certifies `p` fractional with a denominator from [`clear_tails`].
pub fn frac_certify(p: &PsDO) -> FracCertificate {
    let mut tails = Vec::new();
    for j in 0..p.max_prec().max(1) as i64 {
        match monomial_image(j, p) {
            Ok(v) if v.floor() <= -1 => tails.push(v.negative_part()),
            _ => break,
        }
    }
    let e = excess(&tails);
    if e.stabilized && e.dim == 0 {
        return FracCertificate {
            verdict: Verdict::YesCertified,
            excess: 0,
            stabilized: true,
            denominator: Some(PsDO::identity(p.max_prec().max(1))),
            windows: e.windows,
        };
    }
    let unknown = |e: &super::spectral::Excess| FracCertificate {
        verdict: Verdict::UnknownAtPrecision,
        excess: e.dim,
        stabilized: e.stabilized,
        denominator: None,
        windows: e.windows.clone(),
    };
    if !e.stabilized {
        return unknown(&e);
    }
    let Ok(q) = clear_tails(&e.basis) else {
        return unknown(&e);
    };
    let pq = p.mul(&q);
    if !pq.is_trusted(-1) || !pq.negative_part_is_zero() {
        return unknown(&e);
    }
    FracCertificate {
        verdict: Verdict::YesCertified,
        excess: e.dim,
        stabilized: true,
        denominator: Some(q),
        windows: e.windows,
    }
}
