//! The right action of operators on Laurent series in `1/z`:
//! `z^j . D^m = z^(j+m)` and `z^j . x^k = k! C(j, k) z^(j-k)`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::scalar::falling;
use crate::exact::{Scalar, ZSeries};
use crate::psdo::PsDO;

/// `v . p`, trusted down to the exponent where either truncation starts to matter.
pub fn right_act(v: &ZSeries, p: &PsDO) -> Result<ZSeries> {
    let vtop = v.top();
    let ptop = match (p.top(), p.floor()) {
        (Some(t), _) => t,
        (None, Some(f)) => f - 1,
        (None, None) => return Ok(ZSeries::zero(v.floor())),
    };
    let vterms = v.terms();
    let mut floor = v.floor() + ptop;
    if let Some(pf) = p.floor() {
        floor = floor.max(vtop + pf);
    }
    for (j, _) in &vterms {
        for (&m, u) in p.terms() {
            let prec = u.prec() as i64;
            if *j < 0 || *j >= prec {
                floor = floor.max(j - prec + m + 1);
            }
        }
    }
    if vterms.is_empty() {
        return Ok(ZSeries::zero(floor));
    }
    if floor > vtop + ptop {
        return Err(Error::PrecisionExhausted(
            "right action has no trusted exponent".into(),
        ));
    }
    let mut acc: BTreeMap<i64, Scalar> = BTreeMap::new();
    for (j, vj) in &vterms {
        for (&m, u) in p.terms() {
            for (k, c) in u.coeffs().iter().enumerate() {
                let e = j - k as i64 + m;
                if e < floor || (*j >= 0 && k as i64 > *j) {
                    break;
                }
                if c.is_zero() {
                    continue;
                }
                *acc.entry(e).or_insert_with(Scalar::zero) += vj * c * falling(*j, k as u64);
            }
        }
    }
    let terms: Vec<(i64, Scalar)> = acc.into_iter().collect();
    Ok(ZSeries::from_terms(&terms, floor))
}
