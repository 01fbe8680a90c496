//! Right Euclidean division and the Ore condition for differential operators.

use num_traits::Zero;

use super::require_differential;
use crate::error::{Error, Result};
use crate::exact::scalar::one;
use crate::exact::{kernel_basis, XSeries};
use crate::psdo::cells::cell_rows;
use crate::psdo::PsDO;

/// `a = q b + r` with `ord r < ord b`. `None` when a leading coefficient of `b`
/// is not a unit or the truncation leaves the finite operators.
pub fn right_divide(a: &PsDO, b: &PsDO) -> Option<(PsDO, PsDO)> {
    let m = b.order()?;
    let lead_inv = b.leading()?.invert().ok()?;
    let mut rem = a.trim_top();
    let mut quot = PsDO::zero();
    while let Some(n) = rem.order() {
        if n < m {
            break;
        }
        let c = rem.leading()?.mul(&lead_inv);
        let step = PsDO::from_terms([(n - m, c)], None);
        quot = quot.add(&step);
        rem = rem.sub(&step.mul(b));
        // The leading coefficient cancels exactly; drop it along with any zero tops.
        rem = PsDO::from_terms(
            rem.terms().range(..n).map(|(k, c)| (*k, c.clone())),
            rem.floor(),
        )
        .trim_top();
        if rem.floor().is_some() {
            return None;
        }
    }
    Some((quot, rem))
}

/// Right greatest common divisor by the Euclidean algorithm; `None` when a
/// division step is unavailable.
pub fn right_gcd(a: &PsDO, b: &PsDO) -> Option<PsDO> {
    let (mut a, mut b) = if a.order() >= b.order() {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    if b.order().is_none() {
        return Some(a);
    }
    loop {
        let (_, r) = right_divide(&a, &b)?;
        if r.is_zero() {
            return Some(b);
        }
        a = b;
        b = r;
    }
}

/// Nonzero differential `(r, l)` with `q r = p l` and `ord l <= ord q`, found as
/// the first kernel vector of the coefficient system with unknown Taylor
/// coefficients ordered by x-degree.
pub fn ore_solve(p: &PsDO, q: &PsDO) -> Result<(PsDO, PsDO)> {
    require_differential(p)?;
    require_differential(q)?;
    let ord_q = q.order().ok_or(Error::NoSolutionAtPrecision)?;
    let ord_p = p.order().ok_or(Error::NoSolutionAtPrecision)?;
    let degs = p.max_prec().min(q.max_prec()).max(1);
    let ord_r = ord_p.max(0);
    let mut cols = Vec::new();
    let mut labels = Vec::new();
    for m in 0..degs {
        let x_m = PsDO::multiplication(XSeries::monomial(m, one(), degs));
        let qx = q.mul(&x_m);
        let px = p.mul(&x_m).neg();
        for i in 0..=ord_r {
            cols.push(qx.shift_order(i));
            labels.push((true, m, i));
        }
        for i in 0..=ord_q {
            cols.push(px.shift_order(i));
            labels.push((false, m, i));
        }
    }
    let refs: Vec<&PsDO> = cols.iter().collect();
    let rows = cell_rows(&refs, |_| true);
    for v in kernel_basis(&rows, cols.len()) {
        let build = |side: bool| {
            let terms = labels
                .iter()
                .zip(&v)
                .filter(|((s, _, _), a)| *s == side && !a.is_zero())
                .map(|((_, m, i), a)| (*i, XSeries::monomial(*m, a.clone(), degs)));
            PsDO::from_terms(terms, None).trim_top()
        };
        let (r, l) = (build(true), build(false));
        if r.is_zero() || l.is_zero() {
            continue;
        }
        if q.mul(&r).agrees_with(&p.mul(&l)) {
            return Ok((r, l));
        }
    }
    Err(Error::NoSolutionAtPrecision)
}
