//! Dressing operators and the stationary Lax bracket.

use num_traits::Zero;

use super::PsDO;
use crate::error::{Error, Result};
use crate::exact::scalar::{binomial, int};
use crate::exact::XSeries;

/// Dressing operator with the default depth (see [`schur_dress_to_depth`]).
pub fn schur_dress(l: &PsDO) -> Result<PsDO> {
    let m = l.order().ok_or(Error::NotNormalized)?;
    let depth = match l.floor() {
        Some(f) => (m - 1 - f).max(0) as usize,
        None => l.max_prec(),
    };
    schur_dress_to_depth(l, depth)
}

/// Solves `U D^m = L U` for `U = 1 + sum_{j=1..depth} u_j D^-j` with `u_j(0) = 0`.
///
/// The coefficient of `D^(m-k)` gives
/// `m u_{k-1}' = -sum C(m,t) u_j^(t) - sum C(m-i,t) l_i u_j^(t)`, summed over
/// `j + t = k` (`t >= 2`) and `i + j + t = k` (`i >= 2`). The result stops early if
/// the window of `l` or the x-precision runs out.
pub fn schur_dress_to_depth(l: &PsDO, depth: usize) -> Result<PsDO> {
    let m = l.order().ok_or(Error::NotNormalized)?;
    if m == 0 {
        return Err(Error::ZeroOrder);
    }
    if !l.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let big = l.max_prec() + depth + 2;
    let inv_m = int(-1) / int(m);
    // derivs[j][t] = u_j^(t); u_0 = 1 is handled separately.
    let mut derivs: Vec<Vec<XSeries>> = vec![vec![XSeries::one(big)]];
    let mut reached = 0;
    'outer: for k in 2..=depth as i64 + 1 {
        let mut sum: Option<XSeries> = None;
        let mut push = |term: XSeries| {
            sum = Some(match sum.take() {
                Some(s) => s.add(&term),
                None => term,
            })
        };
        let deriv = |derivs: &mut Vec<Vec<XSeries>>, j: usize, t: usize| -> Option<XSeries> {
            while derivs[j].len() <= t {
                let next = derivs[j].last().unwrap().derive().ok()?;
                if next.prec() == 0 {
                    return None;
                }
                derivs[j].push(next);
            }
            Some(derivs[j][t].clone())
        };
        // Terms from the leading D^m acting on u_j, j >= 1.
        for t in 2..=k {
            let j = (k - t) as usize;
            if j == 0 {
                continue;
            }
            let Some(d) = deriv(&mut derivs, j, t as usize) else {
                break 'outer;
            };
            let c = binomial(m, t as u64);
            if !c.is_zero() {
                push(d.scale(&c));
            }
        }
        // Terms from the lower coefficients l_i, i >= 2.
        for i in 2..=k {
            if !l.is_trusted(m - i) {
                break 'outer;
            }
            let Some(li) = l.get(m - i) else { continue };
            for t in 0..=(k - i) {
                let j = (k - i - t) as usize;
                if j == 0 {
                    if t == 0 {
                        push(li.clone());
                    }
                    continue;
                }
                let Some(d) = deriv(&mut derivs, j, t as usize) else {
                    break 'outer;
                };
                let c = binomial(m - i, t as u64);
                if !c.is_zero() {
                    push(li.mul(&d).scale(&c));
                }
            }
        }
        let s = sum.unwrap_or_else(|| XSeries::zero(big));
        derivs.push(vec![s.scale(&inv_m).integrate()]);
        reached = (k - 1) as usize;
    }
    let mut terms = vec![(0, XSeries::one(big))];
    for (j, d) in derivs.iter().enumerate().skip(1) {
        terms.push((-(j as i64), d[0].clone()));
    }
    Ok(PsDO::from_terms(terms, Some(-(reached as i64))))
}

/// `[(L^n)_+, L]` for `L = D + sum a_j D^-j`; the result has order at most -1.
pub fn lax_bracket(l: &PsDO, n: u32) -> Result<PsDO> {
    if l.order() != Some(1) || !l.is_monic() {
        return Err(Error::NotLaxForm);
    }
    let plus = l.pow(n).diff_part();
    let bracket = plus.commutator(l);
    if !bracket.terms().range(0..).all(|(_, c)| c.is_zero()) {
        return Err(Error::PrecisionExhausted(
            "bracket has a nonzero trusted differential part".into(),
        ));
    }
    Ok(bracket.integral_part())
}
