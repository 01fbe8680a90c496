//! Passing between a dressing operator `U` and its plane `W = L_+ . U`.

use num_traits::Zero;

use super::{right_act, Plane};
use crate::error::{Error, Result};
use crate::exact::scalar::{factorial, falling, one};
use crate::exact::{Scalar, XSeries, ZSeries};
use crate::psdo::PsDO;

fn require_dressing(u: &PsDO) -> Result<()> {
    if u.order() == Some(0) && u.is_monic() {
        Ok(())
    } else {
        Err(Error::NotNormalized)
    }
}

/// The plane with basis `z^n . U`, `n = 0..=depth`, canonicalized.
pub fn plane_from_dressing(u: &PsDO, depth: usize) -> Result<Plane> {
    require_dressing(u)?;
    let below = u.floor().unwrap_or(0).min(0) - u.max_prec() as i64 - 1;
    let gens = (0..=depth as i64)
        .map(|n| right_act(&ZSeries::monomial(n, one(), n + below), u))
        .collect::<Result<Vec<_>>>()?;
    Plane::from_generators(&gens, depth)
}

/// The dressing operator of `w` with the largest uniform x-precision the plane pins.
pub fn dressing_from_plane(w: &Plane) -> Result<PsDO> {
    let reach = -w.floor();
    if reach < 1 {
        return Err(Error::UnderdeterminedAtDepth(
            "plane has no trusted negative exponent".into(),
        ));
    }
    let prec = ((reach + 1) / 2).min(w.depth() as i64 + 1);
    dressing_from_plane_to(w, (reach - prec + 1) as usize, prec as usize)
}

/// `U = 1 + sum_{j=1..=count} u_j(x) D^-j` with each `u_j` known to x-precision `prec`.
///
/// `z^m . U` lies in `W` and is monic of degree `m`, so its negative coefficients are
/// fixed by its nonnegative ones. Reading off `z^-j` gives `m! u_{j,m}` in terms of
/// coefficients with smaller `m`, which is solved in increasing `m`.
pub fn dressing_from_plane_to(w: &Plane, count: usize, prec: usize) -> Result<PsDO> {
    let reach = (-w.floor()).max(0) as usize;
    let span = count + prec.max(1) - 1;
    if prec > w.depth() + 1 || span > reach {
        return Err(Error::UnderdeterminedAtDepth(format!(
            "{count} coefficients to x-precision {prec} need depth {} and floor {}, plane has depth {} and floor {}",
            prec.saturating_sub(1),
            -(span as i64),
            w.depth(),
            w.floor()
        )));
    }
    // u[j][m] for 1 <= j, j + m <= span.
    let mut u: Vec<Vec<Scalar>> = (0..=span)
        .map(|j| vec![Scalar::zero(); (span + 1).saturating_sub(j)])
        .collect();
    for m in 0..prec {
        let mi = m as i64;
        let fall: Vec<Scalar> = (0..=m).map(|k| falling(mi, k as u64)).collect();
        // Nonnegative coefficients of z^m . U.
        let mut top = vec![Scalar::zero(); m + 1];
        top[m] = one();
        for (e, c) in top.iter_mut().enumerate().take(m) {
            for k in 0..m - e {
                *c += &u[m - e - k][k] * &fall[k];
            }
        }
        let inv = factorial(m as u64).recip();
        for j in 1..=span - m {
            let mut s = Scalar::zero();
            for (e, c) in top.iter().enumerate() {
                if !c.is_zero() {
                    s += c * w.vector(e).coeff(-(j as i64));
                }
            }
            for k in 0..m {
                s -= &u[j + m - k][k] * &fall[k];
            }
            u[j][m] = s * &inv;
        }
    }
    let mut terms = vec![(0, XSeries::one(prec))];
    for (j, row) in u.iter().enumerate().take(count + 1).skip(1) {
        terms.push((-(j as i64), XSeries::new(row[..prec].to_vec())));
    }
    Ok(PsDO::from_terms(terms, Some(-(count as i64))))
}

/// `U f(D) U^-1`, with `f(D)` carrying the x-precision of `u`.
pub fn conjugate_spectral(u: &PsDO, f: &ZSeries) -> Result<PsDO> {
    require_dressing(u)?;
    // Terms of f below the floor of U f(D) never reach the product.
    let f = match (u.floor(), f.degree()) {
        (Some(uf), Some(d)) => f.truncate(uf + d),
        _ => f.clone(),
    };
    let fd = PsDO::from_zseries(&f, u.max_prec());
    Ok(u.mul(&fd).mul(&u.invert()?))
}
