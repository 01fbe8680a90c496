//! Denominatorial order and common denominators of sequential products.

use num_traits::Zero;
use serde::Serialize;

use super::{ore_solve, require_differential, FracOp};
use crate::error::{Error, Result};
use crate::exact::scalar::one;
use crate::exact::{solve_affine, Scalar, Verdict, XSeries};
use crate::psdo::cells::{cell_rows, trusted_in_all};
use crate::psdo::PsDO;

/// Least `k` with a monic differential `L` of order `k` making `p L` differential
/// on the trusted window of the expansion, together with that `L`.
///
/// The search tries `k = 0, 1, ...`; each step solves the linear system that
/// sets the trusted negative-order cells of `expansion(p) L` to zero.
pub fn dord(p: &FracOp) -> Result<(usize, PsDO)> {
    let e = p.expansion();
    let degs = p.num().max_prec().max(p.den().max_prec()).max(1);
    if e.is_differential() {
        return Ok((0, PsDO::identity(degs)));
    }
    let ex: Vec<PsDO> = (0..degs)
        .map(|m| e.mul(&PsDO::multiplication(XSeries::monomial(m, one(), degs))))
        .collect();
    for k in 0i64.. {
        let target = e.shift_order(k);
        let mut cols: Vec<PsDO> = Vec::new();
        let mut labels = Vec::new();
        for (m, em) in ex.iter().enumerate() {
            for i in 0..k {
                cols.push(em.shift_order(i));
                labels.push((m, i));
            }
        }
        let mut refs: Vec<&PsDO> = cols.iter().collect();
        refs.push(&target);
        if !trusted_in_all(&refs, -1) {
            return Err(Error::WindowTooSmall(format!(
                "no trusted negative order left at denominator order {k}"
            )));
        }
        let rows = cell_rows(&refs, |o| o < 0);
        let n = cols.len();
        let (mat, rhs): (Vec<Vec<Scalar>>, Vec<Scalar>) = rows
            .into_iter()
            .map(|mut r| {
                let t = r.pop().unwrap();
                (r, -t)
            })
            .unzip();
        let Some((sol, _)) = solve_affine(&mat, &rhs, n) else {
            continue;
        };
        let mut terms = vec![(k, XSeries::one(degs))];
        for ((m, i), a) in labels.iter().zip(&sol) {
            if !a.is_zero() {
                terms.push((*i, XSeries::monomial(*m, a.clone(), degs)));
            }
        }
        let l = PsDO::from_terms(terms, None);
        debug_assert!(e.mul(&l).negative_part_is_zero());
        return Ok((k as usize, l));
    }
    unreachable!()
}

/// Left and right common denominators of a sequence of fractions `P_i Q_i^-1`.
#[derive(Clone, Debug, Serialize)]
pub struct CommonDenominators {
    /// `L` with `L P_1 Q_1^-1 ... P_k Q_k^-1` differential for every `k`.
    pub left: PsDO,
    /// `L` with `P_k Q_k^-1 ... P_1 Q_1^-1 L` differential for every `k`.
    pub right: PsDO,
    /// Certificates for the left products, one per prefix length.
    pub left_prefixes: Vec<Verdict>,
    /// Certificates for the right products, one per prefix length.
    pub right_prefixes: Vec<Verdict>,
}

/// `L_1 = Q_1`, `R_1 = 1`, and `Q_{k+1} R_{k+1} = P_k R_k L_{k+1}`; returns `L_1 ... L_n`.
fn right_chain(pairs: &[(PsDO, PsDO)]) -> Result<PsDO> {
    let (p1, q1) = &pairs[0];
    let mut l_total = q1.clone();
    let mut r_prev = PsDO::identity(p1.max_prec().max(1));
    let mut p_prev = p1.clone();
    for (p, q) in &pairs[1..] {
        let (r, l) = ore_solve(&p_prev.mul(&r_prev), q)?;
        l_total = l_total.mul(&l);
        r_prev = r;
        p_prev = p.clone();
    }
    Ok(l_total.trim_top())
}

fn verdict_of(op: &PsDO) -> Verdict {
    if !op.is_trusted(-1) {
        return Verdict::UnknownAtPrecision;
    }
    if op.negative_part_is_zero() {
        Verdict::YesCertified
    } else {
        Verdict::NoWitness
    }
}

/// Builds both denominators by the inductive Ore construction and certifies
/// every prefix product on expansions trusted `depth` orders below their tops.
/// The left denominator comes from the adjoint problem.
pub fn common_denominators(pairs: &[(PsDO, PsDO)], depth: usize) -> Result<CommonDenominators> {
    if pairs.is_empty() {
        return Ok(CommonDenominators {
            left: PsDO::identity(1),
            right: PsDO::identity(1),
            left_prefixes: Vec::new(),
            right_prefixes: Vec::new(),
        });
    }
    for (p, q) in pairs {
        require_differential(p)?;
        require_differential(q)?;
        if q.order().is_none() {
            return Err(Error::NotInvertible);
        }
    }
    let right = right_chain(pairs)?;
    // (P_1 Q_1^-1 ... P_k Q_k^-1)* = Q_k*^-1 P_k* ... Q_1*^-1 P_1*; each left
    // fraction A^-1 B becomes X Y^-1 through A X = B Y.
    let mut adj = Vec::with_capacity(pairs.len());
    for (p, q) in pairs {
        let (x, y) = ore_solve(&p.adjoint(), &q.adjoint())?;
        adj.push((x, y));
    }
    let left = right_chain(&adj)?.adjoint();

    let fractions: Vec<PsDO> = pairs
        .iter()
        .map(|(p, q)| Ok(p.mul(&q.invert_to_depth(depth)?)))
        .collect::<Result<_>>()?;
    let mut right_prefixes = Vec::new();
    let mut left_prefixes = Vec::new();
    let mut from_right: Option<PsDO> = None;
    let mut from_left: Option<PsDO> = None;
    for f in &fractions {
        let r = match &from_right {
            Some(acc) => f.mul(acc),
            None => f.clone(),
        };
        let l = match &from_left {
            Some(acc) => acc.mul(f),
            None => f.clone(),
        };
        right_prefixes.push(verdict_of(&r.mul(&right)));
        left_prefixes.push(verdict_of(&left.mul(&l)));
        from_right = Some(r);
        from_left = Some(l);
    }
    Ok(CommonDenominators {
        left,
        right,
        left_prefixes,
        right_prefixes,
    })
}
