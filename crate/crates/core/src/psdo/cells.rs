//! Flattening operators into coefficient cells `(order, x-degree)` for exact
//! linear algebra.

use num_traits::Zero;

use super::PsDO;
use crate::exact::Scalar;

/// Rows indexed by the cells trusted in every column, restricted to orders
/// accepted by `keep`. Entry `(cell, i)` is the coefficient of `cols[i]` there.
pub fn cell_rows(cols: &[&PsDO], keep: impl Fn(i64) -> bool) -> Vec<Vec<Scalar>> {
    let mut orders: Vec<i64> = cols
        .iter()
        .flat_map(|c| c.terms().keys().copied())
        .collect();
    orders.sort_unstable();
    orders.dedup();
    let mut rows = Vec::new();
    for k in orders.into_iter().rev() {
        if !keep(k) || !cols.iter().all(|c| c.is_trusted(k)) {
            continue;
        }
        let Some(bound) = cols.iter().filter_map(|c| c.get(k).map(|s| s.prec())).min() else {
            continue;
        };
        for d in 0..bound {
            rows.push(
                cols.iter()
                    .map(|c| c.get(k).map_or_else(Scalar::zero, |s| s.coeff(d).clone()))
                    .collect(),
            );
        }
    }
    rows
}

/// Whether order `k` lies inside the trusted window of every column.
pub fn trusted_in_all(cols: &[&PsDO], k: i64) -> bool {
    cols.iter().all(|c| c.is_trusted(k))
}

/// `sum_i coeffs[i] * cols[i]`.
pub fn combine(cols: &[PsDO], coeffs: &[Scalar]) -> PsDO {
    let mut acc = PsDO::zero();
    for (c, a) in cols.iter().zip(coeffs) {
        if !a.is_zero() {
            acc = acc.add(&c.scale(a));
        }
    }
    acc
}
