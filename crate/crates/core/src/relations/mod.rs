//! Algebraic relations between commuting operators: order bounds, growth of the
//! monomial span and exact recovery of `F(z, w)` with `F(P, Q) = 0`.

#[cfg(test)]
mod tests;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{kernel_basis, rank, RatPoly2, Scalar};
use crate::fractional::{dord, FracOp};
use crate::psdo::cells::{cell_rows, combine};
use crate::psdo::PsDO;

/// The cells a relation was checked on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellWindow {
    /// Lowest order trusted in every monomial, `None` when all are finite.
    pub lowest_order: Option<i64>,
    pub highest_order: i64,
    /// Number of `(order, x-degree)` cells compared.
    pub cells: usize,
}

/// Span data for `{p^i q^j : 0 <= i, j <= n}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BCReport {
    pub n_used: usize,
    pub span_dim: usize,
    /// `2 r n + 1` with `r = |ord p| + |ord q| + dord p + dord q`.
    pub bound: usize,
    pub relation: Option<RatPoly2>,
    /// Dimension of the relation space among the monomials searched.
    pub kernel_dim: usize,
    pub residual_window: CellWindow,
}

/// Whether `[p, q]` vanishes on every trusted cell.
pub fn commute_at_window(p: &FracOp, q: &FracOp) -> bool {
    p.expansion()
        .commutator(q.expansion())
        .terms()
        .values()
        .all(|c| c.is_zero())
}

fn require_commuting(p: &FracOp, q: &FracOp) -> Result<()> {
    if commute_at_window(p, q) {
        Ok(())
    } else {
        Err(Error::NotCommutingAtWindow)
    }
}

fn order_of(p: &FracOp) -> Result<i64> {
    p.order().ok_or(Error::ZeroOrder)
}

/// `(-n (dord p + dord q), n (ord p + ord q))`.
pub fn order_bounds(p: &FracOp, q: &FracOp, n: usize) -> Result<(i64, i64)> {
    require_commuting(p, q)?;
    let d = (dord(p)?.0 + dord(q)?.0) as i64;
    let o = order_of(p)? + order_of(q)?;
    Ok((-(n as i64) * d, n as i64 * o))
}

/// Lazily computed powers `p^i`, `q^j` and products `p^i q^j`.
struct Monomials<'a> {
    p: &'a PsDO,
    q: &'a PsDO,
    p_pows: Vec<PsDO>,
    q_pows: Vec<PsDO>,
    products: BTreeMap<(u32, u32), PsDO>,
}

impl<'a> Monomials<'a> {
    fn new(p: &'a PsDO, q: &'a PsDO) -> Self {
        let one = PsDO::identity(p.max_prec().max(q.max_prec()).max(1));
        Monomials {
            p,
            q,
            p_pows: vec![one.clone()],
            q_pows: vec![one],
            products: BTreeMap::new(),
        }
    }

    fn get(&mut self, i: u32, j: u32) -> &PsDO {
        while self.p_pows.len() <= i as usize {
            let next = self.p_pows.last().unwrap().mul(self.p);
            self.p_pows.push(next);
        }
        while self.q_pows.len() <= j as usize {
            let next = self.q_pows.last().unwrap().mul(self.q);
            self.q_pows.push(next);
        }
        let (p_pows, q_pows) = (&self.p_pows, &self.q_pows);
        self.products.entry((i, j)).or_insert_with(|| match (i, j) {
            (0, _) => q_pows[j as usize].clone(),
            (_, 0) => p_pows[i as usize].clone(),
            _ => p_pows[i as usize].mul(&q_pows[j as usize]),
        })
    }

    /// `(i, j)` with `i, j <= n` and `i + j <= d`, by total degree and then decreasing `i`.
    fn keys(n: u32, d: u32) -> Vec<(u32, u32)> {
        let mut keys: Vec<(u32, u32)> = (0..=n)
            .flat_map(|i| (0..=n).map(move |j| (i, j)))
            .filter(|(i, j)| i + j <= d)
            .collect();
        keys.sort_by_key(|&(i, j)| (i + j, std::cmp::Reverse(i)));
        keys
    }

    fn collect(&mut self, keys: &[(u32, u32)]) -> Vec<PsDO> {
        keys.iter().map(|&(i, j)| self.get(i, j).clone()).collect()
    }
}

/// `p^i q^j` for `0 <= i, j <= n`, sorted by total degree and then by decreasing `i`.
fn monomials(p: &PsDO, q: &PsDO, n: usize) -> Vec<((u32, u32), PsDO)> {
    let keys = Monomials::keys(n as u32, 2 * n as u32);
    let ops = Monomials::new(p, q).collect(&keys);
    keys.into_iter().zip(ops).collect()
}

fn window_of(cols: &[&PsDO], cells: usize) -> CellWindow {
    CellWindow {
        lowest_order: cols.iter().filter_map(|c| c.floor()).max(),
        highest_order: cols.iter().filter_map(|c| c.top()).max().unwrap_or(0),
        cells,
    }
}

fn growth_bound(p: &FracOp, q: &FracOp, n: usize) -> Result<usize> {
    let r = order_of(p)?.abs() + order_of(q)?.abs() + (dord(p)?.0 + dord(q)?.0) as i64;
    Ok(2 * r as usize * n + 1)
}

/// Dimension of `span{p^i q^j : 0 <= i, j <= n}` on the cells trusted in every monomial.
pub fn span_dim(p: &FracOp, q: &FracOp, n: usize) -> Result<BCReport> {
    require_commuting(p, q)?;
    let mons = monomials(p.expansion(), q.expansion(), n);
    let cols: Vec<&PsDO> = mons.iter().map(|(_, m)| m).collect();
    let rows = cell_rows(&cols, |_| true);
    if rows.is_empty() {
        return Err(Error::PrecisionExhausted(
            "no cell is trusted in every monomial".into(),
        ));
    }
    let dim = rank(&rows, cols.len());
    Ok(BCReport {
        n_used: n,
        span_dim: dim,
        bound: growth_bound(p, q, n)?,
        relation: None,
        kernel_dim: cols.len() - dim,
        residual_window: window_of(&cols, rows.len()),
    })
}

/// The first relation `F(p, q) = 0` over `n = 1..=n_max`. For each `n` the monomials
/// with `i, j <= n` enter one at a time by increasing total degree; a kernel vector is accepted once
/// `F(p, q)` vanishes on its whole trusted window and the system has at least as many
/// cells as monomials.
pub fn bc_relation(p: &FracOp, q: &FracOp, n_max: usize) -> Result<(RatPoly2, BCReport)> {
    match p.order() {
        Some(o) if o != 0 && p.num().is_monic() => {}
        _ => return Err(Error::NotNormalized),
    }
    if q.order().is_none_or(|o| o == 0) {
        return Err(Error::ZeroOrder);
    }
    require_commuting(p, q)?;
    let mut cache = Monomials::new(p.expansion(), q.expansion());
    let mut growth = Vec::new();
    for n in 1..=n_max as u32 {
        let all = Monomials::keys(n, 2 * n);
        let mut dim = 0;
        for len in 1..=all.len() {
            let keys = &all[..len];
            if !keys.iter().any(|&(i, j)| i.max(j) == n) {
                continue;
            }
            let ops = cache.collect(keys);
            let cols: Vec<&PsDO> = ops.iter().collect();
            let rows = cell_rows(&cols, |_| true);
            let kernel = kernel_basis(&rows, cols.len());
            dim = cols.len() - kernel.len();
            if rows.len() < cols.len() {
                continue;
            }
            // Kernel vectors come ordered by their last monomial; the first verified one is kept.
            for v in &kernel {
                if !combine(&ops, v).terms().values().all(|c| c.is_zero()) {
                    continue;
                }
                let f = RatPoly2::from_terms(
                    keys.iter()
                        .zip(v)
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (*k, c.clone())),
                )
                .normalized();
                let report = BCReport {
                    n_used: n as usize,
                    span_dim: dim,
                    bound: growth_bound(p, q, n as usize)?,
                    relation: Some(f.clone()),
                    kernel_dim: kernel.len(),
                    residual_window: window_of(&cols, rows.len()),
                };
                return Ok((f, report));
            }
        }
        growth.push((n as usize, dim));
    }
    Err(Error::NoRelationWithinBudget { growth })
}

/// `F(p, q)` as an operator.
pub fn evaluate(f: &RatPoly2, p: &PsDO, q: &PsDO) -> PsDO {
    let n = f.deg_z().max(f.deg_w()) as usize;
    let mons = monomials(p, q, n);
    let mut acc = PsDO::zero();
    for ((i, j), m) in &mons {
        let c: Scalar = f.coeff(*i, *j);
        if !c.is_zero() {
            acc = acc.add(&m.scale(&c));
        }
    }
    acc
}
