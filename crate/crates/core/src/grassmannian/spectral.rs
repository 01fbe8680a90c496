//! Spectral algebra, spectral field and rank of a plane.

use num_traits::Zero;
use serde::Serialize;

use super::Plane;
use crate::error::{Error, Result};
use crate::exact::linalg::echelon;
use crate::exact::{kernel_basis, Scalar, Verdict, ZSeries};

/// Outcome of `f W ⊆ W` on the trusted window.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralCheck {
    pub verdict: Verdict,
    /// `(n, residual of f v_n)` for the first basis vector leaving `W`.
    pub witness: Option<(usize, ZSeries)>,
}

/// Checks `f v_n ∈ W` for every `n` whose product stays within the depth.
pub fn spectral_membership(w: &Plane, f: &ZSeries) -> SpectralCheck {
    let mut checked = false;
    for (n, v) in w.basis().iter().enumerate() {
        let Some(r) = w.reduce(&f.mul(v)) else { break };
        if r.floor() > -1 {
            continue;
        }
        if !r.is_zero() {
            return SpectralCheck {
                verdict: Verdict::NoWitness,
                witness: Some((n, r)),
            };
        }
        checked = true;
    }
    let verdict = if checked {
        Verdict::YesCertified
    } else {
        Verdict::UnknownAtPrecision
    };
    SpectralCheck {
        verdict,
        witness: None,
    }
}

/// Dimension data for `(W + f W) / W`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralCert {
    pub f: ZSeries,
    pub quotient_dim: usize,
    /// The dimension agreed on the last three windows.
    pub stabilized: bool,
    /// Echelon representatives of the excess, holding negative powers only.
    pub excess_basis: Vec<ZSeries>,
    /// `(window size, dimension)` for each window examined.
    pub windows: Vec<(usize, usize)>,
}

/// Rank of a growing family of negative-power residuals on their common window.
pub(crate) struct Excess {
    pub dim: usize,
    pub stabilized: bool,
    pub basis: Vec<ZSeries>,
    pub windows: Vec<(usize, usize)>,
}

/// Ranks of the first `len - 2`, `len - 1` and `len` residuals, compared on the
/// exponents `-1` down to their common floor. `len` is the longest prefix whose
/// common window has at least as many exponents as residuals.
pub(crate) fn excess(residuals: &[ZSeries]) -> Excess {
    let mut len = 0;
    let mut floor = i64::MIN;
    for (i, r) in residuals.iter().enumerate() {
        let f = floor.max(r.floor());
        if -f < (i + 1) as i64 {
            break;
        }
        floor = f;
        len = i + 1;
    }
    if len == 0 {
        return Excess {
            dim: 0,
            stabilized: false,
            basis: Vec::new(),
            windows: Vec::new(),
        };
    }
    let residuals = &residuals[..len];
    let width = (-floor).max(0) as usize;
    let rows: Vec<Vec<Scalar>> = residuals
        .iter()
        .map(|r| (0..width).map(|i| r.coeff(-1 - i as i64)).collect())
        .collect();
    let mut windows = Vec::new();
    for size in len.saturating_sub(2).max(1)..=len {
        windows.push((size, crate::exact::rank(&rows[..size], width)));
    }
    let dim = windows.last().unwrap().1;
    let stabilized = windows.len() == 3 && windows.iter().all(|(_, d)| *d == dim);
    let basis = echelon(&rows, width)
        .rows
        .iter()
        .map(|row| {
            let terms: Vec<(i64, Scalar)> = row
                .iter()
                .enumerate()
                .map(|(i, c)| (-1 - i as i64, Scalar::from_integer(c.clone())))
                .collect();
            let s = ZSeries::from_terms(&terms, floor);
            let lead = s.leading().cloned().expect("echelon rows are nonzero");
            s.scale(&lead.recip())
        })
        .collect();
    Excess {
        dim,
        stabilized,
        basis,
        windows,
    }
}

/// Residuals of `f v_n` against `W` while the product stays within the depth and
/// keeps a trusted negative exponent.
fn residuals(w: &Plane, f: &ZSeries) -> Vec<ZSeries> {
    let mut out = Vec::new();
    for v in w.basis() {
        match w.reduce(&f.mul(v)) {
            Some(r) if r.floor() <= -1 => out.push(r),
            _ => break,
        }
    }
    out
}

/// `dim (W + f W) / W` by elimination over growing windows of basis vectors.
pub fn quotient_dim(w: &Plane, f: &ZSeries) -> SpectralCert {
    let e = excess(&residuals(w, f));
    SpectralCert {
        f: f.clone(),
        quotient_dim: e.dim,
        stabilized: e.stabilized,
        excess_basis: e.basis,
        windows: e.windows,
    }
}

/// Membership of `f` in the spectral field: certified when the quotient dimension stabilizes.
pub fn field_membership(w: &Plane, f: &ZSeries) -> Verdict {
    if quotient_dim(w, f).stabilized {
        Verdict::YesCertified
    } else {
        Verdict::UnknownAtPrecision
    }
}

/// Dimension of the span of a plane's basis over `C(f)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    /// The rank agreed on the last three candidate counts.
    pub stabilized: bool,
    pub deg_bound: usize,
    /// Indices of the basis vectors kept as independent.
    pub independent: Vec<usize>,
    /// `(candidates examined, rank)` for the last three candidate counts.
    pub windows: Vec<(usize, usize)>,
}

/// Finds `p_0(f) g + sum_i p_i(f) s_i = 0` with `p_0 ≠ 0` and every `deg p_i <= b`
/// for the least such `b <= bound`. A dependence is only accepted when the trusted
/// window has more coefficients than unknowns.
fn depends(g: &ZSeries, kept: &[&ZSeries], powers: &[ZSeries], bound: usize) -> bool {
    for b in 0..=bound {
        let mut cols = Vec::new();
        for s in std::iter::once(g).chain(kept.iter().copied()) {
            for p in &powers[..=b] {
                cols.push(p.mul(s));
            }
        }
        let floor = cols.iter().map(ZSeries::floor).max().unwrap();
        let top = cols.iter().map(ZSeries::top).max().unwrap();
        if top < floor || ((top - floor + 1) as usize) <= cols.len() {
            return false;
        }
        let rows: Vec<Vec<Scalar>> = (floor..=top)
            .map(|e| cols.iter().map(|c| c.coeff(e)).collect())
            .collect();
        if kernel_basis(&rows, cols.len())
            .iter()
            .any(|v| v[..=b].iter().any(|c| !c.is_zero()))
        {
            return true;
        }
    }
    false
}

/// Rank of `w` over `C(f)`, searching polynomial dependences of degree `<= deg_bound`
/// among `v_0, ..., v_{K-1}` with `K = min(depth + 1, deg_bound)`.
pub fn rank(w: &Plane, f: &ZSeries, deg_bound: usize) -> Result<RankReport> {
    if !quotient_dim(w, f).stabilized || f.degree().is_none_or(|d| d <= 0) {
        return Err(Error::FNotCertified);
    }
    let powers: Vec<ZSeries> = (0..=deg_bound as u32).map(|a| f.pow(a)).collect();
    let candidates = (w.depth() + 1).min(deg_bound.max(1));
    let mut independent: Vec<usize> = Vec::new();
    let mut trace = Vec::new();
    for n in 0..candidates {
        let kept: Vec<&ZSeries> = independent.iter().map(|&i| w.vector(i)).collect();
        if !depends(w.vector(n), &kept, &powers, deg_bound) {
            independent.push(n);
        }
        trace.push((n + 1, independent.len()));
    }
    let windows: Vec<(usize, usize)> = trace[trace.len().saturating_sub(3)..].to_vec();
    let rank = independent.len();
    let stabilized = windows.len() == 3 && windows.iter().all(|(_, r)| *r == rank);
    Ok(RankReport {
        rank,
        stabilized,
        deg_bound,
        independent,
        windows,
    })
}
