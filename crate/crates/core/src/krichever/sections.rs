//! Operators `sum_k a_k(z) (d/dz)^k` acting on planes.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::exact::scalar::binomial;
use crate::exact::ZSeries;
use crate::grassmannian::spectral::excess;
use crate::grassmannian::Plane;

/// A finite-order operator in `z` with Laurent-series coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZOperator {
    coeffs: BTreeMap<usize, ZSeries>,
}

impl ZOperator {
    pub fn new(coeffs: impl IntoIterator<Item = (usize, ZSeries)>) -> Self {
        let mut out = ZOperator {
            coeffs: BTreeMap::new(),
        };
        for (k, a) in coeffs {
            out.add_term(k, a);
        }
        out
    }

    /// Multiplication by `f`.
    pub fn multiplication(f: ZSeries) -> Self {
        Self::new([(0, f)])
    }

    /// `d/dz`, its coefficient trusted down to `floor`.
    pub fn d_z(floor: i64) -> Self {
        Self::new([(1, ZSeries::one(floor))])
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, ZSeries> {
        &self.coeffs
    }

    pub fn max_ord(&self) -> usize {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    fn add_term(&mut self, k: usize, a: ZSeries) {
        let sum = match self.coeffs.remove(&k) {
            Some(b) => b.add(&a),
            None => a,
        };
        self.coeffs.insert(k, sum);
    }

    /// `self ∘ inner` by the Leibniz rule.
    pub fn compose(&self, inner: &ZOperator) -> ZOperator {
        let mut out = ZOperator {
            coeffs: BTreeMap::new(),
        };
        for (&k, a) in &self.coeffs {
            for (&l, b) in &inner.coeffs {
                let mut db = b.clone();
                for i in 0..=k {
                    out.add_term(k - i + l, a.mul(&db).scale(&binomial(k as i64, i as u64)));
                    db = db.derive_z();
                }
            }
        }
        out
    }
}

impl fmt::Display for ZOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, a)| format!("({a})*Dz^{k}"))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `sum_k a_k(z) d^k v / dz^k`.
pub fn z_apply(op: &ZOperator, v: &ZSeries) -> ZSeries {
    let mut acc: Option<ZSeries> = None;
    let mut dv = v.clone();
    for k in 0..=op.max_ord() {
        if let Some(a) = op.coeffs.get(&k) {
            // Coefficients of `a` below this cut cannot reach the product's window.
            let a = if a.is_zero() || dv.is_zero() {
                a.clone()
            } else {
                a.truncate(a.top() + dv.floor() - dv.top())
            };
            let term = a.mul(&dv);
            acc = Some(match acc {
                Some(s) => s.add(&term),
                None => term,
            });
        }
        dv = dv.derive_z();
    }
    acc.unwrap_or_else(|| ZSeries::zero(v.floor()))
}

/// How an operator meets a plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SectionVerdict {
    /// Every checked image lies in the plane.
    Preserving,
    /// The images leave the plane in a stabilized finite-dimensional excess.
    RationalSection(usize),
    UnknownAtPrecision,
}

impl fmt::Display for SectionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionVerdict::Preserving => f.write_str("preserving"),
            SectionVerdict::RationalSection(k) => write!(f, "rational-section({k})"),
            SectionVerdict::UnknownAtPrecision => f.write_str("unknown-at-precision"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SectionCheck {
    pub verdict: SectionVerdict,
    /// Number of basis vectors whose image was reduced against the plane.
    pub checked: usize,
    pub excess: usize,
    pub stabilized: bool,
    /// `(n, residual)` for the first image leaving the plane.
    pub witness: Option<(usize, ZSeries)>,
    pub windows: Vec<(usize, usize)>,
}

/// Reduces `op v_n` against `w` for every basis vector whose image stays within the depth.
pub fn section_check(w: &Plane, op: &ZOperator) -> SectionCheck {
    let mut residuals = Vec::new();
    for v in w.basis() {
        match w.reduce(&z_apply(op, v)) {
            Some(r) if r.floor() <= -1 => residuals.push(r),
            _ => break,
        }
    }
    let witness = residuals
        .iter()
        .position(|r| !r.is_zero())
        .map(|n| (n, residuals[n].clone()));
    let e = excess(&residuals);
    let verdict = match (&witness, e.stabilized) {
        (None, _) if !residuals.is_empty() => SectionVerdict::Preserving,
        (Some(_), true) if e.dim > 0 => SectionVerdict::RationalSection(e.dim),
        _ => SectionVerdict::UnknownAtPrecision,
    };
    SectionCheck {
        verdict,
        checked: residuals.len(),
        excess: e.dim,
        stabilized: e.stabilized,
        witness,
        windows: e.windows,
    }
}
