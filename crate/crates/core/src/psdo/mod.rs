//! Pseudodifferential operators `sum_k u_k(x) D^k` with truncated coefficients.
//!
//! An operator stores its coefficients by `D`-order together with an optional
//! floor. Orders below the floor are unknown. Without a floor, orders that are
//! not stored are exactly zero (finite operators such as differential ones).

pub mod cells;
mod dressing;
mod text;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::scalar::{binomial, int};
use crate::exact::{Scalar, XSeries, ZSeries};

pub use dressing::{lax_bracket, schur_dress, schur_dress_to_depth};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsDO {
    terms: BTreeMap<i64, XSeries>,
    floor: Option<i64>,
}

fn max_floor(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl PsDO {
    /// Builds from `(order, coefficient)` pairs; coefficients below `floor` or with
    /// no trusted x-degree are dropped.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, XSeries)>, floor: Option<i64>) -> Self {
        let mut map: BTreeMap<i64, XSeries> = BTreeMap::new();
        for (k, c) in terms {
            if floor.is_some_and(|f| k < f) {
                continue;
            }
            match map.get_mut(&k) {
                Some(e) => *e = e.add(&c),
                None => {
                    map.insert(k, c);
                }
            }
        }
        let mut p = PsDO { terms: map, floor };
        p.settle();
        p
    }

    /// Drops coefficients with no trusted x-degree, raising the floor above them.
    fn settle(&mut self) {
        if let Some(k) = self
            .terms
            .iter()
            .rev()
            .find(|(_, c)| c.prec() == 0)
            .map(|(k, _)| *k)
        {
            self.floor = max_floor(self.floor, Some(k + 1));
        }
        if let Some(f) = self.floor {
            self.terms = self.terms.split_off(&f);
        }
    }

    /// The exactly-zero operator.
    pub fn zero() -> Self {
        PsDO {
            terms: BTreeMap::new(),
            floor: None,
        }
    }

    /// `c D^k` with `c` a constant known to `prec`.
    pub fn monomial(k: i64, c: Scalar, prec: usize) -> Self {
        Self::from_terms([(k, XSeries::constant(c, prec))], None)
    }

    /// `D^k` with coefficient `1` known to `prec`.
    pub fn d_pow(k: i64, prec: usize) -> Self {
        Self::monomial(k, Scalar::one(), prec)
    }

    pub fn identity(prec: usize) -> Self {
        Self::d_pow(0, prec)
    }

    /// Multiplication by the series `u(x)`.
    pub fn multiplication(u: XSeries) -> Self {
        Self::from_terms([(0, u)], None)
    }

    /// The constant-coefficient operator `f(D)` obtained by substituting `D` for `z`.
    pub fn from_zseries(f: &ZSeries, prec: usize) -> Self {
        let terms = f
            .terms()
            .into_iter()
            .map(|(e, c)| (e, XSeries::constant(c, prec)));
        Self::from_terms(terms, Some(f.floor()))
    }

    pub fn terms(&self) -> &BTreeMap<i64, XSeries> {
        &self.terms
    }

    /// Lowest trusted order; `None` when all unstored orders are exactly zero.
    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    /// Highest stored order.
    pub fn top(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Order: the highest order whose coefficient is not certified zero.
    pub fn order(&self) -> Option<i64> {
        self.terms
            .iter()
            .rev()
            .find(|(_, c)| !c.is_zero())
            .map(|(k, _)| *k)
    }

    pub fn leading(&self) -> Option<&XSeries> {
        self.order().map(|k| &self.terms[&k])
    }

    /// Coefficient at a stored order.
    pub fn get(&self, k: i64) -> Option<&XSeries> {
        self.terms.get(&k)
    }

    /// Whether the coefficient at order `k` is known (possibly as exact zero).
    pub fn is_trusted(&self, k: i64) -> bool {
        self.floor.is_none_or(|f| k >= f)
    }

    /// Trusted x-precision at order `k`: `None` for an exactly-zero coefficient,
    /// `Some(0)` below the floor.
    pub fn prec_at(&self, k: i64) -> Option<usize> {
        if !self.is_trusted(k) {
            return Some(0);
        }
        self.terms.get(&k).map(XSeries::prec)
    }

    /// Smallest x-precision among stored coefficients.
    pub fn min_prec(&self) -> usize {
        self.terms.values().map(XSeries::prec).min().unwrap_or(0)
    }

    /// Largest x-precision among stored coefficients.
    pub fn max_prec(&self) -> usize {
        self.terms.values().map(XSeries::prec).max().unwrap_or(0)
    }

    /// Certified zero: every trusted coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.terms.values().all(XSeries::is_zero)
    }

    /// All stored negative-order coefficients are certified zero.
    pub fn negative_part_is_zero(&self) -> bool {
        self.terms.range(..0).all(|(_, c)| c.is_zero())
    }

    /// Equality on the common trusted window.
    pub fn agrees_with(&self, other: &PsDO) -> bool {
        let floor = max_floor(self.floor, other.floor);
        let keys: std::collections::BTreeSet<i64> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .copied()
            .collect();
        keys.into_iter()
            .filter(|k| floor.is_none_or(|f| *k >= f))
            .all(|k| match (self.terms.get(&k), other.terms.get(&k)) {
                (Some(a), Some(b)) => a.agrees_with(b),
                (Some(a), None) | (None, Some(a)) => a.is_zero(),
                (None, None) => true,
            })
    }

    /// Raises the floor to `f` (dropping lower orders); never lowers it.
    pub fn truncate_floor(&self, f: i64) -> Self {
        let floor = max_floor(self.floor, Some(f));
        Self::from_terms(self.terms.clone(), floor)
    }

    /// Caps every coefficient's precision at `prec`.
    pub fn truncate_prec(&self, prec: usize) -> Self {
        Self::from_terms(
            self.terms.iter().map(|(k, c)| (*k, c.truncate(prec))),
            self.floor,
        )
    }

    /// Removes stored coefficients that are certified zero at orders above the
    /// order of the operator.
    pub fn trim_top(&self) -> Self {
        let mut out = self.clone();
        while let Some((&k, c)) = out.terms.iter().next_back() {
            if c.is_zero() && out.floor.is_none_or(|f| k > f) {
                out.terms.remove(&k);
            } else {
                break;
            }
        }
        out
    }

    /// Right multiplication by `D^i`, which shifts every order by `i`.
    pub fn shift_order(&self, i: i64) -> Self {
        Self::from_terms(
            self.terms.iter().map(|(k, c)| (k + i, c.clone())),
            self.floor.map(|f| f + i),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, u)| (*k, u.scale(c))), self.floor)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    fn combine(&self, other: &PsDO, sign: &Scalar) -> Self {
        let floor = max_floor(self.floor, other.floor);
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let c = c.scale(sign);
            match terms.get_mut(k) {
                Some(e) => *e = e.add(&c),
                None => {
                    terms.insert(*k, c);
                }
            }
        }
        Self::from_terms(terms, floor)
    }

    pub fn add(&self, other: &PsDO) -> Self {
        self.combine(other, &Scalar::one())
    }

    pub fn sub(&self, other: &PsDO) -> Self {
        self.combine(other, &-Scalar::one())
    }

    /// Left multiplication by the series `u(x)`.
    pub fn left_mul_series(&self, u: &XSeries) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, u.mul(c))), self.floor)
    }

    /// Product by the generalized Leibniz rule
    /// `D^a v = sum_t C(a, t) v^(t) D^(a - t)`, truncated to the trusted window.
    pub fn mul(&self, other: &PsDO) -> Self {
        if (self.terms.is_empty() && self.floor.is_none())
            || (other.terms.is_empty() && other.floor.is_none())
        {
            return Self::zero();
        }
        // An operator with no stored terms behaves as if its top sat just below its floor.
        let ptop = self.top().unwrap_or_else(|| self.floor.unwrap() - 1);
        let qtop = other.top().unwrap_or_else(|| other.floor.unwrap() - 1);
        let mut floor = max_floor(self.floor.map(|f| f + qtop), other.floor.map(|f| f + ptop));
        // First pass: orders made unknown by exhausted x-precision of derivatives.
        for &a in self.terms.keys() {
            for (&b, v) in &other.terms {
                let pv = v.prec() as i64;
                if a < 0 || pv <= a {
                    floor = max_floor(floor, Some(a + b - pv + 1));
                }
            }
        }
        let mut acc: BTreeMap<i64, XSeries> = BTreeMap::new();
        for (&b, v) in &other.terms {
            let mut derivs: Vec<XSeries> = vec![v.clone()];
            for (&a, u) in &self.terms {
                let mut t: usize = 0;
                loop {
                    let r = a + b - t as i64;
                    if floor.is_some_and(|f| r < f) || (a >= 0 && t as i64 > a) || t >= v.prec() {
                        break;
                    }
                    while derivs.len() <= t {
                        let next = derivs.last().unwrap().derive().expect("precision checked");
                        derivs.push(next);
                    }
                    let c = binomial(a, t as u64);
                    if !c.is_zero() {
                        let term = u.scale(&c).mul(&derivs[t]);
                        match acc.get_mut(&r) {
                            Some(e) => *e = e.add(&term),
                            None => {
                                acc.insert(r, term);
                            }
                        }
                    }
                    t += 1;
                }
            }
        }
        Self::from_terms(acc, floor)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::identity(self.max_prec());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `[self, other] = self other - other self`.
    pub fn commutator(&self, other: &PsDO) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Default depth for inverses: the trusted window below the top, or the
    /// coefficient precision for finite operators.
    pub fn default_depth(&self) -> usize {
        match (self.floor, self.order()) {
            (Some(f), Some(m)) => (m - f).max(0) as usize,
            _ => self.max_prec(),
        }
    }

    /// Inverse with the default depth.
    pub fn invert(&self) -> Result<Self> {
        self.invert_to_depth(self.default_depth())
    }

    /// Inverse computed down to order `-ord - depth` by a Neumann series around
    /// the leading term.
    pub fn invert_to_depth(&self, depth: usize) -> Result<Self> {
        let m = self.order().ok_or(Error::NotInvertible)?;
        let lead = &self.terms[&m];
        if !lead.is_unit() {
            return Err(Error::NotInvertible);
        }
        let floor = -m - depth as i64;
        let lead_inv = Self::d_pow(-m, lead.prec() + depth + 1)
            .mul(&Self::multiplication(lead.invert()?))
            .truncate_floor(floor);
        let rest = self
            .trim_top()
            .sub(&Self::from_terms([(m, lead.clone())], None));
        let rest = rest.truncate_floor(m - depth as i64);
        let neumann = lead_inv.mul(&rest).neg().truncate_floor(-(depth as i64));
        let mut sum = Self::identity(lead.prec() + depth + 1);
        let mut power = sum.clone();
        for _ in 0..depth {
            power = power.mul(&neumann).truncate_floor(-(depth as i64));
            if power.terms.is_empty() {
                break;
            }
            sum = sum.add(&power);
        }
        Ok(sum.mul(&lead_inv).truncate_floor(floor))
    }

    /// Formal adjoint, `(u D^k)* = (-D)^k u`.
    pub fn adjoint(&self) -> Self {
        let mut out = PsDO {
            terms: BTreeMap::new(),
            floor: self.floor,
        };
        for (&k, u) in &self.terms {
            let sign = if k.rem_euclid(2) == 0 {
                int(1)
            } else {
                int(-1)
            };
            let piece = Self::monomial(k, sign, u.prec() + 1).mul(&Self::multiplication(u.clone()));
            out = out.add(&piece);
        }
        out.floor = max_floor(out.floor, self.floor);
        Self::from_terms(out.terms, out.floor)
    }

    /// The differential part: orders `>= 0`.
    pub fn diff_part(&self) -> Self {
        let floor = self.floor.filter(|&f| f > 0);
        Self::from_terms(self.terms.range(0..).map(|(k, c)| (*k, c.clone())), floor)
    }

    /// Everything below order 0.
    pub fn integral_part(&self) -> Self {
        Self::from_terms(
            self.terms.range(..0).map(|(k, c)| (*k, c.clone())),
            self.floor,
        )
    }

    /// Leading coefficient certified equal to 1.
    pub fn is_monic(&self) -> bool {
        self.leading()
            .is_some_and(|c| c.is_constant(&Scalar::one()))
    }

    /// Leading coefficient 1 and sub-leading coefficient certified zero.
    pub fn is_normalized(&self) -> bool {
        let Some(m) = self.order() else { return false };
        if !self.is_monic() || !self.is_trusted(m - 1) {
            return false;
        }
        self.terms.get(&(m - 1)).is_none_or(XSeries::is_zero)
    }

    /// A finite operator with no negative orders.
    pub fn is_differential(&self) -> bool {
        self.floor.is_none() && self.terms.range(..0).all(|(_, c)| c.is_zero())
    }

    /// Drops the window below zero once it is certified zero, yielding a finite
    /// differential operator. Errors when a trusted negative coefficient is nonzero.
    pub fn to_differential(&self) -> Result<Self> {
        if !self.negative_part_is_zero() {
            return Err(Error::NotDifferential);
        }
        if self.floor.is_some_and(|f| f > 0) {
            return Err(Error::PrecisionExhausted(
                "window does not reach order 0".into(),
            ));
        }
        Ok(Self::from_terms(
            self.terms.range(0..).map(|(k, c)| (*k, c.clone())),
            None,
        ))
    }
}

/// JSON mirror of an operator.
#[derive(Serialize, Deserialize)]
struct PsdoJson {
    floor: Option<i64>,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    order: i64,
    prec: usize,
    coeff: XSeries,
}

impl Serialize for PsDO {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(k, c)| TermJson {
                order: *k,
                prec: c.prec(),
                coeff: c.clone(),
            })
            .collect();
        PsdoJson {
            floor: self.floor,
            terms,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PsDO {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PsdoJson::deserialize(d)?;
        Ok(PsDO::from_terms(
            j.terms
                .into_iter()
                .map(|t| (t.order, t.coeff.truncate(t.prec))),
            j.floor,
        ))
    }
}
