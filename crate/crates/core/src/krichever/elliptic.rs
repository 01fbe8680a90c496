//! The plane of a Weierstrass cubic with a marked point, its commuting pair of
//! differential operators and a first-order section preserving it.

use serde::Serialize;

use super::curve::{weierstrass_p, CurveData};
use super::sections::ZOperator;
use crate::error::{Error, Result};
use crate::exact::scalar::ratio;
use crate::exact::{Verdict, XSeries, ZSeries};
use crate::grassmannian::{conjugate_spectral, dressing_from_plane, field_membership, rank, Plane};
use crate::psdo::PsDO;

/// An elliptic or cuspidal plane together with the series that generate it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EllipticPlane {
    pub curve: CurveData,
    pub plane: Plane,
    /// `℘(1/z)`.
    pub p: ZSeries,
    /// `℘'(1/z)`.
    pub dp: ZSeries,
    /// `(℘ - a) / ℘`.
    pub v0: ZSeries,
    /// `(℘' - b) / ℘`.
    pub v1: ZSeries,
}

/// The plane of functions `g(℘, ℘') / ℘` with `g(a, b) = 0`, spanned by `℘^i v0` in
/// even degrees and `℘^i v1` in odd degrees. Its floor leaves room for a dressing
/// operator with `depth + 1` terms at x-precision `depth + 1`.
pub fn elliptic_plane(c: &CurveData, depth: usize) -> Result<EllipticPlane> {
    let terms = (3 * depth + 6) / 2;
    let ws = weierstrass_p(c.g2(), c.g3(), terms);
    let (p, dp) = (ws.p, ws.dp);
    let p_inv = p.invert()?;
    let constant = |s| ZSeries::monomial(0, s, p.floor());
    let v0 = p.sub(&constant(c.a().clone())).mul(&p_inv);
    let v1 = dp.sub(&constant(c.b().clone())).mul(&p_inv);
    let gens: Vec<ZSeries> = (0..=depth as u32)
        .map(|n| {
            if n % 2 == 0 {
                p.pow(n / 2).mul(&v0)
            } else {
                p.pow(n / 2).mul(&v1)
            }
        })
        .collect();
    let plane = Plane::from_generators(&gens, depth)?;
    Ok(EllipticPlane {
        curve: c.clone(),
        plane,
        p,
        dp,
        v0,
        v1,
    })
}

/// A finite differential operator from `p`, once at least one negative order is
/// trusted and every trusted negative coefficient vanishes.
pub fn certified_differential(p: &PsDO) -> Result<PsDO> {
    if !p.is_trusted(-1) {
        return Err(Error::PrecisionExhausted(
            "no negative order is trusted".into(),
        ));
    }
    p.to_differential()
}

/// `L2 = U ℘(D) U^-1` and `L3 = U ℘'(D) U^-1` for the dressing operator `U` of the plane.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjugatedPair {
    pub dressing: PsDO,
    pub l2: PsDO,
    pub l3: PsDO,
}

pub fn conjugated_pair(e: &EllipticPlane) -> Result<ConjugatedPair> {
    let u = dressing_from_plane(&e.plane)?;
    let l2 = certified_differential(&conjugate_spectral(&u, &e.p)?)?.trim_top();
    let l3 = certified_differential(&conjugate_spectral(&u, &e.dp)?)?.trim_top();
    if l2.order() != Some(2) || !l2.is_normalized() {
        return Err(Error::NotNormalized);
    }
    if l3.order() != Some(3) {
        return Err(Error::NotDifferential);
    }
    Ok(ConjugatedPair {
        dressing: u,
        l2,
        l3,
    })
}

/// `P = (℘ - a) v0 [-z^2 d/dz + v1 / (2 v0)] v0^-1`, expanded as
/// `-z^2 (℘ - a) d/dz + ℘ (z^2 v0' + v1 / 2)`.
pub fn section_operator(e: &EllipticPlane) -> ZOperator {
    let a = ZSeries::monomial(0, e.curve.a().clone(), e.p.floor());
    let first = e.p.sub(&a).shift(2).neg();
    let zeroth =
        e.p.mul(&e.v0.derive_z().shift(2).add(&e.v1.scale(&ratio(1, 2))));
    ZOperator::new([(1, first), (0, zeroth)])
}

/// The operator whose right action on Laurent series is [`section_operator`]:
/// `v0(D)^-1 (-x D^2) v0(D) (℘(D) - a) + v1(D) ℘(D) / 2`, kept down to order `floor`.
pub fn section_psdo(e: &EllipticPlane, prec: usize, floor: i64) -> Result<PsDO> {
    let a = ZSeries::monomial(0, e.curve.a().clone(), e.p.floor());
    let op = |s: &ZSeries| PsDO::from_zseries(&s.truncate(floor), prec);
    let minus_x_d2 = PsDO::from_terms([(2, XSeries::from_ints(&[0, -1], prec))], None);
    let left = op(&e.v0.invert()?)
        .mul(&minus_x_d2)
        .mul(&op(&e.v0.mul(&e.p.sub(&a))));
    Ok(left.add(&op(&e.v1.mul(&e.p).scale(&ratio(1, 2)))))
}

/// `U P U^-1` for the dressing operator `U`, certified differential.
pub fn conjugated_section(e: &EllipticPlane) -> Result<PsDO> {
    let u = dressing_from_plane(&e.plane)?;
    let floor = u.floor().unwrap_or(0) - 1;
    let p = section_psdo(e, u.max_prec(), floor)?;
    Ok(certified_differential(&u.mul(&p).mul(&u.invert()?))?.trim_top())
}

const RANK_BOUND: usize = 4;

/// Whether `w` has rank one over its spectral field. Certified directly when the
/// rank over `C(f)` is one; otherwise every ratio `v_n / v_0` must certify in the field.
pub fn rank1_verify(w: &Plane, f: &ZSeries) -> Result<bool> {
    let report = rank(w, f, RANK_BOUND)?;
    if report.stabilized && report.rank == 1 {
        return Ok(true);
    }
    let v0_inv = w.vector(0).invert()?;
    let count = (w.depth() / 2).max(1);
    Ok((1..=count).all(|n| {
        let g = w.vector(n).mul(&v0_inv);
        !g.is_zero() && field_membership(w, &g) == Verdict::YesCertified
    }))
}
