//! The acceptance suite: ten exact checks with time budgets, shared by the
//! `acceptance` test target and the command-line `selftest`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exact::scalar::{int, one, ratio};
use crate::exact::{RatPoly2, Verdict, XSeries, ZSeries};
use crate::fractional::{common_denominators, dord, FracOp};
use crate::grassmannian::{
    conjugate_spectral, dressing_from_plane, example_4_5, field_membership, frac_certify,
    quotient_dim, rank, spectral_membership,
};
use crate::krichever::{
    certified_differential, conjugated_pair, conjugated_section, elliptic_plane, section_check,
    section_operator, weierstrass_p, CurveData, SectionVerdict,
};
use crate::psdo::{schur_dress, PsDO};
use crate::relations::{bc_relation, order_bounds, span_dim};

const SEED: u64 = 0x5eed;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub budget_seconds: f64,
}

type Check = fn() -> Result<String, String>;

const CRITERIA: [(&str, f64, Check); 10] = [
    ("product rule and associativity", 10.0, product_rule),
    ("dressing round trip", 30.0, schur_round_trip),
    ("plane with trivial spectral algebra", 10.0, example_plane),
    ("fractional relation", 5.0, fractional_relation),
    ("growth bounds", 60.0, growth_bounds),
    ("Weierstrass equation", 5.0, weierstrass),
    ("elliptic pipeline", 120.0, elliptic_pipeline),
    ("spectral and operator sides agree", 60.0, two_sides),
    ("first-order section", 120.0, section),
    ("denominatorial order", 10.0, denominators),
];

pub fn criterion_count() -> usize {
    CRITERIA.len()
}

/// Runs criterion `id` (1-based). A criterion passes when its check succeeds within budget.
pub fn run(id: usize) -> Option<CriterionResult> {
    let (name, budget, check) = *CRITERIA.get(id.checked_sub(1)?)?;
    let start = Instant::now();
    let outcome = check();
    let seconds = start.elapsed().as_secs_f64();
    let (passed, detail) = match outcome {
        Ok(d) if seconds <= budget => (true, d),
        Ok(d) => (false, format!("{d}; took {seconds:.1}s, budget {budget}s")),
        Err(e) => (false, e),
    };
    Some(CriterionResult {
        id,
        name,
        passed,
        detail,
        seconds,
        budget_seconds: budget,
    })
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=CRITERIA.len()).filter_map(run).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn random_ints(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-3..=3)).collect()
}

/// Top order in `[-3, 3]`, an invertible leading coefficient and three to five trusted orders.
fn random_op(rng: &mut ChaCha8Rng) -> PsDO {
    let prec = 8;
    let top = rng.gen_range(-3..=3);
    let mut lead = random_ints(rng, 2);
    lead[0] = 1 + lead[0].abs();
    let mut terms = vec![(top, XSeries::from_ints(&lead, prec))];
    for i in 1..4 {
        terms.push((top - i, XSeries::from_ints(&random_ints(rng, 3), prec)));
    }
    PsDO::from_terms(terms, Some(top - 3 - rng.gen_range(0..3)))
}

fn product_rule() -> Result<String, String> {
    let prec = 8;
    let x = PsDO::multiplication(XSeries::from_ints(&[0, 1], prec));
    let d = PsDO::d_pow(1, prec);
    let d_inv = PsDO::d_pow(-1, prec);
    let expected = x.mul(&d).add(&PsDO::identity(prec));
    ensure(d.mul(&x).sub(&expected).is_zero(), || {
        "D x != x D + 1".into()
    })?;
    let expected = x.mul(&d_inv).sub(&PsDO::d_pow(-2, prec));
    ensure(d_inv.mul(&x).sub(&expected).is_zero(), || {
        "D^-1 x != x D^-1 - D^-2".into()
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..200 {
        let (p, q, r) = (
            random_op(&mut rng),
            random_op(&mut rng),
            random_op(&mut rng),
        );
        let left = p.mul(&q).mul(&r);
        let right = p.mul(&q.mul(&r));
        ensure(left.agrees_with(&right), || {
            format!("associativity fails on triple {i}")
        })?;
    }
    Ok("D x = x D + 1, D^-1 x = x D^-1 - D^-2, 200 associative triples".into())
}

fn random_dressing(rng: &mut ChaCha8Rng) -> PsDO {
    let mut terms = vec![(0, XSeries::one(8))];
    for j in 1..=5 {
        let mut c = vec![0];
        c.extend(random_ints(rng, 4));
        terms.push((-j, XSeries::from_ints(&c, 8)));
    }
    PsDO::from_terms(terms, Some(-5))
}

fn schur_round_trip() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for i in 0..50 {
        let u = random_dressing(&mut rng);
        let u_inv = u.invert().map_err(err)?;
        for m in 1..=3 {
            let l = u.mul(&PsDO::d_pow(m, 8)).mul(&u_inv);
            let v = schur_dress(&l).map_err(err)?;
            ensure(v.agrees_with(&u), || {
                format!("dressing {i} with m = {m} is not recovered")
            })?;
        }
    }
    Ok("50 dressings recovered for m = 1, 2, 3".into())
}

fn polynomial(coeffs: &[i64], floor: i64) -> ZSeries {
    let terms: Vec<(i64, i64)> = coeffs
        .iter()
        .enumerate()
        .map(|(e, &c)| (e as i64, c))
        .collect();
    ZSeries::from_int_terms(&terms, floor)
}

fn example_plane() -> Result<String, String> {
    let w = example_4_5(14);
    let floor = w.floor() - 30;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut polys: Vec<Vec<i64>> = (1..=6)
        .map(|d| (0..=d).map(|e| i64::from(e == d)).collect())
        .collect();
    for _ in 0..20 {
        let deg = rng.gen_range(1..=6);
        let mut c = random_ints(&mut rng, deg + 1);
        c[deg] = if rng.gen_bool(0.5) { 1 } else { -2 };
        polys.push(c);
    }
    for c in &polys {
        let v = spectral_membership(&w, &polynomial(c, floor)).verdict;
        ensure(v == Verdict::NoWitness, || {
            format!("polynomial {c:?} gave {v}")
        })?;
    }
    let z = polynomial(&[0, 1], floor);
    let cert = quotient_dim(&w, &z);
    ensure(cert.quotient_dim == 1 && cert.stabilized, || {
        format!("quotient_dim(z) = {cert:?}")
    })?;
    let r = rank(&w, &z, 8).map_err(err)?;
    ensure(r.rank == 1, || format!("rank = {}", r.rank))?;
    Ok(format!(
        "{} polynomials leave W, quotient_dim(z) = 1 stabilized, rank 1",
        polys.len()
    ))
}

fn fractional_relation() -> Result<String, String> {
    let prec = 8;
    let p = FracOp::from_differential(PsDO::d_pow(1, prec)).map_err(err)?;
    let num = PsDO::d_pow(2, prec).add(&PsDO::identity(prec));
    let q = FracOp::new(num, PsDO::d_pow(1, prec))
        .map_err(err)?
        .with_depth(14);
    let (f, _) = bc_relation(&p, &q, 3).map_err(err)?;
    let expected = RatPoly2::parse("z*w - z^2 - 1").map_err(err)?.normalized();
    ensure(f == expected, || format!("relation {f}"))?;
    let lo = order_bounds(&p, &q, 1).map_err(err)?.0;
    let diff = p.expansion().sub(q.expansion()).trim_top().order();
    ensure(lo == -1 && diff == Some(-1), || {
        format!("lower bound {lo}, ord(p - q) = {diff:?}")
    })?;
    Ok(format!("relation {f}, ord(p - q) = -1 = lower bound"))
}

/// `T^k = (D^2 + 1)^k D^-k`, so `sum c_k T^k = [sum c_k (D^2 + 1)^k D^(d-k)] D^-d`.
fn poly_in_t(coeffs: &[i64]) -> Result<FracOp, String> {
    let prec = 6;
    let d = coeffs.len() as i64 - 1;
    let base = PsDO::d_pow(2, prec).add(&PsDO::identity(prec));
    let mut num = PsDO::zero();
    for (k, &c) in coeffs.iter().enumerate() {
        let term = base
            .pow(k as u32)
            .mul(&PsDO::d_pow(d - k as i64, prec))
            .scale(&int(c));
        num = num.add(&term);
    }
    Ok(FracOp::new(num, PsDO::d_pow(d, prec))
        .map_err(err)?
        .with_depth(16))
}

fn cusp_operators(prec: usize) -> (PsDO, PsDO) {
    let inv = XSeries::from_ints(&[1, 1], prec).invert().expect("unit");
    let inv2 = inv.mul(&inv);
    let l = PsDO::from_terms([(2, XSeries::one(prec)), (0, inv2.scale(&int(-2)))], None);
    let m = PsDO::from_terms(
        [
            (3, XSeries::constant(int(2), prec)),
            (1, inv2.scale(&int(-6))),
            (0, inv2.mul(&inv).scale(&int(6))),
        ],
        None,
    );
    (l, m)
}

fn growth_bounds() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut checked = 0;
    for _ in 0..10 {
        let poly = |rng: &mut ChaCha8Rng| {
            let deg = rng.gen_range(1..=2);
            let mut c = random_ints(rng, deg + 1);
            c[deg] = 1;
            c
        };
        let (a, b) = (poly(&mut rng), poly(&mut rng));
        let (p, q) = (poly_in_t(&a)?, poly_in_t(&b)?);
        for n in 1..=3 {
            let r = span_dim(&p, &q, n).map_err(err)?;
            ensure(r.span_dim <= r.bound, || {
                format!("{a:?}, {b:?}, n = {n}: {} > {}", r.span_dim, r.bound)
            })?;
        }
        checked += 1;
    }
    let prec = 14;
    let (l, m) = cusp_operators(prec);
    for _ in 0..10 {
        let c = rng.gen_range(-3..=3);
        let q = if rng.gen_bool(0.5) {
            l.mul(&l).add(&PsDO::monomial(0, int(c), prec))
        } else {
            m.add(&l.scale(&int(c)))
        };
        let (lo, qo) = (l.order().unwrap_or(0), q.order().unwrap_or(0));
        let (p, q) = (
            FracOp::from_differential(l.clone()).map_err(err)?,
            FracOp::from_differential(q).map_err(err)?,
        );
        for n in 1..=3 {
            let r = span_dim(&p, &q, n).map_err(err)?;
            let bound = ((lo + qo) * n as i64 + 1) as usize;
            ensure(r.span_dim <= bound, || {
                format!("differential pair, n = {n}: {} > {bound}", r.span_dim)
            })?;
        }
        checked += 1;
    }
    Ok(format!(
        "{checked} commuting pairs within the growth bounds for n <= 3"
    ))
}

fn weierstrass() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    for _ in 0..10 {
        let g2 = ratio(rng.gen_range(-30..=30), rng.gen_range(1..=7));
        let g3 = ratio(rng.gen_range(-30..=30), rng.gen_range(1..=7));
        let ws = weierstrass_p(&g2, &g3, 7);
        ensure(ws.checked_through >= 10, || {
            format!("checked through w^{}", ws.checked_through)
        })?;
        let expected = [&g2 / int(20), &g3 / int(28), &g2 * &g2 / int(1200)];
        ensure(ws.coeffs[..3] == expected, || {
            format!("coefficients {:?}", &ws.coeffs[..3])
        })?;
    }
    Ok(
        "10 curves satisfy the equation through w^10 with c2, c3, c4 = g2/20, g3/28, g2^2/1200"
            .into(),
    )
}

pub fn cuspidal_curve() -> CurveData {
    CurveData::new(int(0), int(0), int(1), int(2)).expect("on the curve")
}

/// `y^2 = 4x^3 + 6x - 6` through `(1, 2)`.
pub fn smooth_curve() -> CurveData {
    CurveData::new(int(-6), int(6), int(1), int(2)).expect("on the curve")
}

fn elliptic_pipeline() -> Result<String, String> {
    let mut found = Vec::new();
    for c in [cuspidal_curve(), smooth_curve()] {
        let e = elliptic_plane(&c, 10).map_err(err)?;
        let pair = conjugated_pair(&e).map_err(err)?;
        ensure(
            pair.l2.order() == Some(2) && pair.l3.order() == Some(3),
            || "orders differ from (2, 3)".into(),
        )?;
        let lead = pair
            .l3
            .leading()
            .map(|c| c.is_constant(&int(-2)))
            .unwrap_or(false);
        ensure(lead, || "L3 does not lead with -2".into())?;
        let comm = pair.l2.commutator(&pair.l3);
        ensure(comm.terms().values().all(XSeries::is_zero), || {
            "[L2, L3] is not zero".into()
        })?;
        let l2 = FracOp::from_differential(pair.l2).map_err(err)?;
        let l3 = FracOp::from_differential(pair.l3).map_err(err)?;
        let (f, _) = bc_relation(&l2, &l3, 3).map_err(err)?;
        ensure(f == c.relation(), || {
            format!("relation {f}, expected {}", c.relation())
        })?;
        found.push(f.to_string());
    }
    Ok(format!("relations {}", found.join(" and ")))
}

fn two_sides() -> Result<String, String> {
    let e = elliptic_plane(&cuspidal_curve(), 10).map_err(err)?;
    let u = dressing_from_plane(&e.plane).map_err(err)?;
    for (name, f) in [
        ("p", e.p.clone()),
        ("p'", e.dp.clone()),
        ("p^2", e.p.mul(&e.p)),
    ] {
        let v = spectral_membership(&e.plane, &f).verdict;
        ensure(v == Verdict::YesCertified, || {
            format!("{name}: spectral membership {v}")
        })?;
        let conj = conjugate_spectral(&u, &f).map_err(err)?;
        certified_differential(&conj).map_err(|e| format!("{name}: {e}"))?;
    }
    let z = ZSeries::monomial(1, one(), e.plane.floor() - 20);
    ensure(
        field_membership(&e.plane, &z) == Verdict::YesCertified,
        || "z is not certified in the field".into(),
    )?;
    let conj = conjugate_spectral(&u, &z).map_err(err)?;
    let cert = frac_certify(&conj);
    ensure(cert.verdict == Verdict::YesCertified, || {
        format!("U z U^-1 fractionality {}", cert.verdict)
    })?;
    ensure(!conj.negative_part_is_zero(), || {
        "U z U^-1 has no nonzero negative coefficient".into()
    })?;
    Ok("p, p', p^2 in A_W with differential conjugates; z in K_W, conjugate fractional, not differential".into())
}

fn section() -> Result<String, String> {
    let mut details = Vec::new();
    for c in [cuspidal_curve(), smooth_curve()] {
        let e = elliptic_plane(&c, 8).map_err(err)?;
        let check = section_check(&e.plane, &section_operator(&e));
        ensure(check.verdict == SectionVerdict::Preserving, || {
            format!("section check {}", check.verdict)
        })?;
        let conj = conjugated_section(&e).map_err(err)?;
        ensure(conj.order() == Some(4), || {
            format!("conjugate has order {:?}", conj.order())
        })?;
        details.push(check.checked);
    }
    Ok(format!(
        "preserving on {details:?} basis vectors at depth 8, conjugates of order 4"
    ))
}

fn denominators() -> Result<String, String> {
    let prec = 10;
    let d_inv = FracOp::new(PsDO::identity(prec), PsDO::d_pow(1, prec)).map_err(err)?;
    let (k, _) = dord(&d_inv).map_err(err)?;
    ensure(k == 1, || format!("dord(D^-1) = {k}"))?;
    let diff = FracOp::from_differential(PsDO::parse("(1)*D^2 + (x)*D^0", prec).map_err(err)?)
        .map_err(err)?;
    let (k, _) = dord(&diff).map_err(err)?;
    ensure(k == 0, || format!("dord(differential) = {k}"))?;
    let parse = |t: &str| PsDO::parse(t, prec).map_err(err);
    let pairs = [
        (parse("(1)*D^1 + (x)*D^0")?, parse("(1)*D^1 + (1 + x)*D^0")?),
        (parse("(1)*D^1 + (-1)*D^0")?, parse("(1)*D^1 + (x^2)*D^0")?),
    ];
    let c = common_denominators(&pairs, 5).map_err(err)?;
    let total: i64 = pairs.iter().map(|(_, q)| q.order().unwrap_or(0)).sum();
    let orders = (c.left.order().unwrap_or(0), c.right.order().unwrap_or(0));
    ensure(orders.0 <= total && orders.1 <= total, || {
        format!("denominator orders {orders:?} exceed {total}")
    })?;
    let all_yes = c
        .left_prefixes
        .iter()
        .chain(&c.right_prefixes)
        .all(|v| *v == Verdict::YesCertified);
    ensure(all_yes, || {
        "a prefix product is not certified differential".into()
    })?;
    Ok(format!(
        "dord(D^-1) = 1, dord(differential) = 0, denominators of order {orders:?} <= {total}"
    ))
}
