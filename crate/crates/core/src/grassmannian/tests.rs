use super::*;
use crate::error::Error;
use crate::exact::scalar::{factorial, int, one};
use crate::exact::{Scalar, Verdict, XSeries, ZSeries};
use crate::psdo::PsDO;
use proptest::prelude::*;

fn z(e: i64, floor: i64) -> ZSeries {
    ZSeries::monomial(e, one(), floor)
}

fn zs(terms: &[(i64, i64)], floor: i64) -> ZSeries {
    ZSeries::from_int_terms(terms, floor)
}

/// `(2n+1)!!`.
fn odd_double_factorial(n: i64) -> Scalar {
    (0..=n).fold(one(), |acc, k| acc * int(2 * k + 1))
}

#[test]
fn action_examples() {
    let p = PsDO::d_pow(2, 8);
    assert!(right_act(&z(3, -10), &p).unwrap().agrees_with(&z(5, -10)));
    let x = PsDO::multiplication(XSeries::from_ints(&[0, 1], 8));
    let v = right_act(&z(2, -10), &x).unwrap();
    assert!(v.agrees_with(&zs(&[(1, 2)], -10)));
    let v = right_act(&z(0, -10), &PsDO::d_pow(-1, 8)).unwrap();
    assert!(v.agrees_with(&z(-1, -11)));
}

#[test]
fn plane_of_the_trivial_dressing_is_standard() {
    let w = plane_from_dressing(&PsDO::identity(20), 6).unwrap();
    assert!(w.agrees_with(&Plane::standard(6, -30)));
    assert!(w.floor() < 0);
    let u = dressing_from_plane(&Plane::standard(6, -12)).unwrap();
    assert!(u.agrees_with(&PsDO::identity(u.max_prec())));
}

#[test]
fn plane_of_a_first_order_dressing() {
    // U = 1 - (1 + x)^-1 D^-1; z^0 . U = 1 - z^-1 since z^0 . x^k = 0 for k > 0.
    let inv: Vec<i64> = (0..12).map(|k| if k % 2 == 0 { -1 } else { 1 }).collect();
    let u = PsDO::from_terms(
        [(0, XSeries::one(12)), (-1, XSeries::from_ints(&inv, 12))],
        None,
    );
    let w = plane_from_dressing(&u, 4).unwrap();
    assert!(w.vector(0).agrees_with(&zs(&[(0, 1), (-1, -1)], -12)));
    for n in 0..=4 {
        let image = right_act(&z(n, n - 20), &u).unwrap();
        let r = w.reduce(&image).unwrap();
        assert!(r.is_zero() && r.floor() < 0);
    }
}

#[test]
fn example_4_5_bases() {
    let w = example_4_5(8);
    assert!(w.vector(0).agrees_with(&z(0, w.floor())));
    assert!(w.vector(1).agrees_with(&zs(&[(1, 1), (-1, 1)], w.floor())));
    for n in 0..=3i64 {
        let sign = if n % 2 == 0 { one() } else { -one() };
        let expected = ZSeries::from_terms(
            &[(2 * n + 1, one()), (-1, sign * odd_double_factorial(n))],
            w.floor(),
        );
        assert!(
            w.vector(2 * n as usize + 1).agrees_with(&expected),
            "odd vector {n}"
        );
        assert!(w.vector(2 * n as usize).agrees_with(&z(2 * n, w.floor())));
    }
    for (n, v) in w.basis().iter().enumerate() {
        assert_eq!(v.degree(), Some(n as i64));
    }
}

#[test]
fn plane_construction_errors() {
    assert!(matches!(
        Plane::from_generators(&[z(0, -4), z(-1, -4)], 0),
        Err(Error::NotBigCell(_))
    ));
    assert!(matches!(
        Plane::from_generators(&[z(0, -4), z(2, -4)], 2),
        Err(Error::UnderdeterminedAtDepth(_))
    ));
}

#[test]
fn plane_json_round_trip() {
    let w = example_4_5(4);
    let json = serde_json::to_value(&w).unwrap();
    assert_eq!(json["depth"], 4);
    assert_eq!(json["floor_exp"], w.floor());
    let back: Plane = serde_json::from_value(json).unwrap();
    assert_eq!(back, w);
}

#[test]
fn spectral_membership_examples() {
    let std = Plane::standard(8, -10);
    let f = zs(&[(3, 1), (1, 2)], -30);
    assert_eq!(spectral_membership(&std, &f).verdict, Verdict::YesCertified);

    let w = example_4_5(8);
    let check = spectral_membership(&w, &z(1, -40));
    assert_eq!(check.verdict, Verdict::NoWitness);
    let (n, r) = check.witness.unwrap();
    assert_eq!(n, 0);
    assert!(r.agrees_with(&zs(&[(-1, -1)], w.floor())));
    // z^2 fixes v_0 but not v_1.
    assert_eq!(spectral_membership(&w, &z(2, -40)).witness.unwrap().0, 1);
}

#[test]
fn quotient_dim_examples() {
    let w = example_4_5(10);
    let c = quotient_dim(&w, &zs(&[(0, 5)], -40));
    assert_eq!((c.quotient_dim, c.stabilized), (0, true));

    let c = quotient_dim(&w, &z(1, -40));
    assert_eq!((c.quotient_dim, c.stabilized), (1, true));
    assert!(c.excess_basis[0].agrees_with(&z(-1, w.floor())));

    let std = Plane::standard(10, -12);
    let c = quotient_dim(&std, &z(-1, -30));
    assert_eq!((c.quotient_dim, c.stabilized), (1, true));
    assert!(c.excess_basis[0].agrees_with(&z(-1, -12)));
}

#[test]
fn field_membership_examples() {
    let w = example_4_5(10);
    assert_eq!(
        field_membership(&w, &zs(&[(0, 3)], -40)),
        Verdict::YesCertified
    );
    assert_eq!(field_membership(&w, &z(1, -40)), Verdict::YesCertified);
    let c = quotient_dim(&w, &z(-1, -40));
    assert_eq!((c.quotient_dim, c.stabilized), (2, true));
}

#[test]
fn clear_tails_examples() {
    assert!(clear_tails(&[]).unwrap().agrees_with(&PsDO::identity(1)));
    let q = clear_tails(&[z(-1, -8)]).unwrap();
    assert!(q.agrees_with(&PsDO::d_pow(1, q.max_prec())));

    let e = zs(&[(-1, 1), (-2, 1)], -6);
    let q = clear_tails(std::slice::from_ref(&e)).unwrap();
    assert!(q.is_differential() && q.is_monic());
    assert_eq!(q.order(), Some(1));
    let image = right_act(&e, &q).unwrap();
    assert!(image.floor() <= -1 && image.negative_part().is_zero());
    // Independent check of the tail recursion: f . q(x) = z^-1 with q = sum x^k.
    let qx = PsDO::multiplication(XSeries::from_ints(&[1, 1, 1, 1, 1, 1], 6));
    let fq = right_act(&e, &qx).unwrap();
    assert!(fq.agrees_with(&z(-1, fq.floor())));
    assert!(fq.floor() <= -4);
}

#[test]
fn clear_tails_of_two_series() {
    let es = [
        zs(&[(-1, 1), (-3, 2)], -10),
        zs(&[(-2, 1), (-3, -1), (-5, 4)], -10),
    ];
    let q = clear_tails(&es).unwrap();
    assert!(q.is_differential() && q.is_monic());
    for e in &es {
        let image = right_act(e, &q).unwrap();
        assert!(image.floor() <= -1 && image.negative_part().is_zero());
    }
}

#[test]
fn frac_certify_examples() {
    let p = PsDO::from_terms(
        [(2, XSeries::one(10)), (0, XSeries::from_ints(&[0, 1], 10))],
        None,
    );
    let c = frac_certify(&p);
    assert_eq!((c.verdict, c.excess), (Verdict::YesCertified, 0));

    let c = frac_certify(&PsDO::d_pow(-1, 10));
    assert_eq!((c.verdict, c.excess), (Verdict::YesCertified, 1));
    let q = c.denominator.unwrap();
    assert!(q.agrees_with(&PsDO::d_pow(1, q.max_prec())));

    // sum_k k! x^k D^-2k: every new z^j adds a new tail.
    let prec = 12;
    let terms = (0..6).map(|k| {
        (
            -2 * k,
            XSeries::monomial(k as usize, factorial(k as u64), prec),
        )
    });
    let p = PsDO::from_terms(terms, Some(-11));
    let c = frac_certify(&p);
    assert_eq!(c.verdict, Verdict::UnknownAtPrecision);
    assert!(!c.stabilized);
}

#[test]
fn conjugate_spectral_examples() {
    let one_op = PsDO::identity(8);
    let p = conjugate_spectral(&one_op, &z(2, -10)).unwrap();
    assert!(p.agrees_with(&PsDO::d_pow(2, 8)));

    let w = example_4_5(8);
    let u = dressing_from_plane(&w).unwrap();
    assert!(plane_from_dressing(&u, 2)
        .unwrap()
        .agrees_with(&w.truncate_depth(2)));
    let p = conjugate_spectral(&u, &z(1, -40)).unwrap();
    assert!(!p.negative_part_is_zero());
    let c = frac_certify(&p);
    assert_eq!((c.verdict, c.excess), (Verdict::YesCertified, 1));
}

#[test]
fn dressing_needs_depth() {
    let w = Plane::standard(2, -3);
    assert!(matches!(
        dressing_from_plane_to(&w, 3, 3),
        Err(Error::UnderdeterminedAtDepth(_))
    ));
    assert!(matches!(
        dressing_from_plane(&Plane::standard(2, 0)),
        Err(Error::UnderdeterminedAtDepth(_))
    ));
}

#[test]
fn rank_examples() {
    let std = Plane::standard(8, -12);
    let r = rank(&std, &z(1, -40), 6).unwrap();
    assert_eq!((r.rank, r.stabilized), (1, true));

    let w = example_4_5(8);
    let r = rank(&w, &z(1, -40), 8).unwrap();
    assert_eq!((r.rank, r.stabilized), (1, true));

    let w = rank_two_example(8);
    let r = rank(&w, &z(2, -40), 6).unwrap();
    assert_eq!((r.rank, r.stabilized), (2, true));
    assert_eq!(r.independent, vec![0, 1]);

    assert_eq!(
        rank(&std, &zs(&[(0, 1)], -40), 4),
        Err(Error::FNotCertified)
    );
}

fn arb_dressing() -> impl Strategy<Value = PsDO> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..=4).prop_map(|rows| {
        let prec = 8;
        let mut terms = vec![(0, XSeries::one(prec))];
        for (j, r) in rows.iter().enumerate() {
            terms.push((-(j as i64) - 1, XSeries::from_ints(r, prec)));
        }
        PsDO::from_terms(terms, None)
    })
}

fn arb_op() -> impl Strategy<Value = PsDO> {
    prop::collection::vec((-2i64..=1, prop::collection::vec(-2i64..=2, 3)), 1..=3).prop_map(|ts| {
        PsDO::from_terms(
            ts.into_iter().map(|(k, c)| (k, XSeries::from_ints(&c, 6))),
            None,
        )
    })
}

fn arb_series() -> impl Strategy<Value = ZSeries> {
    prop::collection::vec(-3i64..=3, 1..=5).prop_map(|c| {
        ZSeries::from_terms(
            &c.iter()
                .enumerate()
                .map(|(i, a)| (2 - i as i64, int(*a)))
                .collect::<Vec<_>>(),
            -8,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn action_is_a_right_module(v in arb_series(), p in arb_op(), q in arb_op()) {
        let lhs = right_act(&v, &p.mul(&q));
        let rhs = right_act(&v, &p).and_then(|vp| right_act(&vp, &q));
        if let (Ok(a), Ok(b)) = (lhs, rhs) {
            prop_assert!(a.agrees_with(&b));
        }
    }

    #[test]
    fn dressing_round_trip(u in arb_dressing()) {
        let w = plane_from_dressing(&u, 3).unwrap();
        for (n, v) in w.basis().iter().enumerate() {
            prop_assert_eq!(v.degree(), Some(n as i64));
        }
        let count = u.terms().keys().next().map(|k| -k).unwrap() as usize;
        let reach = (-w.floor()) as usize;
        let prec = 3.min(reach + 1 - count.min(reach));
        if prec >= 1 && count + prec - 1 <= reach {
            let back = dressing_from_plane_to(&w, count, prec).unwrap();
            prop_assert!(back.agrees_with(&u));
        }
    }

    #[test]
    fn spectral_algebra_lies_in_the_field(u in arb_dressing(), c in -3i64..=3) {
        let w = plane_from_dressing(&u, 3).unwrap();
        let f = zs(&[(0, c)], -40);
        prop_assert_eq!(spectral_membership(&w, &f).verdict, Verdict::YesCertified);
        let cert = quotient_dim(&w, &f);
        prop_assert_eq!((cert.quotient_dim, cert.stabilized), (0, true));
    }

    #[test]
    fn polynomials_preserve_the_standard_plane(c in prop::collection::vec(-3i64..=3, 1..=4)) {
        let f = ZSeries::from_terms(&c.iter().enumerate().map(|(i, a)| (i as i64, int(*a))).collect::<Vec<_>>(), -40);
        let w = Plane::standard(10, -12);
        prop_assert_ne!(spectral_membership(&w, &f).verdict, Verdict::NoWitness);
        let cert = quotient_dim(&w, &f);
        prop_assert_eq!(cert.quotient_dim, 0);
    }

    #[test]
    fn field_closure_samples(a in 1i64..=3, b in -2i64..=2) {
        // z^a + b and z^-1 both lie in the spectral field of the example plane.
        let w = example_4_5(12);
        let f1 = zs(&[(a, 1), (0, b)], -60);
        let f2 = z(-1, -60);
        let d1 = quotient_dim(&w, &f1);
        let d2 = quotient_dim(&w, &f2);
        prop_assert!(d1.stabilized && d2.stabilized);
        for g in [f1.add(&f2), f1.mul(&f2)] {
            let d = quotient_dim(&w, &g);
            prop_assert!(d.stabilized);
            prop_assert!(d.quotient_dim <= d1.quotient_dim + d2.quotient_dim);
        }
    }
}
