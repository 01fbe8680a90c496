use super::*;
use crate::exact::{int, XSeries};
use proptest::prelude::*;

const PREC: usize = 14;

fn op(text: &str) -> PsDO {
    PsDO::parse(text, PREC).unwrap()
}

fn diff(text: &str) -> FracOp {
    FracOp::from_differential(op(text)).unwrap()
}

/// `(D^2 + 1)^a D^-a = (D + D^-1)^a`.
fn d_plus_inverse(a: u32) -> FracOp {
    let num = PsDO::parse("(1)*D^2 + (1)*D^0", 8).unwrap().pow(a);
    FracOp::new(num, PsDO::d_pow(a as i64, 8))
        .unwrap()
        .with_depth(PREC)
}

/// `(1 + x)^-k` to `PREC` terms.
fn inv_power(k: usize) -> XSeries {
    let inv = XSeries::from_ints(&[1, 1], PREC).invert().unwrap();
    (0..k).fold(XSeries::one(PREC), |acc, _| acc.mul(&inv))
}

/// `L = D^2 - 2/(1+x)^2` and `M = 2 D^3 - 6/(1+x)^2 D + 6/(1+x)^3`, with `M^2 = 4 L^3`.
fn cusp_pair() -> (FracOp, FracOp) {
    let l = PsDO::from_terms(
        [(2, XSeries::one(PREC)), (0, inv_power(2).scale(&int(-2)))],
        None,
    );
    let m = PsDO::from_terms(
        [
            (3, XSeries::constant(int(2), PREC)),
            (1, inv_power(2).scale(&int(-6))),
            (0, inv_power(3).scale(&int(6))),
        ],
        None,
    );
    (
        FracOp::from_differential(l).unwrap(),
        FracOp::from_differential(m).unwrap(),
    )
}

#[test]
fn order_bound_examples() {
    let p = diff("(1)*D^1");
    let q = d_plus_inverse(1);
    assert_eq!(order_bounds(&p, &q, 1).unwrap(), (-1, 2));
    let diffp = p.expansion().sub(q.expansion());
    assert_eq!(diffp.trim_top().order(), Some(-1));

    let a = diff("(1)*D^2 + (3)*D^0");
    let b = diff("(1)*D^4 + (6)*D^2 + (9)*D^0");
    assert_eq!(order_bounds(&a, &b, 3).unwrap().0, 0);
    let dd = diff("(1)*D^2");
    assert_eq!(order_bounds(&dd, &dd, 2).unwrap(), (0, 8));
}

#[test]
fn span_dim_examples() {
    let r = span_dim(&diff("(1)*D^1"), &diff("(1)*D^2"), 2).unwrap();
    assert_eq!(r.span_dim, 7);
    assert!(r.span_dim <= r.bound);

    // 1, D, D + D^-1 and D^2 + 1 are independent; the first relation needs p^2.
    let r = span_dim(&diff("(1)*D^1"), &d_plus_inverse(1), 1).unwrap();
    assert_eq!(r.span_dim, 4);
    let r = span_dim(&diff("(1)*D^1"), &d_plus_inverse(1), 2).unwrap();
    assert_eq!((r.span_dim, r.kernel_dim), (7, 2));
}

#[test]
fn relation_examples() {
    let (f, report) = bc_relation(&diff("(1)*D^1"), &diff("(1)*D^2"), 3).unwrap();
    assert_eq!(f.to_string(), "w - z^2");
    assert_eq!(report.n_used, 2);

    let (f, _) = bc_relation(&diff("(1)*D^1"), &d_plus_inverse(1), 3).unwrap();
    assert_eq!(f, RatPoly2::parse("z*w - z^2 - 1").unwrap().normalized());

    let (l, m) = cusp_pair();
    let (f, report) = bc_relation(&l, &m, 3).unwrap();
    assert_eq!(f.to_string(), "w^2 - 4*z^3");
    assert!(report.span_dim <= report.bound);
    let residual = evaluate(&f, l.expansion(), m.expansion());
    assert!(residual.terms().values().all(|c| c.is_zero()));
}

#[test]
fn relation_errors() {
    let x =
        FracOp::from_differential(PsDO::multiplication(XSeries::from_ints(&[0, 1], PREC))).unwrap();
    assert_eq!(bc_relation(&diff("(1)*D^1"), &x, 2), Err(Error::ZeroOrder));
    let xd = diff("(x)*D^1");
    assert_eq!(
        bc_relation(&diff("(1)*D^1"), &xd, 2),
        Err(Error::NotCommutingAtWindow)
    );
    assert_eq!(
        bc_relation(&diff("(2)*D^1"), &diff("(1)*D^2"), 2),
        Err(Error::NotNormalized)
    );
    let err = bc_relation(&diff("(1)*D^2"), &diff("(1)*D^3"), 1).unwrap_err();
    assert!(matches!(err, Error::NoRelationWithinBudget { ref growth } if growth == &vec![(1, 4)]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn fractional_growth_is_linear(a in 1u32..=2, b in 1u32..=3, n in 1usize..=3) {
        let (p, q) = (d_plus_inverse(a), d_plus_inverse(b));
        let r = span_dim(&p, &q, n).unwrap();
        prop_assert!(r.span_dim <= r.bound);
    }

    #[test]
    fn differential_growth_is_linear(c in -3i64..=3, n in 1usize..=3) {
        let (l, _) = cusp_pair();
        let q = FracOp::from_differential(l.num().mul(l.num()).add(&PsDO::monomial(0, int(c), PREC))).unwrap();
        let r = span_dim(&l, &q, n).unwrap();
        let (ol, oq) = (l.order().unwrap(), q.order().unwrap());
        prop_assert!(r.span_dim as i64 <= (ol + oq) * n as i64 + 1);
    }

    #[test]
    fn monomial_orders_respect_the_bounds(a in 1u32..=2, b in 1u32..=2, n in 1usize..=2) {
        let (p, q) = (d_plus_inverse(a), d_plus_inverse(b));
        let (lo, hi) = order_bounds(&p, &q, n).unwrap();
        for (_, m) in monomials(p.expansion(), q.expansion(), n) {
            let o = m.trim_top().order().unwrap();
            prop_assert!(lo <= o && o <= hi);
        }
    }

    #[test]
    fn span_elements_have_constant_leading_coefficients(
        coeffs in prop::collection::vec(-3i64..=3, 9),
    ) {
        let (l, m) = cusp_pair();
        let mons = monomials(l.expansion(), m.expansion(), 2);
        let ops: Vec<PsDO> = mons.iter().map(|(_, m)| m.clone()).collect();
        let c: Vec<Scalar> = coeffs.iter().map(|&c| int(c)).collect();
        let s = combine(&ops, &c).trim_top();
        if let Some(lead) = s.leading() {
            prop_assert!(lead.coeffs()[1..].iter().all(|c| c.is_zero()));
        }
    }
}
