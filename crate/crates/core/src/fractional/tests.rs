use super::*;
use crate::exact::XSeries;
use proptest::prelude::*;

const PREC: usize = 10;

fn op(text: &str) -> PsDO {
    PsDO::parse(text, PREC).unwrap()
}

fn d(k: i64) -> PsDO {
    PsDO::d_pow(k, PREC)
}

#[test]
fn fraction_of_d_squared_plus_one_over_d() {
    let f = frac_make(&op("(1)*D^2 + (1)*D^0"), &d(1)).unwrap();
    assert!(f.is_reduced());
    assert_eq!(f.order(), Some(1));
    assert!(f.expansion().agrees_with(&d(1).add(&d(-1))));
    assert!(f.expansion().floor().unwrap() <= 2 - PREC as i64);
}

#[test]
fn fraction_over_one_is_the_operator() {
    let p = op("(1 + x)*D^2 + (x^2)*D^0");
    let f = frac_make(&p, &PsDO::identity(PREC)).unwrap();
    assert_eq!(f.num(), &p);
    assert!(f.expansion().agrees_with(&p));
    assert!(f.expansion().is_differential());
}

#[test]
fn common_right_factor_is_removed() {
    let u = op("(1)*D^1 + (x)*D^0");
    let f = frac_make(&d(2).mul(&u), &d(1).mul(&u)).unwrap();
    assert!(f.is_reduced());
    assert!(f.num().agrees_with(&d(1)));
    assert_eq!(f.den().order(), Some(0));
    assert_eq!(
        frac_make(&op("(1)*D^1 + (1)*D^-1 + O(D^-3)"), &d(1)),
        Err(Error::NotDifferential)
    );
    assert_eq!(
        frac_make(&d(1), &op("(2)*D^1")),
        Err(Error::DenominatorNotMonic)
    );
}

#[test]
fn ore_solve_examples() {
    let p = op("(1)*D^1 + (x)*D^0");
    let (r, l) = ore_solve(&p, &p).unwrap();
    assert!(r.agrees_with(&PsDO::identity(PREC)) && l.agrees_with(&PsDO::identity(PREC)));

    let x = PsDO::multiplication(XSeries::from_ints(&[0, 1], PREC));
    let (r, l) = ore_solve(&d(1), &x).unwrap();
    assert!(r.agrees_with(&op("(x)*D^1 + (2)*D^0")));
    assert!(l.agrees_with(&op("(x^2)*D^0")));
    assert!(x.mul(&r).agrees_with(&d(1).mul(&l)));

    let q = op("(1)*D^2 + (x)*D^1 + (3)*D^0");
    let (r, l) = ore_solve(&PsDO::identity(PREC), &q).unwrap();
    assert!(r.agrees_with(&PsDO::identity(PREC)));
    assert!(l.agrees_with(&q));
}

#[test]
fn dord_examples() {
    let diff = FracOp::from_differential(op("(1)*D^2 + (x)*D^0")).unwrap();
    let (k, l) = dord(&diff).unwrap();
    assert_eq!(k, 0);
    assert!(l.agrees_with(&PsDO::identity(PREC)));

    let inv = FracOp::new(PsDO::identity(PREC), d(1)).unwrap();
    let (k, l) = dord(&inv).unwrap();
    assert_eq!(k, 1);
    assert!(l.agrees_with(&d(1)));

    let f = frac_make(&op("(1)*D^2 + (1)*D^0"), &d(1)).unwrap();
    let (k, l) = dord(&f).unwrap();
    assert_eq!(k, 1);
    assert!(l.agrees_with(&d(1)));
    assert!(f.expansion().mul(&l).negative_part_is_zero());
}

#[test]
fn dord_of_a_second_order_denominator() {
    let den = op("(1)*D^2 + (x)*D^0");
    let f = FracOp::new(PsDO::identity(PREC), den.clone()).unwrap();
    let (k, l) = dord(&f).unwrap();
    assert_eq!(k, 2);
    assert!(f.expansion().mul(&l).negative_part_is_zero());
}

#[test]
fn common_denominators_examples() {
    let one = PsDO::identity(PREC);
    let single = common_denominators(&[(op("(1)*D^0 + (x)*D^1"), d(1))], 5).unwrap();
    assert!(single.right.order().unwrap() <= 1);
    assert_eq!(single.right_prefixes, vec![Verdict::YesCertified]);
    assert_eq!(single.left_prefixes, vec![Verdict::YesCertified]);

    let twice = common_denominators(&[(one.clone(), d(1)), (one, d(1))], 5).unwrap();
    assert!(twice.right.order().unwrap() <= 2);
    assert!(twice.right.agrees_with(&d(2)));
    assert!(twice
        .right_prefixes
        .iter()
        .chain(&twice.left_prefixes)
        .all(|v| *v == Verdict::YesCertified));
}

#[test]
fn common_denominators_of_two_first_order_pairs() {
    let pairs = [
        (op("(1)*D^1 + (x)*D^0"), op("(1)*D^1 + (1 + x)*D^0")),
        (op("(1)*D^1 + (-1)*D^0"), op("(1)*D^1 + (x^2)*D^0")),
    ];
    let c = common_denominators(&pairs, 5).unwrap();
    assert!(c.right.order().unwrap() <= 2);
    assert!(c.left.order().unwrap() <= 2);
    assert_eq!(c.right_prefixes, vec![Verdict::YesCertified; 2]);
    assert_eq!(c.left_prefixes, vec![Verdict::YesCertified; 2]);
}

#[test]
fn differentiality_checks() {
    let exact = frac_make(&d(2), &d(1)).unwrap();
    let check = is_differential(&exact);
    assert_eq!(check.verdict, Verdict::YesCertified);
    assert!(check.quotient.unwrap().agrees_with(&d(1)));

    let inv = FracOp::new(PsDO::identity(PREC), d(1)).unwrap();
    let check = is_differential(&inv);
    assert_eq!(check.verdict, Verdict::NoWitness);
    let (j, w) = check.witness.unwrap();
    assert_eq!(j, 0);
    assert_eq!(w.degree(), Some(-1));
}

#[test]
fn text_round_trip() {
    let f = FracOp::parse("frac((1)*D^2+(1)*D^0;(1)*D^1)", PREC).unwrap();
    assert_eq!(FracOp::parse(&f.to_string(), 0).unwrap(), f);
    let json = serde_json::to_string(&f).unwrap();
    assert_eq!(serde_json::from_str::<FracOp>(&json).unwrap(), f);
    let g = FracOp::parse("(1)*D^1", PREC).unwrap();
    assert_eq!(g.den().order(), Some(0));
    assert!(FracOp::parse("frac((1)*D^1)", PREC).is_err());
}

fn arb_diff(max_order: i64) -> impl Strategy<Value = PsDO> {
    (
        1..=max_order,
        prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 3),
    )
        .prop_map(|(n, rows)| {
            let mut terms = vec![(n, XSeries::one(8))];
            for (i, r) in rows.iter().enumerate().take(n as usize) {
                terms.push((i as i64, XSeries::from_ints(r, 8)));
            }
            PsDO::from_terms(terms, None)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn ore_solve_postcondition(p in arb_diff(2), q in arb_diff(1)) {
        let (r, l) = ore_solve(&p, &q).unwrap();
        prop_assert!(q.mul(&r).agrees_with(&p.mul(&l)));
        prop_assert!(l.order().unwrap() <= q.order().unwrap());
    }

    #[test]
    fn expansion_times_denominator_is_numerator(a in arb_diff(2), b in arb_diff(2)) {
        let f = FracOp::new(a.clone(), b.clone()).unwrap();
        prop_assert!(f.expansion().mul(&b).agrees_with(&a));
    }

    #[test]
    fn exact_quotients_are_certified(q in arb_diff(1), r in arb_diff(1)) {
        let f = frac_make(&q.mul(&r), &r).unwrap();
        prop_assert_eq!(is_differential(&f).verdict, Verdict::YesCertified);
        let (k, _) = dord(&f).unwrap();
        prop_assert_eq!(k, 0);
    }
}
