//! Exact rational scalars and the integer helpers used across the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number; always stored in lowest terms with a positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// `n!` as a scalar.
pub fn factorial(n: u64) -> Scalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Scalar::from_integer(acc)
}

/// Generalized binomial coefficient `C(top, k)` for any integer `top` and `k >= 0`.
pub fn binomial(top: i64, k: u64) -> Scalar {
    let mut num = BigInt::one();
    for i in 0..k as i64 {
        num *= top - i;
    }
    Scalar::new(num, factorial(k).to_integer())
}

/// Falling factorial `top (top - 1) ... (top - k + 1)`, i.e. `k! C(top, k)`.
pub fn falling(top: i64, k: u64) -> Scalar {
    let mut num = BigInt::one();
    for i in 0..k as i64 {
        num *= top - i;
    }
    Scalar::from_integer(num)
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = || Error::Parse(format!("invalid rational `{text}`"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(p, q))
        }
        None => {
            let p: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Scalar::from_integer(p))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Formats `coef * <monomial>` as a signed term; `first` controls the leading sign style.
pub(crate) fn format_term(coef: &Scalar, monomial: &str, first: bool) -> String {
    let neg = coef.is_negative();
    let mag = coef.abs();
    let body = if monomial.is_empty() {
        format_scalar(&mag)
    } else if mag.is_one() {
        monomial.to_string()
    } else {
        format!("{}*{}", format_scalar(&mag), monomial)
    };
    match (first, neg) {
        (true, false) => body,
        (true, true) => format!("-{body}"),
        (false, false) => format!(" + {body}"),
        (false, true) => format!(" - {body}"),
    }
}

/// Least common multiple of the denominators of `xs`.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    use num_integer::Integer;
    let mut l = BigInt::one();
    for x in xs {
        l = l.lcm(x.denom());
    }
    l
}

/// Greatest common divisor of the numerators of `xs` (zero when all vanish).
pub fn content_gcd<'a>(xs: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    use num_integer::Integer;
    let mut g = BigInt::zero();
    for x in xs {
        g = g.gcd(x.numer());
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_follow_the_generalized_definition() {
        assert_eq!(binomial(-1, 1), int(-1));
        assert_eq!(binomial(-1, 3), int(-1));
        assert_eq!(binomial(-2, 2), int(3));
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(2, 5), int(0));
        assert_eq!(falling(4, 2), int(12));
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "-3", "7/2", "-11/6"] {
            assert_eq!(format_scalar(&parse_scalar(s).unwrap()), s);
        }
        assert_eq!(parse_scalar("4/6").unwrap(), ratio(2, 3));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }
}
