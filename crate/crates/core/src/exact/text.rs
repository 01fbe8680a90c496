//! Shared parser for sums of monomials such as `1 - 3/2*x + x^4 + O(x^6)`
//! or `w^2 - 4*z^3`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A parsed sum: monomials as exponent vectors (one entry per variable) and
/// the optional big-O exponent vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedSum {
    pub terms: Vec<(Vec<i64>, Scalar)>,
    pub big_o: Option<Vec<i64>>,
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [char],
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn exponent(&mut self) -> Result<i64> {
        if !self.eat('^') {
            return Ok(1);
        }
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
        let v: i64 = d.try_into().map_err(|_| self.err("exponent too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn factor(&mut self, exps: &mut [i64]) -> Result<bool> {
        let Some(c) = self.peek() else {
            return Ok(false);
        };
        let Some(idx) = self.vars.iter().position(|&v| v == c) else {
            return Ok(false);
        };
        self.pos += 1;
        exps[idx] += self.exponent()?;
        Ok(true)
    }

    fn big_o(&mut self) -> Result<Option<Vec<i64>>> {
        if self.peek() != Some('O') {
            return Ok(None);
        }
        self.pos += 1;
        if !self.eat('(') {
            return Err(self.err("expected `(` after O"));
        }
        let mut exps = vec![0; self.vars.len()];
        let mut any = false;
        loop {
            if self.factor(&mut exps)? {
                any = true;
            } else if !any && self.peek().is_some_and(|c| c.is_ascii_digit()) {
                // O(1)
                let d = self.digits().unwrap_or_default();
                if d != BigInt::from(1) {
                    return Err(self.err("only O(1) is allowed as a constant order"));
                }
                any = true;
            } else {
                break;
            }
            if !self.eat('*') {
                break;
            }
        }
        if !any || !self.eat(')') {
            return Err(self.err("malformed O(...) term"));
        }
        Ok(Some(exps))
    }

    fn term(&mut self, negate: bool, out: &mut ParsedSum) -> Result<()> {
        if let Some(o) = self.big_o()? {
            if out.big_o.is_some() {
                return Err(self.err("duplicate O(...) term"));
            }
            out.big_o = Some(o);
            return Ok(());
        }
        let mut coef = Scalar::from_integer(1.into());
        let mut had_number = false;
        if let Some(n) = self.digits() {
            had_number = true;
            let d = if self.eat('/') {
                self.digits()
                    .ok_or_else(|| self.err("expected denominator"))?
            } else {
                BigInt::from(1)
            };
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            coef = Scalar::new(n, d);
        }
        let mut exps = vec![0; self.vars.len()];
        let mut had_factor = false;
        loop {
            if had_number || had_factor {
                let save = self.pos;
                if !self.eat('*') {
                    break;
                }
                if !self.factor(&mut exps)? {
                    self.pos = save;
                    return Err(self.err("expected variable after `*`"));
                }
                had_factor = true;
            } else {
                if !self.factor(&mut exps)? {
                    return Err(self.err("expected a term"));
                }
                had_factor = true;
            }
        }
        if negate {
            coef = -coef;
        }
        out.terms.push((exps, coef));
        Ok(())
    }
}

/// Parses a signed sum of monomials in `vars` with an optional `O(...)` term.
pub fn parse_sum(src: &str, vars: &[char]) -> Result<ParsedSum> {
    let mut cur = Cursor {
        chars: src.chars().collect(),
        pos: 0,
        vars,
        src,
    };
    let mut out = ParsedSum {
        terms: Vec::new(),
        big_o: None,
    };
    let mut negate = if cur.eat('-') {
        true
    } else {
        cur.eat('+');
        false
    };
    loop {
        cur.term(negate, &mut out)?;
        match cur.peek() {
            None => break,
            Some('+') => {
                cur.pos += 1;
                negate = false;
            }
            Some('-') => {
                cur.pos += 1;
                negate = true;
            }
            Some(_) => return Err(cur.err("unexpected character")),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{int, ratio};

    #[test]
    fn parses_series_with_big_o() {
        let p = parse_sum("1 - 3/2*x + x^4 + O(x^6)", &['x']).unwrap();
        assert_eq!(
            p.terms,
            vec![
                (vec![0], int(1)),
                (vec![1], ratio(-3, 2)),
                (vec![4], int(1))
            ]
        );
        assert_eq!(p.big_o, Some(vec![6]));
    }

    #[test]
    fn parses_two_variables_and_negative_exponents() {
        let p = parse_sum("z*w - z^2 - 1", &['z', 'w']).unwrap();
        assert_eq!(p.terms.len(), 3);
        assert_eq!(p.terms[0], (vec![1, 1], int(1)));
        let q = parse_sum("z^3 + 2 + 5*z^-1 + O(z^-8)", &['z']).unwrap();
        assert_eq!(q.terms[2], (vec![-1], int(5)));
        assert_eq!(q.big_o, Some(vec![-8]));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_sum("1 + + x", &['x']).is_err());
        assert!(parse_sum("2*", &['x']).is_err());
        assert!(parse_sum("y", &['x']).is_err());
    }
}
