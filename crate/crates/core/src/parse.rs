//! Plain-text polynomial grammar.
//!
//! A polynomial is a sum of terms `c*x^k` joined by `+`/`-`. The coefficient
//! is a decimal integer or a fraction `n/d` and may be omitted; `*` is
//! optional; `^k` defaults to 1. Multivariate terms chain factors with `*`,
//! e.g. `3/2*chi1^2*chi2^-1`. Whitespace is ignored.

use num_traits::{One, Zero};

use crate::arith::{parse_rational, Q};
use crate::error::{Error, Result};

/// One parsed term: coefficient and (variable, exponent) factors.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: Q,
    pub factors: Vec<(String, i64)>,
}

struct Cursor<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in {:?}", self.pos, self.src))
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn integer(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let digits = self.take_while(|c| c.is_ascii_digit());
        let v: i64 = digits
            .parse()
            .map_err(|_| self.err("expected an exponent"))?;
        Ok(if neg { -v } else { v })
    }

    fn factor(&mut self) -> Result<(String, i64)> {
        let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
        if name.is_empty() || !name.starts_with(|c: char| c.is_ascii_alphabetic()) {
            return Err(self.err("expected a variable"));
        }
        if self.peek() == Some('^') {
            self.bump();
            let paren = self.peek() == Some('(');
            if paren {
                self.bump();
            }
            let k = self.integer()?;
            if paren && self.bump() != Some(')') {
                return Err(self.err("expected ')'"));
            }
            Ok((name, k))
        } else {
            Ok((name, 1))
        }
    }
}

pub fn parse_terms(src: &str) -> Result<Vec<Term>> {
    let compact: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut cur = Cursor {
        src,
        chars: compact.chars().collect(),
        pos: 0,
    };
    if cur.chars.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let mut sign = Q::one();
        match cur.peek() {
            Some('+') => {
                cur.bump();
            }
            Some('-') => {
                cur.bump();
                sign = -sign;
            }
            _ if !first => return Err(cur.err("expected '+' or '-'")),
            _ => {}
        }
        first = false;

        let mut coeff = Q::one();
        let mut saw_coeff = false;
        if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            let mut text = cur.take_while(|c| c.is_ascii_digit());
            if cur.peek() == Some('/') {
                cur.bump();
                let den = cur.take_while(|c| c.is_ascii_digit());
                if den.is_empty() {
                    return Err(cur.err("expected a denominator"));
                }
                text = format!("{text}/{den}");
            }
            coeff = parse_rational(&text)?;
            saw_coeff = true;
            if cur.peek() == Some('*') {
                cur.bump();
            }
        }
        let mut factors = Vec::new();
        if cur.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            factors.push(cur.factor()?);
            while cur.peek() == Some('*') {
                cur.bump();
                factors.push(cur.factor()?);
            }
        } else if !saw_coeff {
            return Err(cur.err("expected a coefficient or a variable"));
        }
        terms.push(Term {
            coeff: sign * coeff,
            factors,
        });
    }
    Ok(terms)
}

/// Parses a univariate polynomial in any one of the accepted variable names,
/// returning dense coefficients from degree 0 upward.
pub fn parse_univariate(src: &str, vars: &[&str]) -> Result<Vec<Q>> {
    let mut coeffs: Vec<Q> = Vec::new();
    for t in parse_terms(src)? {
        let mut deg = 0i64;
        for (name, k) in &t.factors {
            if !vars.contains(&name.as_str()) {
                return Err(Error::Parse(format!(
                    "unknown variable {name:?} (expected one of {vars:?})"
                )));
            }
            deg += k;
        }
        if deg < 0 {
            return Err(Error::Parse(format!("negative exponent in {src:?}")));
        }
        let deg = deg as usize;
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, Q::zero());
        }
        coeffs[deg] += t.coeff;
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qf};

    #[test]
    fn univariate() {
        assert_eq!(
            parse_univariate("T^2-2", &["T"]).unwrap(),
            vec![q(-2), q(0), q(1)]
        );
        assert_eq!(
            parse_univariate(" 1/2*T^3 + 3T - T ", &["T"]).unwrap(),
            vec![q(0), q(2), q(0), qf(1, 2)]
        );
        assert_eq!(
            parse_univariate("alpha", &["T", "alpha"]).unwrap(),
            vec![q(0), q(1)]
        );
        assert_eq!(parse_univariate("-4/6", &["T"]).unwrap(), vec![qf(-2, 3)]);
    }

    #[test]
    fn errors() {
        assert!(parse_univariate("", &["T"]).is_err());
        assert!(parse_univariate("T^2 T", &["T"]).is_err());
        assert!(parse_univariate("X^2", &["T"]).is_err());
        assert!(parse_univariate("T^-1", &["T"]).is_err());
        assert!(parse_univariate("1/", &["T"]).is_err());
        assert!(parse_univariate("+*", &["T"]).is_err());
    }

    #[test]
    fn laurent_terms() {
        let t = parse_terms("3*chi1^2*chi2^-1 - chi2^(-2)").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].factors, vec![("chi1".into(), 2), ("chi2".into(), -1)]);
        assert_eq!(t[1].coeff, q(-1));
        assert_eq!(t[1].factors, vec![("chi2".into(), -2)]);
    }
}
