//! Exact rational helpers: p-adic valuations of rationals, reduction modulo p,
//! and the textual rational format used on the command line and in JSON.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficients.
pub type Q = BigRational;

/// Rational valuation exponents.
pub type Exp = Rational64;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn exp(n: i64, d: i64) -> Exp {
    Exp::new(n, d)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicity of `p` in a nonzero integer.
pub fn vp_int(p: u64, n: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (quot, rem) = n.div_rem(&p);
        if !rem.is_zero() {
            return k;
        }
        n = quot;
        k += 1;
    }
}

/// The p-adic valuation of a rational, `None` standing for +∞ (x = 0).
pub fn vp(p: u64, x: &Q) -> Option<i64> {
    if x.is_zero() {
        None
    } else {
        Some(vp_int(p, x.numer()) - vp_int(p, x.denom()))
    }
}

/// Image of a p-integral rational in Z/pZ.
pub fn mod_p(p: u64, x: &Q) -> Result<u64> {
    if x.is_zero() {
        return Ok(0);
    }
    if vp(p, x).unwrap() < 0 {
        return Err(Error::NegativeValuation);
    }
    let pb = BigInt::from(p);
    let num = x.numer().mod_floor(&pb).to_u64().unwrap();
    let den = x.denom().mod_floor(&pb).to_u64().unwrap();
    Ok(num * inv_mod(den, p) % p)
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    let ext = (a as i64).extended_gcd(&(p as i64));
    debug_assert_eq!(ext.gcd, 1);
    ext.x.rem_euclid(p as i64) as u64
}

/// `p^k` as a rational, for any integer `k`.
pub fn p_pow(p: u64, k: i64) -> Q {
    let base = BigInt::from(p);
    let mag = num_traits::pow(base, k.unsigned_abs() as usize);
    if k >= 0 {
        Q::from_integer(mag)
    } else {
        Q::new(BigInt::one(), mag)
    }
}

pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn parse_exp(s: &str) -> Result<Exp> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a small rational exponent: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Exp::new(n, d))
        }
        None => Ok(Exp::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_rational(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_exp(x: &Exp) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Integer part of `x` (p-integral) reduced modulo `p^n`, returned in `[0, p^n)`.
pub fn truncate_p_integral(p: u64, x: &Q, n: u32) -> Result<Q> {
    if x.is_zero() {
        return Ok(Q::zero());
    }
    if vp(p, x).unwrap() < 0 {
        return Err(Error::NegativeValuation);
    }
    let modulus = num_traits::pow(BigInt::from(p), n as usize);
    let den = x.denom().mod_floor(&modulus);
    let ext = den.extended_gcd(&modulus);
    let inv = ext.x.mod_floor(&modulus);
    Ok(Q::from_integer((x.numer() * inv).mod_floor(&modulus)))
}
