//! Independent oracles and random generators shared by the integration tests.
//!
//! Oracles here avoid the library's resultant and valuation code paths: the
//! resultant is a Sylvester determinant by Gaussian elimination, and absolute
//! values in `Q_p[T]/P` of degree `n` come from `|N(β)|^{1/n}` on that determinant.

#![allow(dead_code)]

use btfix::arith::{Exp, Q};
use btfix::poly::QPoly;
use btfix::valued_field::{make_extension, AbsValue, ExtField, Field, FieldElt};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Valuation of a nonzero rational by repeated division.
pub fn val(p: u64, x: &Q) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let count = |mut n: BigInt| {
        let mut k = 0i64;
        while (&n % &pb).is_zero() {
            n /= &pb;
            k += 1;
        }
        k
    };
    Some(count(x.numer().abs()) - count(x.denom().abs()))
}

pub fn abs_rational(p: u64, x: &Q) -> AbsValue {
    AbsValue::from_valuation(val(p, x).map(Exp::from_integer))
}

/// Determinant by Gaussian elimination over Q.
#[allow(clippy::needless_range_loop)]
pub fn determinant(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= m[col][col].clone();
        for r in col + 1..n {
            let factor = &m[r][col] / &m[col][col];
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

/// `Res(f, g)` as the Sylvester determinant; coefficients low degree first.
pub fn sylvester_resultant(f: &[Q], g: &[Q]) -> Q {
    let m = f.len() - 1;
    let n = g.len() - 1;
    if n == 0 {
        return num_traits::pow(g[0].clone(), m);
    }
    let size = m + n;
    let mut rows = vec![vec![Q::zero(); size]; size];
    for i in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    determinant(rows)
}

fn trim(mut c: Vec<Q>) -> Vec<Q> {
    while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    c
}

/// `|β|` for `β = Σ b_i α^i` in `Q_p[T]/P`, `P` irreducible over `Q_p`.
pub fn oracle_abs(p: u64, defining: &QPoly, coords: &[Q]) -> AbsValue {
    let b = trim(coords.to_vec());
    if b.iter().all(Zero::is_zero) {
        return AbsValue::ZERO;
    }
    let deg = defining.coeffs().len() as i64 - 1;
    let n = sylvester_resultant(defining.coeffs(), &b);
    AbsValue::from_exp(Exp::new(val(p, &n).expect("nonzero norm"), deg))
}

/// `v_p(disc P)` for monic `P`, via `Res(P, P′)`.
pub fn disc_valuation(p: u64, f: &QPoly) -> i64 {
    let c = f.coeffs();
    let deriv: Vec<Q> = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, a)| a * Q::from_integer(BigInt::from(i)))
        .collect();
    val(p, &sylvester_resultant(c, &deriv)).expect("separable")
}

pub fn qp(p: u64) -> Field {
    ExtField::base(p).unwrap()
}

pub fn ext(p: u64, poly: &str) -> Field {
    make_extension(p, QPoly::parse(poly, &["T"]).unwrap()).unwrap()
}

/// `u·p^k` with `u` a small unit, or zero with probability `zero_prob`.
pub fn random_rational(p: u64, kmin: i64, kmax: i64, zero_prob: f64, rng: &mut impl Rng) -> Q {
    if rng.gen_bool(zero_prob) {
        return Q::zero();
    }
    let unit = loop {
        let u: i64 = rng.gen_range(-(3 * p as i64)..=3 * p as i64);
        if u != 0 && u % p as i64 != 0 {
            break u;
        }
    };
    let k = rng.gen_range(kmin..=kmax);
    let pk = num_traits::pow(Q::from_integer(BigInt::from(p)), k.unsigned_abs() as usize);
    let u = Q::from_integer(BigInt::from(unit));
    if k >= 0 {
        u * pk
    } else {
        u / pk
    }
}

pub fn random_elt(k: &Field, kmin: i64, kmax: i64, rng: &mut impl Rng) -> FieldElt {
    let coeffs = (0..k.degree())
        .map(|_| random_rational(k.p(), kmin, kmax, 0.3, rng))
        .collect();
    FieldElt::from_coeffs(k, coeffs)
}

/// Radius `p^{-n/d}` with `n ∈ [lo, hi]`, `d ∈ {1, e}`.
pub fn random_radius(k: &Field, lo: i64, hi: i64, rng: &mut impl Rng) -> AbsValue {
    let d = if rng.gen_bool(0.5) {
        1
    } else {
        k.ramification_index() as i64
    };
    AbsValue::from_exp(Exp::new(rng.gen_range(lo * d..=hi * d), d))
}
