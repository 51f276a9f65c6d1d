use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::arith::{fmt_exp, Exp};

/// A non-Archimedean absolute value `p^(-q)`, kept as its exponent `q`.
///
/// `None` encodes `q = +∞`, the absolute value of zero. The derived order is
/// the order of *values*: a larger exponent is a smaller value, and zero is the
/// minimum.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct AbsValue(Option<Exp>);

impl AbsValue {
    pub const ZERO: AbsValue = AbsValue(None);

    pub fn one() -> Self {
        AbsValue(Some(Exp::from_integer(0)))
    }

    pub fn from_exp(q: Exp) -> Self {
        AbsValue(Some(q))
    }

    pub fn from_valuation(v: Option<Exp>) -> Self {
        AbsValue(v)
    }

    /// The exponent `q`, or `None` for the value zero.
    pub fn exp(&self) -> Option<Exp> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_none()
    }

    pub fn is_one(&self) -> bool {
        self.0 == Some(Exp::from_integer(0))
    }

    pub fn pow(self, k: i64) -> Self {
        match self.0 {
            None if k > 0 => AbsValue::ZERO,
            None if k == 0 => AbsValue::one(),
            None => panic!("negative power of the zero absolute value"),
            Some(q) => AbsValue(Some(q * k)),
        }
    }

    pub fn inv(self) -> Self {
        self.pow(-1)
    }

    /// Renders the value as `p^{-q}`.
    pub fn display_with(&self, p: u64) -> String {
        match self.0 {
            None => "0".to_string(),
            Some(q) => format!("{p}^{{{}}}", fmt_exp(&-q)),
        }
    }
}

impl Ord for AbsValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.0, other.0) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => b.cmp(&a),
        }
    }
}

impl PartialOrd for AbsValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for AbsValue {
    type Output = AbsValue;
    // values are stored as exponents, so products add
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: AbsValue) -> AbsValue {
        match (self.0, rhs.0) {
            (Some(a), Some(b)) => AbsValue(Some(a + b)),
            _ => AbsValue::ZERO,
        }
    }
}

impl fmt::Display for AbsValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            None => write!(f, "0"),
            Some(q) => write!(f, "p^{{{}}}", fmt_exp(&-q)),
        }
    }
}

/// JSON form of an exponent: `{"num": n, "den": d}` or `"inf"`.
pub(crate) fn serialize_exp<S: Serializer>(q: &Option<Exp>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        None => s.serialize_str("inf"),
        Some(q) => {
            let mut m = s.serialize_map(Some(2))?;
            m.serialize_entry("num", q.numer())?;
            m.serialize_entry("den", q.denom())?;
            m.end()
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ExpRepr {
    Tag(String),
    Frac { num: i64, den: i64 },
}

pub(crate) fn deserialize_exp<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Exp>, D::Error> {
    match ExpRepr::deserialize(d)? {
        ExpRepr::Tag(t) if t == "inf" => Ok(None),
        ExpRepr::Tag(t) => Err(de::Error::custom(format!("expected \"inf\", got {t:?}"))),
        ExpRepr::Frac { den: 0, .. } => Err(de::Error::custom("zero denominator")),
        ExpRepr::Frac { num, den } => Ok(Some(Exp::new(num, den))),
    }
}

/// Serde adapter for a finite exponent field.
pub(crate) mod finite_exp {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Exp, s: S) -> Result<S::Ok, S::Error> {
        serialize_exp(&Some(*q), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Exp, D::Error> {
        deserialize_exp(d)?.ok_or_else(|| de::Error::custom("expected a finite exponent"))
    }
}

impl Serialize for AbsValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_exp(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for AbsValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        deserialize_exp(d).map(AbsValue)
    }
}
