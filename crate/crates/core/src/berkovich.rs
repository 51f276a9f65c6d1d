//! Points of the Berkovich affine line as closed balls `E(a, r)`.
//!
//! The point `η_a(r)` is the maximal point of the closed ball of radius `r`
//! centred at `a`; radius zero gives the type-1 point `a` itself. Domination
//! of the associated seminorms is ball containment.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{fmt_rational, parse_rational, Q};
use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::valued_field::{make_extension, AbsValue, ExtField, ExtPoly, Field, FieldElt};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PointType {
    One = 1,
    Two = 2,
    /// Never produced: radius exponents are always rational.
    Three = 3,
}

impl Serialize for PointType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(*self as u8)
    }
}

/// The closed ball `E(center, radius)` over `center`'s field.
#[derive(Clone, Debug)]
pub struct BerkPoint {
    center: FieldElt,
    radius: AbsValue,
}

/// `η_a(r)`.
pub fn eta(a: &FieldElt, radius: AbsValue) -> BerkPoint {
    BerkPoint {
        center: a.clone(),
        radius,
    }
}

/// Common field of two elements under the declared tower.
pub(crate) fn common_field(a: &Field, b: &Field) -> Result<Field> {
    if b.embeds_into(a) {
        Ok(a.clone())
    } else if a.embeds_into(b) {
        Ok(b.clone())
    } else {
        Err(Error::FieldMismatch(a.id(), b.id()))
    }
}

/// `|a − b|`, moving both into a common field.
pub fn distance(a: &FieldElt, b: &FieldElt) -> Result<AbsValue> {
    let k = common_field(a.field(), b.field())?;
    Ok((&a.embed_into(&k)? - &b.embed_into(&k)?).abs())
}

impl BerkPoint {
    pub fn center(&self) -> &FieldElt {
        &self.center
    }

    pub fn radius(&self) -> AbsValue {
        self.radius
    }

    pub fn field(&self) -> &Field {
        self.center.field()
    }

    pub fn point_type(&self) -> PointType {
        if self.radius.is_zero() {
            PointType::One
        } else {
            PointType::Two
        }
    }

    pub fn embed_into(&self, k: &Field) -> Result<BerkPoint> {
        Ok(eta(&self.center.embed_into(k)?, self.radius))
    }

    /// Whether `a` lies in the closed ball.
    pub fn contains(&self, a: &FieldElt) -> Result<bool> {
        Ok(distance(a, &self.center)? <= self.radius)
    }

    pub fn to_json(&self) -> BerkPointJson {
        BerkPointJson {
            center: self.center.coeffs().iter().map(fmt_rational).collect(),
            radius_exp: self.radius,
            field: self.field().id(),
        }
    }

    pub fn from_json(j: &BerkPointJson) -> Result<BerkPoint> {
        let field = field_from_id(&j.field)?;
        let coeffs = j
            .center
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<Q>>>()?;
        if coeffs.len() != field.degree() {
            return Err(Error::Parse(format!(
                "center has {} coordinates, field {} has degree {}",
                coeffs.len(),
                field.id(),
                field.degree()
            )));
        }
        Ok(eta(&FieldElt::from_coeffs(&field, coeffs), j.radius_exp))
    }
}

/// Ball identity: equal radii and each centre inside the other ball.
impl PartialEq for BerkPoint {
    fn eq(&self, other: &Self) -> bool {
        self.radius == other.radius
            && distance(&self.center, &other.center).is_ok_and(|d| d <= self.radius)
    }
}

impl fmt::Display for BerkPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "eta({}; {})",
            self.center,
            self.radius.display_with(self.field().p())
        )
    }
}

/// `x ≤ y` iff `ball(x) ⊆ ball(y)`.
pub fn leq(x: &BerkPoint, y: &BerkPoint) -> Result<bool> {
    Ok(x.radius <= y.radius && distance(&x.center, &y.center)? <= y.radius)
}

/// Smallest closed ball containing both.
pub fn join(x: &BerkPoint, y: &BerkPoint) -> Result<BerkPoint> {
    let k = common_field(x.field(), y.field())?;
    let d = distance(&x.center, &y.center)?;
    let radius = x.radius.max(y.radius).max(d);
    Ok(eta(&x.center.embed_into(&k)?, radius))
}

/// `|f(x)| = max_i |c_i| r^i` for `f = Σ c_i (X − a)^i`; `|f(a)|` at type-1 points.
pub fn seminorm_eval(f: &ExtPoly, x: &BerkPoint) -> Result<AbsValue> {
    let k = common_field(f.field(), x.field())?;
    let f = if f.field() == &k {
        f.clone()
    } else {
        ExtPoly::new(
            &k,
            f.coeffs()
                .iter()
                .map(|c| c.embed_into(&k))
                .collect::<Result<_>>()?,
        )
    };
    let a = x.center.embed_into(&k)?;
    if x.radius.is_zero() {
        return Ok(f.eval(&a).abs());
    }
    let shifted = f.taylor_shift(&a);
    Ok(shifted
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c.abs() * x.radius.pow(i as i64))
        .max()
        .unwrap_or(AbsValue::ZERO))
}

/// Strict membership `|a − center| < radius` in the open ball `D(center, radius)`.
pub fn in_open_ball(a: &FieldElt, center: &FieldElt, radius: AbsValue) -> Result<bool> {
    Ok(distance(a, center)? < radius)
}

/// Serialized form of a [`BerkPoint`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BerkPointJson {
    pub center: Vec<String>,
    pub radius_exp: AbsValue,
    pub field: String,
}

/// Inverse of [`ExtField::id`].
pub fn field_from_id(id: &str) -> Result<Field> {
    let bad = || Error::Parse(format!("bad field id {id:?}"));
    let rest = id.strip_prefix("Q_").ok_or_else(bad)?;
    match rest.split_once('[') {
        None => ExtField::base(rest.parse().map_err(|_| bad())?),
        Some((p, tail)) => {
            let poly = tail
                .strip_prefix("T]/(")
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(bad)?;
            make_extension(p.parse().map_err(|_| bad())?, QPoly::parse(poly, &["T"])?)
        }
    }
}
