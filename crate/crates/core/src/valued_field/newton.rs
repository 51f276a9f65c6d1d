use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::Exp;
use crate::error::{Error, Result};
use crate::poly::QPoly;

use super::{AbsValue, Field, FieldElt, FieldKind};

/// Polynomial in one variable with coefficients in an [`ExtField`](super::ExtField).
#[derive(Clone, Debug, PartialEq)]
pub struct ExtPoly {
    field: Field,
    coeffs: Vec<FieldElt>,
}

impl ExtPoly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElt>) -> Self {
        while coeffs.last().is_some_and(FieldElt::is_zero) {
            coeffs.pop();
        }
        ExtPoly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Embeds a rational polynomial.
    pub fn from_qpoly(field: &Field, f: &QPoly) -> Self {
        Self::new(
            field,
            f.coeffs()
                .iter()
                .map(|c| FieldElt::from_rational(field, c.clone()))
                .collect(),
        )
    }

    /// Parses a polynomial in `X` whose coefficients are rationals; use
    /// [`ExtPoly::new`] for coefficients involving `alpha`.
    pub fn parse(field: &Field, src: &str) -> Result<Self> {
        Ok(Self::from_qpoly(field, &QPoly::parse(src, &["X", "x"])?))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &FieldElt) -> FieldElt {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElt::zero(&self.field), |acc, c| &(&acc * x) + c)
    }

    pub fn add(&self, o: &ExtPoly) -> ExtPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = FieldElt::zero(&self.field);
        ExtPoly::new(
            &self.field,
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).unwrap_or(&zero);
                    let b = o.coeffs.get(i).unwrap_or(&zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn mul(&self, o: &ExtPoly) -> ExtPoly {
        if self.is_zero() || o.is_zero() {
            return ExtPoly::new(&self.field, vec![]);
        }
        let mut out = vec![FieldElt::zero(&self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        ExtPoly::new(&self.field, out)
    }

    pub fn scale(&self, c: &FieldElt) -> ExtPoly {
        ExtPoly::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `f(X + a)`.
    pub fn taylor_shift(&self, a: &FieldElt) -> ExtPoly {
        let shift = ExtPoly::new(&self.field, vec![a.clone(), FieldElt::one(&self.field)]);
        self.coeffs
            .iter()
            .rev()
            .fold(ExtPoly::new(&self.field, vec![]), |acc, c| {
                acc.mul(&shift)
                    .add(&ExtPoly::new(&self.field, vec![c.clone()]))
            })
    }

    /// `f(c·X)`.
    pub fn rescale_variable(&self, c: &FieldElt) -> ExtPoly {
        let mut power = FieldElt::one(&self.field);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &power);
            power = &power * c;
        }
        ExtPoly::new(&self.field, out)
    }
}

impl fmt::Display for ExtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "*X".to_string(),
                _ => format!("*X^{i}"),
            };
            write!(f, "({c}){mono}")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// One edge of a Newton polygon, stated as the common valuation of the roots
/// it accounts for.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NewtonSlope {
    #[serde(with = "super::absvalue::finite_exp")]
    pub valuation: Exp,
    pub multiplicity: usize,
}

/// Root valuations of a polynomial read off the lower convex hull of the
/// points `(i, v(c_i))`. A hull edge of slope `s` accounts for roots of
/// valuation `-s`; edges are listed by ascending root valuation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub slopes: Vec<NewtonSlope>,
    /// Roots at zero (valuation +∞); always 0 when they were dropped.
    pub zero_roots: usize,
}

impl NewtonPolygon {
    pub fn degree(&self) -> usize {
        self.zero_roots + self.slopes.iter().map(|s| s.multiplicity).sum::<usize>()
    }

    /// Root absolute values with multiplicity, largest first.
    pub fn root_abs_values(&self) -> Vec<AbsValue> {
        let mut out = Vec::new();
        for s in &self.slopes {
            out.extend(std::iter::repeat_n(
                AbsValue::from_exp(s.valuation),
                s.multiplicity,
            ));
        }
        out.extend(std::iter::repeat_n(AbsValue::ZERO, self.zero_roots));
        out
    }
}

pub fn newton_polygon(f: &ExtPoly, drop_zero_roots: bool) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let points: Vec<(i64, Exp)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.valuation().map(|v| (i as i64, v)))
        .collect();
    let zero_roots = if drop_zero_roots {
        0
    } else {
        points[0].0 as usize
    };

    let mut slopes = Vec::new();
    let mut cur = 0;
    while cur + 1 < points.len() {
        let (x0, y0) = points[cur];
        // steepest descent from the current vertex, ties to the farthest point
        let mut best = cur + 1;
        let mut best_slope = (points[best].1 - y0) / Exp::from_integer(points[best].0 - x0);
        for (j, &(xj, yj)) in points.iter().enumerate().skip(cur + 2) {
            let s = (yj - y0) / Exp::from_integer(xj - x0);
            if s <= best_slope {
                best = j;
                best_slope = s;
            }
        }
        slopes.push(NewtonSlope {
            valuation: -best_slope,
            multiplicity: (points[best].0 - x0) as usize,
        });
        cur = best;
    }
    slopes.sort_by_key(|s| s.valuation);
    Ok(NewtonPolygon { slopes, zero_roots })
}

/// The multiset `{|α^g − α| : α^g ≠ α}` over the roots of the Eisenstein
/// polynomial defining `field`, largest first. Its maximum is the orbit diameter.
pub fn conjugate_distances(field: &Field) -> Result<Vec<AbsValue>> {
    if field.kind() != FieldKind::Eisenstein {
        return Err(Error::UnsupportedKind(format!(
            "conjugate distances need an Eisenstein field, got {:?}",
            field.kind()
        )));
    }
    if field.degree() < 2 {
        return Err(Error::Degree {
            expected: ">= 2".into(),
            found: field.degree(),
        });
    }
    let p = ExtPoly::from_qpoly(field, field.defining_poly());
    let shifted = p.taylor_shift(&FieldElt::generator(field));
    Ok(newton_polygon(&shifted, true)?.root_abs_values())
}

/// Largest conjugate distance.
pub fn orbit_diameter(field: &Field) -> Result<AbsValue> {
    Ok(conjugate_distances(field)?[0])
}
