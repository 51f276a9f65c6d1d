use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::{fmt_rational, is_prime, vp, Exp, Q};
use crate::error::{Error, Result};
use crate::poly::{FpPoly, QPoly};

use super::AbsValue;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Trivial,
    Eisenstein,
    Unramified,
}

/// A finite extension `Q_p[T]/(P)` of the p-adic base field.
///
/// The valuation is normalized by `v(p) = 1`.
#[derive(Clone, Debug)]
pub struct ExtField {
    p: u64,
    poly: QPoly,
    kind: FieldKind,
    residue_modulus: FpPoly,
}

pub type Field = Arc<ExtField>;

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        // every degree-one presentation is the base field itself
        self.p == other.p
            && (self.poly == other.poly
                || (self.kind == FieldKind::Trivial && other.kind == FieldKind::Trivial))
    }
}

impl Eq for ExtField {}

/// Builds and classifies `Q_p[T]/(defining_poly)`.
pub fn make_extension(p: u64, defining_poly: QPoly) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let deg = match defining_poly.degree() {
        None | Some(0) => {
            return Err(Error::Degree {
                expected: ">= 1".into(),
                found: 0,
            })
        }
        Some(d) => d,
    };
    if !defining_poly.is_monic() {
        return Err(Error::NotMonic);
    }
    if defining_poly
        .coeffs()
        .iter()
        .any(|c| vp(p, c).is_some_and(|v| v < 0))
    {
        return Err(Error::NotIntegral(p));
    }
    let reduced = FpPoly::reduce(p, &defining_poly)?;
    let kind = if deg == 1 {
        FieldKind::Trivial
    } else if let Err(why) = eisenstein_criterion(p, &defining_poly) {
        if reduced.is_irreducible() {
            FieldKind::Unramified
        } else {
            return Err(Error::BadExtension(format!(
                "{defining_poly} over p={p}: not Eisenstein ({why}); not unramified \
                 (reduction {} is reducible mod {p})",
                reduced.fmt_var("T")
            )));
        }
    } else {
        FieldKind::Eisenstein
    };
    let residue_modulus = match kind {
        FieldKind::Unramified => reduced,
        _ => FpPoly::x(p),
    };
    Ok(Arc::new(ExtField {
        p,
        poly: defining_poly,
        kind,
        residue_modulus,
    }))
}

/// `Ok(())` when every lower coefficient has valuation >= 1 and the constant
/// term has valuation exactly 1; otherwise the first failed clause.
pub fn eisenstein_criterion(p: u64, f: &QPoly) -> std::result::Result<(), String> {
    let Some(deg) = f.degree() else {
        return Err("zero polynomial".into());
    };
    if !f.is_monic() {
        return Err("not monic".into());
    }
    match vp(p, &f.coeff(0)) {
        Some(1) => {}
        None => return Err("constant term is zero".into()),
        Some(v) => return Err(format!("constant term has valuation {v}, expected 1")),
    }
    for i in 1..deg {
        if let Some(v) = vp(p, &f.coeff(i)) {
            if v < 1 {
                return Err(format!("coefficient of T^{i} has valuation {v} < 1"));
            }
        }
    }
    Ok(())
}

impl ExtField {
    /// The base field `Q_p`, presented by `T`.
    pub fn base(p: u64) -> Result<Field> {
        make_extension(p, QPoly::x())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn defining_poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap()
    }

    /// Ramification index over `Q_p`.
    pub fn ramification_index(&self) -> usize {
        match self.kind {
            FieldKind::Eisenstein => self.degree(),
            _ => 1,
        }
    }

    /// Degree of the residue field over `F_p`.
    pub fn residue_degree(&self) -> usize {
        match self.kind {
            FieldKind::Unramified => self.degree(),
            _ => 1,
        }
    }

    /// Reduced defining polynomial of the residue field (`T` for `F_p`).
    pub fn residue_modulus(&self) -> &FpPoly {
        &self.residue_modulus
    }

    pub fn is_base(&self) -> bool {
        self.kind == FieldKind::Trivial
    }

    /// Stable identifier used in JSON output.
    pub fn id(&self) -> String {
        match self.kind {
            FieldKind::Trivial => format!("Q_{}", self.p),
            _ => format!("Q_{}[T]/({})", self.p, self.poly),
        }
    }

    /// Whether `self` embeds into `other` through a declared tower; only the
    /// inclusion of the base field is declared.
    pub fn embeds_into(&self, other: &ExtField) -> bool {
        self == other || (self.is_base() && self.p == other.p)
    }
}

impl fmt::Display for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// Element of an [`ExtField`], as coordinates in the basis `1, α, …, α^(e−1)`.
#[derive(Clone, Debug)]
pub struct FieldElt {
    field: Field,
    coeffs: Vec<Q>,
}

impl PartialEq for FieldElt {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElt {}

impl FieldElt {
    /// Reduces `f(α)` to its canonical coordinates.
    pub fn from_poly(field: &Field, f: &QPoly) -> Self {
        let r = if field.is_base() {
            // α is the root of T − c
            QPoly::constant(f.eval(&-field.poly.coeff(0)))
        } else {
            f.rem(&field.poly)
        };
        let n = field.degree();
        FieldElt {
            field: field.clone(),
            coeffs: (0..n).map(|i| r.coeff(i)).collect(),
        }
    }

    pub fn from_coeffs(field: &Field, coeffs: Vec<Q>) -> Self {
        Self::from_poly(field, &QPoly::new(coeffs))
    }

    pub fn from_rational(field: &Field, c: Q) -> Self {
        Self::from_poly(field, &QPoly::constant(c))
    }

    pub fn from_int(field: &Field, c: i64) -> Self {
        Self::from_rational(field, crate::arith::q(c))
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_rational(field, Q::zero())
    }

    pub fn one(field: &Field) -> Self {
        Self::from_rational(field, Q::one())
    }

    /// The class α of `T`.
    pub fn generator(field: &Field) -> Self {
        Self::from_poly(field, &QPoly::x())
    }

    /// Parses a polynomial expression in `alpha` (or `T`).
    pub fn parse(field: &Field, src: &str) -> Result<Self> {
        Ok(Self::from_poly(field, &QPoly::parse(src, &["alpha", "T"])?))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> QPoly {
        QPoly::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Whether the element lies in the base field `Q_p`.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        FieldElt {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(FieldElt::one(&self.field), |acc, _| &acc * self)
    }

    /// Image under the declared tower embedding into `target`.
    pub fn embed_into(&self, target: &Field) -> Result<Self> {
        if *self.field == **target {
            return Ok(FieldElt {
                field: target.clone(),
                coeffs: self.coeffs.clone(),
            });
        }
        if self.field.embeds_into(target) {
            return Ok(FieldElt::from_rational(target, self.coeffs[0].clone()));
        }
        Err(Error::FieldMismatch(self.field.id(), target.id()))
    }

    /// Field norm down to `Q`, as `Res(P, x(T))` for the monic defining polynomial.
    pub fn norm(&self) -> Q {
        if self.field.is_base() {
            return self.coeffs[0].clone();
        }
        self.field.poly.resultant(&self.to_poly())
    }

    /// `v(x) = v_p(N(x)) / [K:Q_p]`; `None` for zero.
    pub fn valuation(&self) -> Option<Exp> {
        if self.is_zero() {
            return None;
        }
        let v = vp(self.field.p, &self.norm()).expect("nonzero element has nonzero norm");
        Some(Exp::new(v, self.field.degree() as i64))
    }

    pub fn abs(&self) -> AbsValue {
        AbsValue::from_valuation(self.valuation())
    }

    /// Canonical residue representative, as a polynomial over `F_p` reduced
    /// modulo the residue modulus (a constant for prime residue fields).
    pub fn residue(&self) -> Result<FpPoly> {
        if self.valuation().is_some_and(|v| v < Exp::zero()) {
            return Err(Error::NegativeValuation);
        }
        let p = self.field.p;
        match self.field.kind {
            FieldKind::Unramified => {
                Ok(FpPoly::reduce(p, &self.to_poly())?.rem(&self.field.residue_modulus))
            }
            // α reduces to 0 and the basis is orthogonal, so only b₀ survives
            _ => FpPoly::reduce(p, &QPoly::constant(self.coeffs[0].clone())),
        }
    }

    pub fn fmt_alpha(&self) -> String {
        if self.field.is_base() {
            return fmt_rational(&self.coeffs[0]);
        }
        self.to_poly().fmt_var("alpha")
    }

    fn check_same(&self, o: &FieldElt) {
        assert!(
            self.field == o.field,
            "mixed-field arithmetic: {} and {}",
            self.field,
            o.field
        );
    }
}

impl fmt::Display for FieldElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_alpha())
    }
}

impl Add for &FieldElt {
    type Output = FieldElt;
    fn add(self, o: &FieldElt) -> FieldElt {
        self.check_same(o);
        FieldElt {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &FieldElt {
    type Output = FieldElt;
    fn sub(self, o: &FieldElt) -> FieldElt {
        self.check_same(o);
        FieldElt {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &FieldElt {
    type Output = FieldElt;
    fn neg(self) -> FieldElt {
        FieldElt {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &FieldElt {
    type Output = FieldElt;
    fn mul(self, o: &FieldElt) -> FieldElt {
        self.check_same(o);
        if self.field.is_base() {
            return FieldElt::from_rational(&self.field, &self.coeffs[0] * &o.coeffs[0]);
        }
        FieldElt::from_poly(&self.field, &(&self.to_poly() * &o.to_poly()))
    }
}
