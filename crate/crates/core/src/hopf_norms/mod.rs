//! Multiplicative seminorms on the coordinate Hopf algebras of a split torus
//! `G_mⁿ` and of the additive group `G_a`.
//!
//! Torus points are monomial norms `|Σ c_u χ^u| = max |c_u| Π r_i^{u_i}`; the
//! additive points are the Gauss norms of the balls `E(0, r)`. Both families
//! are universal and their monomial bases are orthogonal, so every infimum
//! over tensor decompositions (convolution, base change) is realized by the
//! canonical decomposition. [`decomposition`] holds a randomized search that
//! tries to beat it.

pub mod decomposition;
mod laurent;

use serde::{Deserialize, Serialize};

use crate::arith::{Exp, Q};
use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::valued_field::{vp, AbsValue, Field};

pub use laurent::LaurentPoly;

fn abs_q(p: u64, c: &Q) -> AbsValue {
    AbsValue::from_valuation(vp(p, c))
}

/// Monomial norm on `k[χ^{±1}]`, given by the values `r_i = |χ_i|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialNorm {
    weights: Vec<AbsValue>,
}

impl MonomialNorm {
    pub fn new(weights: Vec<AbsValue>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidNorm("a torus has rank >= 1".into()));
        }
        if weights.iter().any(AbsValue::is_zero) {
            return Err(Error::InvalidNorm("torus weights must be nonzero".into()));
        }
        Ok(MonomialNorm { weights })
    }

    pub fn from_exps(exps: &[Exp]) -> Result<Self> {
        Self::new(exps.iter().map(|&q| AbsValue::from_exp(q)).collect())
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[AbsValue] {
        &self.weights
    }

    /// `Π r_i^{u_i}`.
    pub fn character_weight(&self, u: &[i64]) -> AbsValue {
        u.iter()
            .zip(&self.weights)
            .fold(AbsValue::one(), |acc, (&k, w)| acc * w.pow(k))
    }

    pub fn eval(&self, p: u64, f: &LaurentPoly) -> Result<AbsValue> {
        if f.rank() != self.rank() {
            return Err(Error::NormMismatch(format!(
                "function of rank {} against a torus of rank {}",
                f.rank(),
                self.rank()
            )));
        }
        Ok(f.terms()
            .map(|(u, c)| abs_q(p, c) * self.character_weight(u))
            .max()
            .unwrap_or(AbsValue::ZERO))
    }
}

/// Gauss norm of the ball `E(0, r)` on `k[a]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BallNorm {
    radius: AbsValue,
}

impl BallNorm {
    pub fn new(radius: AbsValue) -> Result<Self> {
        if radius.is_zero() {
            return Err(Error::InvalidNorm("ball radius must be nonzero".into()));
        }
        Ok(BallNorm { radius })
    }

    pub fn from_exp(q: Exp) -> Self {
        BallNorm {
            radius: AbsValue::from_exp(q),
        }
    }

    pub fn radius(&self) -> AbsValue {
        self.radius
    }

    pub fn eval(&self, p: u64, f: &QPoly) -> AbsValue {
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| abs_q(p, c) * self.radius.pow(i as i64))
            .max()
            .unwrap_or(AbsValue::ZERO)
    }
}

/// A point of one of the two supported families.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Norm {
    Torus(MonomialNorm),
    Additive(BallNorm),
}

/// A regular function on the group carrying the matching family.
#[derive(Clone, Debug, PartialEq)]
pub enum HopfFunction {
    Torus(LaurentPoly),
    Additive(QPoly),
}

impl HopfFunction {
    pub fn parse_additive(src: &str) -> Result<Self> {
        Ok(HopfFunction::Additive(QPoly::parse(src, &["a"])?))
    }

    pub fn parse_torus(src: &str, rank: usize) -> Result<Self> {
        Ok(HopfFunction::Torus(LaurentPoly::parse(src, rank)?))
    }
}

/// A `k`-rational point of the group, acting as the evaluation seminorm `|f(g)|`.
#[derive(Clone, Debug, PartialEq)]
pub enum RationalPoint {
    Torus(Vec<Q>),
    Additive(Q),
}

impl RationalPoint {
    pub fn identity(family: &Norm) -> Self {
        match family {
            Norm::Torus(x) => RationalPoint::Torus(vec![Q::from_integer(1.into()); x.rank()]),
            Norm::Additive(_) => RationalPoint::Additive(Q::from_integer(0.into())),
        }
    }

    pub fn eval(&self, p: u64, f: &HopfFunction) -> Result<AbsValue> {
        match (self, f) {
            (RationalPoint::Torus(g), HopfFunction::Torus(f)) if f.rank() == g.len() => {
                Ok(abs_q(p, &f.eval(g)))
            }
            (RationalPoint::Additive(b), HopfFunction::Additive(f)) => Ok(abs_q(p, &f.eval(b))),
            _ => Err(Error::NormMismatch(
                "point and function families differ".into(),
            )),
        }
    }
}

impl Norm {
    pub fn family(&self) -> &'static str {
        match self {
            Norm::Torus(_) => "torus",
            Norm::Additive(_) => "additive",
        }
    }

    pub fn to_json(&self) -> NormJson {
        match self {
            Norm::Torus(x) => NormJson {
                family: "torus".into(),
                weights_exp: Some(x.weights.clone()),
                radius_exp: None,
            },
            Norm::Additive(x) => NormJson {
                family: "additive".into(),
                weights_exp: None,
                radius_exp: Some(x.radius),
            },
        }
    }

    pub fn from_json(j: &NormJson) -> Result<Norm> {
        match (j.family.as_str(), &j.weights_exp, j.radius_exp) {
            ("torus", Some(w), None) => Ok(Norm::Torus(MonomialNorm::new(w.clone())?)),
            ("additive", None, Some(r)) => Ok(Norm::Additive(BallNorm::new(r)?)),
            _ => Err(Error::InvalidNorm(format!(
                "malformed norm JSON for family {:?}",
                j.family
            ))),
        }
    }
}

/// `{"family": "torus", "weights_exp": [...]}` or `{"family": "additive", "radius_exp": q}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormJson {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub weights_exp: Option<Vec<AbsValue>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub radius_exp: Option<AbsValue>,
}

fn mismatch(x: &Norm, y: &Norm) -> Error {
    Error::NormMismatch(format!("{} against {}", x.family(), y.family()))
}

pub fn norm_eval(p: u64, f: &HopfFunction, x: &Norm) -> Result<AbsValue> {
    match (f, x) {
        (HopfFunction::Torus(f), Norm::Torus(x)) => x.eval(p, f),
        (HopfFunction::Additive(f), Norm::Additive(x)) => Ok(x.eval(p, f)),
        _ => Err(Error::NormMismatch(
            "function and norm families differ".into(),
        )),
    }
}

/// `o_T`: the Shilov point of the unit subtorus, all weights one.
pub fn shilov_point_torus(n: usize) -> Result<MonomialNorm> {
    MonomialNorm::new(vec![AbsValue::one(); n])
}

/// `x ≼ y`. On monomial norms, testing `χ^u` and `χ^{−u}` forces equal weights.
pub fn leq_norm(x: &Norm, y: &Norm) -> Result<bool> {
    match (x, y) {
        (Norm::Torus(a), Norm::Torus(b)) if a.rank() == b.rank() => Ok(a == b),
        (Norm::Additive(a), Norm::Additive(b)) => Ok(a.radius <= b.radius),
        _ => Err(mismatch(x, y)),
    }
}

/// Whether the evaluation seminorm at `g` is dominated by `x`.
pub fn point_leq_norm(p: u64, g: &RationalPoint, x: &Norm) -> Result<bool> {
    match (g, x) {
        // |g^u| ≤ w(u) for all u ∈ Zⁿ forces |g_i| = r_i
        (RationalPoint::Torus(g), Norm::Torus(x)) if g.len() == x.rank() => {
            Ok(g.iter().zip(&x.weights).all(|(gi, w)| abs_q(p, gi) == *w))
        }
        (RationalPoint::Additive(b), Norm::Additive(x)) => Ok(abs_q(p, b) <= x.radius),
        _ => Err(Error::NormMismatch("point and norm families differ".into())),
    }
}

/// `x ∗ y` through the comultiplication.
pub fn convolve(x: &Norm, y: &Norm) -> Result<Norm> {
    match (x, y) {
        // Δχ = χ ⊗ χ
        (Norm::Torus(a), Norm::Torus(b)) if a.rank() == b.rank() => MonomialNorm::new(
            a.weights
                .iter()
                .zip(&b.weights)
                .map(|(u, v)| *u * *v)
                .collect(),
        )
        .map(Norm::Torus),
        // Δa = a⊗1 + 1⊗a; the endpoint terms of Δ(aⁿ) carry coefficient 1
        (Norm::Additive(a), Norm::Additive(b)) => Ok(Norm::Additive(BallNorm {
            radius: a.radius.max(b.radius),
        })),
        _ => Err(mismatch(x, y)),
    }
}

/// `x ∗ g` for a rational point `g`. On the torus this rescales the weights by
/// `|g_i|`; on `G_a` a translate stays in the centred family only when `|g| ≤ r`.
pub fn convolve_point(p: u64, x: &Norm, g: &RationalPoint) -> Result<Norm> {
    match (x, g) {
        (Norm::Torus(a), RationalPoint::Torus(g)) if g.len() == a.rank() => {
            if g.iter().any(num_traits::Zero::is_zero) {
                return Err(Error::InvalidNorm(
                    "torus points have nonzero coordinates".into(),
                ));
            }
            MonomialNorm::new(
                a.weights
                    .iter()
                    .zip(g)
                    .map(|(w, gi)| *w * abs_q(p, gi))
                    .collect(),
            )
            .map(Norm::Torus)
        }
        (Norm::Additive(a), RationalPoint::Additive(b)) => {
            if abs_q(p, b) <= a.radius {
                Ok(x.clone())
            } else {
                Err(Error::InvalidNorm(
                    "translate of the ball leaves the family centred at 0".into(),
                ))
            }
        }
        _ => Err(Error::NormMismatch("point and norm families differ".into())),
    }
}

/// `inv(x)`: the seminorm `f ↦ |inv(f)(x)|`.
pub fn inv_norm(x: &Norm) -> Norm {
    match x {
        Norm::Torus(a) => Norm::Torus(MonomialNorm {
            weights: a.weights.iter().map(|w| w.inv()).collect(),
        }),
        // inv(a) = −a and |−1| = 1
        Norm::Additive(_) => x.clone(),
    }
}

/// A function on which a required domination `lhs ≼ x` fails:
/// `lhs_value > x_value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionWitness {
    pub condition: String,
    pub function: String,
    pub lhs_value: AbsValue,
    pub x_value: AbsValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeCheck {
    /// `1_G ≼ x`.
    pub unit_ok: bool,
    /// `inv(x) ≼ x`.
    pub inv_ok: bool,
    /// `x ∗ x ≼ x`.
    pub idem_ok: bool,
    /// The envelope is bounded.
    pub bounded_ok: bool,
    pub witnesses: Vec<ConditionWitness>,
}

impl EnvelopeCheck {
    pub fn is_subgroup(&self) -> bool {
        self.unit_ok && self.inv_ok && self.idem_ok
    }
}

/// A character separating two different monomial norms `lhs` and `x` with
/// `lhs(χ) > x(χ)`.
fn separating_character(lhs: &MonomialNorm, x: &MonomialNorm) -> Option<Vec<i64>> {
    let n = x.rank();
    (0..n).find_map(|i| {
        let mut u = vec![0; n];
        u[i] = if lhs.weights[i] > x.weights[i] {
            1
        } else if lhs.weights[i] < x.weights[i] {
            -1
        } else {
            return None;
        };
        Some(u)
    })
}

fn torus_witness(
    condition: &str,
    lhs: &MonomialNorm,
    x: &MonomialNorm,
) -> Option<ConditionWitness> {
    separating_character(lhs, x).map(|u| ConditionWitness {
        condition: condition.into(),
        function: LaurentPoly::character(u.clone()).to_string(),
        lhs_value: lhs.character_weight(&u),
        x_value: x.character_weight(&u),
    })
}

/// Decides the envelope-subgroup conditions `1_G ≼ x`, `inv(x) ≼ x`, `x ∗ x ≼ x`.
pub fn envelope_check(x: &Norm) -> EnvelopeCheck {
    let unit = RationalPoint::identity(x);
    // p is irrelevant: the identity has unit coordinates
    let unit_ok = point_leq_norm(2, &unit, x).expect("families match");
    let inv = inv_norm(x);
    let inv_ok = leq_norm(&inv, x).expect("families match");
    let square = convolve(x, x).expect("families match");
    let idem_ok = leq_norm(&square, x).expect("families match");

    let mut witnesses = Vec::new();
    if let Norm::Torus(t) = x {
        let one = shilov_point_torus(t.rank()).expect("rank >= 1");
        if !unit_ok {
            witnesses.extend(torus_witness("unit", &one, t));
        }
        if let (false, Norm::Torus(i)) = (inv_ok, &inv) {
            witnesses.extend(torus_witness("inv", i, t));
        }
        if let (false, Norm::Torus(s)) = (idem_ok, &square) {
            witnesses.extend(torus_witness("idem", s, t));
        }
    }
    EnvelopeCheck {
        unit_ok,
        inv_ok,
        idem_ok,
        // finite weights bound every generator χ_i^{±1} (resp. a) on the envelope
        bounded_ok: true,
        witnesses,
    }
}

/// A norm after base change to an extension, with value-group membership of
/// each weight over the base and over the extension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaseChangedNorm {
    pub norm: NormJson,
    pub field: String,
    pub in_base_value_group: Vec<bool>,
    pub in_extension_value_group: Vec<bool>,
}

/// Base change to `K`: the monomial basis stays orthogonal over `K`, so the
/// infimum is attained on the canonical decomposition and the weights are unchanged.
pub fn base_change_norm(x: &Norm, field: &Field) -> BaseChangedNorm {
    let e = field.ramification_index() as i64;
    let radii: Vec<AbsValue> = match x {
        Norm::Torus(t) => t.weights.clone(),
        Norm::Additive(b) => vec![b.radius],
    };
    let member = |scale: i64| {
        radii
            .iter()
            .map(|r| r.exp().is_some_and(|q| (q * scale).is_integer()))
            .collect()
    };
    BaseChangedNorm {
        norm: x.to_json(),
        field: field.id(),
        in_base_value_group: member(1),
        in_extension_value_group: member(e),
    }
}

/// Conditions (i)–(iv) of the building characterization for a monomial norm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub weights_exp: Vec<AbsValue>,
    /// (i) universal.
    pub universal: bool,
    /// (ii) `x ∗ x ≼ x` and `inv(x) ≼ x`.
    pub group_conditions: bool,
    /// (iii) `o_T ≼ x`.
    pub dominates_shilov_point: bool,
    /// (iv) maximal among points satisfying (i)–(iii).
    pub maximal: bool,
    pub maximality_scope: String,
    pub witnesses: Vec<ConditionWitness>,
}

impl TheoremReport {
    pub fn all_hold(&self) -> bool {
        self.universal && self.group_conditions && self.dominates_shilov_point && self.maximal
    }
}

pub fn theorem_conditions_torus(x: &MonomialNorm) -> TheoremReport {
    let norm = Norm::Torus(x.clone());
    let env = envelope_check(&norm);
    let o_t = shilov_point_torus(x.rank()).expect("rank >= 1");
    let dominates = leq_norm(&Norm::Torus(o_t.clone()), &norm).expect("same rank");
    let mut witnesses: Vec<ConditionWitness> = env
        .witnesses
        .iter()
        .filter(|w| w.condition != "unit")
        .cloned()
        .collect();
    if !dominates {
        witnesses.extend(torus_witness("o_T", &o_t, x));
    }
    let universal = true;
    let group_conditions = env.idem_ok && env.inv_ok;
    TheoremReport {
        weights_exp: x.weights.clone(),
        universal,
        group_conditions,
        dominates_shilov_point: dominates,
        // ≼ is equality on monomial norms, so x is maximal iff it satisfies (i)–(iii)
        maximal: universal && group_conditions && dominates,
        maximality_scope: "monomial norms of the same rank".into(),
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{exp, q};

    fn torus(exps: &[(i64, i64)]) -> Norm {
        Norm::Torus(
            MonomialNorm::from_exps(&exps.iter().map(|&(n, d)| exp(n, d)).collect::<Vec<_>>())
                .unwrap(),
        )
    }

    fn ball(n: i64, d: i64) -> Norm {
        Norm::Additive(BallNorm::from_exp(exp(n, d)))
    }

    #[test]
    fn evaluation_examples() {
        let f = HopfFunction::parse_torus("chi + chi^-1", 1).unwrap();
        assert_eq!(
            norm_eval(2, &f, &torus(&[(0, 1)])).unwrap(),
            AbsValue::one()
        );
        // |p·χ²| with r₁ = p: exponent 1 + 2·(−1)
        let g = HopfFunction::parse_torus("3*chi^2", 1).unwrap();
        assert_eq!(
            norm_eval(3, &g, &torus(&[(-1, 1)])).unwrap(),
            AbsValue::from_exp(exp(-1, 1))
        );
        let c = HopfFunction::parse_additive("12").unwrap();
        assert_eq!(
            norm_eval(2, &c, &ball(5, 1)).unwrap(),
            AbsValue::from_exp(exp(2, 1))
        );
        let c = HopfFunction::parse_torus("12", 2).unwrap();
        assert_eq!(
            norm_eval(2, &c, &torus(&[(1, 1), (3, 1)])).unwrap(),
            AbsValue::from_exp(exp(2, 1))
        );
        assert!(norm_eval(2, &f, &ball(0, 1)).is_err());
        let wrong_rank = HopfFunction::parse_torus("chi1", 2).unwrap();
        assert!(norm_eval(2, &wrong_rank, &torus(&[(0, 1)])).is_err());
    }

    #[test]
    fn shilov_point() {
        assert_eq!(shilov_point_torus(1).unwrap().weights(), &[AbsValue::one()]);
        assert_eq!(shilov_point_torus(3).unwrap().rank(), 3);
        assert!(shilov_point_torus(0).is_err());
        let o = Norm::Torus(shilov_point_torus(2).unwrap());
        let f = HopfFunction::parse_torus("1 + 2*chi1 - 4*chi1*chi2^-3", 2).unwrap();
        assert_eq!(norm_eval(2, &f, &o).unwrap(), AbsValue::one());
    }

    #[test]
    fn order_examples() {
        assert!(!leq_norm(&torus(&[(1, 1)]), &torus(&[(0, 1)])).unwrap());
        assert!(!leq_norm(&torus(&[(0, 1)]), &torus(&[(1, 1)])).unwrap());
        assert!(leq_norm(&torus(&[(1, 2)]), &torus(&[(1, 2)])).unwrap());
        assert!(leq_norm(&ball(1, 1), &ball(0, 1)).unwrap());
        assert!(!leq_norm(&ball(0, 1), &ball(1, 1)).unwrap());
        assert!(leq_norm(&ball(0, 1), &torus(&[(0, 1)])).is_err());
    }

    #[test]
    fn convolution_examples() {
        assert_eq!(
            convolve(&torus(&[(1, 1)]), &torus(&[(-2, 1)])).unwrap(),
            torus(&[(-1, 1)])
        );
        let o = torus(&[(0, 1), (0, 1)]);
        assert_eq!(convolve(&o, &o).unwrap(), o);
        assert_eq!(convolve(&ball(1, 1), &ball(3, 1)).unwrap(), ball(1, 1));
        assert!(convolve(&o, &torus(&[(0, 1)])).is_err());
    }

    #[test]
    fn identity_is_the_monoid_unit() {
        let x = torus(&[(1, 2), (-3, 1)]);
        let one = RationalPoint::identity(&x);
        assert_eq!(convolve_point(5, &x, &one).unwrap(), x);
        let b = ball(2, 1);
        assert_eq!(
            convolve_point(5, &b, &RationalPoint::identity(&b)).unwrap(),
            b
        );
        // translating by a point of absolute value p rescales the weight
        let g = RationalPoint::Torus(vec![q(5), q(1)]);
        assert_eq!(
            convolve_point(5, &x, &g).unwrap(),
            torus(&[(3, 2), (-3, 1)])
        );
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(
            inv_norm(&torus(&[(1, 1), (-2, 1)])),
            torus(&[(-1, 1), (2, 1)])
        );
        let o = torus(&[(0, 1)]);
        assert_eq!(inv_norm(&o), o);
        assert_eq!(inv_norm(&ball(3, 2)), ball(3, 2));
    }

    #[test]
    fn envelope_examples() {
        let env = envelope_check(&torus(&[(0, 1), (0, 1)]));
        assert!(env.unit_ok && env.inv_ok && env.idem_ok && env.bounded_ok);
        assert!(env.witnesses.is_empty());

        // weight p^{-1}: χ has weight < 1 = |χ(1)|
        let env = envelope_check(&torus(&[(1, 1)]));
        assert!(!env.unit_ok);
        let w = &env.witnesses[0];
        assert_eq!(w.condition, "unit");
        assert_eq!(w.function, "chi");
        assert!(w.lhs_value > w.x_value);

        for r in [(-2, 1), (0, 1), (7, 3)] {
            let env = envelope_check(&ball(r.0, r.1));
            assert!(env.unit_ok && env.inv_ok && env.idem_ok && env.bounded_ok);
        }
    }

    #[test]
    fn base_change_examples() {
        let kk =
            crate::valued_field::make_extension(2, QPoly::parse("T^2-2", &["T"]).unwrap()).unwrap();
        let bc = base_change_norm(&torus(&[(0, 1)]), &kk);
        assert_eq!(Norm::from_json(&bc.norm).unwrap(), torus(&[(0, 1)]));
        let bc = base_change_norm(&ball(1, 1), &kk);
        assert_eq!(Norm::from_json(&bc.norm).unwrap(), ball(1, 1));
        let bc = base_change_norm(&torus(&[(1, 2)]), &kk);
        assert_eq!(bc.in_base_value_group, vec![false]);
        assert_eq!(bc.in_extension_value_group, vec![true]);
    }

    #[test]
    fn theorem_examples() {
        let rep = theorem_conditions_torus(&shilov_point_torus(2).unwrap());
        assert!(rep.all_hold());
        let Norm::Torus(x) = torus(&[(0, 1), (1, 2)]) else {
            unreachable!()
        };
        let rep = theorem_conditions_torus(&x);
        assert!(!rep.group_conditions || !rep.dominates_shilov_point);
        assert!(!rep.maximal);
        assert!(!rep.witnesses.is_empty());
    }

    #[test]
    fn norm_json() {
        let j = serde_json::to_string(&torus(&[(0, 1), (-1, 2)]).to_json()).unwrap();
        assert_eq!(
            j,
            r#"{"family":"torus","weights_exp":[{"num":0,"den":1},{"num":-1,"den":2}]}"#
        );
        let back: NormJson = serde_json::from_str(&j).unwrap();
        assert_eq!(Norm::from_json(&back).unwrap(), torus(&[(0, 1), (-1, 2)]));
        let j = serde_json::to_string(&ball(1, 1).to_json()).unwrap();
        assert_eq!(j, r#"{"family":"additive","radius_exp":{"num":1,"den":1}}"#);
        let bad: NormJson = serde_json::from_str(r#"{"family":"torus"}"#).unwrap();
        assert!(Norm::from_json(&bad).is_err());
    }
}
