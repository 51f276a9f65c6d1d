//! The Bruhat–Tits tree of SL₂ inside the Berkovich line.
//!
//! Over a base field `k = Q_p`, the tree is the union of the paths `η_a(r)`
//! with `a ∈ k` and `r > 0`. The retraction `τ` sends a point to the smallest
//! `k`-centred ball containing it. Galois-fixed points coming from a totally
//! ramified extension are analysed through the conjugate distances of the
//! generator, and the apartment `{η₀(r)}` of the diagonal torus is tested via
//! the action `z ↦ t²z` of `diag(t, t⁻¹)`.

use serde::{Deserialize, Serialize};

use crate::arith::{q, Q};
use crate::berkovich::{distance, eta, BerkPoint, BerkPointJson, PointType};
use crate::error::{Error, Result};
use crate::poly::{FpPoly, QPoly};
use crate::valued_field::{
    conjugate_distances, eisenstein_criterion, make_extension, AbsValue, ExtField, ExtPoly, Field,
    FieldElt, FieldKind,
};

/// `d(β, k) = max_{i≥1} |b_i α^i|` for `β = Σ b_i α^i` in an Eisenstein
/// extension; the basis `1, α, …, α^{e−1}` is orthogonal because the
/// valuations `v(b_i) + i/e` are pairwise distinct modulo 1.
pub fn distance_to_base(beta: &FieldElt) -> Result<AbsValue> {
    let field = beta.field();
    match field.kind() {
        FieldKind::Trivial => Ok(AbsValue::ZERO),
        FieldKind::Eisenstein => {
            let alpha = FieldElt::generator(field).abs();
            Ok(beta
                .coeffs()
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, b)| FieldElt::from_rational(field, b.clone()).abs() * alpha.pow(i as i64))
                .max()
                .unwrap_or(AbsValue::ZERO))
        }
        FieldKind::Unramified => Err(Error::UnsupportedKind(
            "the retraction is only defined here for totally ramified extensions".into(),
        )),
    }
}

/// The retraction onto the `k`-rational tree.
pub fn tau(x: &BerkPoint) -> Result<BerkPoint> {
    let d = distance_to_base(x.center())?;
    let b0 = FieldElt::from_rational(x.field(), x.center().coeffs()[0].clone());
    Ok(eta(&b0, x.radius().max(d)))
}

/// Whether `x` lies on the `k`-rational tree, i.e. `τ(x) = x`.
pub fn in_building(x: &BerkPoint) -> Result<bool> {
    if x.point_type() == PointType::One {
        return Err(Error::TypeOnePoint);
    }
    Ok(tau(x)? == *x)
}

/// `Q(U) = P(αU)/a₀` over `K = k[T]/P` and its residue reduction.
pub fn q_polynomial(field: &Field) -> Result<(ExtPoly, FpPoly)> {
    if field.kind() != FieldKind::Eisenstein {
        return Err(Error::UnsupportedKind(format!(
            "Q(U) needs an Eisenstein field, got {:?}",
            field.kind()
        )));
    }
    let a0 = field.defining_poly().coeff(0);
    let inv_a0 = FieldElt::from_rational(field, a0.recip());
    let qu = ExtPoly::from_qpoly(field, field.defining_poly())
        .rescale_variable(&FieldElt::generator(field))
        .scale(&inv_a0);
    let residues = qu
        .coeffs()
        .iter()
        .map(|c| c.residue().map(|r| r.coeff(0)))
        .collect::<Result<Vec<_>>>()?;
    Ok((qu, FpPoly::new(field.p(), residues)))
}

/// Closed-open radius interval `[from, to)` of Galois-fixed points off the
/// rational tree, serialized by exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedSegment {
    pub from_exp: AbsValue,
    pub to_exp: AbsValue,
    pub closed_open: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisOrbitReport {
    pub p: u64,
    pub defining_poly: String,
    pub e: usize,
    /// `|α^g − α|` over the conjugates `α^g ≠ α`, largest first.
    pub conjugate_distances: Vec<AbsValue>,
    /// Orbit diameter.
    pub r: AbsValue,
    /// Distance from α to `k`.
    pub r_prime: AbsValue,
    pub fixed_segment: Option<FixedSegment>,
    /// (a) the conjugate paths meet off the rational tree.
    pub cond_paths_outside: bool,
    /// (b) every conjugate lies in the open ball `D(α, |α|)`.
    pub cond_open_ball: bool,
    /// (c) every root of `Q` lies in `D(1, 1)`, read off the residue reduction.
    pub cond_q_roots: bool,
    /// (d) `p | e`.
    pub cond_e_vanishes: bool,
    pub q_reduction: String,
}

impl GaloisOrbitReport {
    /// The three restatements of `r < r′` agree.
    pub fn abc_agree(&self) -> bool {
        self.cond_paths_outside == self.cond_open_ball && self.cond_open_ball == self.cond_q_roots
    }

    /// Residue characteristic divides `e` but the paths still meet on the tree.
    pub fn d_diverges(&self) -> bool {
        self.cond_e_vanishes && !self.cond_q_roots
    }
}

pub fn galois_fixed_report(p: u64, poly: &QPoly) -> Result<GaloisOrbitReport> {
    eisenstein_criterion(p, poly).map_err(Error::NotEisenstein)?;
    let field = make_extension(p, poly.clone())?;
    if field.kind() != FieldKind::Eisenstein {
        return Err(Error::Degree {
            expected: ">= 2".into(),
            found: field.degree(),
        });
    }
    let e = field.degree();
    let alpha = FieldElt::generator(&field);
    let distances = conjugate_distances(&field)?;
    let r = distances[0];
    let r_prime = tau(&eta(&alpha, AbsValue::ZERO))?.radius();
    let abs_alpha = alpha.abs();

    let fixed_segment = (r < r_prime).then_some(FixedSegment {
        from_exp: r,
        to_exp: r_prime,
        closed_open: true,
    });
    let cond_paths_outside = !in_building(&eta(&alpha, r))?;
    let cond_open_ball = distances.iter().all(|d| *d < abs_alpha);
    let (_, q_red) = q_polynomial(&field)?;
    let cond_q_roots = all_roots_reduce_to_one(&q_red, e);
    Ok(GaloisOrbitReport {
        p,
        defining_poly: poly.to_string(),
        e,
        conjugate_distances: distances,
        r,
        r_prime,
        fixed_segment,
        cond_paths_outside,
        cond_open_ball,
        cond_q_roots,
        cond_e_vanishes: (e as u64).is_multiple_of(p),
        q_reduction: q_red.fmt_var("U"),
    })
}

/// `Q` has `e` unit roots, so they all lie in `D(1,1)` exactly when the
/// reduction is `c·(U − 1)^e`, i.e. when its shift by 1 is a monomial of degree `e`.
fn all_roots_reduce_to_one(q_red: &FpPoly, e: usize) -> bool {
    let shifted = q_red.taylor_shift(1);
    shifted.degree() == Some(e) && shifted.coeffs()[..e].iter().all(|&c| c == 0)
}

/// Nontrivial automorphism `α ↦ −a₁ − α` of a quadratic extension, applied to the centre.
pub fn galois_conjugate_deg2(x: &BerkPoint) -> Result<BerkPoint> {
    let field = x.field();
    if field.degree() != 2 {
        return Err(Error::Degree {
            expected: "2".into(),
            found: field.degree(),
        });
    }
    let a1 = field.defining_poly().coeff(1);
    let c = x.center().coeffs();
    let image = FieldElt::from_coeffs(field, vec![&c[0] - &c[1] * &a1, -c[1].clone()]);
    Ok(eta(&image, x.radius()))
}

/// `diag(t, t⁻¹)` acting by `E(a, r) ↦ E(t²a, |t²|·r)`.
pub fn apartment_action(t: &FieldElt, x: &BerkPoint) -> Result<BerkPoint> {
    if t.is_zero() {
        return Err(Error::Parse("the torus element must be nonzero".into()));
    }
    let k = crate::berkovich::common_field(t.field(), x.field())?;
    let t2 = t.embed_into(&k)?.pow(2);
    Ok(eta(
        &(&t2 * &x.center().embed_into(&k)?),
        t2.abs() * x.radius(),
    ))
}

/// A unit of norm one whose torus action moves a point off the apartment.
#[derive(Clone, Debug)]
pub struct ApartmentMoveWitness {
    pub unit: FieldElt,
    pub extension_used: Option<Field>,
    pub moved_to: BerkPoint,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub unit: String,
    pub extension_used: Option<String>,
    pub moved_to: BerkPointJson,
}

impl ApartmentMoveWitness {
    pub fn to_json(&self) -> WitnessJson {
        WitnessJson {
            unit: self.unit.fmt_alpha(),
            extension_used: self.extension_used.as_ref().map(|f| f.id()),
            moved_to: self.moved_to.to_json(),
        }
    }
}

/// The unramified quadratic extension `Q_p[T]/(T² + bT + c)` with the
/// lexicographically first irreducible reduction.
pub fn unramified_quadratic(p: u64) -> Field {
    for b in 0..p {
        for c in 1..p {
            if FpPoly::new(p, vec![c, b, 1]).is_irreducible() {
                let f = QPoly::from_ints(&[c as i64, b as i64, 1]);
                return make_extension(p, f).expect("irreducible reduction is unramified");
            }
        }
    }
    unreachable!("every prime field has an irreducible quadratic")
}

/// Searches residue representatives `t` of `k`, then of the unramified
/// quadratic extension, for one whose residue character `t̃²` is nontrivial;
/// such a unit has `|t² − 1| = 1` and moves every ball `E(a, r)` with `|a| > r`.
pub fn find_moving_unit(x: &BerkPoint) -> Result<ApartmentMoveWitness> {
    let k = x.field();
    if !k.is_base() {
        return Err(Error::UnsupportedKind(
            "the unit search runs over a point of the base field".into(),
        ));
    }
    let a = x.center();
    if a.abs() <= x.radius() {
        return Err(Error::OnApartment);
    }
    let p = k.p();
    let base_units = (1..p).map(|c| FieldElt::from_int(k, c as i64));
    if let Some(w) = first_witness(base_units, x, None)? {
        return Ok(w);
    }
    let ext = unramified_quadratic(p);
    let ext_units = (0..p)
        .flat_map(|c1| (0..p).map(move |c0| (c0, c1)))
        .filter(|&(c0, c1)| (c0, c1) != (0, 0))
        .map(|(c0, c1)| FieldElt::from_coeffs(&ext, vec![q(c0 as i64), q(c1 as i64)]));
    first_witness(ext_units, x, Some(ext.clone()))?.ok_or(Error::NoWitness)
}

fn first_witness(
    units: impl Iterator<Item = FieldElt>,
    x: &BerkPoint,
    extension_used: Option<Field>,
) -> Result<Option<ApartmentMoveWitness>> {
    for t in units {
        let one = FieldElt::one(t.field());
        if t.pow(2).residue()? == one.residue()? {
            continue;
        }
        let moved_to = apartment_action(&t, x)?;
        if moved_to != *x {
            return Ok(Some(ApartmentMoveWitness {
                unit: t,
                extension_used,
                moved_to,
            }));
        }
    }
    Ok(None)
}

/// Whether `x` is on the apartment `{η₀(r)}`.
pub fn on_apartment(x: &BerkPoint) -> bool {
    x.center().abs() <= x.radius()
}

/// `|β − a|` for `a ∈ k`.
pub fn distance_to_rational(beta: &FieldElt, a: &Q) -> Result<AbsValue> {
    distance(beta, &FieldElt::from_rational(beta.field(), a.clone()))
}

/// Base field of an extension.
pub fn base_of(field: &Field) -> Field {
    ExtField::base(field.p()).expect("p was validated when the field was built")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::exp;
    use crate::berkovich::leq;

    fn field(p: u64, s: &str) -> Field {
        make_extension(p, QPoly::parse(s, &["T"]).unwrap()).unwrap()
    }

    fn av(n: i64, d: i64) -> AbsValue {
        AbsValue::from_exp(exp(n, d))
    }

    fn poly(s: &str) -> QPoly {
        QPoly::parse(s, &["T"]).unwrap()
    }

    #[test]
    fn tau_examples() {
        let kk = field(2, "T^2-2");
        let a = FieldElt::generator(&kk);
        let t = tau(&eta(&a, AbsValue::ZERO)).unwrap();
        assert_eq!(t, eta(&FieldElt::zero(&kk), av(1, 2)));
        assert_eq!(t.radius(), av(1, 2));

        let k_ball = eta(&FieldElt::from_int(&kk, 3), av(2, 1));
        assert_eq!(tau(&k_ball).unwrap(), k_ball);

        let one_plus = &FieldElt::one(&kk) + &a;
        let t = tau(&eta(&one_plus, av(2, 1))).unwrap();
        assert_eq!(t, eta(&FieldElt::one(&kk), av(1, 2)));

        let unr = field(2, "T^2+T+1");
        assert!(tau(&eta(&FieldElt::generator(&unr), AbsValue::one())).is_err());
    }

    #[test]
    fn in_building_examples() {
        let k = ExtField::base(2).unwrap();
        assert!(in_building(&eta(&FieldElt::zero(&k), av(1, 1))).unwrap());
        let kk = field(2, "T^2-2");
        let a = FieldElt::generator(&kk);
        assert!(!in_building(&eta(&a, av(1, 1))).unwrap());
        assert!(in_building(&eta(&a, av(1, 2))).unwrap());
        assert_eq!(
            in_building(&eta(&a, AbsValue::ZERO)),
            Err(Error::TypeOnePoint)
        );
    }

    #[test]
    fn report_for_sqrt2() {
        let r = galois_fixed_report(2, &poly("T^2-2")).unwrap();
        assert_eq!(r.r, av(3, 2));
        assert_eq!(r.r_prime, av(1, 2));
        assert_eq!(
            r.fixed_segment,
            Some(FixedSegment {
                from_exp: av(3, 2),
                to_exp: av(1, 2),
                closed_open: true
            })
        );
        assert!(r.cond_paths_outside && r.cond_open_ball && r.cond_q_roots && r.cond_e_vanishes);
        assert_eq!(r.q_reduction, "U^2+1");
    }

    #[test]
    fn tame_reports() {
        let r = galois_fixed_report(3, &poly("T^2-3")).unwrap();
        assert_eq!(r.r, av(1, 2));
        assert_eq!(r.r_prime, av(1, 2));
        assert!(r.fixed_segment.is_none());
        assert!(!r.cond_e_vanishes);
        assert!(r.abc_agree() && !r.cond_paths_outside);

        let r = galois_fixed_report(2, &poly("T^3-2")).unwrap();
        assert_eq!(r.r, av(1, 3));
        assert_eq!(r.r_prime, av(1, 3));
        assert!(r.fixed_segment.is_none());
        assert!(!r.cond_e_vanishes);
    }

    #[test]
    fn report_rejections() {
        assert!(matches!(
            galois_fixed_report(2, &poly("T^2-1")),
            Err(Error::NotEisenstein(_))
        ));
        assert!(matches!(
            galois_fixed_report(2, &poly("T-2")),
            Err(Error::Degree { .. })
        ));
    }

    #[test]
    fn degree_six_over_two_diverges_on_d() {
        // e = 2·3: the tame part keeps two residue classes apart
        let r = galois_fixed_report(2, &poly("T^6-2")).unwrap();
        assert!(r.cond_e_vanishes);
        assert!(r.abc_agree());
        assert!(!r.cond_q_roots);
        assert!(r.d_diverges());
    }

    #[test]
    fn q_polynomial_examples() {
        let (qu, red) = q_polynomial(&field(2, "T^2-2")).unwrap();
        let kk = qu.field().clone();
        assert_eq!(
            qu,
            ExtPoly::new(
                &kk,
                vec![
                    FieldElt::one(&kk),
                    FieldElt::zero(&kk),
                    FieldElt::from_int(&kk, -1)
                ]
            )
        );
        assert_eq!(red, FpPoly::new(2, vec![1, 0, 1]));

        let (qu, red) = q_polynomial(&field(3, "T^3-3")).unwrap();
        assert!(qu.coeffs()[0] == FieldElt::one(qu.field()));
        assert_eq!(red, FpPoly::new(3, vec![1, 0, 0, 2]));

        let (qu, _) = q_polynomial(&field(5, "T^4+10*T^2+5*T+5")).unwrap();
        assert!(qu.coeffs()[0] == FieldElt::one(qu.field()));
    }

    #[test]
    fn quadratic_conjugation() {
        let kk = field(2, "T^2-2");
        let a = FieldElt::generator(&kk);
        let c = galois_conjugate_deg2(&eta(&a, AbsValue::ZERO)).unwrap();
        assert_eq!(c.center(), &-&a);
        let meet = eta(&a, av(3, 2));
        assert_eq!(galois_conjugate_deg2(&meet).unwrap(), meet);
        let g = eta(&FieldElt::zero(&kk), av(7, 3));
        assert_eq!(galois_conjugate_deg2(&g).unwrap(), g);
        let cubic = field(2, "T^3-2");
        assert!(galois_conjugate_deg2(&eta(&FieldElt::zero(&cubic), AbsValue::one())).is_err());
        // with a linear coefficient: T^2 + 2T + 2, α ↦ −2 − α
        let k2 = field(2, "T^2+2*T+2");
        let b = FieldElt::generator(&k2);
        let c = galois_conjugate_deg2(&eta(&b, AbsValue::ZERO)).unwrap();
        let sum = &b + c.center();
        assert_eq!(sum, FieldElt::from_int(&k2, -2));
    }

    #[test]
    fn apartment_action_examples() {
        let k = ExtField::base(5).unwrap();
        let x = eta(&FieldElt::one(&k), av(1, 1));
        assert_eq!(apartment_action(&FieldElt::one(&k), &x).unwrap(), x);
        let g = eta(&FieldElt::zero(&k), av(2, 1));
        assert_eq!(apartment_action(&FieldElt::from_int(&k, 3), &g).unwrap(), g);
        let moved = apartment_action(&FieldElt::from_int(&k, 2), &x).unwrap();
        assert_eq!(moved, eta(&FieldElt::from_int(&k, 4), av(1, 1)));
        assert_ne!(moved, x);
    }

    #[test]
    fn moving_unit_search() {
        let q5 = ExtField::base(5).unwrap();
        let w = find_moving_unit(&eta(&FieldElt::one(&q5), av(1, 1))).unwrap();
        assert_eq!(w.unit, FieldElt::from_int(&q5, 2));
        assert!(w.extension_used.is_none());

        for p in [2, 3] {
            let k = ExtField::base(p).unwrap();
            let x = eta(&FieldElt::one(&k), av(1, 1));
            let w = find_moving_unit(&x).unwrap();
            let ext = w
                .extension_used
                .clone()
                .expect("needs the unramified extension");
            assert_eq!(ext.kind(), FieldKind::Unramified);
            assert_eq!(ext.residue_degree(), 2);
            assert!(w.unit.abs().is_one());
            assert_ne!(w.moved_to, x);
        }
        let q2 = ExtField::base(2).unwrap();
        assert_eq!(
            find_moving_unit(&eta(&FieldElt::zero(&q2), av(1, 1))).err(),
            Some(Error::OnApartment)
        );
    }

    #[test]
    fn unramified_quadratics() {
        assert_eq!(unramified_quadratic(2).defining_poly(), &poly("T^2+T+1"));
        assert_eq!(unramified_quadratic(3).defining_poly(), &poly("T^2+1"));
        assert_eq!(unramified_quadratic(5).defining_poly(), &poly("T^2+2"));
    }

    #[test]
    fn tau_dominates_and_is_idempotent() {
        let kk = field(3, "T^2-3");
        let a = FieldElt::generator(&kk);
        let x = eta(&(&a + &FieldElt::from_int(&kk, 4)), av(5, 2));
        let t = tau(&x).unwrap();
        assert!(leq(&x, &t).unwrap());
        assert_eq!(tau(&t).unwrap(), t);
        assert_eq!(
            distance_to_rational(&a, &Q::from_integer(0.into())).unwrap(),
            av(1, 2)
        );
        assert!(base_of(&kk).is_base());
    }
}
