mod common;

use btfix::arith::{exp, Exp, Q};
use btfix::berkovich::{eta, join, leq, seminorm_eval, BerkPoint};
use btfix::bt_tree::{in_building, tau};
use btfix::hopf_norms::{
    convolve, convolve_point, inv_norm, norm_eval, point_leq_norm, shilov_point_torus,
    HopfFunction, LaurentPoly, MonomialNorm, Norm, RationalPoint,
};
use btfix::poly::QPoly;
use btfix::sweep::{sample_polynomial, SweepMode};
use btfix::valued_field::{eisenstein_criterion, newton_polygon, AbsValue, ExtPoly, Field};
use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rational() -> impl Strategy<Value = Q> {
    (-200i64..200, 1i64..60).prop_map(|(n, d)| Q::new(BigInt::from(n), BigInt::from(d)))
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

fn field(idx: usize) -> Field {
    match idx % 4 {
        0 => qp(2),
        1 => ext(2, "T^2-2"),
        2 => ext(3, "T^3-3"),
        _ => ext(5, "T^2+5*T+5"),
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_point(k: &Field, r: &mut ChaCha8Rng) -> BerkPoint {
    eta(&random_elt(k, 0, 3, r), random_radius(k, -1, 3, r))
}

fn random_poly(k: &Field, r: &mut ChaCha8Rng) -> ExtPoly {
    let deg = r.gen_range(0..=3);
    ExtPoly::new(k, (0..=deg).map(|_| random_elt(k, -1, 3, r)).collect())
}

fn random_laurent(rank: usize, p: u64, r: &mut ChaCha8Rng) -> LaurentPoly {
    let n = r.gen_range(1..=4);
    LaurentPoly::new(
        rank,
        (0..n).map(|_| {
            let u = (0..rank).map(|_| r.gen_range(-3..=3)).collect();
            (u, random_rational(p, -2, 3, 0.0, r))
        }),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_abs_is_ultrametric_and_multiplicative(p in small_prime(), x in rational(), y in rational()) {
        let a = |q: &Q| abs_rational(p, q);
        prop_assert!(a(&(&x + &y)) <= a(&x).max(a(&y)));
        if a(&x) != a(&y) {
            prop_assert_eq!(a(&(&x + &y)), a(&x).max(a(&y)));
        }
        prop_assert_eq!(a(&(&x * &y)), a(&x) * a(&y));
    }

    #[test]
    fn element_abs_matches_norm_oracle(idx in 0usize..4, seed in any::<u64>()) {
        let k = field(idx);
        let mut r = rng(seed);
        let (x, y) = (random_elt(&k, -2, 3, &mut r), random_elt(&k, -2, 3, &mut r));
        prop_assert_eq!(x.abs(), oracle_abs(k.p(), k.defining_poly(), x.coeffs()));
        prop_assert_eq!((&x * &y).abs(), x.abs() * y.abs());
        prop_assert!((&x + &y).abs() <= x.abs().max(y.abs()));
    }

    #[test]
    fn resultant_matches_sylvester(f in prop::collection::vec(-20i64..20, 2..6), g in prop::collection::vec(-20i64..20, 1..5)) {
        let (f, g) = (QPoly::from_ints(&f), QPoly::from_ints(&g));
        prop_assume!(!f.is_zero() && !g.is_zero() && f.degree() >= Some(1));
        prop_assert_eq!(f.resultant(&g), sylvester_resultant(f.coeffs(), g.coeffs()));
    }

    #[test]
    fn newton_polygon_of_product_is_union(idx in 0usize..4, seed in any::<u64>()) {
        let k = field(idx);
        let mut r = rng(seed);
        let (f, g) = (random_poly(&k, &mut r), random_poly(&k, &mut r));
        prop_assume!(f.degree() >= Some(1) && g.degree() >= Some(1));
        let roots = |h: &ExtPoly| {
            let mut v = newton_polygon(h, false).unwrap().root_abs_values();
            v.sort();
            v
        };
        let mut union = [roots(&f), roots(&g)].concat();
        union.sort();
        prop_assert_eq!(roots(&f.mul(&g)), union);
    }

    #[test]
    fn seminorm_multiplicative_and_ultrametric(idx in 0usize..4, seed in any::<u64>()) {
        let k = field(idx);
        let mut r = rng(seed);
        let x = random_point(&k, &mut r);
        let (f, g) = (random_poly(&k, &mut r), random_poly(&k, &mut r));
        let ev = |h: &ExtPoly| seminorm_eval(h, &x).unwrap();
        prop_assert_eq!(ev(&f.mul(&g)), ev(&f) * ev(&g));
        prop_assert!(ev(&f.add(&g)) <= ev(&f).max(ev(&g)));
    }

    #[test]
    fn seminorm_is_monotone_in_the_point(idx in 0usize..4, seed in any::<u64>()) {
        let k = field(idx);
        let mut r = rng(seed);
        let (x, y) = (random_point(&k, &mut r), random_point(&k, &mut r));
        let j = join(&x, &y).unwrap();
        let f = random_poly(&k, &mut r);
        prop_assert!(seminorm_eval(&f, &x).unwrap() <= seminorm_eval(&f, &j).unwrap());
    }

    #[test]
    fn join_is_commutative_and_idempotent(idx in 0usize..4, seed in any::<u64>()) {
        let k = field(idx);
        let mut r = rng(seed);
        let (x, y) = (random_point(&k, &mut r), random_point(&k, &mut r));
        prop_assert_eq!(join(&x, &y).unwrap(), join(&y, &x).unwrap());
        prop_assert_eq!(join(&x, &x).unwrap(), x.clone());
        let j = join(&x, &y).unwrap();
        prop_assert!(leq(&x, &j).unwrap() && leq(&y, &j).unwrap());
    }

    #[test]
    fn tau_laws(idx in 0usize..4, seed in any::<u64>()) {
        let k = field(idx);
        let mut r = rng(seed);
        let x = random_point(&k, &mut r);
        let t = tau(&x).unwrap();
        prop_assert_eq!(tau(&t).unwrap(), t.clone());
        prop_assert!(leq(&x, &t).unwrap());
        prop_assert!(t.center().is_rational());
        prop_assert_eq!(in_building(&x).unwrap(), t == x);
        // least k-ball: shrinking tau(x) along its centre loses x
        let smaller = eta(t.center(), t.radius() * AbsValue::from_exp(exp(1, 2)));
        prop_assert!(!leq(&x, &smaller).unwrap());
    }

    #[test]
    fn monomial_norms_are_multiplicative(rank in 1usize..3, seed in any::<u64>(), p in small_prime()) {
        let mut r = rng(seed);
        let w: Vec<Exp> = (0..rank).map(|_| exp(r.gen_range(-4..=4), r.gen_range(1..=3))).collect();
        let x = Norm::Torus(MonomialNorm::from_exps(&w).unwrap());
        let (f, g) = (random_laurent(rank, p, &mut r), random_laurent(rank, p, &mut r));
        let ev = |h: LaurentPoly| norm_eval(p, &HopfFunction::Torus(h), &x).unwrap();
        prop_assert_eq!(ev(f.mul(&g)), ev(f.clone()) * ev(g.clone()));
        prop_assert!(ev(f.add(&g)) <= ev(f).max(ev(g)));
    }

    #[test]
    fn convolution_is_a_commutative_monoid_with_inverse(seed in any::<u64>()) {
        let mut r = rng(seed);
        let mut norm = || {
            Norm::Torus(MonomialNorm::from_exps(&[exp(r.gen_range(-4..=4), 2), exp(r.gen_range(-4..=4), 3)]).unwrap())
        };
        let (x, y, z) = (norm(), norm(), norm());
        let c = |a: &Norm, b: &Norm| convolve(a, b).unwrap();
        prop_assert_eq!(c(&c(&x, &y), &z), c(&x, &c(&y, &z)));
        prop_assert_eq!(c(&x, &y), c(&y, &x));
        let o = Norm::Torus(shilov_point_torus(2).unwrap());
        prop_assert_eq!(c(&x, &o), x.clone());
        prop_assert_eq!(c(&x, &inv_norm(&x)), o);
        prop_assert_eq!(inv_norm(&inv_norm(&x)), x.clone());
        let one = RationalPoint::identity(&x);
        prop_assert_eq!(convolve_point(3, &x, &one).unwrap(), x);
    }

    /// Rational points dominated by `x` evaluate below `x` on every function,
    /// and products of points in the unit subtorus stay below `o_T`.
    #[test]
    fn envelope_soundness_at_rational_points(seed in any::<u64>(), p in small_prime()) {
        let mut r = rng(seed);
        let unit = |r: &mut ChaCha8Rng| random_rational(p, 0, 0, 0.0, r);
        let g: Vec<Q> = (0..2).map(|_| unit(&mut r)).collect();
        let h: Vec<Q> = (0..2).map(|_| unit(&mut r)).collect();
        let gh: Vec<Q> = g.iter().zip(&h).map(|(a, b)| a * b).collect();
        let o = Norm::Torus(shilov_point_torus(2).unwrap());
        for pt in [&g, &h, &gh] {
            prop_assert!(point_leq_norm(p, &RationalPoint::Torus(pt.clone()), &o).unwrap());
        }
        let f = HopfFunction::Torus(random_laurent(2, p, &mut r));
        let bound = norm_eval(p, &f, &o).unwrap();
        for pt in [g, h, gh] {
            prop_assert!(RationalPoint::Torus(pt).eval(p, &f).unwrap() <= bound);
        }
    }

    #[test]
    fn sampled_polynomials_are_eisenstein(seed in any::<u64>(), i in 0usize..1000) {
        for mode in [SweepMode::Tame, SweepMode::WildPrime, SweepMode::Equivalence] {
            let (p, f) = sample_polynomial(mode, seed, i);
            prop_assert!(eisenstein_criterion(p, &f).is_ok());
        }
    }

    #[test]
    fn berk_point_json_round_trip(idx in 0usize..4, seed in any::<u64>()) {
        let k = field(idx);
        let x = random_point(&k, &mut rng(seed));
        let s = serde_json::to_string(&x.to_json()).unwrap();
        let back = BerkPoint::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), s);
    }
}
