//! Randomized search over tensor decompositions of `Δ(aⁿ)` in `k[a] ⊗ k[a]`.
//!
//! The convolution of two ball norms is an infimum over all ways of writing
//! `Δf = Σ f_k ⊗ g_k`. This module perturbs the canonical binomial
//! decomposition by moves that preserve the tensor and reports any
//! decomposition whose value undercuts the canonical one.

use std::collections::BTreeMap;

use num_integer::binomial;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::arith::{p_pow, Q};
use crate::poly::QPoly;
use crate::valued_field::AbsValue;

use super::BallNorm;

/// `Σ_k f_k ⊗ g_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorDecomposition {
    terms: Vec<(QPoly, QPoly)>,
}

impl TensorDecomposition {
    pub fn new(terms: Vec<(QPoly, QPoly)>) -> Self {
        TensorDecomposition { terms }
    }

    /// `Δ(aⁿ) = Σ C(n, i) aⁱ ⊗ aⁿ⁻ⁱ`.
    pub fn canonical_coproduct(n: usize) -> Self {
        Self::new(
            (0..=n)
                .map(|i| {
                    let c = Q::from_integer(binomial(n as u64, i as u64).into());
                    (
                        QPoly::monomial(c, i),
                        QPoly::monomial(Q::from_integer(1.into()), n - i),
                    )
                })
                .collect(),
        )
    }

    pub fn terms(&self) -> &[(QPoly, QPoly)] {
        &self.terms
    }

    /// The tensor as a coefficient table on `aⁱ ⊗ aʲ`.
    pub fn expand(&self) -> BTreeMap<(usize, usize), Q> {
        let mut out: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        for (f, g) in &self.terms {
            for (i, a) in f.coeffs().iter().enumerate() {
                for (j, b) in g.coeffs().iter().enumerate() {
                    *out.entry((i, j)).or_insert_with(Q::zero) += a * b;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `max_k |f_k|_x · |g_k|_y`.
    pub fn value(&self, p: u64, x: &BallNorm, y: &BallNorm) -> AbsValue {
        self.terms
            .iter()
            .map(|(f, g)| x.eval(p, f) * y.eval(p, g))
            .max()
            .unwrap_or(AbsValue::ZERO)
    }
}

fn random_rational(p: u64, rng: &mut impl Rng) -> Q {
    let unit = loop {
        let u: i64 = rng.gen_range(-(p as i64) * 3..=(p as i64) * 3);
        if u != 0 && u % p as i64 != 0 {
            break u;
        }
    };
    Q::from_integer(unit.into()) * p_pow(p, rng.gen_range(-2..=3))
}

fn random_poly(p: u64, max_deg: usize, rng: &mut impl Rng) -> QPoly {
    let deg = rng.gen_range(0..=max_deg);
    QPoly::new(
        (0..=deg)
            .map(|_| {
                if rng.gen_bool(0.4) {
                    Q::zero()
                } else {
                    random_rational(p, rng)
                }
            })
            .collect(),
    )
}

/// Applies `moves` random tensor-preserving moves.
pub fn perturb(
    d: &TensorDecomposition,
    p: u64,
    moves: usize,
    rng: &mut impl Rng,
) -> TensorDecomposition {
    let mut terms = d.terms.clone();
    let max_deg = terms
        .iter()
        .flat_map(|(f, g)| [f.degree(), g.degree()])
        .flatten()
        .max()
        .unwrap_or(0)
        + 1;
    for _ in 0..moves {
        let k = rng.gen_range(0..terms.len());
        match rng.gen_range(0..4) {
            // f ⊗ g = (f + u) ⊗ g + (−u) ⊗ g
            0 => {
                let u = random_poly(p, max_deg, rng);
                let (f, g) = terms[k].clone();
                terms[k] = (&f + &u, g.clone());
                terms.push((-&u, g));
            }
            // f_k ⊗ g_k + f_l ⊗ g_l = (f_k + c f_l) ⊗ g_k + f_l ⊗ (g_l − c g_k)
            1 if terms.len() > 1 => {
                let l = (k + rng.gen_range(1..terms.len())) % terms.len();
                let c = random_rational(p, rng);
                let (fk, gk) = terms[k].clone();
                let (fl, gl) = terms[l].clone();
                terms[k] = (&fk + &fl.scale(&c), gk.clone());
                terms[l] = (fl, &gl - &gk.scale(&c));
            }
            // λf ⊗ g/λ
            2 => {
                let c = random_rational(p, rng);
                let (f, g) = terms[k].clone();
                terms[k] = (f.scale(&c), g.scale(&(Q::from_integer(1.into()) / c)));
            }
            // f ⊗ g₁ + f ⊗ g₂ = f ⊗ (g₁ + g₂)
            _ => {
                let f = terms[k].0.clone();
                if let Some(l) = (0..terms.len()).find(|&l| l != k && terms[l].0 == f) {
                    let (_, gl) = terms.remove(l);
                    let k = if l < k { k - 1 } else { k };
                    terms[k].1 = &terms[k].1 + &gl;
                }
            }
        }
        terms.retain(|(f, g)| !f.is_zero() && !g.is_zero());
    }
    TensorDecomposition::new(terms)
}

#[derive(Clone, Debug, Serialize)]
pub struct FalsificationReport {
    pub n: usize,
    pub trials: usize,
    pub canonical_value: AbsValue,
    /// Smallest value over the perturbed decompositions.
    pub min_found: Option<AbsValue>,
    /// Trials whose perturbed tensor differed from `Δ(aⁿ)`; must be zero.
    pub broken_identities: usize,
    pub counterexamples: usize,
}

impl FalsificationReport {
    pub fn passed(&self) -> bool {
        self.broken_identities == 0 && self.counterexamples == 0
    }
}

/// Searches for a decomposition of `Δ(aⁿ)` cheaper than the canonical one.
pub fn falsify_convolution(
    p: u64,
    n: usize,
    x: &BallNorm,
    y: &BallNorm,
    trials: usize,
    rng: &mut impl Rng,
) -> FalsificationReport {
    let canonical = TensorDecomposition::canonical_coproduct(n);
    let target = canonical.expand();
    let canonical_value = canonical.value(p, x, y);
    let mut report = FalsificationReport {
        n,
        trials,
        canonical_value,
        min_found: None,
        broken_identities: 0,
        counterexamples: 0,
    };
    for _ in 0..trials {
        let moves = rng.gen_range(1..=6);
        let d = perturb(&canonical, p, moves, rng);
        if d.expand() != target {
            report.broken_identities += 1;
            continue;
        }
        let v = d.value(p, x, y);
        report.min_found = Some(report.min_found.map_or(v, |m| m.min(v)));
        if v < canonical_value {
            report.counterexamples += 1;
        }
    }
    report
}
