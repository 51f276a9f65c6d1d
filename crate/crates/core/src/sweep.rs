//! Seeded property sweeps over random Eisenstein polynomials and the
//! exhaustive torus grid.
//!
//! Sample `i` of a sweep draws from its own ChaCha stream `i` under the given
//! seed, so results are independent of scheduling and of `count`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{exp, p_pow, Exp, Q};
use crate::bt_tree::{galois_fixed_report, GaloisOrbitReport};
use crate::error::Error;
use crate::hopf_norms::{envelope_check, theorem_conditions_torus, MonomialNorm, Norm};
use crate::par::{map_indexed, map_slice, Execution};
use crate::poly::QPoly;
use crate::valued_field::AbsValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepMode {
    /// `p ∤ e`: expects `r = r′` and no fixed segment.
    Tame,
    /// `e = p`: expects `r < r′` and all four conditions.
    WildPrime,
    /// Mixed degrees: expects (a)⇔(b)⇔(c) and (c)⇒(d).
    Equivalence,
}

impl FromStr for SweepMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "tame" => Ok(SweepMode::Tame),
            "wild-prime" => Ok(SweepMode::WildPrime),
            "equivalence" => Ok(SweepMode::Equivalence),
            _ => Err(Error::Parse(format!("unknown sweep mode {s:?}"))),
        }
    }
}

impl fmt::Display for SweepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepMode::Tame => "tame",
            SweepMode::WildPrime => "wild-prime",
            SweepMode::Equivalence => "equivalence",
        })
    }
}

/// Unit in `{±1, …, ±(2p−1)}` prime to `p`.
fn random_unit(p: u64, rng: &mut impl Rng) -> i64 {
    let bound = 2 * p as i64 - 1;
    loop {
        let u = rng.gen_range(-bound..=bound);
        if u != 0 && u % p as i64 != 0 {
            return u;
        }
    }
}

/// Monic Eisenstein polynomial of degree `e`: `a₀ = u·p` and each middle
/// coefficient zero or `c·p^k` with `1 ≤ k ≤ 3`.
pub fn random_eisenstein(p: u64, e: usize, rng: &mut impl Rng) -> QPoly {
    let mut coeffs = vec![Q::zero(); e + 1];
    coeffs[e] = Q::from_integer(1.into());
    coeffs[0] = Q::from_integer((random_unit(p, rng) * p as i64).into());
    for c in coeffs.iter_mut().take(e).skip(1) {
        if rng.gen_bool(0.6) {
            let m = rng.gen_range(-(p as i64)..=p as i64);
            *c = Q::from_integer(m.into()) * p_pow(p, rng.gen_range(1..=3));
        }
    }
    QPoly::new(coeffs)
}

fn draw_prime_and_degree(mode: SweepMode, rng: &mut impl Rng) -> (u64, usize) {
    match mode {
        SweepMode::Tame => {
            let p = *[2u64, 3, 5, 7].choose(rng).expect("nonempty");
            let degrees: Vec<usize> = (2..=6).filter(|e| !(*e as u64).is_multiple_of(p)).collect();
            (p, *degrees.choose(rng).expect("nonempty"))
        }
        SweepMode::WildPrime => {
            let p = *[2u64, 3, 5].choose(rng).expect("nonempty");
            (p, p as usize)
        }
        SweepMode::Equivalence => {
            let p = *[2u64, 3, 5, 7].choose(rng).expect("nonempty");
            (p, rng.gen_range(2..=6))
        }
    }
}

/// The polynomial of sample `index`.
pub fn sample_polynomial(mode: SweepMode, seed: u64, index: usize) -> (u64, QPoly) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let (p, e) = draw_prime_and_degree(mode, &mut rng);
    (p, random_eisenstein(p, e, &mut rng))
}

/// Properties every report must satisfy regardless of mode.
fn structural_failures(r: &GaloisOrbitReport) -> Vec<String> {
    let mut out = Vec::new();
    if r.fixed_segment.is_some() != r.cond_paths_outside {
        out.push("fixed segment present iff (a) violated".into());
    }
    if !r.abc_agree() {
        out.push(format!(
            "(a,b,c) disagree: ({}, {}, {})",
            r.cond_paths_outside, r.cond_open_ball, r.cond_q_roots
        ));
    }
    if r.e > 1 && r.cond_q_roots && !r.cond_e_vanishes {
        out.push("(c) holds but p does not divide e".into());
    }
    out
}

fn mode_failures(mode: SweepMode, r: &GaloisOrbitReport) -> Vec<String> {
    let mut out = structural_failures(r);
    match mode {
        SweepMode::Tame => {
            if r.r != r.r_prime {
                out.push("tame sample with r != r'".into());
            }
            if r.fixed_segment.is_some() {
                out.push("tame sample with a fixed segment".into());
            }
        }
        SweepMode::WildPrime => {
            if r.r >= r.r_prime || r.fixed_segment.is_none() {
                out.push("e = p sample without r < r'".into());
            }
            if !(r.cond_paths_outside && r.cond_open_ball && r.cond_q_roots && r.cond_e_vanishes) {
                out.push("e = p sample with a false condition".into());
            }
        }
        SweepMode::Equivalence => {}
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleResult {
    pub index: usize,
    pub p: u64,
    pub poly: String,
    pub e: usize,
    pub passed: bool,
    pub failures: Vec<String>,
    /// `p | e` without (c); logged, never a failure.
    pub d_divergent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub mode: SweepMode,
    pub count: usize,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<SampleResult>,
    pub d_divergences: Vec<SampleResult>,
}

impl SweepSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

pub fn run_sample(mode: SweepMode, seed: u64, index: usize) -> SampleResult {
    let (p, poly) = sample_polynomial(mode, seed, index);
    let e = poly.degree().unwrap_or(0);
    let (failures, d_divergent) = match galois_fixed_report(p, &poly) {
        Ok(r) => (mode_failures(mode, &r), r.d_diverges()),
        Err(err) => (vec![format!("report failed: {err}")], false),
    };
    SampleResult {
        index,
        p,
        poly: poly.to_string(),
        e,
        passed: failures.is_empty(),
        failures,
        d_divergent,
    }
}

pub fn run_sweep(mode: SweepMode, count: usize, seed: u64, exec: Execution) -> SweepSummary {
    let results = map_indexed(count, exec, |i| run_sample(mode, seed, i));
    let passed = results.iter().filter(|r| r.passed).count();
    SweepSummary {
        mode,
        count,
        seed,
        passed,
        failed: count - passed,
        failures: results.iter().filter(|r| !r.passed).cloned().collect(),
        d_divergences: results.into_iter().filter(|r| r.d_divergent).collect(),
    }
}

/// Weight exponents of the torus grid.
pub fn torus_grid_exponents() -> Vec<Exp> {
    [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)]
        .iter()
        .map(|&(n, d)| exp(n, d))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridPoint {
    pub weights_exp: Vec<AbsValue>,
    pub envelope_ok: bool,
    pub theorem_ok: bool,
}

/// All monomial norms of the given rank with weights on the grid.
pub fn torus_grid_sweep(rank: usize, exec: Execution) -> Vec<GridPoint> {
    let grid = torus_grid_exponents();
    let mut points: Vec<Vec<Exp>> = vec![vec![]];
    for _ in 0..rank {
        points = points
            .into_iter()
            .flat_map(|pt| {
                grid.iter().map(move |q| {
                    let mut next = pt.clone();
                    next.push(*q);
                    next
                })
            })
            .collect();
    }
    map_slice(&points, exec, |w| {
        let x = MonomialNorm::from_exps(w).expect("finite weights");
        let env = envelope_check(&Norm::Torus(x.clone()));
        GridPoint {
            weights_exp: x.weights().to_vec(),
            envelope_ok: env.is_subgroup() && env.bounded_ok,
            theorem_ok: theorem_conditions_torus(&x).all_hold(),
        }
    })
}
