use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{fmt_rational, Q};
use crate::error::{Error, Result};
use crate::parse::parse_terms;

/// Laurent polynomial `Σ c_u χ^u` on a split torus of rank `n`, i.e. an
/// element of the coordinate ring `k[χ₁^{±1}, …, χ_n^{±1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<Vec<i64>, Q>,
}

impl LaurentPoly {
    pub fn new(rank: usize, terms: impl IntoIterator<Item = (Vec<i64>, Q)>) -> Self {
        let mut out = LaurentPoly {
            rank,
            terms: BTreeMap::new(),
        };
        for (u, c) in terms {
            assert_eq!(u.len(), rank, "character of the wrong rank");
            out.add_term(u, c);
        }
        out
    }

    pub fn constant(rank: usize, c: Q) -> Self {
        Self::new(rank, [(vec![0; rank], c)])
    }

    pub fn character(u: Vec<i64>) -> Self {
        Self::new(u.len(), [(u, Q::one())])
    }

    fn add_term(&mut self, u: Vec<i64>, c: Q) {
        let slot = self.terms.entry(u).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Parses terms in `chi1 … chin` (or `chi` at rank one) with signed exponents.
    pub fn parse(src: &str, rank: usize) -> Result<Self> {
        let mut out = LaurentPoly::new(rank, []);
        for t in parse_terms(src)? {
            let mut u = vec![0i64; rank];
            for (name, k) in &t.factors {
                let idx = if name == "chi" && rank == 1 {
                    0
                } else {
                    name.strip_prefix("chi")
                        .and_then(|s| s.parse::<usize>().ok())
                        .filter(|&i| (1..=rank).contains(&i))
                        .ok_or_else(|| {
                            Error::Parse(format!("unknown character {name:?} for rank {rank}"))
                        })?
                        - 1
                };
                u[idx] += k;
            }
            out.add_term(u, t.coeff);
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::new(self.rank, []);
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                let w = u.iter().zip(v).map(|(x, y)| x + y).collect();
                out.add_term(w, a * b);
            }
        }
        out
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (u, c) in &o.terms {
            out.add_term(u.clone(), c.clone());
        }
        out
    }

    /// Value at a rational point with nonzero coordinates.
    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.rank);
        self.terms
            .iter()
            .map(|(u, c)| {
                u.iter().zip(point).fold(c.clone(), |acc, (&k, g)| {
                    let gk = num_traits::pow(g.clone(), k.unsigned_abs() as usize);
                    if k >= 0 {
                        acc * gk
                    } else {
                        acc / gk
                    }
                })
            })
            .sum()
    }

    /// The antipode: `χ^u ↦ χ^{−u}`.
    pub fn antipode(&self) -> LaurentPoly {
        LaurentPoly::new(
            self.rank,
            self.terms
                .iter()
                .map(|(u, c)| (u.iter().map(|k| -k).collect(), c.clone())),
        )
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (u, c)) in self.terms.iter().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if n > 0 {
                f.write_str("+")?;
            }
            let factors: Vec<String> = u
                .iter()
                .enumerate()
                .filter(|(_, k)| **k != 0)
                .map(|(i, k)| {
                    let name = if self.rank == 1 {
                        "chi".to_string()
                    } else {
                        format!("chi{}", i + 1)
                    };
                    if *k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            let mag = c.abs();
            match (factors.is_empty(), mag.is_one()) {
                (true, _) => f.write_str(&fmt_rational(&mag))?,
                (false, true) => f.write_str(&factors.join("*"))?,
                (false, false) => write!(f, "{}*{}", fmt_rational(&mag), factors.join("*"))?,
            }
        }
        Ok(())
    }
}
