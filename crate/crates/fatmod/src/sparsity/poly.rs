//! Sparse multivariate polynomials, their text format, and the Kronecker
//! black box handed to the term counter.

use std::fmt;
use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A sparse polynomial with integer coefficients: `terms` holds
/// `(coefficient, exponent vector)` pairs, canonicalized (exponent vectors
/// strictly increasing lexicographically, no zero coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    nvars: usize,
    terms: Vec<(BigInt, Vec<u64>)>,
}

impl SparsePoly {
    pub fn new(nvars: usize, raw_terms: Vec<(BigInt, Vec<u64>)>) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::invalid("a polynomial needs at least one variable"));
        }
        for (_, exps) in &raw_terms {
            if exps.len() != nvars {
                return Err(Error::invalid(format!(
                    "term has {} exponents, expected {nvars}",
                    exps.len()
                )));
            }
        }
        let mut poly = SparsePoly {
            nvars,
            terms: raw_terms,
        };
        poly.canonicalize();
        Ok(poly)
    }

    fn canonicalize(&mut self) {
        self.terms.sort_by(|a, b| a.1.cmp(&b.1));
        let mut merged: Vec<(BigInt, Vec<u64>)> = Vec::with_capacity(self.terms.len());
        for (c, e) in self.terms.drain(..) {
            match merged.last_mut() {
                Some((mc, me)) if *me == e => *mc += c,
                _ => merged.push((c, e)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        self.terms = merged;
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(BigInt, Vec<u64>)] {
        &self.terms
    }

    /// Number of terms with nonzero coefficients; the quantity the whole
    /// pipeline estimates without ever seeing the terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest coefficient magnitude (1 for the zero polynomial).
    pub fn height(&self) -> BigUint {
        self.terms
            .iter()
            .map(|(c, _)| c.magnitude().clone())
            .max()
            .unwrap_or_else(BigUint::one)
    }

    /// Largest exponent appearing in variable `i`.
    pub fn max_degree(&self) -> u64 {
        self.terms
            .iter()
            .flat_map(|(_, e)| e.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Evaluate at a point, all arithmetic modulo `m`.
    pub fn eval_multi(&self, m: &BigUint, point: &[BigUint]) -> Result<BigUint> {
        if point.len() != self.nvars {
            return Err(Error::invalid(format!(
                "expected {} coordinates, got {}",
                self.nvars,
                point.len()
            )));
        }
        if m.is_zero() {
            return Err(Error::invalid("modulus must be positive"));
        }
        let mut acc = BigUint::zero();
        for (c, exps) in &self.terms {
            let mut term = coeff_mod(c, m);
            for (x, &e) in point.iter().zip(exps) {
                term = term * x.modpow(&BigUint::from(e), m) % m;
            }
            acc = (acc + term) % m;
        }
        Ok(acc)
    }

    /// Parse the plain text format:
    ///
    /// ```text
    /// # comment
    /// nvars 2
    /// 3 1 0
    /// -7 0 5
    /// ```
    ///
    /// First payload line declares the variable count; each following line is
    /// a coefficient and one exponent per variable. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut nvars: Option<usize> = None;
        let mut terms: Vec<(BigInt, Vec<u64>)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = idx + 1;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match nvars {
                None => {
                    if tokens.len() != 2 || tokens[0] != "nvars" {
                        return Err(Error::PolyFile {
                            line: lineno,
                            msg: "expected header `nvars K`".into(),
                        });
                    }
                    let k: usize = tokens[1].parse().map_err(|_| Error::PolyFile {
                        line: lineno,
                        msg: format!("bad variable count {:?}", tokens[1]),
                    })?;
                    if k == 0 {
                        return Err(Error::PolyFile {
                            line: lineno,
                            msg: "variable count must be at least 1".into(),
                        });
                    }
                    nvars = Some(k);
                }
                Some(k) => {
                    if tokens.len() != k + 1 {
                        return Err(Error::PolyFile {
                            line: lineno,
                            msg: format!(
                                "expected coefficient and {k} exponents, got {} tokens",
                                tokens.len()
                            ),
                        });
                    }
                    let coeff: BigInt = tokens[0].parse().map_err(|_| Error::PolyFile {
                        line: lineno,
                        msg: format!("bad coefficient {:?}", tokens[0]),
                    })?;
                    let mut exps = Vec::with_capacity(k);
                    for t in &tokens[1..] {
                        let e: u64 = t.parse().map_err(|_| Error::PolyFile {
                            line: lineno,
                            msg: format!("bad exponent {t:?}"),
                        })?;
                        exps.push(e);
                    }
                    terms.push((coeff, exps));
                }
            }
        }
        let nvars = nvars.ok_or(Error::PolyFile {
            line: 0,
            msg: "missing `nvars K` header".into(),
        })?;
        SparsePoly::new(nvars, terms)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        SparsePoly::parse(&std::fs::read_to_string(path)?)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, exps)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, &e) in exps.iter().enumerate() {
                if e > 0 {
                    write!(f, "*x{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

fn coeff_mod(c: &BigInt, m: &BigUint) -> BigUint {
    let m_int = BigInt::from(m.clone());
    c.mod_floor(&m_int).to_biguint().unwrap()
}

/// The interface the term counter probes: evaluation of a univariate image
/// of the polynomial, modulo a caller-chosen modulus.
///
/// Implementations must be *reduction consistent*: for any `m' | m` and any
/// point `x`, `eval(m', x mod m') = eval(m, x) mod m'`. Every honest
/// arithmetic circuit has this property, and the replay guarantees rely on
/// it.
pub trait ModularBlackBox: Sync {
    /// Strict bound on exponents of the univariate image: all exponents are
    /// `< degree_bound()`.
    fn degree_bound(&self) -> u64;

    /// Bound on coefficient magnitudes, at least 2.
    fn height_bound(&self) -> BigUint;

    /// Evaluate the univariate image at `point` modulo `modulus`.
    fn eval(&self, modulus: &BigUint, point: &BigUint) -> BigUint;
}

/// Kronecker substitution of a [`SparsePoly`]: variable `i` maps to
/// `y^(D+1)^i` where `D` is the per-variable degree bound, folding the
/// polynomial to a univariate image with the same number of terms.
pub struct KroneckerBox<'a> {
    poly: &'a SparsePoly,
    exponents: Vec<(BigInt, u64)>,
    degree_bound: u64,
    height_bound: BigUint,
}

impl<'a> KroneckerBox<'a> {
    /// `per_var_bound` is the inclusive degree bound `D` for every variable;
    /// `height_bound` must dominate the coefficient magnitudes.
    pub fn new(poly: &'a SparsePoly, per_var_bound: u64, height_bound: &BigUint) -> Result<Self> {
        if poly.max_degree() > per_var_bound {
            return Err(Error::BoundViolation(format!(
                "polynomial has degree {} in some variable, bound is {per_var_bound}",
                poly.max_degree()
            )));
        }
        if *height_bound < poly.height() {
            return Err(Error::BoundViolation(format!(
                "polynomial height {} exceeds stated bound {height_bound}",
                poly.height()
            )));
        }
        let base = per_var_bound
            .checked_add(1)
            .ok_or_else(|| Error::infeasible("degree bound overflows"))?;
        let degree_bound = base
            .checked_pow(u32::try_from(poly.nvars()).map_err(|_| {
                Error::infeasible("too many variables for Kronecker substitution")
            })?)
            .ok_or_else(|| {
                Error::infeasible("Kronecker degree bound exceeds the 64-bit range")
            })?;
        let mut exponents = Vec::with_capacity(poly.num_terms());
        for (c, exps) in poly.terms() {
            let mut folded: u64 = 0;
            let mut weight: u64 = 1;
            for (i, &e) in exps.iter().enumerate() {
                folded += e * weight;
                if i + 1 < exps.len() {
                    weight *= base;
                }
            }
            exponents.push((c.clone(), folded));
        }
        Ok(KroneckerBox {
            poly,
            exponents,
            degree_bound,
            height_bound: height_bound.clone().max(BigUint::from(2u32)),
        })
    }

    pub fn poly(&self) -> &SparsePoly {
        self.poly
    }

    /// The folded exponent of each term; pairwise distinct by construction.
    pub fn folded_exponents(&self) -> impl Iterator<Item = u64> + '_ {
        self.exponents.iter().map(|(_, e)| *e)
    }
}

impl ModularBlackBox for KroneckerBox<'_> {
    fn degree_bound(&self) -> u64 {
        self.degree_bound
    }

    fn height_bound(&self) -> BigUint {
        self.height_bound.clone()
    }

    fn eval(&self, modulus: &BigUint, point: &BigUint) -> BigUint {
        let mut acc = BigUint::zero();
        for (c, e) in &self.exponents {
            let term = coeff_mod(c, modulus) * point.modpow(&BigUint::from(*e), modulus);
            acc = (acc + term) % modulus;
        }
        acc
    }
}
