//! Dense univariate polynomials over a prime field GF(q), plus the base-q
//! correspondence between integers and polynomials.
//!
//! Coefficients are stored little-endian and kept reduced; the zero
//! polynomial has an empty coefficient vector. `q` is carried by every
//! value and mixed-field arithmetic is a programming error.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

/// Inverse of `a` in GF(q). Panics when `a` is not invertible, which for
/// prime `q` means `a ≡ 0`.
pub fn field_inv(a: u64, q: u64) -> u64 {
    let a = a % q;
    assert!(a != 0, "zero has no inverse in GF({q})");
    let (mut old_r, mut r) = (a as i128, q as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        let next_r = old_r - quot * r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = old_s - quot * s;
        old_s = std::mem::replace(&mut s, next_s);
    }
    assert!(old_r == 1, "{a} is not invertible modulo {q}");
    old_s.rem_euclid(q as i128) as u64
}

fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

/// A polynomial over GF(q), coefficients little-endian and reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldPoly {
    q: u64,
    coeffs: Vec<u64>,
}

impl FieldPoly {
    pub fn new(q: u64, mut coeffs: Vec<u64>) -> Self {
        assert!(q >= 2, "field size must be at least 2");
        for c in &mut coeffs {
            *c %= q;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FieldPoly { q, coeffs }
    }

    pub fn zero(q: u64) -> Self {
        FieldPoly::new(q, Vec::new())
    }

    pub fn one(q: u64) -> Self {
        FieldPoly::new(q, vec![1])
    }

    pub fn constant(q: u64, c: u64) -> Self {
        FieldPoly::new(q, vec![c])
    }

    pub fn x(q: u64) -> Self {
        FieldPoly::new(q, vec![0, 1])
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn check_field(&self, other: &FieldPoly) {
        assert_eq!(self.q, other.q, "mixed-field arithmetic");
    }

    pub fn add(&self, other: &FieldPoly) -> FieldPoly {
        self.check_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + other.coeff(i)) % self.q)
            .collect();
        FieldPoly::new(self.q, coeffs)
    }

    pub fn sub(&self, other: &FieldPoly) -> FieldPoly {
        self.check_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + self.q - other.coeff(i)) % self.q)
            .collect();
        FieldPoly::new(self.q, coeffs)
    }

    pub fn neg(&self) -> FieldPoly {
        FieldPoly::zero(self.q).sub(self)
    }

    pub fn mul(&self, other: &FieldPoly) -> FieldPoly {
        self.check_field(other);
        if self.is_zero() || other.is_zero() {
            return FieldPoly::zero(self.q);
        }
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % self.q as u128;
            }
        }
        FieldPoly::new(self.q, acc.into_iter().map(|c| c as u64).collect())
    }

    pub fn mul_scalar(&self, c: u64) -> FieldPoly {
        let coeffs = self.coeffs.iter().map(|&a| mulmod(a, c, self.q)).collect();
        FieldPoly::new(self.q, coeffs)
    }

    pub fn shift(&self, k: usize) -> FieldPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        FieldPoly::new(self.q, coeffs)
    }

    /// Long division: `(quotient, remainder)` with
    /// `self = quotient * divisor + remainder` and
    /// `deg remainder < deg divisor`.
    pub fn divmod(&self, divisor: &FieldPoly) -> (FieldPoly, FieldPoly) {
        self.check_field(divisor);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() < divisor.coeffs.len() {
            return (FieldPoly::zero(self.q), self.clone());
        }
        let lead_inv = field_inv(divisor.leading(), self.q);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let factor = mulmod(c, lead_inv, self.q);
            quot[i - dd] = factor;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let sub = mulmod(factor, dc, self.q);
                let idx = i - dd + j;
                rem[idx] = (rem[idx] + self.q - sub) % self.q;
            }
        }
        (FieldPoly::new(self.q, quot), FieldPoly::new(self.q, rem))
    }

    pub fn rem(&self, modulus: &FieldPoly) -> FieldPoly {
        self.divmod(modulus).1
    }

    /// Exact division; panics if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &FieldPoly) -> FieldPoly {
        let (q, r) = self.divmod(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn make_monic(&self) -> FieldPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.mul_scalar(field_inv(self.leading(), self.q))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &FieldPoly) -> FieldPoly {
        self.check_field(other);
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.make_monic()
    }

    pub fn modpow(&self, mut e: u64, modulus: &FieldPoly) -> FieldPoly {
        self.check_field(modulus);
        assert!(!modulus.is_zero());
        let mut base = self.rem(modulus);
        let mut acc = FieldPoly::one(self.q).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// Inverse modulo `modulus` when `gcd(self, modulus)` is constant;
    /// modulo a constant modulus the ring is trivial and zero is returned.
    pub fn mod_inverse(&self, modulus: &FieldPoly) -> Option<FieldPoly> {
        self.check_field(modulus);
        assert!(!modulus.is_zero());
        if modulus.is_constant() {
            return Some(FieldPoly::zero(self.q));
        }
        let mut old_r = self.rem(modulus);
        let mut r = modulus.clone();
        let mut old_s = FieldPoly::one(self.q);
        let mut s = FieldPoly::zero(self.q);
        while !r.is_zero() {
            let (quot, next_r) = old_r.divmod(&r);
            old_r = std::mem::replace(&mut r, next_r);
            let next_s = old_s.sub(&quot.mul(&s));
            old_s = std::mem::replace(&mut s, next_s);
        }
        if !old_r.is_constant() || old_r.is_zero() {
            return None;
        }
        Some(old_s.mul_scalar(field_inv(old_r.leading(), self.q)).rem(modulus))
    }

    /// Evaluate at a field element.
    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (mulmod(acc, x, self.q) + c) % self.q;
        }
        acc
    }
}

impl fmt::Display for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// The base-q digits of `n`, read as a polynomial: bijection between
/// non-negative integers and GF(q) polynomials.
pub fn int_to_poly(n: &BigUint, q: u64) -> FieldPoly {
    assert!(q >= 2);
    let mut digits = Vec::new();
    let big_q = BigUint::from(q);
    let mut rest = n.clone();
    while !rest.is_zero() {
        let (quot, digit) = rest.div_rem(&big_q);
        digits.push(u64::try_from(digit).unwrap());
        rest = quot;
    }
    FieldPoly::new(q, digits)
}

/// Inverse of [`int_to_poly`].
pub fn poly_to_int(p: &FieldPoly) -> BigUint {
    let q = BigUint::from(p.q());
    let mut acc = BigUint::zero();
    for &c in p.coeffs().iter().rev() {
        acc = acc * &q + c;
    }
    acc
}
