//! The modulus-splitting primitive.
//!
//! Given a residue `a` modulo a possibly composite `m`, [`new_modulus`]
//! returns a divisor `m'` of `m` such that `a` is either zero or invertible
//! modulo `m'`, using only gcds and one modular power. No factoring, no
//! primality testing. Every prime `p | m` with `p^2 > m` survives into `m'`,
//! which is what lets a run keep faith with its large hidden prime.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Replacement modulus for `m` that decides `a`.
///
/// With `g1 = gcd(a, m)`: if `g1^2 > m` the answer is `g1` itself (then
/// `a ≡ 0 (mod g1)`). Otherwise `g2 = gcd(g1^⌊log2 m⌋ mod m, m)` collects
/// the full power in `m` of every prime shared with `a`, and the answer is
/// `m / g2`, modulo which `a` is invertible. The exponent `⌊log2 m⌋` bounds
/// the multiplicity of any prime in `m`.
///
/// `m >= 1` is required; `m' = 1` is a legal (trivial-ring) outcome.
pub fn new_modulus(a: &BigUint, m: &BigUint) -> BigUint {
    assert!(!m.is_zero(), "new_modulus requires m >= 1");
    let a = a % m;
    let g1 = a.gcd(m);
    if &g1 * &g1 > *m {
        return g1;
    }
    let exponent = BigUint::from(m.bits() - 1);
    let lifted = g1.modpow(&exponent, m);
    let g2 = lifted.gcd(m);
    m / g2
}

/// Inverse of `a` modulo `m`, when `gcd(a, m) = 1`. Modulo 1 everything is
/// zero and zero is the unit, so the inverse is 0.
pub fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    assert!(!m.is_zero(), "mod_inverse requires m >= 1");
    if m.is_one() {
        return Some(BigUint::zero());
    }
    let modulus = BigInt::from(m.clone());
    let mut old_r = BigInt::from(a % m);
    let mut r = modulus.clone();
    let mut old_s = BigInt::one();
    let mut s = BigInt::zero();
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
    }
    if !old_r.is_one() {
        return None;
    }
    let mut inv = old_s % &modulus;
    if inv.is_negative() {
        inv += &modulus;
    }
    Some(inv.to_biguint().unwrap())
}
