//! The modulus-splitting rule, step by step.
//!
//! Working modulo a composite m, a zero test on a value a that shares
//! factors with m cannot be answered as-is. new_modulus(a, m) returns a
//! divisor of m under which a is either zero or invertible, and it always
//! keeps any prime factor p of m with p^2 > m: the fat factor survives
//! every split.
//!
//! Run with: cargo run --example modulus_splitting

use fatmod::dyncore::{new_modulus, DynContext};
use fatmod::prng::PrngState;
use num_bigint::BigUint;

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn main() {
    // gcd(2, 24) = 2, too small to dominate; lifting 2^4 mod 24 = 16,
    // gcd(16, 24) = 8 absorbs the full 2-power and 24/8 = 3 remains.
    println!("new_modulus(2, 24) = {}", new_modulus(&big(2), &big(24)));

    // 303 = 3 * 101: the value 3 shares the small factor, 101 survives.
    println!("new_modulus(3, 303) = {}", new_modulus(&big(3), &big(303)));

    // Total collapse is legal: modulo 4, deciding 2 leaves the trivial
    // ring, where everything is zero and inversion returns zero.
    println!("new_modulus(2, 4) = {}", new_modulus(&big(2), &big(4)));

    // Inside a context the rule fires automatically on zero tests and
    // inversions. Force a few splits and show the log.
    let seed = PrngState::from_seed_bytes(b"splitting walkthrough");
    let mut ctx = DynContext::new_composite(8, &seed);
    println!("\ninitial modulus: {}", ctx.initial_modulus());
    for k in 2..12u64 {
        let x = ctx.rand();
        let k = ctx.constant(&big(k));
        let prod = ctx.mul(&x, &k);
        let _ = ctx.is_zero(&prod);
    }
    for event in ctx.split_log() {
        println!(
            "step {:>3}: {} -> {}",
            event.step, event.old_modulus, event.new_modulus
        );
    }
    println!("final modulus: {} ({} splits)", ctx.modulus(), ctx.splits());
}
