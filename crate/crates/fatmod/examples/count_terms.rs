//! Counting the terms of a sparse polynomial without seeing it.
//!
//! The counter only evaluates f at points of its choosing, modulo moduli of
//! its choosing. It probes f(1), f(a), f(a^2), ... for one random point a
//! and feeds the results to Berlekamp-Massey; the first certified zero
//! discrepancy ends the run after 2t + 1 probes with the term count t.
//! All arithmetic happens modulo a random fat composite that is never
//! tested for primality.
//!
//! Run with: cargo run --example count_terms

use fatmod::prng::PrngState;
use fatmod::sparsity::{count_terms, count_terms_amplified, KroneckerBox, SparsePoly};
use num_bigint::{BigInt, BigUint};

fn main() -> fatmod::Result<()> {
    // f = 7 - 3x^4 + x^19 + 5x^33 - x^47, five terms, height 7.
    let f = SparsePoly::new(
        1,
        vec![
            (BigInt::from(7), vec![0]),
            (BigInt::from(-3), vec![4]),
            (BigInt::from(1), vec![19]),
            (BigInt::from(5), vec![33]),
            (BigInt::from(-1), vec![47]),
        ],
    )?;
    let bb = KroneckerBox::new(&f, 47, &BigUint::from(7u32))?;
    println!("true sparsity: {}", f.num_terms());

    let seed = PrngState::from_seed_bytes(b"count walkthrough");
    let one = count_terms(&bb, &seed)?;
    println!("\nsingle run:");
    println!("  t = {} with {} probes (2t+1 = {})", one.terms, one.probes, 2 * one.terms + 1);
    println!("  modulus bits = {}, splits = {}", one.bit_length, one.splits);
    println!("  initial modulus = {}", one.initial_modulus);
    println!("  final modulus   = {}", one.final_modulus);

    // One-sided error: t never overshoots, so the maximum over independent
    // repetitions amplifies the success probability.
    let amp = count_terms_amplified(&bb, &seed, 15)?;
    println!("\namplified over 15 repetitions:");
    println!("  t = {} with {} total probes", amp.terms, amp.probes);
    assert!(amp.terms <= 5);
    Ok(())
}
