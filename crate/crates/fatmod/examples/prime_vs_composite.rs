//! Does skipping the primality test actually cost anything?
//!
//! Side by side over many seeds: term counting modulo a freshly generated
//! random prime (the classical baseline, paying Miller-Rabin on every
//! candidate) versus modulo a random untested composite. The instrumented
//! counters show where primality tests happen; the agreement column shows
//! the answers match anyway for most seeds.
//!
//! Run with: cargo run --example prime_vs_composite

use fatmod::density::random_prime;
use fatmod::instrument::CounterSnapshot;
use fatmod::prng::PrngState;
use fatmod::sparsity::{
    bit_length_bound, count_terms_mod_prime, count_terms_with_b, KroneckerBox, SparsePoly,
};
use num_bigint::{BigInt, BigUint};

fn main() -> fatmod::Result<()> {
    // Mind the coefficient sum: the first probe is f(1), and a sum of
    // exactly zero would degenerate every run. Here f(1) = 2.
    let f = SparsePoly::new(
        1,
        vec![
            (BigInt::from(2), vec![0]),
            (BigInt::from(1), vec![7]),
            (BigInt::from(-4), vec![13]),
            (BigInt::from(3), vec![21]),
        ],
    )?;
    let bb = KroneckerBox::new(&f, 21, &BigUint::from(4u32))?;
    let b = bit_length_bound(22, &BigUint::from(4u32))?;
    println!("bit parameter b = {b}, true sparsity 4\n");
    println!("{:>4} {:>9} {:>12} {:>7}", "seed", "composite", "prime", "agree");

    let mut agree = 0;
    let trials = 20u64;
    let before = CounterSnapshot::take();
    let mut prime_tests_for_baseline = 0;
    for i in 0..trials {
        let seed = PrngState::from_seed_bytes(&i.to_be_bytes());

        let snap = CounterSnapshot::take();
        let composite = count_terms_with_b(&bb, b, &seed)?;
        assert!(snap.clean(), "composite counting must not test primality");

        let mut gen = seed.child(9999);
        let p = random_prime(2 * b, &mut gen);
        prime_tests_for_baseline += snap.delta().primality_tests;
        let prime = count_terms_mod_prime(&bb, &p, b, &seed)?;

        if composite.terms == prime.terms {
            agree += 1;
        }
        println!(
            "{i:>4} {:>9} {:>12} {:>7}",
            composite.terms,
            prime.terms,
            composite.terms == prime.terms
        );
    }
    let d = before.delta();
    println!("\nagreement: {agree}/{trials}");
    println!(
        "primality tests: {} total, {prime_tests_for_baseline} of them generating \
         baseline primes, 0 in the composite pipeline",
        d.primality_tests
    );
    Ok(())
}
