//! Term counting over GF(q): polynomial moduli instead of integers.
//!
//! Over a small field the probes need an extension field, classically built
//! from an irreducible polynomial. Here the modulus is just a random monic
//! polynomial of degree 2s: with probability at least 1/4 it has an
//! irreducible factor of degree above s, the splitting rule preserves that
//! factor, and the run behaves as if the extension had been constructed
//! honestly. No irreducibility test ever runs.
//!
//! Run with: cargo run --example term_count_gf

use fatmod::prng::PrngState;
use fatmod::sparsity::{
    count_terms_gf, count_terms_gf_amplified, count_terms_gf_mod_irreducible,
    ext_degree_bound, SparsePoly,
};
use fatmod::polyfield::random_irreducible;
use num_bigint::BigInt;

fn main() -> fatmod::Result<()> {
    // f = 1 + 2x^5 + x^9 + 3x^12 over GF(3): the x^12 coefficient is 0 mod 3,
    // so only three terms survive reduction into the field.
    let f = SparsePoly::new(
        1,
        vec![
            (BigInt::from(1), vec![0]),
            (BigInt::from(2), vec![5]),
            (BigInt::from(1), vec![9]),
            (BigInt::from(3), vec![12]),
        ],
    )?;
    let q = 3;
    let s = ext_degree_bound(q, 13)?;
    println!("integer terms: {}, surviving mod {q}: 3", f.num_terms());
    println!("extension parameter s = {s} (modulus degree {})", 2 * s);

    let seed = PrngState::from_seed_bytes(b"gf walkthrough");
    let run = count_terms_gf(&f, q, None, &seed)?;
    println!("\ncomposite-analog run:");
    println!("  t = {} with {} probes, {} splits", run.terms, run.probes, run.splits);
    println!("  final modulus = {}", run.final_modulus);

    // Reference backend: a genuine irreducible of degree s + 1, found by
    // rejection sampling. This is the baseline the random modulus replaces.
    let mut gen = PrngState::from_seed_bytes(b"irreducible baseline");
    let p = random_irreducible(q, run.ext_degree + 1, &mut gen)?;
    let reference = count_terms_gf_mod_irreducible(&f, &p, None, &seed)?;
    println!("\nirreducible reference mod {p}:");
    println!("  t = {} with {} probes", reference.terms, reference.probes);

    let amp = count_terms_gf_amplified(&f, q, None, &seed, 9)?;
    println!("\namplified over 9 repetitions: t = {}", amp.terms);
    assert!(amp.terms <= 3);
    Ok(())
}
