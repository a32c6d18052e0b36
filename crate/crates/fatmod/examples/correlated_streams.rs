//! Correlated randomness across backends.
//!
//! The generator state splits in two: s0 fixes the initial modulus and s1
//! drives every draw. A prime backend seeded identically draws values that
//! are congruent, draw by draw, to the composite backend's values modulo
//! any shared prime factor. That congruence is what lets a composite run
//! be replayed later as a genuine prime-field run.
//!
//! Run with: cargo run --example correlated_streams

use fatmod::density::factor;
use fatmod::dyncore::DynContext;
use fatmod::prng::PrngState;

fn main() -> fatmod::Result<()> {
    let seed = PrngState::from_seed_bytes(b"correlated streams");
    let probe = DynContext::new_composite(10, &seed);
    let m = probe.initial_modulus().clone();
    let factors = factor(&m)?;
    let p = factors.largest_prime().expect("m > 1").clone();
    println!("initial modulus m = {m}");
    println!("largest prime factor p = {p}\n");

    let mut composite = DynContext::new_composite(10, &seed);
    let mut prime = DynContext::new_prime(&p, 10, &seed);
    println!(
        "{:>4} {:>14} {:>14} {:>10}",
        "draw", "mod m", "mod p", "congruent"
    );
    for i in 0..8 {
        let a = composite.rand();
        let b = prime.rand();
        let ra = a.residue() % &p;
        let rb = b.residue() % &p;
        println!(
            "{i:>4} {:>14} {:>14} {:>10}",
            a.residue(),
            b.residue(),
            ra == rb
        );
        assert_eq!(ra, rb);
    }
    assert_eq!(composite.draws(), prime.draws());
    println!("\nboth backends consumed {} stream steps", composite.draws());
    Ok(())
}
