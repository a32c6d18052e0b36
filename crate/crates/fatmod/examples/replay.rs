//! Run-equivalence: a composite run is a prime run in disguise.
//!
//! A hosted program executes modulo a random composite, splitting the
//! modulus as needed. Afterwards (and only afterwards, as a verification
//! step outside the pipeline) the final modulus is factored, and the same
//! program is re-run modulo each prime factor. Output, draw count, and the
//! entire operation trace agree modulo that prime, step for step.
//!
//! Run with: cargo run --example replay

use fatmod::dyncore::{corpus, replay_check};
use fatmod::prng::PrngState;

fn main() -> fatmod::Result<()> {
    let seed = PrngState::from_seed_bytes(b"replay walkthrough");
    for program in corpus() {
        let report = replay_check(program.as_ref(), 12, &seed)?;
        let c = &report.composite;
        println!("program: {}", program.name());
        println!("  output:        {:?}", c.output);
        println!("  initial m:     {}", c.initial_modulus);
        println!("  final m:       {} ({} splits)", c.final_modulus, c.splits);
        println!("  trace length:  {} ({} draws)", c.trace.len(), c.draws);
        for p in &report.primes {
            println!("  replayed mod {p}: identical");
        }
        assert!(report.ok(), "{:?}", report.mismatches);
        println!();
    }
    Ok(())
}
