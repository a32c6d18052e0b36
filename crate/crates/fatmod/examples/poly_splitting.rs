//! Dynamic evaluation in GF(q)[x]: degrees instead of bits.
//!
//! Everything the integer machinery does has a polynomial twin. The
//! modulus is a random monic polynomial of degree 2d, "fat" means an
//! irreducible factor of degree above d, and the splitting rule keeps it.
//! Replay factors the final modulus (an oracle-side brute-force step) and
//! re-runs the program modulo each irreducible factor.
//!
//! Run with: cargo run --example poly_splitting

use fatmod::polyfield::{
    count_d_fat, d_fat_lower_bound, new_modulus_poly, poly_replay_check, FieldPoly,
    PolyContext, PolyOutput,
};
use fatmod::prng::PrngState;

fn main() -> fatmod::Result<()> {
    // Density first: monic degree-2d polynomials over GF(q) with a factor
    // of degree > d always fill at least a quarter of the space.
    println!("{:>3} {:>3} {:>8} {:>8}", "q", "d", "count", "bound");
    for (q, d) in [(2u64, 2u32), (2, 3), (3, 2), (5, 2)] {
        println!(
            "{q:>3} {d:>3} {:>8} {:>8}",
            count_d_fat(q, d)?,
            d_fat_lower_bound(q, d)
        );
    }

    // The frozen textbook split: a = x against m = x^4 + x^2 + x over
    // GF(2). gcd(a, m) = x is small, the lift absorbs it, x^3 + x + 1
    // survives; it is irreducible of degree 3 > deg(m)/2.
    let a = FieldPoly::x(2);
    let m = FieldPoly::new(2, vec![0, 1, 1, 0, 1]);
    println!("\nnew_modulus_poly(x, {m}) = {}", new_modulus_poly(&a, &m));

    // A full context run with replay, over GF(3) with degree parameter 3.
    let program = |ctx: &mut PolyContext| {
        let x = ctx.rand();
        let y = ctx.rand();
        let sum = ctx.add(&x, &y);
        if ctx.is_zero(&sum) {
            return Ok(PolyOutput::Integer(-1));
        }
        let inv = ctx.inverse(&sum)?;
        let check = ctx.mul(&sum, &inv);
        Ok(PolyOutput::Algebraic(check))
    };
    let seed = PrngState::from_seed_bytes(b"poly walkthrough");
    let report = poly_replay_check(&program, 3, 3, &seed)?;
    let c = &report.composite;
    println!("\ninitial modulus: {}", c.initial_modulus);
    println!("final modulus:   {} ({} splits)", c.final_modulus, c.splits);
    println!("output:          {:?}", c.output);
    for f in &report.factors {
        println!("replayed mod {f}: identical");
    }
    assert!(report.ok(), "{:?}", report.mismatches);
    Ok(())
}
