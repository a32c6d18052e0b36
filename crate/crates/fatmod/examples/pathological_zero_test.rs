//! Why the naive "just reduce mod m" shortcut fails, and the fix.
//!
//! Modulo a composite, a nonzero residue can still be a zero divisor, so
//! zero tests lie: mod 30, the value 6 is neither zero nor invertible.
//! The splitting rule resolves each such case by shrinking the modulus
//! until the answer is honest. This example enumerates every residue mod
//! 30 and shows what each zero test decides and what survives of m.
//!
//! Run with: cargo run --example pathological_zero_test

use fatmod::dyncore::{mod_inverse, new_modulus};
use num_bigint::BigUint;
use num_traits::Zero;

fn main() {
    let m = BigUint::from(30u32);
    let mut zeros = 0;
    let mut collapsed = 0;
    println!("{:>3} {:>6} {:>6} {:>10}", "a", "m'", "zero?", "inverse");
    for a in 0u32..30 {
        let a = BigUint::from(a);
        let mp = new_modulus(&a, &m);
        let r = &a % &mp;
        let zero = r.is_zero();
        if zero {
            zeros += 1;
        }
        if mp != m {
            collapsed += 1;
        }
        let inv = if zero {
            "-".to_string()
        } else {
            mod_inverse(&r, &mp).expect("decided values invert").to_string()
        };
        println!("{a:>3} {mp:>6} {zero:>6} {inv:>10}");
    }
    println!("\n{zeros} of 30 residues decide to zero, {collapsed} splits");

    // Every decision satisfies the contract: m' divides m, and a is zero
    // or invertible mod m'. The fat factor story: any prime p | m with
    // p^2 > m survives. For m = 30 no prime qualifies (5^2 < 30), which is
    // exactly why real moduli are drawn fat.
    let fat_m = BigUint::from(4u32 * 101);
    let mp = new_modulus(&BigUint::from(202u32), &fat_m);
    println!(
        "m = 404 = 4 * 101 with 101^2 > 404: new_modulus(202, 404) = {mp} keeps 101"
    );
    assert_eq!(&mp % BigUint::from(101u32), BigUint::zero());
}
