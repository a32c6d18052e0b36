//! How common are fat integers?
//!
//! An integer is b-fat when some prime divisor is at least 2^b. Over the
//! window [2^(2b-1), 2^(2b)) the exact count always clears the proven
//! quarter-of-2^(2b) bound, which is what makes "pick a random modulus and
//! hope" a strategy rather than a gamble.
//!
//! Run with: cargo run --example density_counts

use fatmod::density::{b_fat_lower_bound, count_b_fat, count_multiples, is_b_fat};
use num_bigint::BigUint;

fn main() -> fatmod::Result<()> {
    println!("{:>3} {:>12} {:>12} {:>10}", "b", "count", "bound", "fraction");
    for b in 1..=6 {
        let count = count_b_fat(b)?;
        let bound = b_fat_lower_bound(b);
        let window = 1u64 << (2 * b - 1);
        println!(
            "{b:>3} {count:>12} {bound:>12} {:>10.4}",
            count as f64 / window as f64
        );
        assert!(count >= bound);
    }

    // The count decomposes into disjoint classes of multiples: each prime
    // p >= 2^b contributes exactly floor((2^2b - 1)/p) - floor((2^(2b-1) - 1)/p)
    // multiples, and no integer in the window has two such divisors.
    let b = 4;
    let p = BigUint::from(17u32);
    println!(
        "\nmultiples of 17 among 8-bit integers: {}",
        count_multiples(&p, b)?
    );

    let fat = BigUint::from(17u32 * 11);
    let thin = BigUint::from(2u32 * 3 * 5 * 7); // 210, all factors < 16
    println!("187 = 11 * 17 is 4-fat: {}", is_b_fat(&fat, b)?);
    println!("210 = 2 * 3 * 5 * 7 is 4-fat: {}", is_b_fat(&thin, b)?);
    Ok(())
}
