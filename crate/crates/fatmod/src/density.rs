//! Counting facts about *fat* integers, and the random-prime baseline.
//!
//! An integer is `b`-fat when it has a prime divisor of at least `b` bits
//! (`p >= 2^b`). Two counting facts carry the whole probabilistic analysis of
//! this crate: at least a quarter of the `2b`-bit range is `b`-fat, and any
//! single prime `p >= 2^b` divides at most `2^(b-1)` integers of that range.
//! Both are verified here by exact enumeration at desk scale.
//!
//! The factoring and primality routines in this module exist for test oracles,
//! replay verification, and the prime-generation baseline. Nothing in the
//! composite evaluation pipeline calls them; every Miller–Rabin invocation
//! bumps [`crate::instrument::primality_tests`] to prove it.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::instrument;
use crate::prng::PrngState;

/// Largest `b` accepted by [`count_b_fat`]; the window `[2^(2b-1), 2^(2b))`
/// must fit in memory for the residual sieve.
pub const MAX_COUNT_B: u32 = 12;

/// A fully factored integer: `(prime, multiplicity)` pairs, primes increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorList {
    pub factors: Vec<(BigUint, u32)>,
}

impl FactorList {
    /// Product of all `p^multiplicity`, i.e. the factored integer.
    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    /// The distinct prime divisors, in increasing order.
    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Largest prime divisor, if any.
    pub fn largest_prime(&self) -> Option<&BigUint> {
        self.factors.last().map(|(p, _)| p)
    }
}

/// Simple sieve of Eratosthenes.
pub fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, a, m);
        }
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for `u64`, exact for the full range.
///
/// Instrumented like the randomized variant: this still counts as running a
/// primality test.
pub fn is_prime_u64(n: u64) -> bool {
    instrument::record_primality_test();
    is_prime_u64_quiet(n)
}

/// The uninstrumented body, shared so that one factoring call can account for
/// its primality tests itself. Also used to validate user-supplied field
/// sizes, which is input checking rather than a pipeline primality test.
pub(crate) fn is_prime_u64_quiet(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    // These twelve bases decide primality exactly for all n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho_u64(n: u64, salt: u64) -> u64 {
    // Brent's cycle variant; n must be odd, composite, and not a prime power
    // hazard for the caller to re-try with a different salt.
    let mut x = (salt * 2 + 3) % n;
    let c = salt.wrapping_mul(0x9e37_79b9) % n + 1;
    let mut y = x;
    let mut d = 1u64;
    let step = |v: u64| (mulmod_u64(v, v, n) + c) % n;
    while d == 1 {
        x = step(x);
        y = step(step(y));
        d = x.abs_diff(y).gcd(&n);
        if x == y {
            return n; // cycle without factor; caller retries
        }
    }
    d
}

fn factor_u64_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64_quiet(n) {
        instrument::record_primality_test();
        out.push(n);
        return;
    }
    instrument::record_primality_test();
    for salt in 1.. {
        let d = pollard_rho_u64(n, salt);
        if d != n && d != 1 {
            factor_u64_into(d, out);
            factor_u64_into(n / d, out);
            return;
        }
    }
}

/// Factor a `u64` completely. Trial division below 2^11, then Pollard rho.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let mut rest = n;
    let mut primes = Vec::new();
    for p in 2..1u64 << 11 {
        if p * p > rest {
            break;
        }
        while rest.is_multiple_of(p) {
            primes.push(p);
            rest /= p;
        }
    }
    if rest > 1 {
        factor_u64_into(rest, &mut primes);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Factor an arbitrary positive integer at desk scale.
///
/// Inputs beyond 64 bits are accepted but expected to be smooth enough for
/// trial division plus a big-integer rho to finish; callers guarantee
/// feasibility. Never wrong, possibly slow.
pub fn factor(n: &BigUint) -> Result<FactorList> {
    if n.is_zero() {
        return Err(Error::invalid("cannot factor zero"));
    }
    if let Some(small) = n.to_u64() {
        let factors = factor_u64(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect();
        return Ok(FactorList { factors });
    }
    // Big path: strip small primes, then rho on the remainder.
    let mut rest = n.clone();
    let mut primes: Vec<BigUint> = Vec::new();
    for p in small_primes(1 << 16) {
        let p = BigUint::from(p);
        while (&rest % &p).is_zero() {
            primes.push(p.clone());
            rest /= &p;
        }
        if rest.is_one() {
            break;
        }
    }
    if !rest.is_one() {
        factor_big_into(&rest, &mut primes);
    }
    primes.sort();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(FactorList { factors })
}

fn factor_big_into(n: &BigUint, out: &mut Vec<BigUint>) {
    if let Some(small) = n.to_u64() {
        let mut v = Vec::new();
        factor_u64_into(small, &mut v);
        out.extend(v.into_iter().map(BigUint::from));
        return;
    }
    let mut probe = PrngState::from_seed_bytes(&n.to_bytes_be());
    if miller_rabin(n, 40, &mut probe) {
        out.push(n.clone());
        return;
    }
    let one = BigUint::one();
    for salt in 1u64.. {
        let c = BigUint::from(salt);
        let mut x = BigUint::from(2u32 + salt as u32 % 7);
        let mut y = x.clone();
        let step = |v: &BigUint| (v * v + &c) % n;
        loop {
            x = step(&x);
            y = step(&step(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break; // cycle; retry with new salt
            }
            let d = diff.gcd(n);
            if d > one && &d < n {
                factor_big_into(&d, out);
                factor_big_into(&(n / &d), out);
                return;
            }
        }
    }
}

/// Does `n` have a prime divisor of at least `b` bits?
pub fn is_b_fat(n: &BigUint, b: u32) -> Result<bool> {
    if n.is_zero() {
        return Err(Error::invalid("is_b_fat requires n >= 1"));
    }
    if b == 0 {
        return Err(Error::invalid("is_b_fat requires b >= 1"));
    }
    let threshold = BigUint::one() << b;
    Ok(factor(n)?.primes().any(|p| *p >= threshold))
}

/// Exact number of `2b`-bit integers (the range `[2^(2b-1), 2^(2b))`) that
/// are `b`-fat.
///
/// Sieve: divide every prime below `2^b` fully out of each window entry; a
/// residual above 1 is a product of primes `>= 2^b`, so the entry is fat.
pub fn count_b_fat(b: u32) -> Result<u64> {
    if !(1..=MAX_COUNT_B).contains(&b) {
        return Err(Error::infeasible(format!(
            "count_b_fat handles 1 <= b <= {MAX_COUNT_B}, got {b}"
        )));
    }
    let lo = 1u64 << (2 * b - 1);
    let hi = 1u64 << (2 * b);
    let mut residual: Vec<u64> = (lo..hi).collect();
    for p in small_primes((1u64 << b) - 1) {
        let mut q = lo.div_ceil(p) * p;
        while q < hi {
            let r = &mut residual[(q - lo) as usize];
            while (*r).is_multiple_of(p) {
                *r /= p;
            }
            q += p;
        }
    }
    Ok(residual.iter().filter(|&&r| r > 1).count() as u64)
}

/// The proven lower bound `2^(2b-2)` on [`count_b_fat`].
pub fn b_fat_lower_bound(b: u32) -> u64 {
    1u64 << (2 * b - 2)
}

/// Exact count of multiples of `p` among `2b`-bit integers; at most
/// `2^(b-1)` whenever `p >= 2^b`.
pub fn count_multiples(p: &BigUint, b: u32) -> Result<BigUint> {
    if b == 0 {
        return Err(Error::invalid("count_multiples requires b >= 1"));
    }
    if *p < (BigUint::one() << b) {
        return Err(Error::invalid(format!(
            "count_multiples requires p >= 2^{b}, got {p}"
        )));
    }
    let hi = (BigUint::one() << (2 * b)) - 1u32;
    let lo = (BigUint::one() << (2 * b - 1)) - 1u32;
    Ok(hi / p - lo / p)
}

/// Randomized Miller–Rabin with `rounds` independent bases drawn from the
/// state's stream.
///
/// `false` certifies compositeness; `true` is wrong with probability at most
/// `4^-rounds`. Deterministic given the state.
pub fn miller_rabin(n: &BigUint, rounds: u32, state: &mut PrngState) -> bool {
    instrument::record_primality_test();
    let two = BigUint::from(2u32);
    let three = BigUint::from(3u32);
    if *n < two {
        return false;
    }
    if *n == two || *n == three {
        return true;
    }
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap();
    let d = &n_minus_1 >> s;
    'round: for _ in 0..rounds {
        // base uniform in [2, n-2]
        let base = &two + state.next_below(&(n - &three));
        let mut x = base.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'round;
            }
        }
        return false;
    }
    true
}

/// Default Miller–Rabin round count; error at most `4^-40`.
pub const MILLER_RABIN_ROUNDS: u32 = 40;

/// Generate a probable prime with exactly `bits` bits.
///
/// Samples odd candidates with the top bit forced, advancing the state's
/// stream between candidates, so a replay with the same state yields the same
/// prime. This is the quasi-cubic baseline the composite pipeline avoids.
pub fn random_prime(bits: u32, state: &mut PrngState) -> BigUint {
    assert!(bits >= 2, "random_prime requires bits >= 2");
    let top = BigUint::one() << (bits - 1);
    loop {
        let mut candidate = &top + state.next_below(&top);
        candidate |= BigUint::one();
        if miller_rabin(&candidate, MILLER_RABIN_ROUNDS, state) {
            return candidate;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rayon::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn state(n: u64) -> PrngState {
        PrngState::from_seed_bytes(&n.to_be_bytes())
    }

    /// Independent oracle: classify by full factorization, one integer at a
    /// time. Slow but entirely separate from the sieve.
    fn count_b_fat_by_factoring(b: u32) -> u64 {
        let lo = 1u64 << (2 * b - 1);
        let hi = 1u64 << (2 * b);
        (lo..hi)
            .filter(|&n| {
                factor_u64(n).iter().any(|&(p, _)| p >= 1u64 << b)
            })
            .count() as u64
    }

    /// Second oracle: the sets of multiples of primes p >= 2^b partition the
    /// fat integers of the window, because no 2b-bit integer has two such
    /// factors.
    fn count_b_fat_by_partition(b: u32) -> u64 {
        let lo = 1u64 << (2 * b - 1);
        let hi = 1u64 << (2 * b);
        small_primes(hi - 1)
            .into_iter()
            .filter(|&p| p >= 1u64 << b)
            .map(|p| (hi - 1) / p - (lo - 1) / p)
            .sum()
    }

    #[test]
    fn is_b_fat_examples() {
        assert!(is_b_fat(&big(3), 1).unwrap());
        assert!(!is_b_fat(&big(8), 2).unwrap());
        assert!(is_b_fat(&big(10), 2).unwrap());
        assert!(!is_b_fat(&big(1), 1).unwrap());
        assert!(is_b_fat(&big(0), 1).is_err());
    }

    #[test]
    fn factor_round_trips_and_sorts() {
        for n in 1u64..2000 {
            let f = factor(&big(n)).unwrap();
            assert_eq!(f.product(), big(n));
            let primes: Vec<_> = f.primes().cloned().collect();
            let mut sorted = primes.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(primes, sorted);
            for p in f.primes() {
                assert!(is_prime_u64(p.to_u64().unwrap()));
            }
        }
    }

    #[test]
    fn factor_large_semiprime() {
        // 2^61-1 and 2^31-1 are both prime.
        let n = (BigUint::one() << 61) - 1u32;
        let m = (BigUint::one() << 31) - 1u32;
        let f = factor(&(&n * &m)).unwrap();
        assert_eq!(f.factors, vec![(m, 1), (n, 1)]);
    }

    #[test]
    fn count_b_fat_frozen_small_values() {
        assert_eq!(count_b_fat(1).unwrap(), 2); // {2, 3}
        assert_eq!(count_b_fat(2).unwrap(), 5); // {10, 11, 13, 14, 15}
    }

    #[test]
    fn count_b_fat_matches_both_oracles() {
        for b in 1..=6 {
            let fast = count_b_fat(b).unwrap();
            assert_eq!(fast, count_b_fat_by_factoring(b), "factoring oracle, b={b}");
            assert_eq!(fast, count_b_fat_by_partition(b), "partition oracle, b={b}");
        }
    }

    #[test]
    fn count_b_fat_meets_lower_bound() {
        for b in 1..=6 {
            assert!(count_b_fat(b).unwrap() >= b_fat_lower_bound(b));
        }
    }

    #[test]
    fn count_b_fat_rejects_infeasible() {
        assert!(count_b_fat(0).is_err());
        assert!(count_b_fat(MAX_COUNT_B + 1).is_err());
    }

    #[test]
    fn count_multiples_examples() {
        assert_eq!(count_multiples(&big(5), 2).unwrap(), big(2)); // {10, 15}
        assert_eq!(count_multiples(&big(13), 2).unwrap(), big(1)); // {13}
        assert_eq!(count_multiples(&big(17), 4).unwrap(), big(8));
        assert!(count_multiples(&big(3), 2).is_err());
    }

    #[test]
    fn count_multiples_bound_exhaustive() {
        for b in 1..=6u32 {
            for p in small_primes((1 << (2 * b)) - 1) {
                if p < 1 << b {
                    continue;
                }
                let count = count_multiples(&big(p), b).unwrap();
                assert!(count <= big(1 << (b - 1)), "p={p} b={b}");
            }
        }
    }

    #[test]
    fn miller_rabin_examples() {
        assert!(miller_rabin(&big(7), 20, &mut state(1)));
        assert!(!miller_rabin(&big(9), 20, &mut state(1)));
        let mersenne61 = (BigUint::one() << 61) - 1u32;
        assert!(miller_rabin(&mersenne61, 40, &mut state(2)));
    }

    #[test]
    fn miller_rabin_agrees_with_sieve_below_a_million() {
        let limit = 1_000_000u64;
        let primes = small_primes(limit - 1);
        let mut is_prime = vec![false; limit as usize];
        for p in &primes {
            is_prime[*p as usize] = true;
        }
        (2..limit).into_par_iter().for_each(|n| {
            let mut s = state(n);
            assert_eq!(
                miller_rabin(&big(n), MILLER_RABIN_ROUNDS, &mut s),
                is_prime[n as usize],
                "disagreement at {n}"
            );
        });
    }

    #[test]
    fn random_prime_two_bits() {
        for n in 0..20 {
            let p = random_prime(2, &mut state(n));
            assert!(p == big(2) || p == big(3));
        }
    }

    #[test]
    fn random_prime_sixteen_bits() {
        for n in 0..20 {
            let p = random_prime(16, &mut state(n));
            assert!(p.bits() == 16);
            assert!(miller_rabin(&p, 40, &mut state(n + 1000)));
        }
    }

    #[test]
    fn random_prime_replays() {
        let a = random_prime(64, &mut state(9));
        let b = random_prime(64, &mut state(9));
        assert_eq!(a, b);
    }

    #[test]
    fn primality_counter_moves() {
        let before = instrument::primality_tests();
        miller_rabin(&big(101), 5, &mut state(3));
        is_prime_u64(101);
        assert!(instrument::primality_tests() >= before + 2);
    }
}
