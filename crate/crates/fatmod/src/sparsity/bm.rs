//! Linear-complexity engine with early termination.
//!
//! Classical Berlekamp–Massey, run over a [`RingContext`] so discrepancy
//! zero tests and inversions go through the context's deciding operations.
//! The termination rule: stop at the first zero discrepancy seen when
//! `2L <= n`. Under the update dynamics that can only happen at `n = 2L`
//! exactly, so a terminating run consumes `2L + 1` sequence elements and
//! certifies that the `(L+1) x (L+1)` Hankel matrix of the consumed prefix
//! is singular while all smaller ones are not.
//!
//! Discrepancies are inverted at the moment they test nonzero, while the
//! deciding modulus still vouches for them; a cached inverse stays a valid
//! inverse modulo every later (dividing) modulus.

use crate::dyncore::context::{Bottom, RingContext};

/// Why the engine stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BmOutcome {
    /// Early termination fired: the consumed prefix is generated by a
    /// recurrence of this order.
    Terminated { complexity: u64 },
    /// The probe budget ran out first; `complexity` is the order reached so
    /// far, a lower bound.
    Exhausted { complexity: u64 },
}

/// Result of one engine run: outcome plus number of sequence elements drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BmRun {
    pub outcome: BmOutcome,
    pub probes: u64,
}

/// `lambda + coef * x^shift * shadow`, low-order-first coefficient vectors.
fn shifted_add<R: RingContext>(
    ctx: &mut R,
    lambda: &[R::Value],
    shadow: &[R::Value],
    coef: &R::Value,
    shift: usize,
) -> Vec<R::Value> {
    let mut out = lambda.to_vec();
    while out.len() < shadow.len() + shift {
        out.push(ctx.ring_zero());
    }
    for (j, s) in shadow.iter().enumerate() {
        let add = ctx.ring_mul(coef, s);
        out[j + shift] = ctx.ring_add(&out[j + shift], &add);
    }
    out
}

/// Feed sequence elements from `next` until early termination or until
/// `2 * max_order + 1` elements have been consumed.
pub fn linear_complexity<R, F>(ctx: &mut R, mut next: F, max_order: u64) -> Result<BmRun, Bottom>
where
    R: RingContext,
    F: FnMut(&mut R) -> Result<R::Value, Bottom>,
{
    let one = ctx.ring_one();
    // Connection polynomial Lambda and shadow polynomial B; b_inv is the
    // inverse of the discrepancy from the last length change.
    let mut lambda: Vec<R::Value> = vec![one.clone()];
    let mut shadow: Vec<R::Value> = vec![one.clone()];
    let mut l: u64 = 0;
    let mut shift: usize = 1;
    let mut b_inv = one;
    let mut seq: Vec<R::Value> = Vec::new();
    let budget = max_order.saturating_mul(2).saturating_add(1);

    for n in 0..budget {
        seq.push(next(ctx)?);
        let here = n as usize;
        let mut delta = seq[here].clone();
        for i in 1..=l as usize {
            if let Some(c) = lambda.get(i) {
                let prod = ctx.ring_mul(c, &seq[here - i]);
                delta = ctx.ring_add(&delta, &prod);
            }
        }
        if ctx.ring_is_zero(&delta) {
            if 2 * l <= n {
                return Ok(BmRun {
                    outcome: BmOutcome::Terminated { complexity: l },
                    probes: n + 1,
                });
            }
            shift += 1;
            continue;
        }
        let zero = ctx.ring_zero();
        let scaled = ctx.ring_mul(&delta, &b_inv);
        let coef = ctx.ring_sub(&zero, &scaled);
        if 2 * l <= n {
            let previous = lambda.clone();
            lambda = shifted_add(ctx, &lambda, &shadow, &coef, shift);
            shadow = previous;
            b_inv = ctx.ring_inverse(&delta)?;
            l = n + 1 - l;
            shift = 1;
        } else {
            lambda = shifted_add(ctx, &lambda, &shadow, &coef, shift);
            shift += 1;
        }
    }
    Ok(BmRun {
        outcome: BmOutcome::Exhausted { complexity: l },
        probes: budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyncore::{DynContext, DynValue};
    use crate::prng::PrngState;
    use num_bigint::BigUint;

    fn prime_ctx(p: u64) -> DynContext {
        let seed = PrngState::from_seed_bytes(b"bm-tests");
        let mut ctx = DynContext::new_prime(&BigUint::from(p), 4, &seed);
        ctx.set_tracing(false);
        ctx
    }

    fn feed(values: &[u64]) -> impl FnMut(&mut DynContext) -> Result<DynValue, Bottom> + '_ {
        let mut it = values.iter();
        move |ctx| {
            let v = it.next().expect("sequence exhausted");
            Ok(ctx.constant(&BigUint::from(*v)))
        }
    }

    /// Rank-based oracle: smallest `s` such that the `s x s` Hankel matrix
    /// `[v_{i+j}]` over GF(p) is singular, if any within range.
    fn smallest_singular_hankel(values: &[u64], p: u64) -> Option<u64> {
        let max_s = values.len().div_ceil(2);
        for s in 1..=max_s {
            let mut mat: Vec<Vec<u64>> = (0..s)
                .map(|i| (0..s).map(|j| values[i + j] % p).collect())
                .collect();
            if gf_rank(&mut mat, p) < s {
                return Some(s as u64);
            }
        }
        None
    }

    fn gf_rank(mat: &mut [Vec<u64>], p: u64) -> usize {
        let rows = mat.len();
        if rows == 0 {
            return 0;
        }
        let cols = mat[0].len();
        let inv = |a: u64| -> u64 {
            let mut r = 1u64;
            let mut base = a % p;
            let mut e = p - 2;
            while e > 0 {
                if e & 1 == 1 {
                    r = r * base % p;
                }
                base = base * base % p;
                e >>= 1;
            }
            r
        };
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| !mat[r][col].is_multiple_of(p)) else {
                continue;
            };
            mat.swap(rank, pivot);
            let scale = inv(mat[rank][col]);
            for x in mat[rank].iter_mut().skip(col) {
                *x = *x % p * scale % p;
            }
            let pivot_row = mat[rank].clone();
            for (r, row) in mat.iter_mut().enumerate() {
                if r != rank && !row[col].is_multiple_of(p) {
                    let factor = row[col] % p;
                    for (x, &pv) in row.iter_mut().zip(&pivot_row).skip(col) {
                        *x = (*x % p + (p - factor) * pv % p) % p;
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    #[test]
    fn constant_sequence_has_complexity_one() {
        let mut ctx = prime_ctx(101);
        let run = linear_complexity(&mut ctx, feed(&[5, 5, 5, 5, 5, 5, 5]), 3).unwrap();
        assert_eq!(run.outcome, BmOutcome::Terminated { complexity: 1 });
        assert_eq!(run.probes, 3);
    }

    #[test]
    fn zero_sequence_has_complexity_zero() {
        let mut ctx = prime_ctx(101);
        let run = linear_complexity(&mut ctx, feed(&[0, 0, 0]), 1).unwrap();
        assert_eq!(run.outcome, BmOutcome::Terminated { complexity: 0 });
        assert_eq!(run.probes, 1);
    }

    #[test]
    fn fibonacci_has_complexity_two() {
        let mut ctx = prime_ctx(1009);
        let run = linear_complexity(&mut ctx, feed(&[1, 1, 2, 3, 5, 8, 13, 21, 34]), 4).unwrap();
        assert_eq!(run.outcome, BmOutcome::Terminated { complexity: 2 });
        assert_eq!(run.probes, 5);
    }

    #[test]
    fn termination_consumes_odd_prefix() {
        // A geometric-looking prefix triggers termination at n = 2L even
        // when later elements would have raised the complexity.
        let mut ctx = prime_ctx(7);
        let run = linear_complexity(&mut ctx, feed(&[1, 2, 4, 2, 1]), 2).unwrap();
        assert_eq!(run.outcome, BmOutcome::Terminated { complexity: 1 });
        assert_eq!(run.probes, 3);
    }

    /// Exhaustive cross-check against the Hankel oracle: over small prime
    /// fields, for every sequence of length 7, the engine terminates with
    /// complexity L exactly when the smallest singular Hankel matrix is the
    /// (L+1)-sized one, and consumes 2L+1 elements.
    #[test]
    fn termination_matches_hankel_oracle_exhaustively() {
        for p in [2u64, 3, 5] {
            let len = 7usize;
            let total = p.pow(len as u32);
            for code in 0..total {
                let mut values = Vec::with_capacity(len);
                let mut c = code;
                for _ in 0..len {
                    values.push(c % p);
                    c /= p;
                }
                let mut ctx = prime_ctx(p);
                let run = linear_complexity(&mut ctx, feed(&values), 3).unwrap();
                let oracle = smallest_singular_hankel(&values, p);
                match run.outcome {
                    BmOutcome::Terminated { complexity } => {
                        assert_eq!(run.probes, 2 * complexity + 1, "p={p} seq={values:?}");
                        assert_eq!(
                            oracle,
                            Some(complexity + 1),
                            "p={p} seq={values:?}: terminated at L={complexity}"
                        );
                    }
                    BmOutcome::Exhausted { .. } => {
                        assert_eq!(run.probes, 7, "p={p} seq={values:?}");
                        assert_eq!(oracle, None, "p={p} seq={values:?}: no termination");
                    }
                }
            }
        }
    }
}
