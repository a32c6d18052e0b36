//! Seeded modular generator with split state, and the correlated sampling rule
//! that keeps prime-backend and composite-backend draws congruent.
//!
//! The underlying generator `G` is a keyed-hash counter: output block `i`
//! under a 32-byte state `s` is `SHA-256(tag || s || i)`, and a draw below `m`
//! rejection-samples whole blocks until a candidate lands in `[0, m)`, so the
//! result is exactly uniform, not merely close. State advances by hashing as
//! well, so streams are reproducible bit-for-bit from a hex seed on any
//! platform.
//!
//! A full [`PrngState`] carries two halves. `s0` is spent once, to fix the
//! initial modulus; `s1` drives every subsequent draw. A draw below `t` when
//! `t` divides the initial modulus `m` is performed literally as "draw below
//! `m`, then reduce mod `t`". That literal form is what makes draws *equal*
//! (not just equidistributed) modulo any shared prime factor: for `p | m' | m`
//! the draw below `p` and the draw below `m'` reduce the same below-`m` value,
//! hence agree mod `p` at every draw index.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// One half of the generator state: 32 opaque bytes.
pub type HalfState = [u8; 32];

const STATE_LEN: usize = 32;

fn hash_blocks(tag: &[u8], state: &HalfState, attempt: u64, nblocks: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(nblocks * STATE_LEN);
    for block in 0..nblocks as u32 {
        let mut h = Sha256::new();
        h.update(tag);
        h.update(state);
        h.update(attempt.to_be_bytes());
        h.update(block.to_be_bytes());
        out.extend_from_slice(&h.finalize());
    }
    out
}

/// Draw a uniform integer in `[0, m)` from state `s` without advancing it.
///
/// Deterministic in `(s, m)`. Rejects `m = 0`.
pub fn rand_mod(s: &HalfState, m: &BigUint) -> Result<BigUint> {
    if m.is_zero() {
        return Err(Error::invalid("rand_mod requires a positive modulus"));
    }
    Ok(draw_below(s, m))
}

/// Internal draw; caller guarantees `m >= 1`.
pub(crate) fn draw_below(s: &HalfState, m: &BigUint) -> BigUint {
    if m.is_one() {
        return BigUint::zero();
    }
    let bits = m.bits();
    let nbytes = bits.div_ceil(8) as usize;
    let nblocks = nbytes.div_ceil(STATE_LEN);
    let top_bits = bits - 8 * (nbytes as u64 - 1);
    let top_mask = 0xffu8 >> (8 - top_bits);
    for attempt in 0.. {
        let mut bytes = hash_blocks(b"fatmod/G/randmod", s, attempt, nblocks);
        bytes.truncate(nbytes);
        bytes[0] &= top_mask;
        let candidate = BigUint::from_bytes_be(&bytes);
        if candidate < *m {
            return candidate;
        }
    }
    unreachable!("rejection sampling terminates");
}

/// Advance one half-state. Output has the same length as the input.
pub fn rand_update(s: &HalfState) -> HalfState {
    let mut h = Sha256::new();
    h.update(b"fatmod/G/update");
    h.update(s);
    h.finalize().into()
}

/// The `2b`-bit modulus determined by an `s0` half-state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialModulus {
    pub m: BigUint,
    pub b: u32,
}

/// Draw the initial modulus, uniform over `[2^(2b-1), 2^(2b))`.
///
/// A function of `(s0, b)` alone; the `s1` half never enters.
pub fn sample_initial_modulus(s0: &HalfState, b: u32) -> InitialModulus {
    assert!(b >= 1, "bit-length parameter must be positive");
    let half_range = BigUint::one() << (2 * b - 1);
    let m = &half_range + draw_below(s0, &half_range);
    InitialModulus { m, b }
}

/// Split generator state: `s0` fixes the initial modulus, `s1` drives all
/// later draws, and `counter` records how many draws have been taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrngState {
    s0: HalfState,
    s1: HalfState,
    counter: u64,
}

impl PrngState {
    /// Derive a state from raw seed bytes by domain-separated hashing.
    pub fn from_seed_bytes(seed: &[u8]) -> Self {
        let half = |tag: &[u8]| -> HalfState {
            let mut h = Sha256::new();
            h.update(tag);
            h.update(seed);
            h.finalize().into()
        };
        PrngState {
            s0: half(b"fatmod/seed/s0"),
            s1: half(b"fatmod/seed/s1"),
            counter: 0,
        }
    }

    /// Parse a hex seed string as given on the command line.
    pub fn from_seed_hex(seed: &str) -> Result<Self> {
        let bytes = hex::decode(seed.trim())
            .map_err(|e| Error::BadSeed(format!("{seed:?}: {e}")))?;
        Ok(Self::from_seed_bytes(&bytes))
    }

    /// Fresh state from OS entropy. The caller is responsible for echoing the
    /// seed if replay matters; prefer [`PrngState::from_seed_hex`] for that.
    pub fn from_entropy() -> Self {
        let seed: [u8; 32] = rand::random();
        Self::from_seed_bytes(&seed)
    }

    pub fn s0(&self) -> &HalfState {
        &self.s0
    }

    pub fn s1(&self) -> &HalfState {
        &self.s1
    }

    pub fn counter(&self) -> u64 {
        self.counter
    }

    /// Child state for repetition `index`: both halves re-derived, so each
    /// repetition gets a fresh modulus and a fresh draw stream.
    pub fn child(&self, index: u64) -> Self {
        let half = |tag: &[u8], h: &HalfState| -> HalfState {
            let mut hasher = Sha256::new();
            hasher.update(tag);
            hasher.update(h);
            hasher.update(index.to_be_bytes());
            hasher.finalize().into()
        };
        PrngState {
            s0: half(b"fatmod/child/s0", &self.s0),
            s1: half(b"fatmod/child/s1", &self.s1),
            counter: 0,
        }
    }

    /// Replace `s0` only, keeping the draw stream. Used to pin the modulus
    /// half when studying the conditional behavior of the other half.
    pub fn with_s0(&self, s0: HalfState) -> Self {
        PrngState { s0, ..self.clone() }
    }

    /// Replace `s1` only.
    pub fn with_s1(&self, s1: HalfState) -> Self {
        PrngState { s1, ..self.clone() }
    }

    /// Raw draw below `m` from the `s1` stream, advancing it by one step.
    ///
    /// This is the plain generator `G`; no modulus correlation applies.
    pub fn next_below(&mut self, m: &BigUint) -> BigUint {
        debug_assert!(!m.is_zero());
        let x = draw_below(&self.s1, m);
        self.advance();
        x
    }

    /// One correlated draw below `t`, where `m` is the initial modulus
    /// associated with this state's `s0`.
    ///
    /// If `t` divides `m` the draw is taken below `m` and reduced mod `t`;
    /// otherwise it is taken below `t` directly. Either way the `s1` stream
    /// advances by exactly one step, keeping prime- and composite-backend
    /// streams aligned.
    pub fn correlated_sample(&mut self, t: &BigUint, m: &BigUint) -> Result<BigUint> {
        if t.is_zero() {
            return Err(Error::invalid("correlated_sample requires t >= 1"));
        }
        let x = if (m % t).is_zero() {
            draw_below(&self.s1, m) % t
        } else {
            draw_below(&self.s1, t)
        };
        self.advance();
        Ok(x)
    }

    fn advance(&mut self) {
        self.s1 = rand_update(&self.s1);
        self.counter += 1;
    }
}
