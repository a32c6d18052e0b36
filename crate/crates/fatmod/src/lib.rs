//! Exact computation modulo random *fat* integers.
//!
//! Many exact algorithms work modulo a randomly chosen large prime. Generating
//! that prime costs softly-cubic time in its bit length, which can dominate
//! quasi-linear modular algorithms. This crate instead computes modulo a random
//! `2b`-bit integer `m`, splitting the modulus with a GCD whenever a zero test
//! or inversion demands it. An integer is *b-fat* when it has a prime divisor
//! `p >= 2^b`; at least half of all `2b`-bit integers are, and the split
//! routine [`dyncore::new_modulus`] preserves any prime factor `p` with
//! `p^2 > m`. Following only the large branch of every split therefore
//! reproduces, with constant probability, the exact run the same algorithm
//! would have had over `GF(p)` for a random large prime `p` — with no
//! primality test anywhere in the pipeline.
//!
//! The crate is organized around that transformation:
//!
//! * [`prng`] — seeded modular generator with split state `(s0, s1)`; the
//!   initial modulus depends only on `s0`, every later draw only on `s1`, and
//!   draws stay congruent along divisor chains of the modulus.
//! * [`density`] — counting facts about fat integers, plus a genuine
//!   random-prime generator used only as a baseline and test oracle.
//! * [`dyncore`] — the modulus-splitting rule and [`dyncore::DynContext`], a
//!   field-like evaluation context with interchangeable prime and composite
//!   backends, plus replay checking between the two.
//! * [`sparsity`] — the flagship application: count the nonzero terms of an
//!   unknown sparse integer polynomial through a modular black box, via
//!   geometric evaluations and early-terminated Berlekamp–Massey, in softly
//!   linear time.
//! * [`polyfield`] — the same machinery for random (possibly reducible)
//!   polynomial moduli over a fixed prime field `GF(q)`, avoiding
//!   irreducibility tests.
//! * [`cli`] — the `fatmod` command-line front end.
//!
//! See the `examples/` directory for runnable walkthroughs of each piece.

pub mod cli;
pub mod density;
pub mod dyncore;
pub mod error;
pub mod instrument;
pub mod polyfield;
pub mod prng;
pub mod sparsity;

pub use error::{Error, Result};
