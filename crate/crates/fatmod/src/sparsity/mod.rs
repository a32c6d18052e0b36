//! Sparse-polynomial term counting in softly-linear probe complexity.
//!
//! A black box for `f` is probed at the powers of one random point; the
//! linear complexity of that sequence is the term count. All modular
//! bookkeeping runs over the dynamic contexts of [`crate::dyncore`], so the
//! whole counter works modulo a random fat composite with no primality test
//! anywhere, and can be replayed modulo primes for verification.

pub mod bm;
pub mod count;
pub mod gf;
pub mod poly;

pub use bm::{linear_complexity, BmOutcome, BmRun};
pub use count::{
    bit_length_bound, count_terms, count_terms_amplified, count_terms_in_ctx,
    count_terms_mod_prime, count_terms_with_b, SparsityResult,
};
pub use gf::{
    count_terms_gf, count_terms_gf_amplified, count_terms_gf_mod_irreducible,
    ext_degree_bound, GfSparsityResult,
};
pub use poly::{KroneckerBox, ModularBlackBox, SparsePoly};
