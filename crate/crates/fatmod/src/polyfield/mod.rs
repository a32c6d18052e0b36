//! The GF(q)[x] analog of the integer toolkit.
//!
//! Bit length becomes degree, primes become irreducible polynomials, and a
//! random monic polynomial of degree `2d` plays the part of the random
//! modulus: it is *d-fat* when some irreducible factor has degree above
//! `d`, and that factor is what survives the splitting rule. Density
//! counts, the dynamic context, and replay verification all mirror their
//! integer counterparts.

pub mod context;
pub mod fieldpoly;
pub mod irreducible;

pub use context::{
    new_modulus_poly, poly_composite_phase, poly_replay_check, poly_verify_phase,
    run_poly_program, sample_initial_poly_modulus, PolyCompositeRun, PolyContext,
    PolyOutput, PolyReplayReport, PolySplitEvent, PolyTraceEntry,
};
pub use fieldpoly::{int_to_poly, poly_to_int, FieldPoly};
pub use irreducible::{
    count_d_fat, count_poly_multiples, d_fat_lower_bound, irreducibles, is_d_fat,
    is_irreducible, poly_factor, random_irreducible,
};
