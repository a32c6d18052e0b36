//! Dynamic modular evaluation: run programs modulo a random composite as if
//! it were prime, splitting the modulus whenever a zero test or inversion
//! needs a decision, and verify runs after the fact by prime replay.

pub mod context;
pub mod modulus;
pub mod programs;
pub mod replay;

pub use context::{
    BackendKind, Bottom, DynContext, DynValue, ProgramOutput, RingContext, RunTrace, SplitEvent,
    TraceEntry, TraceOp,
};
pub use modulus::{mod_inverse, new_modulus};
pub use programs::{
    algebraic, corpus, run_program, FnProgram, HostedProgram, IteratedInversion, PolyEval,
    SplitStorm, ZeroCounter,
};
pub use replay::{composite_phase, replay_check, verify_phase, CompositeRun, ReplayReport};
