//! Replay verification: prove a composite run faithful to its hidden primes.
//!
//! Running a program modulo a composite and then modulo any prime factor `p`
//! of the *final* modulus, from the same seed, must give literally the same
//! run: same trace shape, same residues mod `p`, same branch decisions, same
//! output. [`replay_check`] performs that comparison for every such `p`.
//!
//! The check has two phases so instrumentation stays honest: the composite
//! phase performs no primality test at all (the counters prove it), and only
//! the verification phase factors the final modulus.

use num_bigint::BigUint;
use num_traits::One;

use super::context::{DynContext, ProgramOutput, RunTrace, SplitEvent, TraceEntry};
use super::programs::{run_program, HostedProgram};
use crate::density::factor;
use crate::error::Result;
use crate::prng::PrngState;

/// Everything observable from one composite run.
#[derive(Debug, Clone)]
pub struct CompositeRun {
    pub output: ProgramOutput,
    pub trace: RunTrace,
    pub initial_modulus: BigUint,
    pub final_modulus: BigUint,
    pub splits: u64,
    pub split_log: Vec<SplitEvent>,
    pub draws: u64,
}

/// Run the program on the composite backend only. Calls nothing that tests
/// primality.
pub fn composite_phase<P: HostedProgram + ?Sized>(
    program: &P,
    b: u32,
    seed: &PrngState,
) -> CompositeRun {
    let mut ctx = DynContext::new_composite(b, seed);
    let output = run_program(program, &mut ctx);
    CompositeRun {
        output,
        initial_modulus: ctx.initial_modulus().clone(),
        final_modulus: ctx.modulus().clone(),
        splits: ctx.splits(),
        split_log: ctx.split_log().to_vec(),
        draws: ctx.draws(),
        trace: ctx.take_trace(),
    }
}

/// Outcome of replaying one composite run against its hidden primes.
#[derive(Debug, Clone)]
pub struct ReplayReport {
    pub composite: CompositeRun,
    /// Distinct prime factors of the final modulus, each replayed.
    pub primes: Vec<BigUint>,
    pub mismatches: Vec<String>,
}

impl ReplayReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn entry_matches(c: &TraceEntry, q: &TraceEntry, p: &BigUint) -> bool {
    c.op == q.op
        && c.flag == q.flag
        && c.values.len() == q.values.len()
        && c.values
            .iter()
            .zip(&q.values)
            .all(|(a, b)| a % p == b % p)
}

fn outputs_match(c: &ProgramOutput, q: &ProgramOutput, p: &BigUint) -> bool {
    match (c, q) {
        (ProgramOutput::Algebraic(a), ProgramOutput::Algebraic(b)) => a % p == b % p,
        (ProgramOutput::Integer(a), ProgramOutput::Integer(b)) => a == b,
        (ProgramOutput::Bottom, ProgramOutput::Bottom) => true,
        _ => false,
    }
}

/// Factor the final modulus and replay the program modulo each prime factor,
/// comparing against the recorded composite run.
pub fn verify_phase<P: HostedProgram + ?Sized>(
    program: &P,
    b: u32,
    seed: &PrngState,
    composite: &CompositeRun,
) -> Result<ReplayReport> {
    let mut primes = Vec::new();
    let mut mismatches = Vec::new();
    if !composite.final_modulus.is_one() {
        for p in factor(&composite.final_modulus)?.primes() {
            primes.push(p.clone());
            let mut ctx = DynContext::new_prime(p, b, seed);
            let output = run_program(program, &mut ctx);
            if !outputs_match(&composite.output, &output, p) {
                mismatches.push(format!(
                    "output mismatch mod {p}: composite {:?}, prime {:?}",
                    composite.output, output
                ));
            }
            if ctx.draws() != composite.draws {
                mismatches.push(format!(
                    "draw count mismatch mod {p}: composite {}, prime {}",
                    composite.draws,
                    ctx.draws()
                ));
            }
            let prime_trace = ctx.take_trace();
            if prime_trace.len() != composite.trace.len() {
                mismatches.push(format!(
                    "trace length mismatch mod {p}: composite {}, prime {}",
                    composite.trace.len(),
                    prime_trace.len()
                ));
                continue;
            }
            for (i, (ce, pe)) in composite.trace.iter().zip(&prime_trace).enumerate() {
                if !entry_matches(ce, pe, p) {
                    mismatches.push(format!(
                        "trace step {i} mismatch mod {p}: composite {ce:?}, prime {pe:?}"
                    ));
                    break;
                }
            }
        }
    }
    Ok(ReplayReport {
        composite: composite.clone(),
        primes,
        mismatches,
    })
}

/// Composite run plus full replay verification, end to end.
pub fn replay_check<P: HostedProgram + ?Sized>(
    program: &P,
    b: u32,
    seed: &PrngState,
) -> Result<ReplayReport> {
    let composite = composite_phase(program, b, seed);
    verify_phase(program, b, seed, &composite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyncore::context::{BackendKind, Bottom};
    use crate::dyncore::programs::{corpus, FnProgram, SplitStorm};
    use num_traits::Zero;

    fn seed(n: u64) -> PrngState {
        PrngState::from_seed_bytes(&n.to_be_bytes())
    }

    #[test]
    fn corpus_replays_cleanly() {
        let mut total_splits = 0;
        for program in corpus() {
            for s in 0..60u64 {
                let report = replay_check(program.as_ref(), 8, &seed(s)).unwrap();
                assert!(
                    report.ok(),
                    "{} seed {s}: {:?}",
                    program.name(),
                    report.mismatches
                );
                total_splits += report.composite.splits;
            }
        }
        assert!(total_splits > 0, "the corpus must exercise splitting");
    }

    #[test]
    fn replays_cover_larger_moduli() {
        let program = SplitStorm { rounds: 10 };
        for s in 0..15u64 {
            let report = replay_check(&program, 16, &seed(s)).unwrap();
            assert!(report.ok(), "seed {s}: {:?}", report.mismatches);
        }
    }

    #[test]
    fn bottom_is_replayed() {
        let program = FnProgram::new("invert-zero", |ctx: &mut DynContext| {
            let x = ctx.rand();
            let y = ctx.sub(&x, &x);
            let _ = ctx.inverse(&y)?;
            unreachable!("inverting zero must abort");
        });
        let report = replay_check(&program, 8, &seed(11)).unwrap();
        assert!(report.ok(), "{:?}", report.mismatches);
        assert_eq!(report.composite.output, ProgramOutput::Bottom);
        assert!(!report.primes.is_empty());
    }

    #[test]
    fn unrelated_prime_can_disagree() {
        // Not a violation of run-equivalence: primes outside the final
        // modulus carry no guarantee. Just confirm the comparison machinery
        // can say "no".
        let program = FnProgram::new("draw", |ctx: &mut DynContext| {
            let x = ctx.rand();
            Ok(ProgramOutput::Integer(i64::from(ctx.is_zero(&x))))
        });
        let mut disagreements = 0;
        for s in 0..200u64 {
            let composite = composite_phase(&program, 6, &seed(s));
            let mut ctx = DynContext::new_prime(&BigUint::from(5u32), 6, &seed(s));
            assert_eq!(ctx.backend(), BackendKind::Prime);
            let output = run_program(&program, &mut ctx);
            if !outputs_match(&composite.output, &output, &BigUint::from(5u32)) {
                disagreements += 1;
            }
        }
        assert!(disagreements > 0);
    }

    #[test]
    fn pathological_even_window_zero_rate() {
        // Modulus 30, GF(2)-flavoured regression: among residues r whose
        // split modulus stays even, the zero-test answers "zero" for exactly
        // one third. Enumerated by hand once, asserted forever.
        let m = BigUint::from(30u32);
        let mut kept = 0;
        let mut zeros = 0;
        for r in 0u32..30 {
            let r = BigUint::from(r);
            let mp = crate::dyncore::modulus::new_modulus(&r, &m);
            if (&mp % 2u32).is_zero() {
                kept += 1;
                if (&r % &mp).is_zero() {
                    zeros += 1;
                }
            }
        }
        assert_eq!((kept, zeros), (21, 7));
    }

    #[test]
    fn fn_program_bottom_type_is_inert() {
        assert_eq!(Bottom, Bottom);
    }
}
