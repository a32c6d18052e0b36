//! Hosted programs: straight-line modular computations written once and run
//! against either backend of a [`DynContext`].

use num_bigint::BigUint;

use super::context::{Bottom, DynContext, DynValue, ProgramOutput};

/// A computation over a modular context. Implementations must consult the
/// context for every arithmetic step, zero test, and random draw; that is
/// what makes the composite and prime runs comparable.
pub trait HostedProgram {
    fn name(&self) -> &str;
    fn run(&self, ctx: &mut DynContext) -> Result<ProgramOutput, Bottom>;
}

/// Run a program and fold the abort case into the output.
pub fn run_program<P: HostedProgram + ?Sized>(
    program: &P,
    ctx: &mut DynContext,
) -> ProgramOutput {
    program
        .run(ctx)
        .unwrap_or(ProgramOutput::Bottom)
}

/// Wrap a closure as a program; handy for one-off experiments.
pub struct FnProgram<F> {
    pub label: &'static str,
    pub body: F,
}

impl<F> FnProgram<F>
where
    F: Fn(&mut DynContext) -> Result<ProgramOutput, Bottom>,
{
    pub fn new(label: &'static str, body: F) -> Self {
        FnProgram { label, body }
    }
}

impl<F> HostedProgram for FnProgram<F>
where
    F: Fn(&mut DynContext) -> Result<ProgramOutput, Bottom>,
{
    fn name(&self) -> &str {
        self.label
    }

    fn run(&self, ctx: &mut DynContext) -> Result<ProgramOutput, Bottom> {
        (self.body)(ctx)
    }
}

/// Horner evaluation of a fixed integer polynomial at a random point.
pub struct PolyEval {
    pub coeffs: Vec<i64>,
}

impl HostedProgram for PolyEval {
    fn name(&self) -> &str {
        "poly-eval"
    }

    fn run(&self, ctx: &mut DynContext) -> Result<ProgramOutput, Bottom> {
        let x = ctx.rand();
        let mut acc = ctx.constant_i64(0);
        for &c in &self.coeffs {
            let c = ctx.constant_i64(c);
            let shifted = ctx.mul(&acc, &x);
            acc = ctx.add(&shifted, &c);
        }
        Ok(ProgramOutput::Algebraic(acc.residue().clone()))
    }
}

/// Repeatedly invert `x + i` for drawn `x`; a dense exercise of the
/// inversion path, aborting when a shifted draw lands on zero.
pub struct IteratedInversion {
    pub rounds: u32,
}

impl HostedProgram for IteratedInversion {
    fn name(&self) -> &str {
        "iterated-inversion"
    }

    fn run(&self, ctx: &mut DynContext) -> Result<ProgramOutput, Bottom> {
        let mut acc = ctx.constant_i64(1);
        for i in 0..self.rounds {
            let x = ctx.rand();
            let shift = ctx.constant_i64(i64::from(i) + 1);
            let shifted = ctx.add(&x, &shift);
            let inv = ctx.inverse(&shifted)?;
            acc = ctx.mul(&acc, &inv);
        }
        Ok(ProgramOutput::Algebraic(acc.residue().clone()))
    }
}

/// Count how many of `draws` random residues test as zero. Output is plain
/// data, so replays must reproduce it exactly.
pub struct ZeroCounter {
    pub draws: u32,
}

impl HostedProgram for ZeroCounter {
    fn name(&self) -> &str {
        "zero-counter"
    }

    fn run(&self, ctx: &mut DynContext) -> Result<ProgramOutput, Bottom> {
        let mut zeros = 0i64;
        for _ in 0..self.draws {
            let x = ctx.rand();
            if ctx.is_zero(&x) {
                zeros += 1;
            }
        }
        Ok(ProgramOutput::Integer(zeros))
    }
}

/// Adversarial splitter: zero-tests products of draws and small constants,
/// which keeps handing the modulus values that share factors with it.
pub struct SplitStorm {
    pub rounds: u32,
}

impl HostedProgram for SplitStorm {
    fn name(&self) -> &str {
        "split-storm"
    }

    fn run(&self, ctx: &mut DynContext) -> Result<ProgramOutput, Bottom> {
        let mut survivors = 0i64;
        for i in 0..self.rounds {
            let x = ctx.rand();
            let small = ctx.constant(&BigUint::from(2u64 + u64::from(i % 7)));
            let poked = ctx.mul(&x, &small);
            if !ctx.is_zero(&poked) {
                let inv = ctx.inverse(&poked)?;
                let check = ctx.mul(&poked, &inv);
                let one = ctx.constant_i64(1);
                let diff = ctx.sub(&check, &one);
                if ctx.is_zero(&diff) {
                    survivors += 1;
                }
            }
        }
        Ok(ProgramOutput::Integer(survivors))
    }
}

/// The standard corpus used by tests and examples.
pub fn corpus() -> Vec<Box<dyn HostedProgram>> {
    vec![
        Box::new(PolyEval {
            coeffs: vec![3, 0, -7, 1, 12],
        }),
        Box::new(IteratedInversion { rounds: 6 }),
        Box::new(ZeroCounter { draws: 12 }),
        Box::new(SplitStorm { rounds: 8 }),
    ]
}

/// A value worth exposing from programs built on [`FnProgram`].
pub fn algebraic(v: &DynValue) -> Result<ProgramOutput, Bottom> {
    Ok(ProgramOutput::Algebraic(v.residue().clone()))
}
