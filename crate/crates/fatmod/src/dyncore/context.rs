//! Execution contexts for hosted modular programs.
//!
//! A [`DynContext`] runs the same program text against one of two backends:
//!
//! * `Composite`: arithmetic modulo a random `2b`-bit integer. Zero tests and
//!   inversions may *split* the modulus through
//!   [`new_modulus`](super::modulus::new_modulus), after which the run
//!   continues modulo the divisor. No primality test ever happens here.
//! * `Prime`: plain arithmetic modulo a fixed `p`, the reference semantics.
//!
//! Both backends draw randomness through the correlated scheme in
//! [`crate::prng`], so a prime run whose `p` divides the composite run's
//! final modulus replays it exactly, step for step. The trace recorded here
//! is the witness: op tags, operand residues, and branch decisions.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modulus::{mod_inverse, new_modulus};
use crate::prng::{sample_initial_modulus, PrngState};

/// Which arithmetic backend a context runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendKind {
    Composite,
    Prime,
}

/// Abort token for inversion of a genuine zero. Programs propagate it with
/// `?`; the runner reports the output as [`ProgramOutput::Bottom`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bottom;

/// A residue held by a hosted program. Values are re-reduced on every
/// operation, so they stay valid across modulus splits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynValue(BigUint);

impl DynValue {
    pub fn residue(&self) -> &BigUint {
        &self.0
    }
}

/// What a hosted program produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProgramOutput {
    /// A ring element; compared modulo the replay prime.
    Algebraic(BigUint),
    /// Backend-independent data (counts, flags); compared exactly.
    Integer(i64),
    /// The run aborted by inverting zero.
    Bottom,
}

/// Operation tags recorded in a trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceOp {
    Rand,
    Const,
    Add,
    Sub,
    Mul,
    Neg,
    ZeroTest,
    Inverse,
}

/// One executed operation: tag, the residues involved, and for branching ops
/// the decision taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub op: TraceOp,
    pub values: Vec<BigUint>,
    pub flag: Option<bool>,
}

pub type RunTrace = Vec<TraceEntry>;

/// A modulus shrink observed during a composite run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitEvent {
    /// Index into the trace of the operation that triggered the split.
    pub step: usize,
    pub old_modulus: BigUint,
    pub new_modulus: BigUint,
}

/// The face a modular context shows to generic algorithms: ring arithmetic
/// plus the two deciding operations. Implemented by [`DynContext`] and by the
/// polynomial-field analog, so code like the linear-complexity engine runs
/// unchanged over either.
pub trait RingContext {
    type Value: Clone + std::fmt::Debug;

    fn ring_zero(&mut self) -> Self::Value;
    fn ring_one(&mut self) -> Self::Value;
    fn ring_add(&mut self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn ring_sub(&mut self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn ring_mul(&mut self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn ring_is_zero(&mut self, a: &Self::Value) -> bool;
    fn ring_inverse(&mut self, a: &Self::Value) -> Result<Self::Value, Bottom>;
}

/// Modular execution context; see the module docs.
#[derive(Debug, Clone)]
pub struct DynContext {
    kind: BackendKind,
    modulus: BigUint,
    initial_modulus: BigUint,
    b: u32,
    prng: PrngState,
    tracing: bool,
    trace: RunTrace,
    split_log: Vec<SplitEvent>,
}

impl DynContext {
    /// Composite backend: the modulus is the `2b`-bit integer determined by
    /// the seed's first half.
    pub fn new_composite(b: u32, seed: &PrngState) -> Self {
        let init = sample_initial_modulus(seed.s0(), b);
        DynContext {
            kind: BackendKind::Composite,
            modulus: init.m.clone(),
            initial_modulus: init.m,
            b,
            prng: seed.clone(),
            tracing: true,
            trace: Vec::new(),
            split_log: Vec::new(),
        }
    }

    /// Prime backend: plain arithmetic modulo `p`. The same `2b`-bit initial
    /// modulus is derived from the seed and kept purely to correlate draws;
    /// `p` itself is taken on faith and never tested.
    pub fn new_prime(p: &BigUint, b: u32, seed: &PrngState) -> Self {
        assert!(*p >= BigUint::from(2u32), "prime backend needs p >= 2");
        let init = sample_initial_modulus(seed.s0(), b);
        DynContext {
            kind: BackendKind::Prime,
            modulus: p.clone(),
            initial_modulus: init.m,
            b,
            prng: seed.clone(),
            tracing: true,
            trace: Vec::new(),
            split_log: Vec::new(),
        }
    }

    pub fn backend(&self) -> BackendKind {
        self.kind
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn initial_modulus(&self) -> &BigUint {
        &self.initial_modulus
    }

    pub fn bit_parameter(&self) -> u32 {
        self.b
    }

    pub fn splits(&self) -> u64 {
        self.split_log.len() as u64
    }

    pub fn split_log(&self) -> &[SplitEvent] {
        &self.split_log
    }

    /// Number of PRNG draws consumed so far; equal across correlated runs.
    pub fn draws(&self) -> u64 {
        self.prng.counter()
    }

    /// Disable or re-enable trace recording (split accounting stays on).
    pub fn set_tracing(&mut self, on: bool) {
        self.tracing = on;
    }

    pub fn trace(&self) -> &RunTrace {
        &self.trace
    }

    pub fn take_trace(&mut self) -> RunTrace {
        std::mem::take(&mut self.trace)
    }

    fn record(&mut self, op: TraceOp, values: Vec<BigUint>, flag: Option<bool>) {
        if self.tracing {
            self.trace.push(TraceEntry { op, values, flag });
        }
    }

    fn reduce(&self, v: &DynValue) -> BigUint {
        &v.0 % &self.modulus
    }

    /// Draw a uniform residue. Both backends consume exactly one stream step;
    /// the drawn values agree modulo any shared prime factor of modulus and
    /// initial modulus.
    pub fn rand(&mut self) -> DynValue {
        let r = self
            .prng
            .correlated_sample(&self.modulus, &self.initial_modulus)
            .expect("context modulus is positive");
        self.record(TraceOp::Rand, vec![r.clone()], None);
        DynValue(r)
    }

    pub fn constant(&mut self, n: &BigUint) -> DynValue {
        let r = n % &self.modulus;
        self.record(TraceOp::Const, vec![r.clone()], None);
        DynValue(r)
    }

    pub fn constant_i64(&mut self, n: i64) -> DynValue {
        let mag = BigUint::from(n.unsigned_abs());
        let r = if n.is_negative() {
            (&self.modulus - mag % &self.modulus) % &self.modulus
        } else {
            mag % &self.modulus
        };
        self.record(TraceOp::Const, vec![r.clone()], None);
        DynValue(r)
    }

    pub fn add(&mut self, a: &DynValue, b: &DynValue) -> DynValue {
        let (x, y) = (self.reduce(a), self.reduce(b));
        let r = (&x + &y) % &self.modulus;
        self.record(TraceOp::Add, vec![x, y, r.clone()], None);
        DynValue(r)
    }

    pub fn sub(&mut self, a: &DynValue, b: &DynValue) -> DynValue {
        let (x, y) = (self.reduce(a), self.reduce(b));
        let r = (&x + &self.modulus - &y) % &self.modulus;
        self.record(TraceOp::Sub, vec![x, y, r.clone()], None);
        DynValue(r)
    }

    pub fn mul(&mut self, a: &DynValue, b: &DynValue) -> DynValue {
        let (x, y) = (self.reduce(a), self.reduce(b));
        let r = (&x * &y) % &self.modulus;
        self.record(TraceOp::Mul, vec![x, y, r.clone()], None);
        DynValue(r)
    }

    pub fn neg(&mut self, a: &DynValue) -> DynValue {
        let x = self.reduce(a);
        let r = (&self.modulus - &x) % &self.modulus;
        self.record(TraceOp::Neg, vec![x, r.clone()], None);
        DynValue(r)
    }

    /// Split the modulus so it decides `a`, then record the event. Returns
    /// the residue of `a` modulo the (possibly unchanged) modulus.
    fn decide(&mut self, a: &DynValue) -> BigUint {
        let reduced = self.reduce(a);
        if self.kind == BackendKind::Prime {
            return reduced;
        }
        let next = new_modulus(&reduced, &self.modulus);
        if next != self.modulus {
            self.split_log.push(SplitEvent {
                step: self.trace.len(),
                old_modulus: self.modulus.clone(),
                new_modulus: next.clone(),
            });
            self.modulus = next;
        }
        &reduced % &self.modulus
    }

    /// Is `a` zero? In the composite backend the modulus is first split so
    /// the question has a crisp answer.
    pub fn is_zero(&mut self, a: &DynValue) -> bool {
        let r = self.decide(a);
        let answer = r.is_zero();
        self.record(TraceOp::ZeroTest, vec![r], Some(answer));
        answer
    }

    /// Invert `a`, or abort with [`Bottom`] when `a` is zero under the
    /// deciding modulus.
    pub fn inverse(&mut self, a: &DynValue) -> Result<DynValue, Bottom> {
        let r = self.decide(a);
        if r.gcd(&self.modulus) != BigUint::one() && !self.modulus.is_one() {
            self.record(TraceOp::Inverse, vec![r], Some(false));
            return Err(Bottom);
        }
        let inv = mod_inverse(&r, &self.modulus).expect("decide left a invertible");
        self.record(TraceOp::Inverse, vec![r, inv.clone()], Some(true));
        Ok(DynValue(inv))
    }
}

impl RingContext for DynContext {
    type Value = DynValue;

    fn ring_zero(&mut self) -> DynValue {
        self.constant_i64(0)
    }

    fn ring_one(&mut self) -> DynValue {
        self.constant_i64(1)
    }

    fn ring_add(&mut self, a: &DynValue, b: &DynValue) -> DynValue {
        self.add(a, b)
    }

    fn ring_sub(&mut self, a: &DynValue, b: &DynValue) -> DynValue {
        self.sub(a, b)
    }

    fn ring_mul(&mut self, a: &DynValue, b: &DynValue) -> DynValue {
        self.mul(a, b)
    }

    fn ring_is_zero(&mut self, a: &DynValue) -> bool {
        self.is_zero(a)
    }

    fn ring_inverse(&mut self, a: &DynValue) -> Result<DynValue, Bottom> {
        self.inverse(a)
    }
}
