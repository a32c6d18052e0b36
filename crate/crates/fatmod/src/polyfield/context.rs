//! Dynamic evaluation over GF(q)[x] quotient rings.
//!
//! Exact mirror of the integer machinery: programs run modulo a random
//! monic polynomial of degree `2d` as if it were irreducible, zero tests
//! and inversions split the modulus through [`new_modulus_poly`], and a
//! rerun modulo any irreducible factor of the final modulus replays the
//! composite run step for step. Degree takes the role of bit length.

use num_bigint::BigUint;

use super::fieldpoly::FieldPoly;
use super::irreducible::poly_factor;
use crate::dyncore::context::{BackendKind, Bottom, RingContext, TraceOp};
use crate::prng::{rand_mod, rand_update, HalfState, PrngState};

/// Splitting rule for polynomial moduli. With `g1 = gcd(a, m)`: when
/// `2 deg(g1) > deg(m)` the answer is `g1`; otherwise
/// `g2 = gcd(g1^deg(m) mod m, m)` absorbs the shared irreducible factors
/// with full multiplicity and the answer is `m / g2`, all monic. Degree
/// bounds multiplicity, so `deg(m)` serves as the lifting exponent.
///
/// The returned modulus divides `m`, decides `a` (zero or invertible), and
/// keeps every irreducible factor of `m` of degree above `deg(m)/2`.
pub fn new_modulus_poly(a: &FieldPoly, m: &FieldPoly) -> FieldPoly {
    assert!(!m.is_zero(), "modulus must be nonzero");
    let m = m.make_monic();
    if m.is_constant() {
        return m;
    }
    let deg_m = m.degree().unwrap();
    let a = a.rem(&m);
    let g1 = a.gcd(&m);
    if 2 * g1.degree().unwrap_or(0) > deg_m {
        return g1;
    }
    let lifted = g1.modpow(deg_m as u64, &m);
    let g2 = lifted.gcd(&m);
    if g2.is_zero() {
        // g1 = 0 happens only for a ≡ 0, and then deg g1 = deg m won the
        // size test above; unreachable, but total anyway.
        return m.clone();
    }
    m.exact_div(&g2)
}

/// What a polynomial-hosted program produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyOutput {
    Algebraic(FieldPoly),
    Integer(i64),
    Bottom,
}

/// One traced operation over the polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyTraceEntry {
    pub op: TraceOp,
    pub values: Vec<FieldPoly>,
    pub flag: Option<bool>,
}

/// A modulus shrink during a polynomial run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySplitEvent {
    pub step: usize,
    pub old_modulus: FieldPoly,
    pub new_modulus: FieldPoly,
}

/// Draw a uniform polynomial of degree below `deg` by drawing each
/// coefficient from a hash-chain on `state`.
fn sample_poly(state: &HalfState, q: u64, deg: u32) -> (FieldPoly, HalfState) {
    let big_q = BigUint::from(q);
    let mut s = *state;
    let mut coeffs = Vec::with_capacity(deg as usize);
    for _ in 0..deg {
        let c = rand_mod(&s, &big_q).expect("q >= 2");
        coeffs.push(u64::try_from(c).unwrap());
        s = rand_update(&s);
    }
    (FieldPoly::new(q, coeffs), s)
}

/// The monic degree-`2d` initial modulus determined by the seed's first
/// half.
pub fn sample_initial_poly_modulus(state: &HalfState, q: u64, d: u32) -> FieldPoly {
    assert!(d >= 1, "modulus degree parameter must be at least 1");
    let (low, _) = sample_poly(state, q, 2 * d);
    let mut coeffs = low.coeffs().to_vec();
    coeffs.resize(2 * d as usize, 0);
    coeffs.push(1);
    FieldPoly::new(q, coeffs)
}

/// Execution context over GF(q)[x]/m; see the module docs.
#[derive(Debug, Clone)]
pub struct PolyContext {
    kind: BackendKind,
    q: u64,
    modulus: FieldPoly,
    initial_modulus: FieldPoly,
    d: u32,
    prng: PrngState,
    tracing: bool,
    trace: Vec<PolyTraceEntry>,
    split_log: Vec<PolySplitEvent>,
    draws: u64,
}

impl PolyContext {
    /// Composite-analog backend: modulus is the random monic degree-`2d`
    /// polynomial determined by the seed.
    pub fn new_composite(q: u64, d: u32, seed: &PrngState) -> Self {
        let init = sample_initial_poly_modulus(seed.s0(), q, d);
        PolyContext {
            kind: BackendKind::Composite,
            q,
            modulus: init.clone(),
            initial_modulus: init,
            d,
            prng: seed.clone(),
            tracing: true,
            trace: Vec::new(),
            split_log: Vec::new(),
            draws: 0,
        }
    }

    /// Reference backend modulo `p`, which is trusted to be irreducible and
    /// never tested. Draws stay correlated with the composite run of the
    /// same seed.
    pub fn new_irreducible(p: &FieldPoly, d: u32, seed: &PrngState) -> Self {
        assert!(
            p.degree().is_some_and(|deg| deg >= 1),
            "modulus must be nonconstant"
        );
        let init = sample_initial_poly_modulus(seed.s0(), p.q(), d);
        PolyContext {
            kind: BackendKind::Prime,
            q: p.q(),
            modulus: p.make_monic(),
            initial_modulus: init,
            d,
            prng: seed.clone(),
            tracing: true,
            trace: Vec::new(),
            split_log: Vec::new(),
            draws: 0,
        }
    }

    pub fn backend(&self) -> BackendKind {
        self.kind
    }

    pub fn field(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &FieldPoly {
        &self.modulus
    }

    pub fn initial_modulus(&self) -> &FieldPoly {
        &self.initial_modulus
    }

    pub fn degree_parameter(&self) -> u32 {
        self.d
    }

    pub fn splits(&self) -> u64 {
        self.split_log.len() as u64
    }

    pub fn split_log(&self) -> &[PolySplitEvent] {
        &self.split_log
    }

    pub fn draws(&self) -> u64 {
        self.draws
    }

    pub fn set_tracing(&mut self, on: bool) {
        self.tracing = on;
    }

    pub fn trace(&self) -> &[PolyTraceEntry] {
        &self.trace
    }

    pub fn take_trace(&mut self) -> Vec<PolyTraceEntry> {
        std::mem::take(&mut self.trace)
    }

    fn record(&mut self, op: TraceOp, values: Vec<FieldPoly>, flag: Option<bool>) {
        if self.tracing {
            self.trace.push(PolyTraceEntry { op, values, flag });
        }
    }

    fn reduce(&self, v: &FieldPoly) -> FieldPoly {
        v.rem(&self.modulus)
    }

    /// Draw a uniform residue. Both backends consume one stream step per
    /// coefficient of the *initial* modulus degree, so runs stay aligned,
    /// and the raw polynomial is reduced into the current modulus.
    pub fn rand(&mut self) -> FieldPoly {
        let deg = self.initial_modulus.degree().unwrap();
        let big_q = BigUint::from(self.q);
        let mut coeffs = Vec::with_capacity(deg);
        for _ in 0..deg {
            let c = self.prng.next_below(&big_q);
            coeffs.push(u64::try_from(c).unwrap());
        }
        let raw = FieldPoly::new(self.q, coeffs);
        self.draws += 1;
        let r = self.reduce(&raw);
        self.record(TraceOp::Rand, vec![r.clone()], None);
        r
    }

    pub fn constant(&mut self, p: &FieldPoly) -> FieldPoly {
        let r = self.reduce(p);
        self.record(TraceOp::Const, vec![r.clone()], None);
        r
    }

    pub fn constant_scalar(&mut self, c: u64) -> FieldPoly {
        let r = self.reduce(&FieldPoly::constant(self.q, c));
        self.record(TraceOp::Const, vec![r.clone()], None);
        r
    }

    pub fn add(&mut self, a: &FieldPoly, b: &FieldPoly) -> FieldPoly {
        let (x, y) = (self.reduce(a), self.reduce(b));
        let r = self.reduce(&x.add(&y));
        self.record(TraceOp::Add, vec![x, y, r.clone()], None);
        r
    }

    pub fn sub(&mut self, a: &FieldPoly, b: &FieldPoly) -> FieldPoly {
        let (x, y) = (self.reduce(a), self.reduce(b));
        let r = self.reduce(&x.sub(&y));
        self.record(TraceOp::Sub, vec![x, y, r.clone()], None);
        r
    }

    pub fn mul(&mut self, a: &FieldPoly, b: &FieldPoly) -> FieldPoly {
        let (x, y) = (self.reduce(a), self.reduce(b));
        let r = self.reduce(&x.mul(&y));
        self.record(TraceOp::Mul, vec![x, y, r.clone()], None);
        r
    }

    pub fn neg(&mut self, a: &FieldPoly) -> FieldPoly {
        let x = self.reduce(a);
        let r = self.reduce(&x.neg());
        self.record(TraceOp::Neg, vec![x, r.clone()], None);
        r
    }

    fn decide(&mut self, a: &FieldPoly) -> FieldPoly {
        let reduced = self.reduce(a);
        if self.kind == BackendKind::Prime {
            return reduced;
        }
        let next = new_modulus_poly(&reduced, &self.modulus);
        if next != self.modulus {
            self.split_log.push(PolySplitEvent {
                step: self.trace.len(),
                old_modulus: self.modulus.clone(),
                new_modulus: next.clone(),
            });
            self.modulus = next;
        }
        reduced.rem(&self.modulus)
    }

    pub fn is_zero(&mut self, a: &FieldPoly) -> bool {
        let r = self.decide(a);
        let answer = r.is_zero();
        self.record(TraceOp::ZeroTest, vec![r], Some(answer));
        answer
    }

    pub fn inverse(&mut self, a: &FieldPoly) -> Result<FieldPoly, Bottom> {
        let r = self.decide(a);
        if r.is_zero() && !self.modulus.is_constant() {
            self.record(TraceOp::Inverse, vec![r], Some(false));
            return Err(Bottom);
        }
        let inv = r
            .mod_inverse(&self.modulus)
            .expect("decide left the value invertible");
        self.record(TraceOp::Inverse, vec![r, inv.clone()], Some(true));
        Ok(inv)
    }
}

impl RingContext for PolyContext {
    type Value = FieldPoly;

    fn ring_zero(&mut self) -> FieldPoly {
        self.constant_scalar(0)
    }

    fn ring_one(&mut self) -> FieldPoly {
        self.constant_scalar(1)
    }

    fn ring_add(&mut self, a: &FieldPoly, b: &FieldPoly) -> FieldPoly {
        self.add(a, b)
    }

    fn ring_sub(&mut self, a: &FieldPoly, b: &FieldPoly) -> FieldPoly {
        self.sub(a, b)
    }

    fn ring_mul(&mut self, a: &FieldPoly, b: &FieldPoly) -> FieldPoly {
        self.mul(a, b)
    }

    fn ring_is_zero(&mut self, a: &FieldPoly) -> bool {
        self.is_zero(a)
    }

    fn ring_inverse(&mut self, a: &FieldPoly) -> Result<FieldPoly, Bottom> {
        self.inverse(a)
    }
}

/// A program over the polynomial ring: same shape as the integer-hosted
/// ones, expressed as a function of the context.
pub type PolyProgram<'a> = &'a dyn Fn(&mut PolyContext) -> Result<PolyOutput, Bottom>;

/// Everything observable from one composite-analog run.
#[derive(Debug, Clone)]
pub struct PolyCompositeRun {
    pub output: PolyOutput,
    pub trace: Vec<PolyTraceEntry>,
    pub initial_modulus: FieldPoly,
    pub final_modulus: FieldPoly,
    pub splits: u64,
    pub draws: u64,
}

pub fn run_poly_program(program: PolyProgram<'_>, ctx: &mut PolyContext) -> PolyOutput {
    program(ctx).unwrap_or(PolyOutput::Bottom)
}

/// Run on the composite-analog backend only; performs no irreducibility
/// test.
pub fn poly_composite_phase(
    program: PolyProgram<'_>,
    q: u64,
    d: u32,
    seed: &PrngState,
) -> PolyCompositeRun {
    let mut ctx = PolyContext::new_composite(q, d, seed);
    let output = run_poly_program(program, &mut ctx);
    PolyCompositeRun {
        output,
        initial_modulus: ctx.initial_modulus().clone(),
        final_modulus: ctx.modulus().clone(),
        splits: ctx.splits(),
        draws: ctx.draws(),
        trace: ctx.take_trace(),
    }
}

/// Outcome of replaying a run against the irreducible factors of its final
/// modulus.
#[derive(Debug, Clone)]
pub struct PolyReplayReport {
    pub composite: PolyCompositeRun,
    pub factors: Vec<FieldPoly>,
    pub mismatches: Vec<String>,
}

impl PolyReplayReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn poly_entry_matches(c: &PolyTraceEntry, i: &PolyTraceEntry, p: &FieldPoly) -> bool {
    c.op == i.op
        && c.flag == i.flag
        && c.values.len() == i.values.len()
        && c.values
            .iter()
            .zip(&i.values)
            .all(|(a, b)| a.rem(p) == b.rem(p))
}

fn poly_outputs_match(c: &PolyOutput, i: &PolyOutput, p: &FieldPoly) -> bool {
    match (c, i) {
        (PolyOutput::Algebraic(a), PolyOutput::Algebraic(b)) => a.rem(p) == b.rem(p),
        (PolyOutput::Integer(a), PolyOutput::Integer(b)) => a == b,
        (PolyOutput::Bottom, PolyOutput::Bottom) => true,
        _ => false,
    }
}

/// Factor the final modulus (oracle side) and replay the program modulo
/// each distinct irreducible factor.
pub fn poly_verify_phase(
    program: PolyProgram<'_>,
    d: u32,
    seed: &PrngState,
    composite: &PolyCompositeRun,
) -> crate::error::Result<PolyReplayReport> {
    let mut factors = Vec::new();
    let mut mismatches = Vec::new();
    if !composite.final_modulus.is_constant() {
        for (factor, _) in poly_factor(&composite.final_modulus)?.1 {
            factors.push(factor.clone());
            let mut ctx = PolyContext::new_irreducible(&factor, d, seed);
            let output = run_poly_program(program, &mut ctx);
            if !poly_outputs_match(&composite.output, &output, &factor) {
                mismatches.push(format!(
                    "output mismatch mod {factor}: composite {:?}, irreducible {:?}",
                    composite.output, output
                ));
            }
            if ctx.draws() != composite.draws {
                mismatches.push(format!(
                    "draw count mismatch mod {factor}: {} vs {}",
                    composite.draws,
                    ctx.draws()
                ));
            }
            let trace = ctx.take_trace();
            if trace.len() != composite.trace.len() {
                mismatches.push(format!(
                    "trace length mismatch mod {factor}: {} vs {}",
                    composite.trace.len(),
                    trace.len()
                ));
                continue;
            }
            for (i, (ce, ie)) in composite.trace.iter().zip(&trace).enumerate() {
                if !poly_entry_matches(ce, ie, &factor) {
                    mismatches.push(format!(
                        "trace step {i} mismatch mod {factor}: {ce:?} vs {ie:?}"
                    ));
                    break;
                }
            }
        }
    }
    Ok(PolyReplayReport {
        composite: composite.clone(),
        factors,
        mismatches,
    })
}

/// Composite-analog run plus replay verification.
pub fn poly_replay_check(
    program: PolyProgram<'_>,
    q: u64,
    d: u32,
    seed: &PrngState,
) -> crate::error::Result<PolyReplayReport> {
    let composite = poly_composite_phase(program, q, d, seed);
    poly_verify_phase(program, d, seed, &composite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfield::irreducible::{irreducibles, poly_factor};

    fn fp(q: u64, coeffs: &[u64]) -> FieldPoly {
        FieldPoly::new(q, coeffs.to_vec())
    }

    fn seed(n: u64) -> PrngState {
        PrngState::from_seed_bytes(&n.to_be_bytes())
    }

    #[test]
    fn frozen_gf2_example() {
        // a = x, m = x^4 + x^2 + x: the split keeps x^3 + x + 1.
        let a = FieldPoly::x(2);
        let m = fp(2, &[0, 1, 1, 0, 1]);
        assert_eq!(new_modulus_poly(&a, &m), fp(2, &[1, 1, 0, 1]));
    }

    #[test]
    fn zero_input_keeps_the_modulus() {
        for m in [fp(2, &[1, 1, 0, 1]), fp(3, &[2, 0, 1]), fp(5, &[1, 1])] {
            assert_eq!(new_modulus_poly(&FieldPoly::zero(m.q()), &m), m);
        }
    }

    fn check_poly_contract(a: &FieldPoly, m: &FieldPoly) {
        let mp = new_modulus_poly(a, m);
        assert!(m.rem(&mp).is_zero(), "m'={mp} must divide m={m}");
        assert!(mp.is_monic() || mp.is_constant());
        let r = a.rem(&mp);
        if !mp.is_constant() {
            assert!(
                r.is_zero() || r.gcd(&mp).is_constant(),
                "a={a} must be zero or invertible mod m'={mp}"
            );
        }
        let deg_m = m.degree().unwrap();
        for (factor, _) in poly_factor(m).unwrap().1 {
            if 2 * factor.degree().unwrap() > deg_m {
                assert!(
                    mp.rem(&factor).is_zero(),
                    "large factor {factor} of {m} must divide {mp}"
                );
            }
        }
    }

    #[test]
    fn contract_exhaustive_gf2_and_gf3() {
        for (q, max_deg) in [(2u64, 6u32), (3, 4)] {
            for deg in 1..=max_deg {
                for m_idx in 0..q.pow(deg) {
                    let mut coeffs: Vec<u64> = Vec::new();
                    let mut i = m_idx;
                    for _ in 0..deg {
                        coeffs.push(i % q);
                        i /= q;
                    }
                    coeffs.push(1);
                    let m = FieldPoly::new(q, coeffs);
                    for a_idx in 0..q.pow(deg) {
                        let mut coeffs: Vec<u64> = Vec::new();
                        let mut i = a_idx;
                        for _ in 0..deg {
                            coeffs.push(i % q);
                            i /= q;
                        }
                        let a = FieldPoly::new(q, coeffs);
                        check_poly_contract(&a, &m);
                    }
                }
            }
        }
    }

    #[test]
    fn initial_modulus_is_monic_of_degree_2d() {
        for s in 0..30u64 {
            for q in [2u64, 3, 5] {
                let ctx = PolyContext::new_composite(q, 3, &seed(s));
                let m = ctx.initial_modulus();
                assert_eq!(m.degree(), Some(6));
                assert!(m.is_monic());
                assert_eq!(ctx.modulus(), m);
            }
        }
    }

    #[test]
    fn deg2_gf2_zero_test_enumeration() {
        // Modulo m = x^2 + x = x(x+1) over GF(2), the four residues decide:
        // 0 stays zero; 1 is invertible; x and x+1 split the modulus and
        // become invertible units of the surviving half.
        let m = fp(2, &[0, 1, 1]);
        let cases = [
            (FieldPoly::zero(2), true, m.clone()),
            (FieldPoly::one(2), false, m.clone()),
            (FieldPoly::x(2), false, fp(2, &[1, 1])),
            (fp(2, &[1, 1]), false, fp(2, &[0, 1])),
        ];
        for (a, zero, expect_m) in cases {
            let mp = new_modulus_poly(&a, &m);
            assert_eq!(mp, expect_m, "a={a}");
            assert_eq!(a.rem(&mp).is_zero(), zero, "a={a}");
        }
    }

    #[test]
    fn splits_happen_and_divide() {
        let mut seen = 0;
        for s in 0..40u64 {
            let mut ctx = PolyContext::new_composite(2, 3, &seed(s));
            for _ in 0..6 {
                let v = ctx.rand();
                ctx.is_zero(&v);
            }
            if ctx.splits() > 0 {
                seen += 1;
                assert!(ctx
                    .initial_modulus()
                    .rem(ctx.modulus())
                    .is_zero());
                for w in ctx.split_log().windows(2) {
                    assert!(w[0].new_modulus.rem(&w[1].new_modulus).is_zero());
                }
            }
        }
        assert!(seen > 10, "splitting should be common over GF(2)");
    }

    #[test]
    fn inverse_round_trips_or_bottoms() {
        for s in 0..30u64 {
            let mut ctx = PolyContext::new_composite(3, 2, &seed(s));
            let v = ctx.rand();
            match ctx.inverse(&v) {
                Ok(inv) => {
                    let prod = ctx.mul(&v, &inv);
                    assert!(
                        prod == FieldPoly::one(3).rem(ctx.modulus())
                            || ctx.modulus().is_constant()
                    );
                }
                Err(Bottom) => {
                    assert!(v.rem(ctx.modulus()).is_zero());
                }
            }
        }
    }

    #[test]
    fn correlated_draws_agree_mod_shared_factor() {
        for s in 0..25u64 {
            let probe = PolyContext::new_composite(2, 3, &seed(s));
            let init = probe.initial_modulus().clone();
            let (_, factors) = poly_factor(&init).unwrap();
            let factor = factors
                .iter()
                .map(|(f, _)| f.clone())
                .max_by_key(|f| f.degree())
                .unwrap();
            let mut c = PolyContext::new_composite(2, 3, &seed(s));
            let mut i = PolyContext::new_irreducible(&factor, 3, &seed(s));
            for _ in 0..10 {
                let a = c.rand();
                let b = i.rand();
                assert_eq!(a.rem(&factor), b.rem(&factor));
            }
            assert_eq!(c.draws(), i.draws());
        }
    }

    #[test]
    fn zero_rate_mod_linear_factor_is_balanced() {
        // Drawing uniform residues and reducing modulo a degree-1 factor of
        // the initial modulus yields field constants; over GF(2) the zero
        // rate must sit near one half.
        let mut zeros = 0u32;
        let mut total = 0u32;
        for s in 0..200u64 {
            let probe = PolyContext::new_composite(2, 2, &seed(s));
            let init = probe.initial_modulus().clone();
            let x1 = fp(2, &[1, 1]);
            if !init.rem(&x1).is_zero() {
                continue;
            }
            let mut ctx = PolyContext::new_irreducible(&x1, 2, &seed(s));
            for _ in 0..20 {
                let v = ctx.rand();
                total += 1;
                if v.is_zero() {
                    zeros += 1;
                }
            }
        }
        assert!(total >= 1000, "need enough moduli with the factor x+1");
        let rate = f64::from(zeros) / f64::from(total);
        assert!((0.42..0.58).contains(&rate), "zero rate {rate}");
    }

    type PolyProgram = Box<dyn Fn(&mut PolyContext) -> Result<PolyOutput, Bottom>>;

    fn poly_corpus() -> Vec<(&'static str, PolyProgram)> {
        vec![
            (
                "poly-eval",
                Box::new(|ctx: &mut PolyContext| {
                    let x = ctx.rand();
                    let mut acc = ctx.constant_scalar(0);
                    for c in [3u64, 0, 1, 2] {
                        let c = ctx.constant_scalar(c);
                        let shifted = ctx.mul(&acc, &x);
                        acc = ctx.add(&shifted, &c);
                    }
                    Ok(PolyOutput::Algebraic(acc))
                }),
            ),
            (
                "inversion-chain",
                Box::new(|ctx: &mut PolyContext| {
                    let mut acc = ctx.constant_scalar(1);
                    for i in 0..4u64 {
                        let x = ctx.rand();
                        let shift = ctx.constant_scalar(i);
                        let moved = ctx.add(&x, &shift);
                        if ctx.is_zero(&moved) {
                            continue;
                        }
                        let inv = ctx.inverse(&moved)?;
                        acc = ctx.mul(&acc, &inv);
                    }
                    Ok(PolyOutput::Algebraic(acc))
                }),
            ),
            (
                "zero-counter",
                Box::new(|ctx: &mut PolyContext| {
                    let mut zeros = 0i64;
                    for _ in 0..8 {
                        let v = ctx.rand();
                        if ctx.is_zero(&v) {
                            zeros += 1;
                        }
                    }
                    Ok(PolyOutput::Integer(zeros))
                }),
            ),
        ]
    }

    #[test]
    fn corpus_replays_cleanly() {
        let mut total_splits = 0;
        for (name, program) in poly_corpus() {
            for q in [2u64, 3] {
                for s in 0..25u64 {
                    let report =
                        poly_replay_check(program.as_ref(), q, 3, &seed(s)).unwrap();
                    assert!(
                        report.ok(),
                        "{name} q={q} seed {s}: {:?}",
                        report.mismatches
                    );
                    total_splits += report.composite.splits;
                }
            }
        }
        assert!(total_splits > 0);
    }

    #[test]
    fn bottom_is_replayed() {
        let program = |ctx: &mut PolyContext| {
            let x = ctx.rand();
            let y = ctx.sub(&x, &x);
            let _ = ctx.inverse(&y)?;
            unreachable!("inverting zero must abort");
        };
        let report = poly_replay_check(&program, 3, 2, &seed(4)).unwrap();
        assert!(report.ok(), "{:?}", report.mismatches);
        assert_eq!(report.composite.output, PolyOutput::Bottom);
        assert!(!report.factors.is_empty());
    }

    #[test]
    fn irreducible_backend_never_splits() {
        let table = irreducibles(3, 3).unwrap();
        let p = table.iter().find(|f| f.degree() == Some(3)).unwrap();
        let mut ctx = PolyContext::new_irreducible(p, 3, &seed(9));
        for _ in 0..20 {
            let v = ctx.rand();
            ctx.is_zero(&v);
            if !v.rem(ctx.modulus()).is_zero() {
                ctx.inverse(&v).unwrap();
            }
        }
        assert_eq!(ctx.splits(), 0);
        assert_eq!(ctx.modulus(), p);
    }
}
