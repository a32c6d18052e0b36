//! Command-line front end.
//!
//! Every randomized command prints the effective seed as its first output
//! line; re-running with that seed reproduces the primary `key=value`
//! lines byte for byte. Timing figures from `bench` live in the trailing
//! table and in the JSON report, not in the primary lines, because
//! wall-clock numbers do not replay.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use crate::density::{
    b_fat_lower_bound, count_b_fat, is_prime_u64_quiet, random_prime, MAX_COUNT_B,
};
use crate::dyncore::{composite_phase, corpus, verify_phase};
use crate::error::{Error, Result};
use crate::instrument::CounterSnapshot;
use crate::polyfield::context::{
    poly_composite_phase, poly_verify_phase, PolyContext, PolyOutput,
};
use crate::polyfield::irreducible::{count_d_fat, d_fat_lower_bound};
use crate::prng::PrngState;
use crate::sparsity::count::{
    bit_length_bound, count_terms_amplified, count_terms_mod_prime, count_terms_with_b,
    SparsityResult,
};
use crate::sparsity::gf::{count_terms_gf_amplified, GfSparsityResult};
use crate::sparsity::poly::{KroneckerBox, ModularBlackBox, SparsePoly};

#[derive(Parser)]
#[command(
    name = "fatmod",
    about = "Exact computation modulo random fat integers, no primality tests",
    version
)]
struct Cli {
    /// Emit a single JSON document instead of key=value lines.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count b-fat integers in [2^(2b-1), 2^(2b)) and check the density bound.
    Density {
        /// Window parameter; feasible range 1..=12.
        #[arg(long)]
        b: u32,
    },
    /// Count d-fat monic polynomials over GF(q) and check the quarter bound.
    DensityPoly {
        /// Field size, a prime.
        #[arg(long)]
        q: u64,
        /// Half the modulus degree.
        #[arg(long)]
        d: u32,
    },
    /// Count the terms of a sparse polynomial through modular probes.
    Sparsity(SparsityArgs),
    /// Time random prime generation against composite-modulus counting.
    Bench {
        /// Comma-separated bit parameters; the modulus has 2b bits.
        #[arg(long, value_delimiter = ',', default_value = "16,32,64,128")]
        bits: Vec<u32>,
        /// Timed trials per row, after one discarded warm-up.
        #[arg(long, default_value_t = 5)]
        trials: u32,
        /// Hex seed; omitted means fresh entropy, echoed for replay.
        #[arg(long)]
        seed: Option<String>,
    },
    /// Run the replay-verification corpus and the counter cleanliness check.
    Selftest {
        /// Bit parameter for the integer contexts.
        #[arg(long, default_value_t = 8)]
        b: u32,
        /// Seeds per hosted program.
        #[arg(long, default_value_t = 40)]
        trials: u64,
        /// Hex seed; omitted means fresh entropy, echoed for replay.
        #[arg(long)]
        seed: Option<String>,
    },
}

#[derive(Parser)]
struct SparsityArgs {
    /// Polynomial file: `nvars K` header, then `COEFF E1 .. EK` lines.
    #[arg(long)]
    poly: PathBuf,
    /// Inclusive per-variable degree bound D.
    #[arg(long)]
    degree_bound: u64,
    /// Height bound H >= 2 on coefficient magnitudes (decimal).
    #[arg(long)]
    height_bound: String,
    /// Independent repetitions combined by maximum.
    #[arg(long, default_value_t = 1)]
    reps: u32,
    /// Hex seed; omitted means fresh entropy, echoed for replay.
    #[arg(long)]
    seed: Option<String>,
    /// Backend: random fat composite, random genuine prime, or GF(q)[x].
    #[arg(long, value_enum, default_value_t = Mode::Composite)]
    mode: Mode,
    /// Base field size for --mode gf; must be prime.
    #[arg(long)]
    q: Option<u64>,
    /// Extension degree override for --mode gf.
    #[arg(long)]
    ext_degree: Option<u32>,
    /// Also print probe counts, moduli, and split statistics.
    #[arg(long)]
    verbose: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Composite,
    Prime,
    Gf,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Composite => "composite",
            Mode::Prime => "prime",
            Mode::Gf => "gf",
        }
    }
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Density { b } => cmd_density(b, cli.json),
        Command::DensityPoly { q, d } => cmd_density_poly(q, d, cli.json),
        Command::Sparsity(args) => cmd_sparsity(&args, cli.json),
        Command::Bench { bits, trials, seed } => cmd_bench(&bits, trials, seed, cli.json),
        Command::Selftest { b, trials, seed } => cmd_selftest(b, trials, seed, cli.json),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Resolve the seed argument, drawing from entropy when absent, and return
/// the hex string to echo alongside the parsed state.
fn resolve_seed(seed: Option<String>) -> Result<(String, PrngState)> {
    let hex_seed = match seed {
        Some(s) => s.trim().to_string(),
        None => hex::encode(rand::random::<[u8; 32]>()),
    };
    let state = PrngState::from_seed_hex(&hex_seed)?;
    Ok((hex_seed, state))
}

fn cmd_density(b: u32, as_json: bool) -> Result<bool> {
    if !(1..=MAX_COUNT_B).contains(&b) {
        return Err(Error::invalid(format!(
            "--b must lie in 1..={MAX_COUNT_B} for exact counting"
        )));
    }
    let count = count_b_fat(b)?;
    let bound = b_fat_lower_bound(b);
    let window = 1u64 << (2 * b - 1);
    let fraction = count as f64 / window as f64;
    let pass = count >= bound;
    if as_json {
        print_json(&json!({
            "command": "density",
            "b": b,
            "window_low": window,
            "window_size": window,
            "count": count,
            "bound": bound,
            "fraction": fraction,
            "pass": pass,
        }));
    } else {
        println!("b={b}");
        println!("window=[2^{}, 2^{})", 2 * b - 1, 2 * b);
        println!("count={count}");
        println!("bound={bound}");
        println!("fraction={fraction:.6}");
        println!("result={}", verdict(pass));
    }
    Ok(pass)
}

fn cmd_density_poly(q: u64, d: u32, as_json: bool) -> Result<bool> {
    if !is_prime_u64_quiet(q) {
        return Err(Error::invalid(format!("--q must be prime, got {q}")));
    }
    if d < 1 {
        return Err(Error::invalid("--d must be at least 1"));
    }
    let count = count_d_fat(q, d)?;
    let bound = d_fat_lower_bound(q, d);
    let total = BigUint::from(q).pow(2 * d);
    let fraction = count as f64 / biguint_f64(&total);
    let pass = BigUint::from(4u32) * count >= total;
    if as_json {
        print_json(&json!({
            "command": "density-poly",
            "q": q,
            "d": d,
            "count": count,
            "bound": bound.to_string(),
            "total": total.to_string(),
            "fraction": fraction,
            "pass": pass,
        }));
    } else {
        println!("q={q}");
        println!("d={d}");
        println!("count={count}");
        println!("bound={bound}");
        println!("total={total}");
        println!("fraction={fraction:.6}");
        println!("result={}", verdict(pass));
    }
    Ok(pass)
}

fn cmd_sparsity(args: &SparsityArgs, as_json: bool) -> Result<bool> {
    if args.reps == 0 {
        return Err(Error::invalid("--reps must be at least 1"));
    }
    let poly = SparsePoly::from_file(&args.poly)?;
    let height: BigUint = args
        .height_bound
        .parse()
        .map_err(|_| Error::invalid(format!("bad --height-bound {:?}", args.height_bound)))?;
    let (hex_seed, state) = resolve_seed(args.seed.clone())?;
    match args.mode {
        Mode::Composite | Mode::Prime => {
            let kb = KroneckerBox::new(&poly, args.degree_bound, &height)?;
            let result = if args.mode == Mode::Composite {
                count_terms_amplified(&kb, &state, args.reps)?
            } else {
                prime_mode_runs(&kb, &state, args.reps)?
            };
            emit_sparsity(args, &hex_seed, &result, as_json);
        }
        Mode::Gf => {
            let q = args
                .q
                .ok_or_else(|| Error::invalid("--mode gf requires --q"))?;
            if !is_prime_u64_quiet(q) {
                return Err(Error::invalid(format!("--q must be prime, got {q}")));
            }
            let result =
                count_terms_gf_amplified(&poly, q, args.ext_degree, &state, args.reps)?;
            emit_sparsity_gf(args, &hex_seed, q, &result, as_json);
        }
    }
    Ok(true)
}

/// Prime-backend repetitions: each child seed draws its own genuine random
/// prime (the only instrumented primality tests in this command) and counts
/// against it; results combine by maximum like the composite path.
fn prime_mode_runs(
    kb: &KroneckerBox<'_>,
    seed: &PrngState,
    reps: u32,
) -> Result<SparsityResult> {
    let b = bit_length_bound(kb.degree_bound(), &kb.height_bound())?;
    let mut best: Option<SparsityResult> = None;
    let mut probes = 0u64;
    for i in 0..reps {
        let child = seed.child(u64::from(i));
        let mut gen = child.child(u64::MAX);
        let p = random_prime(2 * b, &mut gen);
        let run = count_terms_mod_prime(kb, &p, b, &child)?;
        probes += run.probes;
        let better = match &best {
            None => true,
            Some(b) => run.terms > b.terms,
        };
        if better {
            best = Some(run);
        }
    }
    let mut best = best.expect("reps >= 1");
    best.probes = probes;
    Ok(best)
}

fn emit_sparsity(args: &SparsityArgs, hex_seed: &str, r: &SparsityResult, as_json: bool) {
    if as_json {
        print_json(&json!({
            "command": "sparsity",
            "seed": hex_seed,
            "mode": args.mode.name(),
            "reps": args.reps,
            "t": r.terms,
            "truncated": r.truncated,
            "aborted": r.aborted,
            "probes": r.probes,
            "bit_length": r.bit_length,
            "initial_modulus": r.initial_modulus.to_string(),
            "final_modulus": r.final_modulus.to_string(),
            "splits": r.splits,
        }));
        return;
    }
    println!("seed={hex_seed}");
    println!("mode={}", args.mode.name());
    println!("t={}", r.terms);
    if args.verbose {
        println!("reps={}", args.reps);
        println!("probes={}", r.probes);
        println!("bit_length={}", r.bit_length);
        println!("initial_modulus={}", r.initial_modulus);
        println!("final_modulus={}", r.final_modulus);
        println!("splits={}", r.splits);
        println!("truncated={}", r.truncated);
        println!("aborted={}", r.aborted);
    }
}

fn emit_sparsity_gf(
    args: &SparsityArgs,
    hex_seed: &str,
    q: u64,
    r: &GfSparsityResult,
    as_json: bool,
) {
    if as_json {
        print_json(&json!({
            "command": "sparsity",
            "seed": hex_seed,
            "mode": "gf",
            "q": q,
            "reps": args.reps,
            "t": r.terms,
            "truncated": r.truncated,
            "aborted": r.aborted,
            "probes": r.probes,
            "ext_degree": r.ext_degree,
            "initial_modulus": r.initial_modulus.to_string(),
            "final_modulus": r.final_modulus.to_string(),
            "splits": r.splits,
        }));
        return;
    }
    println!("seed={hex_seed}");
    println!("mode=gf");
    println!("q={q}");
    println!("t={}", r.terms);
    if args.verbose {
        println!("reps={}", args.reps);
        println!("probes={}", r.probes);
        println!("ext_degree={}", r.ext_degree);
        println!("initial_modulus={}", r.initial_modulus);
        println!("final_modulus={}", r.final_modulus);
        println!("splits={}", r.splits);
        println!("truncated={}", r.truncated);
        println!("aborted={}", r.aborted);
    }
}

struct BenchRow {
    bits: u32,
    method: &'static str,
    mean_ms: f64,
    std_ms: f64,
    trials: u32,
}

fn cmd_bench(bits: &[u32], trials: u32, seed: Option<String>, as_json: bool) -> Result<bool> {
    if trials < 3 {
        return Err(Error::invalid("--trials must be at least 3"));
    }
    if bits.iter().any(|&b| !(4..=1024).contains(&b)) {
        return Err(Error::invalid("--bits entries must lie in 4..=1024"));
    }
    let (hex_seed, state) = resolve_seed(seed)?;
    // Eight-term black box, small enough to run at every bit size.
    let poly = SparsePoly::new(
        1,
        (0..8)
            .map(|i| (num_bigint::BigInt::from(i + 1), vec![i as u64]))
            .collect(),
    )?;
    let kb = KroneckerBox::new(&poly, 7, &BigUint::from(8u32))?;
    let mut rows = Vec::new();
    let snapshot = CounterSnapshot::take();
    let mut composite_primality = 0u64;
    for (bi, &b) in bits.iter().enumerate() {
        let base = state.child(bi as u64);
        let time_prime = |i: u32| {
            let mut gen = base.child(u64::from(i)).child(1);
            let start = Instant::now();
            let p = random_prime(2 * b, &mut gen);
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            assert!(p.bits() == u64::from(2 * b));
            elapsed
        };
        let time_composite = |i: u32| {
            let child = base.child(u64::from(i)).child(2);
            let before = CounterSnapshot::take();
            let start = Instant::now();
            let r = count_terms_with_b(&kb, b, &child).expect("b >= 4");
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            assert!(r.terms <= 8);
            (elapsed, before.delta().primality_tests)
        };
        time_prime(u32::MAX); // warm-up, discarded
        let prime_samples: Vec<f64> = (0..trials).map(time_prime).collect();
        time_composite(u32::MAX);
        let mut composite_samples = Vec::with_capacity(trials as usize);
        for i in 0..trials {
            let (ms, delta) = time_composite(i);
            composite_samples.push(ms);
            composite_primality += delta;
        }
        let (pm, ps) = mean_std(&prime_samples);
        let (cm, cs) = mean_std(&composite_samples);
        rows.push(BenchRow {
            bits: b,
            method: "prime_gen",
            mean_ms: pm,
            std_ms: ps,
            trials,
        });
        rows.push(BenchRow {
            bits: b,
            method: "composite_count",
            mean_ms: cm,
            std_ms: cs,
            trials,
        });
    }
    let total_delta = snapshot.delta().primality_tests;
    let pass = composite_primality == 0;
    if as_json {
        let rows_json: Vec<_> = rows
            .iter()
            .map(|r| {
                json!({
                    "bits": r.bits,
                    "method": r.method,
                    "mean_ms": r.mean_ms,
                    "std_ms": r.std_ms,
                    "trials": r.trials,
                })
            })
            .collect();
        print_json(&json!({
            "command": "bench",
            "seed": hex_seed,
            "trials": trials,
            "rows": rows_json,
            "composite_primality_tests": composite_primality,
            "total_primality_tests": total_delta,
            "pass": pass,
        }));
        return Ok(pass);
    }
    println!("seed={hex_seed}");
    println!("trials={trials}");
    println!(
        "bits={}",
        bits.iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    println!("composite_primality_tests={composite_primality}");
    println!("result={}", verdict(pass));
    println!();
    println!(
        "{:>6}  {:<16} {:>12} {:>12} {:>7}",
        "bits", "method", "mean_ms", "std_ms", "trials"
    );
    for r in &rows {
        println!(
            "{:>6}  {:<16} {:>12.4} {:>12.4} {:>7}",
            r.bits, r.method, r.mean_ms, r.std_ms, r.trials
        );
    }
    Ok(pass)
}

fn cmd_selftest(b: u32, trials: u64, seed: Option<String>, as_json: bool) -> Result<bool> {
    if !(2..=64).contains(&b) {
        return Err(Error::invalid("--b must lie in 2..=64"));
    }
    if trials < 1 {
        return Err(Error::invalid("--trials must be at least 1"));
    }
    let (hex_seed, state) = resolve_seed(seed)?;
    let programs = corpus();
    let mut integer_replays = 0u64;
    let mut integer_failures = 0u64;
    let mut splits = 0u64;
    let mut composite_tests = 0u64;
    for (pi, program) in programs.iter().enumerate() {
        for i in 0..trials {
            let child = state.child((pi as u64) << 32 | i);
            let before = CounterSnapshot::take();
            let composite = composite_phase(program.as_ref(), b, &child);
            let d = before.delta();
            composite_tests += d.primality_tests + d.irreducibility_tests;
            let report = verify_phase(program.as_ref(), b, &child, &composite)?;
            integer_replays += 1;
            splits += report.composite.splits;
            if !report.ok() {
                integer_failures += 1;
            }
        }
    }
    let poly_trials = trials.min(20);
    let mut poly_replays = 0u64;
    let mut poly_failures = 0u64;
    let poly_program = |ctx: &mut PolyContext| {
        let x = ctx.rand();
        let mut acc = ctx.constant_scalar(1);
        for i in 0..3u64 {
            let shift = ctx.constant_scalar(i);
            let moved = ctx.add(&x, &shift);
            if ctx.is_zero(&moved) {
                continue;
            }
            let inv = ctx.inverse(&moved)?;
            acc = ctx.mul(&acc, &inv);
        }
        Ok(PolyOutput::Algebraic(acc))
    };
    for q in [2u64, 3] {
        for i in 0..poly_trials {
            let child = state.child(0xF000_0000_0000_0000 | (q << 32) | i);
            let before = CounterSnapshot::take();
            let composite = poly_composite_phase(&poly_program, q, 3, &child);
            let d = before.delta();
            composite_tests += d.primality_tests + d.irreducibility_tests;
            let report = poly_verify_phase(&poly_program, 3, &child, &composite)?;
            poly_replays += 1;
            if !report.ok() {
                poly_failures += 1;
            }
        }
    }
    let pass = integer_failures == 0 && poly_failures == 0 && composite_tests == 0 && splits > 0;
    if as_json {
        print_json(&json!({
            "command": "selftest",
            "seed": hex_seed,
            "b": b,
            "trials": trials,
            "integer_replays": integer_replays,
            "integer_failures": integer_failures,
            "poly_replays": poly_replays,
            "poly_failures": poly_failures,
            "splits": splits,
            "composite_phase_primality_or_irreducibility_tests": composite_tests,
            "pass": pass,
        }));
    } else {
        println!("seed={hex_seed}");
        println!("b={b}");
        println!("trials={trials}");
        println!("integer_replays={integer_replays}");
        println!("integer_failures={integer_failures}");
        println!("poly_replays={poly_replays}");
        println!("poly_failures={poly_failures}");
        println!("splits={splits}");
        println!("composite_phase_tests={composite_tests}");
        println!("result={}", verdict(pass));
    }
    Ok(pass)
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn print_json(doc: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(doc).expect("serializable"));
}

fn biguint_f64(n: &BigUint) -> f64 {
    use num_traits::ToPrimitive;
    n.to_f64().unwrap_or(f64::MAX)
}

fn mean_std(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}
