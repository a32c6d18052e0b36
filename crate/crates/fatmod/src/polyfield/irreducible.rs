//! Irreducibility testing, polynomial factoring, and fat-polynomial counts
//! over GF(q).
//!
//! Everything here is oracle-side machinery: enumeration and trial division,
//! transparent and exact at desk scale, with every irreducibility decision
//! recorded in [`crate::instrument`]. The composite evaluation pipeline
//! calls none of it.
//!
//! A monic polynomial of degree `2d` is *d-fat* when it has an irreducible
//! factor of degree at least `d + 1`; at least a quarter of all monic
//! degree-`2d` polynomials are d-fat, the field analog of the fat-integer
//! density bound.

use num_bigint::BigUint;


use super::fieldpoly::FieldPoly;
use crate::density::is_prime_u64;
use crate::error::{Error, Result};
use crate::instrument;
use crate::prng::PrngState;

/// Enumeration guard: `q^deg` candidates must stay below this.
const MAX_ENUMERATION: u64 = 2_000_000;

fn check_prime_field(q: u64) -> Result<()> {
    if !is_prime_u64(q) {
        return Err(Error::invalid(format!("field size {q} is not prime")));
    }
    Ok(())
}

fn enumeration_budget(q: u64, deg: u32) -> Result<u64> {
    match q.checked_pow(deg) {
        Some(n) if n <= MAX_ENUMERATION => Ok(n),
        _ => Err(Error::infeasible(format!(
            "enumerating GF({q}) polynomials of degree {deg} is out of desk range"
        ))),
    }
}

/// The monic polynomial of degree `deg` whose non-leading coefficients are
/// the base-q digits of `index`.
fn monic_by_index(q: u64, deg: u32, mut index: u64) -> FieldPoly {
    let mut coeffs = Vec::with_capacity(deg as usize + 1);
    for _ in 0..deg {
        coeffs.push(index % q);
        index /= q;
    }
    coeffs.push(1);
    FieldPoly::new(q, coeffs)
}

fn divisible_by_smaller_irreducible(p: &FieldPoly, smaller: &[FieldPoly]) -> bool {
    let half = p.degree().unwrap_or(0) / 2;
    smaller
        .iter()
        .take_while(|s| s.degree().unwrap_or(0) <= half)
        .any(|s| p.rem(s).is_zero())
}

/// All monic irreducible polynomials over GF(q) of degree 1 through
/// `max_deg`, ascending by degree. Each candidate inspected counts as one
/// irreducibility test.
pub fn irreducibles(q: u64, max_deg: u32) -> Result<Vec<FieldPoly>> {
    check_prime_field(q)?;
    enumeration_budget(q, max_deg)?;
    let mut found: Vec<FieldPoly> = Vec::new();
    for deg in 1..=max_deg {
        for index in 0..q.pow(deg) {
            let candidate = monic_by_index(q, deg, index);
            instrument::record_irreducibility_test();
            if !divisible_by_smaller_irreducible(&candidate, &found) {
                found.push(candidate);
            }
        }
    }
    Ok(found)
}

/// Is `p` irreducible over its field? Constants are not. One instrumented
/// irreducibility test.
pub fn is_irreducible(p: &FieldPoly) -> Result<bool> {
    check_prime_field(p.q())?;
    instrument::record_irreducibility_test();
    let Some(deg) = p.degree() else {
        return Ok(false);
    };
    if deg == 0 {
        return Ok(false);
    }
    if deg == 1 {
        return Ok(true);
    }
    let smaller = irreducibles(p.q(), (deg / 2) as u32)?;
    Ok(!divisible_by_smaller_irreducible(p, &smaller))
}

/// Full factorization into monic irreducibles with multiplicities, plus the
/// leading unit. Trial division by every irreducible of at most half the
/// degree; a non-constant remainder then has no factor up to half its own
/// degree either, so it is itself irreducible. Desk scale only.
pub fn poly_factor(p: &FieldPoly) -> Result<(u64, Vec<(FieldPoly, u32)>)> {
    check_prime_field(p.q())?;
    if p.is_zero() {
        return Err(Error::invalid("cannot factor the zero polynomial"));
    }
    let unit = p.leading();
    let mut rest = p.make_monic();
    let mut factors: Vec<(FieldPoly, u32)> = Vec::new();
    if rest.is_constant() {
        return Ok((unit, factors));
    }
    let half = (rest.degree().unwrap() / 2) as u32;
    let table = irreducibles(p.q(), half)?;
    for candidate in table {
        if rest.is_constant()
            || 2 * candidate.degree().unwrap() > rest.degree().unwrap_or(0)
        {
            break;
        }
        let mut multiplicity = 0;
        loop {
            let (quot, rem) = rest.divmod(&candidate);
            if !rem.is_zero() {
                break;
            }
            rest = quot;
            multiplicity += 1;
        }
        if multiplicity > 0 {
            factors.push((candidate, multiplicity));
        }
    }
    if !rest.is_constant() {
        factors.push((rest, 1));
    }
    Ok((unit, factors))
}

/// Rejection-sample a monic irreducible of exactly degree `deg`, drawing
/// coefficients from the state's stream. The baseline analog of random
/// prime generation, paying one irreducibility test per candidate.
pub fn random_irreducible(q: u64, deg: u32, state: &mut PrngState) -> Result<FieldPoly> {
    check_prime_field(q)?;
    if deg == 0 {
        return Err(Error::invalid("irreducible polynomials have degree >= 1"));
    }
    let big_q = BigUint::from(q);
    loop {
        let mut coeffs = Vec::with_capacity(deg as usize + 1);
        for _ in 0..deg {
            coeffs.push(u64::try_from(state.next_below(&big_q)).unwrap());
        }
        coeffs.push(1);
        let candidate = FieldPoly::new(q, coeffs);
        if is_irreducible(&candidate)? {
            return Ok(candidate);
        }
    }
}

/// Does the even-degree monic polynomial have an irreducible factor of more
/// than half its degree?
pub fn is_d_fat(p: &FieldPoly) -> Result<bool> {
    let Some(deg) = p.degree() else {
        return Err(Error::invalid("the zero polynomial has no fatness"));
    };
    if deg == 0 || deg % 2 != 0 {
        return Err(Error::invalid("fatness is defined for even positive degree"));
    }
    let (_, factors) = poly_factor(p)?;
    Ok(factors
        .iter()
        .any(|(f, _)| f.degree().unwrap() > deg / 2))
}

/// Exact count of d-fat monic polynomials of degree `2d` over GF(q).
///
/// Residual stripping, the field analog of the smooth sieve: divide every
/// irreducible of degree up to `d` fully out of each candidate; whatever
/// remains is a product of irreducibles of degree above `d`, so the
/// candidate is fat exactly when the residual is non-constant.
pub fn count_d_fat(q: u64, d: u32) -> Result<u64> {
    check_prime_field(q)?;
    if d == 0 {
        return Err(Error::invalid("d must be at least 1"));
    }
    let total = enumeration_budget(q, 2 * d)?;
    let small = irreducibles(q, d)?;
    let mut count = 0;
    for index in 0..total {
        let mut rest = monic_by_index(q, 2 * d, index);
        for candidate in &small {
            if rest.is_constant() {
                break;
            }
            loop {
                let (quot, rem) = rest.divmod(candidate);
                if !rem.is_zero() {
                    break;
                }
                rest = quot;
            }
        }
        if !rest.is_constant() {
            count += 1;
        }
    }
    Ok(count)
}

/// The proven density bound: `4 * count_d_fat(q, d) >= q^(2d)`.
pub fn d_fat_lower_bound(q: u64, d: u32) -> BigUint {
    let total = BigUint::from(q).pow(2 * d);
    (total + 3u32) >> 2
}

/// Number of monic degree-`2d` multiples of an irreducible `p` with
/// `deg p > d`: exactly `q^(2d - deg p)`, and the multiple sets of distinct
/// such irreducibles are disjoint.
pub fn count_poly_multiples(p: &FieldPoly, d: u32) -> Result<BigUint> {
    let Some(deg) = p.degree() else {
        return Err(Error::invalid("the zero polynomial divides nothing"));
    };
    if deg <= d as usize {
        return Err(Error::invalid(format!(
            "need deg p > {d}, got degree {deg}"
        )));
    }
    if deg > 2 * d as usize {
        return Err(Error::invalid("degree exceeds the window"));
    }
    if !is_irreducible(p)? {
        return Err(Error::invalid("multiples are counted for irreducibles"));
    }
    Ok(BigUint::from(p.q()).pow(2 * d - deg as u32))
}
