//! Exact rational arithmetic helpers.
//!
//! All derived quantities (densities, multiplicities, efficiencies, bounds)
//! are arbitrary-precision rationals, kept reduced by construction. Text form
//! is `p/q`, or just `p` when the denominator is 1; both forms parse.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::Error;

pub type Rat = BigRational;

/// Rational from a machine-word fraction; panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Rational from an integer.
pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Rational from an unsigned integer.
pub fn rat_uint(p: u64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Parse `p/q` or `p` (optionally signed). The denominator must be positive.
pub fn parse_rat(text: &str) -> Result<Rat, Error> {
    let bad = || Error::Parse { what: "rational", input: text.to_string() };
    let trimmed = text.trim();
    let (num_text, den_text) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let numer: BigInt = num_text.parse().map_err(|_| bad())?;
    let denom: BigInt = den_text.parse().map_err(|_| bad())?;
    if denom <= BigInt::zero() {
        return Err(bad());
    }
    Ok(Rat::new(numer, denom))
}

/// Canonical text form: `p/q`, or `p` for integers.
pub fn rat_to_string(value: &Rat) -> String {
    value.to_string()
}

/// Harmonic number `H_k = 1 + 1/2 + ... + 1/k` (`H_0 = 0`), exactly.
pub fn harmonic(k: u64) -> Rat {
    let mut sum = Rat::zero();
    for j in 1..=k {
        sum += Rat::new(BigInt::one(), BigInt::from(j));
    }
    sum
}
