//! Text grammars for polynomials, rational forms, partitions and multisets.
//!
//! * polynomial: coefficients low to high, `1,1,3,4`
//! * rational form: `a1,a2,.../b1,b2,...`, either side may be empty
//! * partition or multiset: `4,2,1`
//!
//! Each parser reports the byte offset of the first offending token.

use std::str::FromStr;

use cgf_core::forms::RationalForm;
use cgf_core::partitions::Partition;
use cgf_core::IntPoly;
use num_bigint::BigInt;

use crate::{CliError, Result};

/// A parsed command-line input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Spec {
    Poly(IntPoly),
    Rational(RationalForm),
    Partition(Partition),
}

fn err(pos: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        pos,
        msg: msg.into(),
    }
}

/// Comma-separated values; `offset` is added to reported positions.
fn list<T: FromStr>(s: &str, offset: usize, allow_empty: bool) -> Result<Vec<T>> {
    if s.trim().is_empty() {
        return if allow_empty {
            Ok(Vec::new())
        } else {
            Err(err(offset, "empty list"))
        };
    }
    let mut out = Vec::new();
    let mut start = 0;
    for piece in s.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let tok = piece.trim();
        let pos = offset + start + lead;
        if tok.is_empty() {
            return Err(err(pos, "missing number"));
        }
        out.push(
            tok.parse()
                .map_err(|_| err(pos, format!("invalid number `{tok}`")))?,
        );
        start += piece.len() + 1;
    }
    Ok(out)
}

pub fn parse_poly(s: &str) -> Result<IntPoly> {
    if s.contains('/') {
        return Err(err(s.find('/').unwrap(), "unexpected `/` in a polynomial"));
    }
    Ok(IntPoly::from_coeffs(list::<BigInt>(s, 0, false)?))
}

pub fn parse_ratform(s: &str) -> Result<RationalForm> {
    let Some(slash) = s.find('/') else {
        return Err(err(s.len(), "expected `/` between numerator and denominator"));
    };
    if let Some(extra) = s[slash + 1..].find('/') {
        return Err(err(slash + 1 + extra, "more than one `/`"));
    }
    let numer = list::<u64>(&s[..slash], 0, true)?;
    let denom = list::<u64>(&s[slash + 1..], slash + 1, true)?;
    let at_zero = |v: &[u64], base: usize, side: &str| -> Result<()> {
        match v.iter().position(|&x| x == 0) {
            Some(_) => Err(err(base, format!("{side} entries must be positive"))),
            None => Ok(()),
        }
    };
    at_zero(&numer, 0, "numerator")?;
    at_zero(&denom, slash + 1, "denominator")?;
    Ok(RationalForm::new(numer, denom)?)
}

pub fn parse_multiset(s: &str) -> Result<Vec<u64>> {
    let v = list::<u64>(s, 0, false)?;
    if v.contains(&0) {
        return Err(err(0, "entries must be positive"));
    }
    Ok(v)
}

pub fn parse_partition(s: &str) -> Result<Partition> {
    let v = list::<u64>(s, 0, true)?;
    Partition::new(v).map_err(|e| err(0, e.to_string()))
}

/// Dispatches on the grammar: anything with `/` is a rational form,
/// otherwise a partition when `partition` is set and a polynomial if not.
pub fn parse_spec(s: &str, partition: bool) -> Result<Spec> {
    if s.contains('/') {
        parse_ratform(s).map(Spec::Rational)
    } else if partition {
        parse_partition(s).map(Spec::Partition)
    } else {
        parse_poly(s).map(Spec::Poly)
    }
}

/// Inverse of [`parse_spec`].
pub fn print_spec(spec: &Spec) -> String {
    match spec {
        Spec::Poly(p) => p.to_string(),
        Spec::Rational(r) => r.to_string(),
        Spec::Partition(l) => join(l.parts()),
    }
}

pub fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}
