//! Exact rational scalar type and formatting helpers.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::Error;

/// Exact rational number used throughout the solvers.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical string form: `p/q` for non-integers, plain `p` otherwise.
pub fn format_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses the output of [`format_rat`].
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let parse_int = |t: &str| {
        t.parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("invalid rational: {s:?}")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let denom = parse_int(d)?;
            if denom.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(parse_int(n)?, denom))
        }
    }
}

/// Decimal rendering with 6 significant digits, for table output only.
pub fn format_decimal(x: &Rat) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    // Scale so the integer part carries 6 significant digits, then round.
    let mut digits = 0i32;
    let abs = x.abs();
    let one = Rat::one();
    let ten = rat(10);
    let mut scaled = abs.clone();
    while scaled >= ten {
        scaled /= &ten;
        digits += 1;
    }
    while scaled < one {
        scaled *= &ten;
        digits -= 1;
    }
    // `digits` is now floor(log10(|x|)); keep 6 significant digits.
    let shift = 5 - digits;
    let mut value = x.clone();
    for _ in 0..shift.max(0) {
        value *= &ten;
    }
    for _ in 0..(-shift).max(0) {
        value /= &ten;
    }
    let rounded = value.round().to_integer();
    let mut s = rounded.abs().to_string();
    let neg = x.is_negative();
    if shift <= 0 {
        for _ in 0..(-shift) {
            s.push('0');
        }
        return format!("{}{}", if neg { "-" } else { "" }, s);
    }
    let shift = shift as usize;
    while s.len() <= shift {
        s.insert(0, '0');
    }
    s.insert(s.len() - shift, '.');
    let mut s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    if s.is_empty() {
        s.push('0');
    }
    format!("{}{}", if neg { "-" } else { "" }, s)
}

/// Least common multiple of the denominators of `values`; 1 for an empty set.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    let mut acc = BigInt::one();
    for v in values {
        acc = acc.lcm(v.denom());
    }
    acc
}

/// Converts a non-negative rational known to be integral into u64.
pub fn to_u64(x: &Rat) -> u64 {
    debug_assert!(x.is_integer());
    x.to_integer().to_u64().expect("value out of u64 range")
}
