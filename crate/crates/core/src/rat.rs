//! Exact rational scalars and their canonical text form.
//!
//! All scalars in this crate are `BigRational`. JSON output renders them as
//! `"num/den"` strings (reduced, positive denominator) so that golden files
//! stay diffable and no precision is lost.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;
pub type Int = BigInt;

pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat_frac(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Canonical text form `num/den` (always includes the denominator).
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rat_from_string(s: &str) -> Option<Rat> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: Int = num.parse().ok()?;
    let den: Int = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rat::new(num, den))
}

/// Human form used in element pretty-printing: integers drop the denominator.
pub fn rat_display(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Signed prefix form for term lists: `+3`, `-1/2`.
pub fn rat_signed(r: &Rat) -> String {
    if r.is_negative() {
        format!("-{}", rat_display(&-r.clone()))
    } else {
        format!("+{}", rat_display(r))
    }
}

pub fn is_one(r: &Rat) -> bool {
    r.is_one()
}
