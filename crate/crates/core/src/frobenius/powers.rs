//! Detection of `q/z = g^r` and `y_0 = h^s` with integral `g`, `h`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::FrobeniusPair;
use crate::exact::rat::divisors;
use crate::exact::{PowerSeries, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PowerExponent {
    /// Largest `s` such that the series is an `s`-th power of an integral series.
    Exact(u64),
    /// The series is 1 to the checked order.
    Indeterminate,
    /// The series itself is not integral.
    NonIntegral,
}

impl fmt::Display for PowerExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PowerExponent::Exact(s) => write!(f, "{s}"),
            PowerExponent::Indeterminate => f.write_str("indeterminate"),
            PowerExponent::NonIntegral => f.write_str("non-integral"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PowerExponents {
    pub r: PowerExponent,
    pub s: PowerExponent,
}

/// Largest root index of an integral series `1 + ...`, checked on the first
/// `order` coefficients. Candidates are the divisors of the first nonzero
/// coefficient after the constant term, tried in descending order.
pub fn root_exponent(f: &PowerSeries, order: usize) -> PowerExponent {
    let f = f.truncate(order);
    if f.trunc() == 0 || !f.coeff(0).is_one() || !f.coeffs().iter().all(Rat::is_integer) {
        return PowerExponent::NonIntegral;
    }
    let Some(anchor) = f.coeffs().iter().skip(1).find(|c| !c.is_zero()) else {
        return PowerExponent::Indeterminate;
    };
    let anchor: BigInt = anchor.to_integer();
    for s in divisors(&anchor).into_iter().rev() {
        let Ok(s64) = u64::try_from(&s) else { continue };
        let alpha = Rat::new(BigInt::one(), s);
        if f.pow_rat_while(&alpha, Rat::is_integer).is_ok() {
            return PowerExponent::Exact(s64);
        }
    }
    PowerExponent::Exact(1)
}

/// Exponents `(r, s)` for `q/z` and `y_0`.
pub fn power_exponents(pair: &FrobeniusPair, qz: &PowerSeries, order: usize) -> PowerExponents {
    PowerExponents { r: root_exponent(qz, order), s: root_exponent(&pair.a, order) }
}
