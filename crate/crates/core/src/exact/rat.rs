//! Rational number helpers on top of `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number with arbitrary precision.
pub type Rat = BigRational;
/// Arbitrary precision integer.
pub type Int = BigInt;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`, reduced. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from a big integer.
pub fn rat_int(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// Parses `"17"`, `"-3"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

/// `x^e` for a possibly negative exponent. `None` for `0^negative`.
pub fn pow_i(x: &Rat, e: i64) -> Option<Rat> {
    if e >= 0 {
        Some(num_traits::pow(x.clone(), e as usize))
    } else if x.is_zero() {
        None
    } else {
        Some(num_traits::pow(x.recip(), e.unsigned_abs() as usize))
    }
}

/// Least common multiple of the denominators.
pub fn lcm_denominators<'a, I: IntoIterator<Item = &'a Rat>>(xs: I) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Converts an integral rational to `i64` if it fits.
pub fn to_i64(x: &Rat) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.numer()).ok()
}

/// Floor of a rational as a big integer.
pub fn floor(x: &Rat) -> BigInt {
    x.floor().to_integer()
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rat) -> Rat {
    x - x.floor()
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// Positive divisors of a nonzero integer, ascending.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    let mut divs = vec![BigInt::one()];
    if n.is_one() {
        return divs;
    }
    let factors = num_prime::nt_funcs::factorize(n.to_biguint().expect("positive"));
    for (p, e) in factors {
        let p = BigInt::from(p);
        let mut next = Vec::with_capacity(divs.len() * (e + 1));
        for d in &divs {
            let mut q = d.clone();
            next.push(q.clone());
            for _ in 0..e {
                q *= &p;
                next.push(q.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Renders a rational the way the file formats expect: `n` or `p/q`.
pub fn fmt_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
