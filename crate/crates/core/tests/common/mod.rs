//! Independent reference computations shared by the integration suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};

use cyeq::db::{bundled, find, DatasetRecord};
use cyeq::exact::{Poly, PowerSeries, Rat};
use cyeq::operator::ThetaOperator;

pub fn record(id: &str) -> DatasetRecord {
    find(&bundled(), id).unwrap_or_else(|| panic!("record {id}")).clone()
}

pub fn op(id: &str) -> ThetaOperator {
    record(id).operator
}

pub fn fact(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    fact(n) / (fact(k) * fact(n - k))
}

pub fn int(x: BigInt) -> Rat {
    Rat::from_integer(x)
}

/// `a + b ε` with `ε² = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual(pub Rat, pub Rat);

impl Dual {
    fn add(&self, o: &Dual) -> Dual {
        Dual(&self.0 + &o.0, &self.1 + &o.1)
    }
    fn mul(&self, o: &Dual) -> Dual {
        Dual(&self.0 * &o.0, &self.0 * &o.1 + &self.1 * &o.0)
    }
    fn div(&self, o: &Dual) -> Dual {
        let a = &self.0 / &o.0;
        Dual(a.clone(), (&self.1 - &a * &o.1) / &o.0)
    }
}

fn eval_dual(p: &Poly, x: &Dual) -> Dual {
    p.coeffs()
        .iter()
        .rev()
        .fold(Dual(Rat::zero(), Rat::zero()), |acc, c| acc.mul(x).add(&Dual(c.clone(), Rat::zero())))
}

/// `A_n(ε)` from the recursion at `n + ε`; the `ε` parts are the
/// coefficients of the single-log solution.
pub fn eps_expansion(d: &ThetaOperator, n: usize) -> Vec<Dual> {
    let mut a = vec![Dual(Rat::one(), Rat::zero())];
    for m in 1..n {
        let mut acc = Dual(Rat::zero(), Rat::zero());
        for (i, p) in d.terms().iter().enumerate().skip(1) {
            if i > m {
                break;
            }
            let x = Dual(Rat::from_integer(BigInt::from(m - i)), Rat::one());
            acc = acc.add(&eval_dual(p, &x).mul(&a[m - i]));
        }
        let x = Dual(Rat::from_integer(BigInt::from(m)), Rat::one());
        let p0 = eval_dual(d.term(0), &x);
        let q = acc.div(&p0);
        a.push(Dual(-q.0, -q.1));
    }
    a
}

/// `1 + Σ_d N_d d³ q^d / (1 - q^d)` expanded term by term.
pub fn lambert_direct(n: &[Rat], trunc: usize) -> PowerSeries {
    let mut c = vec![Rat::zero(); trunc];
    if trunc > 0 {
        c[0] = Rat::one();
    }
    for (i, nd) in n.iter().enumerate() {
        let d = i + 1;
        let cube = Rat::from_integer(BigInt::from(d * d * d));
        let mut m = d;
        while m < trunc {
            c[m] += nd * &cube;
            m += d;
        }
    }
    PowerSeries::new(c)
}

/// `(5n)!/n!^5`.
pub fn quintic_coeff(n: u64) -> BigInt {
    fact(5 * n) / num_traits::pow(fact(n), 5)
}
