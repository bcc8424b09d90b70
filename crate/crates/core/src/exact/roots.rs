//! Exact rational roots of rational polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::rat::{divisors, Rat};

/// Rational roots with multiplicity, plus the cofactor without rational roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRoots {
    /// Distinct roots in ascending order with their multiplicities.
    pub roots: Vec<(Rat, usize)>,
    /// Primitive integer cofactor carrying the irrational roots.
    pub residual: Poly,
}

/// `q^d p(a/q)` for an integer polynomial, evaluated in integers.
fn homogeneous_eval(coeffs: &[BigInt], a: &BigInt, q: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    for c in coeffs.iter().rev() {
        acc = acc * a + c * &qpow;
        qpow *= q;
    }
    acc
}

/// Finds all rational roots of a nonzero polynomial.
pub fn rational_roots(p: &Poly) -> RationalRoots {
    assert!(!p.is_zero(), "roots of the zero polynomial");
    let (_, mut rest) = p.primitive_part();
    let mut roots = Vec::new();

    let zero_mult = rest.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        rest = Poly::new(rest.coeffs()[zero_mult..].to_vec());
        roots.push((Rat::zero(), zero_mult));
    }

    if rest.degree().unwrap_or(0) > 0 {
        let ints: Vec<BigInt> = rest.coeffs().iter().map(|c| c.to_integer()).collect();
        let a0 = ints[0].clone();
        let ad = ints[ints.len() - 1].clone();
        let num_divs = divisors(&a0);
        let den_divs = divisors(&ad);
        let mut candidates = Vec::new();
        for q in &den_divs {
            for a in &num_divs {
                if !a.gcd(q).is_one() {
                    continue;
                }
                for a in [a.clone(), -a.clone()] {
                    if homogeneous_eval(&ints, &a, q).is_zero() {
                        candidates.push(Rat::new(a, q.clone()));
                    }
                }
            }
        }
        for r in candidates {
            let lin = Poly::new(vec![-r.clone(), Rat::one()]);
            let mut m = 0;
            while let Some(q) = rest.div_exact(&lin) {
                rest = q;
                m += 1;
            }
            if m > 0 {
                roots.push((r, m));
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    let residual = rest.primitive_part().1;
    RationalRoots { roots, residual }
}

impl RationalRoots {
    /// Sum of the multiplicities of the rational roots.
    pub fn rational_count(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }

    /// Flattened multiset of rational roots, ascending.
    pub fn multiset(&self) -> Vec<Rat> {
        self.roots
            .iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r.clone(), *m))
            .collect()
    }

    pub fn is_fully_rational(&self) -> bool {
        self.residual.degree().unwrap_or(0) == 0
    }
}
