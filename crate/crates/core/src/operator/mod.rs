//! θ-operators `D = Σ z^i P_i(θ)` and their transformations.

mod classical;
mod exponents;
mod transform;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{Poly, PowerSeries, Rat};

pub use classical::{stirling2, ClassicalForm};
pub use exponents::{LocalExponents, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("operator has no terms")]
    EmptyOperator,
    #[error("first and last θ-polynomial must be nonzero")]
    ZeroBoundaryTerm,
    #[error("leading coefficient of the classical form vanishes")]
    DegenerateLeadingCoefficient,
    #[error("scaling factor must be nonzero")]
    ZeroScale,
    #[error("twist {0} is not congruent modulo 1 to any exponent at infinity")]
    NonClearableTwist(String),
}

/// `D = Σ_{i=0}^{k} z^i P_i(θ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaOperator {
    terms: Vec<Poly>,
    order: usize,
}

impl ThetaOperator {
    pub fn new(terms: Vec<Poly>) -> Result<Self, OperatorError> {
        let (first, last) = match (terms.first(), terms.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(OperatorError::EmptyOperator),
        };
        if first.is_zero() || last.is_zero() {
            return Err(OperatorError::ZeroBoundaryTerm);
        }
        let order = terms.iter().filter_map(Poly::degree).max().unwrap_or(0);
        Ok(ThetaOperator { terms, order })
    }

    /// Drops leading and trailing zero terms before validating. Leading zero
    /// terms only contribute an overall left factor of `z`.
    pub fn from_terms_trimmed(mut terms: Vec<Poly>) -> Result<Self, OperatorError> {
        while terms.last().is_some_and(Poly::is_zero) {
            terms.pop();
        }
        let lead = terms.iter().take_while(|p| p.is_zero()).count();
        terms.drain(..lead);
        ThetaOperator::new(terms)
    }

    /// Convenience constructor from integer coefficient rows.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, OperatorError> {
        ThetaOperator::new(rows.iter().map(|r| Poly::from_ints(r)).collect())
    }

    pub fn terms(&self) -> &[Poly] {
        &self.terms
    }

    pub fn term(&self, i: usize) -> &Poly {
        &self.terms[i]
    }

    /// Highest power of `z`.
    pub fn k(&self) -> usize {
        self.terms.len() - 1
    }

    /// Highest power of `θ`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// `(D f)_n = Σ_i P_i(n-i) f_{n-i}`; the truncation shrinks by `k`.
    pub fn apply(&self, f: &PowerSeries) -> PowerSeries {
        let n_out = f.trunc().saturating_sub(self.k());
        PowerSeries::from_fn(n_out, |n| {
            let mut acc = Rat::zero();
            for (i, p) in self.terms.iter().enumerate().take(n + 1) {
                let c = f.coeff(n - i);
                if !c.is_zero() && !p.is_zero() {
                    acc += p.eval_i64((n - i) as i64) * c;
                }
            }
            acc
        })
    }

    /// `λ^i P_i`: the holomorphic solution at `z` becomes the old one at `λz`.
    pub fn scale_z(&self, lam: &Rat) -> Result<Self, OperatorError> {
        if lam.is_zero() {
            return Err(OperatorError::ZeroScale);
        }
        let mut p = Rat::one();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(t.scale(&p));
            p *= lam;
        }
        ThetaOperator::new(terms)
    }

    /// Operator product `self ∘ other`, using `θ z^j = z^j (θ + j)`.
    pub fn compose(&self, other: &ThetaOperator) -> ThetaOperator {
        let mut terms = vec![Poly::zero(); self.terms.len() + other.terms.len() - 1];
        for (i, p) in self.terms.iter().enumerate() {
            for (j, q) in other.terms.iter().enumerate() {
                let shifted = p.shift(&Rat::from_integer(BigInt::from(j)));
                terms[i + j] = &terms[i + j] + &(&shifted * q);
            }
        }
        ThetaOperator::from_terms_trimmed(terms).expect("product of nonzero operators")
    }

    /// Coefficient columns `q_m(z) = Σ_i p_{i,m} z^i`, one per θ-degree.
    fn columns(&self) -> Vec<Poly> {
        (0..=self.order)
            .map(|m| Poly::new(self.terms.iter().map(|p| p.coeff(m)).collect()))
            .collect()
    }

    fn from_columns(cols: &[Poly]) -> Result<Self, OperatorError> {
        let k = cols.iter().filter_map(Poly::degree).max().unwrap_or(0);
        let terms = (0..=k)
            .map(|i| Poly::new(cols.iter().map(|c| c.coeff(i)).collect()))
            .collect();
        ThetaOperator::from_terms_trimmed(terms)
    }

    /// Canonical representative: common polynomial left factor in `z`
    /// removed, integer coefficients with content 1, positive leading
    /// coefficient of `P_0`. Scaling of `z` is not canonicalized.
    pub fn normalize(&self) -> ThetaOperator {
        let cols = self.columns();
        let g = cols.iter().fold(Poly::zero(), |acc, c| acc.gcd(c));
        let base = if g.degree().unwrap_or(0) > 0 {
            let cols: Vec<Poly> = cols
                .iter()
                .map(|c| c.div_exact(&g).expect("gcd divides every column"))
                .collect();
            ThetaOperator::from_columns(&cols).expect("nonzero operator")
        } else {
            self.clone()
        };

        let den = base
            .terms
            .iter()
            .flat_map(|p| p.coeffs())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut content = base
            .terms
            .iter()
            .flat_map(|p| p.coeffs())
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c * Rat::from_integer(den.clone())).to_integer()));
        if base.terms[0].lead().is_negative() {
            content = -content;
        }
        let factor = Rat::new(den, content);
        ThetaOperator {
            terms: base.terms.iter().map(|p| p.scale(&factor)).collect(),
            order: base.order,
        }
    }

    /// Finds `λ` with `normalize(scale_z(self, λ)) == normalize(other)`.
    pub fn scaling_to(&self, other: &ThetaOperator) -> Option<Rat> {
        let a = self.normalize();
        let b = other.normalize();
        if a.k() != b.k() || a.order != b.order {
            return None;
        }
        let (i, ratio) = a.terms.iter().zip(&b.terms).enumerate().skip(1).find_map(|(i, (p, q))| {
            if p.is_zero() {
                return None;
            }
            let m = (0..=a.order).find(|&m| !p.coeff(m).is_zero())?;
            let r0 = first_ratio(&a.terms[0], &b.terms[0])?;
            Some((i, q.coeff(m) / p.coeff(m) / r0))
        })?;
        for lam in rational_roots_of(&ratio, i as u32) {
            if a.scale_z(&lam).ok()?.normalize() == b {
                return Some(lam);
            }
        }
        None
    }
}

fn first_ratio(p: &Poly, q: &Poly) -> Option<Rat> {
    let m = p.coeffs().iter().position(|c| !c.is_zero())?;
    (!q.coeff(m).is_zero()).then(|| q.coeff(m) / p.coeff(m))
}

/// Rational `x` with `x^e = r`.
fn rational_roots_of(r: &Rat, e: u32) -> Vec<Rat> {
    if r.is_zero() {
        return Vec::new();
    }
    let root = |n: &BigInt| -> Option<BigInt> {
        let x = n.abs().nth_root(e);
        (num_traits::pow(x.clone(), e as usize) == n.abs()).then_some(x)
    };
    let (Some(p), Some(q)) = (root(r.numer()), root(r.denom())) else {
        return Vec::new();
    };
    let x = Rat::new(p, q);
    if e % 2 == 1 {
        vec![if r.is_negative() { -x } else { x }]
    } else if r.is_negative() {
        Vec::new()
    } else {
        vec![x.clone(), -x]
    }
}

impl fmt::Display for ThetaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, p) in self.terms.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let body = p.fmt_in("θ");
            match i {
                0 => write!(f, "{body}")?,
                1 => write!(f, "z*({body})")?,
                _ => write!(f, "z^{i}*({body})")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use proptest::prelude::*;

    pub(crate) fn quintic() -> ThetaOperator {
        ThetaOperator::from_int_rows(&[&[0, 0, 0, 0, 1], &[-120, -1250, -4375, -6250, -3125]]).unwrap()
    }

    fn geometric() -> ThetaOperator {
        ThetaOperator::from_int_rows(&[&[0, 1], &[-1, -1]]).unwrap()
    }

    #[test]
    fn construction_rules() {
        let q = quintic();
        assert_eq!((q.order(), q.k()), (4, 1));
        assert_eq!(ThetaOperator::from_int_rows(&[&[0, 0, 0, 0, 1]]).unwrap().k(), 0);
        assert_eq!(
            ThetaOperator::from_int_rows(&[&[], &[0, 1]]),
            Err(OperatorError::ZeroBoundaryTerm)
        );
        assert_eq!(ThetaOperator::new(vec![]), Err(OperatorError::EmptyOperator));
    }

    #[test]
    fn apply_annihilates_known_solutions() {
        let ones = PowerSeries::from_ints(&[1; 12]);
        assert!(geometric().apply(&ones).is_zero());
        assert_eq!(geometric().apply(&ones).trunc(), 11);
        let theta4 = ThetaOperator::from_int_rows(&[&[0, 0, 0, 0, 1]]).unwrap();
        assert!(theta4.apply(&PowerSeries::one(5)).is_zero());
    }

    #[test]
    fn normalize_clears_scalars_and_z_factors() {
        let q = quintic();
        let scaled = ThetaOperator::new(q.terms().iter().map(|p| p.scale(&ratio(-2, 3))).collect()).unwrap();
        assert_eq!(scaled.normalize(), q);
        assert_eq!(q.normalize().normalize(), q);
        // (1 - z) D has the same canonical form as D.
        let left = ThetaOperator::from_int_rows(&[&[1], &[-1]]).unwrap();
        assert_eq!(left.compose(&q).normalize(), q);
    }

    #[test]
    fn normalize_expands_pochhammer_form() {
        // -5^5 z (θ+1/5)(θ+2/5)(θ+3/5)(θ+4/5)
        let p1 = (1..=4)
            .fold(Poly::one(), |acc, a| &acc * &Poly::linear(ratio(a, 5)))
            .scale(&rat(-3125));
        let d = ThetaOperator::new(vec![Poly::monomial(rat(1), 4), p1]).unwrap();
        assert_eq!(d.normalize(), quintic());
    }

    #[test]
    fn scaling_is_recovered() {
        let q = quintic();
        let s = q.scale_z(&ratio(-3, 7)).unwrap();
        assert_eq!(q.scaling_to(&s), Some(ratio(-3, 7)));
        assert_eq!(q.scaling_to(&q), Some(rat(1)));
        assert_eq!(q.scale_z(&rat(0)), Err(OperatorError::ZeroScale));
    }

    #[test]
    fn composition_matches_sequential_application() {
        let a = geometric();
        let b = quintic();
        let f = PowerSeries::from_fn(12, |n| rat((n * n) as i64 + 3));
        let lhs = a.compose(&b).apply(&f);
        let rhs = a.apply(&b.apply(&f));
        assert_eq!(lhs, rhs);
    }

    fn small_operator() -> impl Strategy<Value = ThetaOperator> {
        prop::collection::vec(prop::collection::vec(-5i64..=5, 1..4), 1..4).prop_filter_map(
            "boundary terms",
            |rows| {
                let terms: Vec<Poly> = rows.iter().map(|r| Poly::from_ints(r)).collect();
                ThetaOperator::new(terms).ok()
            },
        )
    }

    proptest! {
        #[test]
        fn apply_matches_direct_theta_expansion(d in small_operator(), f in prop::collection::vec(-4i64..=4, 6)) {
            // Oracle: expand each z^i P_i(θ) acting on z^n monomially.
            let f = PowerSeries::from_ints(&f);
            let got = d.apply(&f);
            let mut full = vec![Rat::zero(); f.trunc() + d.k()];
            for (n, c) in f.coeffs().iter().enumerate() {
                for (i, p) in d.terms().iter().enumerate() {
                    let mut theta_pow = Rat::one();
                    for m in 0..=d.order() {
                        full[n + i] += p.coeff(m) * &theta_pow * c;
                        theta_pow *= rat(n as i64);
                    }
                }
            }
            prop_assert_eq!(got.coeffs(), &full[..got.trunc()]);
        }

        #[test]
        fn scaling_is_a_group_action(d in small_operator(), a in 1i64..5, b in -4i64..-1) {
            let lhs = d.scale_z(&rat(a)).unwrap().scale_z(&ratio(1, b)).unwrap().normalize();
            let rhs = d.scale_z(&ratio(a, b)).unwrap().normalize();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn normalize_is_idempotent(d in small_operator()) {
            let n = d.normalize();
            prop_assert_eq!(n.normalize(), n);
        }
    }
}
