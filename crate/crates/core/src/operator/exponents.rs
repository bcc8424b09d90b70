//! Indicial polynomials and local exponents.

use std::fmt;

use super::ThetaOperator;
use crate::exact::{fmt_rat, rat, rational_roots, Poly, Rat};

/// A point of the projective line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Finite(Rat),
    Infinity,
}

impl Point {
    pub fn zero() -> Self {
        Point::Finite(rat(0))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(x) => f.write_str(&fmt_rat(x)),
            Point::Infinity => f.write_str("infinity"),
        }
    }
}

/// Exponents at a point: rational roots with multiplicity plus the part of
/// the indicial polynomial without rational roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalExponents {
    pub point: Point,
    pub roots: Vec<(Rat, usize)>,
    /// Primitive integer factor whose roots are irrational.
    pub unresolved: Poly,
    /// Operator order; exceeds the indicial degree at an irregular point.
    pub order: usize,
}

impl LocalExponents {
    /// Rational exponents as a sorted multiset.
    pub fn rational(&self) -> Vec<Rat> {
        self.roots
            .iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r.clone(), *m))
            .collect()
    }

    /// Number of exponents counted by the indicial polynomial.
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum::<usize>() + self.unresolved.degree().unwrap_or(0)
    }

    pub fn is_regular_singular(&self) -> bool {
        self.total_multiplicity() == self.order
    }
}

impl ThetaOperator {
    /// `P_0(λ)` at zero, `P_k(-λ)` at infinity, and the lowest term of the
    /// shifted operator at a finite point.
    pub fn indicial(&self, at: &Point) -> Poly {
        match at {
            Point::Infinity => self.terms[self.k()].compose_linear(&rat(-1), &rat(0)),
            Point::Finite(z0) if num_traits::Zero::is_zero(z0) => self.terms[0].clone(),
            Point::Finite(z0) => self.local_theta_form(z0).terms[0].clone(),
        }
    }

    pub fn local_exponents(&self, at: &Point) -> LocalExponents {
        let r = rational_roots(&self.indicial(at));
        LocalExponents {
            point: at.clone(),
            roots: r.roots,
            unresolved: r.residual,
            order: self.order,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn quintic() -> ThetaOperator {
        ThetaOperator::from_int_rows(&[&[0, 0, 0, 0, 1], &[-120, -1250, -4375, -6250, -3125]]).unwrap()
    }

    #[test]
    fn quintic_at_zero_and_infinity() {
        let q = quintic();
        assert_eq!(q.indicial(&Point::zero()), Poly::monomial(rat(1), 4));
        assert_eq!(q.local_exponents(&Point::zero()).rational(), vec![rat(0); 4]);
        assert_eq!(
            q.local_exponents(&Point::Infinity).rational(),
            vec![ratio(1, 5), ratio(2, 5), ratio(3, 5), ratio(4, 5)]
        );
    }

    #[test]
    fn ordinary_point_and_conifold() {
        let q = quintic();
        let e = q.local_exponents(&Point::Finite(ratio(1, 2)));
        assert_eq!(e.rational(), vec![rat(0), rat(1), rat(2), rat(3)]);
        let c = q.local_exponents(&Point::Finite(ratio(1, 3125)));
        assert_eq!(c.rational(), vec![rat(0), rat(1), rat(1), rat(2)]);
        assert!(c.is_regular_singular());
    }

    #[test]
    fn half_integer_spectrum_at_infinity() {
        // θ^4 - 256 z (θ+1/2)^4
        let p1 = Poly::linear(ratio(1, 2)).pow(4).scale(&rat(-256));
        let d = ThetaOperator::new(vec![Poly::monomial(rat(1), 4), p1]).unwrap();
        let e = d.local_exponents(&Point::Infinity);
        assert_eq!(e.roots, vec![(ratio(1, 2), 4)]);
    }

    #[test]
    fn irrational_exponents_are_reported() {
        let d = ThetaOperator::new(vec![
            Poly::monomial(rat(1), 2),
            Poly::from_ints(&[2, 0, -1]),
        ])
        .unwrap();
        let e = d.local_exponents(&Point::Infinity);
        assert!(e.roots.is_empty());
        assert_eq!(e.unresolved.degree(), Some(2));
        assert_eq!(e.total_multiplicity(), 2);
    }
}
