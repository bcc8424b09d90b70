//! MUM translation and reflection at infinity.

use num_traits::Zero;

use super::{OperatorError, Point, ThetaOperator};
use crate::exact::{fmt_rat, rat, Poly, Rat};

impl ThetaOperator {
    /// Moves `z0` to the origin and conjugates by `w^a`, so that the result
    /// annihilates `w^(-a) y(z0 + w)`.
    pub fn translate_mum(&self, z0: &Rat, a: &Rat) -> ThetaOperator {
        let local = self.local_theta_form(z0);
        let terms = local.terms.iter().map(|p| p.shift(a)).collect();
        ThetaOperator::new(terms).expect("shift keeps boundary terms").normalize()
    }

    /// `Σ w^i P_{k-i}(-θ - twist)` in `w = 1/z`, normalized.
    ///
    /// A nonzero twist must agree modulo 1 with some exponent at infinity.
    pub fn reflect_infinity(&self, twist: &Rat) -> Result<ThetaOperator, OperatorError> {
        if !twist.is_zero() {
            let exps = self.local_exponents(&Point::Infinity).rational();
            if !exps.iter().any(|l| (l - twist).is_integer()) {
                return Err(OperatorError::NonClearableTwist(fmt_rat(twist)));
            }
        }
        let terms: Vec<Poly> = self
            .terms
            .iter()
            .rev()
            .map(|p| p.compose_linear(&rat(-1), &-twist))
            .collect();
        Ok(ThetaOperator::new(terms)?.normalize())
    }
}
