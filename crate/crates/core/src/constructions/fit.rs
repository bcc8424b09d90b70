//! Recovery of a minimal θ-operator annihilating a coefficient stream.

use thiserror::Error;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::linalg::nullspace;
use crate::exact::{Poly, PowerSeries, Rat};
use crate::operator::ThetaOperator;

/// Search bounds: θ-degree up to `max_order`, z-degree up to `max_degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FitSpec {
    pub max_order: usize,
    pub max_degree: usize,
    /// Equations beyond the unknown count used in the solve; must be ≥ 8.
    pub guard: usize,
}

impl FitSpec {
    pub fn new(max_order: usize, max_degree: usize) -> Self {
        FitSpec { max_order, max_degree, guard: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("no operator within the search bounds annihilates the series")]
    NotFound,
    #[error("series has {have} terms, the smallest attempt needs {needed}")]
    InsufficientTerms { needed: usize, have: usize },
}

fn equations(a: &PowerSeries, rho: usize, delta: usize, count: usize) -> Vec<Vec<Rat>> {
    let unknowns = (rho + 1) * (delta + 1);
    (0..count)
        .map(|n| {
            let mut row = vec![Rat::zero(); unknowns];
            for i in 0..=delta.min(n) {
                let x = BigInt::from(n - i);
                let mut p = Rat::one();
                for m in 0..=rho {
                    row[i * (rho + 1) + m] = &p * a.coeff(n - i);
                    p *= &x;
                }
            }
            row
        })
        .collect()
}

fn to_operator(v: &[Rat], rho: usize, delta: usize) -> Option<ThetaOperator> {
    let terms = (0..=delta).map(|i| Poly::new(v[i * (rho + 1)..(i + 1) * (rho + 1)].to_vec())).collect();
    ThetaOperator::from_terms_trimmed(terms).ok()
}

/// Smallest operator (by `ρ + δ`, then `ρ`) annihilating every available
/// coefficient of `a`, normalized.
pub fn fit_operator(a: &PowerSeries, spec: FitSpec) -> Result<ThetaOperator, FitError> {
    let guard = spec.guard.max(8);
    let mut smallest_need = None;
    for total in 1..=spec.max_order + spec.max_degree {
        for rho in 1..=spec.max_order.min(total) {
            let delta = total - rho;
            if delta > spec.max_degree {
                continue;
            }
            let unknowns = (rho + 1) * (delta + 1);
            let need = unknowns + guard;
            if a.trunc() < need {
                smallest_need = Some(smallest_need.map_or(need, |s: usize| s.min(need)));
                continue;
            }
            for rows in [need, a.trunc()] {
                let basis = nullspace(equations(a, rho, delta, rows), unknowns);
                let Some(v) = basis.first() else { break };
                if let Some(op) = to_operator(v, rho, delta) {
                    if op.apply(a).is_zero() {
                        return Ok(op.normalize());
                    }
                }
                if rows == a.trunc() {
                    break;
                }
            }
        }
    }
    match smallest_need {
        Some(needed) if needed > a.trunc() => Err(FitError::InsufficientTerms { needed, have: a.trunc() }),
        _ => Err(FitError::NotFound),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn geometric_series() {
        let op = fit_operator(&PowerSeries::from_ints(&[1; 30]), FitSpec::new(2, 2)).unwrap();
        let expected = ThetaOperator::from_int_rows(&[&[0, 1], &[-1, -1]]).unwrap();
        assert_eq!(op, expected);
    }

    #[test]
    fn central_binomials() {
        let mut c = vec![rat(1)];
        for n in 1..30i64 {
            let prev = c[(n - 1) as usize].clone();
            c.push(prev * rat(2 * (2 * n - 1)) / rat(n));
        }
        let op = fit_operator(&PowerSeries::new(c), FitSpec::new(2, 2)).unwrap();
        let expected = ThetaOperator::from_int_rows(&[&[0, 1], &[-2, -4]]).unwrap();
        assert_eq!(op, expected);
    }

    #[test]
    fn primes_are_not_holonomic_in_small_bounds() {
        let primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173];
        let s = PowerSeries::from_ints(&primes);
        assert_eq!(fit_operator(&s, FitSpec::new(3, 2)), Err(FitError::NotFound));
    }

    #[test]
    fn too_short_input() {
        let s = PowerSeries::from_ints(&[1, 1, 1]);
        assert!(matches!(fit_operator(&s, FitSpec::new(1, 1)), Err(FitError::InsufficientTerms { .. })));
    }
}
