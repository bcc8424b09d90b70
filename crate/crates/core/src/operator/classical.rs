//! Conversion between θ-form and `d/dz` form.

use num_traits::Zero;

use super::{OperatorError, ThetaOperator};
use crate::exact::{rat, Poly, Rat, RatFunc};

/// Stirling numbers of the second kind, `S(m, j)` for `m, j <= n`.
pub fn stirling2(n: usize) -> Vec<Vec<i64>> {
    let mut s = vec![vec![0i64; n + 1]; n + 1];
    s[0][0] = 1;
    for m in 1..=n {
        for j in 1..=m {
            s[m][j] = j as i64 * s[m - 1][j] + s[m - 1][j - 1];
        }
    }
    s
}

/// `y^(n) + a_{n-1} y^(n-1) + ... + a_0 y = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalForm {
    pub a: Vec<RatFunc>,
}

impl ClassicalForm {
    pub fn order(&self) -> usize {
        self.a.len()
    }
}

impl ThetaOperator {
    /// Polynomial coefficients `c_j(z)` of `∂^j`, using `θ^m = Σ S(m,j) z^j ∂^j`.
    pub fn classical_coefficients(&self) -> Vec<Poly> {
        let s = stirling2(self.order);
        (0..=self.order)
            .map(|j| {
                let mut c = vec![Rat::zero(); self.terms.len() + j];
                for (i, p) in self.terms.iter().enumerate() {
                    for (m, pm) in p.coeffs().iter().enumerate().skip(j) {
                        if !pm.is_zero() && s[m][j] != 0 {
                            c[i + j] += pm * rat(s[m][j]);
                        }
                    }
                }
                Poly::new(c)
            })
            .collect()
    }

    pub fn to_classical(&self) -> Result<ClassicalForm, OperatorError> {
        let c = self.classical_coefficients();
        let lead = c[self.order].clone();
        if lead.is_zero() {
            return Err(OperatorError::DegenerateLeadingCoefficient);
        }
        let a = c[..self.order]
            .iter()
            .map(|cj| RatFunc::new(cj.clone(), lead.clone()).expect("nonzero leading coefficient"))
            .collect();
        Ok(ClassicalForm { a })
    }

    /// θ-form in the local coordinate `w = z - z0`, not normalized.
    pub fn local_theta_form(&self, z0: &Rat) -> ThetaOperator {
        let shifted: Vec<Poly> = self
            .classical_coefficients()
            .iter()
            .map(|c| c.shift(z0))
            .collect();
        // w^m ∂^j = w^(m-j) θ(θ-1)...(θ-j+1); group by e = m - j.
        let mut e_min = i64::MAX;
        let mut e_max = i64::MIN;
        for (j, c) in shifted.iter().enumerate() {
            for (m, cm) in c.coeffs().iter().enumerate() {
                if !cm.is_zero() {
                    let e = m as i64 - j as i64;
                    e_min = e_min.min(e);
                    e_max = e_max.max(e);
                }
            }
        }
        let falling: Vec<Poly> = (0..shifted.len()).map(Poly::falling).collect();
        let terms = (e_min..=e_max)
            .map(|e| {
                let mut acc = Poly::zero();
                for (j, c) in shifted.iter().enumerate() {
                    let m = e + j as i64;
                    if m >= 0 {
                        let cm = c.coeff(m as usize);
                        if !cm.is_zero() {
                            acc = &acc + &falling[j].scale(&cm);
                        }
                    }
                }
                acc
            })
            .collect();
        ThetaOperator::from_terms_trimmed(terms).expect("nonzero operator")
    }
}
