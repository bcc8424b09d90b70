//! Parametrized operator families and the c/d rescaling.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::SearchError;
use crate::exact::{fmt_rat, rat, Poly, Rat};
use crate::frobenius::{holomorphic_coeffs, holomorphic_coeffs_while};
use crate::operator::ThetaOperator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `θ² - c z (Aθ²+Aθ+B) - d z² (θ+1)²`
    Had2,
    /// `θ³ - c z (2θ+1)(Aθ²+Aθ+B) - d z² (θ+1)³`
    Had3,
    /// `θ⁴ - c z (Aθ⁴+2Aθ³+(A+B)θ²+Bθ+C) - d z² (vθ+u)(xθ+w)(xθ+2x-w)(vθ+2v-u)`
    Gen4,
    /// `Gen4` with `d` fixed so that the leading polynomial has a double root.
    Gen4Q,
    /// `θ⁴ - c z (vθ+u)(vθ+v-u)(Aθ²+Aθ+B) - d z² (vθ+u)(xθ+w)(xθ+2x-w)(vθ+2v-u)`
    Fact4,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Had2 => "had2",
            Family::Had3 => "had3",
            Family::Gen4 => "gen4",
            Family::Gen4Q => "gen4q",
            Family::Fact4 => "fact4",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        [Family::Had2, Family::Had3, Family::Gen4, Family::Gen4Q, Family::Fact4]
            .into_iter()
            .find(|f| f.name() == s)
    }

    pub fn uses_spectrum(self) -> bool {
        matches!(self, Family::Gen4 | Family::Gen4Q | Family::Fact4)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One parameter point. Fields a family does not use are ignored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyPoint {
    pub family: Family,
    pub a: i64,
    pub b: i64,
    /// The constant `C` of the general middle term.
    pub cc: i64,
    pub c: Rat,
    pub d: Rat,
    pub uv: Rat,
    pub wx: Rat,
}

impl FamilyPoint {
    pub fn fact4(a: i64, b: i64, c: Rat, d: Rat, uv: Rat, wx: Rat) -> Self {
        FamilyPoint { family: Family::Fact4, a, b, cc: 0, c, d, uv, wx }
    }

    fn with_cd(&self, c: Rat, d: Rat) -> Self {
        FamilyPoint { c, d, ..self.clone() }
    }

    /// The point with `c = 1` and `d/c²` kept; equal keys give the same
    /// operator up to `z ↦ λz`.
    pub fn scale_key(&self) -> FamilyPoint {
        if self.c.is_zero() {
            return self.clone();
        }
        let ratio = self.effective_d() / (&self.c * &self.c);
        self.with_cd(Rat::one(), ratio)
    }

    /// `d` actually used: derived from `c` in the `Gen4Q` mode.
    pub fn effective_d(&self) -> Rat {
        if self.family == Family::Gen4Q {
            let (v, x) = (Rat::from_integer(self.uv.denom().clone()), Rat::from_integer(self.wx.denom().clone()));
            -(&self.c * &self.c * rat(self.a * self.a)) / (rat(4) * &v * &v * &x * &x)
        } else {
            self.d.clone()
        }
    }
}

impl fmt::Display for FamilyPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} A={} B={}", self.family, self.a, self.b)?;
        if matches!(self.family, Family::Gen4 | Family::Gen4Q) {
            write!(f, " C={}", self.cc)?;
        }
        write!(f, " c={} d={}", fmt_rat(&self.c), fmt_rat(&self.effective_d()))?;
        if self.family.uses_spectrum() {
            write!(f, " u/v={} w/x={}", fmt_rat(&self.uv), fmt_rat(&self.wx))?;
        }
        Ok(())
    }
}

fn lin(v: &Rat, u: &Rat) -> Poly {
    Poly::new(vec![u.clone(), v.clone()])
}

/// The family operator at `point`, normalized.
pub fn family_instantiate(point: &FamilyPoint) -> Result<ThetaOperator, SearchError> {
    let (a, b) = (rat(point.a), rat(point.b));
    let quad = Poly::new(vec![b.clone(), a.clone(), a.clone()]);
    let c = &point.c;
    let d = point.effective_d();
    let theta_pow = |k: usize| Poly::monomial(Rat::one(), k);
    let terms = match point.family {
        Family::Had2 => vec![theta_pow(2), quad.scale(&-c), Poly::from_ints(&[1, 2, 1]).scale(&-&d)],
        Family::Had3 => {
            let mid = &Poly::from_ints(&[1, 2]) * &quad;
            vec![theta_pow(3), mid.scale(&-c), Poly::from_ints(&[1, 1]).pow(3).scale(&-&d)]
        }
        Family::Gen4 | Family::Gen4Q | Family::Fact4 => {
            let two = rat(2);
            let in_range = |r: &Rat| r.is_positive() && r < &two;
            if !in_range(&point.uv) || !in_range(&point.wx) {
                return Err(SearchError::InvalidSpectrumParams(format!(
                    "u/v = {}, w/x = {} must lie in (0, 2)",
                    fmt_rat(&point.uv),
                    fmt_rat(&point.wx)
                )));
            }
            let u = Rat::from_integer(point.uv.numer().clone());
            let v = Rat::from_integer(point.uv.denom().clone());
            let w = Rat::from_integer(point.wx.numer().clone());
            let x = Rat::from_integer(point.wx.denom().clone());
            let quartic = &(&lin(&v, &u) * &lin(&x, &w)) * &(&lin(&x, &(&two * &x - &w)) * &lin(&v, &(&two * &v - &u)));
            let mid = if point.family == Family::Fact4 {
                &(&lin(&v, &u) * &lin(&v, &(&v - &u))) * &quad
            } else {
                Poly::new(vec![rat(point.cc), b.clone(), &a + &b, &two * &a, a.clone()])
            };
            vec![theta_pow(4), mid.scale(&-c), quartic.scale(&-&d)]
        }
    };
    let op = ThetaOperator::from_terms_trimmed(terms)
        .map_err(|e| SearchError::InvalidSpectrumParams(e.to_string()))?;
    if op.k() == 0 {
        return Err(SearchError::InvalidSpectrumParams("no z-terms".into()));
    }
    Ok(op.normalize())
}

fn strip_primes(mut n: BigInt, primes: &[u64], exps: &mut [u32]) -> bool {
    for (p, e) in primes.iter().zip(exps.iter_mut()) {
        let p = BigInt::from(*p);
        let mut v = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            v += 1;
        }
        *e = v;
    }
    n.is_one()
}

/// Sets `c = 1`, keeps `d/c²`, and looks for the least `λ` over `primes`
/// making `A_1..A_N` integral; returns the point with `(λ, λ² d/c²)`.
pub fn rescale_cd(point: &FamilyPoint, n: usize, primes: &[u64]) -> Option<FamilyPoint> {
    if point.c.is_zero() {
        return None;
    }
    let unit = point.scale_key();
    let ratio = unit.d.clone();
    let op = family_instantiate(&unit).ok()?;
    let mut need = vec![0u32; primes.len()];
    let mut vals = vec![0u32; primes.len()];
    let screened = holomorphic_coeffs_while(&op, n + 1, |m, a| {
        if a.is_integer() {
            return true;
        }
        if !strip_primes(a.denom().clone(), primes, &mut vals) {
            return false;
        }
        for (need, v) in need.iter_mut().zip(&vals) {
            *need = (*need).max(v.div_ceil(m as u32));
        }
        true
    });
    screened.ok()??;
    let lam = primes
        .iter()
        .zip(&need)
        .fold(BigInt::one(), |acc, (p, e)| acc * BigInt::from(*p).pow(*e));
    let lam = Rat::from_integer(lam);
    let scaled = point.with_cd(lam.clone(), &ratio * &lam * &lam);
    // Soundness: the rescaled coefficients are integral on the window.
    let check = holomorphic_coeffs(&family_instantiate(&scaled).ok()?, n + 1).ok()?;
    check.coeffs().iter().all(Rat::is_integer).then_some(scaled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn point15() -> FamilyPoint {
        FamilyPoint::fact4(7, 2, rat(3), rat(72), ratio(1, 3), ratio(2, 3))
    }

    #[test]
    fn instantiates_operator_15() {
        let op = family_instantiate(&point15()).unwrap();
        let expected = ThetaOperator::from_int_rows(&[
            &[0, 0, 0, 0, 1],
            &[-12, -96, -285, -378, -189],
            &[-2880, -16848, -31752, -23328, -5832],
        ])
        .unwrap();
        assert_eq!(op, expected);
    }

    #[test]
    fn degenerate_and_invalid_points() {
        let mut p = point15();
        p.family = Family::Gen4;
        p.c = rat(0);
        p.d = rat(0);
        assert!(family_instantiate(&p).is_err());
        let mut q = point15();
        q.uv = ratio(5, 2);
        assert!(family_instantiate(&q).is_err());
    }

    #[test]
    fn had2_with_vanishing_d() {
        let p = FamilyPoint { family: Family::Had2, a: 1, b: 1, cc: 0, c: rat(1), d: rat(0), uv: rat(1), wx: rat(1) };
        let op = family_instantiate(&p).unwrap();
        assert_eq!(op, ThetaOperator::from_int_rows(&[&[0, 0, 1], &[-1, -1, -1]]).unwrap());
    }

    #[test]
    fn rescaling_recovers_integral_point() {
        // Same ratio d/c² = 8 as the #15 point.
        let mut p = point15();
        p.c = rat(1);
        p.d = rat(8);
        let r = rescale_cd(&p, 30, &[2, 3, 5, 7]).unwrap();
        assert_eq!((r.c, r.d), (rat(3), rat(72)));
        assert_eq!(rescale_cd(&p, 30, &[2]), None);
    }

    #[test]
    fn quintic_point_rescales_by_five() {
        // d = 0, u/v = 1/5, A = 25, B = 6: z(5θ+1)(5θ+2)(5θ+3)(5θ+4), whose
        // c = 1 solution is (5n)!/(n!^5 5^n).
        let p = FamilyPoint::fact4(25, 6, rat(7), rat(0), ratio(1, 5), ratio(1, 5));
        let r = rescale_cd(&p, 20, &[2, 3, 5, 7]).unwrap();
        assert_eq!((&r.c, &r.d), (&rat(5), &rat(0)));
        let op = family_instantiate(&r).unwrap();
        assert_eq!(op.term(1).coeff(0), rat(-120));
    }

    #[test]
    fn foreign_prime_is_rejected() {
        let p = FamilyPoint { family: Family::Had2, a: 1, b: 1, cc: 0, c: rat(1), d: rat(0), uv: rat(1), wx: rat(1) };
        assert_eq!(rescale_cd(&p, 30, &[2, 3, 5, 7]), None);
    }
}
