//! Truncated power series with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::poly::Poly;
use super::rat::{fmt_rat, rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("division by a series with zero constant term")]
    DivisionByZeroSeries,
    #[error("bad constant term: {0}")]
    BadConstantTerm(&'static str),
    #[error("series is not invertible under composition (zero linear term)")]
    NotInvertible,
}

/// Series `Σ c_n z^n` with `c_n` known for `n < trunc`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<Rat>,
}

impl PowerSeries {
    /// Takes the coefficients as given; the truncation order is their count.
    pub fn new(coeffs: Vec<Rat>) -> Self {
        PowerSeries { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        PowerSeries::new(cs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero(trunc: usize) -> Self {
        PowerSeries::new(vec![Rat::zero(); trunc])
    }

    pub fn one(trunc: usize) -> Self {
        PowerSeries::from_poly(&Poly::one(), trunc)
    }

    pub fn from_poly(p: &Poly, trunc: usize) -> Self {
        PowerSeries::new((0..trunc).map(|i| p.coeff(i)).collect())
    }

    pub fn from_fn(trunc: usize, f: impl FnMut(usize) -> Rat) -> Self {
        PowerSeries::new((0..trunc).map(f).collect())
    }

    /// Number of known coefficients.
    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    /// Coefficient of `z^n`. Panics when `n >= trunc`.
    pub fn coeff(&self, n: usize) -> &Rat {
        &self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Option<&Rat> {
        self.coeffs.get(n)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, n: usize) -> Self {
        PowerSeries::new(self.coeffs[..n.min(self.trunc())].to_vec())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        PowerSeries::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `z^n` coefficients multiplied by `lam^n`.
    pub fn scale_var(&self, lam: &Rat) -> Self {
        let mut p = Rat::one();
        let mut out = Vec::with_capacity(self.trunc());
        for c in &self.coeffs {
            out.push(c * &p);
            p *= lam;
        }
        PowerSeries::new(out)
    }

    pub fn derivative(&self) -> Self {
        PowerSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Self {
        let mut out = Vec::with_capacity(self.trunc() + 1);
        out.push(Rat::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c / rat(i as i64 + 1));
        }
        PowerSeries::new(out)
    }

    /// `z * f`.
    pub fn mul_z(&self) -> Self {
        let mut out = Vec::with_capacity(self.trunc() + 1);
        out.push(Rat::zero());
        out.extend(self.coeffs.iter().cloned());
        PowerSeries::new(out)
    }

    /// `f / z`, requires a zero constant term.
    pub fn div_z(&self) -> Result<Self, SeriesError> {
        match self.coeffs.first() {
            Some(c) if !c.is_zero() => Err(SeriesError::BadConstantTerm("expected f(0) = 0")),
            _ => Ok(PowerSeries::new(self.coeffs.iter().skip(1).cloned().collect())),
        }
    }

    pub fn div(&self, g: &PowerSeries) -> Result<Self, SeriesError> {
        let n = self.trunc().min(g.trunc());
        if n == 0 {
            return Ok(PowerSeries::zero(0));
        }
        if g.coeffs[0].is_zero() {
            return Err(SeriesError::DivisionByZeroSeries);
        }
        let inv0 = g.coeffs[0].recip();
        let mut h: Vec<Rat> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                if !g.coeffs[j].is_zero() {
                    acc -= &g.coeffs[j] * &h[k - j];
                }
            }
            h.push(acc * &inv0);
        }
        Ok(PowerSeries::new(h))
    }

    pub fn recip(&self) -> Result<Self, SeriesError> {
        PowerSeries::one(self.trunc()).div(self)
    }

    pub fn exp(&self) -> Result<Self, SeriesError> {
        let n = self.trunc();
        if n == 0 {
            return Ok(self.clone());
        }
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::BadConstantTerm("exp requires f(0) = 0"));
        }
        let mut e = Vec::with_capacity(n);
        e.push(Rat::one());
        for m in 1..n {
            let mut acc = Rat::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &e[m - k] * rat(k as i64);
                }
            }
            e.push(acc / rat(m as i64));
        }
        Ok(PowerSeries::new(e))
    }

    pub fn log(&self) -> Result<Self, SeriesError> {
        let n = self.trunc();
        if n == 0 {
            return Ok(self.clone());
        }
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::BadConstantTerm("log requires f(0) = 1"));
        }
        let mut l: Vec<Rat> = Vec::with_capacity(n);
        l.push(Rat::zero());
        for m in 1..n {
            let mut acc = Rat::zero();
            for k in 1..m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &l[m - k] * rat((m - k) as i64);
                }
            }
            l.push(&self.coeffs[m] - acc / rat(m as i64));
        }
        Ok(PowerSeries::new(l))
    }

    /// `f(g(z))`, requires `g(0) = 0`.
    pub fn compose(&self, g: &PowerSeries) -> Result<Self, SeriesError> {
        let n = self.trunc().min(g.trunc());
        if n == 0 {
            return Ok(PowerSeries::zero(0));
        }
        if !g.coeffs[0].is_zero() {
            return Err(SeriesError::BadConstantTerm("inner series must vanish at 0"));
        }
        let g = g.truncate(n);
        let mut acc = PowerSeries::zero(n);
        for c in self.coeffs[..n].iter().rev() {
            acc = &acc * &g;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Compositional inverse: `g` with `f(g(q)) = q`.
    pub fn reversion(&self) -> Result<Self, SeriesError> {
        let n = self.trunc();
        if n >= 1 && !self.coeffs[0].is_zero() {
            return Err(SeriesError::BadConstantTerm("reversion requires f(0) = 0"));
        }
        if n < 2 {
            return Ok(PowerSeries::zero(n));
        }
        if self.coeffs[1].is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        // Lagrange inversion: [q^m] g = [z^(m-1)] (z/f)^m / m.
        let h = self.div_z()?.recip()?;
        let mut out = vec![Rat::zero(); n];
        let mut hp = PowerSeries::one(h.trunc());
        for (m, slot) in out.iter_mut().enumerate().skip(1) {
            hp = &hp * &h;
            *slot = &hp.coeffs[m - 1] / rat(m as i64);
        }
        Ok(PowerSeries::new(out))
    }

    /// `f^alpha` for rational `alpha`, requires `f(0) = 1`.
    pub fn pow_rat(&self, alpha: &Rat) -> Result<Self, SeriesError> {
        self.pow_rat_while(alpha, |_| true)
            .map_err(|e| e.unwrap_or(SeriesError::BadConstantTerm("unreachable")))
    }

    /// Like [`pow_rat`](Self::pow_rat) but stops at the first coefficient
    /// rejected by `accept`; returns `Err(None)` in that case.
    pub fn pow_rat_while(
        &self,
        alpha: &Rat,
        accept: impl Fn(&Rat) -> bool,
    ) -> Result<Self, Option<SeriesError>> {
        let n = self.trunc();
        if n == 0 {
            return Ok(self.clone());
        }
        if !self.coeffs[0].is_one() {
            return Err(Some(SeriesError::BadConstantTerm("power requires f(0) = 1")));
        }
        let mut g: Vec<Rat> = Vec::with_capacity(n);
        g.push(Rat::one());
        for m in 1..n {
            let mut acc = Rat::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let w = alpha * rat(k as i64) - rat((m - k) as i64);
                acc += w * &self.coeffs[k] * &g[m - k];
            }
            let c = acc / rat(m as i64);
            if !accept(&c) {
                return Err(None);
            }
            g.push(c);
        }
        Ok(PowerSeries::new(g))
    }

    /// Principal `s`-th root with constant term 1.
    pub fn nth_root(&self, s: u64) -> Result<Self, SeriesError> {
        assert!(s > 0, "root index must be positive");
        self.pow_rat(&Rat::new(1.into(), s.into()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = PowerSeries::one(self.trunc());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = fmt_rat(&c.abs());
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}*z")?,
                _ => write!(f, "{a}*z^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.trunc())
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.trunc().min(rhs.trunc());
        PowerSeries::new((0..n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect())
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.trunc().min(rhs.trunc());
        PowerSeries::new((0..n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect())
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.trunc().min(rhs.trunc());
        let mut out = vec![Rat::zero(); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PowerSeries::new(out)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::ratio;
    use proptest::prelude::*;

    fn small_series(len: usize) -> impl Strategy<Value = PowerSeries> {
        prop::collection::vec(-6i64..=6, len).prop_map(|v| PowerSeries::from_ints(&v))
    }

    #[test]
    fn difference_of_squares() {
        let f = PowerSeries::from_ints(&[1, 1, 0, 0]);
        let g = PowerSeries::from_ints(&[1, -1, 0, 0]);
        assert_eq!(&f * &g, PowerSeries::from_ints(&[1, 0, -1, 0]));
    }

    #[test]
    fn geometric_series() {
        let g = PowerSeries::from_ints(&[1, -1, 0, 0, 0]);
        assert_eq!(PowerSeries::one(5).div(&g).unwrap(), PowerSeries::from_ints(&[1; 5]));
        assert_eq!(
            PowerSeries::one(5).div(&PowerSeries::from_ints(&[0, 1, 0, 0, 0])),
            Err(SeriesError::DivisionByZeroSeries)
        );
    }

    #[test]
    fn truncation_is_minimum() {
        let f = PowerSeries::from_ints(&[1, 2, 3]);
        let g = PowerSeries::from_ints(&[1, 1, 1, 1, 1]);
        assert_eq!((&f + &g).trunc(), 3);
        assert_eq!((&f * &g).trunc(), 3);
    }

    #[test]
    fn exp_and_log_of_simple_series() {
        let z = PowerSeries::from_ints(&[0, 1, 0, 0, 0, 0]);
        let mut fact = 1i64;
        let expected: Vec<Rat> = (0..6)
            .map(|n| {
                if n > 0 {
                    fact *= n;
                }
                ratio(1, fact)
            })
            .collect();
        assert_eq!(z.exp().unwrap().coeffs(), &expected[..]);
        let one_plus_z = PowerSeries::from_ints(&[1, 1, 0, 0, 0, 0]);
        let log = one_plus_z.log().unwrap();
        let expected: Vec<Rat> = (0..6)
            .map(|n| if n == 0 { rat(0) } else { ratio(if n % 2 == 1 { 1 } else { -1 }, n) })
            .collect();
        assert_eq!(log.coeffs(), &expected[..]);
        assert!(one_plus_z.exp().is_err());
        assert!(z.log().is_err());
    }

    #[test]
    fn reversion_of_z_plus_z2() {
        let f = PowerSeries::from_ints(&[0, 1, 1, 0, 0, 0, 0]);
        let g = f.reversion().unwrap();
        // Catalan numbers with alternating sign.
        assert_eq!(g, PowerSeries::from_ints(&[0, 1, -1, 2, -5, 14, -42]));
        assert_eq!(
            PowerSeries::from_ints(&[0, 0, 1]).reversion(),
            Err(SeriesError::NotInvertible)
        );
    }

    #[test]
    fn square_root_of_one_plus_2z() {
        let f = PowerSeries::from_ints(&[1, 2, 0, 0, 0]);
        let g = f.nth_root(2).unwrap();
        // binom(1/2, n) 2^n
        assert_eq!(g.coeffs(), &[rat(1), rat(1), ratio(-1, 2), ratio(1, 2), ratio(-5, 8)]);
        let sq = PowerSeries::from_ints(&[1, 2, 1, 0, 0]);
        assert_eq!(sq.nth_root(2).unwrap(), PowerSeries::from_ints(&[1, 1, 0, 0, 0]));
    }

    #[test]
    fn display() {
        let f = PowerSeries::new(vec![rat(1), ratio(-1, 2), rat(0), rat(3)]);
        assert_eq!(f.to_string(), "1 - 1/2*z + 3*z^3 + O(z^4)");
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_series(8), b in small_series(8), c in small_series(8)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn mul_then_div_is_identity(a in small_series(8), mut u in small_series(8)) {
            u.coeffs[0] = rat(1);
            prop_assert_eq!((&a * &u).div(&u).unwrap(), a);
        }

        #[test]
        fn compose_with_z_is_identity(a in small_series(7)) {
            let z = PowerSeries::from_ints(&[0, 1, 0, 0, 0, 0, 0]);
            prop_assert_eq!(a.compose(&z).unwrap(), a);
        }
    }
}
