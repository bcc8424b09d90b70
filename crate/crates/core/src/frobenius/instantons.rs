//! Yukawa coupling, instanton numbers and superseeker fingerprints.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{is_mum, mirror_map, FrobeniusError, FrobeniusPair};
use crate::criteria::check_selfdual;
use crate::exact::rat::lcm_denominators;
use crate::exact::{rat, Poly, PowerSeries, Rat, RatFunc};
use crate::operator::ThetaOperator;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstantonReport {
    /// `q/z` as a series in `z`.
    pub qmap: PowerSeries,
    /// Normalized coupling `K(q)` with `K(0) = 1`.
    pub coupling: PowerSeries,
    /// `N_1, ..., N_depth`.
    pub instantons: Vec<Rat>,
    /// Least common multiple of the denominators of the `N_d`.
    pub n0: BigInt,
}

/// `(N0, |N0 N_1|, |N0 N_3|)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub n0: BigInt,
    pub n1: BigInt,
    pub n3: BigInt,
}

impl Fingerprint {
    pub fn from_ints(n0: i64, n1: i64, n3: i64) -> Self {
        Fingerprint { n0: n0.into(), n1: n1.into(), n3: n3.into() }
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N0={} N1={} N3={}", self.n0, self.n1, self.n3)
    }
}

impl InstantonReport {
    pub fn depth(&self) -> usize {
        self.instantons.len()
    }

    /// `N_d` for `1 <= d <= depth`.
    pub fn instanton(&self, d: usize) -> &Rat {
        &self.instantons[d - 1]
    }

    /// `None` when the depth is below 3.
    pub fn fingerprint(&self) -> Option<Fingerprint> {
        if self.depth() < 3 {
            return None;
        }
        let n0 = Rat::from_integer(self.n0.clone());
        let scaled = |d: usize| (self.instanton(d) * &n0).abs().to_integer();
        Some(Fingerprint { n0: self.n0.clone(), n1: scaled(1), n3: scaled(3) })
    }

    /// Least common multiple of the denominators of `N_1..N_d`.
    pub fn denominator_lcm(&self, d: usize) -> BigInt {
        lcm_denominators(&self.instantons[..d.min(self.depth())])
    }
}

/// `N_m = (c_m - Σ_{d|m, d<m} d^3 N_d) / m^3` from `K = 1 + Σ c_m q^m`.
pub fn lambert_inverse(k: &PowerSeries) -> Vec<Rat> {
    let mut n: Vec<Rat> = Vec::with_capacity(k.trunc().saturating_sub(1));
    for m in 1..k.trunc() {
        let mut c = k.coeff(m).clone();
        for d in 1..m {
            if m % d == 0 && !n[d - 1].is_zero() {
                c -= &n[d - 1] * rat((d * d * d) as i64);
            }
        }
        n.push(c / rat((m * m * m) as i64));
    }
    n
}

/// `1 + Σ_d N_d d^3 q^d / (1 - q^d)` truncated to `trunc`.
pub fn lambert_sum(n: &[Rat], trunc: usize) -> PowerSeries {
    let mut c = vec![Rat::zero(); trunc];
    if trunc > 0 {
        c[0] = Rat::one();
    }
    for (i, nd) in n.iter().enumerate() {
        let d = i + 1;
        let w = nd * rat((d * d * d) as i64);
        let mut m = d;
        while m < trunc {
            c[m] += &w;
            m += d;
        }
    }
    PowerSeries::new(c)
}

/// Instanton numbers `N_1..N_depth` by the normalized-coupling recipe.
pub fn yukawa_instantons(d: &ThetaOperator, depth: usize) -> Result<InstantonReport, FrobeniusError> {
    if !is_mum(d) {
        return Err(FrobeniusError::NotMum);
    }
    if d.order() != 4 {
        return Err(FrobeniusError::WrongOrder(d.order()));
    }
    if !check_selfdual(d).map_err(|_| FrobeniusError::WrongOrder(d.order()))? {
        return Err(FrobeniusError::NotSelfDual);
    }
    let n = depth + 2;
    let pair = FrobeniusPair::new(d, n)?;
    let qmap = mirror_map(&pair)?;
    let q_of_z = qmap.mul_z().truncate(n);
    let z_of_q = q_of_z.reversion()?;

    // a_3 - 6/z is holomorphic at a MUM point of order 4.
    let classical = d.to_classical().map_err(|_| FrobeniusError::BadLeadingSingularity)?;
    let six_over_z = RatFunc::new(Poly::from_ints(&[6]), Poly::x()).expect("nonzero");
    let h = &classical.a[3] - &six_over_z;
    if h.den().coeff(0).is_zero() {
        return Err(FrobeniusError::BadLeadingSingularity);
    }
    let w = h.to_series(n)?.integral().truncate(n).scale(&Rat::new((-1).into(), 2.into())).exp()?;

    // (q dz/dq) / z = 1 + q u'/u with z = q u.
    let u = z_of_q.div_z()?;
    let jac = {
        let t = u.derivative().div(&u)?.mul_z();
        let mut c = t.into_coeffs();
        c[0] += Rat::one();
        PowerSeries::new(c)
    };
    let y0 = pair.a.compose(&z_of_q)?;
    let coupling = (&w.compose(&z_of_q)? * &jac.pow(3)).div(&(&y0 * &y0))?;
    let coupling = coupling.truncate(depth + 1);
    debug_assert!(coupling.coeff(0).is_one());

    let instantons = lambert_inverse(&coupling);
    let n0 = instantons.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    Ok(InstantonReport { qmap, coupling, instantons, n0 })
}

/// How two couplings relate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KqRelation {
    /// `K2(q) = K1(λq)`, compared on the coupling coefficients.
    Rescaling(Rat),
    /// `K2(q) = K1(q^r)` up to a constant factor on the instanton numbers;
    /// `reversed` means the roles of the two reports are swapped.
    Thinning { r: usize, reversed: bool },
}

fn rational_dth_roots(x: &Rat, d: u32) -> Vec<Rat> {
    let root = |n: &BigInt| {
        let r = n.abs().nth_root(d);
        (num_traits::pow(r.clone(), d as usize) == n.abs()).then_some(r)
    };
    match (root(x.numer()), root(x.denom())) {
        (Some(p), Some(q)) => {
            let r = Rat::new(p, q);
            if d % 2 == 1 {
                vec![if x.is_negative() { -r } else { r }]
            } else if x.is_negative() {
                Vec::new()
            } else {
                vec![r.clone(), -r]
            }
        }
        _ => Vec::new(),
    }
}

/// `λ` with `b_i = λ^{i+1} a_i` for all `i`.
fn rescaling(a: &[Rat], b: &[Rat]) -> Option<Rat> {
    let first = a.iter().zip(b).position(|(x, y)| !x.is_zero() || !y.is_zero())?;
    if a[first].is_zero() || b[first].is_zero() {
        return None;
    }
    let ratio = &b[first] / &a[first];
    rational_dth_roots(&ratio, first as u32 + 1).into_iter().find(|lam| {
        let mut p = Rat::one();
        a.iter().zip(b).all(|(x, y)| {
            p *= lam;
            &(x * &p) == y
        })
    })
}

fn thinning(base: &[Rat], thin: &[Rat], r: usize) -> bool {
    let mut factor: Option<Rat> = None;
    for (i, y) in thin.iter().enumerate() {
        let m = i + 1;
        if m % r != 0 {
            if !y.is_zero() {
                return false;
            }
            continue;
        }
        let x = &base[m / r - 1];
        match (x.is_zero(), y.is_zero()) {
            (true, true) => {}
            (true, false) | (false, true) => return false,
            (false, false) => {
                let f = y / x;
                match &factor {
                    None => factor = Some(f),
                    Some(g) if *g == f => {}
                    Some(_) => return false,
                }
            }
        }
    }
    factor.is_some()
}

/// Tests whether two couplings agree up to `q -> λq` or `q -> q^r`.
pub fn kq_equivalent(r1: &InstantonReport, r2: &InstantonReport, depth: usize) -> Option<KqRelation> {
    let depth = depth.min(r1.depth()).min(r2.depth());
    let (a, b) = (&r1.instantons[..depth], &r2.instantons[..depth]);
    let (ka, kb) = (&r1.coupling.coeffs()[1..=depth], &r2.coupling.coeffs()[1..=depth]);
    if let Some(lam) = rescaling(ka, kb) {
        return Some(KqRelation::Rescaling(lam));
    }
    for r in 2..=depth {
        if thinning(a, b, r) {
            return Some(KqRelation::Thinning { r, reversed: false });
        }
        if thinning(b, a, r) {
            return Some(KqRelation::Thinning { r, reversed: true });
        }
    }
    None
}
