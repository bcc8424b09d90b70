//! Exponents at infinity, their symmetry and cyclotomic type.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::rat::frac;
use crate::exact::{fmt_rat, Rat};
use crate::operator::{Point, ThetaOperator};

/// Indices `m` with `φ(m) <= 4`, paired with `φ(m)`.
const SMALL_CYCLOTOMIC: [(u32, u32); 9] =
    [(1, 1), (2, 1), (3, 2), (4, 2), (6, 2), (5, 4), (8, 4), (10, 4), (12, 4)];

fn totatives(m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0];
    }
    (1..m).filter(|j| j.gcd(&m) == 1).collect()
}

/// Renders a cyclotomic multiset such as `φ2^4` or `φ3·φ6`.
pub fn cyclo_label(cyclo: &[u32]) -> String {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &m in cyclo {
        *counts.entry(m).or_default() += 1;
    }
    counts
        .iter()
        .map(|(m, c)| if *c == 1 { format!("φ{m}") } else { format!("φ{m}^{c}") })
        .collect::<Vec<_>>()
        .join("·")
}

/// Decomposes `{e^{2πiλ}}` into full primitive residue classes. Returns the
/// cyclotomic indices (sorted, with multiplicity) or `None`.
pub fn cyclotomic_decomposition(lambdas: &[Rat]) -> Option<Vec<u32>> {
    let mut by_den: BTreeMap<u32, BTreeMap<u32, usize>> = BTreeMap::new();
    for l in lambdas {
        let f = frac(l);
        let m = u32::try_from(f.denom()).ok()?;
        let j = u32::try_from(f.numer()).ok()?;
        *by_den.entry(m).or_default().entry(j).or_default() += 1;
    }
    let mut out = Vec::new();
    for (m, residues) in by_den {
        let classes = totatives(m);
        let count = residues.get(&classes[0]).copied().unwrap_or(0);
        if count == 0
            || residues.len() != classes.len()
            || classes.iter().any(|j| residues.get(j) != Some(&count))
        {
            return None;
        }
        out.extend(std::iter::repeat_n(m, count));
    }
    Some(out)
}

/// Symmetry constant `s` with `λ1 + λ4 = λ2 + λ3 = s` for a sorted quadruple.
pub fn symmetry_constant(sorted: &[Rat]) -> Option<Rat> {
    if sorted.len() != 4 {
        return None;
    }
    let s = &sorted[0] + &sorted[3];
    (s == &sorted[1] + &sorted[2]).then_some(s)
}

/// Four exponents with their cyclotomic type.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Spectrum {
    pub lambdas: Vec<Rat>,
    pub cyclo: Vec<u32>,
}

impl Spectrum {
    pub fn s(&self) -> Rat {
        &self.lambdas[0] + &self.lambdas[3]
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ls: Vec<String> = self.lambdas.iter().map(fmt_rat).collect();
        write!(f, "{} {{{}}}", cyclo_label(&self.cyclo), ls.join(", "))
    }
}

fn cyclotomic_types() -> Vec<Vec<u32>> {
    fn rec(start: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for (i, &(m, phi)) in SMALL_CYCLOTOMIC.iter().enumerate().skip(start) {
            if phi <= left {
                cur.push(m);
                rec(i, left - phi, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(0, 4, &mut Vec::new(), &mut out);
    out
}

/// All symmetric spectra `0 < λ1 <= ... <= λ4` with `λ1 + λ4 = λ2 + λ3 = s`
/// whose exponentials form a degree-4 product of cyclotomic polynomials.
pub fn enumerate_spectra(s: &Rat) -> Vec<Spectrum> {
    let mut found: BTreeSet<Spectrum> = BTreeSet::new();
    if !s.is_positive() {
        return Vec::new();
    }
    for ty in cyclotomic_types() {
        let residues: Vec<Rat> = ty
            .iter()
            .flat_map(|&m| totatives(m).into_iter().map(move |j| Rat::new(j.into(), m.into())))
            .collect();
        let lifts: Vec<Vec<Rat>> = residues
            .iter()
            .map(|r| {
                let mut v = Vec::new();
                let mut l = if r.is_zero() { Rat::one() } else { r.clone() };
                while &l < s {
                    v.push(l.clone());
                    l += Rat::one();
                }
                v
            })
            .collect();
        let mut idx = vec![0usize; 4];
        if lifts.iter().any(Vec::is_empty) {
            continue;
        }
        loop {
            let mut ls: Vec<Rat> = (0..4).map(|i| lifts[i][idx[i]].clone()).collect();
            ls.sort();
            if symmetry_constant(&ls).as_ref() == Some(s) {
                let mut cyclo = ty.clone();
                cyclo.sort();
                found.insert(Spectrum { lambdas: ls, cyclo });
            }
            let mut i = 0;
            while i < 4 {
                idx[i] += 1;
                if idx[i] < lifts[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == 4 {
                break;
            }
        }
    }
    found.into_iter().collect()
}

/// Outcome of the exponent analysis at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumAnalysis {
    pub lambdas: Vec<Rat>,
    pub s: Option<Rat>,
    pub cyclo: Option<Vec<u32>>,
    pub passed: bool,
    pub reason: String,
}

/// Checks that the exponents at infinity are positive rationals, symmetric,
/// and cyclotomic.
pub fn analyze_spectrum(d: &ThetaOperator) -> SpectrumAnalysis {
    let exps = d.local_exponents(&Point::Infinity);
    let lambdas = exps.rational();
    let s = symmetry_constant(&lambdas);
    let cyclo = if lambdas.len() == 4 { cyclotomic_decomposition(&lambdas) } else { None };
    let fail = |reason: String| SpectrumAnalysis {
        lambdas: lambdas.clone(),
        s: s.clone(),
        cyclo: cyclo.clone(),
        passed: false,
        reason,
    };
    if d.order() != 4 {
        return fail(format!("order {} is not 4", d.order()));
    }
    if !exps.is_regular_singular() {
        return fail("infinity is not a regular singular point".into());
    }
    if lambdas.len() != 4 {
        return fail(format!("irrational exponents: {}", exps.unresolved.fmt_in("λ")));
    }
    if let Some(l) = lambdas.iter().find(|l| !l.is_positive()) {
        return fail(format!("exponent {} is not positive", fmt_rat(l)));
    }
    if s.is_none() {
        return fail("exponents are not symmetric".into());
    }
    match &cyclo {
        None => fail("exponentials are not a product of cyclotomic roots".into()),
        Some(c) => SpectrumAnalysis {
            reason: format!("{} s={}", cyclo_label(c), fmt_rat(s.as_ref().expect("checked"))),
            lambdas: lambdas.clone(),
            s: s.clone(),
            cyclo: cyclo.clone(),
            passed: true,
        },
    }
}

/// Degree of the product of the listed cyclotomic polynomials.
pub fn cyclotomic_degree(cyclo: &[u32]) -> u32 {
    cyclo
        .iter()
        .map(|&m| SMALL_CYCLOTOMIC.iter().find(|(k, _)| *k == m).map_or(0, |(_, p)| *p))
        .sum()
}
