//! Parameter sweeps over operator families: integrality screen (step 1),
//! instanton and factorization filter (step 2).

mod factor;
mod family;

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::criteria::{check_instantons, InstantonCheck};
use crate::db::{DatasetRecord, Note};
use crate::exact::{fmt_rat, rat, Rat};
use crate::frobenius::{holomorphic_coeffs_while, yukawa_instantons, Fingerprint};
use crate::operator::ThetaOperator;
use crate::par::{map_ordered, Jobs};

pub use factor::{has_first_order_right_factor, DEFAULT_SEARCH_BOUND};
pub use family::{family_instantiate, rescale_cd, Family, FamilyPoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid family parameters: {0}")]
    InvalidSpectrumParams(String),
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
}

/// Ranges and protocol constants of one sweep.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub family: Family,
    pub a: RangeInclusive<i64>,
    pub b: RangeInclusive<i64>,
    /// Constant `C` of the general middle term; ignored by other families.
    pub cc: RangeInclusive<i64>,
    pub c_values: Vec<i64>,
    /// `d = sign · Π p^e` with `0 <= e <= bound` for each `(p, bound)`.
    pub d_primes: Vec<(u64, u32)>,
    pub d_signs: Vec<i64>,
    /// Exponents at infinity `λ_1 <= .. <= λ_4`, used by the order-4 families.
    pub spectra: Vec<Vec<Rat>>,
    /// Screen length.
    pub n: usize,
    /// Confirm length.
    pub m: usize,
    pub primes: Vec<u64>,
    pub jobs: Jobs,
}

impl SweepConfig {
    pub fn new(family: Family) -> Self {
        SweepConfig {
            family,
            a: 1..=1,
            b: 1..=1,
            cc: 0..=0,
            c_values: vec![1],
            d_primes: Vec::new(),
            d_signs: vec![1],
            spectra: Vec::new(),
            n: 50,
            m: 1000,
            primes: vec![2, 3, 5, 7],
            jobs: Jobs::ALL,
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.n > self.m {
            return Err(SearchError::InvalidConfig(format!("N = {} exceeds M = {}", self.n, self.m)));
        }
        if self.family.uses_spectrum() && self.spectra.iter().any(|s| s.len() != 4) {
            return Err(SearchError::InvalidConfig("spectra must have four exponents".into()));
        }
        Ok(())
    }

    fn d_values(&self) -> Vec<Rat> {
        let mut mags = vec![BigInt::one()];
        for (p, bound) in &self.d_primes {
            let p = BigInt::from(*p);
            let mut next = Vec::with_capacity(mags.len() * (*bound as usize + 1));
            for m in &mags {
                for e in 0..=*bound {
                    next.push(m * num_traits::pow(p.clone(), e as usize));
                }
            }
            mags = next;
        }
        mags.sort();
        self.d_signs
            .iter()
            .flat_map(|s| mags.iter().map(move |m| Rat::from_integer(m * BigInt::from(*s))))
            .collect()
    }

    /// `(u/v, w/x)` choices: `u/v` is either of the two small exponents.
    fn spectrum_params(&self) -> Vec<(Rat, Rat)> {
        if !self.family.uses_spectrum() {
            return vec![(rat(1), rat(1))];
        }
        let mut out = Vec::new();
        for s in &self.spectra {
            let (l1, l2) = (s[0].clone(), s[1].clone());
            out.push((l1.clone(), l2.clone()));
            if self.family == Family::Fact4 && l1 != l2 {
                out.push((l2, l1));
            }
        }
        out
    }

    /// All points, in lexicographic order of `(A, B, C, c, d, spectrum)`.
    pub fn points(&self) -> Vec<FamilyPoint> {
        let cc = if matches!(self.family, Family::Gen4 | Family::Gen4Q) { self.cc.clone() } else { 0..=0 };
        let ds = if self.family == Family::Gen4Q { vec![Rat::zero()] } else { self.d_values() };
        let spec = self.spectrum_params();
        let mut out = Vec::new();
        for a in self.a.clone() {
            for b in self.b.clone() {
                for cc in cc.clone() {
                    for &c in &self.c_values {
                        for d in &ds {
                            for (uv, wx) in &spec {
                                out.push(FamilyPoint {
                                    family: self.family,
                                    a,
                                    b,
                                    cc,
                                    c: rat(c),
                                    d: d.clone(),
                                    uv: uv.clone(),
                                    wx: wx.clone(),
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Header lines (`#`-comments) echoing the configuration.
    pub fn header(&self) -> String {
        let r = |x: &RangeInclusive<i64>| format!("{}..{}", x.start(), x.end());
        let list = |v: Vec<String>| v.join(",");
        let mut h = String::new();
        let _ = writeln!(h, "# sweep family={}", self.family);
        let _ = writeln!(h, "# A={} B={} C={}", r(&self.a), r(&self.b), r(&self.cc));
        let _ = writeln!(h, "# c={}", list(self.c_values.iter().map(i64::to_string).collect()));
        let _ = writeln!(
            h,
            "# d=sign{{{}}}*{}",
            list(self.d_signs.iter().map(i64::to_string).collect()),
            if self.d_primes.is_empty() {
                "1".to_string()
            } else {
                self.d_primes.iter().map(|(p, e)| format!("{p}^0..{e}")).collect::<Vec<_>>().join("*")
            }
        );
        for s in &self.spectra {
            let _ = writeln!(h, "# spectrum={}", list(s.iter().map(fmt_rat).collect()));
        }
        let _ = writeln!(
            h,
            "# N={} M={} primes={}",
            self.n,
            self.m,
            list(self.primes.iter().map(u64::to_string).collect())
        );
        h
    }
}

/// Outcome of the step-2 filter for one candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step2 {
    pub instantons: Option<InstantonCheck>,
    pub fingerprint: Option<Fingerprint>,
    pub right_factor: bool,
}

impl Step2 {
    pub fn passed(&self) -> bool {
        self.instantons.as_ref().is_some_and(|c| c.passed) && !self.right_factor
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub point: FamilyPoint,
    /// Same point with `(c, d)` replaced by the rescaled values.
    pub rescaled: FamilyPoint,
    pub operator: ThetaOperator,
    pub step2: Option<Step2>,
}

fn screen(point: &FamilyPoint, n: usize, m: usize, primes: &[u64]) -> Option<Candidate> {
    let rescaled = rescale_cd(point, n, primes)?;
    let operator = family_instantiate(&rescaled).ok()?;
    holomorphic_coeffs_while(&operator, m + 1, |_, a| a.is_integer()).ok()??;
    Some(Candidate { point: point.clone(), rescaled, operator, step2: None })
}

/// Step 1: rescale every point, keep those with integral `A_1..A_M`, drop
/// repeated operators (first occurrence wins).
///
/// The screen depends on `(c, d)` only through `d/c²`, so points sharing
/// that ratio are screened once.
pub fn sweep_step1(cfg: &SweepConfig) -> Result<Vec<Candidate>, SearchError> {
    cfg.validate()?;
    let points = cfg.points();
    let mut first: HashMap<FamilyPoint, usize> = HashMap::new();
    let mut reps = Vec::new();
    let slot: Vec<usize> = points
        .iter()
        .map(|p| {
            let key = p.scale_key();
            *first.entry(key).or_insert_with(|| {
                reps.push(p.clone());
                reps.len() - 1
            })
        })
        .collect();
    let screened = map_ordered(&reps, cfg.jobs, |p| screen(p, cfg.n, cfg.m, &cfg.primes));
    let mut emitted = vec![false; reps.len()];
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (p, s) in points.iter().zip(slot) {
        if std::mem::replace(&mut emitted[s], true) {
            continue;
        }
        if let Some(c) = &screened[s] {
            if seen.insert(c.operator.clone()) {
                out.push(Candidate { point: p.clone(), ..c.clone() });
            }
        }
    }
    Ok(out)
}

fn step2(op: &ThetaOperator, depth: usize) -> Step2 {
    let report = yukawa_instantons(op, depth).ok();
    let instantons = report.as_ref().and_then(|r| check_instantons(r).ok());
    let fingerprint = report.as_ref().and_then(|r| r.fingerprint());
    let right_factor = has_first_order_right_factor(op, DEFAULT_SEARCH_BOUND);
    Step2 { instantons, fingerprint, right_factor }
}

/// Step 2: keeps candidates whose instanton denominators are stable at
/// `depth` (at least 20) and that have no first-order right factor.
pub fn filter_step2(cands: Vec<Candidate>, depth: usize, jobs: Jobs) -> Vec<Candidate> {
    let results = map_ordered(&cands, jobs, |c| step2(&c.operator, depth));
    cands
        .into_iter()
        .zip(results)
        .filter(|(_, s)| s.passed())
        .map(|(c, s)| Candidate { step2: Some(s), ..c })
        .collect()
}

/// Candidates as dataset records, with the point, the rescaling and the
/// fingerprint as notes.
pub fn candidate_records(cands: &[Candidate]) -> Vec<DatasetRecord> {
    cands
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut notes = vec![
                Note::Family(c.point.family.name().to_string()),
                Note::Other(format!("point {}", c.point)),
                Note::Other(format!(
                    "rescaled c={} d={}",
                    fmt_rat(&c.rescaled.c),
                    fmt_rat(&c.rescaled.effective_d())
                )),
            ];
            if let Some(fp) = c.step2.as_ref().and_then(|s| s.fingerprint.as_ref()) {
                notes.push(Note::Other(format!("fingerprint {fp}")));
            }
            DatasetRecord {
                id: format!("{}-{}", c.point.family, i + 1),
                operator: c.operator.clone(),
                formula: None,
                base_cases: Vec::new(),
                notes,
            }
        })
        .collect()
}

/// Sweep output: configuration header, then one dataset block per candidate.
pub fn write_sweep(cfg: &SweepConfig, cands: &[Candidate]) -> String {
    let mut out = cfg.header();
    for rec in candidate_records(cands) {
        out.push_str("---\n");
        out.push_str(&rec.to_block());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::db::parse_dataset;
    use crate::exact::ratio;

    fn small_fact4() -> SweepConfig {
        let mut cfg = SweepConfig::new(Family::Fact4);
        cfg.a = 6..=7;
        cfg.b = 1..=2;
        cfg.c_values = vec![1, 3];
        cfg.d_primes = vec![(2, 3), (3, 2)];
        cfg.spectra = vec![vec![ratio(1, 3), ratio(2, 3), ratio(4, 3), ratio(5, 3)]];
        cfg.n = 30;
        cfg.m = 60;
        cfg
    }

    fn op15() -> ThetaOperator {
        ThetaOperator::from_int_rows(&[
            &[0, 0, 0, 0, 1],
            &[-12, -96, -285, -378, -189],
            &[-2880, -16848, -31752, -23328, -5832],
        ])
        .unwrap()
    }

    #[test]
    fn small_sweep_finds_15_and_is_deterministic() {
        let mut cfg = small_fact4();
        cfg.jobs = Jobs::SEQUENTIAL;
        let seq = sweep_step1(&cfg).unwrap();
        let hit = seq.iter().find(|c| c.operator == op15()).expect("#15 point");
        assert_eq!((hit.rescaled.c.clone(), hit.rescaled.d.clone()), (rat(3), rat(72)));
        cfg.jobs = Jobs(3);
        let par = sweep_step1(&cfg).unwrap();
        assert_eq!(write_sweep(&cfg, &seq), write_sweep(&cfg, &par));
    }

    #[test]
    fn empty_ranges_give_nothing() {
        let mut cfg = small_fact4();
        cfg.a = 1..=0;
        assert!(sweep_step1(&cfg).unwrap().is_empty());
        assert!(filter_step2(Vec::new(), 20, Jobs::ALL).is_empty());
    }

    #[test]
    fn n_beyond_m_is_rejected() {
        let mut cfg = small_fact4();
        cfg.n = 100;
        assert!(sweep_step1(&cfg).is_err());
    }

    #[test]
    fn step2_keeps_15_and_drops_composite() {
        let point = FamilyPoint::fact4(7, 2, rat(3), rat(72), ratio(1, 3), ratio(2, 3));
        let good = Candidate { point: point.clone(), rescaled: point.clone(), operator: op15(), step2: None };
        let r = ThetaOperator::from_int_rows(&[&[0, 1], &[-1, -1]]).unwrap();
        let composite = ThetaOperator::from_int_rows(&[&[0, 0, 0, 1], &[-6, -22, -36, -27]])
            .unwrap()
            .compose(&r);
        assert!(step2(&composite, 20).right_factor);
        let bad = Candidate { operator: composite, ..good.clone() };
        let kept = filter_step2(vec![good, bad], 20, Jobs::ALL);
        assert_eq!(kept.len(), 1);
        let s = kept[0].step2.as_ref().unwrap();
        assert!(s.fingerprint.is_some());
        assert!(!s.right_factor);
    }

    #[test]
    fn output_reparses_as_dataset() {
        let cfg = small_fact4();
        let cands = sweep_step1(&cfg).unwrap();
        let text = write_sweep(&cfg, &cands);
        assert!(text.starts_with("# sweep family=fact4"));
        let recs = parse_dataset(&text).unwrap();
        assert_eq!(recs.len(), cands.len());
        assert_eq!(recs[0].operator, cands[0].operator);
    }
}
