//! The five defining conditions of a Calabi-Yau operator.

mod spectrum;

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact::{ratio, Poly, Rat, RatFunc};
use crate::frobenius::{holomorphic_coeffs, is_mum, yukawa_instantons, InstantonReport};
use crate::operator::ThetaOperator;

pub use spectrum::{
    analyze_spectrum, cyclo_label, cyclotomic_decomposition, cyclotomic_degree, enumerate_spectra,
    symmetry_constant, Spectrum, SpectrumAnalysis,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error("condition needs an order-4 operator, got order {0}")]
    WrongOrder(usize),
    #[error("operator does not have maximal unipotent monodromy at 0")]
    NotMum,
    #[error("instanton check needs depth 20, report has {0}")]
    InsufficientDepth(usize),
}

/// Condition 1: `P_0 = α θ^order`.
pub fn check_mum(d: &ThetaOperator) -> bool {
    is_mum(d)
}

/// Condition 2:
/// `a_1 = a_2 a_3 / 2 - a_3^3 / 8 + a_2' - 3 a_3 a_3' / 4 - a_3'' / 2`.
pub fn check_selfdual(d: &ThetaOperator) -> Result<bool, CriteriaError> {
    if d.order() != 4 {
        return Err(CriteriaError::WrongOrder(d.order()));
    }
    let a = d.to_classical().map_err(|_| CriteriaError::WrongOrder(d.order()))?.a;
    let (a1, a2, a3) = (&a[1], &a[2], &a[3]);
    let c = |r: Rat| RatFunc::from_poly(Poly::constant(r));
    let a3p = a3.derivative();
    let rhs = &(&(&(&c(ratio(1, 2)) * &(a2 * a3)) - &(&c(ratio(1, 8)) * &(&(a3 * a3) * a3)))
        + &a2.derivative())
        - &(&(&c(ratio(3, 4)) * &(a3 * &a3p)) + &(&c(ratio(1, 2)) * &a3p.derivative()));
    Ok(a1 == &rhs)
}

/// Result of the integrality screen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integrality {
    pub checked: usize,
    pub first_failure: Option<usize>,
}

impl Integrality {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Condition 4 on `A_0..A_{N-1}`.
pub fn check_integrality(d: &ThetaOperator, n: usize) -> Result<Integrality, CriteriaError> {
    let a = holomorphic_coeffs(d, n).map_err(|_| CriteriaError::NotMum)?;
    Ok(Integrality { checked: n, first_failure: a.coeffs().iter().position(|c| !c.is_integer()) })
}

/// Denominator stability of the instanton numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstantonCheck {
    pub lcm15: BigInt,
    pub lcm20: BigInt,
    pub passed: bool,
}

/// Condition 5: lcm of denominators equal for the first 15 and 20 numbers,
/// and below 100.
pub fn check_instantons(report: &InstantonReport) -> Result<InstantonCheck, CriteriaError> {
    if report.depth() < 20 {
        return Err(CriteriaError::InsufficientDepth(report.depth()));
    }
    let lcm15 = report.denominator_lcm(15);
    let lcm20 = report.denominator_lcm(20);
    let passed = lcm15 == lcm20 && lcm20 < BigInt::from(100);
    Ok(InstantonCheck { lcm15, lcm20, passed })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionResult {
    pub outcome: Outcome,
    pub detail: String,
}

impl ConditionResult {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        let outcome = if pass { Outcome::Pass } else { Outcome::Fail };
        ConditionResult { outcome, detail: detail.into() }
    }

    fn skipped(detail: impl Into<String>) -> Self {
        ConditionResult { outcome: Outcome::Skipped, detail: detail.into() }
    }
}

/// Per-condition results; `overall` is their conjunction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyVerdict {
    pub conditions: [ConditionResult; 5],
    pub overall: bool,
}

const CONDITION_NAMES: [&str; 5] = ["MUM at 0", "self-duality", "spectrum at infinity", "integrality", "instantons"];

impl fmt::Display for CyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, name)) in self.conditions.iter().zip(CONDITION_NAMES).enumerate() {
            writeln!(f, "{} {:<22} {}  {}", i + 1, name, c.outcome, c.detail)?;
        }
        write!(f, "overall {}", if self.overall { "PASS" } else { "FAIL" })
    }
}

/// Runs Conditions 1-5. Failures of 1 or 2 skip the analytic checks 4-5.
pub fn classify(d: &ThetaOperator, n: usize, m: usize, depth: usize) -> CyVerdict {
    let mum = check_mum(d);
    let c1 = ConditionResult::new(mum, format!("P0 = {}", d.term(0).fmt_in("θ")));
    let selfdual = check_selfdual(d);
    let c2 = match &selfdual {
        Ok(p) => ConditionResult::new(*p, if *p { "identity holds" } else { "identity fails" }),
        Err(e) => ConditionResult::new(false, e.to_string()),
    };
    let spec = analyze_spectrum(d);
    let c3 = ConditionResult::new(spec.passed, spec.reason.clone());
    let structural = mum && selfdual == Ok(true);

    let (c4, c5) = if !structural {
        let why = "skipped after structural failure";
        (ConditionResult::skipped(why), ConditionResult::skipped(why))
    } else {
        let screen = check_integrality(d, n.max(m)).expect("MUM checked");
        let c4 = match screen.first_failure {
            None => ConditionResult::new(true, format!("A_0..A_{} integral", n.max(m) - 1)),
            Some(i) => ConditionResult::new(false, format!("A_{i} not integral")),
        };
        let c5 = match yukawa_instantons(d, depth) {
            Err(e) => ConditionResult::new(false, e.to_string()),
            Ok(r) => match check_instantons(&r) {
                Err(e) => ConditionResult::new(false, e.to_string()),
                Ok(ic) => ConditionResult::new(
                    ic.passed,
                    format!("lcm15={} lcm20={}", ic.lcm15, ic.lcm20),
                ),
            },
        };
        (c4, c5)
    };
    let conditions = [c1, c2, c3, c4, c5];
    let overall = conditions.iter().all(|c| c.outcome == Outcome::Pass);
    CyVerdict { conditions, overall }
}
