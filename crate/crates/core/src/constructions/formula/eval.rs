//! Evaluation with memoized factorials, binomials and harmonic numbers.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{BinOp, Expr, FormulaError, Func};
use crate::exact::rat::pow_i;
use crate::exact::Rat;

/// Reusable evaluator; caches grow on demand.
#[derive(Default)]
pub struct Evaluator {
    factorials: Vec<BigInt>,
    harmonic: Vec<Rat>,
    binomials: HashMap<(i64, i64), BigInt>,
    env: Vec<(String, Rat)>,
}

fn as_int(x: &Rat, what: &str) -> Result<i64, FormulaError> {
    if !x.is_integer() {
        return Err(FormulaError::Domain(format!("{what} needs an integer, got {x}")));
    }
    i64::try_from(x.numer()).map_err(|_| FormulaError::Domain(format!("{what} argument too large")))
}

impl Evaluator {
    pub fn new() -> Self {
        Evaluator { factorials: vec![BigInt::one()], harmonic: vec![Rat::zero()], ..Default::default() }
    }

    pub fn eval(&mut self, e: &Expr, n: u64) -> Result<Rat, FormulaError> {
        self.env.clear();
        self.go(e, &Rat::from_integer(BigInt::from(n)))
    }

    fn factorial(&mut self, k: i64) -> Result<BigInt, FormulaError> {
        if k < 0 {
            return Err(FormulaError::Domain(format!("fact({k})")));
        }
        let k = k as usize;
        while self.factorials.len() <= k {
            let i = self.factorials.len();
            let next = &self.factorials[i - 1] * BigInt::from(i);
            self.factorials.push(next);
        }
        Ok(self.factorials[k].clone())
    }

    fn harmonic(&mut self, k: i64) -> Result<Rat, FormulaError> {
        if k < 0 {
            return Err(FormulaError::Domain(format!("H({k})")));
        }
        let k = k as usize;
        while self.harmonic.len() <= k {
            let i = self.harmonic.len();
            let next = &self.harmonic[i - 1] + Rat::new(BigInt::one(), BigInt::from(i));
            self.harmonic.push(next);
        }
        Ok(self.harmonic[k].clone())
    }

    fn binom(&mut self, a: &Rat, b: &Rat) -> Result<Rat, FormulaError> {
        let b = as_int(b, "binom")?;
        if b < 0 {
            return Ok(Rat::zero());
        }
        if a.is_integer() && !a.is_negative() {
            let a = as_int(a, "binom")?;
            if b > a {
                return Ok(Rat::zero());
            }
            if let Some(v) = self.binomials.get(&(a, b)) {
                return Ok(Rat::from_integer(v.clone()));
            }
            let v = self.factorial(a)? / (self.factorial(b)? * self.factorial(a - b)?);
            self.binomials.insert((a, b), v.clone());
            return Ok(Rat::from_integer(v));
        }
        let mut num = Rat::one();
        for i in 0..b {
            num *= a - Rat::from_integer(BigInt::from(i));
        }
        Ok(num / Rat::from_integer(self.factorial(b)?))
    }

    fn go(&mut self, e: &Expr, n: &Rat) -> Result<Rat, FormulaError> {
        Ok(match e {
            Expr::Num(r) => r.clone(),
            Expr::N => n.clone(),
            Expr::Var(v) => self
                .env
                .iter()
                .rev()
                .find(|(name, _)| name == v)
                .map(|(_, x)| x.clone())
                .ok_or_else(|| FormulaError::Domain(format!("unbound variable {v}")))?,
            Expr::Neg(a) => -self.go(a, n)?,
            Expr::Bin(op, a, b) => {
                let x = self.go(a, n)?;
                let y = self.go(b, n)?;
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => {
                        if y.is_zero() {
                            return Err(FormulaError::DivisionByZero);
                        }
                        x / y
                    }
                }
            }
            Expr::Pow(a, b) => {
                let x = self.go(a, n)?;
                let k = as_int(&self.go(b, n)?, "exponent")?;
                pow_i(&x, k).ok_or(FormulaError::DivisionByZero)?
            }
            Expr::Call(func, args) => {
                let vals = args.iter().map(|a| self.go(a, n)).collect::<Result<Vec<_>, _>>()?;
                match func {
                    Func::Binom => self.binom(&vals[0], &vals[1])?,
                    Func::Fact => Rat::from_integer(self.factorial(as_int(&vals[0], "fact")?)?),
                    Func::Harmonic => self.harmonic(as_int(&vals[0], "H")?)?,
                    Func::Floor => vals[0].floor(),
                    Func::Poch => {
                        let k = as_int(&vals[1], "poch")?;
                        if k < 0 {
                            return Err(FormulaError::Domain(format!("poch with k = {k}")));
                        }
                        let mut acc = Rat::one();
                        for i in 0..k {
                            acc *= &vals[0] + Rat::from_integer(BigInt::from(i));
                        }
                        acc
                    }
                }
            }
            Expr::Sum { var, lo, hi, body } => {
                let lo = as_int(&self.go(lo, n)?, "sum bound")?;
                let hi = as_int(&self.go(hi, n)?, "sum bound")?;
                let mut acc = Rat::zero();
                for k in lo..=hi {
                    self.env.push((var.clone(), Rat::from_integer(BigInt::from(k))));
                    let v = self.go(body, n);
                    self.env.pop();
                    acc += v?;
                }
                acc
            }
        })
    }
}
