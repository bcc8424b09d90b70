//! Closed-form coefficient formulas: binomial sums with factorials,
//! harmonic numbers and Pochhammer symbols.

mod eval;
mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

use crate::exact::{fmt_rat, Rat};

pub use eval::Evaluator;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Binom,
    Fact,
    Harmonic,
    Poch,
    Floor,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Binom => "binom",
            Func::Fact => "fact",
            Func::Harmonic => "H",
            Func::Poch => "poch",
            Func::Floor => "floor",
        }
    }
}

/// Expression tree. Bound variables are introduced only by `Sum`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Num(Rat),
    N,
    Var(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    /// The exponent must evaluate to an integer.
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
    Sum { var: String, lo: Box<Expr>, hi: Box<Expr>, body: Box<Expr> },
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) => write!(f, "{}", fmt_rat(r)),
            Expr::N => f.write_str("n"),
            Expr::Var(v) => f.write_str(v),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Bin(op, a, b) => {
                let s = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                };
                write!(f, "({a} {s} {b})")
            }
            Expr::Pow(a, b) => write!(f, "({a})^({b})"),
            Expr::Call(func, args) => {
                let args: Vec<String> = args.iter().map(ToString::to_string).collect();
                write!(f, "{}({})", func.name(), args.join(", "))
            }
            Expr::Sum { var, lo, hi, body } => write!(f, "sum({var}={lo}..{hi}, {body})"),
        }
    }
}

/// A parsed formula together with its source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    source: String,
    expr: Expr,
}

impl Formula {
    pub fn parse(src: &str) -> Result<Self, FormulaError> {
        Ok(Formula { source: src.trim().to_string(), expr: parser::parse(src)? })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    /// Value at `n`. Use an [`Evaluator`] directly to share caches across calls.
    pub fn eval(&self, n: u64) -> Result<Rat, FormulaError> {
        Evaluator::new().eval(&self.expr, n)
    }
}
