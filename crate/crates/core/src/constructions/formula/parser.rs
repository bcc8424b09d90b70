//! Recursive-descent parser producing [`Expr`] trees.

use super::lexer::{tokenize, Tok, Token};
use super::{BinOp, Expr, FormulaError, Func};
use crate::exact::Rat;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    scope: Vec<String>,
}

pub fn parse(src: &str) -> Result<Expr, FormulaError> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0, scope: Vec::new() };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        _ => Err(p.error("unexpected trailing input")),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: &str) -> FormulaError {
        let t = &self.toks[self.pos];
        FormulaError::Syntax { line: t.line, col: t.col, msg: msg.to_string() }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), FormulaError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr, FormulaError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, FormulaError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, FormulaError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, FormulaError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let exp = match self.peek() {
            Tok::Minus => {
                self.bump();
                Expr::Neg(Box::new(self.atom()?))
            }
            _ => self.atom()?,
        };
        Ok(Expr::Pow(Box::new(base), Box::new(exp)))
    }

    fn atom(&mut self) -> Result<Expr, FormulaError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(Expr::Num(Rat::from_integer(v)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let at = self.pos;
                self.bump();
                if *self.peek() == Tok::LParen {
                    self.bump();
                    return self.call(&name, at);
                }
                if name == "n" {
                    Ok(Expr::N)
                } else if self.scope.iter().any(|s| *s == name) {
                    Ok(Expr::Var(name))
                } else {
                    self.pos = at;
                    Err(self.error(&format!("unbound variable '{name}'")))
                }
            }
            _ => Err(self.error("expected a number, variable, call or '('")),
        }
    }

    fn call(&mut self, name: &str, at: usize) -> Result<Expr, FormulaError> {
        if name == "sum" {
            return self.sum();
        }
        let (func, arity) = match name {
            "binom" => (Func::Binom, 2),
            "fact" => (Func::Fact, 1),
            "H" => (Func::Harmonic, 1),
            "poch" => (Func::Poch, 2),
            "floor" => (Func::Floor, 1),
            _ => {
                self.pos = at;
                return Err(self.error(&format!("unknown function '{name}'")));
            }
        };
        let mut args = vec![self.expr()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.expr()?);
        }
        if args.len() != arity {
            return Err(self.error(&format!("{name} takes {arity} argument(s)")));
        }
        self.expect(Tok::RParen, "')'")?;
        Ok(Expr::Call(func, args))
    }

    fn sum(&mut self) -> Result<Expr, FormulaError> {
        let var = match self.peek().clone() {
            Tok::Ident(v) if v != "n" => v,
            _ => return Err(self.error("expected summation variable")),
        };
        self.bump();
        self.expect(Tok::Eq, "'='")?;
        let lo = self.expr()?;
        self.expect(Tok::DotDot, "'..'")?;
        let hi = self.expr()?;
        self.expect(Tok::Comma, "','")?;
        self.scope.push(var.clone());
        let body = self.expr();
        self.scope.pop();
        let body = body?;
        self.expect(Tok::RParen, "')'")?;
        Ok(Expr::Sum { var, lo: Box::new(lo), hi: Box::new(hi), body: Box::new(body) })
    }
}
