//! A tiny arithmetic grammar for user curves, evaluated through jets.
//!
//! ```text
//! expr  = term { ("+" | "-") term } ;
//! term  = unary { ("*" | "/") unary } ;
//! unary = ("-" | "+") unary | power ;
//! power = atom [ "^" unary ] ;          (* exponent must not depend on t *)
//! atom  = number | "t" | "pi" | "e"
//!       | ("sin" | "cos" | "sqrt") "(" expr ")"
//!       | "(" expr ")" ;
//! ```

use crate::diffkit::{ArithOp, Jet, JetFn};
use crate::error::{Error, Result};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    T,
    Neg(Box<Expr>),
    Bin(ArithOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
    Pow(Box<Expr>, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Sqrt,
}

impl Expr {
    pub fn eval<S: Scalar>(&self, t: &Jet<S>) -> Result<Jet<S>> {
        Ok(match self {
            Expr::Num(v) => t.lift_const(S::lit(*v)),
            Expr::T => *t,
            Expr::Neg(e) => -e.eval(t)?,
            Expr::Bin(op, a, b) => a.eval(t)?.arith(*op, &b.eval(t)?)?,
            Expr::Call(f, e) => {
                let u = e.eval(t)?;
                match f {
                    Func::Sin => u.apply(JetFn::Sin)?,
                    Func::Cos => u.apply(JetFn::Cos)?,
                    Func::Sqrt => u.apply(JetFn::Sqrt)?,
                }
            }
            Expr::Pow(e, p) => e.eval(t)?.apply(JetFn::PowConst(S::lit(*p)))?,
        })
    }

    pub fn eval_f64(&self, t: f64) -> Result<f64> {
        Ok(self.eval(&Jet::constant(t, 0)?)?.value())
    }

    fn depends_on_t(&self) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::T => true,
            Expr::Neg(e) | Expr::Call(_, e) | Expr::Pow(e, _) => e.depends_on_t(),
            Expr::Bin(_, a, b) => a.depends_on_t() || b.depends_on_t(),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat(b'+') {
                ArithOp::Add
            } else if self.eat(b'-') {
                ArithOp::Sub
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat(b'*') {
                ArithOp::Mul
            } else if self.eat(b'/') {
                ArithOp::Div
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let exp = self.unary()?;
        if exp.depends_on_t() {
            return Err(Error::Parse { pos: at, msg: "exponent must be constant".into() });
        }
        let p = exp.eval_f64(0.0)?;
        Ok(Expr::Pow(Box::new(base), p))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let func = match name {
                    "t" => return Ok(Expr::T),
                    "pi" => return Ok(Expr::Num(std::f64::consts::PI)),
                    "e" => return Ok(Expr::Num(std::f64::consts::E)),
                    "sin" => Func::Sin,
                    "cos" => Func::Cos,
                    "sqrt" => Func::Sqrt,
                    _ => return Err(Error::Parse { pos: start, msg: format!("unknown identifier {name:?}") }),
                };
                if !self.eat(b'(') {
                    return Err(self.err("expected '(' after function name"));
                }
                let arg = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(Expr::Call(func, Box::new(arg)))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
        };
        digits(self);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            digits(self);
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E'))
            && self.src.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit() || *c == b'-' || *c == b'+')
        {
            self.pos += 2;
            digits(self);
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<f64>()
            .map(Expr::Num)
            .map_err(|_| Error::Parse { pos: start, msg: format!("bad number {text:?}") })
    }
}
