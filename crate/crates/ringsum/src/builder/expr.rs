//! Expressions for sums, products and their summands: AST, parser, printer
//! and a direct exact evaluator that does not go through any tower.

use crate::arith::{Const, Cyc, Field};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    /// Nonnegative integer literal; negative numbers are `Neg(Int)`.
    Int(BigInt),
    /// The imaginary unit ζ₄.
    Imag,
    /// The session root of unity ζ_N.
    Zeta,
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Sum { var: String, lo: Box<Expr>, hi: Box<Expr>, body: Box<Expr> },
    Prod { var: String, lo: Box<Expr>, hi: Box<Expr>, body: Box<Expr> },
    Binom(Box<Expr>, Box<Expr>),
}

const RESERVED: [&str; 5] = ["Sum", "Prod", "Binom", "I", "zeta"];

impl Expr {
    pub fn int(v: i64) -> Expr {
        Expr::big(BigInt::from(v))
    }

    pub fn big(v: BigInt) -> Expr {
        if v.is_negative() {
            Expr::Neg(Box::new(Expr::Int(-v)))
        } else {
            Expr::Int(v)
        }
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Expr, b: Expr) -> Expr {
        Expr::Pow(Box::new(a), Box::new(b))
    }

    pub fn binom(a: Expr, b: Expr) -> Expr {
        Expr::Binom(Box::new(a), Box::new(b))
    }

    pub fn sum(var: &str, lo: Expr, hi: Expr, body: Expr) -> Expr {
        Expr::Sum { var: var.to_string(), lo: Box::new(lo), hi: Box::new(hi), body: Box::new(body) }
    }

    pub fn prod(var: &str, lo: Expr, hi: Expr, body: Expr) -> Expr {
        Expr::Prod { var: var.to_string(), lo: Box::new(lo), hi: Box::new(hi), body: Box::new(body) }
    }

    /// `var + d` with the offset folded into an addition or subtraction.
    pub fn offset(var: &str, d: i64) -> Expr {
        match d.signum() {
            0 => Expr::var(var),
            1 => Expr::add(Expr::var(var), Expr::int(d)),
            _ => Expr::sub(Expr::var(var), Expr::int(-d)),
        }
    }

    pub fn is_zero_literal(&self) -> bool {
        matches!(self, Expr::Int(v) if v.is_zero())
    }

    /// Variables occurring free.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Expr::Int(_) | Expr::Imag | Expr::Zeta => {}
            Expr::Var(v) => {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
            Expr::Neg(a) => a.collect_free(bound, out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) | Expr::Binom(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Expr::Sum { var, lo, hi, body } | Expr::Prod { var, lo, hi, body } => {
                lo.collect_free(bound, out);
                hi.collect_free(bound, out);
                bound.push(var.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Replaces free occurrences of `name` by `val`.
    pub fn subst(&self, name: &str, val: &Expr) -> Expr {
        let go = |e: &Expr| Box::new(e.subst(name, val));
        match self {
            Expr::Var(v) if v == name => val.clone(),
            Expr::Int(_) | Expr::Imag | Expr::Zeta | Expr::Var(_) => self.clone(),
            Expr::Neg(a) => Expr::Neg(go(a)),
            Expr::Add(a, b) => Expr::Add(go(a), go(b)),
            Expr::Sub(a, b) => Expr::Sub(go(a), go(b)),
            Expr::Mul(a, b) => Expr::Mul(go(a), go(b)),
            Expr::Div(a, b) => Expr::Div(go(a), go(b)),
            Expr::Pow(a, b) => Expr::Pow(go(a), go(b)),
            Expr::Binom(a, b) => Expr::Binom(go(a), go(b)),
            Expr::Sum { var, lo, hi, body } | Expr::Prod { var, lo, hi, body } => {
                let body = if var == name { body.clone() } else { go(body) };
                let (var, lo, hi) = (var.clone(), go(lo), go(hi));
                match self {
                    Expr::Sum { .. } => Expr::Sum { var, lo, hi, body },
                    _ => Expr::Prod { var, lo, hi, body },
                }
            }
        }
    }

    /// Renames bound variables to `names[depth]`, outermost first.
    pub fn rename_bound(&self, names: &[String]) -> Result<Expr> {
        self.rename_at(names, 0)
    }

    fn rename_at(&self, names: &[String], depth: usize) -> Result<Expr> {
        let go = |e: &Expr| -> Result<Box<Expr>> { Ok(Box::new(e.rename_at(names, depth)?)) };
        Ok(match self {
            Expr::Int(_) | Expr::Imag | Expr::Zeta | Expr::Var(_) => self.clone(),
            Expr::Neg(a) => Expr::Neg(go(a)?),
            Expr::Add(a, b) => Expr::Add(go(a)?, go(b)?),
            Expr::Sub(a, b) => Expr::Sub(go(a)?, go(b)?),
            Expr::Mul(a, b) => Expr::Mul(go(a)?, go(b)?),
            Expr::Div(a, b) => Expr::Div(go(a)?, go(b)?),
            Expr::Pow(a, b) => Expr::Pow(go(a)?, go(b)?),
            Expr::Binom(a, b) => Expr::Binom(go(a)?, go(b)?),
            Expr::Sum { var, lo, hi, body } | Expr::Prod { var, lo, hi, body } => {
                let fresh = names
                    .get(depth)
                    .ok_or_else(|| Error::Invalid("sums and products are nested too deeply".into()))?
                    .clone();
                let body = body.subst(var, &Expr::Var(fresh.clone())).rename_at(names, depth + 1)?;
                let (lo, hi, body) = (go(lo)?, go(hi)?, Box::new(body));
                match self {
                    Expr::Sum { .. } => Expr::Sum { var: fresh, lo, hi, body },
                    _ => Expr::Prod { var: fresh, lo, hi, body },
                }
            }
        })
    }

    /// Same value, fewer symbols: folds integer offsets, unit factors and
    /// double signs. Only rewrites that hold for every value of the variables
    /// are applied, so a pole is never removed.
    pub fn tidy(&self) -> Expr {
        let go = |e: &Expr| e.tidy();
        match self {
            Expr::Int(_) | Expr::Imag | Expr::Zeta | Expr::Var(_) => self.clone(),
            Expr::Neg(a) => match go(a) {
                Expr::Neg(x) => *x,
                Expr::Int(v) if v.is_zero() => Expr::Int(v),
                x => Expr::neg(x),
            },
            Expr::Add(a, b) => tidy_offset(go(a), go(b), false),
            Expr::Sub(a, b) => tidy_offset(go(a), go(b), true),
            Expr::Mul(a, b) => match (go(a), go(b)) {
                (x, y) if is_one(&x) => y,
                (x, y) if is_one(&y) => x,
                (Expr::Neg(x), y) if is_one(&x) => Expr::neg(y),
                (Expr::Neg(x), y) => Expr::neg(Expr::mul(*x, y)),
                (x, Expr::Neg(y)) => Expr::neg(Expr::mul(x, *y)),
                (x, y) => Expr::mul(x, y),
            },
            Expr::Div(a, b) => match (go(a), go(b)) {
                (x, y) if is_one(&y) => x,
                (Expr::Neg(x), y) => Expr::neg(Expr::div(*x, y)),
                (x, Expr::Neg(y)) => Expr::neg(Expr::div(x, *y)),
                (x, y) => Expr::div(x, y),
            },
            Expr::Pow(a, b) => match (go(a), go(b)) {
                (x, y) if is_one(&y) => x,
                (x, Expr::Int(_)) if is_one(&x) => x,
                (x, y) => Expr::pow(x, y),
            },
            Expr::Binom(a, b) => Expr::binom(go(a), go(b)),
            Expr::Sum { var, lo, hi, body } => Expr::sum(var, go(lo), go(hi), go(body)),
            Expr::Prod { var, lo, hi, body } => Expr::prod(var, go(lo), go(hi), go(body)),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let wrap = self.prec() < min;
        if wrap {
            f.write_str("(")?;
        }
        match self {
            Expr::Int(v) => write!(f, "{v}")?,
            Expr::Imag => f.write_str("I")?,
            Expr::Zeta => f.write_str("zeta")?,
            Expr::Var(v) => f.write_str(v)?,
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write(f, 3)?;
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write(f, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write(f, 2)?;
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.write(f, 2)?;
                f.write_str(if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                b.write(f, 3)?;
            }
            Expr::Pow(a, b) => {
                a.write(f, 5)?;
                f.write_str("^")?;
                let mut e = b.as_ref();
                while let Expr::Neg(inner) = e {
                    f.write_str("-")?;
                    e = inner;
                }
                e.write(f, 5)?;
            }
            Expr::Binom(a, b) => {
                f.write_str("Binom(")?;
                a.write(f, 0)?;
                f.write_str(", ")?;
                b.write(f, 0)?;
                f.write_str(")")?;
            }
            Expr::Sum { var, lo, hi, body } | Expr::Prod { var, lo, hi, body } => {
                let head = if matches!(self, Expr::Sum { .. }) { "Sum" } else { "Prod" };
                write!(f, "{head}({var}, ")?;
                lo.write(f, 0)?;
                f.write_str(", ")?;
                hi.write(f, 0)?;
                f.write_str(", ")?;
                body.write(f, 0)?;
                f.write_str(")")?;
            }
        }
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn is_one(e: &Expr) -> bool {
    matches!(e, Expr::Int(v) if *v == BigInt::from(1))
}

/// Splits `x + c` and `x - c` into (x, c) for an integer literal c.
fn split_offset(e: Expr) -> (Option<Expr>, BigInt) {
    match e {
        Expr::Int(v) => (None, v),
        Expr::Neg(x) if matches!(*x, Expr::Int(_)) => match *x {
            Expr::Int(v) => (None, -v),
            _ => unreachable!(),
        },
        Expr::Add(x, c) if matches!(*c, Expr::Int(_)) => match *c {
            Expr::Int(v) => (Some(*x), v),
            _ => unreachable!(),
        },
        Expr::Sub(x, c) if matches!(*c, Expr::Int(_)) => match *c {
            Expr::Int(v) => (Some(*x), -v),
            _ => unreachable!(),
        },
        x => (Some(x), BigInt::zero()),
    }
}

/// `a + b` (or `a - b` when `minus`) over tidied operands.
fn tidy_offset(a: Expr, b: Expr, minus: bool) -> Expr {
    let (b, minus) = match b {
        Expr::Neg(x) => (*x, !minus),
        x => (x, minus),
    };
    if let Expr::Int(v) = &b {
        let v = if minus { -v.clone() } else { v.clone() };
        let (x, c) = split_offset(a);
        let c = c + v;
        return match x {
            None => Expr::big(c),
            Some(x) if c.is_zero() => x,
            Some(x) if c.is_negative() => Expr::sub(x, Expr::Int(-c)),
            Some(x) => Expr::add(x, Expr::Int(c)),
        };
    }
    if a.is_zero_literal() {
        return if minus { Expr::neg(b) } else { b };
    }
    match (b, minus) {
        // a + (-x - y) = a - x - y
        (Expr::Sub(x, y), false) if matches!(*x, Expr::Neg(_)) => match *x {
            Expr::Neg(x) => Expr::sub(Expr::sub(a, *x), *y),
            _ => unreachable!(),
        },
        (b, true) => Expr::sub(a, b),
        (b, false) => Expr::add(a, b),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Lexed>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let ch = chars[i];
        let (l, c) = (line, col);
        if ch == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if ch.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        if ch.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Lexed { tok: Tok::Num(s.parse().expect("digits")), line: l, col: c });
        } else if ch.is_alphabetic() || ch == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Lexed { tok: Tok::Ident(chars[start..i].iter().collect()), line: l, col: c });
        } else if "+-*/^(),".contains(ch) {
            i += 1;
            out.push(Lexed { tok: Tok::Sym(ch), line: l, col: c });
        } else {
            return Err(Error::Syntax { line: l, col: c, expected: format!("a token, found '{ch}'") });
        }
        col += i - start;
    }
    out.push(Lexed { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Syntax { line: t.line, col: t.col, expected: expected.to_string() })
    }

    fn eat(&mut self, ch: char) -> bool {
        if *self.peek() == Tok::Sym(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            self.fail(&format!("'{ch}'"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = Expr::add(e, self.term()?);
            } else if self.eat('-') {
                e = Expr::sub(e, self.term()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                e = Expr::mul(e, self.unary()?);
            } else if self.eat('/') {
                e = Expr::div(e, self.unary()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::neg(self.unary()?));
        }
        let b = self.base()?;
        if self.eat('^') {
            return Ok(Expr::pow(b, self.exponent()?));
        }
        Ok(b)
    }

    fn exponent(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::neg(self.exponent()?));
        }
        self.base()
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                self.pos += 1;
                Ok(s)
            }
            _ => self.fail("a variable name"),
        }
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Num(v) => {
                self.pos += 1;
                Ok(Expr::Int(v))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(s) => {
                self.pos += 1;
                match s.as_str() {
                    "I" => Ok(Expr::Imag),
                    "zeta" => Ok(Expr::Zeta),
                    "Sum" | "Prod" => {
                        self.expect('(')?;
                        let var = self.ident()?;
                        self.expect(',')?;
                        let lo = self.expr()?;
                        self.expect(',')?;
                        let hi = self.expr()?;
                        self.expect(',')?;
                        let body = self.expr()?;
                        self.expect(')')?;
                        Ok(if s == "Sum" { Expr::sum(&var, lo, hi, body) } else { Expr::prod(&var, lo, hi, body) })
                    }
                    "Binom" => {
                        self.expect('(')?;
                        let a = self.expr()?;
                        self.expect(',')?;
                        let b = self.expr()?;
                        self.expect(')')?;
                        Ok(Expr::binom(a, b))
                    }
                    _ => Ok(Expr::Var(s)),
                }
            }
            _ => self.fail("a number, variable, '(' or call"),
        }
    }
}

/// Parses an expression; errors carry the 1-based line and column.
pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("an operator or end of input");
    }
    Ok(e)
}

/// Evaluates expressions directly by exact arithmetic, summing and
/// multiplying term by term.
#[derive(Clone, Debug)]
pub struct ExprEval {
    pub zeta: u32,
    pub params: Vec<String>,
    /// Value of each parameter; `Const::param(i)` keeps it symbolic.
    pub values: Vec<Const>,
}

impl ExprEval {
    /// Evaluator with symbolic parameters.
    pub fn symbolic(zeta: u32, params: &[String]) -> Self {
        let values = (0..params.len()).map(|i| Const::param(i as u32)).collect();
        ExprEval { zeta, params: params.to_vec(), values }
    }

    pub fn eval(&self, e: &Expr, env: &[(String, i64)]) -> Result<Const> {
        let mut env: Vec<(String, i64)> = env.to_vec();
        self.go(e, &mut env)
    }

    fn point(env: &[(String, i64)]) -> i64 {
        env.first().map_or(0, |(_, v)| *v)
    }

    fn int_of(&self, e: &Expr, env: &mut Vec<(String, i64)>, what: &str) -> Result<i64> {
        self.go(e, env)?
            .as_i64()
            .ok_or_else(|| Error::Invalid(format!("{what} {e} does not evaluate to an integer")))
    }

    fn go(&self, e: &Expr, env: &mut Vec<(String, i64)>) -> Result<Const> {
        Ok(match e {
            Expr::Int(v) => Const::rat(v.clone().into()),
            Expr::Imag => imag(self.zeta)?,
            Expr::Zeta => Const::cyc(Cyc::zeta(self.zeta)),
            Expr::Var(v) => {
                if let Some((_, x)) = env.iter().rev().find(|(n, _)| n == v) {
                    Const::int(*x)
                } else if let Some(i) = self.params.iter().position(|p| p == v) {
                    self.values[i].clone()
                } else {
                    return Err(Error::Invalid(format!("unbound variable {v}")));
                }
            }
            Expr::Neg(a) => self.go(a, env)?.negate(),
            Expr::Add(a, b) => self.go(a, env)?.plus(&self.go(b, env)?),
            Expr::Sub(a, b) => self.go(a, env)?.minus(&self.go(b, env)?),
            Expr::Mul(a, b) => self.go(a, env)?.times(&self.go(b, env)?),
            Expr::Div(a, b) => {
                let d = self.go(b, env)?;
                if d.is_zero() {
                    return Err(Error::PoleAtPoint { k: Self::point(env) });
                }
                self.go(a, env)?.over(&d)
            }
            Expr::Pow(a, b) => {
                let base = self.go(a, env)?;
                let m = self.int_of(b, env, "exponent")?;
                if m < 0 && base.is_zero() {
                    return Err(Error::PoleAtPoint { k: Self::point(env) });
                }
                base.powi(m)
            }
            Expr::Binom(a, b) => {
                let top = self.go(a, env)?;
                let m = self.int_of(b, env, "lower binomial argument")?;
                binomial(&top, m)
            }
            Expr::Sum { var, lo, hi, body } | Expr::Prod { var, lo, hi, body } => {
                let is_sum = matches!(e, Expr::Sum { .. });
                let lo = self.int_of(lo, env, "bound")?;
                let hi = self.int_of(hi, env, "bound")?;
                let mut acc = if is_sum { Const::zero() } else { Const::one() };
                for j in lo..=hi {
                    env.push((var.clone(), j));
                    let v = self.go(body, env);
                    env.pop();
                    acc = if is_sum { acc.plus(&v?) } else { acc.times(&v?) };
                }
                acc
            }
        })
    }
}

/// ι, provided the session's cyclotomic field contains it.
pub fn imag(zeta: u32) -> Result<Const> {
    if zeta % 4 != 0 {
        return Err(Error::RootGeneratorsUnavailable { r: 4, n: zeta });
    }
    Ok(Const::cyc(Cyc::zeta(4)))
}

/// `binom(a, m)` for an integer `m`: the falling factorial over `m!`, and 0 for `m < 0`.
pub fn binomial(a: &Const, m: i64) -> Const {
    if m < 0 {
        return Const::zero();
    }
    let mut acc = Const::one();
    for i in 0..m {
        acc = acc.times(&a.minus(&Const::int(i))).over(&Const::int(i + 1));
    }
    acc
}

/// Integer value of a literal-only expression.
pub fn literal_i64(e: &Expr) -> Option<i64> {
    match e {
        Expr::Int(v) => v.to_i64(),
        Expr::Neg(a) => literal_i64(a).map(|v| -v),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::rat;

    #[test]
    fn parses_examples() {
        let e = parse("Sum(j,1,k, (-1)^j / j)").unwrap();
        assert!(matches!(e, Expr::Sum { ref var, .. } if var == "j"));
        let e = parse("(-1)^Binom(k+1,2) * k^2 * Sum(j,1,k,(-1)^j/j)").unwrap();
        assert!(matches!(e, Expr::Mul(..)));
        let e = parse("Prod(k,1,b, -(I^k)/(1+k))").unwrap();
        assert_eq!(e.free_vars().into_iter().collect::<Vec<_>>(), vec!["b".to_string()]);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(
            parse("1 +\n  * 2").unwrap_err(),
            Error::Syntax { line: 2, col: 3, expected: "a number, variable, '(' or call".into() }
        );
        assert!(matches!(parse("Sum(1,1,k,j)"), Err(Error::Syntax { line: 1, col: 5, .. })));
        assert!(matches!(parse("k k"), Err(Error::Syntax { col: 3, .. })));
        assert!(matches!(parse("k $"), Err(Error::Syntax { col: 3, .. })));
    }

    #[test]
    fn printing_round_trips() {
        for src in [
            "(-1)^Binom(k+1,2) * k^2 * Sum(j,1,k,(-1)^j/j)",
            "Prod(k,1,b, -(I^k)/(1+k))",
            "a - (b - c) - -d",
            "a/(b*c)/d^-2",
            "(a^b)^c + -(-x)",
            "2^(k*(k+1)/2)*zeta^3",
        ] {
            let e = parse(src).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{src} -> {e}");
        }
    }

    #[test]
    fn direct_evaluation() {
        let ev = ExprEval::symbolic(4, &[]);
        let e = parse("Sum(j,1,k,(-1)^j/j)").unwrap();
        assert_eq!(ev.eval(&e, &[("k".into(), 2)]).unwrap(), Const::rat(rat(-1, 2)));
        let e = parse("(-1)^Binom(k+1,2)").unwrap();
        let vals: Vec<i64> = (1..=4).map(|k| ev.eval(&e, &[("k".into(), k)]).unwrap().as_i64().unwrap()).collect();
        assert_eq!(vals, vec![-1, -1, 1, 1]);
        let e = parse("Prod(j,1,k-1, j*I^j)").unwrap();
        assert_eq!(ev.eval(&e, &[("k".into(), 1)]).unwrap(), Const::int(1));
        assert_eq!(ev.eval(&e, &[("k".into(), 3)]).unwrap(), Const::cyc(Cyc::zeta(4)).powi(3).times(&Const::int(2)));
        assert_eq!(ev.eval(&parse("1/(k-1)").unwrap(), &[("k".into(), 1)]).unwrap_err(), Error::PoleAtPoint { k: 1 });
    }

    #[test]
    fn symbolic_binomials() {
        let ev = ExprEval::symbolic(1, &["n".to_string()]);
        let v = ev.eval(&parse("Binom(n,2)").unwrap(), &[]).unwrap();
        let n = Const::param(0);
        assert_eq!(v, n.times(&n.minus(&Const::one())).over(&Const::int(2)));
        assert_eq!(binomial(&Const::int(3), 5), Const::zero());
        assert_eq!(binomial(&Const::int(5), 2), Const::int(10));
    }

    #[test]
    fn renaming_respects_scopes() {
        let e = parse("Sum(k,1,b, Sum(i,1,k,1/i)/k)").unwrap();
        let names: Vec<String> = ["j", "i"].iter().map(|s| s.to_string()).collect();
        let r = e.rename_bound(&names).unwrap();
        assert_eq!(r, parse("Sum(j,1,b, Sum(i,1,j,1/i)/j)").unwrap());
        let s = parse("Sum(j,1,k,j*k)").unwrap().subst("j", &Expr::int(3));
        assert_eq!(s, parse("Sum(j,1,k,j*k)").unwrap());
    }

    #[test]
    fn tidying_keeps_values() {
        for (src, want) in [
            ("b + 1 + 1", "b + 2"),
            ("b + 1 - 1", "b"),
            ("1*x + -(1/2)*y", "x - 1/2*y"),
            ("a - -(c)", "a + c"),
            ("k + (-n - 1)", "k - n - 1"),
            ("x^1/1", "x"),
            ("0 - x", "-x"),
            ("a - -(2*k)/(k - 1)*B", "a + 2*k/(k - 1)*B"),
            ("Prod(j, 1, b + 1 - 1, j)", "Prod(j, 1, b, j)"),
            ("(1/2*1^2 - 1/2)*-(x)", "-((1/2 - 1/2)*x)"),
            ("a/-(k)", "-(a/k)"),
        ] {
            assert_eq!(parse(src).unwrap().tidy().to_string(), want, "{src}");
        }
        let ev = ExprEval::symbolic(4, &[]);
        for src in ["(k + 3 - 5)*I^1 - -(1*k)/(k - 1 + 2)", "Sum(j, 1, k + 1 - 1, -(-1)^j/(j + 0))"] {
            let e = parse(src).unwrap();
            for k in 1..6 {
                let at = [("k".to_string(), k)];
                assert_eq!(ev.eval(&e.tidy(), &at).unwrap(), ev.eval(&e, &at).unwrap(), "{src} at {k}");
            }
        }
    }
}
