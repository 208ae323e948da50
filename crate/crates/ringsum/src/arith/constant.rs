//! The constant field K = Q(zeta_N)(n_1, ..., n_r).
//!
//! A constant is represented recursively: a function of the parameters
//! `n_1..n_v` is a reduced fraction of polynomials in `n_v` whose coefficients
//! only involve `n_1..n_{v-1}`. Canonical forms make structural equality exact.

use super::cyc::Cyc;
use super::field::Field;
use super::frac::Frac;
use super::poly::Poly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::sync::Arc;

#[derive(Clone, PartialEq, Debug)]
pub enum Const {
    /// A parameter-free element of Q(zeta_N).
    Num(Cyc),
    /// A function that genuinely depends on parameter `var`.
    Fun(Arc<ParamFun>),
}

#[derive(Clone, PartialEq, Debug)]
pub struct ParamFun {
    pub var: u32,
    pub frac: Frac<Const>,
}

impl Const {
    pub fn int(v: i64) -> Self {
        Const::Num(Cyc::int(v))
    }

    pub fn rat(q: BigRational) -> Self {
        Const::Num(Cyc::rational(q))
    }

    pub fn cyc(c: Cyc) -> Self {
        Const::Num(c)
    }

    /// The parameter `n_var` as a constant.
    pub fn param(var: u32) -> Self {
        Const::Fun(Arc::new(ParamFun { var, frac: Frac::var() }))
    }

    /// 0 for parameter-free constants, otherwise 1 + index of the top parameter.
    pub fn level(&self) -> u32 {
        match self {
            Const::Num(_) => 0,
            Const::Fun(p) => p.var + 1,
        }
    }

    pub fn as_cyc(&self) -> Option<&Cyc> {
        match self {
            Const::Num(c) => Some(c),
            Const::Fun(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_cyc().and_then(|c| c.as_rational())
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        let q = self.as_rational()?;
        if q.denom().is_one() {
            Some(q.numer().clone())
        } else {
            None
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        self.as_integer()?.to_i64()
    }

    pub(crate) fn as_frac_in(&self, var: u32) -> Frac<Const> {
        match self {
            Const::Fun(p) if p.var == var => p.frac.clone(),
            _ => Frac::constant(self.clone()),
        }
    }

    pub(crate) fn from_frac(var: u32, f: Frac<Const>) -> Self {
        match f.as_constant() {
            Some(c) => c,
            None => Const::Fun(Arc::new(ParamFun { var, frac: f })),
        }
    }

    /// Substitutes `n_var := val`; `None` when a denominator vanishes.
    pub fn subst(&self, var: u32, val: &Const) -> Option<Const> {
        match self {
            Const::Num(_) => Some(self.clone()),
            Const::Fun(p) if p.var < var => Some(self.clone()),
            Const::Fun(p) => {
                let x = if p.var == var { val.clone() } else { Const::param(p.var) };
                let ev = |q: &Poly<Const>| -> Option<Const> {
                    let mut acc = Const::zero();
                    for c in q.coeffs().iter().rev() {
                        acc = acc.times(&x).plus(&c.subst(var, val)?);
                    }
                    Some(acc)
                };
                let d = ev(p.frac.den())?;
                if d.is_zero() {
                    return None;
                }
                Some(ev(p.frac.num())?.over(&d))
            }
        }
    }

    /// Substitutes rational values for all parameters (index = parameter).
    pub fn specialize(&self, vals: &[BigRational]) -> Option<Cyc> {
        let mut c = self.clone();
        for v in (0..vals.len()).rev() {
            c = c.subst(v as u32, &Const::rat(vals[v].clone()))?;
        }
        c.as_cyc().cloned()
    }

    /// Top-level split into a lower-level factor and monic numerator/denominator
    /// polynomials in the top parameter.
    pub fn split_top(&self) -> (Const, Option<(u32, Poly<Const>, Poly<Const>)>) {
        match self {
            Const::Num(_) => (self.clone(), None),
            Const::Fun(p) => {
                let (c, num, den) = p.frac.split_content();
                (c, Some((p.var, num, den)))
            }
        }
    }

    /// Parser-compatible text form; `names[i]` names parameter `i`.
    pub fn render(&self, names: &[String]) -> String {
        match self {
            Const::Num(c) => c.render(),
            Const::Fun(p) => {
                let var = names.get(p.var as usize).cloned().unwrap_or_else(|| format!("n{}", p.var));
                render_frac(&p.frac, &var, &|c: &Const| c.render(names))
            }
        }
    }
}

/// True if `s` parses as a single factor without surrounding parentheses.
pub fn is_atomic(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    !body.is_empty() && body.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_' || ch == '^')
}

pub fn paren(s: &str) -> String {
    if is_atomic(s) && !s.starts_with('-') {
        s.to_string()
    } else {
        format!("({s})")
    }
}

/// Renders a polynomial as a sum of terms, highest degree first.
pub fn render_poly<C: Field>(p: &Poly<C>, var: &str, rc: &dyn Fn(&C) -> String) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, a) in p.coeffs().iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let s = rc(a);
        let (neg, body) = if let Some(rest) = s.strip_prefix('-').filter(|r| is_atomic(r) || is_ratio(r)) {
            (true, rest.to_string())
        } else {
            (false, s.clone())
        };
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let term = if mono.is_empty() {
            if out.is_empty() { body.clone() } else { paren_if_sum(&body) }
        } else if body == "1" {
            mono
        } else if is_atomic(&body) || is_ratio(&body) {
            format!("{body}*{mono}")
        } else {
            format!("({body})*{mono}")
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
            out.push_str(&term);
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    out
}

fn is_ratio(s: &str) -> bool {
    match s.split_once('/') {
        Some((a, b)) => is_atomic(a) && !a.starts_with('-') && is_atomic(b) && !b.starts_with('-'),
        None => false,
    }
}

fn paren_if_sum(s: &str) -> String {
    if s.contains(' ') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

pub fn render_frac<C: Field>(f: &Frac<C>, var: &str, rc: &dyn Fn(&C) -> String) -> String {
    let n = render_poly(f.num(), var, rc);
    if f.den().is_one() {
        return n;
    }
    let d = render_poly(f.den(), var, rc);
    let n = if n.contains(' ') || n.contains('/') { format!("({n})") } else { n };
    let d = if is_atomic(&d) && !d.starts_with('-') { d } else { format!("({d})") };
    format!("{n}/{d}")
}

impl Field for Const {
    fn zero() -> Self {
        Const::Num(Cyc::zero())
    }
    fn one() -> Self {
        Const::Num(Cyc::one())
    }
    fn from_rat(q: BigRational) -> Self {
        Const::rat(q)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Const::Num(c) if c.is_zero())
    }
    fn is_one(&self) -> bool {
        matches!(self, Const::Num(c) if c.is_one())
    }
    fn plus(&self, o: &Self) -> Self {
        match (self, o) {
            (Const::Num(a), Const::Num(b)) => Const::Num(a.plus(b)),
            _ => {
                let v = self.level().max(o.level()) - 1;
                Const::from_frac(v, self.as_frac_in(v).plus(&o.as_frac_in(v)))
            }
        }
    }
    fn negate(&self) -> Self {
        match self {
            Const::Num(a) => Const::Num(a.negate()),
            Const::Fun(p) => Const::Fun(Arc::new(ParamFun { var: p.var, frac: p.frac.negate() })),
        }
    }
    fn times(&self, o: &Self) -> Self {
        match (self, o) {
            (Const::Num(a), Const::Num(b)) => Const::Num(a.times(b)),
            _ => {
                if self.is_zero() || o.is_zero() {
                    return Const::zero();
                }
                let v = self.level().max(o.level()) - 1;
                Const::from_frac(v, self.as_frac_in(v).times(&o.as_frac_in(v)))
            }
        }
    }
    fn recip(&self) -> Self {
        match self {
            Const::Num(a) => Const::Num(a.recip()),
            Const::Fun(p) => Const::Fun(Arc::new(ParamFun { var: p.var, frac: p.frac.recip() })),
        }
    }
}
