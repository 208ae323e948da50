//! Conversion of constants and tower elements back into expressions.

use super::expr::Expr;
use crate::arith::constant::{render_frac, ParamFun};
use crate::arith::{Const, Cyc, Field, Poly, RatFun};
use crate::tower::{BaseField, Tower, TowerElem};
use num_rational::BigRational;
use num_traits::{One, Signed};

fn rat_expr(q: &BigRational) -> Expr {
    let n = Expr::big(q.numer().abs());
    let body = if q.denom().is_one() { n } else { Expr::div(n, Expr::big(q.denom().clone())) };
    if q.is_negative() {
        Expr::neg(body)
    } else {
        body
    }
}

/// ζ_n^i in terms of `I` or the session root `zeta`.
fn root_expr(n: u32, i: usize, zeta: u32) -> Expr {
    let pw = |b: Expr, e: usize| if e == 1 { b } else { Expr::pow(b, Expr::int(e as i64)) };
    if n == 4 {
        pw(Expr::Imag, i)
    } else {
        let step = if zeta % n == 0 { (zeta / n) as usize } else { 1 };
        pw(Expr::Zeta, i * step)
    }
}

/// Splits off a sign from rational constants so sums print with `-`.
fn sign_of(c: &Const) -> (bool, Const) {
    match c.as_rational() {
        Some(q) if q.is_negative() => (true, c.negate()),
        _ => (false, c.clone()),
    }
}

/// Adds `term` to `acc`, subtracting when `neg`.
fn push(acc: Option<Expr>, neg: bool, term: Expr) -> Expr {
    match (acc, neg) {
        (None, false) => term,
        (None, true) => Expr::neg(term),
        (Some(a), false) => Expr::add(a, term),
        (Some(a), true) => Expr::sub(a, term),
    }
}

fn cyc_expr(c: &Cyc, zeta: u32) -> Expr {
    if let Some(q) = c.as_rational() {
        return rat_expr(&q);
    }
    let mut acc = None;
    for (i, a) in c.coeffs().iter().enumerate() {
        if num_traits::Zero::is_zero(a) {
            continue;
        }
        let mag = a.abs();
        let term = match (i, One::is_one(&mag)) {
            (0, _) => rat_expr(&mag),
            (_, true) => root_expr(c.order(), i, zeta),
            (_, false) => Expr::mul(rat_expr(&mag), root_expr(c.order(), i, zeta)),
        };
        acc = Some(push(acc, a.is_negative(), term));
    }
    acc.unwrap_or_else(|| Expr::int(0))
}

fn poly_expr(p: &Poly<Const>, var: &Expr, coeff: &dyn Fn(&Const) -> Expr) -> Expr {
    let mut acc = None;
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = sign_of(c);
        let mono = match i {
            0 => None,
            1 => Some(var.clone()),
            _ => Some(Expr::pow(var.clone(), Expr::int(i as i64))),
        };
        let term = match mono {
            None => coeff(&mag),
            Some(m) if mag.is_one() => m,
            Some(m) => Expr::mul(coeff(&mag), m),
        };
        acc = Some(push(acc, neg, term));
    }
    acc.unwrap_or_else(|| Expr::int(0))
}

fn frac_expr(num: &Poly<Const>, den: &Poly<Const>, var: &Expr, coeff: &dyn Fn(&Const) -> Expr) -> Expr {
    let n = poly_expr(num, var, coeff);
    if den.is_one() {
        n
    } else {
        Expr::div(n, poly_expr(den, var, coeff))
    }
}

/// A constant as an expression over the parameters, `I` and `zeta`.
pub fn const_expr(c: &Const, base: &BaseField) -> Expr {
    match c {
        Const::Num(x) => cyc_expr(x, base.zeta),
        Const::Fun(p) => {
            let ParamFun { var, frac } = p.as_ref();
            let name = base.params.get(*var as usize).cloned().unwrap_or_else(|| format!("n{var}"));
            frac_expr(frac.num(), frac.den(), &Expr::Var(name), &|x| const_expr(x, base))
        }
    }
}

/// An element of K(k) as an expression in `k`.
pub fn ratfun_expr(f: &RatFun, base: &BaseField) -> Expr {
    frac_expr(f.num(), f.den(), &Expr::var(super::TOWER_VAR), &|x| const_expr(x, base))
}

/// `g` with each generator replaced by the object it stands for.
pub fn elem_expr(t: &Tower, meanings: &[Expr], g: &TowerElem) -> Expr {
    let mut acc = None;
    for (exps, coeff) in g.terms().iter().rev() {
        let mut mono: Option<Expr> = None;
        for (i, &d) in exps.iter().enumerate() {
            if d == 0 {
                continue;
            }
            let f = if d == 1 { meanings[i].clone() } else { Expr::pow(meanings[i].clone(), Expr::int(d)) };
            mono = Some(match mono {
                None => f,
                Some(m) => Expr::mul(m, f),
            });
        }
        let (neg, term) = match (coeff.as_constant(), mono) {
            (Some(c), None) => {
                let (neg, mag) = sign_of(&c);
                (neg, const_expr(&mag, &t.base))
            }
            (Some(c), Some(m)) => {
                let (neg, mag) = sign_of(&c);
                (neg, if mag.is_one() { m } else { Expr::mul(const_expr(&mag, &t.base), m) })
            }
            (None, None) => (false, ratfun_expr(coeff, &t.base)),
            (None, Some(m)) => (false, Expr::mul(ratfun_expr(coeff, &t.base), m)),
        };
        acc = Some(push(acc, neg, term));
    }
    acc.unwrap_or_else(|| Expr::int(0))
}

/// `g` written with generator names, highest monomials first.
pub fn elem_text(t: &Tower, g: &TowerElem) -> String {
    if g.is_zero() {
        return "0".into();
    }
    let names = t.names();
    let params = &t.base.params;
    let mut parts: Vec<String> = Vec::new();
    for (exps, coeff) in g.terms().iter().rev() {
        let mono: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| if d == 1 { names[i].clone() } else { format!("{}^{}", names[i], d) })
            .map(|s| if s.contains('-') { s.replace('^', "^(") + ")" } else { s })
            .collect();
        let c = render_frac(coeff, super::TOWER_VAR, &|x: &Const| x.render(params));
        let c = if mono.is_empty() || !c.contains(' ') { c } else { format!("({c})") };
        parts.push(match (mono.is_empty(), c.as_str()) {
            (true, _) => c,
            (false, "1") => mono.join("*"),
            (false, "-1") => format!("-{}", mono.join("*")),
            _ => format!("{c}*{}", mono.join("*")),
        });
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        match p.strip_prefix('-') {
            Some(rest) => out.push_str(&format!(" - {rest}")),
            None => out.push_str(&format!(" + {p}")),
        }
    }
    out
}
