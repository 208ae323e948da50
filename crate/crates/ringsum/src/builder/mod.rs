//! Construction of towers from expressions: generators are adjoined only
//! after the characterization tests confirm that no new constants appear,
//! and objects that already live in the tower collapse onto witnesses.

pub mod expr;
mod render;

use crate::arith::{Const, Field, KPoly, RatFun};
use crate::error::{Error, Result};
use crate::pflde::{para_telescope, pflde_solve, telescope, PfldeOptions};
use crate::pmt::{mt_decide, MtResult};
use crate::tower::{BaseField, Evaluator, GenKind, PGElem, SeqContext, Tower, TowerElem};
pub use expr::{parse, Expr, ExprEval};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
pub use render::{const_expr, ratfun_expr};
use std::collections::HashMap;

/// Result of trying to adjoin a sum or product.
#[derive(Clone, Debug)]
pub enum AdjoinOutcome {
    /// The object equals `witness + constant` (sums) or `constant * witness` (products).
    Collapsed { witness: TowerElem, constant: Const },
    /// A new generator was adjoined; `element` represents the object.
    Extended { tower: Tower, gen: usize, element: TowerElem },
    /// `σ(g) = α^m g` for some `m > 1` but not for `m = 1`: the product is
    /// algebraic over the tower without being a root of unity extension.
    Rejected { m: u64, witness: TowerElem },
}

fn value_at(t: &Tower, e: &TowerElem, k: i64) -> Result<Const> {
    Evaluator::new(t, SeqContext::from_tower(t)).eval(e, k)
}

/// Adjoins `σ(s) = s + β` unless `β` telescopes in `t`. `init` is the value of
/// the sum at k₀.
pub fn adjoin_sigma(t: &Tower, beta: &TowerElem, name: &str, init: Const) -> Result<AdjoinOutcome> {
    if !beta.lives_below(t.len()) {
        return Err(Error::Invalid("summand involves generators outside the tower".into()));
    }
    let beta = t.normalize(beta);
    match telescope(t, &beta)? {
        Some(g) => {
            let constant = init.minus(&value_at(t, &g, t.base.k0)?);
            Ok(AdjoinOutcome::Collapsed { witness: g, constant })
        }
        None => {
            let tower = t.adjoin(name, GenKind::Sigma { beta }, init)?;
            Ok(AdjoinOutcome::Extended { tower, gen: t.len(), element: TowerElem::gen(t.len()) })
        }
    }
}

/// Adjoins `σ(p) = α p` as a Π-generator (α of infinite order) or an
/// R-generator (α of finite order λ), whichever the tests allow.
pub fn adjoin_product(t: &Tower, alpha: &PGElem, name: &str, init: Const) -> Result<AdjoinOutcome> {
    if !t.in_product_group(alpha, t.len()) {
        return Err(Error::NotInProductGroup(format!("quotient of {name}")));
    }
    if init.is_zero() {
        return Err(Error::Invalid(format!("{name} vanishes at the start index")));
    }
    let lambda = t.ord(alpha);
    let gen = t.len();
    match mt_decide(t, alpha)? {
        MtResult::NoSolution if lambda == 0 => {
            let tower = t.adjoin(name, GenKind::Pi { alpha: alpha.clone() }, init)?;
            Ok(AdjoinOutcome::Extended { tower, gen, element: TowerElem::gen(gen) })
        }
        MtResult::NoSolution => Err(Error::Invalid(format!("α^{lambda} = 1 but no exponent was found"))),
        MtResult::MinimalExponent { m: 1, witness } => {
            let g0 = value_at(t, &witness, t.base.k0)?;
            if g0.is_zero() {
                return Err(Error::PoleAtPoint { k: t.base.k0 });
            }
            Ok(AdjoinOutcome::Collapsed { constant: init.over(&g0), witness })
        }
        MtResult::MinimalExponent { m, .. } if m == lambda => {
            // x^λ = 1 must hold for the sequence too, so a foreign start value
            // is moved into a constant factor.
            let (start, scale) = if init.powi(lambda as i64).is_one() { (init, Const::one()) } else { (Const::one(), init) };
            let tower = t.adjoin(name, GenKind::Root { alpha: alpha.clone(), order: lambda }, start)?;
            Ok(AdjoinOutcome::Extended { tower, gen, element: TowerElem::gen(gen).scale_const(&scale) })
        }
        MtResult::MinimalExponent { m, witness } => Ok(AdjoinOutcome::Rejected { m, witness }),
    }
}

/// `g != 0` with `σ(g) = α g`, so that `prod_{k=a}^{b} α(k) = g(b+1)/g(a)`.
pub fn rewrite_product(t: &Tower, alpha: &PGElem, opts: &PfldeOptions) -> Result<Option<TowerElem>> {
    let basis = pflde_solve(t, alpha, &[TowerElem::zero()], opts)?;
    Ok(basis.rows.into_iter().map(|r| r.g).find(|g| !g.is_zero()))
}

/// One generator's characterization test, re-run against the tower below it.
#[derive(Clone, Debug, PartialEq)]
pub struct GenCheck {
    pub name: String,
    pub kind: &'static str,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TowerReport {
    pub gens: Vec<GenCheck>,
    /// Dimension of the solutions of `σ(g) = g`; 1 when only constants remain.
    pub constants_dim: Option<usize>,
}

impl TowerReport {
    pub fn ok(&self) -> bool {
        self.gens.iter().all(|g| g.ok) && self.constants_dim == Some(1)
    }
}

/// Re-runs the Σ/Π/R tests on every generator and checks that `σ(g) = g`
/// only has constant solutions.
pub fn verify_tower(t: &Tower, opts: &PfldeOptions) -> TowerReport {
    let mut gens = Vec::new();
    for (i, g) in t.gens().iter().enumerate() {
        let below = t.prefix(i);
        let (ok, detail) = match check_generator(&below, &g.kind, &g.init) {
            Ok(()) => (true, "passed".to_string()),
            Err(msg) => (false, msg),
        };
        gens.push(GenCheck { name: g.name.clone(), kind: g.kind_label(), ok, detail });
    }
    let constants_dim = pflde_solve(t, &PGElem::one(), &[], opts).ok().map(|b| b.dim());
    TowerReport { gens, constants_dim }
}

fn check_generator(below: &Tower, kind: &GenKind, init: &Const) -> std::result::Result<(), String> {
    let err = |e: Error| e.to_string();
    match kind {
        GenKind::Sigma { beta } => match telescope(below, beta).map_err(err)? {
            None => Ok(()),
            Some(g) => Err(format!("the summand telescopes with g = {}", render::elem_text(below, &g))),
        },
        GenKind::Pi { alpha } => {
            let lambda = below.ord(alpha);
            if lambda != 0 {
                return Err(format!("the quotient has finite order {lambda}"));
            }
            match mt_decide(below, alpha).map_err(err)? {
                MtResult::NoSolution => Ok(()),
                MtResult::MinimalExponent { m, .. } => Err(format!("σ(g) = α^{m} g has a solution")),
            }
        }
        GenKind::Root { alpha, order } => {
            let lambda = below.ord(alpha);
            if lambda != *order {
                return Err(format!("the quotient has order {lambda}, not {order}"));
            }
            if !init.powi(*order as i64).is_one() {
                return Err(format!("the start value is not an {order}-th root of unity"));
            }
            match mt_decide(below, alpha).map_err(err)? {
                MtResult::MinimalExponent { m, .. } if m == *order => Ok(()),
                MtResult::MinimalExponent { m, .. } => Err(format!("σ(g) = α^{m} g has a solution with m < {order}")),
                MtResult::NoSolution => Err("no exponent annihilates the quotient".into()),
            }
        }
    }
}

/// Linear recurrence `sum_i c_i S(n+i) = boundary` found by creative telescoping.
#[derive(Clone, Debug)]
pub struct Recurrence {
    /// Number of shifts: `coeffs` has `order + 1` entries.
    pub order: usize,
    pub coeffs: Vec<Const>,
    /// `g` with `σ(g) - g = sum_i c_i F(n+i, k)`.
    pub certificate: TowerElem,
    /// `F(n+i, k)` for `i = 0..=order` as tower elements.
    pub summands: Vec<TowerElem>,
}

impl Recurrence {
    /// `g(b+1) - g(a)`, the right-hand side of the recurrence for the sums over `a..=b`.
    pub fn boundary(&self, t: &Tower, params: &[BigRational], a: i64, b: i64) -> Result<Const> {
        let mut ev = Evaluator::new(t, SeqContext::from_tower(t).with_params(params.to_vec()));
        Ok(ev.eval(&self.certificate, b + 1)?.minus(&ev.eval(&self.certificate, a)?))
    }

    /// Checks `sum_{k=a}^{b} sum_i c_i F(n+i, k) = g(b+1) - g(a)` at the given parameter values.
    pub fn check(&self, t: &Tower, params: &[BigRational], a: i64, b: i64) -> Result<bool> {
        let c: Vec<Const> = self
            .coeffs
            .iter()
            .map(|c| c.specialize(params).map(Const::cyc).ok_or(Error::PoleAtPoint { k: a }))
            .collect::<Result<_>>()?;
        let mut ev = Evaluator::new(t, SeqContext::from_tower(t).with_params(params.to_vec()));
        let mut lhs = Const::zero();
        for k in a..=b {
            for (ci, fi) in c.iter().zip(&self.summands) {
                lhs = lhs.plus(&ci.times(&ev.eval(fi, k)?));
            }
        }
        Ok(lhs == self.boundary(t, params, a, b)?)
    }
}

/// Result of comparing two expressions pointwise.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub checked: usize,
    /// First index where the sides differ, with both values.
    pub mismatch: Option<(i64, Const, Const)>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares `lhs` and `rhs` exactly at `var = a..=b` by direct evaluation.
pub fn verify_identity(ev: &ExprEval, lhs: &Expr, rhs: &Expr, var: &str, a: i64, b: i64) -> Result<IdentityCheck> {
    let mut checked = 0;
    for v in a..=b {
        let env = [(var.to_string(), v)];
        let (l, r) = (ev.eval(lhs, &env)?, ev.eval(rhs, &env)?);
        checked += 1;
        if l != r {
            return Ok(IdentityCheck { checked, mismatch: Some((v, l, r)) });
        }
    }
    Ok(IdentityCheck { checked, mismatch: None })
}

/// Name of the tower variable in generator meanings and cache keys.
pub const TOWER_VAR: &str = "k";

const BOUND_NAMES: [&str; 10] = ["j", "i", "l", "m", "p", "q", "r", "u", "v", "w"];

/// Compiles expressions into a tower, adjoining generators on demand.
#[derive(Clone, Debug)]
pub struct Builder {
    tower: Tower,
    opts: PfldeOptions,
    /// Per generator, the object it stands for as an expression in `k`.
    meanings: Vec<Expr>,
    cache: HashMap<String, TowerElem>,
    bound_names: Vec<String>,
    counts: [usize; 3],
    /// While set, adjoining a generator fails with `NotRepresentable(index)`.
    frozen: Option<usize>,
}

impl Builder {
    pub fn new(base: BaseField) -> Result<Self> {
        for p in &base.params {
            let valid = p.chars().next().map_or(false, |c| c.is_alphabetic())
                && p.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !valid || p == TOWER_VAR || ["Sum", "Prod", "Binom", "I", "zeta"].contains(&p.as_str()) {
                return Err(Error::Invalid(format!("{p} cannot be used as a parameter name")));
            }
        }
        let bound_names = BOUND_NAMES.iter().map(|s| s.to_string()).filter(|s| !base.params.contains(s)).collect();
        Ok(Builder {
            tower: Tower::new(base),
            opts: PfldeOptions::default(),
            meanings: vec![],
            cache: HashMap::new(),
            bound_names,
            counts: [0; 3],
            frozen: None,
        })
    }

    pub fn with_options(mut self, opts: PfldeOptions) -> Self {
        self.opts = opts;
        self
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn options(&self) -> &PfldeOptions {
        &self.opts
    }

    /// The object generator `i` stands for, as an expression in `k`.
    pub fn meaning(&self, i: usize) -> &Expr {
        &self.meanings[i]
    }

    pub fn evaluator(&self) -> ExprEval {
        ExprEval::symbolic(self.tower.base.zeta, &self.tower.base.params)
    }

    /// The free variable of `e`: the only name that is neither bound nor a parameter.
    pub fn free_var(&self, e: &Expr) -> Result<String> {
        let free: Vec<String> = e.free_vars().into_iter().filter(|v| !self.tower.base.params.contains(v)).collect();
        match free.len() {
            0 => Ok(TOWER_VAR.to_string()),
            1 => Ok(free[0].clone()),
            _ => Err(Error::Invalid(format!("expression has several free variables: {}", free.join(", ")))),
        }
    }

    /// Compiles `e` with its free variable as the tower variable.
    pub fn compile(&mut self, e: &Expr) -> Result<TowerElem> {
        let var = self.free_var(e)?;
        self.compile_in(e, &var)
    }

    /// Compiles `e`, reading `var` as the tower variable. Products are
    /// registered before sums, inner objects before outer ones.
    pub fn compile_in(&mut self, e: &Expr, var: &str) -> Result<TowerElem> {
        self.register_products(e, var)?;
        let out = self.comp(e, var)?;
        Ok(self.tower.normalize(&out))
    }

    /// Represents a nested indefinite sum `Sum(j, lo, k + d, body)`.
    pub fn represent_nested_sum(&mut self, e: &Expr) -> Result<TowerElem> {
        if !matches!(e, Expr::Sum { .. }) {
            return Err(Error::Invalid("expected a Sum(...) expression".into()));
        }
        self.compile(e)
    }

    /// A tower element as an expression in `k` over the objects the generators stand for.
    pub fn to_expr(&self, g: &TowerElem) -> Expr {
        render::elem_expr(&self.tower, &self.meanings, g)
    }

    /// A tower element written with generator names.
    pub fn to_text(&self, g: &TowerElem) -> String {
        render::elem_text(&self.tower, g)
    }

    /// Creative telescoping for `S(n) = sum_k F(n, k)`: the first order
    /// `r <= max_order` with constants `c_0..c_r` and `g` such that
    /// `σ(g) - g = sum_i c_i F(n+i, k)`.
    pub fn creative_telescope(&mut self, f: &Expr, param: &str, max_order: usize) -> Result<Option<Recurrence>> {
        if !self.tower.base.params.iter().any(|p| p == param) {
            return Err(Error::Invalid(format!("{param} is not a declared parameter")));
        }
        let var = self.free_var(f)?;
        let mut summands = vec![self.compile_in(f, &var)?];
        for r in 1..=max_order {
            let shifted = f.subst(param, &Expr::offset(param, r as i64));
            self.frozen = Some(r);
            let fr = self.compile_in(&shifted, &var);
            self.frozen = None;
            summands.push(fr?);
            if let Some((coeffs, certificate)) = para_telescope(&self.tower, &summands, &self.opts)? {
                return Ok(Some(Recurrence { order: r, coeffs, certificate, summands }));
            }
        }
        Ok(None)
    }

    fn key(&self, e: &Expr, var: &str) -> Result<(String, Expr)> {
        let canon = e.subst(var, &Expr::var(TOWER_VAR)).rename_bound(&self.bound_names)?;
        Ok((canon.to_string(), canon))
    }

    fn register_products(&mut self, e: &Expr, var: &str) -> Result<()> {
        match e {
            Expr::Int(_) | Expr::Imag | Expr::Zeta | Expr::Var(_) => Ok(()),
            Expr::Neg(a) => self.register_products(a, var),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                self.register_products(a, var)?;
                self.register_products(b, var)
            }
            Expr::Pow(a, b) | Expr::Binom(a, b) => {
                self.register_products(a, var)?;
                self.register_products(b, var)?;
                if b.free_vars().contains(var) {
                    self.comp(e, var)?;
                }
                Ok(())
            }
            Expr::Sum { var: bv, lo, hi, body } | Expr::Prod { var: bv, lo, hi, body } => {
                self.register_products(lo, var)?;
                self.register_products(hi, var)?;
                self.register_products(body, bv)?;
                if matches!(e, Expr::Prod { .. }) && hi.free_vars().contains(var) {
                    self.comp(e, var)?;
                }
                Ok(())
            }
        }
    }

    fn constant(&self, c: Const) -> TowerElem {
        TowerElem::from_const(c)
    }

    fn comp(&mut self, e: &Expr, var: &str) -> Result<TowerElem> {
        if !e.free_vars().contains(var) {
            if let Expr::Var(v) = e {
                if !self.tower.base.params.contains(v) {
                    return Err(Error::Invalid(format!("{v} is neither the variable {var} nor a parameter")));
                }
            }
            return Ok(self.constant(self.evaluator().eval(e, &[])?));
        }
        match e {
            Expr::Var(_) => Ok(TowerElem::k()),
            Expr::Neg(a) => Ok(self.comp(a, var)?.neg()),
            Expr::Add(a, b) => Ok(self.comp(a, var)?.add(&self.comp(b, var)?)),
            Expr::Sub(a, b) => Ok(self.comp(a, var)?.sub(&self.comp(b, var)?)),
            Expr::Mul(a, b) => {
                let (x, y) = (self.comp(a, var)?, self.comp(b, var)?);
                Ok(self.tower.mul(&x, &y))
            }
            Expr::Div(a, b) => {
                let (x, y) = (self.comp(a, var)?, self.comp(b, var)?);
                let inv = self.invert(&y, b)?;
                Ok(self.tower.mul(&x, &inv))
            }
            Expr::Pow(a, b) => self.power(e, a, b, var),
            Expr::Binom(a, b) => self.binomial(e, a, b, var),
            Expr::Sum { .. } | Expr::Prod { .. } => self.nested(e, var),
            Expr::Int(_) | Expr::Imag | Expr::Zeta => unreachable!("literals are constant"),
        }
    }

    fn invert(&self, y: &TowerElem, src: &Expr) -> Result<TowerElem> {
        let t = &self.tower;
        match t.as_pg(&t.normalize(y)) {
            Some(p) if !p.unit.is_zero() => Ok(t.pg_inv(&p).to_elem()),
            _ => Err(Error::Invalid(format!("cannot divide by {src}: it is not a single product term"))),
        }
    }

    fn power(&mut self, e: &Expr, a: &Expr, b: &Expr, var: &str) -> Result<TowerElem> {
        if !b.free_vars().contains(var) {
            let m = self
                .evaluator()
                .eval(b, &[])?
                .as_i64()
                .ok_or_else(|| Error::Invalid(format!("exponent {b} is not an integer")))?;
            let x = self.comp(a, var)?;
            if m >= 0 {
                return Ok(self.tower.pow(&x, m as u32));
            }
            let inv = self.invert(&x, a)?;
            return Ok(self.tower.pow(&inv, m.unsigned_abs() as u32));
        }
        if a.free_vars().contains(var) {
            return Err(Error::Invalid(format!("{e}: a variable exponent needs a base free of {var}")));
        }
        let (key, _) = self.key(e, var)?;
        if let Some(x) = self.cache.get(&key) {
            return Ok(x.clone());
        }
        let c = self.evaluator().eval(a, &[])?;
        if c.is_zero() {
            return Err(Error::Invalid(format!("{e}: zero base with a variable exponent")));
        }
        let p = self
            .comp(b, var)?
            .as_ratfun()
            .filter(|f| f.is_poly() && f.num().coeffs().iter().all(|x| x.as_rational().is_some()))
            .ok_or_else(|| Error::Invalid(format!("exponent {b} is not a polynomial in {var}")))?;
        let coeffs = binomial_basis(p.num())
            .ok_or_else(|| Error::Invalid(format!("exponent {b} is not integer-valued")))?;
        let mut out = PGElem::from_const(c.powi(coeffs[0]));
        for (i, &a_i) in coeffs.iter().enumerate().skip(1) {
            if a_i != 0 {
                let y = self.power_generator(&c, i)?;
                out = self.tower.pg_mul(&out, &self.tower.pg_pow(&y, a_i));
            }
        }
        let x = out.to_elem();
        self.cache.insert(key, x.clone());
        Ok(x)
    }

    /// `c^{B_i(k)}` with `B_i(k) = binom(k+i-1, i)`; its quotient is `c * prod_{j<i} c^{B_j(k)}`.
    fn power_generator(&mut self, c: &Const, i: usize) -> Result<PGElem> {
        let exponent = if i == 1 {
            Expr::var(TOWER_VAR)
        } else {
            Expr::binom(Expr::offset(TOWER_VAR, i as i64 - 1), Expr::int(i as i64))
        };
        let meaning = Expr::pow(const_expr(c, &self.tower.base), exponent);
        let key = meaning.to_string();
        if !self.cache.contains_key(&key) {
            let mut alpha = PGElem::from_const(c.clone());
            for j in 1..i {
                let y = self.power_generator(c, j)?;
                alpha = self.tower.pg_mul(&alpha, &y);
            }
            let k0 = Const::int(self.tower.base.k0);
            let b0 = basis_poly(i).eval(&k0).as_i64().ok_or_else(|| Error::Invalid("exponent overflow".into()))?;
            self.register_product(&key, meaning, alpha, c.powi(b0))?;
        }
        let x = self.cache[&key].clone();
        self.tower.as_pg(&x).ok_or_else(|| Error::UnsupportedBase(format!("{key} is not a single product term")))
    }

    fn binomial(&mut self, e: &Expr, a: &Expr, b: &Expr, var: &str) -> Result<TowerElem> {
        if !b.free_vars().contains(var) {
            let m = self
                .evaluator()
                .eval(b, &[])?
                .as_i64()
                .ok_or_else(|| Error::Invalid(format!("{e}: lower argument must be an integer or depend on {var}")))?;
            let x = self.comp(a, var)?;
            let mut acc = TowerElem::int(if m < 0 { 0 } else { 1 });
            for i in 0..m.max(0) {
                let factor = x.sub(&TowerElem::int(i)).scale_const(&Const::int(i + 1).recip());
                acc = self.tower.mul(&acc, &factor);
            }
            return Ok(acc);
        }
        let (key, meaning) = self.key(e, var)?;
        if let Some(x) = self.cache.get(&key) {
            return Ok(x.clone());
        }
        let err = || Error::Invalid(format!("{e}: arguments must be linear in {var} with integer slope"));
        let top = self.comp(a, var)?.as_ratfun().filter(linear_slope_ok).ok_or_else(err)?;
        let low = self.comp(b, var)?.as_ratfun().filter(linear_slope_ok).ok_or_else(err)?;
        let slope = |f: &RatFun| f.num().coeff(1).as_i64().unwrap_or(0);
        let (p, q) = (slope(&top), slope(&low));
        let diff = top.minus(&low);
        let ratio = factorial_ratio(&top, p).over(&factorial_ratio(&low, q).times(&factorial_ratio(&diff, p - q)));
        let init = self.evaluator().eval(e, &[(var.to_string(), self.tower.base.k0)])?;
        let x = self.register_product(&key, meaning, PGElem::from_ratfun(ratio), init)?;
        Ok(x)
    }

    fn nested(&mut self, e: &Expr, var: &str) -> Result<TowerElem> {
        let (Expr::Sum { var: bv, lo, hi, body } | Expr::Prod { var: bv, lo, hi, body }) = e else {
            unreachable!("only sums and products")
        };
        let (key, meaning) = self.key(e, var)?;
        if let Some(x) = self.cache.get(&key) {
            return Ok(x.clone());
        }
        if lo.free_vars().contains(var) {
            return Err(Error::Invalid(format!("{e}: the lower bound must not depend on {var}")));
        }
        let d = self
            .comp(hi, var)?
            .as_ratfun()
            .filter(|f| f.is_poly() && f.num().deg() == Some(1) && f.num().coeff(1).is_one())
            .and_then(|f| f.num().coeff(0).as_i64())
            .ok_or_else(|| Error::Invalid(format!("{e}: the upper bound must be {var} plus an integer")))?;
        let inner = self.comp(body, bv)?;
        let shifted = self.tower.sigma(&inner, d + 1);
        let init = self.evaluator().eval(e, &[(var.to_string(), self.tower.base.k0)])?;
        if matches!(e, Expr::Sum { .. }) {
            self.register_sum(&key, meaning, shifted, init)
        } else {
            let alpha = self
                .tower
                .as_pg(&self.tower.normalize(&shifted))
                .ok_or_else(|| Error::NotInProductGroup(format!("factor {body}")))?;
            self.register_product(&key, meaning, alpha, init)
        }
    }

    fn next_name(&self, slot: usize) -> String {
        format!("{}{}", ["x", "t", "s"][slot], self.counts[slot] + 1)
    }

    fn extend(&mut self, slot: usize, tower: Tower, meaning: Expr) -> Result<()> {
        if let Some(index) = self.frozen {
            return Err(Error::NotRepresentable { index });
        }
        self.tower = tower;
        self.meanings.push(meaning);
        self.counts[slot] += 1;
        Ok(())
    }

    fn register_sum(&mut self, key: &str, meaning: Expr, beta: TowerElem, init: Const) -> Result<TowerElem> {
        let name = self.next_name(2);
        let x = match adjoin_sigma(&self.tower, &beta, &name, init)? {
            AdjoinOutcome::Collapsed { witness, constant } => witness.add(&TowerElem::from_const(constant)),
            AdjoinOutcome::Extended { tower, element, .. } => {
                self.extend(2, tower, meaning)?;
                element
            }
            AdjoinOutcome::Rejected { .. } => unreachable!("sums are never rejected"),
        };
        self.cache.insert(key.to_string(), x.clone());
        Ok(x)
    }

    fn register_product(&mut self, key: &str, meaning: Expr, alpha: PGElem, init: Const) -> Result<TowerElem> {
        if let Some(x) = self.cache.get(key) {
            return Ok(x.clone());
        }
        let slot = if self.tower.ord(&alpha) > 0 { 0 } else { 1 };
        let name = self.next_name(slot);
        let x = match adjoin_product(&self.tower, &alpha, &name, init)? {
            AdjoinOutcome::Collapsed { witness, constant } => witness.scale_const(&constant),
            AdjoinOutcome::Extended { tower, gen, element } => {
                let meaning = if element == TowerElem::gen(gen) {
                    meaning
                } else {
                    let scale = element.terms().values().next().and_then(|c| c.as_constant()).expect("constant scale");
                    Expr::div(meaning, const_expr(&scale, &tower.base))
                };
                self.extend(slot, tower, meaning)?;
                element
            }
            AdjoinOutcome::Rejected { m, .. } => {
                return Err(Error::Invalid(format!(
                    "{meaning} cannot be represented: σ(g) = α^{m} g is solvable, but not with exponent 1"
                )))
            }
        };
        self.cache.insert(key.to_string(), x.clone());
        Ok(x)
    }
}

fn linear_slope_ok(f: &RatFun) -> bool {
    f.is_poly() && f.num().deg().map_or(true, |d| d <= 1) && f.num().coeff(1).as_i64().is_some()
}

/// `Γ(x + d + 1) / Γ(x + 1)` as a rational function of `k`.
fn factorial_ratio(x: &RatFun, d: i64) -> RatFun {
    let mut acc = RatFun::one();
    if d >= 0 {
        for i in 1..=d {
            acc = acc.times(&x.plus(&RatFun::constant(Const::int(i))));
        }
    } else {
        for i in 0..-d {
            acc = acc.over(&x.minus(&RatFun::constant(Const::int(i))));
        }
    }
    acc
}

/// `B_i(k) = binom(k+i-1, i)`.
fn basis_poly(i: usize) -> KPoly {
    let mut p = KPoly::one();
    for j in 0..i {
        p = p.mul(&KPoly::from_coeffs(vec![Const::int(j as i64), Const::one()]));
    }
    let fact: BigInt = (1..=i).map(BigInt::from).product();
    p.scale(&Const::rat(BigRational::from_integer(fact)).recip())
}

/// Integer coordinates of `p` in the basis `B_0, B_1, ...`, if `p` is integer-valued.
fn binomial_basis(p: &KPoly) -> Option<Vec<i64>> {
    let d = p.deg().unwrap_or(0);
    let mut rest = p.clone();
    let mut out = vec![0i64; d + 1];
    for i in (0..=d).rev() {
        let b = basis_poly(i);
        let a = rest.coeff(i).over(&b.lc());
        let q = a.as_rational()?;
        if !q.denom().is_one() {
            return None;
        }
        out[i] = q.numer().to_i64()?;
        rest = rest.sub(&b.scale(&a));
    }
    rest.is_zero().then_some(out)
}

#[cfg(test)]
mod tests;
