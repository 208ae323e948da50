//! Evaluation of tower elements as sequences, by unrolling the generator
//! recurrences from their initial values.

use super::core::{GenKind, Tower};
use super::elem::{PGElem, TowerElem};
use crate::arith::{Const, Field, RatFun};
use crate::error::{Error, Result};
use num_rational::BigRational;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct SeqContext {
    /// Start index k₀.
    pub k0: i64,
    /// Value of each generator sequence at k₀.
    pub init: Vec<Const>,
    /// Values substituted for the parameters; empty keeps them symbolic.
    pub params: Vec<BigRational>,
}

impl SeqContext {
    pub fn from_tower(t: &Tower) -> Self {
        SeqContext { k0: t.base.k0, init: t.gens().iter().map(|g| g.init.clone()).collect(), params: vec![] }
    }

    pub fn with_params(mut self, params: Vec<BigRational>) -> Self {
        self.params = params;
        self
    }
}

pub struct Evaluator<'a> {
    tower: &'a Tower,
    ctx: SeqContext,
    cache: BTreeMap<i64, Vec<Const>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(tower: &'a Tower, ctx: SeqContext) -> Self {
        assert_eq!(ctx.init.len(), tower.len(), "one initial value per generator");
        Evaluator { tower, ctx, cache: BTreeMap::new() }
    }

    fn specialize(&self, c: &Const) -> Option<Const> {
        if self.ctx.params.is_empty() {
            Some(c.clone())
        } else {
            c.specialize(&self.ctx.params).map(Const::cyc)
        }
    }

    /// Value of a K(k) element at `k`.
    pub fn ratfun_at(&self, f: &RatFun, k: i64) -> Result<Const> {
        let x = Const::int(k);
        let ev = |p: &crate::arith::KPoly| -> Result<Const> {
            let mut acc = Const::zero();
            for c in p.coeffs().iter().rev() {
                acc = acc.times(&x).plus(&self.specialize(c).ok_or(Error::PoleAtPoint { k })?);
            }
            Ok(acc)
        };
        let d = ev(f.den())?;
        if d.is_zero() {
            return Err(Error::PoleAtPoint { k });
        }
        Ok(ev(f.num())?.over(&d))
    }

    /// Values of all generators at `k`.
    pub fn gen_values(&mut self, k: i64) -> Result<Vec<Const>> {
        let s = self.tower.base.shift;
        if (k - self.ctx.k0).rem_euclid(s) != 0 {
            return Err(Error::Invalid(format!("index {k} is not reachable from k0 with step {s}")));
        }
        if let Some(v) = self.cache.get(&k) {
            return Ok(v.clone());
        }
        if k == self.ctx.k0 {
            let init = self.ctx.init.clone();
            let v: Vec<Const> = init
                .iter()
                .map(|c| self.specialize(c).ok_or(Error::PoleAtPoint { k }))
                .collect::<Result<_>>()?;
            self.cache.insert(k, v.clone());
            return Ok(v);
        }
        // Walk from the nearest cached index towards k.
        let forward = k > self.ctx.k0;
        let start = if forward {
            self.cache.range(..k).next_back().map(|(&j, _)| j).filter(|&j| j >= self.ctx.k0).unwrap_or(self.ctx.k0)
        } else {
            self.cache.range(k + 1..).next().map(|(&j, _)| j).filter(|&j| j <= self.ctx.k0).unwrap_or(self.ctx.k0)
        };
        let mut cur = self.gen_values(start)?;
        let mut j = start;
        while j != k {
            cur = if forward { self.advance(&cur, j)? } else { self.retreat(&cur, j - s)? };
            j += if forward { s } else { -s };
            self.cache.insert(j, cur.clone());
        }
        Ok(cur)
    }

    /// Values at j + s from values at j.
    fn advance(&self, vals: &[Const], j: i64) -> Result<Vec<Const>> {
        let mut out = Vec::with_capacity(vals.len());
        for (i, g) in self.tower.gens().iter().enumerate() {
            let v = match &g.kind {
                GenKind::Sigma { beta } => vals[i].plus(&self.eval_with(beta, j, vals)?),
                GenKind::Pi { alpha } | GenKind::Root { alpha, .. } => self.eval_pg_with(alpha, j, vals)?.times(&vals[i]),
            };
            out.push(v);
        }
        Ok(out)
    }

    /// Values at j from values at j + s.
    fn retreat(&self, next: &[Const], j: i64) -> Result<Vec<Const>> {
        let mut out: Vec<Const> = Vec::with_capacity(next.len());
        for (i, g) in self.tower.gens().iter().enumerate() {
            // Lower generators at j are already known in `out`.
            let v = match &g.kind {
                GenKind::Sigma { beta } => next[i].minus(&self.eval_with(beta, j, &out)?),
                GenKind::Pi { alpha } | GenKind::Root { alpha, .. } => {
                    let a = self.eval_pg_with(alpha, j, &out)?;
                    if a.is_zero() {
                        return Err(Error::PoleAtPoint { k: j });
                    }
                    next[i].over(&a)
                }
            };
            out.push(v);
        }
        Ok(out)
    }

    fn eval_with(&self, e: &TowerElem, k: i64, vals: &[Const]) -> Result<Const> {
        let mut acc = Const::zero();
        for (x, c) in e.terms() {
            let mut term = self.ratfun_at(c, k)?;
            for (i, &d) in x.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                if d < 0 && vals[i].is_zero() {
                    return Err(Error::PoleAtPoint { k });
                }
                term = term.times(&vals[i].powi(d));
            }
            acc = acc.plus(&term);
        }
        Ok(acc)
    }

    fn eval_pg_with(&self, a: &PGElem, k: i64, vals: &[Const]) -> Result<Const> {
        self.eval_with(&a.to_elem(), k, vals)
    }

    /// Value of `e` at `k`.
    pub fn eval(&mut self, e: &TowerElem, k: i64) -> Result<Const> {
        let vals = self.gen_values(k)?;
        self.eval_with(e, k, &vals)
    }

    pub fn eval_pg(&mut self, a: &PGElem, k: i64) -> Result<Const> {
        self.eval(&a.to_elem(), k)
    }
}

/// Values of `e` at `a, a+s, ..., b`.
pub fn eval_sequence(t: &Tower, e: &TowerElem, ctx: SeqContext, a: i64, b: i64) -> Result<Vec<Const>> {
    let mut ev = Evaluator::new(t, ctx);
    let s = t.base.shift;
    let mut out = Vec::new();
    let mut k = a;
    while k <= b {
        out.push(ev.eval(e, k)?);
        k += s;
    }
    Ok(out)
}
