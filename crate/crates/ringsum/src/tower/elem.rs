//! Elements of a tower: sparse maps from generator exponent vectors to
//! coefficients in K(k), and the product-group elements `u * t^e`.

use crate::arith::{Const, Field, RatFun};
use std::collections::BTreeMap;

/// Exponent vector over the generators, with trailing zeros removed so that an
/// element of a sub-tower is literally an element of every extension.
pub type Exps = Vec<i64>;

pub fn trim(e: &mut Exps) {
    while e.last() == Some(&0) {
        e.pop();
    }
}

pub fn exp_at(e: &Exps, i: usize) -> i64 {
    e.get(i).copied().unwrap_or(0)
}

/// Moves exponent `i` to position `perm[i]`.
pub fn permute_exps(e: &Exps, perm: &[usize]) -> Exps {
    let mut out = vec![0; perm.len()];
    for (i, &d) in e.iter().enumerate() {
        out[perm[i]] = d;
    }
    trim(&mut out);
    out
}

pub fn exps_add(a: &Exps, b: &Exps) -> Exps {
    let n = a.len().max(b.len());
    let mut out: Exps = (0..n).map(|i| exp_at(a, i) + exp_at(b, i)).collect();
    trim(&mut out);
    out
}

/// Canonical tower element. Equality is structural and therefore exact.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct TowerElem {
    terms: BTreeMap<Exps, RatFun>,
}

impl TowerElem {
    pub fn zero() -> Self {
        TowerElem { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        TowerElem::from_ratfun(RatFun::one())
    }

    pub fn from_ratfun(f: RatFun) -> Self {
        TowerElem::monomial(Exps::new(), f)
    }

    pub fn from_const(c: Const) -> Self {
        TowerElem::from_ratfun(RatFun::constant(c))
    }

    pub fn int(v: i64) -> Self {
        TowerElem::from_const(Const::int(v))
    }

    /// The base variable `k`.
    pub fn k() -> Self {
        TowerElem::from_ratfun(RatFun::var())
    }

    /// `coeff * t^exps`; the caller guarantees `exps` is already reduced.
    pub fn monomial(mut exps: Exps, coeff: RatFun) -> Self {
        trim(&mut exps);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        TowerElem { terms }
    }

    /// The generator with index `i`.
    pub fn gen(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        TowerElem::monomial(e, RatFun::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Exps, RatFun> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value if this element lies in K(k).
    pub fn as_ratfun(&self) -> Option<RatFun> {
        match self.terms.len() {
            0 => Some(RatFun::zero()),
            1 => self.terms.get(&Exps::new()).cloned(),
            _ => None,
        }
    }

    pub fn as_const(&self) -> Option<Const> {
        self.as_ratfun().and_then(|f| f.as_constant())
    }

    /// Number of generators this element can involve (one past the highest index used).
    pub fn level(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, exps: Exps, coeff: RatFun) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(c) => {
                let s = c.plus(&coeff);
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *c = s;
                }
            }
            None => {
                self.terms.insert(exps, coeff);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let (mut big, small) = if self.terms.len() >= o.terms.len() { (self.clone(), o) } else { (o.clone(), self) };
        for (e, c) in &small.terms {
            big.add_term(e.clone(), c.clone());
        }
        big
    }

    pub fn neg(&self) -> Self {
        TowerElem { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.negate())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, f: &RatFun) -> Self {
        if f.is_zero() {
            return TowerElem::zero();
        }
        if f.is_one() {
            return self.clone();
        }
        TowerElem { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.times(f))).collect() }
    }

    pub fn scale_const(&self, c: &Const) -> Self {
        self.scale(&RatFun::constant(c.clone()))
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFun) -> RatFun) -> Self {
        let mut out = TowerElem::zero();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Groups terms by the exponent of generator `i`; coefficients are returned
    /// with that exponent removed. The element must not involve generators above `i`.
    pub fn split_at(&self, i: usize) -> BTreeMap<i64, TowerElem> {
        let mut out: BTreeMap<i64, TowerElem> = BTreeMap::new();
        for (e, c) in &self.terms {
            debug_assert!(e.len() <= i + 1, "element involves generators above {i}");
            let d = exp_at(e, i);
            let mut rest = e.clone();
            if rest.len() > i {
                rest[i] = 0;
            }
            trim(&mut rest);
            out.entry(d).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Inverse of `split_at`: `sum_d parts[d] * t_i^d` (no reduction performed).
    pub fn join_at(i: usize, parts: &BTreeMap<i64, TowerElem>) -> Self {
        let mut out = TowerElem::zero();
        for (&d, p) in parts {
            for (e, c) in &p.terms {
                let mut ne = e.clone();
                if ne.len() <= i {
                    ne.resize(i + 1, 0);
                }
                ne[i] += d;
                trim(&mut ne);
                out.add_term(ne, c.clone());
            }
        }
        out
    }

    /// Highest exponent of generator `i`, `None` for zero.
    pub fn deg_in(&self, i: usize) -> Option<i64> {
        self.terms.keys().map(|e| exp_at(e, i)).max()
    }

    /// Lowest exponent of generator `i`, `None` for zero.
    pub fn ldeg_in(&self, i: usize) -> Option<i64> {
        self.terms.keys().map(|e| exp_at(e, i)).min()
    }

    /// True if no generator with index `>= i` occurs.
    pub fn lives_below(&self, i: usize) -> bool {
        self.level() <= i
    }

    /// Renames generator `i` to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = TowerElem::zero();
        for (e, c) in &self.terms {
            out.add_term(permute_exps(e, perm), c.clone());
        }
        out
    }

    /// Substitutes a value for every parameter in the coefficients.
    pub fn subst_param(&self, var: u32, val: &Const) -> Option<Self> {
        let mut out = TowerElem::zero();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.try_map(|x| x.subst(var, val))?);
        }
        Some(out)
    }
}

/// Element `unit * prod t_i^{exps_i}` of the product group; sum generators
/// always carry exponent 0.
#[derive(Clone, PartialEq, Debug)]
pub struct PGElem {
    pub unit: RatFun,
    pub exps: Exps,
}

impl PGElem {
    pub fn new(unit: RatFun, mut exps: Exps) -> Self {
        assert!(!unit.is_zero(), "product-group element with zero unit");
        trim(&mut exps);
        PGElem { unit, exps }
    }

    pub fn one() -> Self {
        PGElem { unit: RatFun::one(), exps: Exps::new() }
    }

    pub fn from_ratfun(u: RatFun) -> Self {
        PGElem::new(u, Exps::new())
    }

    pub fn from_const(c: Const) -> Self {
        PGElem::from_ratfun(RatFun::constant(c))
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty() && self.unit.is_one()
    }

    pub fn to_elem(&self) -> TowerElem {
        TowerElem::monomial(self.exps.clone(), self.unit.clone())
    }

    pub fn level(&self) -> usize {
        self.exps.len()
    }

    /// Exponent of generator `i`.
    pub fn exp(&self, i: usize) -> i64 {
        exp_at(&self.exps, i)
    }

    pub fn permute(&self, perm: &[usize]) -> Self {
        PGElem::new(self.unit.clone(), permute_exps(&self.exps, perm))
    }

    /// Drops generator `i` (which must be the highest one present).
    pub fn without(&self, i: usize) -> PGElem {
        let mut e = self.exps.clone();
        e.truncate(i);
        PGElem::new(self.unit.clone(), e)
    }
}
