//! Towers of sum (Σ), product (Π) and root-of-unity (R) generators over K(k),
//! together with the automorphism σ and its inverse.

use super::elem::{exp_at, trim, Exps, PGElem, TowerElem};
use crate::arith::{Const, Field, RatFun};
use crate::error::{Error, Result};

/// Session-level description of the base difference field K(k).
#[derive(Clone, Debug, PartialEq)]
pub struct BaseField {
    /// Cyclotomic order N of the constant field Q(zeta_N)(params).
    pub zeta: u32,
    /// Parameter names n_1, ..., n_r.
    pub params: Vec<String>,
    /// Shift step s with σ(k) = k + s.
    pub shift: i64,
    /// Start index k₀ at which generator sequences take their initial values.
    pub k0: i64,
    /// Largest period candidate μ the period search will scan.
    pub per_cap: u64,
}

impl Default for BaseField {
    fn default() -> Self {
        BaseField { zeta: 1, params: vec![], shift: 1, k0: 1, per_cap: 1_000_000 }
    }
}

impl BaseField {
    pub fn with_zeta(zeta: u32) -> Self {
        BaseField { zeta, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GenKind {
    /// σ(t) = t + beta.
    Sigma { beta: TowerElem },
    /// σ(t) = alpha t, t transcendental and invertible.
    Pi { alpha: PGElem },
    /// σ(x) = alpha x with x^order = 1.
    Root { alpha: PGElem, order: u64 },
}

/// Cached order data of the defining quotient alpha, plus the period of the
/// generator itself (nonzero only for R-generators).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub ord: u64,
    pub per: u64,
    pub ford: u64,
    pub gen_per: u64,
}

#[derive(Clone, Debug)]
pub(crate) enum Image {
    Pg(PGElem),
    Elem(TowerElem),
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub kind: GenKind,
    pub stats: Stats,
    /// Sequence value at the start index k₀.
    pub init: Const,
    pub(crate) fwd: Image,
    pub(crate) bwd: Image,
}

impl Generator {
    pub fn is_sigma(&self) -> bool {
        matches!(self.kind, GenKind::Sigma { .. })
    }
    pub fn is_pi(&self) -> bool {
        matches!(self.kind, GenKind::Pi { .. })
    }
    pub fn is_root(&self) -> bool {
        matches!(self.kind, GenKind::Root { .. })
    }
    pub fn alpha(&self) -> Option<&PGElem> {
        match &self.kind {
            GenKind::Pi { alpha } | GenKind::Root { alpha, .. } => Some(alpha),
            GenKind::Sigma { .. } => None,
        }
    }
    pub fn beta(&self) -> Option<&TowerElem> {
        match &self.kind {
            GenKind::Sigma { beta } => Some(beta),
            _ => None,
        }
    }
    /// λ for R-generators.
    pub fn order(&self) -> Option<u64> {
        match self.kind {
            GenKind::Root { order, .. } => Some(order),
            _ => None,
        }
    }
    pub fn kind_label(&self) -> &'static str {
        match self.kind {
            GenKind::Sigma { .. } => "sigma",
            GenKind::Pi { .. } => "pi",
            GenKind::Root { .. } => "root",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub base: BaseField,
    gens: Vec<Generator>,
}

impl Tower {
    pub fn new(base: BaseField) -> Self {
        Tower { base, gens: vec![] }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn gen(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    /// The sub-tower formed by the first `m` generators.
    pub fn prefix(&self, m: usize) -> Tower {
        Tower { base: self.base.clone(), gens: self.gens[..m].to_vec() }
    }

    pub fn names(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.name.clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// Reduces R-exponents modulo their orders.
    pub fn reduce(&self, mut e: Exps) -> Exps {
        for (i, d) in e.iter_mut().enumerate() {
            if let Some(l) = self.gens.get(i).and_then(|g| g.order()) {
                *d = d.rem_euclid(l as i64);
            }
        }
        trim(&mut e);
        e
    }

    /// Canonical form of arbitrary term data.
    pub fn normalize(&self, e: &TowerElem) -> TowerElem {
        let mut out = TowerElem::zero();
        for (x, c) in e.terms() {
            out.add_term(self.reduce(x.clone()), c.clone());
        }
        out
    }

    pub fn mul(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        if a.is_zero() || b.is_zero() {
            return TowerElem::zero();
        }
        let mut out = TowerElem::zero();
        for (ea, ca) in a.terms() {
            for (eb, cb) in b.terms() {
                let n = ea.len().max(eb.len());
                let e: Exps = (0..n).map(|i| exp_at(ea, i) + exp_at(eb, i)).collect();
                out.add_term(self.reduce(e), ca.times(cb));
            }
        }
        out
    }

    pub fn pow(&self, a: &TowerElem, n: u32) -> TowerElem {
        let mut acc = TowerElem::one();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn pg_mul(&self, a: &PGElem, b: &PGElem) -> PGElem {
        let n = a.exps.len().max(b.exps.len());
        let e: Exps = (0..n).map(|i| exp_at(&a.exps, i) + exp_at(&b.exps, i)).collect();
        PGElem { unit: a.unit.times(&b.unit), exps: self.reduce(e) }
    }

    pub fn pg_inv(&self, a: &PGElem) -> PGElem {
        PGElem { unit: a.unit.recip(), exps: self.reduce(a.exps.iter().map(|x| -x).collect()) }
    }

    pub fn pg_pow(&self, a: &PGElem, n: i64) -> PGElem {
        let base = if n < 0 { self.pg_inv(a) } else { a.clone() };
        let m = n.unsigned_abs();
        PGElem {
            unit: base.unit.powi(m as i64),
            exps: self.reduce(base.exps.iter().map(|x| x * m as i64).collect()),
        }
    }

    pub fn pg_div(&self, a: &PGElem, b: &PGElem) -> PGElem {
        self.pg_mul(a, &self.pg_inv(b))
    }

    /// The element as a product-group element, if it is a single term free of Σ-generators.
    pub fn as_pg(&self, e: &TowerElem) -> Option<PGElem> {
        if e.num_terms() != 1 {
            return None;
        }
        let (x, c) = e.terms().iter().next().unwrap();
        for (i, &d) in x.iter().enumerate() {
            if d != 0 && self.gens[i].is_sigma() {
                return None;
            }
        }
        Some(PGElem::new(c.clone(), x.clone()))
    }

    /// σ^n on K(k).
    pub fn sigma_ratfun(&self, f: &RatFun, n: i64) -> RatFun {
        f.shift(&Const::int(n * self.base.shift))
    }

    fn step(&self, e: &TowerElem, fwd: bool) -> TowerElem {
        let dir = if fwd { 1 } else { -1 };
        let mut out = TowerElem::zero();
        for (x, c) in e.terms() {
            let mut pg = PGElem::from_ratfun(self.sigma_ratfun(c, dir));
            let mut poly = TowerElem::one();
            for (i, &d) in x.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                let g = &self.gens[i];
                match if fwd { &g.fwd } else { &g.bwd } {
                    Image::Pg(p) => pg = self.pg_mul(&pg, &self.pg_pow(p, d)),
                    Image::Elem(t) => poly = self.mul(&poly, &self.pow(t, d as u32)),
                }
            }
            out = out.add(&self.mul(&pg.to_elem(), &poly));
        }
        out
    }

    /// σ^n for any integer n.
    pub fn sigma(&self, e: &TowerElem, n: i64) -> TowerElem {
        let mut cur = e.clone();
        for _ in 0..n.unsigned_abs() {
            cur = self.step(&cur, n > 0);
        }
        cur
    }

    fn pg_step(&self, a: &PGElem, fwd: bool) -> PGElem {
        let dir = if fwd { 1 } else { -1 };
        let mut pg = PGElem::from_ratfun(self.sigma_ratfun(&a.unit, dir));
        for (i, &d) in a.exps.iter().enumerate() {
            if d == 0 {
                continue;
            }
            let g = &self.gens[i];
            match if fwd { &g.fwd } else { &g.bwd } {
                Image::Pg(p) => pg = self.pg_mul(&pg, &self.pg_pow(p, d)),
                Image::Elem(_) => panic!("product-group element involves a sum generator"),
            }
        }
        pg
    }

    pub fn pg_sigma(&self, a: &PGElem, n: i64) -> PGElem {
        let mut cur = a.clone();
        for _ in 0..n.unsigned_abs() {
            cur = self.pg_step(&cur, n > 0);
        }
        cur
    }

    /// True if `a` only involves Π- and R-generators below index `lvl` and has nonzero unit.
    pub fn in_product_group(&self, a: &PGElem, lvl: usize) -> bool {
        !a.unit.is_zero()
            && a.exps.len() <= lvl
            && a.exps.iter().enumerate().all(|(i, &d)| d == 0 || !self.gens[i].is_sigma())
    }

    /// Appends a generator without running any characterization test; the
    /// builder performs those. Order statistics are computed here.
    pub fn adjoin(&self, name: &str, kind: GenKind, init: Const) -> Result<Tower> {
        let i = self.gens.len();
        if self.index_of(name).is_some() {
            return Err(Error::Invalid(format!("generator name {name} already in use")));
        }
        let (fwd, bwd, stats) = match &kind {
            GenKind::Sigma { beta } => {
                if !beta.lives_below(i) {
                    return Err(Error::Invalid("sum summand must live below the new generator".into()));
                }
                let t = TowerElem::gen(i);
                let fwd = t.add(beta);
                let bwd = t.sub(&self.sigma(beta, -1));
                (Image::Elem(fwd), Image::Elem(bwd), Stats::default())
            }
            GenKind::Pi { alpha } | GenKind::Root { alpha, .. } => {
                if !self.in_product_group(alpha, i) {
                    return Err(Error::NotInProductGroup(format!("quotient of {name}")));
                }
                let fwd = PGElem { unit: alpha.unit.clone(), exps: exps_plus(&alpha.exps, i, 1) };
                let back = self.pg_inv(&self.pg_sigma(alpha, -1));
                let bwd = PGElem { unit: back.unit.clone(), exps: exps_plus(&back.exps, i, 1) };
                let ord = self.ord(alpha);
                let per = self.per(alpha)?;
                let ford = self.ford(alpha)?;
                let gen_per = if matches!(kind, GenKind::Root { .. }) { ford } else { 0 };
                (Image::Pg(fwd), Image::Pg(bwd), Stats { ord, per, ford, gen_per })
            }
        };
        if let GenKind::Root { order, .. } = &kind {
            if *order < 2 {
                return Err(Error::Invalid(format!("root generator {name} needs order >= 2")));
            }
        }
        let mut gens = self.gens.clone();
        gens.push(Generator { name: name.to_string(), kind, stats, init, fwd, bwd });
        Ok(Tower { base: self.base.clone(), gens })
    }

    /// The same extension with every R-generator moved below all Π- and
    /// Σ-generators, keeping relative order otherwise. Returns `perm` with old
    /// index `i` mapped to `perm[i]`, or `None` if the tower already has that shape.
    pub fn roots_first(&self) -> Result<Option<(Tower, Vec<usize>)>> {
        let n = self.gens.len();
        let mut order: Vec<usize> = (0..n).filter(|&i| self.gens[i].is_root()).collect();
        order.extend((0..n).filter(|&i| !self.gens[i].is_root()));
        if order.iter().enumerate().all(|(a, &b)| a == b) {
            return Ok(None);
        }
        let mut perm = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        let mut t = Tower::new(self.base.clone());
        for &old in &order {
            let g = &self.gens[old];
            let kind = match &g.kind {
                GenKind::Sigma { beta } => GenKind::Sigma { beta: beta.permute(&perm) },
                GenKind::Pi { alpha } => GenKind::Pi { alpha: alpha.permute(&perm) },
                GenKind::Root { alpha, order } => GenKind::Root { alpha: alpha.permute(&perm), order: *order },
            };
            t = t.adjoin(&g.name, kind, g.init.clone())?;
        }
        Ok(Some((t, perm)))
    }

    /// Convenience for sub-tower elements: K(k) element as a tower element.
    pub fn ratfun(&self, f: RatFun) -> TowerElem {
        TowerElem::from_ratfun(f)
    }
}

fn exps_plus(e: &Exps, i: usize, d: i64) -> Exps {
    let mut out = e.clone();
    if out.len() <= i {
        out.resize(i + 1, 0);
    }
    out[i] += d;
    trim(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Cyc;
    use crate::tower::eval::{eval_sequence, SeqContext};

    fn iota() -> Const {
        Const::cyc(Cyc::zeta(4))
    }

    fn k_rat(num: &[i64], den: &[i64]) -> RatFun {
        use crate::arith::Poly;
        let p = |c: &[i64]| Poly::from_coeffs(c.iter().map(|&x| Const::int(x)).collect());
        RatFun::new(p(num), p(den))
    }

    /// Q(k)[x] with σ(x) = -x, λ = 2.
    fn sign_tower() -> Tower {
        Tower::new(BaseField::default())
            .adjoin("x", GenKind::Root { alpha: PGElem::from_const(Const::int(-1)), order: 2 }, Const::int(-1))
            .unwrap()
    }

    /// Q(ι)(k)[x]<t> with σ(x) = ιx, σ(t) = k x t.
    fn iota_tower() -> Tower {
        let t = Tower::new(BaseField::with_zeta(4))
            .adjoin("x", GenKind::Root { alpha: PGElem::from_const(iota()), order: 4 }, iota())
            .unwrap();
        t.adjoin("t", GenKind::Pi { alpha: PGElem::new(RatFun::var(), vec![1]) }, Const::int(1)).unwrap()
    }

    #[test]
    fn sigma_on_generators() {
        let t = sign_tower();
        let x = TowerElem::gen(0);
        assert_eq!(t.sigma(&x, 1), x.neg());
        let t2 = iota_tower();
        let tt = TowerElem::gen(1);
        let expect = TowerElem::monomial(vec![1, 1], RatFun::var());
        assert_eq!(t2.sigma(&tt, 1), expect);
        let e = tt.add(&TowerElem::gen(0).scale(&k_rat(&[1], &[1, 1])));
        assert_eq!(t2.sigma(&t2.sigma(&e, 1), -1), e);
        assert_eq!(t2.sigma(&t2.sigma(&e, -3), 3), e);
    }

    #[test]
    fn normal_forms() {
        let t = sign_tower();
        let x = TowerElem::gen(0);
        assert_eq!(t.mul(&x, &x), TowerElem::one());
        let one = TowerElem::one();
        assert!(t.mul(&one.sub(&x), &one.add(&x)).is_zero());
        let t4 = iota_tower();
        let x4 = TowerElem::gen(0);
        assert_eq!(t4.pow(&x4, 5), x4);
        assert_eq!(t4.pg_inv(&PGElem::new(RatFun::one(), vec![1])), PGElem::new(RatFun::one(), vec![3]));
        let a = PGElem::new(RatFun::var(), vec![1, 1]);
        let inv = t4.pg_inv(&a);
        assert_eq!(inv, PGElem::new(k_rat(&[1], &[0, 1]), vec![3, -1]));
        assert!(t4.pg_mul(&a, &inv).is_one());
    }

    #[test]
    fn order_table() {
        let t = sign_tower();
        let m1 = PGElem::from_const(Const::int(-1));
        assert_eq!((t.ord(&m1), t.per(&m1).unwrap(), t.ford(&m1).unwrap()), (2, 1, 2));
        let mx = PGElem::new(RatFun::constant(Const::int(-1)), vec![1]);
        assert_eq!((t.ord(&mx), t.per(&mx).unwrap(), t.ford(&mx).unwrap()), (2, 2, 4));
        let t4 = iota_tower();
        let x = PGElem::new(RatFun::one(), vec![1]);
        assert_eq!((t4.ord(&x), t4.per(&x).unwrap(), t4.ford(&x).unwrap()), (4, 4, 8));
        assert!(t4.sigma_factorial(&x, 8).is_one());
        assert!(t.sigma_factorial(&m1, 2).is_one());
        assert!(t.sigma_factorial(&m1, 0).is_one());
        let xk = PGElem::new(RatFun::var(), vec![1]);
        assert_eq!(t4.ord(&xk), 0);
        assert_eq!(t4.ord(&PGElem::from_const(iota())), 4);
    }

    #[test]
    fn sequences() {
        let t = sign_tower();
        let ctx = SeqContext { k0: 0, init: vec![Const::int(1)], params: vec![] };
        let v = eval_sequence(&t, &TowerElem::gen(0), ctx, 3, 3).unwrap();
        assert_eq!(v, vec![Const::int(-1)]);
        // s = Σ_{j=1}^k (-1)^j / j, with x = (-1)^k from k0 = 1.
        let beta = TowerElem::gen(0).scale(&k_rat(&[-1], &[1, 1]));
        let t = t.adjoin("s", GenKind::Sigma { beta }, Const::int(-1)).unwrap();
        let v = eval_sequence(&t, &TowerElem::gen(1), SeqContext::from_tower(&t), 2, 2).unwrap();
        assert_eq!(v, vec![Const::rat(crate::arith::field::rat(-1, 2))]);
    }
}
