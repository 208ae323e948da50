//! The recursive reduction: degree bounds and degree reduction for Π- and
//! Σ-generators, coefficient splitting for a root generator whose quotient
//! does not involve it, and the σ^λ lift for a root block over K(k).

use super::linear::{combine, combine_components, relations};
use super::rational::solve_base;
use super::{DegreeWindow, PfldeOptions, VRow};
use crate::arith::field::lcm_u64;
use crate::arith::{Const, Field, RatFun};
use crate::error::{Error, Result};
use crate::pmt::pmt_solve;
use crate::pmt::roots::exponent_box;
use crate::tower::{Exps, GenKind, PGElem, Tower, TowerElem};
use num_traits::ToPrimitive;

/// Data of the σ^λ lift over a root block.
#[derive(Clone, Debug)]
pub struct NestedLift {
    pub lambda: u64,
    /// `(u)_λ`, an element of K(k).
    pub w: RatFun,
    /// `f̃_i = sum_j σ^{j+1}(u)...σ^{λ-1}(u) σ^j(f_i)`.
    pub f_tilde: Vec<TowerElem>,
    /// Per block monomial `x^I`: a basis of the solutions over (K(k), σ^λ).
    pub components: Vec<(Exps, Vec<(Vec<Const>, RatFun)>)>,
}

pub(crate) struct Solver<'a> {
    pub t: &'a Tower,
    pub opts: &'a PfldeOptions,
}

fn unit_vec(n: usize, r: usize) -> Vec<Const> {
    (0..n).map(|i| if i == r { Const::one() } else { Const::zero() }).collect()
}

fn monomial_at(i: usize, d: i64) -> TowerElem {
    let mut e = vec![0; i + 1];
    e[i] = d;
    TowerElem::monomial(e, RatFun::one())
}

/// Lowest and highest exponent of generator `i` over the nonzero entries.
fn exponent_range(f: &[TowerElem], i: usize) -> Option<(i64, i64)> {
    let lo = f.iter().filter_map(|x| x.ldeg_in(i)).min()?;
    let hi = f.iter().filter_map(|x| x.deg_in(i)).max()?;
    Some((lo, hi))
}

/// `deg g <= max(deg f + 1, 0)` for a Σ-generator at index `top`.
pub fn sigma_window(f: &[TowerElem], top: usize) -> DegreeWindow {
    let b = exponent_range(f, top).map_or(0, |(_, hi)| (hi + 1).max(0));
    DegreeWindow { a: 0, b, technical_cond: true }
}

impl Solver<'_> {
    /// Basis of V(u, f) inside the sub-tower of the first `lvl` generators.
    pub fn solve(&self, lvl: usize, u: &PGElem, f: &[TowerElem]) -> Result<Vec<VRow>> {
        if lvl == 0 {
            return Ok(self.base(u, f, self.t.base.shift));
        }
        let top = lvl - 1;
        match &self.t.gen(top).kind {
            GenKind::Sigma { .. } => {
                let w = sigma_window(f, top);
                self.degree_reduce(lvl, u, f, &w)
            }
            GenKind::Pi { .. } => {
                let w = self.pi_window(lvl, u, f)?;
                self.degree_reduce(lvl, u, f, &w)
            }
            GenKind::Root { .. } => {
                if u.exp(top) == 0 {
                    self.root_single(lvl, u, f)
                } else if (0..lvl).all(|j| self.t.gen(j).is_root()) {
                    self.root_nested(lvl, u, f)
                } else {
                    Err(Error::UnsupportedBase(format!(
                        "root generator {} above other generators",
                        self.t.gen(top).name
                    )))
                }
            }
        }
    }

    fn base(&self, u: &PGElem, f: &[TowerElem], shift: i64) -> Vec<VRow> {
        let fr: Vec<RatFun> = f.iter().map(|x| x.as_ratfun().expect("entry lives in K(k)")).collect();
        solve_base(&u.unit, &fr, shift)
            .into_iter()
            .map(|(c, g)| VRow { c, g: TowerElem::from_ratfun(g) })
            .collect()
    }

    /// Degree window for a Π-generator at index `lvl - 1`.
    pub fn pi_window(&self, lvl: usize, u: &PGElem, f: &[TowerElem]) -> Result<DegreeWindow> {
        let top = lvl - 1;
        let m = u.exp(top);
        let range = exponent_range(f, top);
        if m != 0 {
            let Some((lo, hi)) = range else { return Ok(DegreeWindow { a: 0, b: -1, technical_cond: true }) };
            return Ok(DegreeWindow { a: lo.max(lo - m), b: hi.min(hi - m), technical_cond: true });
        }
        let alpha = self.t.gen(top).alpha().expect("product generator").clone();
        let below = self.t.prefix(top);
        let basis = pmt_solve(&below, &[alpha, u.without(top)])?;
        let nu = basis.lattice.rows().first().and_then(|row| {
            let p = row[0].to_i64()?;
            match row[1].to_i64()? {
                1 => Some(-p),
                -1 => Some(p),
                _ => None,
            }
        });
        let (a, b) = match (nu, range) {
            (Some(nu), Some((lo, hi))) => (lo.min(nu), hi.max(nu)),
            (Some(nu), None) => (nu, nu),
            (None, Some((lo, hi))) => (lo.min(0), hi.max(-1)),
            (None, None) => (0, -1),
        };
        Ok(DegreeWindow { a, b, technical_cond: true })
    }

    /// Solutions with `g = sum_{i=a}^{b} g_i t^i`, `t` the generator at `lvl - 1`.
    pub fn degree_reduce(&self, lvl: usize, u: &PGElem, f: &[TowerElem], w: &DegreeWindow) -> Result<Vec<VRow>> {
        let t = self.t;
        let n = f.len();
        let top = lvl - 1;
        let m = u.exp(top);
        let v = u.without(top);
        let alpha = t.gen(top).alpha().cloned().unwrap_or_else(PGElem::one);
        let u_elem = u.to_elem();
        // Current right-hand sides F_r and their meaning (C_r, G_r) in the original problem.
        let mut rhs: Vec<TowerElem> = f.to_vec();
        let mut back: Vec<VRow> = (0..n).map(|r| VRow { c: unit_vec(n, r), g: TowerElem::zero() }).collect();
        let mut b = w.b;
        while b >= w.a {
            let lambda = b.max(b + m);
            let lead: Vec<TowerElem> =
                rhs.iter().map(|x| x.split_at(top).remove(&lambda).unwrap_or_default()).collect();
            let k = rhs.len();
            let inc: Vec<VRow> = if m > 0 {
                let vinv = t.pg_inv(&v).to_elem();
                (0..k).map(|r| VRow { c: unit_vec(k, r), g: t.mul(&lead[r], &vinv).neg() }).collect()
            } else if m < 0 {
                let scale = t.pg_pow(&alpha, -b).to_elem();
                (0..k).map(|r| VRow { c: unit_vec(k, r), g: t.sigma(&t.mul(&lead[r], &scale), -1) }).collect()
            } else {
                let ainv = t.pg_pow(&alpha, -b);
                let scaled: Vec<TowerElem> = lead.iter().map(|x| t.mul(x, &ainv.to_elem())).collect();
                self.solve(top, &t.pg_mul(&v, &ainv), &scaled)?
            };
            let tb = monomial_at(top, b);
            let mut next_rhs = Vec::with_capacity(inc.len());
            let mut next_back = Vec::with_capacity(inc.len());
            for row in &inc {
                let h = t.mul(&row.g, &tb);
                let mut fr = TowerElem::zero();
                for (cr, x) in row.c.iter().zip(&rhs) {
                    if !cr.is_zero() {
                        fr = fr.add(&x.scale_const(cr));
                    }
                }
                next_rhs.push(fr.sub(&t.sigma(&h, 1).sub(&t.mul(&u_elem, &h))));
                let mut prev = combine(&row.c, &back, n);
                prev.g = prev.g.add(&h);
                next_back.push(prev);
            }
            rhs = next_rhs;
            back = next_back;
            b -= 1;
        }
        Ok(relations(&rhs).into_iter().map(|d| combine(&d, &back, n)).collect())
    }

    /// Root generator `x` at `lvl - 1` with `u` free of `x`: the coefficients
    /// of `x^j` decouple into problems one level down.
    pub fn root_single(&self, lvl: usize, u: &PGElem, f: &[TowerElem]) -> Result<Vec<VRow>> {
        let t = self.t;
        let top = lvl - 1;
        let g = t.gen(top);
        let d = g.order().expect("root generator") as i64;
        let alpha = g.alpha().expect("root generator").clone();
        let parts: Vec<_> = f.iter().map(|x| x.split_at(top)).collect();
        let mut comps = Vec::with_capacity(d as usize);
        for j in 0..d {
            let ainv = t.pg_pow(&alpha, -j);
            let fj: Vec<TowerElem> =
                parts.iter().map(|p| t.mul(&p.get(&j).cloned().unwrap_or_default(), &ainv.to_elem())).collect();
            let rows = self.solve(top, &t.pg_mul(u, &ainv), &fj)?;
            comps.push((monomial_at(top, j), rows));
        }
        Ok(combine_components(t, f.len(), &comps))
    }

    /// λ, w, f̃ and the component bases for a root block `0..lvl` over K(k).
    pub fn nested_lift(&self, lvl: usize, u: &PGElem, f: &[TowerElem]) -> Result<NestedLift> {
        let t = self.t;
        let x_part = PGElem::new(RatFun::one(), u.exps.clone());
        let mut lambda = t.ford(&x_part)?;
        if lambda == 0 {
            return Err(Error::NotSimpleTower("root part of u has no finite factorial order".into()));
        }
        for j in 0..lvl {
            let p = t.gen(j).stats.gen_per;
            if p == 0 {
                return Err(Error::NotSimpleTower(format!("generator {} has no finite period", t.gen(j).name)));
            }
            lambda = lcm_u64(lambda, p);
            if lambda > self.opts.lambda_cap {
                break;
            }
        }
        if lambda > self.opts.lambda_cap {
            return Err(Error::LambdaOverflow { lambda, cap: self.opts.lambda_cap });
        }
        let wpg = t.sigma_factorial(u, lambda as i64);
        debug_assert!(wpg.exps.is_empty(), "σ-factorial of the root part is 1");
        // P_{λ-1} = 1 and P_{j-1} = σ^j(u) P_j.
        let l = lambda as usize;
        let mut weights = vec![PGElem::one(); l];
        let mut su = t.pg_sigma(u, l as i64 - 1);
        for j in (1..l).rev() {
            weights[j - 1] = t.pg_mul(&weights[j], &su);
            su = t.pg_sigma(&su, -1);
        }
        let f_tilde: Vec<TowerElem> = f
            .iter()
            .map(|fi| {
                let mut acc = TowerElem::zero();
                let mut cur = fi.clone();
                for wj in &weights {
                    acc = acc.add(&t.mul(&wj.to_elem(), &cur));
                    cur = t.sigma(&cur, 1);
                }
                acc
            })
            .collect();
        let orders: Vec<u64> = (0..lvl).map(|j| t.gen(j).order().expect("root block")).collect();
        let shift = t.base.shift * lambda as i64;
        let mut components = Vec::new();
        for mono in exponent_box(&orders) {
            let key = t.reduce(mono);
            let coeffs: Vec<RatFun> =
                f_tilde.iter().map(|x| x.terms().get(&key).cloned().unwrap_or_else(RatFun::zero)).collect();
            components.push((key, solve_base(&wpg.unit, &coeffs, shift)));
        }
        Ok(NestedLift { lambda, w: wpg.unit, f_tilde, components })
    }

    /// Root block `0..lvl` over K(k) with `u` involving the block.
    pub fn root_nested(&self, lvl: usize, u: &PGElem, f: &[TowerElem]) -> Result<Vec<VRow>> {
        let t = self.t;
        let n = f.len();
        let lift = self.nested_lift(lvl, u, f)?;
        let comps: Vec<(TowerElem, Vec<VRow>)> = lift
            .components
            .into_iter()
            .map(|(e, rows)| {
                let rows = rows.into_iter().map(|(c, g)| VRow { c, g: TowerElem::from_ratfun(g) }).collect();
                (TowerElem::monomial(e, RatFun::one()), rows)
            })
            .collect();
        let candidates = combine_components(t, n, &comps);
        let u_elem = u.to_elem();
        let residues: Vec<TowerElem> = candidates
            .iter()
            .map(|row| {
                let mut r = t.sigma(&row.g, 1).sub(&t.mul(&u_elem, &row.g));
                for (ci, fi) in row.c.iter().zip(f) {
                    if !ci.is_zero() {
                        r = r.sub(&fi.scale_const(ci));
                    }
                }
                r
            })
            .collect();
        Ok(relations(&residues).into_iter().map(|d| combine(&d, &candidates, n)).collect())
    }
}
