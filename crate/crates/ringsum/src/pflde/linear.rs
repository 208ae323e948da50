//! K-linear algebra on tower elements: coordinates, relations, combination
//! of component solution spaces and canonical bases.

use super::VRow;
use crate::arith::linalg::{nullspace_params as nullspace, rref_params as rref};
use crate::arith::{Const, Field, KPoly, RatFun};
use crate::tower::{Exps, Tower, TowerElem};
use std::collections::BTreeMap;

/// A K-linear coordinate system for the span of a fixed list of elements:
/// each coefficient is brought onto the least common denominator of its
/// monomial and read off as a polynomial in k.
pub struct Coords {
    dens: BTreeMap<Exps, KPoly>,
    index: BTreeMap<(Exps, usize), usize>,
}

impl Coords {
    pub fn new(elems: &[&TowerElem]) -> Self {
        let mut dens: BTreeMap<Exps, KPoly> = BTreeMap::new();
        for e in elems {
            for (x, c) in e.terms() {
                let d = dens.entry(x.clone()).or_insert_with(KPoly::one);
                *d = d.lcm(c.den());
            }
        }
        let mut index = BTreeMap::new();
        for e in elems {
            for (x, c) in e.terms() {
                let p = c.num().mul(&dens[x].exact_div(c.den()));
                for j in 0..p.coeffs().len() {
                    index.entry((x.clone(), j)).or_insert(0);
                }
            }
        }
        for (i, v) in index.values_mut().enumerate() {
            *v = i;
        }
        Coords { dens, index }
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn vector(&self, e: &TowerElem) -> Vec<Const> {
        let mut v = vec![Const::zero(); self.index.len()];
        for (x, c) in e.terms() {
            let p = c.num().mul(&self.dens[x].exact_div(c.den()));
            for (j, a) in p.coeffs().iter().enumerate() {
                v[self.index[&(x.clone(), j)]] = a.clone();
            }
        }
        v
    }

    pub fn element(&self, v: &[Const]) -> TowerElem {
        let mut polys: BTreeMap<&Exps, Vec<Const>> = BTreeMap::new();
        for ((x, j), &i) in &self.index {
            let p = polys.entry(x).or_default();
            if p.len() <= *j {
                p.resize(j + 1, Const::zero());
            }
            p[*j] = v[i].clone();
        }
        let mut out = TowerElem::zero();
        for (x, coeffs) in polys {
            out.add_term(x.clone(), RatFun::new(KPoly::from_coeffs(coeffs), self.dens[x].clone()));
        }
        out
    }
}

/// Basis of `{ d : sum_r d_r elems[r] = 0 }` over K.
pub fn relations(elems: &[TowerElem]) -> Vec<Vec<Const>> {
    let refs: Vec<&TowerElem> = elems.iter().collect();
    let coords = Coords::new(&refs);
    let cols: Vec<Vec<Const>> = elems.iter().map(|e| coords.vector(e)).collect();
    let rows: Vec<Vec<Const>> = (0..coords.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    nullspace(&rows, elems.len())
}

/// `sum_r d_r rows[r]`.
pub fn combine(d: &[Const], rows: &[VRow], n: usize) -> VRow {
    let mut c = vec![Const::zero(); n];
    let mut g = TowerElem::zero();
    for (dr, row) in d.iter().zip(rows) {
        if dr.is_zero() {
            continue;
        }
        for (ci, x) in c.iter_mut().zip(&row.c) {
            *ci = ci.plus(&dr.times(x));
        }
        g = g.add(&row.g.scale_const(dr));
    }
    VRow { c, g }
}

/// `{ (c, sum_j g_j X_j) : (c, g_j) in V_j for all j }` from bases of the V_j.
pub fn combine_components(t: &Tower, n: usize, comps: &[(TowerElem, Vec<VRow>)]) -> Vec<VRow> {
    // Unknowns: c (n entries) followed by the coordinates of every component.
    let total: usize = n + comps.iter().map(|(_, r)| r.len()).sum::<usize>();
    let mut eqs: Vec<Vec<Const>> = Vec::new();
    let mut off = n;
    for (_, rows) in comps {
        for i in 0..n {
            let mut eq = vec![Const::zero(); total];
            eq[i] = Const::int(-1);
            for (r, row) in rows.iter().enumerate() {
                eq[off + r] = row.c[i].clone();
            }
            eqs.push(eq);
        }
        off += rows.len();
    }
    let mut out = Vec::new();
    for sol in nullspace(&eqs, total) {
        let c = sol[..n].to_vec();
        let mut g = TowerElem::zero();
        let mut off = n;
        for (x, rows) in comps {
            let mut part = TowerElem::zero();
            for (r, row) in rows.iter().enumerate() {
                if !sol[off + r].is_zero() {
                    part = part.add(&row.g.scale_const(&sol[off + r]));
                }
            }
            g = g.add(&t.mul(&part, x));
            off += rows.len();
        }
        out.push(VRow { c, g });
    }
    out
}

/// Reduced echelon basis of the span, with the c-part leading.
pub fn canonical_rows(n: usize, rows: &[VRow]) -> Vec<VRow> {
    let gs: Vec<&TowerElem> = rows.iter().map(|r| &r.g).collect();
    let coords = Coords::new(&gs);
    let width = n + coords.len();
    let mut m: Vec<Vec<Const>> = rows
        .iter()
        .map(|r| {
            let mut v = r.c.clone();
            v.extend(coords.vector(&r.g));
            v
        })
        .collect();
    rref(&mut m, width);
    m.into_iter().map(|v| VRow { c: v[..n].to_vec(), g: coords.element(&v[n..]) }).collect()
}
