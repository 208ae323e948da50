//! Problem PMT over a constant-coefficient block of root-of-unity generators
//! K[x_1]...[x_e], by scanning a finite exponent box.

use crate::arith::linalg::nullspace_params as nullspace;
use crate::arith::{Const, Field, Lattice, RatFun};
use crate::error::{Error, Result};
use crate::tower::{Exps, PGElem, Tower, TowerElem};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// Candidate limit for the exponent box.
const BOX_CAP: u64 = 1 << 20;

/// All exponent vectors with `0 <= v_i < bounds[i]`.
pub(crate) fn exponent_box(bounds: &[u64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..b as i64).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

fn unit_const(a: &PGElem) -> Result<Const> {
    a.unit
        .as_constant()
        .ok_or_else(|| Error::NotSimpleTower("root generator with non-constant unit part".into()))
}

/// Nonzero `g` in K[x_1..x_e] with `σ(g) = target * g`, if one exists.
/// The block must consist of the generators `0..e` of `t`, all of root type.
pub fn ansatz(t: &Tower, e: usize, target: &PGElem) -> Result<Option<TowerElem>> {
    let orders: Vec<u64> = (0..e).map(|j| t.gen(j).order().expect("root block")).collect();
    let monos = exponent_box(&orders);
    let mut row_of: BTreeMap<Exps, usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Const)> = Vec::new();
    for (col, i) in monos.iter().enumerate() {
        let x = PGElem::new(RatFun::one(), i.clone());
        let lhs = t.pg_sigma(&x, 1);
        let rhs = t.pg_mul(target, &x);
        for (pg, sign) in [(lhs, 1), (rhs, -1)] {
            let c = unit_const(&pg)?;
            let n = row_of.len();
            let r = *row_of.entry(pg.exps.clone()).or_insert(n);
            entries.push((r, col, if sign > 0 { c } else { c.negate() }));
        }
    }
    let mut rows = vec![vec![Const::zero(); monos.len()]; row_of.len()];
    for (r, c, v) in entries {
        rows[r][c] = rows[r][c].plus(&v);
    }
    let Some(v) = nullspace(&rows, monos.len()).into_iter().next() else { return Ok(None) };
    let mut g = TowerElem::zero();
    for (c, i) in v.into_iter().zip(monos) {
        g.add_term(t.reduce(i), RatFun::constant(c));
    }
    Ok(Some(g))
}

/// Candidate order: vectors supported on fewer coordinates first, then by
/// support positions, then by values.
fn candidate_order(bounds: &[u64]) -> Vec<Vec<i64>> {
    let mut cands: Vec<Vec<i64>> = exponent_box(bounds).into_iter().filter(|v| v.iter().any(|&d| d != 0)).collect();
    cands.sort_by_key(|v| {
        let support: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
        let values: Vec<i64> = support.iter().map(|&i| v[i]).collect();
        (support.len(), support, values)
    });
    cands
}

/// Basis of `M(f, K[x_1..x_e])` for `f_i` of finite order.
pub fn solve_roots(t: &Tower, e: usize, f: &[PGElem]) -> Result<Lattice> {
    let n = f.len();
    let lambdas: Vec<u64> = f.iter().map(|a| t.ord(a)).collect();
    if let Some(i) = lambdas.iter().position(|&l| l == 0) {
        return Err(Error::Invalid(format!("entry {i} has no finite order")));
    }
    let size = lambdas.iter().try_fold(1u64, |acc, &l| acc.checked_mul(l)).unwrap_or(u64::MAX);
    if size > BOX_CAP {
        return Err(Error::Invalid(format!("exponent box of size {size} exceeds {BOX_CAP}")));
    }
    let diag: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(if i == j { lambdas[i] } else { 0 })).collect())
        .collect();
    let mut b = Lattice::from_rows(n, diag);
    let full = Lattice::full(n);
    for m in candidate_order(&lambdas) {
        if b == full {
            break;
        }
        let mb: Vec<BigInt> = m.iter().map(|&x| BigInt::from(x)).collect();
        if b.contains(&mb) {
            continue;
        }
        let target = product(t, f, &m);
        if ansatz(t, e, &target)?.is_some() {
            b = b.join(&Lattice::from_rows(n, vec![mb]));
        }
    }
    Ok(b)
}

/// `prod f_i^{m_i}` in the product group.
pub fn product(t: &Tower, f: &[PGElem], m: &[i64]) -> PGElem {
    f.iter().zip(m).fold(PGElem::one(), |acc, (a, &k)| t.pg_mul(&acc, &t.pg_pow(a, k)))
}
