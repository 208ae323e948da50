//! Problem PMT over the rational difference field K(k).
//!
//! A product of shifted copies of one polynomial is a σ-quotient exactly when
//! its exponents sum to zero, so the monic parts contribute one linear
//! condition per shift orbit. The contents must multiply to 1.

use crate::arith::dispersion::{shift_orbit_base, shift_poly, OrbitBase};
use crate::arith::lattice::left_kernel;
use crate::arith::poly::multiplicity;
use crate::arith::units::unit_relations;
use crate::arith::{Const, Field, Lattice, RatFun};
use crate::error::Result;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Data kept after solving, enough to rebuild a witness for any lattice vector.
#[derive(Clone, Debug)]
pub struct RationalSolution {
    shift: i64,
    orbit: OrbitBase,
    /// `exps[i][b]`: exponent of `orbit.base[b]` in the monic part of `f_i`.
    exps: Vec<Vec<i64>>,
}

/// Lattice of `m` such that `σ(g) = prod f_i^{m_i} g` has a solution g in K(k)*.
pub fn solve_rational(f: &[RatFun], shift: i64) -> Result<(Lattice, RationalSolution)> {
    let n = f.len();
    let mut contents = Vec::with_capacity(n);
    let mut parts = Vec::with_capacity(n);
    for u in f {
        let (c, num, den) = u.split_content();
        contents.push(c);
        parts.push((num, den));
    }
    let polys: Vec<_> = parts.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
    let orbit = shift_orbit_base(&polys, shift);
    let exps: Vec<Vec<i64>> = parts
        .iter()
        .map(|(num, den)| {
            orbit.base.iter().map(|b| multiplicity(num, b) as i64 - multiplicity(den, b) as i64).collect()
        })
        .collect();
    let sums: Vec<Vec<BigInt>> = exps
        .iter()
        .map(|row| {
            orbit
                .classes
                .iter()
                .map(|c| BigInt::from(c.members.iter().map(|&(b, _)| row[b]).sum::<i64>()))
                .collect()
        })
        .collect();
    let monic = if orbit.classes.is_empty() {
        Lattice::full(n)
    } else {
        Lattice::from_rows(n, left_kernel(&sums, orbit.classes.len()))
    };
    let lattice = monic.intersect(&unit_relations(&contents)?)?;
    Ok((lattice, RationalSolution { shift, orbit, exps }))
}

impl RationalSolution {
    /// `g` with `σ(g) = prod f_i^{m_i} g` for a vector `m` of the lattice.
    pub fn witness(&self, m: &[BigInt]) -> RatFun {
        let m: Vec<i64> = m.iter().map(|x| x.to_i64().expect("exponent exceeds i64")).collect();
        let mut g = RatFun::one();
        for class in &self.orbit.classes {
            let top = class.members.iter().map(|&(_, j)| j).max().unwrap_or(0);
            // t[l]: exponent of σ^l(rep) in the product; a_l = -(t_0 + ... + t_l).
            let mut t = vec![0i64; top as usize + 1];
            for &(b, j) in &class.members {
                t[j as usize] += self.exps.iter().zip(&m).map(|(row, mi)| row[b] * mi).sum::<i64>();
            }
            let mut a = 0i64;
            for (l, tl) in t.iter().enumerate() {
                a -= tl;
                if a != 0 {
                    let p = RatFun::from_poly(shift_poly(&class.rep, l as i64, self.shift));
                    g = g.times(&p.powi(a));
                }
            }
        }
        g
    }
}

/// σ(g)/g for g in K(k).
pub fn sigma_quotient(g: &RatFun, shift: i64) -> RatFun {
    g.shift(&Const::int(shift)).over(g)
}
