//! Multiplicative relations among nonzero constants and rational functions.

use super::constant::Const;
use super::cyc::{roots_of_unity_order, Cyc};
use super::field::{lcm_u64, Field};
use super::frac::Frac;
use super::lattice::{left_kernel, left_kernel_mod, Lattice};
use super::poly::{coprime_base, multiplicity, Poly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// HNF basis of `{ m : prod units[i]^m[i] = 1 }`.
pub fn unit_relations(units: &[Const]) -> Result<Lattice> {
    let n = units.len();
    if n == 0 {
        return Ok(Lattice::zero(0));
    }
    assert!(units.iter().all(|u| !u.is_zero()), "unit relations of zero");
    let top = units.iter().map(|u| u.level()).max().unwrap();
    if top == 0 {
        let cs: Vec<Cyc> = units.iter().map(|u| u.as_cyc().unwrap().clone()).collect();
        return cyc_relations(&cs);
    }
    let mut contents = Vec::with_capacity(n);
    let mut parts = Vec::with_capacity(n);
    for u in units {
        match u.split_top() {
            (c, Some((var, num, den))) if var + 1 == top => {
                contents.push(c);
                parts.push((num, den));
            }
            _ => {
                contents.push(u.clone());
                parts.push((Poly::one(), Poly::one()));
            }
        }
    }
    monic_relations(&parts).intersect(&unit_relations(&contents)?)
}

/// Relations among nonzero elements of K(k).
pub fn ratfun_relations(units: &[Frac<Const>]) -> Result<Lattice> {
    if units.is_empty() {
        return Ok(Lattice::zero(0));
    }
    let mut contents = Vec::new();
    let mut parts = Vec::new();
    for u in units {
        let (c, num, den) = u.split_content();
        contents.push(c);
        parts.push((num, den));
    }
    monic_relations(&parts).intersect(&unit_relations(&contents)?)
}

/// Exponent lattice of products of monic fractions that equal 1.
fn monic_relations<C: Field>(parts: &[(Poly<C>, Poly<C>)]) -> Lattice {
    let n = parts.len();
    let all: Vec<Poly<C>> = parts
        .iter()
        .flat_map(|(a, b)| [a.clone(), b.clone()])
        .filter(|p| !p.is_constant())
        .collect();
    let base = coprime_base(&all);
    if base.is_empty() {
        return Lattice::full(n);
    }
    let rows: Vec<Vec<BigInt>> = parts
        .iter()
        .map(|(num, den)| {
            base.iter()
                .map(|b| BigInt::from(multiplicity(num, b) as i64 - multiplicity(den, b) as i64))
                .collect()
        })
        .collect();
    Lattice::from_rows(n, left_kernel(&rows, base.len()))
}

/// Relations among nonzero elements of Q(zeta_N).
pub fn cyc_relations(cs: &[Cyc]) -> Result<Lattice> {
    let n = cs.len();
    let order = cs.iter().map(|c| c.order()).max().unwrap_or(0);
    if order == 0 {
        let qs: Vec<BigRational> = cs.iter().map(|c| c.as_rational().unwrap()).collect();
        return Ok(rational_relations(&qs));
    }
    let w = roots_of_unity_order(order);
    let mut e_all = 1u64;
    for c in cs {
        let e = (1..=4 * w)
            .find(|&e| c.powi(e as i64).is_rational())
            .ok_or_else(|| Error::UnsupportedUnit(c.render()))?;
        e_all = lcm_u64(e_all, e);
    }
    let qs: Vec<BigRational> = cs.iter().map(|c| c.powi(e_all as i64).as_rational().unwrap()).collect();
    let coarse = rational_relations(&qs);
    if coarse.rank() == 0 {
        return Ok(coarse);
    }
    // Every coarse relation maps to a root of unity; keep the kernel of that map.
    let logs: Vec<Vec<BigInt>> = coarse
        .rows()
        .iter()
        .map(|row| {
            let mut z = Cyc::one();
            for (c, m) in cs.iter().zip(row) {
                if !m.is_zero() {
                    z = z.times(&c.powi(i64::try_from(m).expect("relation exponent overflow")));
                }
            }
            let d = z.discrete_log(order).expect("root of unity lies in the field");
            vec![BigInt::from(d)]
        })
        .collect();
    let sub = left_kernel_mod(&logs, 1, &BigInt::from(w));
    let rows = sub
        .rows()
        .iter()
        .map(|y| {
            let mut v = vec![BigInt::zero(); n];
            for (c, r) in y.iter().zip(coarse.rows()) {
                for (o, x) in v.iter_mut().zip(r) {
                    *o += c * x;
                }
            }
            v
        })
        .collect();
    Ok(Lattice::from_rows(n, rows))
}

/// Relations among nonzero rationals via a coprime base of numerators and denominators.
pub fn rational_relations(qs: &[BigRational]) -> Lattice {
    let n = qs.len();
    let mut ints: Vec<BigInt> = Vec::new();
    for q in qs {
        assert!(!Zero::is_zero(q), "unit relations of zero");
        ints.push(q.numer().abs());
        ints.push(q.denom().clone());
    }
    let base = int_coprime_base(&ints);
    let width = base.len() + 1;
    let mut rows: Vec<Vec<BigInt>> = qs
        .iter()
        .map(|q| {
            let mut r: Vec<BigInt> = base
                .iter()
                .map(|b| BigInt::from(int_multiplicity(&q.numer().abs(), b) as i64 - int_multiplicity(q.denom(), b) as i64))
                .collect();
            r.push(if q.is_negative() { BigInt::one() } else { BigInt::zero() });
            r
        })
        .collect();
    // Sign exponents only need to vanish modulo 2.
    let mut two = vec![BigInt::zero(); width];
    two[width - 1] = BigInt::from(2);
    rows.push(two);
    let ker = left_kernel(&rows, width);
    Lattice::from_rows(n, ker.into_iter().map(|v| v[..n].to_vec()).collect())
}

/// Pairwise coprime integers > 1 such that each input (> 0) is a product of their powers.
pub fn int_coprime_base(xs: &[BigInt]) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = xs.iter().filter(|x| **x > BigInt::one()).cloned().collect();
    base.sort();
    base.dedup();
    loop {
        let mut split = None;
        'outer: for i in 0..base.len() {
            for j in i + 1..base.len() {
                let g = base[i].gcd(&base[j]);
                if !g.is_one() {
                    split = Some((i, j, g));
                    break 'outer;
                }
            }
        }
        let Some((i, j, g)) = split else { break };
        let a = &base[i] / &g;
        let b = &base[j] / &g;
        base.remove(j);
        base.remove(i);
        for x in [g, a, b] {
            if x > BigInt::one() {
                base.push(x);
            }
        }
        base.sort();
        base.dedup();
    }
    base
}

fn int_multiplicity(x: &BigInt, b: &BigInt) -> usize {
    let mut x = x.clone();
    let mut k = 0;
    while !x.is_zero() && (&x % b).is_zero() {
        x /= b;
        k += 1;
    }
    k
}
