//! Problem PMT: a Z-basis of all `m` for which `σ(g) = f_1^{m_1}...f_n^{m_n} g`
//! has a nonzero solution `g`, with one witness per basis vector. Problem MT is
//! the special case `n = 1`.
//!
//! The solver walks the tower from the top. Sum generators are dropped,
//! product generators and single root generators are traded for an extra
//! entry `1/α`, and a block of root generators directly over K(k) is split
//! into a K(k) part and a constant-coefficient part.

pub mod rational;
pub mod roots;

use crate::arith::cyc::roots_of_unity_order;
use crate::arith::field::lcm_u64;
use crate::arith::lattice::annihilator_i64;
use crate::arith::{Const, Cyc, Field, Lattice, RatFun};
use crate::error::{Error, Result};
use crate::tower::{GenKind, PGElem, Tower, TowerElem};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rational::{solve_rational, RationalSolution};
use roots::{ansatz, product, solve_roots};

/// HNF basis of the exponent lattice together with a witness per row.
#[derive(Clone, Debug)]
pub struct MBasis {
    pub lattice: Lattice,
    pub witnesses: Vec<TowerElem>,
}

/// Outcome of Problem MT for a single `α`.
#[derive(Clone, Debug)]
pub enum MtResult {
    NoSolution,
    MinimalExponent { m: u64, witness: TowerElem },
}

struct Solved {
    lattice: Lattice,
    node: Node,
}

enum Node {
    Rational(RationalSolution),
    /// A Σ-generator was dropped.
    Pass(Box<Solved>),
    /// The child solved the problem with `1/α` of generator `gen` appended.
    Lift { gen: usize, child: Box<Solved> },
    /// Root block `0..e`; `full` lives in dimension n+1, the last entry
    /// belonging to the chosen root of unity.
    Nested { e: usize, full: Lattice, base: RationalSolution, monos: Vec<PGElem> },
}

/// Solves Problem PMT for `f` in the product group of `t`.
pub fn pmt_solve(t: &Tower, f: &[PGElem]) -> Result<MBasis> {
    for (i, a) in f.iter().enumerate() {
        if !t.in_product_group(a, t.len()) {
            return Err(Error::NotInProductGroup(format!("entry {i}")));
        }
    }
    let (tw, fw, back) = match t.roots_first()? {
        None => (t.clone(), f.to_vec(), None),
        Some((tw, perm)) => {
            let mut inv = vec![0; perm.len()];
            for (old, &new) in perm.iter().enumerate() {
                inv[new] = old;
            }
            (tw, f.iter().map(|a| a.permute(&perm)).collect(), Some(inv))
        }
    };
    let solved = solve(&tw, tw.len(), &fw)?;
    let mut witnesses = Vec::with_capacity(solved.lattice.rank());
    for row in solved.lattice.rows() {
        let g = witness(&tw, &solved, row);
        witnesses.push(match &back {
            None => g,
            Some(inv) => g.permute(inv),
        });
    }
    Ok(MBasis { lattice: solved.lattice, witnesses })
}

/// Solves Problem MT: the least `m > 0` with `σ(g) = α^m g` solvable, if any.
pub fn mt_decide(t: &Tower, alpha: &PGElem) -> Result<MtResult> {
    let b = pmt_solve(t, std::slice::from_ref(alpha))?;
    match b.lattice.rows().first() {
        None => Ok(MtResult::NoSolution),
        Some(row) => Ok(MtResult::MinimalExponent {
            m: row[0].to_u64().expect("positive HNF pivot"),
            witness: b.witnesses[0].clone(),
        }),
    }
}

/// Checks `σ(g) = prod f_i^{m_i} g` exactly, with `g` nonzero.
pub fn verify_witness(t: &Tower, f: &[PGElem], m: &[BigInt], g: &TowerElem) -> bool {
    if g.is_zero() {
        return false;
    }
    let m: Vec<i64> = m.iter().map(|x| x.to_i64().expect("exponent exceeds i64")).collect();
    let lhs = t.sigma(g, 1);
    let rhs = t.mul(&product(t, f, &m).to_elem(), g);
    lhs.sub(&rhs).is_zero()
}

fn solve(t: &Tower, lvl: usize, f: &[PGElem]) -> Result<Solved> {
    let n = f.len();
    if lvl == 0 {
        let units: Vec<RatFun> = f.iter().map(|a| a.unit.clone()).collect();
        let (lattice, sol) = solve_rational(&units, t.base.shift)?;
        return Ok(Solved { lattice, node: Node::Rational(sol) });
    }
    let top = lvl - 1;
    let g = t.gen(top);
    match &g.kind {
        GenKind::Sigma { .. } => {
            let child = solve(t, top, f)?;
            Ok(Solved { lattice: child.lattice.clone(), node: Node::Pass(Box::new(child)) })
        }
        GenKind::Pi { alpha } => {
            let e: Vec<i64> = f.iter().map(|a| a.exp(top)).collect();
            let mut aug: Vec<PGElem> = f.iter().map(|a| a.without(top)).collect();
            aug.push(t.pg_inv(alpha));
            let child = solve(t, top, &aug)?;
            let lattice = child.lattice.project(n).intersect(&annihilator_i64(&e))?;
            Ok(Solved { lattice, node: Node::Lift { gen: top, child: Box::new(child) } })
        }
        GenKind::Root { alpha, .. } => {
            if f.iter().all(|a| a.exp(top) == 0) {
                let mut aug: Vec<PGElem> = f.iter().map(|a| a.without(top)).collect();
                aug.push(t.pg_inv(alpha));
                let child = solve(t, top, &aug)?;
                let lattice = child.lattice.project(n);
                Ok(Solved { lattice, node: Node::Lift { gen: top, child: Box::new(child) } })
            } else if (0..lvl).all(|j| t.gen(j).is_root()) {
                solve_nested(t, lvl, f)
            } else {
                Err(Error::UnsupportedBase(format!("root generator {} above other generators", g.name)))
            }
        }
    }
}

/// A generator of the r-th roots of unity contained in Q(zeta_N).
pub fn root_of_unity_generator(zeta: u32, r: u64) -> Cyc {
    let w = roots_of_unity_order(zeta.max(1));
    Cyc::root_generator(zeta.max(1)).powi((w / w.gcd(&r)) as i64)
}

/// The r used to separate the K(k) part from the constant part of a root block.
pub fn block_period(t: &Tower, e: usize) -> Result<u64> {
    let mut r = 1u64;
    for j in 0..e {
        let alpha = t.gen(j).alpha().expect("root generator");
        let u = PGElem::from_ratfun(alpha.unit.clone());
        let x = PGElem::new(RatFun::one(), vec![0; j].into_iter().chain([1]).collect());
        for v in [t.ford(&u)?, t.ford(&x)?] {
            if v == 0 {
                return Err(Error::NotSimpleTower(format!("generator {} has no finite factorial order", t.gen(j).name)));
            }
            r = lcm_u64(r, v);
        }
    }
    Ok(r)
}

fn solve_nested(t: &Tower, e: usize, f: &[PGElem]) -> Result<Solved> {
    let n = f.len();
    let r = block_period(t, e)?;
    let rho = Const::cyc(root_of_unity_generator(t.base.zeta, r));
    let mut units: Vec<RatFun> = f.iter().map(|a| a.unit.clone()).collect();
    units.push(RatFun::constant(rho.clone()));
    let (m1, base) = solve_rational(&units, t.base.shift)?;
    let mut monos: Vec<PGElem> = f.iter().map(|a| PGElem::new(RatFun::one(), a.exps.clone())).collect();
    monos.push(PGElem::from_const(rho.recip()));
    let m2 = solve_roots(t, e, &monos)?;
    let full = m1.intersect(&m2)?;
    Ok(Solved { lattice: full.project(n), node: Node::Nested { e, full, base, monos } })
}

fn witness(t: &Tower, s: &Solved, m: &[BigInt]) -> TowerElem {
    match &s.node {
        Node::Rational(sol) => TowerElem::from_ratfun(sol.witness(m)),
        Node::Pass(child) => witness(t, child, m),
        Node::Lift { gen, child } => {
            let w = child.lattice.lift(m).expect("vector lies in the projected lattice");
            let below = witness(t, child, &w);
            let mu = w[m.len()].to_i64().expect("exponent exceeds i64");
            let mut ex = vec![0; gen + 1];
            ex[*gen] = mu;
            t.mul(&below, &TowerElem::monomial(t.reduce(ex), RatFun::one()))
        }
        Node::Nested { e, full, base, monos } => {
            let w = full.lift(m).expect("vector lies in the projected lattice");
            let g1 = base.witness(&w);
            let wi: Vec<i64> = w.iter().map(|x| x.to_i64().expect("exponent exceeds i64")).collect();
            let target = product(t, monos, &wi);
            let h = ansatz(t, *e, &target).ok().flatten().expect("lattice vector has a constant-part witness");
            h.scale(&g1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Poly;
    use crate::tower::BaseField;

    fn iota() -> Const {
        Const::cyc(Cyc::zeta(4))
    }

    fn kpoly(c: &[i64]) -> Poly<Const> {
        Poly::from_coeffs(c.iter().map(|&x| Const::int(x)).collect())
    }

    fn iota_x() -> Tower {
        Tower::new(BaseField::with_zeta(4))
            .adjoin("x", GenKind::Root { alpha: PGElem::from_const(iota()), order: 4 }, iota())
            .unwrap()
    }

    fn sign_x() -> Tower {
        Tower::new(BaseField::default())
            .adjoin("x", GenKind::Root { alpha: PGElem::from_const(Const::int(-1)), order: 2 }, Const::int(-1))
            .unwrap()
    }

    fn assert_witnesses(t: &Tower, f: &[PGElem], b: &MBasis) {
        assert_eq!(b.witnesses.len(), b.lattice.rank());
        for (row, g) in b.lattice.rows().iter().zip(&b.witnesses) {
            assert!(verify_witness(t, f, row, g), "witness {g:?} fails for {row:?}");
        }
    }

    #[test]
    fn nested_block_example() {
        let t = iota_x();
        let f = vec![
            PGElem::new(RatFun::var(), vec![1]),
            PGElem::new(RatFun::new(kpoly(&[-1]), kpoly(&[1, 1])), vec![1]),
        ];
        assert_eq!(block_period(&t, 1).unwrap(), 8);
        let b = pmt_solve(&t, &f).unwrap();
        assert_eq!(b.lattice.rows_i64(), vec![vec![1, 1]]);
        assert_witnesses(&t, &f, &b);
    }

    #[test]
    fn trivial_inputs() {
        let t = Tower::new(BaseField::default());
        assert_eq!(pmt_solve(&t, &[]).unwrap().lattice.rank(), 0);
        let b = pmt_solve(&t, &[PGElem::one()]).unwrap();
        assert_eq!(b.lattice.rows_i64(), vec![vec![1]]);
        assert_eq!(b.witnesses[0], TowerElem::one());
        assert_eq!(pmt_solve(&t, &[PGElem::from_ratfun(RatFun::var())]).unwrap().lattice.rank(), 0);
    }

    #[test]
    fn sign_over_sign_tower() {
        let t = sign_x();
        let f = vec![PGElem::from_const(Const::int(-1))];
        let b = pmt_solve(&t, &f).unwrap();
        assert_eq!(b.lattice.rows_i64(), vec![vec![1]]);
        assert_witnesses(&t, &f, &b);
        assert_eq!(block_period(&t, 1).unwrap(), 4);
    }

    #[test]
    fn sum_generator_is_transparent() {
        let t = Tower::new(BaseField::default())
            .adjoin("s", GenKind::Sigma { beta: TowerElem::k().scale(&RatFun::var()) }, Const::int(1))
            .unwrap();
        let b = pmt_solve(&t, &[PGElem::from_const(Const::int(-1))]).unwrap();
        assert_eq!(b.lattice.rows_i64(), vec![vec![2]]);
    }

    #[test]
    fn product_generator() {
        // t = k!, σ(t) = (k+1) t.
        let t = Tower::new(BaseField::default())
            .adjoin("t", GenKind::Pi { alpha: PGElem::from_ratfun(RatFun::from_poly(kpoly(&[1, 1]))) }, Const::int(1))
            .unwrap();
        let tt = PGElem::new(RatFun::one(), vec![1]);
        assert_eq!(pmt_solve(&t, &[tt]).unwrap().lattice.rank(), 0);
        let f = vec![PGElem::from_ratfun(RatFun::from_poly(kpoly(&[2, 1])))];
        let b = pmt_solve(&t, &f).unwrap();
        assert_eq!(b.lattice.rows_i64(), vec![vec![1]]);
        assert_witnesses(&t, &f, &b);
    }

    #[test]
    fn minimal_exponents() {
        let t = Tower::new(BaseField::with_zeta(4));
        match mt_decide(&t, &PGElem::from_const(iota())).unwrap() {
            MtResult::MinimalExponent { m, .. } => assert_eq!(m, 4),
            r => panic!("unexpected {r:?}"),
        }
        let t = iota_x();
        let a = PGElem::new(RatFun::var(), vec![1]);
        assert!(matches!(mt_decide(&t, &a).unwrap(), MtResult::NoSolution));
    }
}
