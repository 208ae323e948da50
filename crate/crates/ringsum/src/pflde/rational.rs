//! Problem PFLDE over K(k) with `σ(k) = k + s`: all `(c, g)` with
//! `g(k + s) - u g(k) = sum c_i f_i(k)`.
//!
//! Denominators are bounded by Abramov's universal denominator, the numerator
//! degree by comparing leading terms, and the remaining unknowns are found by
//! linear algebra over K.

use crate::arith::dispersion::{dispersion, shift_poly};
use crate::arith::linalg::nullspace_params as nullspace;
use crate::arith::{Const, Field, KPoly, RatFun};

/// Basis of `{ (c, g) in K^n x K(k) : g(k+s) - u g(k) = sum c_i f_i }`.
pub fn solve_base(u: &RatFun, f: &[RatFun], s: i64) -> Vec<(Vec<Const>, RatFun)> {
    assert!(!u.is_zero(), "u must be nonzero");
    let n = f.len();
    let mut den = KPoly::one();
    for fi in f {
        den = den.lcm(fi.den());
    }
    // a1 g(k+s) + a0 g(k) = sum c_i r_i with polynomial data.
    let a1 = u.den().mul(&den);
    let a0 = u.num().mul(&den).neg();
    let r: Vec<KPoly> = f.iter().map(|fi| fi.num().mul(&den.exact_div(fi.den())).mul(u.den())).collect();

    let denom = universal_denominator(&a1, &a0, s);
    let denom_s = shift_poly(&denom, 1, s);
    // a1 U p(k+s) + a0 U(k+s) p(k) = sum c_i r_i U U(k+s).
    let p1 = a1.mul(&denom);
    let p0 = a0.mul(&denom_s);
    let uu = denom.mul(&denom_s);
    let rhs: Vec<KPoly> = r.iter().map(|ri| ri.mul(&uu)).collect();
    let d = degree_bound(&p1, &p0, &rhs, s);

    // Unknowns: c_1..c_n, then the coefficients of p up to degree d.
    let cols = n + d + 1;
    let mut columns: Vec<KPoly> = rhs.iter().map(|ri| ri.neg()).collect();
    let step = KPoly::from_coeffs(vec![Const::int(s), Const::one()]);
    let mut pow_shift = KPoly::one();
    let mut pow = KPoly::one();
    for _ in 0..=d {
        columns.push(p1.mul(&pow_shift).add(&p0.mul(&pow)));
        pow_shift = pow_shift.mul(&step);
        pow = pow.mul(&KPoly::x());
    }
    let height = columns.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    let rows: Vec<Vec<Const>> = (0..height).map(|i| columns.iter().map(|p| p.coeff(i)).collect()).collect();
    nullspace(&rows, cols)
        .into_iter()
        .map(|v| {
            let p = KPoly::from_coeffs(v[n..].to_vec());
            (v[..n].to_vec(), RatFun::new(p, denom.clone()))
        })
        .collect()
}

/// A multiple of the denominator of every rational solution of
/// `a1 y(k+s) + a0 y(k) = r` with polynomial `r`.
pub fn universal_denominator(a1: &KPoly, a0: &KPoly, s: i64) -> KPoly {
    // The leftmost pole of a pole chain is a root of a1(k - s), the rightmost
    // a root of a0(k).
    let mut a = shift_poly(a1, -1, s);
    let mut b = a0.clone();
    let mut out = KPoly::one();
    if a.is_zero() || b.is_zero() {
        return out;
    }
    let Some(&top) = dispersion(&a, &b, s).last() else { return out };
    for i in (0..=top as i64).rev() {
        let g = a.gcd(&shift_poly(&b, i, s));
        if g.is_constant() {
            continue;
        }
        a = a.exact_div(&g);
        b = b.exact_div(&shift_poly(&g, -i, s));
        for j in 0..=i {
            out = out.mul(&shift_poly(&g, -j, s));
        }
    }
    out.monic()
}

/// Upper bound for the degree of polynomial solutions `p` of
/// `p1 p(k+s) + p0 p(k) = sum c_i r_i`.
pub fn degree_bound(p1: &KPoly, p0: &KPoly, r: &[KPoly], s: i64) -> usize {
    // p1 p(k+s) + p0 p(k) = q1 p(k) + q0 (p(k+s) - p(k)).
    let q1 = p1.add(p0);
    let q0 = p1;
    let dr = r.iter().filter_map(|p| p.deg()).max().map(|d| d as i64);
    let d0 = q0.deg().expect("nonzero leading coefficient") as i64;
    let mut bound = match q1.deg() {
        Some(d1) if d1 as i64 >= d0 => dr.map(|x| x - d1 as i64),
        Some(d1) if d1 as i64 == d0 - 1 => {
            let root = q1.lc().negate().over(&q0.lc().times(&Const::int(s)));
            let extra = root.as_i64().filter(|&v| v >= 0);
            match (dr.map(|x| x - d0 + 1), extra) {
                (Some(a), Some(b)) => Some(a.max(b)),
                (a, b) => a.or(b),
            }
        }
        _ => dr.map(|x| x - d0 + 1),
    }
    .unwrap_or(0);
    bound = bound.max(0);
    bound as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kpoly(c: &[i64]) -> KPoly {
        KPoly::from_coeffs(c.iter().map(|&x| Const::int(x)).collect())
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        RatFun::new(kpoly(n), kpoly(d))
    }

    fn check(u: &RatFun, f: &[RatFun], s: i64, rows: &[(Vec<Const>, RatFun)]) {
        for (c, g) in rows {
            let lhs = g.shift(&Const::int(s)).minus(&u.times(g));
            let rhs = c.iter().zip(f).fold(RatFun::zero(), |acc, (ci, fi)| acc.plus(&fi.times(&RatFun::constant(ci.clone()))));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn telescoping_one() {
        let f = vec![RatFun::one()];
        let rows = solve_base(&RatFun::one(), &f, 1);
        check(&RatFun::one(), &f, 1, &rows);
        assert_eq!(rows.len(), 2);
        // Rows: (1, k) and (0, 1) after normalising the free columns.
        let with_c: Vec<_> = rows.iter().filter(|(c, _)| !c[0].is_zero()).collect();
        assert_eq!(with_c.len(), 1);
        let (c, g) = with_c[0];
        let g = g.times(&RatFun::constant(c[0].recip()));
        assert_eq!(g.minus(&RatFun::var()).as_constant().is_some(), true);
    }

    #[test]
    fn reciprocal_difference() {
        // σ(1/k) - 1/k = -1/(k(k+1)).
        let f = vec![rf(&[-1], &[0, 1, 1])];
        let rows = solve_base(&RatFun::one(), &f, 1);
        check(&RatFun::one(), &f, 1, &rows);
        let (c, g) = rows.iter().find(|(c, _)| !c[0].is_zero()).unwrap();
        let g = g.times(&RatFun::constant(c[0].recip()));
        assert!(g.minus(&rf(&[1], &[0, 1])).as_constant().is_some());
    }

    #[test]
    fn homogeneous_factorial_ratio() {
        // g(k+1) = (k+1) g(k) has no rational solution; g(k+1) = (k+1)/k g(k) has g = k.
        assert!(solve_base(&rf(&[1, 1], &[1]), &[], 1).is_empty());
        let u = rf(&[1, 1], &[0, 1]);
        let rows = solve_base(&u, &[], 1);
        assert_eq!(rows.len(), 1);
        let g = &rows[0].1;
        assert_eq!(g.over(&RatFun::var()).as_constant().is_some(), true);
    }

    #[test]
    fn pole_chain_below_the_data() {
        // y(k+1) - (k+1) y(k) = 1/(k+3) is solved by y = -1/((k+1)(k+2)).
        let u = rf(&[1, 1], &[1]);
        let f = vec![rf(&[1], &[3, 1])];
        let rows = solve_base(&u, &f, 1);
        check(&u, &f, 1, &rows);
        let (c, g) = rows.iter().find(|(c, _)| !c[0].is_zero()).unwrap();
        assert_eq!(g.times(&RatFun::constant(c[0].recip())), rf(&[-1], &[2, 3, 1]));
        let (a1, a0) = (kpoly(&[3, 1]), kpoly(&[-3, -4, -1]));
        assert_eq!(universal_denominator(&a1, &a0, 1), kpoly(&[2, 3, 1]));
    }

    #[test]
    fn extra_degree_case() {
        // g(k+1) - (k+2)/k g(k) = 0 has g = k(k+1): degree comes from the leading coefficient.
        let u = rf(&[2, 1], &[0, 1]);
        let rows = solve_base(&u, &[], 1);
        assert_eq!(rows.len(), 1);
        check(&u, &[], 1, &rows);
        assert_eq!(rows[0].1.num().deg(), Some(2));
    }

    #[test]
    fn step_four_subproblem() {
        // σ⁴-system with f = (-(2k²+4k+1)/(k(k+2)), -2/(k(k+2)), 0).
        let f = vec![rf(&[-1, -4, -2], &[0, 2, 1]), rf(&[-2], &[0, 2, 1]), RatFun::zero()];
        let rows = solve_base(&RatFun::one(), &f, 4);
        check(&RatFun::one(), &f, 4, &rows);
        assert_eq!(rows.len(), 3);
    }
}
