//! Dense linear algebra over an exact field.

use super::constant::Const;
use super::field::Field;
use super::frac::Frac;
use super::poly::Poly;

/// Reduces `m` in place to reduced row echelon form; returns the pivot columns.
/// Zero rows are removed.
pub fn rref<C: Field>(m: &mut Vec<Vec<C>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        if !inv.is_one() {
            for x in m[r].iter_mut() {
                if !x.is_zero() {
                    *x = x.times(&inv);
                }
            }
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            let (a, b) = if i < r {
                let (h, t) = m.split_at_mut(r);
                (&mut h[i], &t[0])
            } else {
                let (h, t) = m.split_at_mut(i);
                (&mut t[0], &h[r])
            };
            for (x, y) in a.iter_mut().zip(b.iter()) {
                if !y.is_zero() {
                    *x = x.minus(&f.times(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    pivots
}

/// Basis of `{ x : A x = 0 }`; each vector has a 1 in its own free column and
/// zeros in the other free columns.
pub fn nullspace<C: Field>(rows: &[Vec<C>], ncols: usize) -> Vec<Vec<C>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    kernel_from_rref(&m, &pivots, ncols)
}

/// `nullspace` for matrices whose entries may involve parameters.
pub fn nullspace_params(rows: &[Vec<Const>], ncols: usize) -> Vec<Vec<Const>> {
    let mut m = rows.to_vec();
    let pivots = rref_params(&mut m, ncols);
    kernel_from_rref(&m, &pivots, ncols)
}

/// `rref` for matrices over K(n_1, ..., n_p). Rows are cleared of denominators
/// in the top parameter and reduced fraction-free (Bareiss) before the final
/// back substitution, which keeps the degrees in that parameter bounded.
pub fn rref_params(m: &mut Vec<Vec<Const>>, ncols: usize) -> Vec<usize> {
    let level = m.iter().flatten().map(Const::level).max().unwrap_or(0);
    if level == 0 {
        return rref(m, ncols);
    }
    let v = level - 1;
    let mut a: Vec<Vec<Poly<Const>>> = m
        .iter()
        .map(|row| {
            let fr: Vec<Frac<Const>> = row.iter().map(|x| x.as_frac_in(v)).collect();
            let den = fr.iter().fold(Poly::one(), |d, f| d.lcm(f.den()));
            fr.iter().map(|f| f.num().mul(&den.exact_div(f.den()))).collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = Poly::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let cost = |row: &Vec<Poly<Const>>| (row[c].deg(), row.iter().filter(|x| !x.is_zero()).count());
        let Some(p) = (r..a.len()).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| cost(&a[i])) else { continue };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let piv = &head[r];
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in c..row.len() {
                let x = piv[c].mul(&row[j]).sub(&f.mul(&piv[j]));
                row[j] = if prev.is_one() { x } else { x.exact_div(&prev) };
            }
        }
        prev = head[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    let mut out: Vec<Vec<Const>> = a[..r]
        .iter()
        .map(|row| row.iter().map(|p| Const::from_frac(v, Frac::from_poly(p.clone()))).collect())
        .collect();
    for k in (0..r).rev() {
        let inv = out[k][pivots[k]].recip();
        for x in out[k].iter_mut() {
            if !x.is_zero() {
                *x = x.times(&inv);
            }
        }
        let (head, tail) = out.split_at_mut(k);
        for row in head.iter_mut() {
            let f = row[pivots[k]].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&tail[0]) {
                if !y.is_zero() {
                    *x = x.minus(&f.times(y));
                }
            }
        }
    }
    *m = out;
    pivots
}

fn kernel_from_rref<C: Field>(m: &[Vec<C>], pivots: &[usize], ncols: usize) -> Vec<Vec<C>> {
    let mut out = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![C::zero(); ncols];
        v[free] = C::one();
        for (row, &p) in m.iter().zip(pivots) {
            v[p] = row[free].negate();
        }
        out.push(v);
    }
    out
}

/// One solution of `A x = b`, if any.
pub fn solve<C: Field>(rows: &[Vec<C>], rhs: &[C], ncols: usize) -> Option<Vec<C>> {
    let mut m: Vec<Vec<C>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let pivots = rref(&mut m, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![C::zero(); ncols];
    for (row, &p) in m.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::rat;
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        rat(v, 1)
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot = a[0].iter().zip(&v).fold(q(0), |s, (x, y)| s + x * y);
            assert_eq!(dot, q(0));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        assert_eq!(solve(&a, &[q(3), q(1)], 2), Some(vec![q(2), q(1)]));
        let b = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert_eq!(solve(&b, &[q(1), q(3)], 2), None);
    }
}
