//! Dispersion sets and shift-orbit decompositions of polynomials in `k`.
//!
//! Throughout, `sigma^j p` means `p(k + j*s)` for the shift step `s`.

use super::constant::Const;
use super::introots::integer_roots;
use super::poly::{coprime_base, interpolate, Poly};
use num_traits::{Signed, ToPrimitive};

type KPoly = Poly<Const>;

/// `p(k + j*s)`.
pub fn shift_poly(p: &KPoly, j: i64, s: i64) -> KPoly {
    p.shift(&Const::int(j * s))
}

/// The product of the distinct irreducible factors of `p`.
fn squarefree(p: &KPoly) -> KPoly {
    let g = p.gcd(&p.derivative());
    if g.is_constant() {
        p.clone()
    } else {
        p.exact_div(&g)
    }
}

/// `{ j >= 0 : deg gcd(p(k), q(k + j*s)) >= 1 }`, ascending.
pub fn dispersion(p: &KPoly, q: &KPoly, s: i64) -> Vec<u64> {
    assert!(!p.is_zero() && !q.is_zero(), "dispersion of the zero polynomial");
    let (p, q) = (&squarefree(p), &squarefree(q));
    let (Some(dp), Some(dq)) = (p.deg(), q.deg()) else { return vec![] };
    if dp == 0 || dq == 0 {
        return vec![];
    }
    // Res_k(p(k), q(k + j s)) is a polynomial in j of degree <= dp*dq.
    let npts = dp * dq + 1;
    let xs: Vec<Const> = (0..npts as i64).map(Const::int).collect();
    let ys: Vec<Const> = (0..npts as i64).map(|j| p.resultant(&shift_poly(q, j, s))).collect();
    let res = interpolate(&xs, &ys);
    let candidates: Vec<u64> = if res.is_zero() {
        // Only possible when p and q share a factor invariant under every shift,
        // which cannot happen for nonconstant polynomials; scan defensively.
        (0..npts as u64).collect()
    } else {
        integer_roots(&res)
            .into_iter()
            .filter(|r| !r.is_negative())
            .filter_map(|r| r.to_u64())
            .collect()
    };
    candidates
        .into_iter()
        .filter(|&j| !p.gcd(&shift_poly(q, j as i64, s)).is_constant())
        .collect()
}

/// A class of base polynomials that are shifts of one representative.
#[derive(Clone, Debug)]
pub struct ShiftClass {
    pub rep: KPoly,
    /// `(index into base, j)` with `base[index] = sigma^j rep`, `j >= 0`.
    pub members: Vec<(usize, i64)>,
}

#[derive(Clone, Debug)]
pub struct OrbitBase {
    /// Pairwise coprime monic polynomials; every input is a product of their powers.
    pub base: Vec<KPoly>,
    pub classes: Vec<ShiftClass>,
}

impl OrbitBase {
    /// Class index and shift of `base[i]`.
    pub fn locate(&self, i: usize) -> (usize, i64) {
        for (ci, c) in self.classes.iter().enumerate() {
            if let Some(&(_, j)) = c.members.iter().find(|(idx, _)| *idx == i) {
                return (ci, j);
            }
        }
        unreachable!("every base element belongs to a class")
    }
}

/// Refines a coprime base of `polys` until any two elements are either exact
/// shifts of each other or share no factor under any shift, then groups them.
pub fn shift_orbit_base(polys: &[KPoly], s: i64) -> OrbitBase {
    let nonconst: Vec<KPoly> = polys.iter().filter(|p| !p.is_constant()).map(|p| p.monic()).collect();
    let mut base = coprime_base(&nonconst);
    'refine: loop {
        for a in 0..base.len() {
            for b in 0..base.len() {
                for j in dispersion(&base[a], &base[b], s) {
                    if a == b && j == 0 {
                        continue;
                    }
                    let qs = shift_poly(&base[b], j as i64, s);
                    if a != b && base[a] == qs {
                        continue;
                    }
                    let g = base[a].gcd(&qs);
                    let gb = shift_poly(&g, -(j as i64), s);
                    let mut next: Vec<KPoly> = base
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != a && *i != b)
                        .map(|(_, p)| p.clone())
                        .collect();
                    next.push(g.clone());
                    next.push(base[a].exact_div(&g));
                    next.push(gb.clone());
                    if a != b {
                        next.push(base[b].exact_div(&gb));
                    }
                    next.retain(|p| !p.is_constant());
                    base = coprime_base(&next);
                    continue 'refine;
                }
            }
        }
        break;
    }
    // Offsets relative to a provisional class root, found by exact comparison.
    let n = base.len();
    let mut class_of: Vec<Option<(usize, i64)>> = vec![None; n];
    let mut roots: Vec<usize> = Vec::new();
    for i in 0..n {
        if class_of[i].is_some() {
            continue;
        }
        let cid = roots.len();
        roots.push(i);
        class_of[i] = Some((cid, 0));
        for k in i + 1..n {
            if class_of[k].is_some() || base[k].deg() != base[i].deg() {
                continue;
            }
            for j in dispersion(&base[k], &base[i], s) {
                if base[k] == shift_poly(&base[i], j as i64, s) {
                    class_of[k] = Some((cid, j as i64));
                }
            }
            if class_of[k].is_none() {
                for j in dispersion(&base[i], &base[k], s) {
                    if base[i] == shift_poly(&base[k], j as i64, s) {
                        class_of[k] = Some((cid, -(j as i64)));
                    }
                }
            }
        }
    }
    let mut classes = Vec::with_capacity(roots.len());
    for (cid, &root) in roots.iter().enumerate() {
        let mut members: Vec<(usize, i64)> = (0..n)
            .filter_map(|i| match class_of[i] {
                Some((c, j)) if c == cid => Some((i, j)),
                _ => None,
            })
            .collect();
        let min = members.iter().map(|m| m.1).min().unwrap();
        for m in members.iter_mut() {
            m.1 -= min;
        }
        members.sort_by_key(|m| m.1);
        let rep = shift_poly(&base[root], min, s);
        classes.push(ShiftClass { rep, members });
    }
    OrbitBase { base, classes }
}
