//! Integer row lattices in Hermite normal form.
//!
//! Convention: rows are Z-linearly independent, pivots (first nonzero entry of
//! each row) strictly increase to the right, pivots are positive, and entries
//! above a pivot lie in `[0, pivot)`. This form is unique for a given span, so
//! lattice equality is row equality.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lattice {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
}

impl Lattice {
    /// HNF basis of the span of `rows`, each of length `dim`.
    pub fn from_rows(dim: usize, rows: Vec<Vec<BigInt>>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), dim, "row length differs from lattice dimension");
        }
        Lattice { dim, rows: hnf(rows, dim) }
    }

    pub fn from_i64(dim: usize, rows: &[Vec<i64>]) -> Self {
        Lattice::from_rows(dim, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Lattice { dim, rows: vec![] }
    }

    /// All of Z^dim.
    pub fn full(dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        Lattice { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Rows as machine integers; panics if an entry does not fit.
    pub fn rows_i64(&self) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().expect("lattice entry exceeds i64")).collect())
            .collect()
    }

    /// Integer coordinates of `v` with respect to the basis rows, if `v` lies in the lattice.
    pub fn express(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.dim);
        let mut rem = v.to_vec();
        let mut coords = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let p = pivot(row).expect("HNF rows are nonzero");
            let (q, r) = rem[p].div_rem(&row[p]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in rem.iter_mut().zip(row) {
                *x -= &q * y;
            }
            coords.push(q);
        }
        if rem.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.express(v).is_some()
    }

    pub fn contains_i64(&self, v: &[i64]) -> bool {
        self.contains(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    pub fn intersect(&self, o: &Lattice) -> Result<Lattice> {
        if self.dim != o.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: o.dim });
        }
        if self.rows.is_empty() || o.rows.is_empty() {
            return Ok(Lattice::zero(self.dim));
        }
        // (a, b) with a*B1 = b*B2 gives the common vector a*B1.
        let mut stacked = self.rows.clone();
        stacked.extend(o.rows.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        let ker = left_kernel(&stacked, self.dim);
        let r1 = self.rows.len();
        let rows = ker.iter().map(|a| combine(&a[..r1], &self.rows, self.dim)).collect();
        Ok(Lattice::from_rows(self.dim, rows))
    }

    /// Image under projection onto the first `k` coordinates.
    pub fn project(&self, k: usize) -> Lattice {
        assert!(k <= self.dim);
        Lattice::from_rows(k, self.rows.iter().map(|r| r[..k].to_vec()).collect())
    }

    /// A lattice vector whose first `v.len()` coordinates equal `v`, if the
    /// projection contains `v`.
    pub fn lift(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let k = v.len();
        assert!(k <= self.dim);
        let mut rem = v.to_vec();
        let mut out = vec![BigInt::zero(); self.dim];
        // Rows pivoting inside the first k columns form an echelon basis of the projection.
        for row in &self.rows {
            let p = pivot(row).expect("HNF rows are nonzero");
            if p >= k {
                break;
            }
            let (q, r) = rem[p].div_rem(&row[p]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in rem.iter_mut().zip(row) {
                *x -= &q * y;
            }
            for (o, y) in out.iter_mut().zip(row) {
                *o += &q * y;
            }
        }
        if rem.iter().all(|x| x.is_zero()) {
            Some(out)
        } else {
            None
        }
    }

    /// Sum of two lattices.
    pub fn join(&self, o: &Lattice) -> Lattice {
        assert_eq!(self.dim, o.dim);
        let mut rows = self.rows.clone();
        rows.extend(o.rows.iter().cloned());
        Lattice::from_rows(self.dim, rows)
    }

    /// Pulls back along the linear map `m -> m * basis` (rows of `basis` live in
    /// the ambient space of `self`): returns all integer `m` whose image lies in `self`.
    pub fn preimage(&self, basis: &[Vec<BigInt>]) -> Lattice {
        let n = basis.len();
        if n == 0 {
            return Lattice::zero(0);
        }
        let mut stacked: Vec<Vec<BigInt>> = basis.to_vec();
        stacked.extend(self.rows.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        let ker = left_kernel(&stacked, self.dim);
        Lattice::from_rows(n, ker.into_iter().map(|v| v[..n].to_vec()).collect())
    }
}

/// `Ann_Z(e) = { m : m . e = 0 }`.
pub fn annihilator(e: &[BigInt]) -> Lattice {
    let col: Vec<Vec<BigInt>> = e.iter().map(|x| vec![x.clone()]).collect();
    Lattice::from_rows(e.len(), left_kernel(&col, 1))
}

pub fn annihilator_i64(e: &[i64]) -> Lattice {
    annihilator(&e.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
}

/// Integer vectors `m` with `m * A = 0 (mod modulus)` for an `n x c` matrix `A`.
pub fn left_kernel_mod(a: &[Vec<BigInt>], ncols: usize, modulus: &BigInt) -> Lattice {
    let n = a.len();
    let mut rows = a.to_vec();
    for j in 0..ncols {
        let mut r = vec![BigInt::zero(); ncols];
        r[j] = modulus.clone();
        rows.push(r);
    }
    let ker = left_kernel(&rows, ncols);
    Lattice::from_rows(n, ker.into_iter().map(|v| v[..n].to_vec()).collect())
}

fn combine(coeffs: &[BigInt], rows: &[Vec<BigInt>], dim: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); dim];
    for (c, r) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(r) {
            *o += c * x;
        }
    }
    out
}

fn pivot(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

/// Basis (in HNF) of `{ v : v * A = 0 }` for the `m x ncols` matrix `A`.
pub fn left_kernel(a: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let m = a.len();
    let aug: Vec<Vec<BigInt>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            v
        })
        .collect();
    let h = hnf(aug, ncols + m);
    let ker: Vec<Vec<BigInt>> = h
        .into_iter()
        .filter(|r| r[..ncols].iter().all(|x| x.is_zero()))
        .map(|r| r[ncols..].to_vec())
        .collect();
    hnf(ker, m)
}

/// Row Hermite normal form; zero rows are dropped.
pub fn hnf(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut r = 0;
    for c in 0..ncols {
        if r >= rows.len() {
            break;
        }
        loop {
            // Smallest nonzero entry in column c among rows r.. becomes the pivot candidate.
            let mut best: Option<usize> = None;
            for i in r..rows.len() {
                if !rows[i][c].is_zero()
                    && best.map_or(true, |b| rows[i][c].abs() < rows[b][c].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(r, b);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (head, tail) = rows.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(&head[r]) {
                    *x -= &q * y;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            if rows[i][c].is_zero() {
                continue;
            }
            let q = rows[i][c].div_floor(&rows[r][c]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = rows.split_at_mut(r);
            for (x, y) in head[i].iter_mut().zip(&tail[0]) {
                *x -= &q * y;
            }
        }
        r += 1;
        let mut k = r;
        while k < rows.len() {
            if rows[k].iter().all(|x| x.is_zero()) {
                rows.remove(k);
            } else {
                k += 1;
            }
        }
    }
    rows.truncate(r.min(rows.len()));
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    rows
}
