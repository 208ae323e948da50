//! Dense univariate polynomials over an exact field.

use super::field::Field;

/// Polynomial with coefficients stored lowest degree first; no trailing zeros,
/// so the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<C> {
    c: Vec<C>,
}

impl<C: Field> Poly<C> {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(C::one())
    }

    pub fn constant(a: C) -> Self {
        Poly::from_coeffs(vec![a])
    }

    /// The polynomial `a * X^d`.
    pub fn monomial(a: C, d: usize) -> Self {
        let mut c = vec![C::zero(); d + 1];
        c[d] = a;
        Poly::from_coeffs(c)
    }

    /// The variable `X`.
    pub fn x() -> Self {
        Poly::monomial(C::one(), 1)
    }

    pub fn from_coeffs(mut c: Vec<C>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree, `None` for the zero polynomial (the `-inf` sentinel).
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Low degree: index of the lowest nonzero coefficient.
    pub fn ldeg(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> C {
        self.c.get(i).cloned().unwrap_or_else(C::zero)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> C {
        self.c.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut r = Vec::with_capacity(n);
        for i in 0..n {
            r.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(r)
    }

    pub fn neg(&self) -> Self {
        Poly { c: self.c.iter().map(|x| x.negate()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut r = vec![C::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                r[i + j] = r[i + j].plus(&a.times(b));
            }
        }
        Poly::from_coeffs(r)
    }

    pub fn scale(&self, a: &C) -> Self {
        if a.is_zero() {
            return Poly::zero();
        }
        Poly { c: self.c.iter().map(|x| x.times(a)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        if self.c.len() < d.c.len() {
            return (Poly::zero(), self.clone());
        }
        let inv_lc = d.lc().recip();
        let mut r = self.c.clone();
        let mut q = vec![C::zero(); self.c.len() - dd];
        for i in (0..q.len()).rev() {
            let coef = r[i + dd].times(&inv_lc);
            if coef.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                r[i + j] = r[i + j].minus(&coef.times(dj));
            }
            q[i] = coef;
        }
        r.truncate(dd);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient; panics when the remainder is nonzero.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, p: &Self) -> bool {
        if self.is_zero() {
            return p.is_zero();
        }
        p.rem(self).is_zero()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Monic least common multiple.
    pub fn lcm(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(o);
        self.exact_div(&g).mul(o).monic()
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for a in self.c.iter().rev() {
            acc = acc.times(x).plus(a);
        }
        acc
    }

    /// Taylor shift: returns `p(X + h)`.
    pub fn shift(&self, h: &C) -> Self {
        if h.is_zero() || self.c.len() <= 1 {
            return self.clone();
        }
        let lin = Poly::from_coeffs(vec![h.clone(), C::one()]);
        let mut acc = Poly::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(a.clone()));
        }
        acc
    }

    /// Applies `f` to every coefficient.
    pub fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_coeffs(self.c.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        Poly::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.times(&C::from_i64(i as i64)))
                .collect(),
        )
    }

    /// Resultant via the Euclidean remainder sequence over the field.
    pub fn resultant(&self, o: &Self) -> C {
        if self.is_zero() || o.is_zero() {
            return C::zero();
        }
        let mut a = self.clone();
        let mut b = o.clone();
        let mut acc = C::one();
        loop {
            let m = a.deg().unwrap();
            let n = b.deg().unwrap();
            if n == 0 {
                return acc.times(&b.lc().powi(m as i64));
            }
            if m == 0 {
                return acc.times(&a.lc().powi(n as i64));
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return C::zero();
            }
            let dr = r.deg().unwrap();
            if (m * n) % 2 == 1 {
                acc = acc.negate();
            }
            acc = acc.times(&b.lc().powi((m - dr) as i64));
            a = b;
            b = r;
        }
    }
}

/// Newton interpolation through the points `(xs[i], ys[i])`.
pub fn interpolate<C: Field>(xs: &[C], ys: &[C]) -> Poly<C> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut dd: Vec<C> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = dd[i].minus(&dd[i - 1]);
            let den = xs[i].minus(&xs[i - j]);
            dd[i] = num.over(&den);
        }
    }
    let mut acc = Poly::zero();
    for i in (0..n).rev() {
        let lin = Poly::from_coeffs(vec![xs[i].negate(), C::one()]);
        acc = acc.mul(&lin).add(&Poly::constant(dd[i].clone()));
    }
    acc
}

/// Pairwise coprime basis (gcd-free basis) of a list of monic polynomials;
/// every input is a product of powers of the returned elements.
pub fn coprime_base<C: Field>(polys: &[Poly<C>]) -> Vec<Poly<C>> {
    fn add<C: Field>(base: &mut Vec<Poly<C>>, p: Poly<C>) {
        if p.is_constant() {
            return;
        }
        let p = p.monic();
        for i in 0..base.len() {
            let g = p.gcd(&base[i]);
            if !g.is_one() {
                let b = base.remove(i);
                let b1 = b.exact_div(&g);
                let p1 = p.exact_div(&g);
                add(base, g);
                add(base, b1);
                add(base, p1);
                return;
            }
        }
        base.push(p);
    }
    let mut base = Vec::new();
    for p in polys {
        add(&mut base, p.clone());
    }
    base
}

/// Multiplicity of the nonconstant polynomial `b` in `p` (p nonzero).
pub fn multiplicity<C: Field>(p: &Poly<C>, b: &Poly<C>) -> usize {
    let mut p = p.clone();
    let mut m = 0;
    loop {
        let (q, r) = p.divrem(b);
        if !r.is_zero() {
            return m;
        }
        p = q;
        m += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::rat;
    use num_rational::BigRational;

    fn p(c: &[i64]) -> Poly<BigRational> {
        Poly::from_coeffs(c.iter().map(|&x| rat(x, 1)).collect())
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(p(&[0, 1]).gcd(&p(&[1, 1])), p(&[1]));
        assert_eq!(Poly::<BigRational>::zero().gcd(&Poly::zero()), Poly::zero());
    }

    #[test]
    fn taylor_shift() {
        assert_eq!(p(&[0, 0, 1]).shift(&rat(1, 1)), p(&[1, 2, 1]));
        assert_eq!(p(&[0, 1, 1]).shift(&rat(2, 1)), p(&[6, 5, 1]));
    }

    #[test]
    fn resultant_matches_root_product() {
        // Res(X - 2, X^2 - 9) = (2^2 - 9) = -5
        assert_eq!(p(&[-2, 1]).resultant(&p(&[-9, 0, 1])), rat(-5, 1));
        // Common root gives zero.
        assert_eq!(p(&[-3, 1]).resultant(&p(&[-9, 0, 1])), rat(0, 1));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let q = p(&[3, -1, 0, 2]);
        let xs: Vec<_> = (0..4).map(|i| rat(i, 1)).collect();
        let ys: Vec<_> = xs.iter().map(|x| q.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), q);
    }

    #[test]
    fn coprime_base_splits_shared_factors() {
        let base = coprime_base(&[p(&[0, 0, 1]), p(&[0, 1, 1])]);
        assert_eq!(base.len(), 2);
        for b in &base {
            assert!(b == &p(&[0, 1]) || b == &p(&[1, 1]));
        }
    }
}
