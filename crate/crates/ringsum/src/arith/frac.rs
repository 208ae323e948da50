//! Fractions of univariate polynomials over a field, kept in lowest terms.

use super::field::Field;
use super::poly::Poly;
use num_rational::BigRational;

/// `num / den` with `gcd(num, den) = 1` and `den` monic. Zero is `0/1`.
#[derive(Clone, PartialEq, Debug)]
pub struct Frac<C> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: Field> Frac<C> {
    pub fn new(num: Poly<C>, den: Poly<C>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Frac { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lc = den.lc();
        if lc.is_one() {
            Frac { num, den }
        } else {
            let inv = lc.recip();
            Frac { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        Frac { num: p, den: Poly::one() }
    }

    pub fn constant(c: C) -> Self {
        Frac::from_poly(Poly::constant(c))
    }

    /// The variable itself.
    pub fn var() -> Self {
        Frac::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<C> {
        &self.num
    }

    pub fn den(&self) -> &Poly<C> {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// The value if this fraction is a constant.
    pub fn as_constant(&self) -> Option<C> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// Evaluates at a point, `None` at a pole.
    pub fn eval(&self, x: &C) -> Option<C> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x).over(&d))
    }

    /// `f(X + h)`.
    pub fn shift(&self, h: &C) -> Self {
        if h.is_zero() || (self.num.is_constant() && self.den.is_one()) {
            return self.clone();
        }
        Frac { num: self.num.shift(h), den: self.den.shift(h) }
    }

    /// Applies a coefficient map; `None` if the denominator maps to zero.
    pub fn try_map(&self, f: impl Fn(&C) -> Option<C>) -> Option<Self> {
        let num: Option<Vec<C>> = self.num.coeffs().iter().map(&f).collect();
        let den: Option<Vec<C>> = self.den.coeffs().iter().map(&f).collect();
        let den = Poly::from_coeffs(den?);
        if den.is_zero() {
            return None;
        }
        Some(Frac::new(Poly::from_coeffs(num?), den))
    }

    /// Content-free split `c * (monic num) / (monic den)`.
    pub fn split_content(&self) -> (C, Poly<C>, Poly<C>) {
        let c = self.num.lc();
        (c, self.num.monic(), self.den.clone())
    }
}

impl<C: Field> Field for Frac<C> {
    fn zero() -> Self {
        Frac { num: Poly::zero(), den: Poly::one() }
    }
    fn one() -> Self {
        Frac { num: Poly::one(), den: Poly::one() }
    }
    fn from_rat(q: BigRational) -> Self {
        Frac::constant(C::from_rat(q))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return Frac { num: self.num.add(&o.num), den: Poly::one() };
            }
            return Frac::new(self.num.add(&o.num), self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        let a = self.den.exact_div(&g);
        let b = o.den.exact_div(&g);
        let num = self.num.mul(&b).add(&o.num.mul(&a));
        Frac::new(num, a.mul(&o.den))
    }
    fn negate(&self) -> Self {
        Frac { num: self.num.neg(), den: self.den.clone() }
    }
    fn times(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Frac::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Frac { num: self.num.mul(&o.num), den: Poly::one() };
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.exact_div(&g1) };
        let d2 = if g1.is_one() { o.den.clone() } else { o.den.exact_div(&g1) };
        let n2 = if g2.is_one() { o.num.clone() } else { o.num.exact_div(&g2) };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.exact_div(&g2) };
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.lc();
        if lc.is_one() {
            Frac { num, den }
        } else {
            let inv = lc.recip();
            Frac { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }
    fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero rational function");
        let lc = self.num.lc();
        let inv = lc.recip();
        Frac { num: self.den.scale(&inv), den: self.num.scale(&inv) }
    }
}
