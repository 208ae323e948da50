//! The minimal field interface shared by every coefficient domain.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

/// Exact field arithmetic. Method names avoid clashing with `std::ops`.
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(q: BigRational) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn times(&self, o: &Self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn recip(&self) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rat(BigRational::from_integer(BigInt::from(v)))
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
    fn over(&self, o: &Self) -> Self {
        self.times(&o.recip())
    }
    fn powi(&self, e: i64) -> Self {
        if e < 0 {
            return self.recip().powi(-e);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rat(q: BigRational) -> Self {
        q
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn recip(&self) -> Self {
        assert!(!Zero::is_zero(self), "division by zero");
        num_traits::Inv::inv(self.clone())
    }
}

/// Shorthand for building a rational from two machine integers.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Least common multiple of nonnegative machine integers (0 stays absorbing only
/// when both are 0; `lcm(0, a) = a` is deliberately avoided by callers).
pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / num_integer::gcd(a, b) * b
}

pub fn rat_is_integer(q: &BigRational) -> bool {
    q.denom().is_one()
}

pub fn rat_abs(q: &BigRational) -> BigRational {
    q.abs()
}
