//! Order, period and factorial order of product-group elements.

use super::core::Tower;
use super::elem::PGElem;
use crate::arith::field::lcm_u64;
use crate::error::{Error, Result};
use num_integer::Integer;

impl Tower {
    fn has_pi_part(&self, a: &PGElem) -> bool {
        a.exps.iter().enumerate().any(|(i, &d)| d != 0 && self.gen(i).is_pi())
    }

    /// Order of a unit of K(k) as a root of unity; 0 if it is none.
    pub fn unit_ord(&self, u: &crate::arith::RatFun) -> u64 {
        match u.as_constant().as_ref().and_then(|c| c.as_cyc().cloned()) {
            Some(c) => c.root_order(self.base.zeta.max(c.order())),
            None => 0,
        }
    }

    /// Smallest n > 0 with a^n = 1, else 0.
    pub fn ord(&self, a: &PGElem) -> u64 {
        if self.has_pi_part(a) {
            return 0;
        }
        let mut n = self.unit_ord(&a.unit);
        if n == 0 {
            return 0;
        }
        for (i, &z) in a.exps.iter().enumerate() {
            if z == 0 {
                continue;
            }
            let l = self.gen(i).order().expect("only R-generators remain");
            n = lcm_u64(n, l / l.gcd(&(z.unsigned_abs())));
        }
        n
    }

    /// Smallest n > 0 with σ^n(a) = a, else 0.
    pub fn per(&self, a: &PGElem) -> Result<u64> {
        if self.has_pi_part(a) {
            return Ok(0);
        }
        if a.unit.as_constant().is_none() {
            return Ok(0);
        }
        let mut mu = 1u64;
        for (i, &z) in a.exps.iter().enumerate() {
            if z == 0 {
                continue;
            }
            let g = self.gen(i);
            let l = g.order().expect("only R-generators remain") as i64;
            if z.rem_euclid(l) != 0 {
                if g.stats.gen_per == 0 {
                    return Ok(0);
                }
                mu = lcm_u64(mu, g.stats.gen_per);
            }
        }
        if mu > self.base.per_cap {
            return Err(Error::PeriodCapExceeded { cap: self.base.per_cap });
        }
        // The period divides μ; the first return is the period.
        let mut cur = a.clone();
        for j in 1..=mu {
            cur = self.pg_sigma(&cur, 1);
            if &cur == a {
                return Ok(j);
            }
        }
        Ok(0)
    }

    /// Smallest n > 0 with (a)_n = 1, else 0.
    pub fn ford(&self, a: &PGElem) -> Result<u64> {
        let o = self.ord(a);
        let p = self.per(a)?;
        if o == 0 || p == 0 {
            return Ok(0);
        }
        let b = self.sigma_factorial(a, p as i64);
        Ok(p * self.ord(&b))
    }

    /// a σ(a) ... σ^{n-1}(a) for n > 0, 1 for n = 0, and
    /// 1 / (σ^n(a) ... σ^{-1}(a)) for n < 0.
    pub fn sigma_factorial(&self, a: &PGElem, n: i64) -> PGElem {
        let mut acc = PGElem::one();
        if n >= 0 {
            let mut cur = a.clone();
            for _ in 0..n {
                acc = self.pg_mul(&acc, &cur);
                cur = self.pg_sigma(&cur, 1);
            }
            acc
        } else {
            let mut cur = self.pg_sigma(a, -1);
            for _ in 0..(-n) {
                acc = self.pg_mul(&acc, &cur);
                cur = self.pg_sigma(&cur, -1);
            }
            self.pg_inv(&acc)
        }
    }

    /// Order of the unit group element `a` by brute force, for cross-checks.
    pub fn ord_brute(&self, a: &PGElem, cap: u64) -> u64 {
        let mut cur = a.clone();
        for n in 1..=cap {
            if cur.is_one() {
                return n;
            }
            cur = self.pg_mul(&cur, a);
        }
        0
    }
}

