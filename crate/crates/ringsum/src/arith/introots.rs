//! Integer roots of univariate polynomials over the constant field.

use super::constant::Const;
use super::cyc::Cyc;
use super::field::Field;
use super::poly::Poly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Sample parameter values used to strip parameters before root search. They
/// are non-integers so that no integer-valued factor can vanish by accident.
const SAMPLES: [(i64, i64); 6] = [(1009, 997), (1013, 991), (1019, 983), (1021, 977), (1031, 971), (1033, 967)];

/// All integer roots of `p`, ascending. The zero polynomial has no finite root
/// set and panics.
pub fn integer_roots(p: &Poly<Const>) -> Vec<BigInt> {
    assert!(!p.is_zero(), "integer roots of the zero polynomial");
    if p.is_constant() {
        return vec![];
    }
    let nparams = p.coeffs().iter().map(|c| c.level()).max().unwrap_or(0) as usize;
    let q = if nparams == 0 {
        cyc_to_rational_poly(&p.map(|c| c.as_cyc().cloned().expect("parameter-free")))
    } else {
        let mut found = None;
        for shift in 0..SAMPLES.len() {
            let vals: Vec<BigRational> = (0..nparams)
                .map(|i| {
                    let (a, b) = SAMPLES[(i + shift) % SAMPLES.len()];
                    BigRational::new(BigInt::from(a + 2 * shift as i64), BigInt::from(b))
                })
                .collect();
            let at: Option<Vec<Cyc>> = p.coeffs().iter().map(|c| c.specialize(&vals)).collect();
            let Some(at) = at else { continue };
            let sp = Poly::from_coeffs(at);
            if sp.is_zero() {
                continue;
            }
            found = Some(cyc_to_rational_poly(&sp));
            break;
        }
        match found {
            Some(q) => q,
            None => return exhaustive_fallback(p),
        }
    };
    let mut roots: Vec<BigInt> = rational_integer_roots(&q)
        .into_iter()
        .filter(|r| p.eval(&Const::rat(BigRational::from_integer(r.clone()))).is_zero())
        .collect();
    roots.sort();
    roots.dedup();
    roots
}

// Never reached for nonzero input in practice; kept so that a degenerate
// specialization cannot produce a wrong answer.
fn exhaustive_fallback(p: &Poly<Const>) -> Vec<BigInt> {
    (-1000i64..=1000)
        .filter(|&r| p.eval(&Const::int(r)).is_zero())
        .map(BigInt::from)
        .collect()
}

/// Gcd of the rational component polynomials of a polynomial over Q(zeta).
/// A rational root of the input is a root of every component.
fn cyc_to_rational_poly(p: &Poly<Cyc>) -> Poly<BigRational> {
    let width = p.coeffs().iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
    let mut g = Poly::<BigRational>::zero();
    for t in 0..width {
        let comp = Poly::from_coeffs(p.coeffs().iter().map(|c| c.coeff(t)).collect());
        g = g.gcd(&comp);
    }
    g
}

/// Integer roots of a nonzero rational polynomial.
pub fn rational_integer_roots(p: &Poly<BigRational>) -> Vec<BigInt> {
    if p.is_zero() || p.is_constant() {
        return vec![];
    }
    // Primitive integer coefficients.
    let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut a: Vec<BigInt> = p.coeffs().iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    let v = a.iter().position(|x| !x.is_zero()).unwrap();
    if v > 0 {
        roots.push(BigInt::zero());
        a.drain(..v);
    }
    if a.len() <= 1 {
        return roots;
    }
    let bound = fujiwara_bound(&a);
    if bound <= 200_000 {
        let m = 1_000_000_007u64;
        let am: Vec<u64> = a.iter().map(|x| mod_u64(x, m)).collect();
        for r in 1..=bound as i64 {
            for cand in [r, -r] {
                let rm = (cand.rem_euclid(m as i64)) as u64;
                if horner_mod(&am, rm, m) == 0 && eval_int(&a, &BigInt::from(cand)).is_zero() {
                    roots.push(BigInt::from(cand));
                }
            }
        }
    } else {
        roots.extend(crt_roots(&a, bound));
    }
    roots.sort();
    roots
}

fn mod_u64(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().unwrap()
}

fn horner_mod(a: &[u64], r: u64, m: u64) -> u64 {
    let mut acc = 0u128;
    for &c in a.iter().rev() {
        acc = (acc * r as u128 + c as u128) % m as u128;
    }
    acc as u64
}

fn eval_int(a: &[BigInt], r: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in a.iter().rev() {
        acc = acc * r + c;
    }
    acc
}

fn log2_abs(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        x.to_f64().unwrap().abs().log2()
    } else {
        bits as f64
    }
}

/// Fujiwara's bound on the modulus of every complex root, rounded up generously.
fn fujiwara_bound(a: &[BigInt]) -> u64 {
    let n = a.len() - 1;
    let lead = log2_abs(&a[n]);
    let mut e = f64::NEG_INFINITY;
    for i in 1..=n {
        let c = &a[n - i];
        if c.is_zero() {
            continue;
        }
        let mut l = log2_abs(c) - lead;
        if i == n {
            l -= 1.0;
        }
        e = e.max(l / i as f64);
    }
    if e == f64::NEG_INFINITY {
        return 1;
    }
    let b = 2f64.powf(e + 1.0) * 1.001 + 2.0;
    if b > 1e18 {
        u64::MAX / 4
    } else {
        b.ceil() as u64
    }
}

const CRT_PRIMES: [u64; 8] = [30011, 30013, 30029, 30047, 30059, 30071, 30089, 30091];

/// Integer roots in `[-bound, bound]` via roots modulo several primes and CRT.
fn crt_roots(a: &[BigInt], bound: u64) -> Vec<BigInt> {
    let lead = a.last().unwrap();
    let mut modulus = BigInt::one();
    let mut cands: Vec<BigInt> = vec![BigInt::zero()];
    let target = BigInt::from(bound) * 2u32 + 1u32;
    let mut primes = CRT_PRIMES.iter().copied().chain((30_100u64..).filter(|&p| is_prime(p)));
    while modulus <= target {
        let p = primes.next().unwrap();
        if (lead % BigInt::from(p)).is_zero() {
            continue;
        }
        let am: Vec<u64> = a.iter().map(|x| mod_u64(x, p)).collect();
        let rs: Vec<u64> = (0..p).filter(|&r| horner_mod(&am, r, p) == 0).collect();
        if rs.is_empty() {
            return vec![];
        }
        let pb = BigInt::from(p);
        let mut next = Vec::with_capacity(cands.len() * rs.len());
        for c in &cands {
            for &r in &rs {
                // x = c (mod modulus), x = r (mod p)
                let inv = mod_inverse(&(modulus.clone() % &pb), &pb);
                let t = ((BigInt::from(r) - c) * inv).mod_floor(&pb);
                next.push(c + &modulus * t);
            }
        }
        modulus *= &pb;
        cands = next;
    }
    let half = &modulus / 2u32;
    let b = BigInt::from(bound);
    let mut out: Vec<BigInt> = cands
        .into_iter()
        .map(|c| if c > half { c - &modulus } else { c })
        .filter(|c| c.abs() <= b && !c.is_zero() && eval_int(a, c).is_zero())
        .collect();
    out.sort();
    out.dedup();
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::rat;

    fn qp(c: &[i64]) -> Poly<BigRational> {
        Poly::from_coeffs(c.iter().map(|&x| rat(x, 1)).collect())
    }

    #[test]
    fn small_roots() {
        // (j - 2)(j + 3) j
        let p = qp(&[0, -6, 1, 1]);
        let r: Vec<i64> = rational_integer_roots(&p).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(r, vec![-3, 0, 2]);
        assert!(rational_integer_roots(&qp(&[1, 0, 1])).is_empty());
    }

    #[test]
    fn large_roots_use_crt() {
        // (j - 1234567)(2j + 1)(j + 7654321)
        let a = qp(&[-1234567, 1]).mul(&qp(&[1, 2])).mul(&qp(&[7654321, 1]));
        let r: Vec<i64> = rational_integer_roots(&a).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(r, vec![-7654321, 1234567]);
    }

    #[test]
    fn parametric_coefficients() {
        // (j - 2)(j - n): only j = 2 is an integer root for generic n.
        let n = Const::param(0);
        let p = Poly::from_coeffs(vec![Const::int(2).times(&n), Const::int(-2).minus(&n), Const::one()]);
        let r: Vec<i64> = integer_roots(&p).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(r, vec![2]);
    }
}
