//! Elements of the cyclotomic field Q(zeta_N), reduced modulo Phi_N.

use super::field::Field;
use super::poly::Poly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// An element of Q(zeta_N).
///
/// Rational elements are stored with `n == 0` and at most one coefficient so
/// that they compare equal across fields; every other element carries its
/// cyclotomic order `n >= 3` and coefficients in the power basis of zeta_n.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyc {
    n: u32,
    c: Vec<BigRational>,
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigRational>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigRational>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of the N-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<BigRational>> {
    assert!(n >= 1);
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = Poly::<BigRational>::monomial(BigRational::one(), n as usize)
        .sub(&Poly::one());
    for d in 1..n {
        if n % d == 0 {
            let pd = Poly::from_coeffs(cyclotomic_poly(d).to_vec());
            num = num.exact_div(&pd);
        }
    }
    let arc = Arc::new(num.into_coeffs());
    cyclotomic_cache().lock().unwrap().insert(n, arc.clone());
    arc
}

/// Euler's totient via the degree of Phi_N.
pub fn totient(n: u32) -> usize {
    cyclotomic_poly(n).len() - 1
}

/// Order of the group of roots of unity inside Q(zeta_N).
pub fn roots_of_unity_order(n: u32) -> u64 {
    if n % 2 == 0 {
        n as u64
    } else {
        2 * n as u64
    }
}

impl Cyc {
    pub fn rational(q: BigRational) -> Self {
        if q.is_zero() {
            Cyc { n: 0, c: vec![] }
        } else {
            Cyc { n: 0, c: vec![q] }
        }
    }

    pub fn int(v: i64) -> Self {
        Cyc::rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// The primitive root zeta_N = exp(2 pi i / N).
    pub fn zeta(n: u32) -> Self {
        match n {
            1 => Cyc::int(1),
            2 => Cyc::int(-1),
            _ => Cyc::from_poly(n, vec![BigRational::zero(), BigRational::one()]),
        }
    }

    /// zeta_N^e for any integer e.
    pub fn zeta_pow(n: u32, e: i64) -> Self {
        let e = e.rem_euclid(n as i64);
        if n <= 2 {
            return Cyc::zeta(n).powi(e);
        }
        let mut c = vec![BigRational::zero(); e as usize + 1];
        c[e as usize] = BigRational::one();
        Cyc::from_poly(n, c)
    }

    /// Generator of the full group of roots of unity in Q(zeta_N).
    pub fn root_generator(n: u32) -> Self {
        if n % 2 == 0 {
            Cyc::zeta(n)
        } else {
            Cyc::zeta(n).negate()
        }
    }

    /// Builds an element from power-basis coefficients, reducing modulo Phi_N.
    pub fn from_poly(n: u32, c: Vec<BigRational>) -> Self {
        if n <= 2 {
            let z = if n == 2 { -BigRational::one() } else { BigRational::one() };
            let v = Poly::from_coeffs(c).eval(&z);
            return Cyc::rational(v);
        }
        let phi = cyclotomic_poly(n);
        let p = Poly::from_coeffs(c).rem(&Poly::from_coeffs(phi.to_vec()));
        Cyc::normalize(n, p.into_coeffs())
    }

    fn normalize(n: u32, mut c: Vec<BigRational>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        if c.len() <= 1 {
            Cyc { n: 0, c }
        } else {
            Cyc { n, c }
        }
    }

    /// Cyclotomic order this element lives in; 0 for rationals.
    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    /// The power-basis coefficient of zeta^i.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.c.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.n == 0 {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.n == 0
    }

    fn common(&self, o: &Self) -> u32 {
        match (self.n, o.n) {
            (0, m) => m,
            (m, 0) => m,
            (a, b) if a == b => a,
            (a, b) => panic!("mixing cyclotomic fields of orders {a} and {b}"),
        }
    }

    /// Order as a root of unity inside Q(zeta_field); 0 if not a root of unity.
    pub fn root_order(&self, field: u32) -> u64 {
        if self.is_zero() {
            return 0;
        }
        let w = roots_of_unity_order(field.max(1));
        if !self.powi(w as i64).is_one() {
            return 0;
        }
        let mut best = w;
        for d in 1..=w {
            if w % d == 0 && self.powi(d as i64).is_one() {
                best = d;
                break;
            }
        }
        best
    }

    /// Exponent `a` with `root_generator(field)^a == self`, if one exists.
    pub fn discrete_log(&self, field: u32) -> Option<u64> {
        let w = roots_of_unity_order(field.max(1));
        let g = Cyc::root_generator(field.max(1));
        let mut acc = Cyc::int(1);
        for a in 0..w {
            if &acc == self {
                return Some(a);
            }
            acc = acc.times(&g);
        }
        None
    }

    /// Text form using `I` for zeta_4 and `zeta` for other primitive roots.
    pub fn render(&self) -> String {
        if let Some(q) = self.as_rational() {
            return render_rat(&q);
        }
        let sym = if self.n == 4 { "I" } else { "zeta" };
        let mut s = String::new();
        let mut first = true;
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => sym.to_string(),
                e => format!("{sym}^{e}"),
            };
            let mag = a.abs();
            if first {
                if a.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if a.is_negative() { " - " } else { " + " });
            }
            first = false;
            if mono.is_empty() {
                s.push_str(&render_rat(&mag));
            } else if mag.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", render_rat(&mag), mono));
            }
        }
        s
    }
}

pub fn render_rat(q: &BigRational) -> String {
    if num_traits::One::is_one(q.denom()) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Field for Cyc {
    fn zero() -> Self {
        Cyc { n: 0, c: vec![] }
    }
    fn one() -> Self {
        Cyc::int(1)
    }
    fn from_rat(q: BigRational) -> Self {
        Cyc::rational(q)
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        let n = self.common(o);
        let len = self.c.len().max(o.c.len());
        let c = (0..len).map(|i| self.coeff(i) + o.coeff(i)).collect();
        Cyc::normalize(n, c)
    }
    fn negate(&self) -> Self {
        Cyc { n: self.n, c: self.c.iter().map(|x| -x).collect() }
    }
    fn times(&self, o: &Self) -> Self {
        let n = self.common(o);
        if self.is_zero() || o.is_zero() {
            return Cyc::zero();
        }
        if self.n == 0 || o.n == 0 {
            let (q, other) = if self.n == 0 { (self.coeff(0), o) } else { (o.coeff(0), self) };
            return Cyc::normalize(n, other.c.iter().map(|x| x * &q).collect());
        }
        let mut r = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        Cyc::from_poly(n, r)
    }
    fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in Q(zeta)");
        if self.n == 0 {
            return Cyc::rational(num_traits::Inv::inv(self.coeff(0)));
        }
        let phi = Poly::from_coeffs(cyclotomic_poly(self.n).to_vec());
        let a = Poly::from_coeffs(self.c.clone());
        let (g, s, _) = a.ext_gcd(&phi);
        debug_assert!(g.is_one());
        Cyc::from_poly(self.n, s.into_coeffs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let p4: Vec<i64> = vec![1, 0, 1];
        assert_eq!(
            *cyclotomic_poly(4),
            p4.iter().map(|&x| BigRational::from_integer(x.into())).collect::<Vec<_>>()
        );
        assert_eq!(totient(12), 4);
        assert_eq!(totient(7), 6);
    }

    #[test]
    fn imaginary_unit_arithmetic() {
        let i = Cyc::zeta(4);
        assert_eq!(i.times(&i), Cyc::int(-1));
        assert_eq!(i.recip(), i.negate());
        assert_eq!(i.root_order(4), 4);
        assert_eq!(Cyc::int(-1).root_order(4), 2);
        assert_eq!(Cyc::int(2).root_order(4), 0);
    }

    #[test]
    fn inverse_of_general_element() {
        let z = Cyc::zeta(5);
        let a = z.plus(&Cyc::int(3));
        assert_eq!(a.times(&a.recip()), Cyc::int(1));
    }

    #[test]
    fn odd_order_roots_include_minus_one() {
        assert_eq!(roots_of_unity_order(3), 6);
        assert_eq!(Cyc::root_generator(3).root_order(3), 6);
    }
}
