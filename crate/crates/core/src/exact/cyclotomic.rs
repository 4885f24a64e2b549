//! Cyclotomic polynomials, Euler's totient, and exact arithmetic in Q(zeta_N).
//!
//! Elements are stored reduced modulo Phi_N, so representatives are canonical
//! and zero-testing is exact. No floating arithmetic appears here.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::UniPoly;
use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Divisors of n in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

/// Euler's totient by trial-division factorization.
pub fn euler_totient(n: u64) -> u64 {
    assert!(n >= 1);
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

fn cyclotomic_uncached(n: u64) -> UniPoly {
    if n == 1 {
        return UniPoly::from_i64(&[-1, 1]);
    }
    let mut result = UniPoly::x_pow_minus_one(n as usize);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        result = result.exact_div(&phi_d).expect("Phi_d divides x^n - 1");
    }
    result
}

/// The n-th cyclotomic polynomial Phi_n, computed by recursive exact division
/// of x^n - 1 by Phi_d over the proper divisors d of n.
pub fn cyclotomic_polynomial(n: u64) -> UniPoly {
    assert!(n >= 1, "cyclotomic_polynomial requires n >= 1");
    static CACHE: Mutex<Option<HashMap<u64, UniPoly>>> = Mutex::new(None);
    {
        let guard = CACHE.lock().unwrap();
        if let Some(map) = guard.as_ref() {
            if let Some(p) = map.get(&n) {
                return p.clone();
            }
        }
    }
    let p = cyclotomic_uncached(n);
    let mut guard = CACHE.lock().unwrap();
    guard.get_or_insert_with(HashMap::new).insert(n, p.clone());
    p
}

/// An element of Q(zeta_N), stored as a residue modulo Phi_N evaluated at
/// zeta_N. `coeffs` always has length phi(N).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicNumber {
    pub order: u64,
    pub coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero(order: u64) -> Self {
        let phi = euler_totient(order) as usize;
        CyclotomicNumber { order, coeffs: vec![Rational::zero(); phi] }
    }

    pub fn one(order: u64) -> Self {
        CyclotomicNumber::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: u64, value: Rational) -> Self {
        let mut z = CyclotomicNumber::zero(order);
        if !z.coeffs.is_empty() {
            z.coeffs[0] = value;
        }
        z
    }

    /// zeta_order^power, reduced.
    pub fn root_of_unity(order: u64, power: i64) -> Self {
        let p = power.rem_euclid(order as i64) as usize;
        CyclotomicNumber::from_poly(order, UniPoly::x_pow(p))
    }

    /// Reduce a polynomial in zeta_order modulo Phi_order.
    pub fn from_poly(order: u64, p: UniPoly) -> Self {
        let phi_n = cyclotomic_polynomial(order);
        let (_, rem) = p.div_rem(&phi_n);
        let phi = euler_totient(order) as usize;
        let mut coeffs = rem.coeffs;
        debug_assert!(coeffs.len() <= phi, "residue degree below deg Phi_N");
        coeffs.resize(phi, Rational::zero());
        CyclotomicNumber { order, coeffs }
    }

    fn as_poly(&self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(r) iff the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    fn check_same_order(&self, rhs: &Self) -> u64 {
        assert_eq!(self.order, rhs.order, "cyclotomic orders differ; embed first");
        self.order
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.check_same_order(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CyclotomicNumber { order, coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.check_same_order(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CyclotomicNumber { order, coeffs }
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber { order: self.order, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.check_same_order(rhs);
        CyclotomicNumber::from_poly(order, self.as_poly().mul(&rhs.as_poly()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CyclotomicNumber { order: self.order, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Phi_N; None for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let phi_n = cyclotomic_polynomial(self.order);
        let a = self.as_poly();
        // extended gcd: s*a + t*phi_n = g
        let (g, s, _) = ext_gcd(&a, &phi_n);
        // g is a nonzero constant since Phi_N is irreducible and a != 0 mod Phi_N
        let g0 = g.coeff(0);
        debug_assert!(g.degree() == Some(0), "Phi_N irreducible: gcd must be constant");
        let inv = s.scale(&(Rational::one() / g0));
        Some(CyclotomicNumber::from_poly(self.order, inv))
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self.mul(&inv))
    }

    /// Embed into Q(zeta_target) via zeta_order = zeta_target^(target/order).
    pub fn embed(&self, target_order: u64) -> Result<Self> {
        if target_order % self.order != 0 {
            return Err(Error::NonDivisibleOrder { order: self.order, target: target_order });
        }
        if target_order == self.order {
            return Ok(self.clone());
        }
        let k = (target_order / self.order) as usize;
        let mut p = UniPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                p = p.add(&UniPoly::x_pow(i * k).scale(c));
            }
        }
        Ok(CyclotomicNumber::from_poly(target_order, p))
    }
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            order: u64,
            coeffs: Vec<&'a str>,
        }
        let strs: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        let repr = Repr { order: self.order, coeffs: strs.iter().map(|s| s.as_str()).collect() };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            order: u64,
            coeffs: Vec<String>,
        }
        let repr = Repr::deserialize(d)?;
        let phi = euler_totient(repr.order) as usize;
        if repr.coeffs.len() != phi {
            return Err(serde::de::Error::custom(format!(
                "cyclotomic of order {} needs {} coefficients, got {}",
                repr.order,
                phi,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(CyclotomicNumber { order: repr.order, coeffs })
    }
}

/// Extended gcd over Q[x]: returns (g, s, t) with s*a + t*b = g.
fn ext_gcd(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
    let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    (r0, s0, t0)
}
